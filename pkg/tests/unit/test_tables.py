import pytest

from revsieve.core.errors import DomainError
from revsieve.core.registry import BUNDLED_TABLES, ReferenceRegistry, default_registry, reference_table
from revsieve.core.tables import CountMethod, CountRow, CountTable

def _row(n: int, count: int) -> CountRow:
    return CountRow(n=n, count=count, method=CountMethod.BITSET)

class TestCountTable:

    def test_rows_stay_sorted(self):
        table = CountTable(base=2, rows=[_row(5, 4), _row(3, 2)])
        table.add(_row(4, 2))

        assert [row.n for row in table] == [3, 4, 5]
        assert len(table) == 3
        assert 4 in table
        assert table.get(5).count == 4

    def test_duplicates_rejected(self):
        with pytest.raises(DomainError):
            CountTable(base=2, rows=[_row(3, 2), _row(3, 2)])

        table = CountTable(base=2, rows=[_row(3, 2)])
        with pytest.raises(DomainError):
            table.add(_row(3, 2))

    def test_negative_count(self):
        with pytest.raises(DomainError):
            _row(3, -1)

    def test_missing_row(self):
        with pytest.raises(KeyError):
            CountTable(base=2).get(7)

    def test_verify_against(self):
        reference = CountTable(base=2, rows=[_row(3, 2), _row(4, 2)])
        table = CountTable(base=2, rows=[_row(3, 2), _row(4, 3), _row(60, 1)])

        assert table.verify_against(reference) == [(4, 3, 2)]

    def test_verify_against_other_base(self):
        with pytest.raises(DomainError):
            CountTable(base=2).verify_against(CountTable(base=10))

class TestReferenceRegistry:

    def test_bundled_tables(self):
        registry = default_registry()

        assert set(registry) == set(BUNDLED_TABLES)
        assert len(registry) == 2
        assert 10 in registry

    def test_base2_values(self):
        table = reference_table(2)

        assert [table.get(n).count for n in range(1, 11)] == [0, 1, 2, 2, 4, 6, 9, 14, 27, 36]
        assert table.get(30).count == 3963166
        assert table.get(50).count == 1440435348050
        assert all(row.method is CountMethod.REFERENCE for row in table)
        assert "provenance" in table.provenance

    def test_provenance_names_source_tables(self):
        assert "Table 1 (base 2)" in reference_table(2).provenance
        assert "Table 2 (base 10)" in reference_table(10).provenance

    def test_base10_values(self):
        table = reference_table(10)

        assert [table.get(n).count for n in range(1, 10)] == [4, 9, 43, 204, 1499, 9538, 71142, 535578, 4197196]

    def test_register_twice(self):
        registry = ReferenceRegistry()
        registry.register(CountTable(base=2))

        with pytest.raises(ValueError):
            registry.register(CountTable(base=2))

    def test_unknown_base(self):
        with pytest.raises(KeyError):
            ReferenceRegistry().get(3)
