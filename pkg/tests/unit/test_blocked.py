import pytest

from revsieve.core.blocked import BlockGeometry, ResidueClassSieve, choose_residue_digits
from revsieve.core.digits import DigitContext, binary, reverse_digits

class TestBlockGeometry:

    def test_binary_geometry(self):
        g = BlockGeometry(ctx=binary(6), k=2)

        assert g.modulus == 4
        assert (g.t_lo, g.t_hi) == (8, 16)
        assert g.classes() == [1, 3]
        assert g.strip_start(1) == 32
        assert g.strip_start(3) == 48

    def test_decimal_classes(self):
        assert BlockGeometry(ctx=DigitContext(base=10, n=4), k=1).classes() == [1, 3, 7, 9]
        assert len(BlockGeometry(ctx=DigitContext(base=10, n=4), k=2).classes()) == 40

    @pytest.mark.parametrize("w", [1, 3, 5, 7])
    def test_reversals_land_in_strip(self, w):
        g = BlockGeometry(ctx=binary(9), k=3)
        start = g.strip_start(w)

        for t in range(g.t_lo, g.t_hi):
            r = reverse_digits(w + g.modulus * t, 2, 9)
            assert start <= r < start + g.strip_length

class TestChooseResidueDigits:

    def test_sized_to_segment(self):
        assert choose_residue_digits(binary(18), 2**15) == 2
        assert choose_residue_digits(DigitContext(base=10, n=5), 2**15) == 1
        assert choose_residue_digits(binary(30), 2**15) == 14

    def test_requested_is_clamped(self):
        assert choose_residue_digits(binary(18), 2**15, 40) == 17
        assert choose_residue_digits(binary(18), 2**15, 5) == 5

    def test_small_windows(self):
        assert choose_residue_digits(binary(4), 2**20) == 1

class TestResidueClassSieve:

    @pytest.mark.parametrize("base, n, k", [(2, 12, 1), (2, 12, 4), (2, 15, 6), (10, 4, 1), (10, 4, 2)])
    def test_class_counts_sum_to_theta(self, oracle, base, n, k):
        g = BlockGeometry(ctx=DigitContext(base=base, n=n), k=k)
        sieve = ResidueClassSieve(g)

        total = sum(sieve.count_class(w)[0] for w in g.classes())

        assert total == len(oracle.reversible_primes(base, n))

    def test_collected_values(self, oracle):
        g = BlockGeometry(ctx=binary(11), k=3)
        sieve = ResidueClassSieve(g)
        expected = oracle.reversible_primes(2, 11)

        for w in g.classes():
            count, values = sieve.count_class(w, collect=True)
            assert values.tolist() == [p for p in expected if p % 8 == w]
            assert count == len(values)

    def test_count_only(self):
        g = BlockGeometry(ctx=binary(8), k=2)

        assert ResidueClassSieve(g).count_class(1)[1] is None
