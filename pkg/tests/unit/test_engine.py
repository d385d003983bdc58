from fractions import Fraction

import numpy as np
import pytest

from revsieve.core.config import Settings, SieveConfig, Strategy
from revsieve.core.digits import DigitContext, binary
from revsieve.core.engine import (
    SieveEngine,
    count_almost_prime_pairs,
    count_palindromic_primes,
    count_theta,
    count_theta_z,
    parse_gamma,
    primes_below_power,
)
from revsieve.core.errors import ConsistencyError, DomainError, ResourceError
from revsieve.core.registry import reference_table
from revsieve.core.tables import CountMethod

class TestCountTheta:

    @pytest.mark.parametrize("n", range(1, 17))
    def test_base2_matches_reference(self, engine, n):
        assert engine.count_theta(binary(n)) == reference_table(2).get(n).count

    @pytest.mark.parametrize("n", range(1, 6))
    def test_base10_matches_reference(self, engine, n):
        assert engine.count_theta(DigitContext(base=10, n=n)) == reference_table(10).get(n).count

    @pytest.mark.parametrize("base, n", [(2, 9), (2, 12), (10, 3)])
    def test_values_match_oracle(self, engine, oracle, base, n):
        values = engine.reversible_primes(DigitContext(base=base, n=n))

        assert values.tolist() == oracle.reversible_primes(base, n)

    @pytest.mark.parametrize("base, n", [(2, 2), (2, 5), (2, 14), (10, 2), (10, 4)])
    def test_blocked_values_match_bitset(self, engine, base, n):
        ctx = DigitContext(base=base, n=n)

        assert engine.reversible_primes(ctx, Strategy.BLOCKED).tolist() == engine.reversible_primes(ctx).tolist()

    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_strategies_agree(self, strategy):
        cfg = SieveConfig(segment_bytes=2**12, strategy=strategy)

        assert count_theta(binary(20), cfg) == 9210
        assert count_theta(DigitContext(base=10, n=5), cfg) == 1499

    @pytest.mark.parametrize("residue_digits", [1, 3, 8])
    def test_residue_digits_do_not_change_counts(self, residue_digits):
        cfg = SieveConfig(strategy=Strategy.BLOCKED, residue_digits=residue_digits)

        assert count_theta(binary(18), cfg) == 2814

    def test_segments_and_threads_do_not_change_counts(self):
        counts = {
            count_theta(binary(21), SieveConfig(segment_bytes=segment_bytes, threads=threads, strategy=strategy))
            for segment_bytes in (2**12, 2**16)
            for threads in (1, 4)
            for strategy in (Strategy.BITSET, Strategy.BLOCKED)
        }

        assert counts == {reference_table(2).get(21).count}

    def test_strict_reverse_does_not_change_counts(self):
        cfg = SieveConfig(strict_ndigit_reverse=True)

        assert count_theta(DigitContext(base=10, n=4), cfg) == 204

    def test_strategy_disagreement(self, monkeypatch):
        monkeypatch.setattr(
            SieveEngine, "_blocked_pass", lambda self, ctx, collect=False: (0, np.zeros(0, dtype=np.uint64))
        )
        engine = SieveEngine(SieveConfig(strategy=Strategy.BOTH))

        with pytest.raises(ConsistencyError) as exc:
            engine.count_theta(binary(5))

        assert exc.value.first_difference == 17

    def test_desk_limit(self, engine):
        with pytest.raises(ResourceError) as exc:
            engine.count_theta(binary(37))

        assert exc.value.required == 37
        assert exc.value.available == 36

        with pytest.raises(ResourceError):
            engine.count_theta(DigitContext(base=10, n=10))

    def test_memory_cap(self):
        engine = SieveEngine(settings=Settings(mem_cap_bytes=16))

        with pytest.raises(ResourceError):
            engine.count_theta(binary(10))

    def test_theta_table(self, engine):
        table = engine.theta_table(2, [3, 4, 5], timing=True)

        assert table.counts() == {3: 2, 4: 2, 5: 4}
        assert all(row.method is CountMethod.BITSET for row in table)
        assert all(row.seconds is not None for row in table)
        assert table.verify_against(reference_table(2)) == []

class TestPalindromes:

    @pytest.mark.parametrize("base, n, expected", [(2, 2, 1), (2, 5, 2), (10, 1, 4), (10, 2, 1), (10, 3, 15), (10, 4, 0)])
    def test_counts(self, base, n, expected):
        assert count_palindromic_primes(DigitContext(base=base, n=n)) == expected

class TestThetaZ:

    def test_parse_gamma(self):
        assert parse_gamma("1/4") == Fraction(1, 4)
        assert parse_gamma(0.25) == Fraction(1, 4)

        for bad in ("1/2", "0", "x", "1/0", 0.7):
            with pytest.raises(DomainError):
                parse_gamma(bad)

    def test_primes_below_power(self):
        assert primes_below_power(10, "1/5").tolist() == [3]
        assert primes_below_power(20, "1/4").tolist() == [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
        assert primes_below_power(5, "1/5").size == 0

    def test_counts(self, oracle):
        assert count_theta_z(5, "1/5") == 8

        n = 12
        expected = sum(
            1
            for a in oracle.b_n(n)
            for r in [int(f"{a:0{n}b}"[::-1], 2)]
            if all(a % p and r % p for p in (3, 5, 7))
        )
        assert count_theta_z(n, "1/4") == expected

    def test_limits(self):
        with pytest.raises(DomainError):
            count_theta_z(1, "1/4")
        with pytest.raises(ResourceError):
            count_theta_z(31, "1/4")

class TestAlmostPrimes:

    def test_small_cases(self):
        assert count_almost_prime_pairs(4, 8) == 4
        assert count_almost_prime_pairs(4, 1) == 2

    def test_matches_oracle(self, oracle):
        n, k = 12, 3
        expected = sum(
            1
            for a in oracle.b_n(n)
            if max(oracle.big_omega(a), oracle.big_omega(int(f"{a:0{n}b}"[::-1], 2))) <= k
        )

        assert count_almost_prime_pairs(n, k) == expected

    def test_k_one_counts_reversible_primes(self):
        assert count_almost_prime_pairs(14, 1) == 308

    def test_limits(self):
        with pytest.raises(DomainError):
            count_almost_prime_pairs(10, 0)
        with pytest.raises(ResourceError):
            count_almost_prime_pairs(29, 8)
