import numpy as np
import pytest

from revsieve.core.digits import (
    MAX_DIGITS,
    DigitContext,
    b_n_chunks,
    binary,
    bn_size,
    in_bn,
    is_palindrome,
    mirror_congruence_check,
    reverse,
    reverse_array,
    reverse_digits,
)
from revsieve.core.errors import DomainError

class TestDigitContext:

    def test_bounds(self):
        ctx = DigitContext(base=10, n=3)

        assert ctx.lo == 100
        assert ctx.hi == 1000
        assert 100 in ctx
        assert 999 in ctx
        assert 1000 not in ctx
        assert 99 not in ctx

    def test_binary_shortcut(self):
        assert binary(5) == DigitContext(base=2, n=5)

    def test_unsupported_base(self):
        with pytest.raises(DomainError, match="Base must be one of"):
            DigitContext(base=3, n=4)

    def test_digit_count_limits(self):
        assert DigitContext(base=2, n=MAX_DIGITS[2]).hi == 2**63
        assert DigitContext(base=10, n=MAX_DIGITS[10]).hi == 10**18

        with pytest.raises(DomainError):
            DigitContext(base=2, n=0)
        with pytest.raises(DomainError):
            DigitContext(base=10, n=19)

    def test_require(self):
        with pytest.raises(DomainError, match="not a 4-digit integer"):
            binary(4).require(16)

class TestBn:

    def test_size(self):
        assert bn_size(2) == 1
        assert bn_size(10) == 256

        with pytest.raises(DomainError):
            bn_size(1)

    def test_membership(self):
        assert in_bn(9, 4)
        assert not in_bn(8, 4)
        assert not in_bn(17, 4)

    def test_chunks_cover_bn(self):
        values = np.concatenate(list(b_n_chunks(binary(10), chunk=50)))

        assert values.size == bn_size(10)
        assert values[0] == 513
        assert values[-1] == 1023
        assert np.all(np.diff(values) == 2)

    def test_chunks_base_2_only(self):
        with pytest.raises(DomainError):
            next(b_n_chunks(DigitContext(base=10, n=3)))

class TestReverse:

    def test_examples(self):
        assert reverse(13, binary(4)) == 11
        assert reverse(17, binary(5)) == 17
        assert reverse(13, DigitContext(base=10, n=2)) == 31

    def test_shorter_reversal(self):
        # trailing zeros become leading zeros
        assert reverse(10, binary(4)) == 5
        assert reverse(120, DigitContext(base=10, n=3)) == 21

    def test_out_of_window(self):
        with pytest.raises(DomainError):
            reverse(16, binary(4))

    def test_involution_exhaustive(self):
        for n in range(2, 17):
            ctx = binary(n)
            for a in range(ctx.lo + 1, ctx.hi, 2):
                assert reverse(reverse(a, ctx), ctx) == a

    def test_bn_closed_under_reversal(self, rng):
        ctx = binary(40)
        for a in rng.integers(2**39, 2**40, size=200):
            a = int(a) | 1
            assert in_bn(reverse(a, ctx), 40)

    def test_decimal_round_trip(self):
        ctx = DigitContext(base=10, n=4)
        for k in range(ctx.lo, ctx.hi):
            if k % 10:
                assert reverse(reverse(k, ctx), ctx) == k

class TestPalindrome:

    def test_examples(self):
        assert is_palindrome(17, binary(5))
        assert not is_palindrome(13, binary(4))
        assert is_palindrome(151, DigitContext(base=10, n=3))

class TestMirrorCongruence:

    def test_examples(self):
        assert mirror_congruence_check(11, binary(4))
        assert mirror_congruence_check(9, binary(4))

    def test_exhaustive(self):
        for n in range(2, 17):
            ctx = binary(n)
            for a in range(ctx.lo + 1, ctx.hi, 2):
                assert mirror_congruence_check(a, ctx)
                assert (a % 3 == 0) == (reverse(a, ctx) % 3 == 0)

    def test_domain(self):
        with pytest.raises(DomainError):
            mirror_congruence_check(10, binary(4))
        with pytest.raises(DomainError):
            mirror_congruence_check(13, DigitContext(base=10, n=2))

class TestReverseArray:

    def test_matches_scalar_base_2(self):
        for n in range(1, 14):
            ctx = binary(n)
            values = np.arange(ctx.lo, ctx.hi, dtype=np.uint64)
            expected = [reverse_digits(int(v), 2, n) for v in values]
            assert reverse_array(values, ctx).tolist() == expected

    def test_matches_scalar_base_10(self):
        for n in range(1, 5):
            ctx = DigitContext(base=10, n=n)
            values = np.arange(ctx.lo, ctx.hi, dtype=np.uint64)
            expected = [reverse_digits(int(v), 10, n) for v in values]
            assert reverse_array(values, ctx).tolist() == expected

    def test_wide_words(self, rng):
        for n in (33, 50, 63):
            ctx = binary(n)
            values = rng.integers(ctx.lo, ctx.hi, size=100, dtype=np.uint64)
            expected = [reverse(int(v), ctx) for v in values]
            assert reverse_array(values, ctx).tolist() == expected

    def test_wide_decimal(self, rng):
        ctx = DigitContext(base=10, n=18)
        values = rng.integers(ctx.lo, ctx.hi, size=100, dtype=np.uint64)
        expected = [reverse(int(v), ctx) for v in values]
        assert reverse_array(values, ctx).tolist() == expected
