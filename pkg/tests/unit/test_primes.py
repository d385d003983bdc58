import numpy as np
import pytest
import sympy

from revsieve.core.errors import DomainError
from revsieve.core.primes import (
    big_omega,
    factorize,
    is_probable_prime,
    is_squarefree,
    iter_prime_blocks,
    mobius,
    omega,
    sieving_primes,
    small_primes,
)

class TestIsProbablePrime:

    def test_small_values(self):
        primes = [k for k in range(200) if is_probable_prime(k)]
        assert primes == list(sympy.primerange(0, 200))

    def test_strong_pseudoprimes(self):
        # strong pseudoprimes to several small bases
        for composite in (2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383, 341550071728321):
            assert not is_probable_prime(composite)

    def test_large_primes(self):
        assert is_probable_prime(2**61 - 1)
        assert is_probable_prime(2**64 - 59)
        assert not is_probable_prime(2**64 - 1)

    def test_agrees_with_sympy(self, rng):
        for k in rng.integers(2**40, 2**62, size=500):
            assert is_probable_prime(int(k)) == sympy.isprime(int(k))

    def test_limit(self):
        with pytest.raises(DomainError):
            is_probable_prime(3_317_044_064_679_887_385_961_981)

class TestSmallPrimes:

    def test_strictly_below(self):
        assert small_primes(31).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert small_primes(32)[-1] == 31
        assert small_primes(2).size == 0
        assert small_primes(3).tolist() == [2]

    def test_read_only(self):
        with pytest.raises(ValueError):
            small_primes(100)[0] = 4

    def test_sieving_primes(self):
        assert sieving_primes(50).tolist() == [2, 3, 5, 7]
        assert sieving_primes(49).tolist() == [2, 3, 5]

    def test_blocks(self):
        blocks = list(iter_prime_blocks(10_000, block=1000))

        assert len(blocks) == 10
        assert np.concatenate(blocks).tolist() == small_primes(10_000).tolist()

class TestFactorisation:

    def test_factorize(self):
        assert factorize(360) == {2: 3, 3: 2, 5: 1}
        assert factorize(1) == {}

        with pytest.raises(DomainError):
            factorize(0)

    def test_helpers(self):
        assert omega(360) == 3
        assert big_omega(360) == 6
        assert is_squarefree(30)
        assert not is_squarefree(12)
        assert mobius(30) == -1
        assert mobius(6) == 1
        assert mobius(12) == 0
        assert mobius(1) == 1
