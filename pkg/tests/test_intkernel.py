import math

import pytest
from hypothesis import given, strategies as st

from gmtorsion.errors import FactorizationTimeout, InvalidArgument
from gmtorsion.intkernel import (
    egcd,
    factorize,
    is_perfect_square,
    is_prime,
    jacobi,
    primes_upto,
    squarefree_part,
)


def trial_factor(n):
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return sorted(out.items())


def legendre_by_squares(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if any(x * x % p == a for x in range(1, p)) else -1


ODD_PRIMES = [p for p in primes_upto(10_000) if p > 2]


def test_jacobi_examples():
    assert all(jacobi(1, p) == 1 for p in (3, 5, 7, 9, 15, 101))
    assert jacobi(5, 11) == 1
    assert jacobi(2, 7) == 1
    assert jacobi(-2, 7) == -1


@pytest.mark.parametrize("n", [0, -3, 4, 10])
def test_jacobi_rejects_bad_modulus(n):
    with pytest.raises(InvalidArgument):
        jacobi(3, n)


def test_jacobi_matches_squares_oracle():
    for p in primes_upto(200)[1:]:
        for a in range(-p, 2 * p):
            assert jacobi(a, p) == legendre_by_squares(a, p)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.sampled_from(ODD_PRIMES))
def test_jacobi_multiplicative(a, b, p):
    assert jacobi(a, p) * jacobi(b, p) == jacobi(a * b, p)


def test_is_perfect_square_examples():
    assert is_perfect_square(0) == 0
    assert is_perfect_square(4) == 2
    assert is_perfect_square(8) is None
    assert is_perfect_square(-4) is None


def test_is_perfect_square_exhaustive():
    roots = {r * r: r for r in range(1001)}
    for n in range(10**6 + 1):
        assert is_perfect_square(n) == roots.get(n)


@given(st.integers(0, 2**200))
def test_is_perfect_square_big(r):
    assert is_perfect_square(r * r) == r
    assert is_perfect_square(r * r + 2 * r + 2) is None


def test_is_prime_small_against_sieve():
    primes = set(primes_upto(100_000))
    assert all(is_prime(n) == (n in primes) for n in range(-5, 100_000))


@pytest.mark.parametrize(
    "n, expected",
    [
        (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
        (3317044064679887385961981, False),  # strong pseudoprime to the first 13 prime bases
        (2**61 - 1, True),
        (2**89 - 1, True),
        (2**127 - 1, True),
        ((2**61 - 1) * (2**67 - 1), False),
        (2**128 + 51, True),
    ],
)
def test_is_prime_hard_cases(n, expected):
    assert is_prime(n) is expected


def test_egcd():
    for a, b in [(240, 46), (-7, 3), (0, 5), (5, 0), (17, -17)]:
        g, u, v = egcd(a, b)
        assert g == math.gcd(a, b) and u * a + v * b == g


def test_factorize_matches_trial_division():
    for n in list(range(1, 3000)) + [600851475143, 2**32 + 1, 10**12 + 39 * 7]:
        assert factorize(n) == trial_factor(n)


def test_factorize_semiprime():
    p, q = 1_000_000_007, 998_244_353
    assert factorize(p * q * q) == [(q, 2), (p, 1)]


def test_factorize_timeout():
    p, q = 2**61 - 1, 2**67 - 1  # rho needs ~2^30 steps here
    with pytest.raises(FactorizationTimeout):
        factorize(p * q, timeout=0.05)


def test_squarefree_part_examples():
    assert squarefree_part(1) == (1, 1)
    assert squarefree_part(12) == (3, 2)
    assert squarefree_part(166465) == (985, 13)
    with pytest.raises(InvalidArgument):
        squarefree_part(0)


def _squarefree_by_trial(m):
    return all(m % (p * p) for p in range(2, math.isqrt(m) + 1))


@given(st.integers(1, 10**6))
def test_squarefree_part_property(n):
    m, b = squarefree_part(n)
    assert n == m * b * b
    assert _squarefree_by_trial(m)
