"""Small exact number-theory helpers: primality, totients, multiplicative orders.

Everything here works on machine-scale integers with plain trial division;
the moduli that show up (group exponents, conductors) are tiny.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as an ascending list of (prime, exponent)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"phi undefined for {n}")
    out = n
    for p, _ in factorize(n):
        out = out // p * (p - 1)
    return out


@lru_cache(maxsize=4096)
def prime_power_phi(p: int, k: int) -> int:
    """phi(p^k) for prime p, with phi(p^0) = 1."""
    if k == 0:
        return 1
    return p ** (k - 1) * (p - 1)


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def multiplicative_order(a: int, m: int) -> int:
    """Order of a modulo m, computed through the divisors of phi(m).

    Requires gcd(a, m) = 1 and m >= 1; the order of anything mod 1 is 1.
    """
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m == 1:
        return 1
    a %= m
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit modulo {m}")
    for d in divisors(euler_phi(m)):
        if pow(a, d, m) == 1:
            return d
    raise AssertionError("order must divide phi(m)")


def naive_multiplicative_order(a: int, m: int) -> int:
    """Order of a modulo m by repeated multiplication; brute-force oracle."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m == 1:
        return 1
    a %= m
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit modulo {m}")
    t = a
    order = 1
    while t != 1:
        t = t * a % m
        order += 1
    return order


def padic_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def hasse_bound_ok(ap: int, p: int) -> bool:
    """|ap| <= 2*sqrt(p), checked exactly as ap^2 <= 4p."""
    return ap * ap <= 4 * p
