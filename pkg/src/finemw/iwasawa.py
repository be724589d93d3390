"""Cyclotomic polynomials in the Iwasawa variable and characteristic ideals.

The variable x corresponds to gamma - 1 for a fixed topological generator
gamma of the Galois group of the cyclotomic tower, so the level-n cyclotomic
polynomial is

    cyclotomic_poly(p, 0) = x,
    cyclotomic_poly(p, n) = ((1+x)^(p^n) - 1) / ((1+x)^(p^(n-1)) - 1),  n >= 1,

a distinguished polynomial of degree p^(n-1)(p-1).  Characteristic ideals are
kept in factored form: a p-power exponent, a multiset of cyclotomic factors,
and optional extra distinguished factors.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

import gmpy2

from .numbertheory import is_prime, prime_power_phi
from .polyarith import IntPoly, binomial_row, divide_exact


def _require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"expected an odd prime, got {p}")


@lru_cache(maxsize=256)
def omega_poly(p: int, n: int) -> IntPoly:
    """(1+x)^(p^n) - 1, expanded exactly."""
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    row = binomial_row(p**n)
    row[0] -= 1
    return IntPoly(row)


@lru_cache(maxsize=256)
def cyclotomic_poly(p: int, n: int) -> IntPoly:
    """Level-n cyclotomic polynomial in the Iwasawa variable.

    For n >= 1 the quotient defining it telescopes to the exact sum
    sum_{k=0}^{p-1} (1+x)^(k * p^(n-1)), which avoids a large division.
    """
    _require_odd_prime(p)
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    if n == 0:
        return IntPoly([0, 1])
    q = p ** (n - 1)
    deg = (p - 1) * q
    out = [gmpy2.mpz(0)] * (deg + 1)
    for k in range(p):
        m = k * q
        c = gmpy2.mpz(1)
        for j in range(m + 1):
            out[j] += c
            c = c * (m - j) // (j + 1)
    return IntPoly(out)


def cyclotomic_degree(p: int, n: int) -> int:
    """Degree of cyclotomic_poly(p, n): 1 at level 0, else phi(p^n)."""
    return 1 if n == 0 else prime_power_phi(p, n)


@lru_cache(maxsize=128)
def signed_omega(p: int, n: int, sign: str) -> IntPoly:
    """Product of the level <= n cyclotomic polynomials of one parity.

    sign "+" takes the even levels including 0; sign "-" takes the odd
    levels.  These are the signed annihilators attached to the plus/minus
    norm subgroups.
    """
    if n < 1:
        raise ValueError(f"level must be >= 1, got {n}")
    if sign == "+":
        levels = range(0, n + 1, 2)
    elif sign == "-":
        levels = range(1, n + 1, 2)
    else:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    out = IntPoly([1])
    for i in levels:
        out = out * cyclotomic_poly(p, i)
    return out


def is_distinguished(poly: IntPoly, p: int) -> bool:
    """Monic with every non-leading coefficient divisible by p."""
    if poly.is_zero() or not poly.is_monic():
        return False
    return all(c % p == 0 for c in poly.coeffs[:-1])


# -- Bezout certificate -----------------------------------------------------


def _frac_divmod(a: list[Fraction], b: list[Fraction]):
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(b):
            break
        c = r[-1] / b[-1]
        d = len(r) - len(b)
        q[d] = c
        for j, bc in enumerate(b):
            r[d + j] -= c * bc
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return q, r


def bezout_p_power(p: int, n: int) -> tuple[IntPoly, IntPoly, int]:
    """Integer polynomials (A, B) and m with A*w+ + B*w- = p^m exactly,
    where w+/w- are the signed products at level n.

    The extended Euclidean algorithm runs over the rationals; denominators
    are then cleared and common integer content stripped, which leaves a
    p-power on the right-hand side because the two signed products are
    coprime modulo every other prime.  The certificate is re-expanded and
    checked before returning.
    """
    _require_odd_prime(p)
    wplus = signed_omega(p, n, "+")
    wminus = signed_omega(p, n, "-")

    a = [Fraction(c) for c in wplus.coeffs]
    b = [Fraction(c) for c in wminus.coeffs]
    # invariant: r0 = s0*w+ + t0*w-, r1 = s1*w+ + t1*w-
    r0, s0, t0 = a, [Fraction(1)], [Fraction(0)]
    r1, s1, t1 = b, [Fraction(0)], [Fraction(1)]

    def poly_sub(u, v):
        out = list(u) + [Fraction(0)] * (len(v) - len(u))
        for i, c in enumerate(v):
            out[i] -= c
        while out and out[-1] == 0:
            out.pop()
        return out

    def poly_mul(u, v):
        if not u or not v:
            return []
        out = [Fraction(0)] * (len(u) + len(v) - 1)
        for i, cu in enumerate(u):
            if cu:
                for j, cv in enumerate(v):
                    out[i + j] += cu * cv
        return out

    while len(r1) > 1:
        q, r = _frac_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    if not r1:
        raise ArithmeticError("signed products are not coprime")  # unreachable
    const, s, t = r1[0], s1, t1

    denom = lcm(
        const.denominator,
        *[c.denominator for c in s],
        *[c.denominator for c in t],
    )
    ai = [int(c * denom) for c in s]
    bi = [int(c * denom) for c in t]
    ci = int(const * denom)
    g = abs(ci)
    for c in ai + bi:
        g = gcd(g, c)
    ai = [c // g for c in ai]
    bi = [c // g for c in bi]
    ci //= g
    if ci < 0:
        ai, bi, ci = [-c for c in ai], [-c for c in bi], -ci

    m = 0
    val = ci
    while val % p == 0:
        val //= p
        m += 1
    if val != 1 or m < 1:
        raise ArithmeticError(f"certificate constant {ci} is not a power of {p}")

    A, B = IntPoly(ai), IntPoly(bi)
    expansion = A * wplus + B * wminus
    if expansion != IntPoly([p**m]):
        raise AssertionError("certificate failed to re-expand")
    return A, B, m


# -- characteristic ideals ---------------------------------------------------


@dataclass(frozen=True)
class CharIdeal:
    """Characteristic ideal in factored, unit-normalized form.

    ``cyclo`` maps a cyclotomic level to a positive exponent; ``extra``
    carries additional distinguished factors that are not cyclotomic at any
    level, as (polynomial, exponent) pairs.  The trivial ideal has mu = 0
    and no factors.
    """

    p: int
    mu: int = 0
    cyclo: tuple[tuple[int, int], ...] = ()
    extra: tuple[tuple[IntPoly, int], ...] = field(default=())

    def __post_init__(self):
        _require_odd_prime(self.p)
        if self.mu < 0:
            raise ValueError("mu must be >= 0")
        levels = [n for n, _ in self.cyclo]
        if levels != sorted(set(levels)):
            raise ValueError("cyclotomic factors must be sorted and distinct")
        if any(e < 1 for _, e in self.cyclo):
            raise ValueError("cyclotomic exponents must be >= 1")
        for poly, e in self.extra:
            if e < 1:
                raise ValueError("extra factor exponents must be >= 1")
            if not is_distinguished(poly, self.p):
                raise ValueError(f"extra factor {poly} is not distinguished")
            n = _cyclotomic_level_of(poly, self.p)
            if n is not None:
                raise ValueError(
                    f"extra factor {poly} equals the level-{n} cyclotomic factor"
                )

    def is_trivial(self) -> bool:
        return self.mu == 0 and not self.cyclo and not self.extra

    def cyclo_exponent(self, n: int) -> int:
        for level, e in self.cyclo:
            if level == n:
                return e
        return 0

    def invariants(self) -> tuple[int, int]:
        """(lambda, mu): total factor degree and the p-power exponent."""
        lam = sum(e * cyclotomic_degree(self.p, n) for n, e in self.cyclo)
        lam += sum(e * poly.degree for poly, e in self.extra)
        return lam, self.mu

    def __mul__(self, other: "CharIdeal") -> "CharIdeal":
        if self.p != other.p:
            raise ValueError("prime mismatch")
        exps: dict[int, int] = dict(self.cyclo)
        for n, e in other.cyclo:
            exps[n] = exps.get(n, 0) + e
        extra: dict[IntPoly, int] = dict(self.extra)
        for poly, e in other.extra:
            extra[poly] = extra.get(poly, 0) + e
        return CharIdeal(
            self.p,
            self.mu + other.mu,
            tuple(sorted(exps.items())),
            _sort_extra(extra.items()),
        )

    def generator(self) -> IntPoly:
        """Expanded generator p^mu * product of all factors."""
        out = IntPoly([self.p**self.mu])
        for n, e in self.cyclo:
            out = out * cyclotomic_poly(self.p, n) ** e
        for poly, e in self.extra:
            out = out * poly**e
        return out

    def to_text(self) -> str:
        """Canonical text form, e.g. ``3^0 * x^1 * Phi(1)^2``."""
        parts = [f"{self.p}^{self.mu}"]
        for n, e in self.cyclo:
            parts.append(f"x^{e}" if n == 0 else f"Phi({n})^{e}")
        for poly, e in self.extra:
            parts.append(f"({poly})^{e}")
        return " * ".join(parts)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "mu": self.mu,
            "cyclo": {str(n): e for n, e in self.cyclo},
            "extra": [[list(poly.coeffs), e] for poly, e in self.extra],
            "text": self.to_text(),
        }

    def __str__(self) -> str:
        return self.to_text()


def _sort_extra(items: Iterable[tuple[IntPoly, int]]) -> tuple[tuple[IntPoly, int], ...]:
    return tuple(sorted(items, key=lambda it: (it[0].degree, it[0].coeffs)))


def _cyclotomic_level_of(poly: IntPoly, p: int) -> int | None:
    """Level n with poly == cyclotomic_poly(p, n), if one exists."""
    d = poly.degree
    if d == 1:
        return 0 if poly == IntPoly([0, 1]) else None
    n = 1
    while cyclotomic_degree(p, n) < d:
        n += 1
    if cyclotomic_degree(p, n) == d and poly == cyclotomic_poly(p, n):
        return n
    return None


def char_ideal_from_exponents(
    p: int,
    mu: int,
    exps: Mapping[int, int],
    extra: Sequence[tuple[IntPoly, int]] = (),
) -> CharIdeal:
    """Build a normalized ideal, dropping zero exponents."""
    for n, e in exps.items():
        if n < 0 or e < 0:
            raise ValueError(f"invalid cyclotomic exponent Phi({n})^{e}")
    cyclo = tuple(sorted((n, e) for n, e in exps.items() if e > 0))
    kept = _sort_extra((poly, e) for poly, e in extra if e > 0)
    return CharIdeal(p, mu, cyclo, kept)


def char_gcd(a: CharIdeal, b: CharIdeal) -> CharIdeal:
    """Componentwise minimum; extra factors match by exact equality."""
    if a.p != b.p:
        raise ValueError(f"prime mismatch: {a.p} vs {b.p}")
    exps = {}
    b_cyclo = dict(b.cyclo)
    for n, e in a.cyclo:
        m = min(e, b_cyclo.get(n, 0))
        if m > 0:
            exps[n] = m
    extra = {}
    b_extra = dict(b.extra)
    for poly, e in a.extra:
        m = min(e, b_extra.get(poly, 0))
        if m > 0:
            extra[poly] = m
    return CharIdeal(
        a.p,
        min(a.mu, b.mu),
        tuple(sorted(exps.items())),
        _sort_extra(extra.items()),
    )


def invariants(c: CharIdeal) -> tuple[int, int]:
    """Functional alias for CharIdeal.invariants()."""
    return c.invariants()
