"""Dense arbitrary-precision integer polynomials.

A polynomial is a tuple of coefficients in ascending degree with no trailing
zeros; the zero polynomial is the empty tuple.  Multiplication switches to a
Kronecker-packed product (one giant integer multiply via gmpy2) once the
schoolbook convolution would be expensive; packing is only attempted when both
operands are nonnegative, which covers the binomial-heavy polynomials this
package produces.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

import gmpy2


class InexactDivisionError(ArithmeticError):
    """Raised when a polynomial quotient does not exist over the integers."""


# schoolbook convolution cost above which packing pays off
_KRONECKER_CUTOFF = 4096


def _normalize(coeffs: Sequence[int]) -> tuple[int, ...]:
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(int(c) for c in coeffs[:end])


class IntPoly:
    """Immutable dense polynomial over the integers."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _normalize(list(coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    # -- basic structure -------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree of the polynomial; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        if len(a) * len(b) >= _KRONECKER_CUTOFF and min(a) >= 0 and min(b) >= 0:
            return IntPoly(_kronecker_mul(a, b))
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(out)

    def scale(self, k: int) -> "IntPoly":
        if k == 0:
            return IntPoly()
        return IntPoly([c * k for c in self.coeffs])

    def shift(self, n: int) -> "IntPoly":
        """Multiply by x^n."""
        if self.is_zero():
            return self
        return IntPoly([0] * n + list(self.coeffs))

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative power")
        result = IntPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def evaluate(self, x: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    # -- display ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"IntPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "x" if i == 1 else f"x^{i}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append(f"{sign} {body}" if parts else f"{sign}{body}")
        return " ".join(parts)


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact product of nonnegative coefficient sequences via integer packing.

    Slot width exceeds the bit size of every convolution coefficient, so the
    packed integer product decodes uniquely back into the polynomial product.
    """
    abits = max(c.bit_length() for c in a)
    bbits = max(c.bit_length() for c in b)
    slot = abits + bbits + min(len(a), len(b)).bit_length() + 1
    pa = gmpy2.pack([gmpy2.mpz(c) for c in a], slot)
    pb = gmpy2.pack([gmpy2.mpz(c) for c in b], slot)
    out = gmpy2.unpack(pa * pb, slot)
    want = len(a) + len(b) - 1
    out = [int(c) for c in out[:want]]
    out += [0] * (want - len(out))
    return out


def divide_exact(a: IntPoly, b: IntPoly) -> IntPoly:
    """Quotient q with a = q * b over the integers.

    Raises InexactDivisionError when no such integer polynomial exists
    (either a coefficient division fails or a nonzero remainder is left).
    """
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return IntPoly()
    if a.degree < b.degree:
        raise InexactDivisionError(f"degree of {a!r} below divisor degree")
    rem = list(a.coeffs)
    bc = b.coeffs
    lead = bc[-1]
    qlen = len(rem) - len(bc) + 1
    q = [0] * qlen
    for k in range(qlen - 1, -1, -1):
        top = rem[k + len(bc) - 1]
        if top % lead != 0:
            raise InexactDivisionError(
                f"leading coefficient {top} not divisible by {lead}"
            )
        coef = top // lead
        q[k] = coef
        if coef:
            for j, cb in enumerate(bc):
                rem[k + j] -= coef * cb
    if any(rem):
        raise InexactDivisionError("nonzero remainder")
    return IntPoly(q)


def binomial_row(m: int) -> list[int]:
    """Coefficients of (1+x)^m, computed by the multiplicative recurrence."""
    row = [0] * (m + 1)
    c = gmpy2.mpz(1)
    for j in range(m + 1):
        row[j] = int(c)
        c = c * (m - j) // (j + 1)
    return row


def one_plus_x_power(m: int) -> IntPoly:
    return IntPoly(binomial_row(m))
