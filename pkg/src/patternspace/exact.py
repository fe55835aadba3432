"""Exact scalar helpers: rationals, square-root bounds and quadratic surds.

Everything geometric in the package is carried in ``fractions.Fraction``.  The
only irrational quantities that ever get compared are of the form a + b*sqrt(s)
with a, b, s rational, which admit an exact sign test.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

Q = Fraction


def frac(x) -> Fraction:
    """Coerce int / str "p/q" / Fraction to Fraction.  Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"refusing to build an exact rational from {type(x).__name__}")


def sgn(x) -> int:
    return (x > 0) - (x < 0)


def sqrt_exact(x: Fraction) -> Fraction | None:
    """sqrt(x) if it is rational, else None."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative")
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


_SCALE = 10**6


def sqrt_upper(x, scale: int = _SCALE) -> Fraction:
    """Rational upper bound for sqrt(x); exact when x is a rational square."""
    x = Fraction(x)
    s = sqrt_exact(x)
    if s is not None:
        return s
    n, d = x.numerator, x.denominator
    # sqrt(n/d) = sqrt(n*d)/d
    k = isqrt(n * d * scale * scale)
    return Fraction(k + 1, d * scale)


def sqrt_lower(x, scale: int = _SCALE) -> Fraction:
    """Rational lower bound for sqrt(x); exact when x is a rational square."""
    x = Fraction(x)
    s = sqrt_exact(x)
    if s is not None:
        return s
    n, d = x.numerator, x.denominator
    k = isqrt(n * d * scale * scale)
    return Fraction(k, d * scale)


def sign_surd(a, b, s) -> int:
    """Exact sign of a + b*sqrt(s) for rationals a, b and s >= 0."""
    if b == 0 or s == 0:
        return sgn(a)
    sa, sb = sgn(a), sgn(b)
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    t = a * a - b * b * s
    if t == 0:
        return 0
    return sa if t > 0 else sb


def sqrt_sum_le(s, t, bound) -> bool:
    """Decide sqrt(s) + sqrt(t) <= bound exactly (s, t >= 0, bound rational)."""
    if bound < 0:
        return False
    if t == 0:
        return s <= bound * bound
    # sqrt(s) <= bound - sqrt(t)  <=>  bound - sqrt(t) >= 0 and s <= bound^2 - 2 bound sqrt(t) + t
    if sign_surd(bound, -1, t) < 0:
        return False
    return sign_surd(bound * bound + t - s, -2 * bound, t) >= 0


def squarefree_split(n: int) -> tuple[int, int]:
    """n = k*k*m with m squarefree.  Trial division to the cube root, then the
    cofactor has at most two prime factors, which a square test settles."""
    if n <= 0:
        raise ValueError("positive integer expected")
    k, m = 1, 1
    p = 2
    while p * p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        m *= p ** (e % 2)
        p += 1 if p == 2 else 2
    r = isqrt(n)
    if r * r == n:
        k *= r
    else:
        m *= n
    return k, m


@dataclass(frozen=True)
class Surd:
    """a + b*sqrt(m) with m a squarefree integer > 1 (or b == 0, m == 1)."""
    a: Fraction
    b: Fraction
    m: int

    @staticmethod
    def make(a, b, s) -> "Surd":
        a, b, s = Fraction(a), Fraction(b), Fraction(s)
        if b == 0 or s == 0:
            return Surd(a, Fraction(0), 1)
        # sqrt(p/q) = sqrt(p*q)/q
        k, m = squarefree_split(s.numerator * s.denominator)
        b = b * Fraction(k, s.denominator)
        if m == 1:
            return Surd(a + b, Fraction(0), 1)
        return Surd(a, b, m)

    def sign(self) -> int:
        return sign_surd(self.a, self.b, self.m)

    def is_rational(self) -> bool:
        return self.b == 0

    def __float__(self):
        return float(self.a) + float(self.b) * self.m ** 0.5
