"""Exact arithmetic in the ring of Gaussian integers Z[i].

Conventions used throughout the package:

* A Gaussian integer is *odd* if it is coprime to 1+i, i.e. its norm is odd.
* An odd element is *primary* if it is congruent to 1 modulo (1+i)^3.
  Each odd element has exactly one primary associate, so primary elements
  give a canonical generator for every odd ideal.
* Every nonzero z factors uniquely as i^j * (1+i)^m * n with j in {0,..,3},
  m >= 0 and n primary (``canonical_decomposition``).

Exact integer arithmetic only; numerics live elsewhere.
"""

from __future__ import annotations

import math
from typing import Iterator

import sympy

__all__ = [
    "GaussInt",
    "ONE",
    "I",
    "LAMBDA",
    "units",
    "is_primary",
    "primarize",
    "gcd",
    "is_coprime",
    "is_gaussian_prime",
    "canonical_decomposition",
    "factor",
    "prime_above",
    "residue_system",
    "reduce_mod",
]


class GaussInt:
    """A Gaussian integer a + b*i with exact ``int`` components.

    Parameters
    ----------
    re, im : int
        Real and imaginary parts.

    Notes
    -----
    Instances are immutable value objects: hashable, comparable by value,
    usable as dict keys. Mixed arithmetic with Python ints is supported.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: int, im: int = 0):
        object.__setattr__(self, "re", int(re))
        object.__setattr__(self, "im", int(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussInt is immutable")

    def __reduce__(self):
        # Reconstruct through __init__: the blocked __setattr__ breaks the
        # default slot-state pickle path.
        return (GaussInt, (self.re, self.im))

    # -- basic structure ---------------------------------------------------

    def norm(self) -> int:
        """Return the field norm a^2 + b^2 (a nonnegative rational integer)."""
        return self.re * self.re + self.im * self.im

    def conj(self) -> "GaussInt":
        """Return the complex conjugate a - b*i."""
        return GaussInt(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_odd(self) -> bool:
        """True if coprime to 1+i, i.e. re + im is odd."""
        return (self.re + self.im) % 2 == 1

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return GaussInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other):
        """Nearest-element division: q, r with self = q*other + r.

        The remainder satisfies N(r) <= N(other)/2, which makes the
        Euclidean algorithm terminate.
        """
        other = _coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian integer")
        t = self * other.conj()
        q = GaussInt(_round_div(t.re, n), _round_div(t.im, n))
        return q, self - q * other

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other) -> bool:
        """True if self divides other exactly."""
        return (_coerce(other) % self).is_zero()

    def exact_div(self, other) -> "GaussInt":
        """Return self / other, raising ValueError if it is not exact."""
        q, r = divmod(self, _coerce(other))
        if not r.is_zero():
            raise ValueError(f"{other} does not divide {self}")
        return q

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussInt({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _coerce(x) -> GaussInt:
    if isinstance(x, GaussInt):
        return x
    if isinstance(x, int):
        return GaussInt(x, 0)
    raise TypeError(f"cannot interpret {x!r} as a Gaussian integer")


def _round_div(a: int, n: int) -> int:
    # nearest integer to a/n for n > 0, exact in integer arithmetic
    return (2 * a + n) // (2 * n)


ONE = GaussInt(1, 0)
I = GaussInt(0, 1)
LAMBDA = GaussInt(1, 1)

_UNITS = (GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1))
_UNIT_INV = {0: 0, 1: 3, 2: 2, 3: 1}  # i^j -> i^-j


def units() -> tuple:
    """Return the four units (1, i, -1, -i)."""
    return _UNITS


def is_primary(z: GaussInt) -> bool:
    """True if z is congruent to 1 modulo (1+i)^3.

    Works out to: re odd, im even, and im - re + 1 divisible by 4.
    """
    return z.re % 2 == 1 and z.im % 2 == 0 and (z.im - z.re + 1) % 4 == 0


def primarize(z: GaussInt) -> tuple[GaussInt, GaussInt]:
    """Split an odd z as z = unit * m with m primary.

    Parameters
    ----------
    z : GaussInt
        Any element coprime to 1+i.

    Returns
    -------
    (unit, m) : pair of GaussInt
        ``unit`` is one of 1, i, -1, -i and ``m`` is primary.

    Raises
    ------
    ValueError
        If z is even (divisible by 1+i), where no primary associate exists.
    """
    if not z.is_odd():
        raise ValueError(f"{z} is even; only odd elements have a primary associate")
    for j, u in enumerate(_UNITS):
        m = u * z
        if is_primary(m):
            return _UNITS[_UNIT_INV[j]], m
    raise AssertionError("unreachable: every odd element has a primary associate")


def gcd(z: GaussInt, w: GaussInt) -> GaussInt:
    """A greatest common divisor of z and w (determined up to a unit).

    The primary associate is returned when the gcd is odd; gcds divisible
    by 1+i keep whatever associate the Euclidean loop produced times the
    primary normalization of their odd part.
    """
    a, b = _coerce(z), _coerce(w)
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    if a.is_odd():
        return primarize(a)[1]
    # normalize the odd part so results are reproducible
    m = 0
    while not a.is_odd():
        a = a.exact_div(LAMBDA)
        m += 1
    return LAMBDA**m * primarize(a)[1]


def is_coprime(z: GaussInt, w: GaussInt) -> bool:
    return gcd(z, w).is_unit()


def is_gaussian_prime(z: GaussInt) -> bool:
    """Primality test: norm is prime, or z is a unit multiple of a rational
    prime congruent to 3 mod 4."""
    n = z.norm()
    if n <= 1:
        return False
    if sympy.isprime(n):
        return True
    r = math.isqrt(n)
    return r * r == n and r % 4 == 3 and sympy.isprime(r)


def canonical_decomposition(z: GaussInt) -> tuple[int, int, GaussInt]:
    """Write z = i^j * (1+i)^m * n with n primary, j in {0,1,2,3}, m >= 0.

    Returns
    -------
    (j, m, n) : tuple
        Unit exponent, ramified exponent, and the primary odd part.

    Raises
    ------
    ValueError
        If z is zero.
    """
    if z.is_zero():
        raise ValueError("zero has no canonical decomposition")
    m = 0
    w = z
    while not w.is_odd():
        w = w.exact_div(LAMBDA)
        m += 1
    u, n = primarize(w)
    return _UNITS.index(u), m, n


def prime_above(p: int) -> GaussInt:
    """Return a primary Gaussian prime dividing the rational prime p.

    For p = 2 this returns 1+i (not primary; the ramified prime has no
    primary associate). For p congruent to 3 mod 4 it returns -p. For
    p congruent to 1 mod 4 it returns the primary prime a+bi with norm p
    and b > 0 chosen so the result is deterministic.
    """
    if p == 2:
        return LAMBDA
    if p % 4 == 3:
        return GaussInt(-p, 0)
    # split case: gcd(p, t + i) with t^2 = -1 mod p is a prime above p
    t = sympy.ntheory.sqrt_mod(-1, p)
    w = gcd(GaussInt(p, 0), GaussInt(t, 1))
    w = primarize(w)[1]
    if w.im < 0:
        w = primarize(w.conj())[1]
    return w


def factor(z: GaussInt) -> tuple[GaussInt, int, list[tuple[GaussInt, int]]]:
    """Factor z = unit * (1+i)^m * prod(prime^e) over primary primes.

    Returns
    -------
    (unit, m, factors) : tuple
        ``unit`` is one of the four units, ``m`` the exponent of 1+i, and
        ``factors`` a list of (primary prime, exponent) pairs sorted by
        (norm, re, im).

    Notes
    -----
    Cost is dominated by sympy's factorization of the rational norm, so
    this is intended for scalar use. Bulk factorizations go through the
    sieve-backed primary table instead.
    """
    if z.is_zero():
        raise ValueError("cannot factor zero")
    j, m, n = canonical_decomposition(z)
    unit = _UNITS[j]
    out: list[tuple[GaussInt, int]] = []
    for p, ep in sorted(sympy.factorint(n.norm()).items()):
        if p % 4 == 3:
            assert ep % 2 == 0
            out.append((GaussInt(-p, 0), ep // 2))
            continue
        w = prime_above(p)
        wbar = primarize(w.conj())[1]
        e1 = 0
        t = n
        while w.divides(t):
            t = t.exact_div(w)
            e1 += 1
        if e1:
            out.append((w, e1))
        if ep - e1:
            out.append((wbar, ep - e1))
    out.sort(key=lambda fe: (fe[0].norm(), fe[0].re, fe[0].im))
    return unit, m, out


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (g, x, y) with a*x + b*y = g
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _hnf_basis(n: GaussInt) -> tuple[int, int, int]:
    """Column Hermite form of the lattice nZ[i].

    Returns (w, g, t) such that the lattice is spanned by (w, 0) and
    (t, g), where w = N(n)/g and g = gcd(re, im).
    """
    a, b = n.re, n.im
    g, x0, y0 = _xgcd(b, a)  # x0*b + y0*a = g
    if g < 0:
        g, x0, y0 = -g, -x0, -y0
    nn = n.norm()
    w = nn // g
    t = (x0 * a - y0 * b) % w
    return w, g, t


def residue_system(n: GaussInt) -> list[GaussInt]:
    """A complete set of residues modulo n, in a fixed deterministic order.

    Uses the Hermite normal form of the lattice nZ[i]: representatives are
    x + y*i with 0 <= x < N(n)/g and 0 <= y < g, g = gcd(re n, im n).
    The list has exactly N(n) elements.
    """
    if n.is_zero():
        raise ValueError("modulus must be nonzero")
    w, g, _ = _hnf_basis(n)
    return [GaussInt(x, y) for y in range(g) for x in range(w)]


def residue_system_arrays(n: GaussInt):
    """Vectorized residue system: int64 arrays (re, im) of length N(n)."""
    import numpy as np

    if n.is_zero():
        raise ValueError("modulus must be nonzero")
    w, g, _ = _hnf_basis(n)
    y, x = np.mgrid[0:g, 0:w]
    return x.ravel().astype(np.int64), y.ravel().astype(np.int64)


def reduce_mod(z: GaussInt, n: GaussInt) -> GaussInt:
    """Reduce z to its canonical representative in ``residue_system(n)``."""
    w, g, t = _hnf_basis(n)
    k = z.im % g if g else 0
    steps = (z.im - k) // g
    x = (z.re - steps * t) % w
    return GaussInt(x, k)


def iter_box(bound: int) -> Iterator[GaussInt]:
    """Yield all z with |re|, |im| <= bound, row-major; handy in tests."""
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            yield GaussInt(a, b)
