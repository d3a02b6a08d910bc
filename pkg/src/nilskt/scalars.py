"""Complex scalars in two modes.

Exact values are Gaussian rationals (:class:`GaussianRational`); floating values
are plain Python ``complex``.  Ints and Fractions are accepted anywhere and
behave as exact real values.  Any expression mixing an exact value with a float
or complex is promoted to ``complex``.
"""
from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Union

DEFAULT_TOL = 1e-9


class GaussianRational:
    """A number ``(a + b i) / q`` with integers a, b and q > 0, kept reduced."""

    __slots__ = ("_a", "_b", "_q")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        q = re.denominator * im.denominator // math.gcd(re.denominator, im.denominator)
        self._set(re.numerator * (q // re.denominator), im.numerator * (q // im.denominator), q)

    @classmethod
    def _raw(cls, a: int, b: int, q: int) -> "GaussianRational":
        obj = cls.__new__(cls)
        obj._set(a, b, q)
        return obj

    def _set(self, a: int, b: int, q: int) -> None:
        if q != 1:
            g = math.gcd(a, b, q)
            if g != 1:
                a //= g
                b //= g
                q //= g
        self._a, self._b, self._q = a, b, q

    # accessors
    @property
    def real(self) -> Fraction:
        return Fraction(self._a, self._q)

    @property
    def imag(self) -> Fraction:
        return Fraction(self._b, self._q)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self._a, -self._b, self._q)

    def abs2(self) -> Fraction:
        return Fraction(self._a * self._a + self._b * self._b, self._q * self._q)

    def is_real(self) -> bool:
        return self._b == 0

    # arithmetic
    def __add__(self, other):
        if isinstance(other, GaussianRational):
            a, b, q = other._a, other._b, other._q
            if q == self._q:
                return GaussianRational._raw(self._a + a, self._b + b, q)
            return GaussianRational._raw(self._a * q + a * self._q, self._b * q + b * self._q, self._q * q)
        if isinstance(other, int):
            return GaussianRational._raw(self._a + other * self._q, self._b, self._q)
        if isinstance(other, Fraction):
            n, d = other.numerator, other.denominator
            return GaussianRational._raw(self._a * d + n * self._q, self._b * d, self._q * d)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self._a, -self._b, self._q)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction, float, complex)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, q = other._a, other._b, other._q
            return GaussianRational._raw(self._a * a - self._b * b, self._a * b + self._b * a, self._q * q)
        if isinstance(other, int):
            return GaussianRational._raw(self._a * other, self._b * other, self._q)
        if isinstance(other, Fraction):
            return GaussianRational._raw(self._a * other.numerator, self._b * other.numerator,
                                         self._q * other.denominator)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        # 1/((a+bi)/q) = q (a - bi) / (a^2 + b^2)
        if n < 0:
            raise AssertionError
        return GaussianRational._raw(self._q * self._a, -self._q * self._b, n)

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("GaussianRational division by zero")
            other = Fraction(other)
            n, d = other.numerator, other.denominator
            if n < 0:
                n, d = -n, -d
            return GaussianRational._raw(self._a * d, self._b * d, self._q * n)
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other) * self.inverse()
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return complex(self) ** n
        if n < 0:
            return self.inverse() ** (-n)
        out = GaussianRational._raw(1, 0, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # comparisons / conversions
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._q == other._q
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and Fraction(self._a, self._q) == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._q))
        return hash((self._a, self._b, self._q))

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __complex__(self):
        return complex(self._a / self._q, self._b / self._q)

    def __abs__(self):
        return math.sqrt(self._a * self._a + self._b * self._b) / self._q

    def __repr__(self):
        return f"GaussianRational({self.real}, {self.imag})"

    def __str__(self):
        re, im = self.real, self.imag
        if im == 0:
            return str(re)
        if re == 0:
            return f"{im}*i"
        sign = "+" if im > 0 else "-"
        return f"{re}{sign}{abs(im)}*i"


Scalar = Union[int, Fraction, GaussianRational, float, complex]

I = GaussianRational(0, 1)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational))


def exact(x) -> GaussianRational:
    """Coerce an exact value (int, Fraction, ``"p/q"`` string, GaussianRational) to a GaussianRational."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction, str)):
        return GaussianRational(Fraction(x))
    if isinstance(x, (float, complex)):
        raise TypeError(f"refusing to convert floating value {x!r} to exact")
    raise TypeError(f"not a scalar: {x!r}")


def conj(x):
    return x.conjugate()


def re(x):
    return x.real


def im(x):
    return x.imag


def abs2(x):
    if isinstance(x, GaussianRational):
        return x.abs2()
    if isinstance(x, (int, Fraction)):
        return x * x
    return (x * x.conjugate()).real


def is_zero(x, tol: float = DEFAULT_TOL) -> bool:
    if is_exact(x):
        return x == 0
    return abs(x) <= tol


def simplify(x):
    """Demote a value to the simplest exact type that holds it (int, Fraction or GaussianRational)."""
    if isinstance(x, GaussianRational):
        if x.is_real():
            x = x.real
        else:
            return x
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def realify(x, tol: float = DEFAULT_TOL):
    """Return x as a real scalar; raises if its imaginary part is not (near) zero."""
    if isinstance(x, GaussianRational):
        if not x.is_real():
            raise ValueError(f"expected a real value, got {x}")
        return simplify(x)
    if isinstance(x, complex):
        if abs(x.imag) > tol * max(1.0, abs(x.real)):
            raise ValueError(f"expected a real value, got {x}")
        return x.real
    if isinstance(x, numbers.Real):
        return x
    raise TypeError(f"not a scalar: {x!r}")


def to_float(x) -> complex:
    return complex(x)


def sqrt_exact_or_float(x):
    """Square root of a non-negative real, exact when x is a perfect rational square."""
    if is_exact(x) and not isinstance(x, GaussianRational):
        f = Fraction(x)
        if f >= 0:
            n, d = math.isqrt(f.numerator), math.isqrt(f.denominator)
            if n * n == f.numerator and d * d == f.denominator:
                return Fraction(n, d)
    return math.sqrt(float(x))


def parse_scalar(value, exact_mode: bool = True):
    """Decode the JSON scalar encoding.

    Rationals are strings ``"p/q"``, floats are JSON numbers, and complex values
    are objects ``{"re": ..., "im": ...}``.  Exact mode refuses JSON floats.
    """
    if isinstance(value, dict):
        if set(value) - {"re", "im"}:
            raise ValueError(f"complex literal has unexpected keys: {sorted(value)}")
        r = parse_scalar(value.get("re", 0), exact_mode)
        i = parse_scalar(value.get("im", 0), exact_mode)
        if is_exact(r) and is_exact(i):
            return simplify(GaussianRational(r, i))
        return complex(r) + 1j * complex(i)
    if isinstance(value, bool):
        raise ValueError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return simplify(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational literal {value!r}") from exc
    if isinstance(value, float):
        if exact_mode:
            raise ValueError(f"float literal {value!r} not allowed in exact mode; use a \"p/q\" string")
        return value
    raise ValueError(f"not a scalar literal: {value!r}")


def format_scalar(x) -> str:
    if is_exact(x):
        return str(simplify(x)) if not isinstance(x, GaussianRational) or x.is_real() else str(x)
    if isinstance(x, complex):
        if x.imag == 0:
            return repr(x.real)
        return f"{x.real!r}{'+' if x.imag >= 0 else '-'}{abs(x.imag)!r}*i"
    return repr(x)
