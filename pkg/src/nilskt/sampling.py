"""Seeded random inputs for randomized checks (exact Gaussian rationals or floats)."""
from __future__ import annotations

import random
from fractions import Fraction

from .hermitian import HermitianForm
from .scalars import GaussianRational
from .skt_family import SktParams, skt2_residual


def rational(rng: random.Random, num: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def gaussian(rng: random.Random, num: int = 5, den: int = 4) -> GaussianRational:
    return GaussianRational(rational(rng, num, den), rational(rng, num, den))


def nonzero_gaussian(rng: random.Random, num: int = 5, den: int = 4) -> GaussianRational:
    while True:
        g = gaussian(rng, num, den)
        if g != 0:
            return g


def complex_float(rng: random.Random, scale: float = 2.0) -> complex:
    return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


def matrix2(rng: random.Random, exact: bool = True) -> list:
    pick = (lambda: gaussian(rng)) if exact else (lambda: complex_float(rng))
    return [[pick(), pick()], [pick(), pick()]]


def invertible2(rng: random.Random, exact: bool = True) -> list:
    while True:
        m = matrix2(rng, exact)
        d = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if (d != 0) if exact else abs(d) > 1e-2:
            return m


def params(rng: random.Random, exact: bool = True) -> SktParams:
    pick = (lambda: gaussian(rng)) if exact else (lambda: complex_float(rng))
    return SktParams(pick(), pick(), pick(), pick(), pick())


def skt_params(rng: random.Random, exact: bool = True) -> SktParams:
    """A tuple on the SKT locus: C = t B with t real chosen to cancel |A|^2 + |D|^2 + |E|^2."""
    while True:
        p = params(rng, exact)
        b2 = abs(p.B) ** 2 if not exact else p.B.abs2()
        if b2 == 0 or (not exact and b2 < 1e-3):
            continue
        rest = (abs(p.A) ** 2 + abs(p.D) ** 2 + abs(p.E) ** 2) if not exact else (
            p.A.abs2() + p.D.abs2() + p.E.abs2())
        if rest == 0:
            continue
        t = -rest / (2 * b2)
        q = SktParams(p.A, p.B, p.B * t, p.D, p.E)
        if exact:
            assert skt2_residual(q) == 0
        return q


def non_skt_params(rng: random.Random, exact: bool = True) -> SktParams:
    while True:
        p = params(rng, exact)
        r = skt2_residual(p)
        if not p.is_abelian() and (r != 0 if exact else abs(r) > 1e-3):
            return p


def positive_form(rng: random.Random, exact: bool = True, m: int = 3) -> HermitianForm:
    """Omega with Hermitian matrix H = L L^* + I (positive definite)."""
    pick = (lambda: gaussian(rng, 3, 3)) if exact else (lambda: complex_float(rng, 1.0))
    L = [[pick() for _ in range(m)] for _ in range(m)]
    H = [[sum((L[i][k] * L[j][k].conjugate() for k in range(m)), 0) + (1 if i == j else 0)
          for j in range(m)] for i in range(m)]
    return HermitianForm.from_hermitian(H)


def real_invertible(rng: random.Random, n: int, bound: int = 3) -> list:
    from . import linalg
    while True:
        q = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        if linalg.det(q) != 0:
            return q
