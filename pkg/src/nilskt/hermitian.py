"""Hermitian metrics given by invariant (1,1)-forms.

A metric is described by the matrix ``x`` of its fundamental form
``Omega = sum_ij x[i][j] a^i ^ conj(a^j)``, with ``conj(x[j][i]) = -x[i][j]``.
The associated Hermitian matrix is ``H = -i x``; the metric is positive iff H is.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .complex_structures import ComplexStructure, _coframe_of
from .forms import Coframe, Form, apply_J, box, exterior_d, linear_form, type_component, wedge
from .scalars import DEFAULT_TOL, I, is_exact, is_zero, realify, simplify

KAHLER, SKT, NEITHER = "kahler", "skt", "neither"


class NonPositiveMetricError(ValueError):
    pass


class DegenerateFormError(ValueError):
    pass


@dataclass(frozen=True)
class HermitianForm:
    x: tuple

    def __init__(self, x: Sequence[Sequence], tol: float = DEFAULT_TOL):
        rows = tuple(tuple(r) for r in x)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("coefficient matrix must be square")
        for i in range(n):
            for j in range(i, n):
                if not is_zero(rows[j][i].conjugate() + rows[i][j], tol):
                    raise ValueError(f"x[{j}][{i}] must equal -conj(x[{i}][{j}])")
        object.__setattr__(self, "x", rows)

    @classmethod
    def standard(cls, m: int = 3) -> "HermitianForm":
        """Omega_0 = (i/2) sum_k a^k ^ conj(a^k)."""
        return cls([[I / 2 if i == j else 0 for j in range(m)] for i in range(m)])

    @classmethod
    def from_hermitian(cls, h: Sequence[Sequence]) -> "HermitianForm":
        """Build from a Hermitian matrix H via x = i H."""
        return cls([[I * v if is_exact(v) else 1j * v for v in row] for row in h])

    @classmethod
    def from_form(cls, omega: Form, tol: float = DEFAULT_TOL) -> "HermitianForm":
        """Read the coefficients of a (1,1)-form on a complex coframe."""
        cf = omega.coframe
        m = cf.m
        rest = omega - type_component(omega, 1, 1)
        if not rest.is_zero(tol, max(1.0, omega.max_abs())):
            raise ValueError("form is not of type (1,1)")
        x = [[omega.coefficient((i, m + j)) for j in range(m)] for i in range(m)]
        return cls(x, tol)

    @property
    def m(self) -> int:
        return len(self.x)

    def hermitian_matrix(self) -> list:
        return [[-I * v if is_exact(v) else -1j * v for v in row] for row in self.x]

    def form(self, S) -> Form:
        cf = _coframe_of(S)
        m = cf.m
        if m != self.m:
            raise ValueError("coframe and form sizes differ")
        out = cf.zero()
        for i in range(m):
            for j in range(m):
                if self.x[i][j] != 0:
                    out = out + cf.monomial((i, m + j), self.x[i][j])
        return out

    def is_exact(self) -> bool:
        return all(is_exact(v) for row in self.x for v in row)


def is_positive(W: HermitianForm, tol: float = DEFAULT_TOL) -> bool:
    """All leading principal minors of -i x are positive."""
    h = W.hermitian_matrix()
    for k in range(1, W.m + 1):
        minor = linalg.det([row[:k] for row in h[:k]])
        minor = realify(minor, max(tol, 1e-12))
        if is_exact(minor):
            if minor <= 0:
                return False
        elif minor <= tol:
            return False
    return True


def metric_tensor(W: HermitianForm, S: ComplexStructure) -> list:
    """Real symmetric matrix g(X, Y) = Omega(X, J Y) on the dual basis of the real coframe."""
    omega_real = S.to_real(W.form(S))
    n = S.algebra.dim
    w = [[0] * n for _ in range(n)]
    for (i, j), v in omega_real.terms.items():
        v = realify(v, S.tol)
        w[i][j] = v
        w[j][i] = -v
    g = linalg.mat_mul(w, S.J_vectors)
    return [[simplify(v) if is_exact(v) else v for v in row] for row in g]


def _scale(f: Form) -> float:
    return max(1.0, f.max_abs())


def lee_form(W: HermitianForm, S, tol: float = DEFAULT_TOL) -> Form:
    """The 1-form theta with d(Omega^{n-1}) = theta ^ Omega^{n-1}."""
    cf = _coframe_of(S)
    omega = W.form(cf)
    power = cf.one()
    for _ in range(cf.m - 1):
        power = wedge(power, omega)
    target = exterior_d(power)
    columns = [wedge(cf.generator(k), power) for k in range(cf.dim)]
    monos = sorted({mono for c in columns for mono in c.terms} | set(target.terms))
    mat = [[c.terms.get(mono, 0) for c in columns] for mono in monos]
    rhs = [target.terms.get(mono, 0) for mono in monos]
    try:
        theta = linalg.lstsq_consistent(mat, rhs, tol)
    except linalg.SingularMatrixError as exc:
        raise DegenerateFormError(f"cannot solve for the Lee form: {exc}") from None
    return linear_form(cf, theta)


def is_balanced(W: HermitianForm, S, tol: float = DEFAULT_TOL) -> bool:
    theta = lee_form(W, S, tol)
    return theta.is_zero(tol, 1.0)


def skt_status(W: HermitianForm, S, allow_indefinite: bool = False, tol: float = DEFAULT_TOL) -> str:
    """``kahler`` if d Omega = 0, ``skt`` if box Omega = 0 but d Omega != 0, else ``neither``."""
    if not allow_indefinite and not is_positive(W, tol):
        raise NonPositiveMetricError("Omega is not positive; pass allow_indefinite=True for pseudo-metrics")
    cf = _coframe_of(S)
    omega = W.form(cf)
    d_omega = exterior_d(omega)
    scale = _scale(omega) * max(1.0, _structure_scale(cf))
    if d_omega.is_zero(tol, scale):
        return KAHLER
    b = exterior_d(apply_J(d_omega)) * (I / 2)
    if b.is_zero(tol, scale * max(1.0, _structure_scale(cf))):
        return SKT
    return NEITHER


def _structure_scale(cf: Coframe) -> float:
    return max((cf.d(k).max_abs() for k in range(cf.dim)), default=0.0)


def bismut_torsion(W: HermitianForm, S) -> Form:
    """The torsion 3-form J d Omega."""
    cf = _coframe_of(S)
    return apply_J(exterior_d(W.form(cf)))


def primitive_defect(W: HermitianForm, S, tol: float = DEFAULT_TOL) -> Form:
    """xi = d Omega - theta ^ Omega / (n - 1), which satisfies xi ^ Omega^{n-2} = 0."""
    cf = _coframe_of(S)
    omega = W.form(cf)
    theta = lee_form(W, S, tol)
    n1 = cf.m - 1
    return exterior_d(omega) - wedge(theta, omega) * Fraction(1, n1)


def box_form(W: HermitianForm, S) -> Form:
    return box(W.form(_coframe_of(S)))
