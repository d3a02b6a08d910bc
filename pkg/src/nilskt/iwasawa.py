"""Invariant complex structures on the Iwasawa algebra.

With w1 = e1 + i e2, w2 = e3 + i e4, w3 = e5 + i e6 the algebra
``(0,0,0,0,13+42,14+23)`` has d w3 = w1 ^ w2.  A structure J_{X,x,y} is spanned by

    a1 = w1 + a conj(w1) + b conj(w2)
    a2 = w2 + c conj(w1) + d conj(w2)
    a3 = w3 + x conj(w1) + y conj(w2) + u conj(w3)

with X = [[a, b], [c, d]] and u = -det X (the integrability condition).  All
invariants used below depend on X only through gamma = tr(X conj X) and
delta = det(X conj X) = |u|^2, with c(1) = 1 - gamma + delta.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import linalg
from .complex_structures import ComplexStructure, RealLieAlgebra
from .forms import Coframe, Form, conjugate, pullback, wedge
from .hermitian import SKT, HermitianForm, skt_status
from .scalars import DEFAULT_TOL, I, abs2, is_exact, simplify
from .skt_family import SktParams, matrix_form

NOTATION = "(0,0,0,0,13+42,14+23)"
CURVE_TOL = 1e-8
SINGULAR_DISC = 1e-8
# real and imaginary points of the curve with closed-form values
EXPLICIT_SOLUTIONS = (
    -2 + math.sqrt(3), -2 - math.sqrt(3),
    1j * math.sqrt(3 + 2 * math.sqrt(2)), -1j * math.sqrt(3 + 2 * math.sqrt(2)),
    1j * math.sqrt(3 - 2 * math.sqrt(2)), -1j * math.sqrt(3 - 2 * math.sqrt(2)),
)


class DegenerateStructureError(ValueError):
    """Raised when delta = 1 or c(1) = 0, so the forms do not define a complex structure."""


class InconsistentVerdictError(AssertionError):
    """The independent SKT tests disagree; indicates a numerical or logical defect."""


_ALGEBRA = None


def iwasawa_algebra() -> RealLieAlgebra:
    global _ALGEBRA
    if _ALGEBRA is None:
        _ALGEBRA = RealLieAlgebra.from_notation(NOTATION)
    return _ALGEBRA


def _conj(m):
    return [[v.conjugate() for v in row] for row in m]


def _mul(a, b):
    return linalg.mat_mul(a, b)


def _unit(x):
    """The imaginary unit matching the mode of x."""
    return I if is_exact(x) else 1j


@dataclass(frozen=True)
class IwasawaJ:
    X: tuple
    x: object = 0
    y: object = 0

    def __init__(self, X: Sequence[Sequence], x=0, y=0):
        object.__setattr__(self, "X", tuple(tuple(r) for r in X))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def u(self):
        return _clean(-linalg.det2(self.X))

    @property
    def gamma(self):
        return consim_invariants(self.X)[0]

    @property
    def delta(self):
        return consim_invariants(self.X)[1]

    @property
    def c1(self):
        return c_of(1, self.gamma, self.delta)


def _clean(v):
    if is_exact(v):
        return simplify(v)
    return v


def _real(v):
    if is_exact(v):
        return simplify(v.real if hasattr(v, "real") else v)
    return float(v.real) if isinstance(v, complex) else float(v)


def consim_invariants(X: Sequence[Sequence]):
    """(gamma, delta): trace and determinant of X conj(X), both real."""
    xx = _mul(X, _conj(X))
    return _real(linalg.trace(xx)), _real(linalg.det2(xx))


def c_of(t, gamma, delta):
    """The characteristic polynomial c(t) = t^2 - gamma t + delta of X conj(X)."""
    return t * t - gamma * t + delta


def eigenvalues(gamma, delta, tol: float = DEFAULT_TOL):
    """Roots of t^2 - gamma t + delta as floats; a conjugate pair when the discriminant is negative.

    A discriminant within ``tol`` (relative) of zero is treated as a double root:
    near it the roots move like the square root of the rounding error.
    """
    g, d = float(gamma), float(delta)
    disc = g * g - 4 * d
    if abs(disc) <= tol * max(1.0, g * g, abs(d)):
        return complex(g / 2), complex(g / 2)
    if disc < 0:
        s = math.sqrt(-disc) / 2
        return complex(g / 2, s), complex(g / 2, -s)
    s = math.sqrt(disc) / 2
    return complex(g / 2 + s), complex(g / 2 - s)


def is_well_defined(X, tol: float = DEFAULT_TOL) -> bool:
    gamma, delta = consim_invariants(X)
    c1 = c_of(1, gamma, delta)
    if is_exact(gamma) and is_exact(delta):
        return delta != 1 and c1 != 0
    return abs(delta - 1) > tol and abs(c1) > tol


def component(X, tol: float = DEFAULT_TOL) -> str:
    """Component tag from (sign c(1), |u| vs 1).

    ``C+`` is the component of J_0 (|u| < 1, c(1) > 0), ``-C+`` the component of
    -J_0 (|u| > 1, c(1) > 0); ``C-`` and ``-C-`` are the analogues with c(1) < 0.
    """
    if not is_well_defined(X, tol):
        return "degenerate"
    gamma, delta = consim_invariants(X)
    c1 = c_of(1, gamma, delta)
    name = "C+" if c1 > 0 else "C-"
    return name if delta < 1 else "-" + name


class Invariants(NamedTuple):
    u: object
    gamma: object
    delta: object
    c1: object
    eigenvalues: tuple
    component: str
    stable: bool
    deformation_rank: int


def invariants(X, tol: float = DEFAULT_TOL) -> Invariants:
    gamma, delta = consim_invariants(X)
    u = _clean(-linalg.det2(X))
    c1 = c_of(1, gamma, delta)
    rank = -1
    if is_well_defined(X, tol):
        Y, _ = y_and_E(X)
        rank = linalg.rank(Y, tol)
    stable = (u != 0) if is_exact(u) else abs(u) > tol
    return Invariants(u, gamma, delta, c1, eigenvalues(gamma, delta, tol), component(X, tol), stable, rank)


def structure_forms(X, x=0, y=0, u=None) -> list:
    """Rows of a1, a2, a3 over e1..e6; u defaults to the integrable value -det X."""
    (a, b), (c, d) = X
    if u is None:
        u = -linalg.det2(X)
    i = _unit(a + b + c + d + x + y + u)

    def w(k, coeff, bar):
        row = [0] * 6
        row[2 * k] = coeff
        row[2 * k + 1] = -i * coeff if bar else i * coeff
        return row

    def add(*rows):
        return [sum(vals) for vals in zip(*rows)]

    a1 = add(w(0, 1, False), w(0, a, True), w(1, b, True))
    a2 = add(w(1, 1, False), w(0, c, True), w(1, d, True))
    a3 = add(w(2, 1, False), w(0, x, True), w(1, y, True), w(2, u, True))
    return [[_clean(v) for v in row] for row in (a1, a2, a3)]


def make_structure(X, x=0, y=0, u=None, tol: float = DEFAULT_TOL) -> ComplexStructure:
    """Almost complex structure with arbitrary u (no integrability imposed)."""
    return ComplexStructure(iwasawa_algebra(), structure_forms(X, x, y, u), tol)


def make_J(X, x=0, y=0, tol: float = DEFAULT_TOL) -> ComplexStructure:
    if not is_well_defined(X, tol):
        gamma, delta = consim_invariants(X)
        raise DegenerateStructureError(
            f"J_X is degenerate: delta = {delta}, c(1) = {c_of(1, gamma, delta)} (need delta != 1, c(1) != 0)")
    return make_structure(X, x, y, None, tol)


def de_residual(gamma, delta):
    """1 - 6 delta + delta^2 + gamma + gamma delta."""
    return 1 - 6 * delta + delta * delta + gamma + gamma * delta


def curve_residual(z):
    """(1 + |z|^2) |1 + z|^2 - 8 |z|^2."""
    r2 = abs2(z)
    v = (1 + r2) * abs2(1 + z) - 8 * r2
    return simplify(v) if is_exact(v) else float(v)


def _de_scale(gamma, delta) -> float:
    return max(1.0, abs(float(gamma)), abs(float(delta))) ** 2


def _curve_scale(z) -> float:
    return max(1.0, abs(complex(z))) ** 4


def curve_branch_radius(theta: float, branch: str) -> float:
    c = math.cos(theta)
    root = math.sqrt(2 + c * c)
    if branch == "inner":
        return -3 * c - root
    if branch == "outer":
        return -3 * c + root
    raise ValueError(f"branch must be 'inner' or 'outer', got {branch!r}")


_BRANCH_RANGE = {
    "inner": (2 * math.pi / 3, 4 * math.pi / 3),
    "outer": (math.pi / 3, 5 * math.pi / 3),
}


def curve_sample(n: int, branch: str = "inner") -> list:
    """n points z = 1 + r e^{i theta} of the curve, midpoint-spaced in theta over the branch's range.

    The inner branch lies in |z| < 1 and the outer one in |z| > 1; points within
    1e-8 of the excluded value z = 1 are dropped.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    lo, hi = _BRANCH_RANGE.get(branch, (None, None))
    if lo is None:
        raise ValueError(f"branch must be 'inner' or 'outer', got {branch!r}")
    out = []
    for k in range(n):
        theta = lo + (hi - lo) * (k + 0.5) / n
        r = curve_branch_radius(theta, branch)
        z = 1 + r * cmath.exp(1j * theta)
        if abs(z - 1) > SINGULAR_DISC:
            out.append(z)
    return out


def _small(v, scale, tol) -> bool:
    return (v == 0) if is_exact(v) else abs(v) <= tol * scale


def skt_by_de(X, tol: float = CURVE_TOL) -> bool:
    gamma, delta = consim_invariants(X)
    return _small(de_residual(gamma, delta), _de_scale(gamma, delta), tol)


def skt_by_curve(X, tol: float = CURVE_TOL) -> bool:
    """Both eigenvalues of X conj(X) lie on the curve."""
    gamma, delta = consim_invariants(X)
    lam = eigenvalues(gamma, delta, 1e-12)
    return all(abs(curve_residual(z)) <= tol * _curve_scale(z) for z in lam)


def skt_by_box(X, tol: float = CURVE_TOL) -> bool:
    """box(Omega_0) = 0 computed on the coframe of J_X."""
    return skt_status(HermitianForm.standard(), make_J(X, tol=tol), tol=tol) == SKT


def is_skt(X, tol: float = CURVE_TOL) -> bool:
    """SKT test for J_X (Omega_0), computed three independent ways that must agree."""
    if not is_well_defined(X, tol):
        raise DegenerateStructureError("J_X is degenerate")
    a, b, c = skt_by_de(X, tol), skt_by_curve(X, tol), skt_by_box(X, tol)
    if not a == b == c:
        raise InconsistentVerdictError(f"SKT verdicts disagree for X={X}: de={a}, curve={b}, box={c}")
    return a


def y_and_E(X):
    """Parameters (Y, E) of d a3 = Y_alpha + E a1^a2 for J_X.

    c(1) Y = -X - u adj(conj X) and c(1) E = 1 - delta; for invertible X the
    first is -X + delta conj(X)^{-1}.  Polynomial in X, so singular X is fine.
    """
    if not is_well_defined(X):
        raise DegenerateStructureError("J_X is degenerate")
    gamma, delta = consim_invariants(X)
    c1 = c_of(1, gamma, delta)
    u = -linalg.det2(X)
    adj = linalg.adj2(_conj(X))
    inv = Fraction(1) / c1 if is_exact(c1) else 1 / c1
    Y = [[_clean((-X[i][j] - u * adj[i][j]) * inv) for j in range(2)] for i in range(2)]
    E = _clean((1 - delta) * inv)
    return Y, E


def skt_params(X) -> SktParams:
    Y, E = y_and_E(X)
    return SktParams(Y[0][0], Y[0][1], Y[1][0], Y[1][1], E)


def normal_X(z) -> list:
    return [[0, z], [1, 0]]


def normal_form(z, P=None, tol: float = DEFAULT_TOL) -> list:
    """P^{-1} [[0, z], [1, 0]] conj(P)."""
    if (z == 1) if is_exact(z) else abs(z - 1) <= tol:
        raise DegenerateStructureError("z = 1 is not admissible")
    N = normal_X(z)
    if P is None:
        return N
    Pinv = linalg.inv2(P)
    return [[_clean(v) for v in row] for row in _mul(_mul(Pinv, N), _conj(P))]


def negate_J(X) -> list:
    """X' with -(J_X) = J_{X'}: the inverse of conj(X)."""
    return [[_clean(v) for v in row] for row in linalg.inv2(_conj(X))]


def stabilizer_member(P, z, tol: float = DEFAULT_TOL) -> bool:
    """P fixes [[0, z], [1, 0]] under X -> P^{-1} X conj(P)."""
    if (z == 0) if is_exact(z) else abs(z) <= tol:
        raise ValueError("z must be non-zero")
    N = normal_X(z)
    image = _mul(_mul(linalg.inv2(P), N), _conj(P))
    if all(is_exact(v) for row in image for v in row) and is_exact(z):
        return all(image[i][j] == N[i][j] for i in range(2) for j in range(2))
    return all(abs(image[i][j] - N[i][j]) <= tol * max(1.0, abs(z)) for i in range(2) for j in range(2))


def quaternionic_stabilizer(a, c, z) -> list:
    """[[a, conj(c) z], [c, conj(a)]], a stabilizer of the normal form for real z."""
    return [[a, c.conjugate() * z], [c, a.conjugate()]]


# basis-change identities -----------------------------------------------------

def omega_coframe() -> Coframe:
    """Complex coframe (w1, w2, w3, conj w1, conj w2, conj w3) with d w3 = w1 ^ w2."""
    cf = Coframe.complex(3, holo="w", anti="v")
    return cf.with_differentials([cf.zero(), cf.zero(), cf.monomial("w1 w2")])


def alpha_images(X, x=0, y=0) -> list:
    """a1, a2, a3 and conjugates written in the w coframe."""
    (a, b), (c, d) = X
    u = -linalg.det2(X)
    cf = omega_coframe()
    g = cf.generators()
    w1, w2, w3, v1, v2, v3 = g
    a1 = w1 + v1 * a + v2 * b if a or b else w1
    a2 = w2 + v1 * c + v2 * d if c or d else w2
    a3 = w3 + v1 * x + v2 * y + v3 * u
    return [a1, a2, a3, conjugate(a1), conjugate(a2), conjugate(a3)]


def reverse_basis_residual(X) -> Form:
    """c(1) w1^w2 - (-X_alpha + a1^a2 - u conj(a1)^conj(a2)); zero for every X."""
    gamma, delta = consim_invariants(X)
    c1 = c_of(1, gamma, delta)
    u = -linalg.det2(X)
    images = alpha_images(X)
    abstract = Coframe.complex(3)
    rhs = -matrix_form(X, abstract) + abstract.monomial("a1 a2") - abstract.monomial("c1 c2", u)
    cf = images[0].coframe
    return cf.monomial("w1 w2", c1) - pullback(rhs, images, cf)


def volume_ratios(X):
    """(alpha 4-volume / w 4-volume, alpha 6-volume / w 6-volume), expected c(1) and c(1)(1 - delta)."""
    images = alpha_images(X)
    cf = images[0].coframe
    a1, a2, a3, b1, b2, b3 = images
    v4 = wedge(wedge(wedge(a1, b1), a2), b2)
    v6 = wedge(wedge(v4, a3), b3)
    ref4 = cf.monomial("w1 v1 w2 v2")
    ref6 = cf.monomial("w1 v1 w2 v2 w3 v3")
    return _ratio(v4, ref4), _ratio(v6, ref6)


def _ratio(f: Form, ref: Form):
    (mono, c), = ref.terms.items()
    if set(f.terms) - {mono}:
        raise ValueError("not a multiple of the reference volume")
    return _clean(f.terms.get(mono, 0) / c)


def minors2(M: Sequence[Sequence]) -> list:
    """All 2x2 minors of a 2 x n matrix, columns in lexicographic order."""
    n = len(M[0])
    return [M[0][i] * M[1][j] - M[0][j] * M[1][i] for i in range(n) for j in range(i + 1, n)]


def minors_identity_residual(Z, X) -> list:
    """Minors(Z | -Z X) - det Z * Minors(I | -X), entrywise."""
    ZX = _mul(Z, X)
    left = [list(Z[r]) + [-v for v in ZX[r]] for r in range(2)]
    right = [[1, 0, -X[0][0], -X[0][1]], [0, 1, -X[1][0], -X[1][1]]]
    dz = linalg.det2(Z)
    return [_clean(p - dz * q) for p, q in zip(minors2(left), minors2(right))]
