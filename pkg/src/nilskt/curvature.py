"""Levi-Civita geometry of left-invariant pseudo-Riemannian metrics.

Vectors are expanded in the frame e_1..e_n dual to the coframe of a
:class:`RealLieAlgebra`.  Conventions:

* ``gamma[i][j][k]`` is the e_k component of D_{e_i} e_j;
* R(X, Y)Z = D_X D_Y Z - D_Y D_X Z - D_{[X,Y]} Z, stored as ``rup[i][j][k][m]``
  (the e_m component of R(e_i, e_j) e_k) and lowered as R_ijkl = h(R(e_i, e_j) e_k, e_l);
* Ric(Y, Z) = trace of X -> R(X, Y) Z;
* the Ricci form is rho(X, Y) = 1/4 trace_h h(R(X, Y) ., J .), which is half the
  sum over a unitary frame.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import List

from . import linalg
from .complex_structures import ComplexStructure, RealLieAlgebra, is_abelian, is_integrable
from .forms import Form, apply_J, exterior_d, monomial_basis, wedge
from .scalars import DEFAULT_TOL, I, is_exact, is_zero, realify, simplify


class DegenerateMetricError(ValueError):
    pass


def _half(v):
    return v * Fraction(1, 2) if is_exact(v) else v / 2


def _check_metric(h):
    n = len(h)
    for i in range(n):
        for j in range(i):
            if not is_zero(h[i][j] - h[j][i]):
                raise ValueError("metric is not symmetric")
    try:
        return linalg.inverse(h)
    except linalg.SingularMatrixError:
        raise DegenerateMetricError("metric is degenerate") from None


def _clean(v):
    return simplify(v) if is_exact(v) else v


def koszul(L: RealLieAlgebra, h) -> list:
    """Christoffel symbols of the Levi-Civita connection of h on the invariant frame."""
    hinv = _check_metric(h)
    n = L.dim
    b = L.brackets()

    def hb(i, j, l):  # h([e_i, e_j], e_l)
        s = 0
        for k in range(n):
            if b[i][j][k] != 0 and h[k][l] != 0:
                s = s + b[i][j][k] * h[k][l]
        return s

    low = [[[_half(hb(i, j, l) - hb(j, l, i) + hb(l, i, j)) for l in range(n)] for j in range(n)]
           for i in range(n)]
    gamma = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                s = 0
                for l in range(n):
                    if hinv[k][l] != 0 and low[i][j][l] != 0:
                        s = s + hinv[k][l] * low[i][j][l]
                gamma[i][j][k] = _clean(s)
    return gamma


def riemann_up(L: RealLieAlgebra, h, gamma=None) -> list:
    n = L.dim
    g = koszul(L, h) if gamma is None else gamma
    b = L.brackets()
    out = [[[[0] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i, j in product(range(n), repeat=2):
        if i == j:
            continue
        for k in range(n):
            for m in range(n):
                s = 0
                for p in range(n):
                    if g[j][k][p] != 0 and g[i][p][m] != 0:
                        s = s + g[j][k][p] * g[i][p][m]
                    if g[i][k][p] != 0 and g[j][p][m] != 0:
                        s = s - g[i][k][p] * g[j][p][m]
                    if b[i][j][p] != 0 and g[p][k][m] != 0:
                        s = s - b[i][j][p] * g[p][k][m]
                out[i][j][k][m] = _clean(s)
    return out


def riemann(L: RealLieAlgebra, h, rup=None) -> list:
    """R_ijkl = h(R(e_i, e_j) e_k, e_l)."""
    n = L.dim
    r = riemann_up(L, h) if rup is None else rup
    out = [[[[0] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i, j, k, l in product(range(n), repeat=4):
        s = 0
        for m in range(n):
            if r[i][j][k][m] != 0 and h[m][l] != 0:
                s = s + r[i][j][k][m] * h[m][l]
        out[i][j][k][l] = _clean(s)
    return out


def ricci(L: RealLieAlgebra, h, rup=None) -> list:
    n = L.dim
    r = riemann_up(L, h) if rup is None else rup
    return [[_clean(sum((r[i][j][k][i] for i in range(n)), 0)) for k in range(n)] for j in range(n)]


def ricci_form(L: RealLieAlgebra, h, J, rup=None, tol: float = DEFAULT_TOL) -> list:
    """Matrix rho_ij of the Ricci form; J is the real matrix of the complex structure on vectors."""
    n = L.dim
    jt_h_j = linalg.mat_mul(linalg.mat_mul(linalg.transpose(J), h), J)
    if not all(is_zero(jt_h_j[a][b] - h[a][b], tol) for a in range(n) for b in range(n)):
        raise ValueError("J is not compatible with h")
    r = riemann_up(L, h) if rup is None else rup
    quarter = Fraction(-1, 4)
    out = [[0] * n for _ in range(n)]
    for i, j in product(range(n), repeat=2):
        s = 0
        for k, m in product(range(n), repeat=2):
            if r[i][j][k][m] != 0 and J[k][m] != 0:
                s = s + r[i][j][k][m] * J[k][m]
        out[i][j] = _clean(s * quarter if is_exact(s) else s * -0.25)
    return out


def is_zero_tensor(t, tol: float = DEFAULT_TOL) -> bool:
    if isinstance(t, list):
        return all(is_zero_tensor(x, tol) for x in t)
    return is_zero(t, tol)


def max_abs_tensor(t) -> float:
    if isinstance(t, list):
        return max((max_abs_tensor(x) for x in t), default=0.0)
    return abs(t)


def signature(h, tol: float = DEFAULT_TOL) -> tuple:
    """(positive, negative) counts; raises on a degenerate metric."""
    pos, neg, zero = linalg.signature(h, tol)
    if zero:
        raise DegenerateMetricError("metric is degenerate")
    return pos, neg


def covariant_J(L: RealLieAlgebra, h, J, gamma=None) -> list:
    """Matrices (D_{e_i} J) = [Gamma_i, J] with (Gamma_i)[k][j] = gamma[i][j][k]."""
    n = L.dim
    g = koszul(L, h) if gamma is None else gamma
    out = []
    for i in range(n):
        gi = [[g[i][j][k] for j in range(n)] for k in range(n)]
        out.append(linalg.mat_sub(linalg.mat_mul(gi, J), linalg.mat_mul(J, gi)))
    return out


def torsion_defect(L: RealLieAlgebra, gamma) -> list:
    """Gamma^k_ij - Gamma^k_ji - [e_i, e_j]^k, zero for a torsion-free connection."""
    n = L.dim
    b = L.brackets()
    return [[[_clean(gamma[i][j][k] - gamma[j][i][k] - b[i][j][k]) for k in range(n)] for j in range(n)]
            for i in range(n)]


def metricity_defect(h, gamma) -> list:
    """h(D_i e_j, e_l) + h(e_j, D_i e_l), zero for a metric connection."""
    n = len(h)

    def low(i, j, l):
        return sum((gamma[i][j][k] * h[k][l] for k in range(n)), 0)

    return [[[_clean(low(i, j, l) + low(i, l, j)) for l in range(n)] for j in range(n)] for i in range(n)]


# fundamental forms and pseudo-Kähler structures --------------------------------

def two_form_matrix(omega: Form) -> list:
    """Antisymmetric matrix w with omega = sum_{i<j} w_ij e^{ij}."""
    n = omega.coframe.dim
    w = [[0] * n for _ in range(n)]
    for (i, j), v in omega.terms.items():
        w[i][j] = v
        w[j][i] = -v
    return w


def metric_from_form(omega: Form, J) -> list:
    """h(X, Y) = omega(X, J Y) as a matrix."""
    return [[_clean(v) for v in row] for row in linalg.mat_mul(two_form_matrix(omega), J)]


@dataclass
class PseudoKahlerReport:
    ok: bool
    reasons: List[str] = field(default_factory=list)
    metric: list | None = None

    def __bool__(self):
        return self.ok


def pseudo_kahler_check(L: RealLieAlgebra, S: ComplexStructure, omega: Form,
                        tol: float = DEFAULT_TOL) -> PseudoKahlerReport:
    """Closed J-invariant omega with nondegenerate h = omega(., J .) and parallel J."""
    reasons = []
    if not exterior_d(omega).is_zero(tol, max(1.0, omega.max_abs())):
        reasons.append("not-closed")
    if not is_integrable(S, tol):
        reasons.append("not-integrable")
    J = S.J_vectors
    h = metric_from_form(omega, J)
    if not all(is_zero(h[a][b] - h[b][a], tol) for a in range(L.dim) for b in range(L.dim)):
        reasons.append("not-J-invariant")
        return PseudoKahlerReport(False, reasons, None)
    det = linalg.det(h)
    if is_zero(det, tol):
        reasons.append("degenerate")
        return PseudoKahlerReport(False, reasons, h)
    if not reasons:
        dj = covariant_J(L, h, J)
        if not is_zero_tensor(dj, tol):
            reasons.append("J-not-parallel")
    return PseudoKahlerReport(not reasons, reasons, h)


def closed_two_forms(L: RealLieAlgebra, tol: float = DEFAULT_TOL) -> list:
    """Basis of the closed invariant 2-forms."""
    cf = L.coframe
    basis2 = monomial_basis(L.dim, 2)
    images = [exterior_d(cf.monomial(m)) for m in basis2]
    monos3 = sorted({m for f in images for m in f.terms})
    if not monos3:
        return [cf.monomial(m) for m in basis2]
    mat = [[f.terms.get(m, 0) for f in images] for m in monos3]
    null = linalg.nullspace(mat, tol)
    return [Form(cf, {basis2[k]: v for k, v in enumerate(vec) if v != 0}) for vec in null]


def admits_symplectic_form(L: RealLieAlgebra, tol: float = DEFAULT_TOL) -> bool:
    """Whether some closed invariant 2-form is nondegenerate.

    For n = 6, omega^3 is a cubic polynomial in the coefficients of omega over
    a basis of closed forms; it vanishes identically iff every triple wedge of
    basis elements is zero, which is decided exactly.
    """
    if L.dim != 6:
        raise ValueError("implemented for 6-dimensional algebras")
    basis = closed_two_forms(L, tol)
    for i, j, k in combinations_with_replacement(range(len(basis)), 3):
        if not wedge(wedge(basis[i], basis[j]), basis[k]).is_zero(tol, 1.0):
            return True
    return False


def invariant_closed_forms(S: ComplexStructure, tol: float = DEFAULT_TOL) -> list:
    """Basis of closed real 2-forms of type (1,1) for S."""
    L = S.algebra
    cf = L.coframe
    basis2 = monomial_basis(L.dim, 2)
    cands = [cf.monomial(m) for m in basis2]
    # conditions: d(omega) = 0 and J omega = omega, where J acts on the complex coframe
    rows = []
    for f in cands:
        col = {}
        for m, v in exterior_d(f).terms.items():
            col[("d", m)] = v
        jf = S.to_real(apply_J(S.to_complex(f))) - f
        for m, v in jf.terms.items():
            col[("j", m)] = v
        rows.append(col)
    keys = sorted({k for col in rows for k in col})
    if not keys:
        return cands
    mat = [[col.get(k, 0) for col in rows] for k in keys]
    null = linalg.nullspace(mat, tol)
    out = []
    for vec in null:
        vals = {basis2[k]: realify(v, 1e-6) for k, v in enumerate(vec) if not is_zero(v, tol)}
        out.append(Form(cf, vals))
    return out


# the explicit pseudo-Kähler structure on the Iwasawa algebra ------------------

def iwasawa_pseudo_kahler():
    """(algebra, complex structure, omega) for omega = e16 + e25 + e34 and
    J e1 = e2, J e3 = -e4, J e5 = -e6 (J acting on 1-forms by pullback)."""
    L = RealLieAlgebra.from_notation("(0,0,0,0,13+42,14+23)")
    forms = [[1, -I, 0, 0, 0, 0], [0, 0, 1, I, 0, 0], [0, 0, 0, 0, 1, I]]
    S = ComplexStructure(L, forms)
    omega = L.coframe.form({"e1 e6": 1, "e2 e5": 1, "e3 e4": 1})
    return L, S, omega


def pseudo_kahler_scan(L: RealLieAlgebra, trials: int = 20, seed: int = 0, tol: float = 1e-9) -> list:
    """Exploratory search for invariant pseudo-Kähler structures.

    Tries every complex structure whose (1,0)-forms are e^a +- i e^b over a
    perfect matching of e1..e6; for each integrable one, samples random closed
    J-invariant 2-forms and reports the nondegenerate ones.  Returns dict rows.
    """
    rng = random.Random(seed)
    rows = []
    for matching in _matchings(list(range(L.dim))):
        for signs in product((1, -1), repeat=len(matching)):
            forms = []
            for (a, b), s in zip(matching, signs):
                row = [0] * L.dim
                row[a] = 1
                row[b] = I * s
                forms.append(row)
            S = ComplexStructure(L, forms)
            if not is_integrable(S, tol):
                continue
            basis = invariant_closed_forms(S, tol)
            if not basis:
                continue
            for _ in range(trials):
                coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in basis]
                omega = L.coframe.zero()
                for c, f in zip(coeffs, basis):
                    omega = omega + f * c
                h = metric_from_form(omega, S.J_vectors)
                det = linalg.det(h)
                if is_zero(det, tol):
                    continue
                pos, neg, _ = linalg.signature(h, tol)
                rows.append({"pairs": matching, "signs": signs, "omega": omega, "signature": (pos, neg),
                             "abelian": is_abelian(S, tol)})
                break
    return rows


def _matchings(items):
    if not items:
        yield []
        return
    first = items[0]
    for k in range(1, len(items)):
        pair = (first, items[k])
        rest = items[1:k] + items[k + 1:]
        for m in _matchings(rest):
            yield [pair] + m


def holomorphic_volume_closed(S: ComplexStructure, tol: float = DEFAULT_TOL) -> bool:
    cf = S.coframe
    eta = cf.one()
    for k in range(cf.m):
        eta = wedge(eta, cf.generator(k))
    return exterior_d(eta).is_zero(tol, 1.0)


__all__ = [
    "koszul", "riemann_up", "riemann", "ricci", "ricci_form", "signature", "covariant_J",
    "pseudo_kahler_check", "closed_two_forms", "admits_symplectic_form", "invariant_closed_forms",
    "iwasawa_pseudo_kahler", "pseudo_kahler_scan", "metric_from_form",
]
