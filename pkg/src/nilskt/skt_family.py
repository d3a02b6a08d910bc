"""The five-parameter family of nilpotent complex structures.

A tuple ``(A, B, C, D, E)`` defines the complex coframe

    d a1 = d a2 = 0,
    d a3 = A conj(a1)^a2 + B conj(a2)^a2 + C a1^conj(a1) + D a1^conj(a2) + E a1^a2,

whose (1,1) part is encoded by the matrix ``Y = [[A, B], [C, D]]``.  Every tuple
satisfies the Jacobi identity; the metric is SKT for every (equivalently, some)
Hermitian form iff :func:`skt2_residual` vanishes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import linalg
from .complex_structures import RealLieAlgebra, real_structure_constants
from .forms import Coframe, Form, apply_J, coefficient_along, conjugate, wedge
from .scalars import DEFAULT_TOL, I, abs2, is_exact, is_zero, realify, simplify

LABELS = {
    "i": "(0,0,0,0,12,13)",
    "ii": "(0,0,0,0,13+42,14+23)",
    "iii": "(0,0,0,0,12,14+23)",
    "iv": "(0,0,0,0,12,34)",
    "v": "(0,0,0,0,0,12)",
    "vi": "(0,0,0,0,0,12+34)",
}
ABELIAN_MESSAGE = "abelian: excluded (no SKT structure on an abelian algebra)"
SKT_LABELS = frozenset(LABELS[k] for k in ("ii", "iii", "iv", "v"))


class AbelianAlgebraError(ValueError):
    pass


class NotTwoStepError(ValueError):
    pass


@dataclass(frozen=True)
class SktParams:
    A: object = 0
    B: object = 0
    C: object = 0
    D: object = 0
    E: object = 0

    @classmethod
    def from_mapping(cls, data) -> "SktParams":
        unknown = set(data) - set("ABCDE")
        if unknown:
            raise ValueError(f"unknown coefficient names: {sorted(unknown)}")
        return cls(**{k: data.get(k, 0) for k in "ABCDE"})

    @property
    def Y(self) -> list:
        return [[self.A, self.B], [self.C, self.D]]

    def astuple(self) -> tuple:
        return (self.A, self.B, self.C, self.D, self.E)

    def is_exact(self) -> bool:
        return all(is_exact(v) for v in self.astuple())

    def is_abelian(self) -> bool:
        return all(v == 0 for v in self.astuple())


# 2x2 matrix formalism -------------------------------------------------------

def adjugate(m) -> list:
    return linalg.adj2(m)


def matrix_form(M: Sequence[Sequence], cf: Coframe, first: int = 0, second: int = 1) -> Form:
    """The (1,1)-form C a1^c1 + D a1^c2 - A a2^c1 - B a2^c2 for M = [[A, B], [C, D]].

    ``first``/``second`` pick the two (1,0) generators playing the roles of a1, a2.
    """
    (a, b), (c, d) = M
    m = cf.m
    i1, i2 = first, second
    j1, j2 = first + m, second + m
    return (cf.monomial((i1, j1), c) + cf.monomial((i1, j2), d)
            - cf.monomial((i2, j1), a) - cf.monomial((i2, j2), b))


def volume4(cf: Coframe) -> Form:
    """a1 ^ c1 ^ a2 ^ c2, the reference 4-form of the formalism."""
    m = cf.m
    return cf.monomial((0, m, 1, m + 1))


def build_family(p: SktParams) -> Coframe:
    cf = Coframe.complex(3)
    da3 = matrix_form(p.Y, cf) + cf.monomial("a1 a2", p.E)
    return cf.with_differentials([cf.zero(), cf.zero(), da3])


def skt2_residual(p: SktParams):
    """|A|^2 + |D|^2 + |E|^2 + 2 Re(conj(B) C)."""
    v = abs2(p.A) + abs2(p.D) + abs2(p.E) + 2 * (p.B.conjugate() * p.C).real
    return simplify(v) if is_exact(v) else float(v)


class TripleCoefficients(NamedTuple):
    d_dbar: object  # d a3 ^ d c3
    Jd_dbar: object  # (J d a3) ^ d c3
    d_d: object  # d a3 ^ d a3


def triple_identities(p: SktParams) -> TripleCoefficients:
    """Coefficients along a1^c1^a2^c2 computed by wedging the actual forms."""
    cf = build_family(p)
    da3 = cf.d(2)
    dc3 = conjugate(da3)
    vol = volume4(cf)
    return TripleCoefficients(
        simplify_scalar(coefficient_along(wedge(da3, dc3), vol)),
        simplify_scalar(coefficient_along(wedge(apply_J(da3), dc3), vol)),
        simplify_scalar(coefficient_along(wedge(da3, da3), vol)),
    )


def simplify_scalar(v):
    return simplify(v) if is_exact(v) else v


def b_matrix(p: SktParams) -> list:
    """-[[|E|^2 + Re U, Im U], [Im U, |E|^2 - Re U]] with U = BC - AD.

    This closed form equals :func:`gram_matrix` whenever the SKT equation holds.
    """
    U = p.B * p.C - p.A * p.D
    e = abs2(p.E)
    re_u, im_u = U.real, U.imag
    return [[_s(-(e + re_u)), _s(-im_u)], [_s(-im_u), _s(-(e - re_u))]]


def _s(v):
    return simplify(v) if is_exact(v) else float(v)


def real_parts(p: SktParams):
    """(sigma1, sigma2) with d a3 = sigma1 + i sigma2, as real forms on the complex coframe."""
    cf = build_family(p)
    da3 = cf.d(2)
    dc3 = conjugate(da3)
    return (da3 + dc3) * Fraction(1, 2), (da3 - dc3) * (-I / 2)


def gram_matrix(p: SktParams) -> list:
    """The matrix b with sigma_i ^ sigma_j = b_ij a1^c1^a2^c2 (real symmetric)."""
    s = real_parts(p)
    vol = volume4(s[0].coframe)
    out = [[0, 0], [0, 0]]
    for i in range(2):
        for j in range(i, 2):
            v = coefficient_along(wedge(s[i], s[j]), vol)
            v = realify(v, DEFAULT_TOL * max(1.0, abs(v)))
            out[i][j] = out[j][i] = v
    return out


def definiteness(b, tol: float = DEFAULT_TOL) -> str:
    """'zero', 'rank1', 'definite' or 'indefinite' for a 2x2 real symmetric matrix."""
    det = b[0][0] * b[1][1] - b[0][1] * b[1][0]
    exact = all(is_exact(v) for row in b for v in row)
    scale = max(1.0, max(abs(v) for row in b for v in row)) if not exact else 1
    if exact:
        if all(v == 0 for row in b for v in row):
            return "zero"
        if det == 0:
            return "rank1"
    else:
        if max(abs(v) for row in b for v in row) <= tol:
            return "zero"
        if abs(det) <= tol * scale * scale:
            return "rank1"
    return "definite" if det > 0 else "indefinite"


# classification --------------------------------------------------------------

def _kernel_and_image(L: RealLieAlgebra, tol: float):
    n = L.dim
    monos = sorted({mono for k in range(n) for mono in L.d(k).terms})
    if not monos:
        return linalg.identity(n), []
    mat = [[L.d(k).terms.get(mono, 0) for k in range(n)] for mono in monos]
    kernel = linalg.nullspace(mat, tol)
    rows, image = [], []
    for k in range(n):
        row = [L.d(k).terms.get(mono, 0) for mono in monos]
        if linalg.rank(rows + [row], tol) > len(rows):
            rows.append(row)
            image.append(L.d(k))
    return kernel, image


def _ratio(f: Form, ref: Form, mono):
    v, c = f.terms.get(mono, 0), ref.terms[mono]
    return simplify(v / c) if is_exact(v) and is_exact(c) else v / c


def classify_two_step(L: RealLieAlgebra, tol: float = DEFAULT_TOL) -> str:
    """Label of a 6-dimensional 2-step algebra with b1 >= 4 among the six classes.

    Uses r = dim d(g*) and the wedge pairing of the image of d, measured on
    the top degree of the kernel of d.
    """
    if L.dim != 6:
        raise ValueError("classification is for 6-dimensional algebras")
    kernel, image = _kernel_and_image(L, tol)
    r = len(image)
    if r == 0:
        raise AbelianAlgebraError(ABELIAN_MESSAGE)
    if len(kernel) + r != 6 or r > 2:
        raise NotTwoStepError(f"expected b1 >= 4, got b1 = {len(kernel)}")
    cf = L.coframe
    ker_forms = [Form(cf, {(j,): v for j, v in enumerate(vec) if v != 0}) for vec in kernel]
    kvol = ker_forms[0]
    for f in ker_forms[1:]:
        kvol = wedge(kvol, f)
    # each differential must lie in Lambda^2(ker d)
    for s in image:
        if not wedge(s, kvol).is_zero(tol, max(1.0, s.max_abs() * kvol.max_abs())):
            raise NotTwoStepError("d(g*) is not contained in Lambda^2(ker d)")
    scale = max(1.0, max(s.max_abs() for s in image) ** 2)
    if r == 1:
        sq = wedge(image[0], image[0])
        return LABELS["v"] if sq.is_zero(tol, scale) else LABELS["vi"]
    prods = [[wedge(image[i], image[j]) for j in range(2)] for i in range(2)]
    ref = None
    for row in prods:
        for f in row:
            if not f.is_zero(tol, scale):
                ref = f
                break
        if ref is not None:
            break
    if ref is None:
        return LABELS["i"]
    mono = max(ref.terms, key=lambda k: abs(ref.terms[k]))
    gram = [[realify(_ratio(prods[i][j], ref, mono), 1e-6) for j in range(2)] for i in range(2)]
    kind = definiteness(gram, tol)
    return {"zero": LABELS["i"], "rank1": LABELS["iii"], "definite": LABELS["ii"],
            "indefinite": LABELS["iv"]}[kind]


def classify_real(p: SktParams, tol: float = DEFAULT_TOL) -> str:
    if p.is_abelian():
        raise AbelianAlgebraError(ABELIAN_MESSAGE)
    return classify_two_step(real_structure_constants(build_family(p), tol), tol)


def classify_from_gram(p: SktParams, tol: float = DEFAULT_TOL) -> str:
    """Same decision made directly from sigma1, sigma2 on the complex coframe."""
    if p.is_abelian():
        raise AbelianAlgebraError(ABELIAN_MESSAGE)
    s1, s2 = real_parts(p)
    monos = sorted(set(s1.terms) | set(s2.terms))
    rows = [[s.terms.get(mono, 0) for mono in monos] for s in (s1, s2)]
    r = linalg.rank(rows, tol)
    kind = definiteness(gram_matrix(p), tol * max(1.0, linalg.max_abs(rows)) ** 2)
    if r == 1:
        return LABELS["v"] if kind == "zero" else LABELS["vi"]
    return {"zero": LABELS["i"], "rank1": LABELS["iii"], "definite": LABELS["ii"],
            "indefinite": LABELS["iv"]}[kind]


def balanced_residual(p: SktParams, x, y, z):
    """A z + i (B x - C y) + D conj(z) for x11 = i x, x22 = i y, x12 = z."""
    if not (x > 0 and y > 0 and x * y > abs2(z)):
        raise ValueError("need x > 0, y > 0 and x y > |z|^2")
    v = p.A * z + I * (p.B * x - p.C * y) + p.D * z.conjugate()
    return simplify(v) if is_exact(v) else complex(v)


def balanced_form(x, y, z, w=None):
    """Coefficient matrix of the metric x11 = i x, x22 = i y, x12 = z, x33 = i w (w defaults to 1)."""
    w = 1 if w is None else w
    return [[I * x, z, 0], [-z.conjugate() if hasattr(z, "conjugate") else -z, I * y, 0], [0, 0, I * w]]


def is_zero_scalar(v, tol: float = DEFAULT_TOL) -> bool:
    return is_zero(v, tol)
