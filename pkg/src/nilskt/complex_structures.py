"""Real Lie algebras and invariant (almost) complex structures on them."""
from __future__ import annotations

import re
from functools import cached_property
from typing import Sequence

from . import linalg
from .forms import (Coframe, Form, REAL, conjugate, exterior_d, jacobi_check, linear_form,
                    monomial_basis, pullback, type_component, wedge, wedge_all)
from .scalars import DEFAULT_TOL, I, is_exact, realify, simplify


class NotIntegrableError(ValueError):
    pass


class NotMaximallyComplexError(ValueError):
    pass


_TERM = re.compile(r"([+-]?)(?:(\d+)\*)?(\d)(\d)")


class RealLieAlgebra:
    """A real Lie algebra stored as d on the dual basis e1..en (2-forms of structure constants).

    Brackets are derived by duality: de^k(X, Y) = -e^k([X, Y]).
    """

    def __init__(self, coframe: Coframe):
        if coframe.is_complex or any(k != REAL for k in coframe.kinds):
            raise ValueError("RealLieAlgebra needs a real coframe")
        self.coframe = coframe

    @classmethod
    def from_notation(cls, text: str) -> "RealLieAlgebra":
        """Parse the usual shorthand, e.g. ``(0,0,0,0,13+42,14+23)``; digits are 1-based indices."""
        body = text.strip().strip("()")
        entries = [e.strip() for e in body.split(",")]
        cf = Coframe.real(len(entries))
        ds = []
        for entry in entries:
            entry = entry.replace(" ", "")
            if entry == "0":
                ds.append(0)
                continue
            pos, form = 0, cf.zero()
            for mt in _TERM.finditer(entry):
                if mt.start() != pos:
                    raise ValueError(f"cannot parse {entry!r} in {text!r}")
                sign = -1 if mt.group(1) == "-" else 1
                coeff = int(mt.group(2)) if mt.group(2) else 1
                i, j = int(mt.group(3)) - 1, int(mt.group(4)) - 1
                form = form + cf.monomial((i, j), sign * coeff)
                pos = mt.end()
            if pos != len(entry):
                raise ValueError(f"cannot parse {entry!r} in {text!r}")
            ds.append(form)
        return cls(cf.with_differentials(ds))

    @classmethod
    def from_differentials(cls, ds: Sequence) -> "RealLieAlgebra":
        return cls(Coframe.real(len(ds)).with_differentials(ds))

    @classmethod
    def abelian(cls, n: int = 6) -> "RealLieAlgebra":
        return cls(Coframe.real(n))

    @property
    def dim(self) -> int:
        return self.coframe.dim

    def d(self, k) -> Form:
        return self.coframe.d(k)

    def notation(self) -> str:
        parts = []
        for k in range(self.dim):
            dk = self.d(k)
            if not dk:
                parts.append("0")
                continue
            s = ""
            for (i, j), c in sorted(dk.terms.items()):
                c = simplify(c) if is_exact(c) else c
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                s += f"{sign}{'' if mag == 1 else str(mag) + '*'}{i + 1}{j + 1}"
            parts.append(s.lstrip("+"))
        return "(" + ",".join(parts) + ")"

    def structure_constants(self) -> list:
        """c[k][i][j] with de^k = sum_{i<j} c[k][i][j] e^{ij}, antisymmetric in i, j."""
        n = self.dim
        c = [[[0] * n for _ in range(n)] for _ in range(n)]
        for k in range(n):
            for (i, j), v in self.d(k).terms.items():
                c[k][i][j] = v
                c[k][j][i] = -v
        return c

    def brackets(self) -> list:
        """b[i][j][k] with [e_i, e_j] = sum_k b[i][j][k] e_k."""
        c = self.structure_constants()
        n = self.dim
        return [[[-c[k][i][j] for k in range(n)] for j in range(n)] for i in range(n)]

    def is_jacobi(self, tol: float = DEFAULT_TOL) -> bool:
        return jacobi_check(self.coframe, tol)

    def d_matrix(self) -> list:
        """Matrix of d: (1-forms) -> (2-forms), rows indexed by the canonical 2-form basis."""
        basis = monomial_basis(self.dim, 2)
        return [[self.d(k).terms.get(mono, 0) for k in range(self.dim)] for mono in basis]

    def change_basis(self, q: Sequence[Sequence]) -> "RealLieAlgebra":
        """Algebra written in the new coframe f^i = sum_j q[i][j] e^j."""
        n = self.dim
        new = Coframe.real(n)
        qinv = linalg.inverse(q)
        images = [linear_form(new, qinv[j]) for j in range(n)]
        ds = []
        for i in range(n):
            de_i = Form(self.coframe, {})
            for j in range(n):
                if q[i][j] != 0:
                    de_i = de_i + self.d(j) * q[i][j]
            ds.append(pullback(de_i, images, new))
        return RealLieAlgebra(new.with_differentials(ds))

    def __repr__(self):
        return f"RealLieAlgebra{self.notation()}"


def betti_b1(algebra: RealLieAlgebra, tol: float = DEFAULT_TOL) -> int:
    """dim ker(d) on 1-forms."""
    if not algebra.is_jacobi(tol):
        raise ValueError("structure constants violate the Jacobi identity")
    return algebra.dim - linalg.rank(algebra.d_matrix(), tol)


def standard_forms(m: int) -> list:
    """Rows of the (1,0)-forms a^k = e^{2k-1} + i e^{2k}."""
    rows = []
    for k in range(m):
        row = [0] * (2 * m)
        row[2 * k] = 1
        row[2 * k + 1] = I
        rows.append(row)
    return rows


def _realify_complex_coframe(cf: Coframe, tol: float = DEFAULT_TOL) -> Coframe:
    """Real coframe f with a^k = f^{2k-1} + i f^{2k}, carrying the differentials induced by cf."""
    m = cf.m
    real = Coframe.real(2 * m)
    gens = real.generators()
    images = [gens[2 * k] + gens[2 * k + 1] * I for k in range(m)]
    images += [gens[2 * k] - gens[2 * k + 1] * I for k in range(m)]
    ds = []
    for k in range(m):
        dk = pullback(cf.d(k), images, real)
        re_part = Form(real, {mono: realify((v + v.conjugate()) / 2, tol) for mono, v in dk.terms.items()})
        im_part = Form(real, {mono: realify((v - v.conjugate()) / (2 * I), tol) for mono, v in dk.terms.items()})
        ds.extend([_clean(re_part, tol), _clean(im_part, tol)])
    return real.with_differentials(ds)


def _clean(f: Form, tol: float) -> Form:
    if f.is_exact():
        return Form(f.coframe, {k: simplify(v) for k, v in f.terms.items()})
    return Form(f.coframe, {k: v for k, v in f.terms.items() if abs(v) > tol * 1e-3})


class ComplexStructure:
    """An almost complex structure given by m complex 1-forms over a real coframe.

    ``forms[i][j]`` is the coefficient of e^j in the (1,0)-form a^i.  The induced
    complex coframe (a^1..a^m, conj a^1..conj a^m) carries the differentials of
    the underlying real algebra rewritten in that basis.
    """

    def __init__(self, algebra: RealLieAlgebra, forms: Sequence[Sequence], tol: float = DEFAULT_TOL,
                 coframe: Coframe | None = None):
        self.algebra = algebra
        self.forms = [list(r) for r in forms]
        self.tol = tol
        n = algebra.dim
        if n % 2 or len(self.forms) != n // 2 or any(len(r) != n for r in self.forms):
            raise ValueError("need n complex 1-forms with 2n real coefficients each")
        if coframe is not None:
            self.__dict__["coframe"] = coframe

    @classmethod
    def from_complex_coframe(cls, cf: Coframe, tol: float = DEFAULT_TOL) -> "ComplexStructure":
        """Structure whose (1,0)-forms are a^k = e^{2k-1} + i e^{2k} with the given complex differentials."""
        algebra = RealLieAlgebra(_realify_complex_coframe(cf, tol))
        return cls(algebra, standard_forms(cf.m), tol, coframe=cf)

    @property
    def m(self) -> int:
        return len(self.forms)

    @cached_property
    def matrix(self) -> list:
        """Rows (a^1..a^m, conj a^1..conj a^m) in terms of e^1..e^2m."""
        return self.forms + [[x.conjugate() for x in row] for row in self.forms]

    def is_maximally_complex(self) -> bool:
        m = self.matrix
        if linalg.all_exact(m):
            return linalg.det(m) != 0
        return linalg.rank(m, self.tol) == len(m)

    @cached_property
    def matrix_inverse(self) -> list:
        if not self.is_maximally_complex():
            raise NotMaximallyComplexError("the forms and their conjugates do not span the dual")
        return linalg.inverse(self.matrix, self.tol)

    @cached_property
    def coframe(self) -> Coframe:
        minv = self.matrix_inverse
        cf = Coframe.complex(self.m)
        images = [linear_form(cf, minv[j]) for j in range(self.algebra.dim)]
        ds = []
        for row in self.forms:
            de = Form(self.algebra.coframe, {})
            for j, c in enumerate(row):
                if c != 0:
                    de = de + self.algebra.d(j) * c
            ds.append(_clean_complex(pullback(de, images, cf), self.tol))
        return cf.with_differentials(ds)

    def real_images(self) -> list:
        """Each real generator e^j written in the complex coframe."""
        minv = self.matrix_inverse
        return [linear_form(self.coframe, minv[j]) for j in range(self.algebra.dim)]

    def complex_images(self) -> list:
        """Each complex generator (a^k then conjugates) written in the real coframe."""
        return [linear_form(self.algebra.coframe, row) for row in self.matrix]

    def to_complex(self, f: Form) -> Form:
        """Rewrite a form on the real coframe in the complex coframe."""
        return pullback(f, self.real_images(), self.coframe)

    def to_real(self, f: Form) -> Form:
        """Rewrite a form on the complex coframe in the real coframe."""
        return pullback(f, self.complex_images(), self.algebra.coframe)

    @cached_property
    def J_vectors(self) -> list:
        """Real matrix of J on vectors: a(JX) = i a(X) for every (1,0)-form a."""
        m = self.m
        diag = [I] * m + [-I] * m
        dm = [[diag[i] * x for x in row] for i, row in enumerate(self.matrix)]
        jv = linalg.mat_mul(self.matrix_inverse, dm)
        return [[realify(x, self.tol) for x in row] for row in jv]

    def with_forms(self, forms) -> "ComplexStructure":
        return ComplexStructure(self.algebra, forms, self.tol)

    def __repr__(self):
        return f"ComplexStructure({self.algebra.notation()}, forms={self.forms})"


def _clean_complex(f: Form, tol: float) -> Form:
    if f.is_exact():
        return Form(f.coframe, {k: simplify(v) for k, v in f.terms.items()})
    return Form(f.coframe, {k: v for k, v in f.terms.items() if abs(v) > tol * 1e-3})


def _coframe_of(S) -> Coframe:
    return S if isinstance(S, Coframe) else S.coframe


def is_maximally_complex(S: ComplexStructure) -> bool:
    return S.is_maximally_complex()


def is_integrable(S, tol: float = DEFAULT_TOL) -> bool:
    """True iff the (0,2) part of d a^k vanishes for every (1,0) generator a^k."""
    if isinstance(S, ComplexStructure) and not S.is_maximally_complex():
        raise NotMaximallyComplexError("integrability needs a maximally complex subspace")
    cf = _coframe_of(S)
    for k in range(cf.m):
        dk = cf.d(k)
        if not type_component(dk, 0, 2).is_zero(tol, max(1.0, dk.max_abs())):
            return False
    return True


def is_abelian(S, tol: float = DEFAULT_TOL) -> bool:
    """True iff every d a^k has pure type (1,1)."""
    if not is_integrable(S, tol):
        raise NotIntegrableError("complex structure is not integrable")
    cf = _coframe_of(S)
    for k in range(cf.m):
        dk = cf.d(k)
        if not type_component(dk, 2, 0).is_zero(tol, max(1.0, dk.max_abs())):
            return False
    return True


def _combination(cf: Coframe, v: Sequence) -> Form:
    return linear_form(cf, list(v) + [0] * cf.m)


def is_echelon(S, tol: float = DEFAULT_TOL) -> bool:
    """d a^1 = 0 and d a^i lies in the ideal generated by a^1..a^{i-1}."""
    cf = _coframe_of(S)
    prod = cf.one()
    for k in range(cf.m):
        dk = cf.d(k)
        if not wedge(dk, prod).is_zero(tol, max(1.0, dk.max_abs())):
            return False
        prod = wedge(prod, cf.generator(k))
    return True


def echelon_basis(S: ComplexStructure, tol: float = DEFAULT_TOL) -> ComplexStructure:
    """A basis of the same (1,0) space in which d b^1 = 0 and d b^i is in I(b^1..b^{i-1}).

    Greedy: at each step take the kernel of v -> d(v.a) ^ b^1 ^ ... ^ b^k and
    add its first vector not already spanned.
    """
    if not is_integrable(S, tol):
        raise NotIntegrableError("complex structure is not integrable")
    cf = S.coframe
    m = cf.m
    chosen: list = []
    prod = cf.one()
    for _ in range(m):
        columns = [wedge(cf.d(k), prod) for k in range(m)]
        monos = sorted({mono for c in columns for mono in c.terms})
        if monos:
            mat = [[c.terms.get(mono, 0) for c in columns] for mono in monos]
            null = linalg.nullspace(mat, tol)
        else:
            null = linalg.identity(m)
        pick = None
        for v in null:
            if linalg.rank(chosen + [v], tol) > len(chosen):
                pick = v
                break
        if pick is None:
            raise ValueError("no echelon basis: the algebra is not nilpotent or J is not integrable")
        chosen.append(pick)
        prod = wedge(prod, _combination(cf, pick))
    new_forms = linalg.mat_mul(chosen, S.forms)
    return S.with_forms(new_forms)


def real_structure_constants(S, tol: float = DEFAULT_TOL) -> RealLieAlgebra:
    """Real algebra in the coframe f with a^k = f^{2k-1} + i f^{2k}."""
    if isinstance(S, ComplexStructure) and not S.is_maximally_complex():
        raise NotMaximallyComplexError("structure is degenerate")
    return RealLieAlgebra(_realify_complex_coframe(_coframe_of(S), tol))


def holomorphic_volume(S) -> Form:
    """eta = a^1 ^ ... ^ a^m."""
    cf = _coframe_of(S)
    return wedge_all(cf.generator(k) for k in range(cf.m))


def conjugate_structure(S: ComplexStructure) -> ComplexStructure:
    """The structure -J, whose (1,0)-forms are the conjugates of those of J."""
    return S.with_forms([[x.conjugate() for x in row] for row in S.forms])


__all__ = [
    "RealLieAlgebra", "ComplexStructure", "NotIntegrableError", "NotMaximallyComplexError",
    "betti_b1", "is_maximally_complex", "is_integrable", "is_abelian", "is_echelon", "echelon_basis",
    "real_structure_constants", "holomorphic_volume", "conjugate_structure", "standard_forms",
    "conjugate", "exterior_d",
]
