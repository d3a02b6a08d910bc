"""Exterior algebra of invariant forms over a fixed coframe.

A :class:`Coframe` is a finite list of generators (1-forms) together with the
differential of each generator, which encodes the Lie algebra through its
Chevalley-Eilenberg differential.  Complex coframes carry ``m`` generators of
type (1,0) followed by their ``m`` conjugates, so the canonical order is
``a1 < a2 < a3 < c1 < c2 < c3`` and the standard volume form is
``a1 a2 a3 c1 c2 c3``.

A :class:`Form` stores a dict from strictly increasing index tuples to non-zero
scalar coefficients.  Mixed degrees are allowed.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .scalars import DEFAULT_TOL, I, is_exact

Monomial = Tuple[int, ...]

HOLOMORPHIC, ANTIHOLOMORPHIC, REAL = 1, -1, 0


class CoframeMismatch(ValueError):
    pass


@lru_cache(maxsize=None)
def _merge(a: Monomial, b: Monomial):
    """Canonical product of two monomials: (monomial, sign) or None if an index repeats."""
    if not a:
        return b, 1
    if not b:
        return a, 1
    sa = set(a)
    inversions = 0
    for j in b:
        if j in sa:
            return None
        for i in a:
            if i > j:
                inversions += 1
    return tuple(sorted(a + b)), (-1 if inversions & 1 else 1)


@lru_cache(maxsize=None)
def _sort_sign(idx: Monomial):
    if len(set(idx)) != len(idx):
        return None
    inversions = sum(1 for x in range(len(idx)) for y in range(x + 1, len(idx)) if idx[x] > idx[y])
    return tuple(sorted(idx)), (-1 if inversions & 1 else 1)


class Coframe:
    """Generators of the dual of a Lie algebra, with their differentials.

    Instances are immutable; :meth:`with_differentials` returns a new coframe.
    """

    def __init__(self, names: Sequence[str], conj: Sequence[int], kinds: Sequence[int],
                 d_terms: Sequence[Mapping[Monomial, object]] | None = None):
        self.names = tuple(names)
        self.conj = tuple(conj)
        self.kinds = tuple(kinds)
        n = len(self.names)
        if sorted(self.conj) != list(range(n)) or any(self.conj[self.conj[k]] != k for k in range(n)):
            raise ValueError("conjugation must be an involution of the generator indices")
        self._d = tuple(dict(t) for t in d_terms) if d_terms is not None else tuple({} for _ in range(n))
        if len(self._d) != n:
            raise ValueError("need one differential per generator")
        self._index = {name: k for k, name in enumerate(self.names)}
        self._dmono: Dict[Monomial, Dict[Monomial, object]] = {}

    # constructors
    @classmethod
    def complex(cls, m: int = 3, holo: str = "a", anti: str = "c") -> "Coframe":
        names = [f"{holo}{k + 1}" for k in range(m)] + [f"{anti}{k + 1}" for k in range(m)]
        conj = [k + m for k in range(m)] + [k for k in range(m)]
        kinds = [HOLOMORPHIC] * m + [ANTIHOLOMORPHIC] * m
        return cls(names, conj, kinds)

    @classmethod
    def real(cls, n: int = 6, prefix: str = "e") -> "Coframe":
        return cls([f"{prefix}{k + 1}" for k in range(n)], list(range(n)), [REAL] * n)

    def with_differentials(self, ds: Sequence) -> "Coframe":
        """New coframe with the given generator differentials (Forms or 0).

        For a complex coframe it suffices to give the ``m`` holomorphic
        differentials; the others are their conjugates.
        """
        ds = list(ds)
        if self.is_complex and len(ds) == self.m:
            tmp = Coframe(self.names, self.conj, self.kinds)
            holo = [Form(tmp, {}) if _is_zero_literal(f) else Form(tmp, f.terms) for f in ds]
            ds = holo + [conjugate(f) for f in holo]
        if len(ds) != self.dim:
            raise ValueError(f"expected {self.dim} differentials, got {len(ds)}")
        terms = []
        for f in ds:
            if _is_zero_literal(f):
                terms.append({})
            else:
                if not isinstance(f, Form) or len(f.coframe.names) != self.dim:
                    raise CoframeMismatch("differential lives on a different coframe")
                if any(len(k) != 2 for k in f.terms):
                    raise ValueError("generator differentials must be 2-forms")
                terms.append(f.terms)
        return Coframe(self.names, self.conj, self.kinds, terms)

    # basic data
    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def is_complex(self) -> bool:
        return all(k != REAL for k in self.kinds)

    @property
    def m(self) -> int:
        return sum(1 for k in self.kinds if k == HOLOMORPHIC)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}; have {self.names}") from None

    def generator(self, k) -> "Form":
        if isinstance(k, str):
            k = self.index(k)
        return Form(self, {(k,): 1})

    def generators(self) -> list:
        return [self.generator(k) for k in range(self.dim)]

    def zero(self) -> "Form":
        return Form(self, {})

    def one(self) -> "Form":
        return Form(self, {(): 1})

    def d(self, k) -> "Form":
        if isinstance(k, str):
            k = self.index(k)
        return Form(self, self._d[k])

    def differentials(self) -> list:
        return [self.d(k) for k in range(self.dim)]

    def monomial(self, spec, coeff=1) -> "Form":
        """Form ``coeff * g_i1 ^ ... ^ g_ik`` from names ("a1 c2") or indices, sorted with sign."""
        if isinstance(spec, str):
            idx = tuple(self.index(t) for t in spec.replace(",", " ").split())
        else:
            idx = tuple(spec)
        res = _sort_sign(idx)
        if res is None or coeff == 0:
            return self.zero()
        mono, sign = res
        return Form(self, {mono: coeff * sign})

    def form(self, spec: Mapping) -> "Form":
        """Sum of monomials given as ``{"a1 c2": coeff, ...}``."""
        out = self.zero()
        for key, c in spec.items():
            out = out + self.monomial(key, c)
        return out

    def volume(self) -> "Form":
        return Form(self, {tuple(range(self.dim)): 1})

    def _d_monomial(self, mono: Monomial) -> Dict[Monomial, object]:
        cached = self._dmono.get(mono)
        if cached is not None:
            return cached
        out: Dict[Monomial, object] = {}
        for s, g in enumerate(mono):
            dg = self._d[g]
            if not dg:
                continue
            left, right = mono[:s], mono[s + 1:]
            sign = -1 if s & 1 else 1
            for k, c in dg.items():
                r1 = _merge(left, k)
                if r1 is None:
                    continue
                r2 = _merge(r1[0], right)
                if r2 is None:
                    continue
                key = r2[0]
                val = out.get(key, 0) + c * (sign * r1[1] * r2[1])
                if val == 0:
                    out.pop(key, None)
                else:
                    out[key] = val
        self._dmono[mono] = out
        return out

    def __repr__(self):
        parts = []
        for k in range(self.dim):
            if self._d[k]:
                parts.append(f"d{self.names[k]}={Form(self, self._d[k])}")
        return f"Coframe({', '.join(self.names)}; {'; '.join(parts) or 'abelian'})"


def _is_zero_literal(f) -> bool:
    return not isinstance(f, Form) and f == 0


class Form:
    """An invariant differential form: a dict of canonical monomials to non-zero scalars."""

    __slots__ = ("coframe", "terms")

    def __init__(self, coframe: Coframe, terms: Mapping[Monomial, object]):
        self.coframe = coframe
        self.terms = {k: v for k, v in terms.items() if v != 0}

    # algebra
    def _check(self, other: "Form") -> None:
        if other.coframe is not self.coframe:
            if other.coframe.names != self.coframe.names or other.coframe.conj != self.coframe.conj:
                raise CoframeMismatch("forms live on different coframes")

    def __add__(self, other):
        if _is_zero_literal(other):
            return self
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            val = out.get(k, 0) + v
            if val == 0:
                out.pop(k, None)
            else:
                out[k] = val
        return Form(self.coframe, out)

    __radd__ = __add__

    def __neg__(self):
        return Form(self.coframe, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if _is_zero_literal(other):
            return self
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, Form):
            return wedge(self, c)
        if c == 0:
            return Form(self.coframe, {})
        return Form(self.coframe, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c):
        if c == 0:
            return Form(self.coframe, {})
        return Form(self.coframe, {k: c * v for k, v in self.terms.items()})

    def __truediv__(self, c):
        return self * (1 / c if not is_exact(c) else _exact_recip(c))

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if _is_zero_literal(other):
            return not self.terms
        if not isinstance(other, Form):
            return NotImplemented
        return self.coframe.names == other.coframe.names and self.terms == other.terms

    __hash__ = None

    # inspection
    def coefficient(self, spec) -> object:
        """Coefficient of a monomial given by names or indices (sign-adjusted if unsorted)."""
        if isinstance(spec, str):
            idx = tuple(self.coframe.index(t) for t in spec.replace(",", " ").split())
        else:
            idx = tuple(spec)
        res = _sort_sign(idx)
        if res is None:
            return 0
        mono, sign = res
        return sign * self.terms.get(mono, 0)

    def degrees(self) -> set:
        return {len(k) for k in self.terms}

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"form has mixed degrees {sorted(degs)}")
        return degs.pop() if degs else 0

    def max_abs(self) -> float:
        return max((abs(v) for v in self.terms.values()), default=0.0)

    def is_exact(self) -> bool:
        return all(is_exact(v) for v in self.terms.values())

    def is_zero(self, tol: float = DEFAULT_TOL, scale: float = 1.0) -> bool:
        """Exact forms compare with zero exactly; floating ones within ``tol * scale``."""
        if not self.terms:
            return True
        if self.is_exact():
            return False
        return self.max_abs() <= tol * scale

    def allclose(self, other: "Form", tol: float = DEFAULT_TOL, scale: float = 1.0) -> bool:
        return (self - other).is_zero(tol, scale)

    def to_float(self) -> "Form":
        return Form(self.coframe, {k: complex(v) for k, v in self.terms.items()})

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda t: (len(t), t)):
            name = " ".join(self.coframe.names[i] for i in k) if k else "1"
            parts.append(f"({self.terms[k]})[{name}]")
        return " + ".join(parts)


def _exact_recip(c):
    from fractions import Fraction

    from .scalars import GaussianRational
    if isinstance(c, GaussianRational):
        return c.inverse()
    return Fraction(1) / Fraction(c)


def wedge(a: Form, b: Form) -> Form:
    """Exterior product in canonical form."""
    a._check(b)
    out: Dict[Monomial, object] = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            r = _merge(ka, kb)
            if r is None:
                continue
            key, sign = r
            prod = va * vb
            val = out.get(key, 0) + (prod if sign == 1 else -prod)
            if val == 0:
                out.pop(key, None)
            else:
                out[key] = val
    return Form(a.coframe, out)


def wedge_all(forms: Iterable[Form]) -> Form:
    forms = list(forms)
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def exterior_d(a: Form) -> Form:
    """d extended from the generators by the graded Leibniz rule; d of a constant is 0."""
    cf = a.coframe
    out: Dict[Monomial, object] = {}
    for mono, c in a.terms.items():
        for k, v in cf._d_monomial(mono).items():
            val = out.get(k, 0) + c * v
            if val == 0:
                out.pop(k, None)
            else:
                out[k] = val
    return Form(cf, out)


def jacobi_check(cf: Coframe, tol: float = DEFAULT_TOL) -> bool:
    """True iff d(d g) = 0 for every generator g (d^2 = 0 is the Jacobi identity)."""
    for k in range(cf.dim):
        dk = cf.d(k)
        if not exterior_d(dk).is_zero(tol, max(1.0, dk.max_abs()) ** 2):
            return False
    return True


def conjugate(a: Form) -> Form:
    """Antilinear involution: swap each generator with its partner and conjugate coefficients."""
    cf = a.coframe
    out = {}
    for mono, c in a.terms.items():
        mapped, sign = _sort_sign(tuple(cf.conj[i] for i in mono))
        out[mapped] = c.conjugate() * sign
    return Form(cf, out)


def bidegree(cf: Coframe, mono: Monomial) -> Tuple[int, int]:
    if not cf.is_complex and mono:
        raise ValueError("bidegree is only defined on a complex coframe")
    p = sum(1 for i in mono if cf.kinds[i] == HOLOMORPHIC)
    return p, len(mono) - p


def type_component(a: Form, p: int, q: int) -> Form:
    """The (p,q) part: monomials with exactly p unbarred and q barred generators."""
    cf = a.coframe
    if a.terms and not cf.is_complex:
        raise ValueError("type decomposition needs a complex coframe; pull the form back first")
    return Form(cf, {k: v for k, v in a.terms.items() if bidegree(cf, k) == (p, q)})


_I_POWERS = (1, I, -1, -I)


def apply_J(a: Form) -> Form:
    """Multiplicative action of J: a (p,q) monomial is scaled by i**(p - q)."""
    cf = a.coframe
    if a.terms and not cf.is_complex:
        raise ValueError("apply_J needs a complex coframe")
    out = {}
    for k, v in a.terms.items():
        p, q = bidegree(cf, k)
        f = _I_POWERS[(p - q) % 4]
        out[k] = v if f == 1 else (-v if f == -1 else v * f)
    return Form(cf, out)


def box(a: Form) -> Form:
    """The operator (1/2) i d J d, which equals d d-bar on (p,p)-forms when d^2 = 0."""
    return exterior_d(apply_J(exterior_d(a))) * (I / 2)


def top_coefficient(a: Form, i: int, j: int):
    """Coefficient of a^i ^ conj(a^j) ^ a relative to the standard volume form (1-based i, j)."""
    cf = a.coframe
    m = cf.m
    if a.terms and a.degrees() != {cf.dim - 2}:
        raise ValueError(f"top_coefficient needs a {cf.dim - 2}-form, got degrees {sorted(a.degrees())}")
    prefix = cf.monomial((i - 1, m + j - 1))
    return wedge(prefix, a).terms.get(tuple(range(cf.dim)), 0)


def coefficient_along(a: Form, reference: Form):
    """Scalar c with a = c * reference, where reference is a single monomial."""
    if len(reference.terms) != 1:
        raise ValueError("reference must be a single monomial")
    (mono, c), = reference.terms.items()
    extra = set(a.terms) - {mono}
    if extra:
        raise ValueError("form is not a multiple of the reference monomial")
    val = a.terms.get(mono, 0)
    return val * _exact_recip(c) if is_exact(c) and is_exact(val) else val / c


def pullback(a: Form, images: Sequence[Form], target: Coframe | None = None) -> Form:
    """Substitute each generator k by the 1-form images[k] (over a common target coframe)."""
    if target is None:
        target = images[0].coframe
    out = Form(target, {})
    cache: Dict[Monomial, Form] = {(): target.one()}
    for mono, c in a.terms.items():
        prod = cache.get(mono)
        if prod is None:
            prod = target.one()
            for i in mono:
                prod = wedge(prod, images[i])
            cache[mono] = prod
        out = out + prod * c
    return out


def linear_form(cf: Coframe, coeffs: Sequence) -> Form:
    """The 1-form sum_k coeffs[k] g_k."""
    return Form(cf, {(k,): c for k, c in enumerate(coeffs) if c != 0})


def coefficient_vector(a: Form, basis: Sequence[Monomial]) -> list:
    return [a.terms.get(k, 0) for k in basis]


def monomial_basis(n: int, degree: int) -> list:
    from itertools import combinations
    return list(combinations(range(n), degree))
