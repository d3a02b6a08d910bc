"""Randomized and exact checks of every result the package reproduces.

Each criterion is a function returning ``(passed, detail)``.  Inputs come from
fixed seeds, so a run is deterministic.  :func:`run` executes a selection and
reports one :class:`CriterionResult` per criterion.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Tuple

from . import forms, iwasawa, linalg, sampling
from .complex_structures import (ComplexStructure, RealLieAlgebra, is_abelian, is_integrable,
                                 real_structure_constants, standard_forms)
from .curvature import (admits_symplectic_form, closed_two_forms, holomorphic_volume_closed,
                        iwasawa_pseudo_kahler, metric_from_form, pseudo_kahler_check, ricci, riemann,
                        riemann_up, signature)
from .forms import Coframe, box, coefficient_along, conjugate, exterior_d, wedge
from .hermitian import NEITHER, SKT, HermitianForm, lee_form, skt_status
from .scalars import I, GaussianRational, format_scalar
from .skt_family import (LABELS, SKT_LABELS, SktParams, adjugate, build_family, classify_real,
                         classify_two_step, matrix_form, volume4)

Outcome = Tuple[bool, str]


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    groups: Tuple[str, ...]
    check: Callable[["Settings"], Outcome]


@dataclass(frozen=True)
class Settings:
    tol: float = 1e-9
    seed: int = 20240


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} [{self.number:2d}] {self.title}: {self.detail} ({self.seconds:.1f}s)"


class _Tally:
    """Counts cases and keeps the first few failures for the report."""

    def __init__(self):
        self.cases = 0
        self.failures: List[str] = []

    def check(self, ok: bool, what: str) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(what)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self, label: str = "cases") -> str:
        if self.ok:
            return f"{self.cases} {label} ok"
        shown = "; ".join(self.failures[:3])
        return f"{len(self.failures)}/{self.cases} {label} failed, e.g. {shown}"


def _fmt(p: SktParams) -> str:
    return "(" + ", ".join(format_scalar(v) for v in p.astuple()) + ")"


def _rng(settings: Settings, salt: int) -> random.Random:
    return random.Random(settings.seed * 1000 + salt)


def _to_float_params(p: SktParams) -> SktParams:
    return SktParams(*(complex(v) for v in p.astuple()))


def _to_float_form(W: HermitianForm) -> HermitianForm:
    return HermitianForm([[complex(v) for v in row] for row in W.x])


# 1 ---------------------------------------------------------------------------

def skt_equivalence(settings: Settings) -> Outcome:
    rng = _rng(settings, 1)
    exact, floating = _Tally(), _Tally()
    tuples = ([(sampling.skt_params(rng), SKT) for _ in range(100)]
              + [(sampling.non_skt_params(rng), NEITHER) for _ in range(100)])
    for p, expected in tuples:
        cf, cf_float = build_family(p), build_family(_to_float_params(p))
        for _ in range(20):
            W = sampling.positive_form(rng)
            got = skt_status(W, cf)
            exact.check(got == expected, f"{_fmt(p)} -> {got}")
            got = skt_status(_to_float_form(W), cf_float, tol=settings.tol)
            floating.check(got == expected, f"float {_fmt(p)} -> {got}")
    return exact.ok and floating.ok, f"exact {exact.summary()}, float {floating.summary()}"


# 2 ---------------------------------------------------------------------------

def abc_coefficient(settings: Settings) -> Outcome:
    rng = _rng(settings, 2)
    tally = _Tally()
    for _ in range(100):
        p = sampling.params(rng)
        cf = build_family(p)
        da3 = cf.d(2)
        # looked up on the module so that a patched apply_J is what gets tested
        got = coefficient_along(wedge(forms.apply_J(da3), conjugate(da3)), volume4(cf))
        A, B, C, D, E = p.astuple()
        want = A.abs2() + B * C.conjugate() + C * B.conjugate() + D.abs2() + E.abs2()
        tally.check(got == want, f"{_fmt(p)}: {got} != {want}")
    return tally.ok, tally.summary("tuples")


# 3 ---------------------------------------------------------------------------

SQRT2, SQRT3 = math.sqrt(2), math.sqrt(3)
WITNESSES = [
    (SktParams(0, 1, 0, 0, 0), LABELS["v"]),
    (SktParams(0, 0, 0, 0, 1), LABELS["ii"]),
    (SktParams(0, 1, complex(-1, 2), 0, SQRT2), LABELS["iv"]),
    (SktParams(0, 1, complex(-1, SQRT3), 0, SQRT2), LABELS["iii"]),
]


def _congruence(rng: random.Random) -> list:
    """Block change of basis: a random real 4x4 on e1..e4 and a complex rescaling of a3."""
    q4 = sampling.real_invertible(rng, 4)
    while True:
        s, t = rng.randint(-3, 3), rng.randint(-3, 3)
        if s or t:
            break
    return [row + [0, 0] for row in q4] + [[0, 0, 0, 0, s, -t], [0, 0, 0, 0, t, s]]


def classification(settings: Settings, tuples: int = 1000, congruent: int = 100,
                   per_tuple: int = 20) -> Outcome:
    rng = _rng(settings, 3)
    witness, never, invariant = _Tally(), _Tally(), _Tally()
    for p, want in WITNESSES:
        got = classify_real(p)
        witness.check(got == want, f"{_fmt(p)} -> {got}")
    for n in range(tuples):
        p = sampling.skt_params(rng)
        label = classify_real(p)
        never.check(label in SKT_LABELS, f"{_fmt(p)} -> {label}")
        if n < congruent:
            L = real_structure_constants(build_family(p))
            for _ in range(per_tuple):
                got = classify_two_step(L.change_basis(_congruence(rng)))
                invariant.check(got == label, f"{_fmt(p)}: {got} != {label}")
    ok = witness.ok and never.ok and invariant.ok
    return ok, (f"witnesses {witness.summary()}, SKT tuples {never.summary()}, "
                f"congruences {invariant.summary()}")


# 4 ---------------------------------------------------------------------------

def _lee_norm(theta) -> float:
    return math.sqrt(sum(abs(complex(v)) ** 2 for v in theta.terms.values()))


def lee_and_balanced_bound(settings: Settings, samples: int = 10000) -> Outcome:
    rng = _rng(settings, 4)
    lee, bound = _Tally(), _Tally()
    W = HermitianForm.standard()
    smallest = math.inf
    for _ in range(samples):
        p = sampling.skt_params(rng, exact=False)
        norm = _lee_norm(lee_form(W, build_family(p), 1e-12))
        smallest = min(smallest, norm)
        lee.check(norm > 1e-6, f"{_fmt(p)}: |theta| = {norm:.3g}")
    # x11 = i x, x22 = i y, x12 = z with Re C <= -(|A|^2 + |D|^2)/2 and x real forces x <= |z|^2
    for _ in range(samples):
        A, D, z = sampling.gaussian(rng), sampling.gaussian(rng), sampling.gaussian(rng)
        F = I * (A * z + D * z.conjugate())
        slack = 0 if rng.random() < 0.2 else sampling.rational(rng, 5, 4) ** 2
        C = GaussianRational(-(A.abs2() + D.abs2()) / 2 - slack, -F.imag)
        x = C + F
        bound.check(x.imag == 0 and x.real <= z.abs2(), f"A={A}, D={D}, z={z}: x={x}")
    return lee.ok and bound.ok, (f"Lee form {lee.summary('solutions')} (min |theta| {smallest:.3g}), "
                                  f"inequality {bound.summary('samples')}")


# 5 ---------------------------------------------------------------------------

H3S3 = "(0,0,12,56,64,45)"


def h3s3_structure() -> ComplexStructure:
    return ComplexStructure(RealLieAlgebra.from_notation(H3S3), standard_forms(3))


def h3s3_example(settings: Settings) -> Outcome:
    S = h3s3_structure()
    cf = S.coframe
    notes = []
    box0 = box(HermitianForm.standard().form(S))
    ok_box0 = box0.is_zero() and box0.is_exact()
    notes.append(f"box(Omega_0) = 0: {ok_box0}")
    # literal value -1/4 i a1 a2 c2 c3 for box(a1 c3)
    got = box(cf.monomial("a1 c3"))
    want = cf.monomial("a1 a2 c2 c3", -I / 4)
    ok_literal = got == want
    notes.append(f"box(a1 c3) = -i/4 a1a2c2c3: {ok_literal} (computed {got})")
    # box is linear in x: only the x13, x31 coefficients survive, on independent monomials
    m = 3
    survivors, images = [], []
    for i in range(m):
        for j in range(m):
            img = box(cf.monomial((i, m + j)))
            if not img.is_zero():
                survivors.append((i + 1, j + 1))
                images.append(img)
    monos = sorted({k for f in images for k in f.terms})
    independent = linalg.rank([[f.terms.get(k, 0) for k in monos] for f in images]) == len(images)
    ok_extract = sorted(survivors) == [(1, 3), (3, 1)] and independent
    notes.append(f"surviving coefficients {survivors}, independent {independent}")
    rng = _rng(settings, 5)
    tally = _Tally()
    for _ in range(40):
        W = sampling.positive_form(rng)
        x = [list(row) for row in W.x]
        if rng.random() < 0.5:
            x[0][2] = 0
            x[2][0] = 0
            if not _positive(x):
                continue
        status = skt_status(HermitianForm(x), S)
        tally.check((status == SKT) == (x[0][2] == 0), f"x13={x[0][2]} -> {status}")
    notes.append(f"random metrics {tally.summary()}")
    return ok_box0 and ok_literal and ok_extract and tally.ok, "; ".join(notes)


def _positive(x) -> bool:
    from .hermitian import is_positive
    return is_positive(HermitianForm(x))


# 6 ---------------------------------------------------------------------------

def explicit_solutions(settings: Settings) -> Outcome:
    worst = 0.0
    notes = []
    ok = True
    for z in iwasawa.EXPLICIT_SOLUTIONS:
        gamma, delta = 2 * complex(z).real, abs(z) ** 2
        worst = max(worst, abs(iwasawa.curve_residual(z)), abs(iwasawa.de_residual(gamma, delta)))
        if not iwasawa.is_skt(iwasawa.normal_form(z)):
            ok = False
            notes.append(f"is_skt false at z={z}")
    ok = ok and worst < 1e-12
    notes.append(f"max residual {worst:.2e}")
    j0 = iwasawa.is_skt([[0, 0], [0, 0]])
    notes.append(f"is_skt(J0) = {j0}")
    try:
        iwasawa.normal_form(1)
        rejected = False
    except iwasawa.DegenerateStructureError:
        rejected = True
    notes.append(f"z = 1 rejected: {rejected}")
    return ok and not j0 and rejected, "; ".join(notes)


# 7 ---------------------------------------------------------------------------

def _linspace(lo: float, hi: float, n: int) -> list:
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


def _verdicts(X, tol: float) -> Tuple[bool, bool, bool]:
    return iwasawa.skt_by_de(X, tol), iwasawa.skt_by_curve(X, tol), iwasawa.skt_by_box(X, tol)


def three_way_agreement(settings: Settings) -> Outcome:
    tol = 1e-8
    grid, transforms = _Tally(), _Tally()
    skipped = positives = 0
    for re in _linspace(-3, 1, 50):
        for im in _linspace(-2, 2, 50):
            z = complex(re, im)
            X = iwasawa.normal_X(z)
            if not iwasawa.is_well_defined(X, tol):
                skipped += 1
                continue
            v = _verdicts(X, tol)
            positives += v[0]
            grid.check(v[0] == v[1] == v[2], f"z={z}: {v}")
    rng = _rng(settings, 7)
    curve = iwasawa.curve_sample(25, "inner") + iwasawa.curve_sample(25, "outer")
    for k in range(100):
        z = curve[k % len(curve)]
        X = iwasawa.normal_form(z, sampling.invertible2(rng, exact=False))
        v = _verdicts(X, tol)
        transforms.check(v == (True, True, True), f"z={z}: {v}")
    detail = (f"grid {grid.summary('points')} ({positives} SKT, {skipped} degenerate skipped), "
              f"on-curve transforms {transforms.summary()}")
    return grid.ok and transforms.ok, detail


# 8 ---------------------------------------------------------------------------

def curve_symmetries(settings: Settings) -> Outcome:
    rng = _rng(settings, 8)
    sym, flip = _Tally(), _Tally()
    worst = 0.0
    for branch, other in (("inner", "outer"), ("outer", "inner")):
        for z in iwasawa.curve_sample(180, branch):
            r = max(abs(iwasawa.curve_residual(1 / z)), abs(iwasawa.curve_residual(z.conjugate())))
            worst = max(worst, r)
            sym.check(r < 1e-10, f"z={z}: {r:.2e}")
            X = iwasawa.normal_form(z, sampling.invertible2(rng, exact=False))
            Xn = iwasawa.negate_J(X)
            lam = iwasawa.eigenvalues(*iwasawa.consim_invariants(Xn), 1e-9)
            on_other = all((abs(w) > 1) == (other == "outer") for w in lam)
            on_curve = all(abs(iwasawa.curve_residual(w)) < 1e-8 * max(1.0, abs(w)) ** 4 for w in lam)
            skt = iwasawa.is_skt(X) and iwasawa.is_skt(Xn)
            flip.check(on_other and on_curve and skt, f"z={z}: other={on_other}, curve={on_curve}, skt={skt}")
    return sym.ok and flip.ok, (f"symmetry {sym.summary('points')} (max {worst:.1e}), "
                                f"negate_J {flip.summary('points')}")


# 9 ---------------------------------------------------------------------------

def reverse_basis_and_minors(settings: Settings) -> Outcome:
    rng = _rng(settings, 9)
    reverse, minors = _Tally(), _Tally()
    while reverse.cases < 100:
        X = sampling.matrix2(rng)
        if not iwasawa.is_well_defined(X):
            continue
        residual = iwasawa.reverse_basis_residual(X)
        gamma, delta = iwasawa.consim_invariants(X)
        c1 = iwasawa.c_of(1, gamma, delta)
        vols = iwasawa.volume_ratios(X)
        reverse.check(residual.is_zero() and residual.is_exact() and vols == (c1, c1 * (1 - delta)),
                      f"X={X}")
    for _ in range(100):
        Z, X = sampling.matrix2(rng), sampling.matrix2(rng)
        res = iwasawa.minors_identity_residual(Z, X)
        minors.check(all(v == 0 for v in res), f"Z={Z}, X={X}")
    return reverse.ok and minors.ok, f"reverse basis {reverse.summary()}, minors {minors.summary()}"


# 10 --------------------------------------------------------------------------

BALANCED_SETTINGS = (
    SktParams(0, 0, 0, 0, 1),
    SktParams(1, 0, 0, 1, 0),
    SktParams(1, 0, 0, 0, 1),
    SktParams(1, 0, 0, 1, 2),
    SktParams(1, I, I, -1, 2),
)


def balanced_settings(settings: Settings) -> Outcome:
    W = HermitianForm.standard()
    labels = []
    balanced = True
    for p in BALANCED_SETTINGS:
        theta = lee_form(W, build_family(p))
        balanced = balanced and theta.is_zero()
        labels.append(classify_real(p))
    distinct = len(set(labels))
    ok = balanced and distinct == 5 and LABELS["i"] in labels and LABELS["vi"] in labels
    return ok, f"theta = 0 for all: {balanced}; classes {labels} ({distinct} distinct)"


# 11 --------------------------------------------------------------------------

def pseudo_kahler_example(settings: Settings) -> Outcome:
    L, S, omega = iwasawa_pseudo_kahler()
    notes = []
    closed = exterior_d(omega).is_zero() and omega.is_exact()
    integrable, abelian = is_integrable(S), is_abelian(S)
    report = pseudo_kahler_check(L, S, omega)
    h = metric_from_form(omega, S.J_vectors)
    sig = signature(h)
    rup = riemann_up(L, h)
    ric = ricci(L, h, rup)
    ricci_zero = all(v == 0 for row in ric for v in row)
    R = riemann(L, h, rup)
    r1212 = R[0][1][0][1]
    nonzero = any(v != 0 for a in R for b in a for c in b for v in c)
    eta_closed = holomorphic_volume_closed(S)
    notes.append(f"dOmega=0 {closed}, integrable {integrable}, abelian {abelian}, report {report.ok}")
    notes.append(f"signature {sig}, Ricci zero {ricci_zero}, R1212 {r1212}, Riemann nonzero {nonzero}")
    notes.append(f"d eta = 0 {eta_closed}")
    other = RealLieAlgebra.from_notation(LABELS["vi"])
    closed_forms = len(closed_two_forms(other))
    symplectic = admits_symplectic_form(other)
    notes.append(f"{LABELS['vi']}: {closed_forms} closed 2-forms, symplectic {symplectic}")
    ok = (closed and integrable and abelian and report.ok and sig == (4, 2) and ricci_zero
          and abs(r1212) == 2 and nonzero and eta_closed and not symplectic)
    return ok, "; ".join(notes)


# 12 --------------------------------------------------------------------------

def _random_form(rng: random.Random, cf: Coframe, degree: int, terms: int = 3):
    out = cf.zero()
    for _ in range(terms):
        mono = tuple(sorted(rng.sample(range(cf.dim), degree)))
        out = out + cf.monomial(mono, sampling.gaussian(rng))
    return out


def core_identities(settings: Settings, checks: int = 1000) -> Outcome:
    rng = _rng(settings, 12)
    d2, leibniz, jj, adj, trace, conj = (_Tally() for _ in range(6))
    coframes = [build_family(sampling.params(rng)) for _ in range(20)]
    for n in range(checks):
        cf = coframes[n % len(coframes)]
        f = _random_form(rng, cf, rng.randint(1, 4))
        d2.check(exterior_d(exterior_d(f)).is_zero(), f"{f}")
        p, q = rng.randint(1, 3), rng.randint(1, 2)
        a, b = _random_form(rng, cf, p, 2), _random_form(rng, cf, q, 2)
        lhs = exterior_d(wedge(a, b))
        rhs = wedge(exterior_d(a), b) + wedge(a, exterior_d(b)) * (-1) ** p
        leibniz.check(lhs == rhs, f"{a} , {b}")
        two = _random_form(rng, cf, 2, 4)
        jj.check(forms.apply_J(forms.apply_J(two)) == two, f"{two}")
        M, N = sampling.matrix2(rng), sampling.matrix2(rng)
        det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        prod = linalg.mat_mul(M, adjugate(M))
        adj.check(prod == [[det, 0], [0, det]], f"M={M}")
        tr = sum(linalg.mat_mul(M, adjugate(N))[k][k] for k in range(2))
        trace.check(wedge(matrix_form(M, cf), matrix_form(N, cf)) == volume4(cf) * tr, f"M={M}, N={N}")
        Mbar = [[v.conjugate() for v in row] for row in M]
        conj.check(conjugate(matrix_form(M, cf)) == matrix_form(adjugate(Mbar), cf), f"M={M}")
    tallies = {"d^2": d2, "Leibniz": leibniz, "J^2": jj, "adjugate": adj,
               "wedge-trace": trace, "conjugate": conj}
    return all(t.ok for t in tallies.values()), ", ".join(f"{k} {t.summary()}" for k, t in tallies.items())


CRITERIA = (
    Criterion(1, "SKT equation vs box(Omega) on random metrics", ("family", "skt"), skt_equivalence),
    Criterion(2, "coefficient of J d a3 ^ d conj(a3)", ("family", "skt"), abc_coefficient),
    Criterion(3, "classification of SKT tuples", ("family", "classify"), classification),
    Criterion(4, "Lee form of Omega_0 and the balanced inequality", ("family", "lee"), lee_and_balanced_bound),
    Criterion(5, "H3 x S3 box computations", ("examples", "h3s3"), h3s3_example),
    Criterion(6, "explicit Iwasawa solutions", ("iwasawa",), explicit_solutions),
    Criterion(7, "three-way Iwasawa SKT agreement", ("iwasawa",), three_way_agreement),
    Criterion(8, "curve symmetries and negate_J", ("iwasawa", "curve"), curve_symmetries),
    Criterion(9, "reverse basis and minors identities", ("iwasawa",), reverse_basis_and_minors),
    Criterion(10, "balanced settings realize distinct classes", ("family", "lee", "classify"),
              balanced_settings),
    Criterion(11, "pseudo-Kahler example and curvature", ("curvature", "examples"), pseudo_kahler_example),
    Criterion(12, "core exterior algebra identities", ("core", "forms"), core_identities),
)


def groups() -> List[str]:
    return sorted({g for c in CRITERIA for g in c.groups})


def select(name: Optional[str] = None) -> List[Criterion]:
    """Criteria matching a group name or number (comma-separated list allowed); all if name is None."""
    if not name:
        return list(CRITERIA)
    wanted = [part.strip().lower() for part in name.split(",") if part.strip()]
    chosen = [c for c in CRITERIA
              if any(w == str(c.number) or w in c.groups for w in wanted)]
    if not chosen:
        raise ValueError(f"no criterion matches {name!r}; groups are {', '.join(groups())}")
    return chosen


def run(criteria: Optional[Iterable[Criterion]] = None, settings: Settings = Settings(),
        echo: Optional[Callable[[str], None]] = None) -> List[CriterionResult]:
    results = []
    for c in (CRITERIA if criteria is None else criteria):
        start = time.perf_counter()
        try:
            ok, detail = c.check(settings)
        except Exception as exc:  # a crash is a failure of that criterion, not of the run
            ok, detail = False, f"error: {type(exc).__name__}: {exc}"
        res = CriterionResult(c.number, c.title, ok, detail, time.perf_counter() - start)
        results.append(res)
        if echo is not None:
            echo(res.line())
    return results
