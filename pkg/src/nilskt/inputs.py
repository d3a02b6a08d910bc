"""JSON job files: scalars, algebras, complex structures, metrics and forms.

Scalars use the encoding of :func:`nilskt.scalars.parse_scalar`.  A document
may carry ``"mode": "exact" | "float"``; the ``NILSKT_MODE`` environment
variable overrides it, and exact is the default.
"""
from __future__ import annotations

import json
import os
from typing import Mapping, Optional

from .complex_structures import ComplexStructure, RealLieAlgebra
from .forms import Coframe, Form
from .hermitian import HermitianForm
from .scalars import parse_scalar
from .skt_family import SktParams

MODES = ("exact", "float")
ENV_MODE = "NILSKT_MODE"


class InputError(ValueError):
    """Malformed job file or environment."""


def load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object at top level")
    return doc


def resolve_mode(doc: Mapping, env: Optional[Mapping] = None) -> str:
    env = os.environ if env is None else env
    mode = env.get(ENV_MODE) or doc.get("mode", "exact")
    if mode not in MODES:
        raise InputError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def scalar(value, exact: bool):
    try:
        return parse_scalar(value, exact)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def matrix(rows, exact: bool, shape: Optional[tuple] = None) -> list:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix must be a list of rows")
    out = [[scalar(v, exact) for v in r] for r in rows]
    if shape is not None and (len(out) != shape[0] or any(len(r) != shape[1] for r in out)):
        raise InputError(f"expected a {shape[0]}x{shape[1]} matrix")
    return out


def params(doc: Mapping, exact: bool) -> SktParams:
    """Coefficients A..E, either at top level or under ``"params"``; missing ones are 0."""
    src = doc.get("params", doc)
    if not isinstance(src, dict):
        raise InputError("params must be an object with keys A..E")
    coeffs = {k: v for k, v in src.items() if k in "ABCDE" and len(k) == 1}
    if not coeffs:
        raise InputError("no coefficients A..E given")
    return SktParams(**{k: scalar(coeffs.get(k, 0), exact) for k in "ABCDE"})


def algebra(doc: Mapping, exact: bool) -> RealLieAlgebra:
    """From ``"algebra": "(0,0,0,0,12,34)"`` or ``"differentials": [{"12": c, ...}, ...]``."""
    if "algebra" in doc:
        try:
            L = RealLieAlgebra.from_notation(str(doc["algebra"]))
        except (ValueError, IndexError) as exc:
            raise InputError(f"bad algebra notation: {exc}") from None
    elif "differentials" in doc:
        ds = doc["differentials"]
        if not isinstance(ds, list):
            raise InputError("differentials must be a list, one entry per generator")
        cf = Coframe.real(len(ds))
        L = RealLieAlgebra.from_differentials([two_form(cf, d or {}, exact) for d in ds])
    else:
        raise InputError("need 'algebra' (notation) or 'differentials'")
    if not L.is_jacobi():
        raise InputError("structure constants violate the Jacobi identity (d^2 != 0)")
    return L


def two_form(cf: Coframe, spec, exact: bool) -> Form:
    """``{"16": 1, "25": "1/2"}`` means e^16 + 1/2 e^25 (1-based digits)."""
    if not isinstance(spec, dict):
        raise InputError("a 2-form is an object mapping index pairs like \"12\" to coefficients")
    out = cf.zero()
    for key, value in spec.items():
        if len(key) != 2 or not key.isdigit():
            raise InputError(f"bad index pair {key!r}")
        i, j = int(key[0]) - 1, int(key[1]) - 1
        if not (0 <= i < cf.dim and 0 <= j < cf.dim) or i == j:
            raise InputError(f"index pair {key!r} out of range")
        out = out + cf.monomial((i, j), scalar(value, exact))
    return out


def structure(doc: Mapping, L: RealLieAlgebra, exact: bool) -> ComplexStructure:
    """``"J"``: rows of coefficients of the (1,0)-forms over e^1..e^n."""
    n = L.dim
    rows = matrix(doc["J"], exact, (n // 2, n))
    if n % 2:
        raise InputError("a complex structure needs an even-dimensional algebra")
    S = ComplexStructure(L, rows)
    if not S.is_maximally_complex():
        raise InputError("the J forms and their conjugates do not span the dual space")
    return S


def hermitian(doc: Mapping, m: int, exact: bool) -> HermitianForm:
    """``"H"`` (positive Hermitian matrix) or ``"x"`` (coefficients of Omega); default Omega_0."""
    try:
        if "H" in doc:
            return HermitianForm.from_hermitian(matrix(doc["H"], exact, (m, m)))
        if "x" in doc:
            return HermitianForm(matrix(doc["x"], exact, (m, m)))
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return HermitianForm.standard(m)
