"""Grid scans and curve samples of the Iwasawa normal forms, written as CSV."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, List, Sequence

from . import iwasawa

COLUMNS = ("re(z)", "im(z)", "gamma", "delta", "c1", "de_residual", "curve_residual",
           "component", "is_skt")


class EmptyGridError(ValueError):
    pass


def _num(v) -> str:
    return repr(float(v))


def row_for(z: complex) -> List[str]:
    """One CSV row for the normal form [[0, z], [1, 0]]."""
    z = complex(z)
    X = iwasawa.normal_X(z)
    gamma, delta = iwasawa.consim_invariants(X)
    c1 = iwasawa.c_of(1, gamma, delta)
    if iwasawa.is_well_defined(X):
        comp = iwasawa.component(X)
        skt = "true" if iwasawa.is_skt(X) else "false"
    else:
        comp, skt = "degenerate", ""
    return [_num(z.real), _num(z.imag), _num(gamma), _num(delta), _num(c1),
            _num(iwasawa.de_residual(gamma, delta)), _num(iwasawa.curve_residual(z)), comp, skt]


def _rows(points: Sequence[complex]) -> List[List[str]]:
    return [row_for(z) for z in points]


def rows_for(points: Sequence[complex], workers: int = 1) -> List[List[str]]:
    """Rows in input order; chunks are farmed out to worker processes when workers > 1."""
    points = list(points)
    if workers <= 1 or len(points) < 2:
        return _rows(points)
    size = -(-len(points) // workers)
    chunks = [points[k:k + size] for k in range(0, len(points), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return [row for part in pool.map(_rows, chunks) for row in part]


def axis(lo: float, hi: float, steps: int) -> List[float]:
    if steps == 1:
        return [lo]
    return [lo + (hi - lo) * k / (steps - 1) for k in range(steps)]


def grid_points(re_min: float, re_max: float, im_min: float, im_max: float, steps: int,
                include_known: bool = True) -> List[complex]:
    """steps x steps grid (real part outer, imaginary part inner) plus known curve points in the window."""
    if steps < 1 or re_min > re_max or im_min > im_max:
        raise EmptyGridError("empty grid: need steps >= 1 and min <= max on both axes")
    pts = [complex(re, im) for re in axis(re_min, re_max, steps) for im in axis(im_min, im_max, steps)]
    if include_known:
        pts += [complex(z) for z in iwasawa.EXPLICIT_SOLUTIONS
                if re_min <= complex(z).real <= re_max and im_min <= complex(z).imag <= im_max]
    return pts


def curve_points(samples: int, branch: str = "both") -> List[complex]:
    branches = ("inner", "outer") if branch == "both" else (branch,)
    if samples < 1:
        raise EmptyGridError("need at least one sample per branch")
    return [z for b in branches for z in iwasawa.curve_sample(samples, b)]


def to_csv(rows: Iterable[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    writer.writerows(rows)
    return buf.getvalue()
