"""Small dense linear algebra over exact or floating scalars.

Matrices are lists of row lists.  Elimination uses the first non-zero pivot for
exact entries and partial pivoting (largest modulus) once any entry is floating.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .scalars import DEFAULT_TOL, is_exact, is_zero, simplify

Matrix = List[List]


class SingularMatrixError(ValueError):
    pass


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[0] * (n if m is None else m) for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def copy(a: Sequence[Sequence]) -> Matrix:
    return [list(row) for row in a]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[_dot(row, col) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    return [_dot(row, v) for row in a]


def _dot(u, v):
    s = 0
    for x, y in zip(u, v):
        if x and y:
            s = s + x * y
    return s


def mat_add(a, b) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a) -> Matrix:
    return [[c * x for x in row] for row in a]


def mat_conj(a) -> Matrix:
    return [[x.conjugate() for x in row] for row in a]


def trace(a):
    s = 0
    for i in range(len(a)):
        s = s + a[i][i]
    return s


def all_exact(a) -> bool:
    return all(is_exact(x) for row in a for x in row)


def max_abs(a) -> float:
    return max((abs(x) for row in a for x in row), default=0.0)


def _pivot_row(m: Matrix, col: int, start: int, exact: bool, tol: float):
    if exact:
        for r in range(start, len(m)):
            if m[r][col] != 0:
                return r
        return None
    best, best_val = None, tol
    for r in range(start, len(m)):
        v = abs(m[r][col])
        if v > best_val:
            best, best_val = r, v
    return best


def rref(a: Sequence[Sequence], tol: float = DEFAULT_TOL, scale: float | None = None):
    """Reduced row echelon form; returns (matrix, pivot columns).

    For floating input the zero threshold is ``tol * scale`` where scale defaults
    to the largest entry modulus.
    """
    m = copy(a)
    exact = all_exact(m)
    eps = 0.0 if exact else tol * (scale if scale is not None else max(1.0, max_abs(m)))
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = _pivot_row(m, c, r, exact, eps)
        if p is None:
            if not exact:
                for rr in range(r, rows):
                    m[rr][c] = 0
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c] if not exact else _exact_inverse(m[r][c])
        m[r] = [x * inv for x in m[r]]
        m[r][c] = 1
        for rr in range(rows):
            if rr != r:
                f = m[rr][c]
                if f != 0:
                    m[rr] = [x - f * y for x, y in zip(m[rr], m[r])]
                    m[rr][c] = 0
        pivots.append(c)
        r += 1
    return m, pivots


def _exact_inverse(x):
    if isinstance(x, int):
        return Fraction(1, x)
    if isinstance(x, Fraction):
        return 1 / x
    return x.inverse()


def rank(a: Sequence[Sequence], tol: float = DEFAULT_TOL, scale: float | None = None) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a, tol, scale)[1])


def nullspace(a: Sequence[Sequence], tol: float = DEFAULT_TOL, scale: float | None = None) -> Matrix:
    """Basis of {v : a v = 0}, one vector per free column (lexicographic pivoting)."""
    cols = len(a[0])
    m, pivots = rref(a, tol, scale)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def det(a: Sequence[Sequence]):
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    m = copy(a)
    exact = all_exact(m)
    result = 1
    for c in range(n):
        p = _pivot_row(m, c, c, exact, 0.0)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        piv = m[c][c]
        result = result * piv
        inv = _exact_inverse(piv) if exact else 1 / piv
        for r in range(c + 1, n):
            f = m[r][c]
            if f != 0:
                f = f * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return result


def solve(a: Sequence[Sequence], b: Sequence, tol: float = DEFAULT_TOL) -> list:
    """Solve the square system a x = b; raises SingularMatrixError."""
    n = len(a)
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    scale = max(1.0, max_abs(a)) if not all_exact(a) else None
    m, pivots = rref(aug, tol, scale)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise SingularMatrixError("singular linear system")
    return [m[i][n] for i in range(n)]


def lstsq_consistent(a: Sequence[Sequence], b: Sequence, tol: float = DEFAULT_TOL) -> list:
    """Solve an overdetermined but consistent system with full column rank."""
    cols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    scale = max(1.0, max_abs(aug)) if not all_exact(aug) else None
    m, pivots = rref(aug, tol, scale)
    if cols in pivots:
        raise SingularMatrixError("inconsistent linear system")
    if pivots != list(range(cols)):
        raise SingularMatrixError("linear system is rank deficient")
    return [m[i][cols] for i in range(cols)]


def inverse(a: Sequence[Sequence], tol: float = DEFAULT_TOL) -> Matrix:
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    scale = max(1.0, max_abs(a)) if not all_exact(a) else None
    m, pivots = rref(aug, tol, scale)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in m]


def charpoly(a: Sequence[Sequence]) -> list:
    """Coefficients [1, c1, ..., cn] of det(t I - a) by Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [1]
    m = zeros(n)
    for k in range(1, n + 1):
        am = mat_mul(a, m) if k > 1 else zeros(n)
        mk = mat_add(am, mat_scale(coeffs[-1], identity(n)))
        amk = mat_mul(a, mk)
        ck = -trace(amk) / k if not all_exact(amk) else -Fraction(1, k) * trace(amk)
        coeffs.append(ck)
        m = mk
    return coeffs


def signature(h: Sequence[Sequence], tol: float = DEFAULT_TOL) -> tuple:
    """(positive, negative, zero) eigenvalue counts of a real symmetric matrix.

    Descartes' rule of signs is exact for the real-rooted characteristic polynomial.
    """
    n = len(h)
    for i in range(n):
        for j in range(i):
            if not is_zero(h[i][j] - h[j][i], tol):
                raise ValueError("matrix is not symmetric")
    coeffs = charpoly(h)  # t^n + c1 t^(n-1) + ... + cn
    exact = all_exact(h)
    scale = max(1.0, max_abs(h))

    def nz(c, k):
        return c != 0 if exact else abs(c) > tol * scale ** k

    cleaned = [(simplify(c) if exact else _real(c)) if nz(c, k) else 0 for k, c in enumerate(coeffs)]
    zero_mult = 0
    for c in reversed(cleaned):
        if c == 0:
            zero_mult += 1
        else:
            break
    core = cleaned[: n + 1 - zero_mult]
    pos = _sign_changes(core)
    neg = _sign_changes([c * (-1) ** (len(core) - 1 - k) for k, c in enumerate(core)])
    return pos, neg, zero_mult


def _real(c):
    return c.real if isinstance(c, complex) else c


def _sign_changes(coeffs) -> int:
    signs = [1 if c > 0 else -1 for c in coeffs if c != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


# 2x2 helpers used by the (1,1)-form matrix formalism and consimilarity.

def det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def adj2(m) -> Matrix:
    """Adjugate (transpose of the cofactor matrix): m @ adj2(m) = det2(m) I."""
    return [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]


def inv2(m) -> Matrix:
    d = det2(m)
    if d == 0 or (not is_exact(d) and abs(d) < 1e-300):
        raise SingularMatrixError("2x2 matrix is singular")
    inv = _exact_inverse(d) if is_exact(d) else 1 / d
    return mat_scale(inv, adj2(m))
