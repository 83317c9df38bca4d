"""Algebraic soft-decision list decoding machinery.

Pipeline pieces: reliability -> multiplicity matrix (floor rule), cost and
score bookkeeping, the weighted-degree threshold, bivariate interpolation
(Koetter's iterative construction), factorization of Y-linear factors
(Roth-Ruckenstein), and maximum-likelihood candidate selection.

Reliability and multiplicity matrices are plain (q, n) numpy arrays; row
index i is the field element i under the package-wide integer ordering, so
m_j(beta) is simply M[beta, j].
"""

from __future__ import annotations

import math

import numpy as np

from .gf import GF
from .rs import RsCode

_COLUMN_SUM_TOL = 1e-9


def validate_reliability(pi: np.ndarray) -> np.ndarray:
    """Check that pi is column-stochastic within 1e-9. Returns pi."""
    pi = np.asarray(pi, dtype=np.float64)
    if pi.ndim != 2:
        raise ValueError("reliability matrix must be 2-D")
    if (pi < 0).any() or (pi > 1).any():
        raise ValueError("reliability entries must lie in [0, 1]")
    sums = pi.sum(axis=0)
    if np.abs(sums - 1.0).max() > _COLUMN_SUM_TOL:
        raise ValueError("reliability columns must each sum to 1")
    return pi


def multiplicity_assign(pi: np.ndarray, lam: float) -> np.ndarray:
    """M = floor(lam * pi), elementwise."""
    if lam <= 0:
        raise ValueError("lambda must be positive")
    pi = validate_reliability(pi)
    mult = np.floor(lam * pi).astype(np.int64)
    if not mult.any():
        raise ValueError("all multiplicities are zero; lambda too small for this reliability")
    return mult


def cost(mult: np.ndarray) -> int:
    """C(M) = 1/2 sum m_ij (m_ij + 1), the number of interpolation constraints."""
    m = np.asarray(mult, dtype=np.int64)
    return int((m * (m + 1)).sum() // 2)


def score(mult: np.ndarray, block) -> int:
    """S_M(v) = sum_j m_j(v_j)."""
    block = np.asarray(block, dtype=np.int64)
    return int(mult[block, np.arange(mult.shape[1])].sum())


def monomial_count(delta: int, v: int) -> int:
    """Number of pairs (a, b) >= 0 with a + v*b <= delta."""
    if delta < 0:
        return 0
    bmax = delta // v
    return (bmax + 1) * (delta + 1) - v * bmax * (bmax + 1) // 2


def delta_threshold(v: int, c: int) -> int:
    """Least delta with monomial_count(delta, v) > c."""
    if v < 1:
        raise ValueError("weighted-degree parameter must be >= 1")
    if c < 0:
        raise ValueError("cost must be nonnegative")
    hi = 1
    while monomial_count(hi, v) <= c:
        hi *= 2
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if monomial_count(mid, v) > c:
            hi = mid
        else:
            lo = mid + 1
    return lo


class BivariatePoly:
    """Bivariate polynomial over GF(2^m) stored as X-coefficient rows per Y-degree.

    `rows[b][a]` is the coefficient of X^a Y^b; `v` is the Y-weight of the
    (1, v)-weighted degree.
    """

    def __init__(self, field: GF, rows, v: int):
        self.field = field
        self.v = v
        trimmed = []
        for row in rows:
            row = np.asarray(row, dtype=np.int64)
            nz = np.nonzero(row)[0]
            trimmed.append(row[:nz[-1] + 1] if len(nz) else np.zeros(0, dtype=np.int64))
        while trimmed and len(trimmed[-1]) == 0:
            trimmed.pop()
        self.rows = trimmed

    def is_zero(self) -> bool:
        return not self.rows

    def y_degree(self) -> int:
        return len(self.rows) - 1

    def coefficient(self, a: int, b: int) -> int:
        if b >= len(self.rows) or a >= len(self.rows[b]):
            return 0
        return int(self.rows[b][a])

    def coefficients(self) -> dict:
        """Sparse map (a, b) -> nonzero coefficient."""
        out = {}
        for b, row in enumerate(self.rows):
            for a in np.nonzero(row)[0]:
                out[(int(a), b)] = int(row[a])
        return out

    def weighted_degree(self) -> int:
        if self.is_zero():
            raise ValueError("weighted degree of the zero polynomial")
        degs = []
        for b, row in enumerate(self.rows):
            nz = np.nonzero(row)[0]
            if len(nz):
                degs.append(int(nz[-1]) + self.v * b)
        return max(degs)

    def evaluate(self, x: int, y: int) -> int:
        field = self.field
        acc = 0
        yp = 1
        for row in self.rows:
            acc ^= field.mul(field.poly_eval(row, x), yp)
            yp = field.mul(yp, y)
        return acc


def _binom_mask(length: int, r: int) -> np.ndarray:
    """Indices a in [0, length) with C(a, r) odd (Lucas: a & r == r)."""
    a = np.arange(length, dtype=np.int64)
    return np.nonzero((a & r) == r)[0]


class _LadderPoly:
    """Interpolation workspace polynomial with a tracked leading monomial."""

    __slots__ = ("rows", "lead_a", "lead_b")

    def __init__(self, n_rows: int, cap: int, b: int):
        self.rows = np.zeros((n_rows, cap), dtype=np.int64)
        self.rows[b, 0] = 1
        self.lead_a = 0
        self.lead_b = b

    def order_key(self, v: int):
        # (1, v)-weighted degree, ties broken by higher Y-degree.
        return (self.lead_a + v * self.lead_b, self.lead_b)


def interpolate(mult: np.ndarray, code: RsCode, k: int | None = None) -> BivariatePoly:
    """Minimal-weighted-degree nonzero polynomial through all (point, symbol)
    pairs with their multiplicities (all Hasse derivatives of total order
    below m_ij vanish at (alpha^(j-1), gamma_i)).
    """
    field = code.field
    mult = np.asarray(mult, dtype=np.int64)
    if mult.shape != (field.q, code.n):
        raise ValueError(f"multiplicity matrix must be shaped ({field.q}, {code.n})")
    if (mult < 0).any():
        raise ValueError("multiplicities must be nonnegative")
    if not mult.any():
        raise ValueError("multiplicity matrix has no positive entry")
    k_eff = code.k if k is None else k
    if k_eff < 2:
        raise ValueError("interpolation needs effective dimension k >= 2")
    v = k_eff - 1

    delta = delta_threshold(v, cost(mult))
    ell = max(1, delta // v)
    cap = 16
    ladder = [_LadderPoly(ell + 1, cap, b) for b in range(ell + 1)]
    points = code.eval_points()
    brange = np.arange(ell + 1, dtype=np.int64)

    for j in range(code.n):
        x0 = int(points[j])
        logx = int(field.log_table[x0])
        col = mult[:, j]
        for gamma in np.nonzero(col)[0]:
            y0 = int(gamma)
            m = int(col[gamma])
            for total in range(m):
                for r in range(total + 1):
                    s = total - r
                    ladder, cap = _enforce(field, ladder, cap, v, x0, logx, y0, r, s, brange)

    best = min(ladder, key=lambda g: g.order_key(v))
    return BivariatePoly(field, list(best.rows), v)


def _enforce(field, ladder, cap, v, x0, logx, y0, r, s, brange):
    """One Koetter update: kill the (r, s) Hasse discrepancy at (x0, y0)."""
    asel = _binom_mask(cap, r)
    px = field.exp_table[(logx * (asel - r)) % (field.q - 1)] if x0 else None
    bsel = np.nonzero((brange & s) == s)[0]
    ypow = [field.pow(y0, int(b) - s) for b in bsel]

    discs = []
    for g in ladder:
        sub = g.rows[:, asel]
        if x0:
            terms = field.mul_arr(sub, px[None, :])
        else:
            # x0 = 0 never happens for RS points but keep the general form
            terms = np.where(asel[None, :] == r, sub, 0)
        inner = np.bitwise_xor.reduce(terms, axis=1) if terms.shape[1] else np.zeros(len(brange), dtype=np.int64)
        d = 0
        for yp, b in zip(ypow, bsel):
            d ^= field.mul(int(inner[b]), yp)
        discs.append(d)

    nz = [i for i, d in enumerate(discs) if d]
    if not nz:
        return ladder, cap
    piv = min(nz, key=lambda i: ladder[i].order_key(v))
    prows = ladder[piv].rows
    dp = discs[piv]
    for i in nz:
        if i != piv:
            coef = field.div(discs[i], dp)
            ladder[i].rows ^= field.scale_arr(coef, prows)
    # pivot <- (X - x0) * pivot
    if ladder[piv].lead_a + 1 >= cap:
        cap *= 2
        for g in ladder:
            grown = np.zeros((g.rows.shape[0], cap), dtype=np.int64)
            grown[:, :g.rows.shape[1]] = g.rows
            g.rows = grown
        prows = ladder[piv].rows
    shifted = np.zeros_like(prows)
    shifted[:, 1:] = prows[:, :-1]
    ladder[piv].rows = shifted ^ field.scale_arr(x0, prows)
    ladder[piv].lead_a += 1
    return ladder, cap


_MAX_FACTOR_NODES = 200_000


def factor_candidates(q_poly: BivariatePoly, k: int) -> list:
    """All message polynomials f with deg f <= k-1 and (Y - f(X)) | Q.

    Returned as int64 coefficient arrays of length k (ascending powers),
    sorted lexicographically.
    """
    if q_poly.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    field = q_poly.field
    width = max((len(row) for row in q_poly.rows), default=1)
    rows0 = np.zeros((len(q_poly.rows), max(width, 1)), dtype=np.int64)
    for b, row in enumerate(q_poly.rows):
        rows0[b, :len(row)] = row

    elements = np.arange(field.q, dtype=np.int64)
    seen = set()
    stack = [(rows0, 0, ())]
    nodes = 0
    while stack:
        rows, level, prefix = stack.pop()
        nodes += 1
        if nodes > _MAX_FACTOR_NODES:
            raise RuntimeError("factorization search exceeded its node budget")
        rows = _strip_x(rows)
        ypoly = rows[:, 0]
        vals = field.poly_eval_arr(ypoly, elements)
        for y0 in elements[vals == 0]:
            cand = prefix + (int(y0),)
            if level == k - 1:
                seen.add(cand)
            else:
                stack.append((_shift_substitute(field, rows, int(y0)), level + 1, cand))

    out = []
    for cand in sorted(seen):
        if _divides(field, q_poly.rows, cand):
            out.append(np.array(cand, dtype=np.int64))
    return out


def _strip_x(rows: np.ndarray) -> np.ndarray:
    """Divide out the largest power of X common to all rows."""
    nz = np.nonzero(rows.any(axis=0))[0]
    e = int(nz[0])
    if e == 0:
        return rows
    out = np.zeros_like(rows)
    out[:, :rows.shape[1] - e] = rows[:, e:]
    return out


def _shift_substitute(field: GF, rows: np.ndarray, y0: int) -> np.ndarray:
    """Q(X, X*Y + y0) on the row representation."""
    nb, width = rows.shape
    out = np.zeros((nb, width + nb), dtype=np.int64)
    for s in range(nb):
        acc = np.zeros(width, dtype=np.int64)
        for b in range(s, nb):
            if (b & s) == s:
                acc ^= field.scale_arr(field.pow(y0, b - s), rows[b])
        out[s, s:s + width] = acc
    return out


def _divides(field: GF, rows, coeffs) -> bool:
    """True when Q(X, f(X)) is identically zero."""
    f = np.array(coeffs, dtype=np.int64)
    nz = np.nonzero(f)[0]
    f = f[:nz[-1] + 1] if len(nz) else np.zeros(1, dtype=np.int64)
    acc = np.zeros(1, dtype=np.int64)
    fpow = np.ones(1, dtype=np.int64)
    for b, row in enumerate(rows):
        if b:
            fpow = field.poly_mul(fpow, f)
        if len(row) and row.any():
            term = field.poly_mul(row, fpow)
            if len(term) > len(acc):
                term[:len(acc)] ^= acc
                acc = term
            else:
                acc[:len(term)] ^= term
    return not acc.any()


def ml_select(candidates, pi: np.ndarray):
    """The candidate block maximizing the column-product likelihood under pi.

    Exact ties go to the lexicographically smallest block; an empty list
    returns None.
    """
    best = None
    best_ll = None
    cols = np.arange(pi.shape[1])
    for cand in candidates:
        cand = np.asarray(cand, dtype=np.int64)
        p = pi[cand, cols]
        ll = -math.inf if (p == 0).any() else float(np.log(p).sum())
        if best is None or ll > best_ll or (ll == best_ll and tuple(cand) < tuple(best)):
            best, best_ll = cand, ll
    return best
