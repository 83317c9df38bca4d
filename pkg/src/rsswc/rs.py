"""Reed-Solomon codes in evaluation form with a nested parity-check family.

The (n, k) code over GF(q) has n = q - 1 and parity-check entries
H[i][j] = (alpha^i)^(j-1) for i = 1..n-k, j = 1..n.  Because the r-row
matrix is always the top submatrix of any taller one, the syndrome of a
block can be extended row by row without recomputing the prefix, which is
what makes the rate-adaptive schemes work.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import GF


@dataclass(frozen=True)
class Syndrome:
    """Inner products of a block with the first `rows` parity-check rows."""
    rows: int
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != self.rows:
            raise ValueError("syndrome length does not match its row count")


class RsCode:
    """An (n, k) Reed-Solomon code over a given field, n = q - 1.

    `k` is the nominal dimension; operations that take an explicit row
    count r work at the effective dimension k' = n - r.
    """

    def __init__(self, field: GF, k: int):
        self.field = field
        self.n = field.q - 1
        if not 1 <= k < self.n:
            raise ValueError(f"need 1 <= k < n = {self.n}, got k={k}")
        self.k = k
        # log of H[i][j] = i*(j-1) mod (q-1); rows for i = 1..n-1.
        self._hlog = None

    def _h_log(self) -> np.ndarray:
        if self._hlog is None:
            n1 = self.field.q - 1
            i = np.arange(1, self.n, dtype=np.int64)[:, None]
            j = np.arange(self.n, dtype=np.int64)[None, :]
            self._hlog = (i * j) % n1
        return self._hlog

    def eval_points(self) -> np.ndarray:
        """The evaluation points 1, alpha, ..., alpha^(n-1)."""
        return self.field.exp_table[np.arange(self.n)]

    def __repr__(self):
        return f"RsCode(n={self.n}, k={self.k}, GF(2^{self.field.m}))"


def parity_check_matrix(code: RsCode, r: int) -> np.ndarray:
    """First r rows of the parity check family, shape (r, n)."""
    if not 1 <= r <= code.n - 1:
        raise ValueError(f"row count r={r} out of range [1, {code.n - 1}]")
    return code.field.exp_table[code._h_log()[:r]]


def encode_eval(code: RsCode, message) -> np.ndarray:
    """Evaluate the degree-(k-1) message polynomial at all n points."""
    message = np.asarray(message, dtype=np.int64)
    if len(message) != code.k:
        raise ValueError(f"message length {len(message)} != k = {code.k}")
    return code.field.poly_eval_arr(message, code.eval_points())


def syndrome(code: RsCode, y, r: int) -> Syndrome:
    """s = H y using the first r parity rows."""
    if not 1 <= r <= code.n - 1:
        raise ValueError(f"row count r={r} out of range [1, {code.n - 1}]")
    y = np.asarray(y, dtype=np.int64)
    if len(y) != code.n:
        raise ValueError(f"block length {len(y)} != n = {code.n}")
    return Syndrome(r, _syndrome_rows(code, y, 0, r))


def _syndrome_rows(code: RsCode, y: np.ndarray, row_lo: int, row_hi: int) -> np.ndarray:
    """Inner products of y with parity rows row_lo..row_hi-1 (0-based)."""
    field = code.field
    nz = np.nonzero(y)[0]
    if len(nz) == 0:
        return np.zeros(row_hi - row_lo, dtype=np.int64)
    logs = field.log_table[y[nz]]
    terms = field.exp_table[code._h_log()[row_lo:row_hi, nz] + logs[None, :]]
    return np.bitwise_xor.reduce(terms, axis=1)


def extend_syndrome(code: RsCode, y, s_old: Syndrome, r_new: int) -> Syndrome:
    """Append the inner products for rows s_old.rows+1 .. r_new."""
    if r_new < s_old.rows:
        raise ValueError(f"cannot shrink a syndrome from {s_old.rows} to {r_new} rows")
    if r_new == s_old.rows:
        return s_old
    if r_new > code.n - 1:
        raise ValueError(f"row count r={r_new} out of range [1, {code.n - 1}]")
    y = np.asarray(y, dtype=np.int64)
    extra = _syndrome_rows(code, y, s_old.rows, r_new)
    return Syndrome(r_new, np.concatenate([s_old.values, extra]))


def solve_linear(field: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve the square system a x = b over the field by Gaussian elimination."""
    a = np.array(a, dtype=np.int64)
    b = np.array(b, dtype=np.int64)
    r = len(b)
    for col in range(r):
        piv = col
        while piv < r and a[piv, col] == 0:
            piv += 1
        if piv == r:
            raise RuntimeError("singular linear system over GF(2^m)")
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            b[[col, piv]] = b[[piv, col]]
        inv = field.inv(int(a[col, col]))
        a[col] = field.scale_arr(inv, a[col])
        b[col] = field.mul(inv, int(b[col]))
        for row in range(r):
            f = int(a[row, col])
            if row != col and f:
                a[row] ^= field.scale_arr(f, a[col])
                b[row] ^= field.mul(f, int(b[col]))
    return b


def coset_representative(code: RsCode, s: Syndrome) -> np.ndarray:
    """A block z with H z = s whose last k' = n - rows positions are zero.

    The leading square subsystem is Vandermonde-structured, so the solution
    exists and is unique.
    """
    r = s.rows
    h = parity_check_matrix(code, r)
    z_head = solve_linear(code.field, h[:, :r], s.values)
    z = np.zeros(code.n, dtype=np.int64)
    z[:r] = z_head
    return z


def bm_unique_decode(code: RsCode, received) -> np.ndarray | None:
    """Errors-only Berlekamp-Massey decoding up to t = (n-k)//2 errors.

    Returns the corrected codeword, or None when no codeword within
    distance t is consistent with the syndromes.
    """
    field = code.field
    received = np.asarray(received, dtype=np.int64)
    if len(received) != code.n:
        raise ValueError(f"block length {len(received)} != n = {code.n}")
    t = (code.n - code.k) // 2
    if t == 0:
        full = _syndrome_rows(code, received, 0, code.n - code.k)
        return received.copy() if not full.any() else None

    synd = [int(v) for v in _syndrome_rows(code, received, 0, 2 * t)]
    if not any(synd):
        full = _syndrome_rows(code, received, 0, code.n - code.k)
        return received.copy() if not full.any() else None

    # Berlekamp-Massey for the error locator (characteristic 2, so +/- = XOR).
    lam = [1]
    prev = [1]
    deg = 0
    shift = 1
    prev_disc = 1
    for i in range(2 * t):
        disc = synd[i]
        for j in range(1, deg + 1):
            if j < len(lam):
                disc ^= field.mul(lam[j], synd[i - j])
        if disc == 0:
            shift += 1
            continue
        coef = field.div(disc, prev_disc)
        update = [0] * shift + [field.mul(coef, c) for c in prev]
        if 2 * deg <= i:
            lam, prev = _poly_xor(lam, update), lam
            deg = i + 1 - deg
            prev_disc = disc
            shift = 1
        else:
            lam = _poly_xor(lam, update)
            shift += 1

    # Locator roots -> error positions (position j has locator alpha^j).
    inv_locators = field.exp_table[(-np.arange(code.n)) % (field.q - 1)]
    vals = field.poly_eval_arr(lam, inv_locators)
    positions = np.nonzero(vals == 0)[0]
    if len(positions) != deg:
        return None
    if deg > 0:
        # Magnitudes from the first deg syndromes: sum_l e_l X_l^i = s_i.
        locs = field.exp_table[positions]
        vmat = np.zeros((deg, deg), dtype=np.int64)
        for i in range(deg):
            vmat[i] = [field.pow(int(x), i + 1) for x in locs]
        try:
            mags = solve_linear(field, vmat, np.array(synd[:deg], dtype=np.int64))
        except RuntimeError:
            return None
        if (mags == 0).any():
            return None
        corrected = received.copy()
        corrected[positions] ^= mags
    else:
        corrected = received.copy()

    full = _syndrome_rows(code, corrected, 0, code.n - code.k)
    if full.any():
        return None
    return corrected


def _poly_xor(a: list, b: list) -> list:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] ^= c
    for i, c in enumerate(b):
        out[i] ^= c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out
