"""Source correlation models: how the hidden block Y relates to the side
information X available at the decoder.

A model is a q x q column-stochastic conditional matrix, column j being
P(Y = . | X = j), with X uniform on the alphabet.  Supported families:
q-ary symmetric, sparse conditionals with a small dominant-entry vector
(diagonal or random placement), explicit matrices, and a mismatched
variant that moves the minor dominant entries to wrong locations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_COLUMN_SUM_TOL = 1e-9


@dataclass(frozen=True)
class SparseSpec:
    """Dominant-entry description of a sparse conditional pdf.

    `d` lists the dominant probabilities (each above `epsilon`); the other
    q - len(d) entries of every column share the residual mass equally and
    must fall below `epsilon`.
    """
    d: tuple
    epsilon: float = 0.0015
    form: str = "diagonal"
    seed: int = 0

    @property
    def s(self) -> int:
        return len(self.d)


class CorrelationModel:
    """Joint law of (X, Y): X uniform, Y | X given by a conditional matrix."""

    def __init__(self, q: int, conditional: np.ndarray, label: str,
                 sparse_spec: SparseSpec | None = None):
        conditional = np.asarray(conditional, dtype=np.float64)
        if conditional.shape != (q, q):
            raise ValueError(f"conditional matrix must be ({q}, {q})")
        if (conditional < 0).any():
            raise ValueError("conditional probabilities must be nonnegative")
        sums = conditional.sum(axis=0)
        if np.abs(sums - 1.0).max() > _COLUMN_SUM_TOL:
            raise ValueError("conditional columns must each sum to 1")
        self.q = q
        self.conditional = conditional
        self.label = label
        self.sparse_spec = sparse_spec
        self._cumulative = None

    def __repr__(self):
        return f"CorrelationModel({self.label})"

    def _cum(self) -> np.ndarray:
        if self._cumulative is None:
            cum = np.cumsum(self.conditional, axis=0)
            cum[-1, :] = 1.0
            self._cumulative = cum
        return self._cumulative


def build_qary_symmetric(q: int, p_a: float) -> CorrelationModel:
    """Y = X with probability p_a, otherwise uniform over the wrong symbols."""
    if not 0 < p_a <= 1:
        raise ValueError("agreement probability must lie in (0, 1]")
    cond = np.full((q, q), (1.0 - p_a) / (q - 1))
    np.fill_diagonal(cond, p_a)
    return CorrelationModel(q, cond, f"qary(q={q},pa={p_a:g})")


def build_explicit(q: int, conditional, label: str = "explicit") -> CorrelationModel:
    """Wrap a caller-supplied conditional matrix."""
    return CorrelationModel(q, conditional, label)


def build_sparse_conditional(q: int, spec: SparseSpec) -> CorrelationModel:
    """Sparse conditional with dominant entries `spec.d` in every column.

    Diagonal form puts the largest entry on the diagonal and the remaining
    ones on adjacent offsets with wraparound; random form draws one fixed
    placement per column from `spec.seed` at construction time.
    """
    d = np.asarray(spec.d, dtype=np.float64)
    s = len(d)
    if s >= q:
        raise ValueError("need fewer dominant entries than alphabet symbols")
    if (d <= 0).any():
        raise ValueError("dominant entries must be positive")
    total = float(d.sum())
    if total >= 1.0:
        raise ValueError("dominant entries must sum to less than 1")
    if (d <= spec.epsilon).any():
        raise ValueError("every dominant entry must exceed epsilon")
    residual = (1.0 - total) / (q - s)
    if residual >= spec.epsilon:
        raise ValueError("residual mass per entry must stay below epsilon")

    cond = np.full((q, q), residual)
    if spec.form == "diagonal":
        offsets = _diagonal_offsets(d)
        for off, value in offsets:
            idx = (np.arange(q) + off) % q
            cond[idx, np.arange(q)] = value
    elif spec.form == "random":
        rng = np.random.default_rng(spec.seed)
        for j in range(q):
            pos = rng.choice(q, size=s, replace=False)
            cond[pos, j] = d
    else:
        raise ValueError(f"unknown sparse form {spec.form!r}")
    label = f"sparse(q={q},d=[{','.join(f'{x:g}' for x in d)}],form={spec.form})"
    return CorrelationModel(q, cond, label, sparse_spec=spec)


def _diagonal_offsets(d: np.ndarray) -> list:
    """Offsets from the diagonal for each dominant entry.

    The largest entry anchors the diagonal; the remaining entries fill
    alternating adjacent offsets +1, -1, +2, -2, ...
    """
    imax = int(np.argmax(d))
    offsets = [(0, float(d[imax]))]
    side = []
    for i, value in enumerate(d):
        if i != imax:
            side.append(float(value))
    for rank, value in enumerate(side):
        step = rank // 2 + 1
        offsets.append((step if rank % 2 == 0 else -step, value))
    return offsets


def mismatch_pdf(truth: CorrelationModel) -> CorrelationModel:
    """Decoder-side pdf with the two minor dominant entries misplaced.

    The largest dominant entry of each column keeps its position; the two
    smaller ones move to offsets +3 and -3 from the diagonal.  Column entry
    multisets are unchanged, so the conditional entropy is too.
    """
    spec = truth.sparse_spec
    if spec is None or spec.s != 3:
        raise ValueError("mismatch requires a sparse model with exactly 3 dominant entries")
    q = truth.q
    d = np.asarray(spec.d, dtype=np.float64)
    imax = int(np.argmax(d))
    minor = [float(d[i]) for i in range(3) if i != imax]
    residual = (1.0 - float(d.sum())) / (q - 3)

    cond = np.full((q, q), residual)
    for j in range(q):
        peak = int(np.argmax(truth.conditional[:, j]))
        lo, hi = (j - 3) % q, (j + 3) % q
        if peak in (lo, hi):
            raise ValueError("dominant entry collides with the mismatch offsets")
        cond[peak, j] = float(d[imax])
        cond[hi, j] = minor[0]
        cond[lo, j] = minor[1]
    return CorrelationModel(q, cond, truth.label + "+mismatch", sparse_spec=spec)


def sample_pair(model: CorrelationModel, n: int, seed) -> tuple[np.ndarray, np.ndarray]:
    """Draw (x, y): x i.i.d. uniform, y_j from column x_j of the conditional."""
    if n < 1:
        raise ValueError("block length must be >= 1")
    rng = np.random.default_rng(seed)
    x = rng.integers(0, model.q, size=n, dtype=np.int64)
    u = rng.random(n)
    cum = model._cum()[:, x]
    y = (cum <= u[None, :]).sum(axis=0).astype(np.int64)
    return x, y


def conditional_entropy(model: CorrelationModel) -> float:
    """H(Y | X) in bits per symbol, with X uniform."""
    p = model.conditional
    terms = np.where(p > 0, -p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return float(terms.sum(axis=0).mean())


def reliability_from_side_info(model: CorrelationModel, x) -> np.ndarray:
    """(q, n) matrix whose column j is P(Y = . | X = x_j)."""
    x = np.asarray(x, dtype=np.int64)
    return model.conditional[:, x].copy()


def peak_factor(d) -> float:
    """max(d) / min(d) for a dominant-entry vector."""
    d = np.asarray(d, dtype=np.float64)
    if d.size == 0:
        raise ValueError("empty dominant vector")
    if (d <= 0).any():
        raise ValueError("dominant entries must be positive")
    return float(d.max() / d.min())
