"""Keyword embeddings: storage, similarity, GloVe fine-tuning.

Every keyword vector has exactly 768 components. Pre-trained vectors
load from the plain-text word-vector format (surface then numbers, one
record per line); keywords without a pre-trained vector get a small
seeded uniform-random vector so that every dictionary keyword is
expandable. Fine-tuning runs adaptive-gradient stochastic descent on the
weighted least-squares objective

    J = sum over entries of f(X_ab) (w_a . wt_b + c_a + ct_b - ln X_ab)^2
    f(x) = (x / x_max)^alpha  for x < x_max, else 1

over both orientations of every stored pair (diagonal once), and writes
back w + wt as the keyword's vector.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    InvalidParameterError,
    NoEmbeddingError,
    TrainingDivergedError,
)
from .index import CooccurrenceTable

log = logging.getLogger(__name__)

VECTOR_DIM = 768


@dataclass
class GloveConfig:
    x_max: float = 100.0
    alpha: float = 0.75
    learning_rate: float = 0.05
    epochs: int = 25
    dimension: int = VECTOR_DIM

    def validate(self) -> None:
        if self.x_max <= 0:
            raise InvalidParameterError("x_max must be positive")
        if not 0 < self.alpha <= 1:
            raise InvalidParameterError("alpha must be in (0, 1]")
        if self.learning_rate <= 0:
            raise InvalidParameterError("learning_rate must be positive")
        if self.epochs < 1:
            raise InvalidParameterError("epochs must be a positive integer")
        if self.dimension != VECTOR_DIM:
            raise InvalidParameterError(
                f"vector dimension is fixed at {VECTOR_DIM}")

    def to_payload(self) -> dict:
        return {
            "x_max": self.x_max,
            "alpha": self.alpha,
            "learning_rate": self.learning_rate,
            "epochs": self.epochs,
            "dimension": self.dimension,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "GloveConfig":
        return cls(
            x_max=float(payload["x_max"]),
            alpha=float(payload["alpha"]),
            learning_rate=float(payload["learning_rate"]),
            epochs=int(payload["epochs"]),
            dimension=int(payload.get("dimension", VECTOR_DIM)),
        )


class EmbeddingTable:
    """surface -> 768-dimensional float vector."""

    def __init__(self, dimension: int = VECTOR_DIM) -> None:
        self.dimension = dimension
        self._vectors: dict[str, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self._vectors)

    def __contains__(self, surface: str) -> bool:
        return surface in self._vectors

    def surfaces(self) -> list[str]:
        return sorted(self._vectors)

    def get(self, surface: str) -> np.ndarray | None:
        return self._vectors.get(surface)

    def set(self, surface: str, values: Sequence[float] | np.ndarray) -> None:
        vec = np.asarray(values, dtype=np.float64)
        if vec.shape != (self.dimension,):
            raise InvalidParameterError(
                f"vector for {surface!r} has {vec.size} components, "
                f"need {self.dimension}")
        if not np.all(np.isfinite(vec)):
            raise InvalidParameterError(
                f"vector for {surface!r} has non-finite components")
        self._vectors[surface] = vec

    def similarity(self, a: str, b: str, signed: bool = False) -> float:
        """rho(a, b): cosine with absolute value (default) or signed."""
        va = self._require(a)
        vb = self._require(b)
        cos = float(np.dot(va, vb) / (np.linalg.norm(va) * np.linalg.norm(vb)))
        return cos if signed else abs(cos)

    def _require(self, surface: str) -> np.ndarray:
        vec = self._vectors.get(surface)
        if vec is None:
            raise NoEmbeddingError(f"no embedding for keyword {surface!r}")
        if not np.any(vec):
            raise NoEmbeddingError(f"zero-norm embedding for {surface!r}")
        return vec

    def load_pretrained(self, lines: Iterable[str], keywords: Iterable[str],
                        normalizer: Callable[[str], str], seed: int) -> int:
        """Install vectors for known keywords; random-init the rest.

        A record's surface passes through the same normalization as
        document text before the dictionary lookup. Lines with the wrong
        component count are skipped with a warning. Returns the number of
        vectors taken from the stream.
        """
        wanted = set(keywords)
        loaded: set[str] = set()
        count = 0
        for lineno, line in enumerate(lines, start=1):
            parts = line.split()
            if not parts:
                continue
            surface, numbers = parts[0], parts[1:]
            if len(numbers) != self.dimension:
                log.warning(
                    "vector line %d: %d components, need %d; skipped",
                    lineno, len(numbers), self.dimension)
                continue
            key = normalizer(surface.lower())
            if key not in wanted:
                continue
            try:
                vec = np.array([float(x) for x in numbers], dtype=np.float64)
            except ValueError:
                log.warning("vector line %d: non-numeric component; skipped",
                            lineno)
                continue
            if not np.all(np.isfinite(vec)):
                log.warning("vector line %d: non-finite component; skipped",
                            lineno)
                continue
            self._vectors[key] = vec
            if key not in loaded:
                loaded.add(key)
                count += 1
        if count == 0:
            log.warning("no pre-trained vectors matched the dictionary; "
                        "all keywords randomly initialized")
        self.random_fill(sorted(wanted - loaded), seed)
        return count

    def random_fill(self, surfaces: Sequence[str], seed: int) -> int:
        """Seeded uniform init in [-0.5/dim, +0.5/dim] per component for
        the given surfaces (sorted iteration keeps this reproducible)."""
        rng = np.random.default_rng(seed)
        half = 0.5 / self.dimension
        filled = 0
        for surface in sorted(surfaces):
            self._vectors[surface] = rng.uniform(-half, half, self.dimension)
            filled += 1
        return filled

    # Persistence: the plain-text word-vector format, full float precision.

    def dump_lines(self) -> Iterable[str]:
        for surface in sorted(self._vectors):
            vec = self._vectors[surface]
            yield surface + " " + " ".join(repr(float(x)) for x in vec)

    @classmethod
    def from_lines(cls, lines: Iterable[str],
                   dimension: int = VECTOR_DIM) -> "EmbeddingTable":
        table = cls(dimension)
        for line in lines:
            parts = line.split()
            if not parts:
                continue
            table._vectors[parts[0]] = np.array(
                [float(x) for x in parts[1:]], dtype=np.float64)
        return table


def weighting(x: float, x_max: float, alpha: float) -> float:
    """GloVe weighting f(x); exactly 1 at and above the cutoff."""
    if x >= x_max:
        return 1.0
    return (x / x_max) ** alpha


def training_entries(cooc: CooccurrenceTable) -> tuple[list[str], list[tuple[int, int, float]]]:
    """Directed nonzero entries (both orientations; diagonal once) and
    the sorted keyword list indexing them."""
    keywords = sorted(cooc.keywords())
    slot = {k: i for i, k in enumerate(keywords)}
    entries: list[tuple[int, int, float]] = []
    for a, b, x in sorted(cooc.pairs()):
        if x <= 0:
            continue
        entries.append((slot[a], slot[b], x))
        if a != b:
            entries.append((slot[b], slot[a], x))
    return keywords, entries


def glove_loss(entries: Sequence[tuple[int, int, float]],
               w: np.ndarray, wt: np.ndarray,
               b: np.ndarray, bt: np.ndarray,
               x_max: float, alpha: float) -> float:
    if not entries:
        return 0.0
    ia = np.array([e[0] for e in entries], dtype=np.intp)
    ib = np.array([e[1] for e in entries], dtype=np.intp)
    x = np.array([e[2] for e in entries], dtype=np.float64)
    # Overflow to inf is fine here; the trainer treats non-finite loss
    # as the divergence signal.
    with np.errstate(over="ignore", invalid="ignore"):
        diff = np.einsum("ij,ij->i", w[ia], wt[ib]) + b[ia] + bt[ib] - np.log(x)
        f = np.minimum(1.0, (x / x_max) ** alpha)
        return float(np.sum(f * diff * diff))


def entry_gradients(ia: int, ib: int, x: float,
                    w: np.ndarray, wt: np.ndarray,
                    b: np.ndarray, bt: np.ndarray,
                    x_max: float, alpha: float
                    ) -> tuple[np.ndarray, np.ndarray, float, float]:
    """Analytic gradient of one entry's loss term with respect to
    (w_a, wt_b, c_a, ct_b)."""
    diff = float(np.dot(w[ia], wt[ib])) + b[ia] + bt[ib] - math.log(x)
    g = 2.0 * weighting(x, x_max, alpha) * diff
    return g * wt[ib], g * w[ia], g, g


@dataclass
class EpochLoss:
    epoch: int
    loss: float


def fine_tune(table: EmbeddingTable, cooc: CooccurrenceTable,
              config: GloveConfig, seed: int) -> list[EpochLoss]:
    """Adaptive-gradient descent over the co-occurrence entries.

    Only keywords present in the table are trained; each starts from
    half its current vector on both sides so w + wt reproduces it at
    step 0. On any non-finite epoch loss the table is left untouched and
    a diverged signal raised. Returns the post-epoch loss trajectory.
    """
    config.validate()
    if len(cooc) == 0:
        raise InvalidParameterError("co-occurrence table is empty")
    keywords, entries = training_entries(cooc)
    missing = [k for k in keywords if k not in table]
    if missing:
        raise NoEmbeddingError(
            f"{len(missing)} co-occurring keywords lack vectors "
            f"(first: {missing[0]!r}); load vectors before fine-tuning")

    dim = table.dimension
    n = len(keywords)
    w = np.empty((n, dim))
    for i, k in enumerate(keywords):
        w[i] = table.get(k) / 2.0
    wt = w.copy()
    b = np.zeros(n)
    bt = np.zeros(n)
    # AdaGrad accumulators start at one so the first step is bounded.
    gw = np.ones((n, dim))
    gwt = np.ones((n, dim))
    gb = np.ones(n)
    gbt = np.ones(n)

    lr = config.learning_rate
    x_max, alpha = config.x_max, config.alpha
    rng = np.random.default_rng(seed)
    report: list[EpochLoss] = []
    for epoch in range(1, config.epochs + 1):
        with np.errstate(over="ignore", invalid="ignore"):
            for idx in rng.permutation(len(entries)):
                ia, ib, x = entries[idx]
                grad_w, grad_wt, grad_b, grad_bt = entry_gradients(
                    ia, ib, x, w, wt, b, bt, x_max, alpha)
                w[ia] -= lr * grad_w / np.sqrt(gw[ia])
                gw[ia] += grad_w * grad_w
                wt[ib] -= lr * grad_wt / np.sqrt(gwt[ib])
                gwt[ib] += grad_wt * grad_wt
                b[ia] -= lr * grad_b / math.sqrt(gb[ia])
                gb[ia] += grad_b * grad_b
                bt[ib] -= lr * grad_bt / math.sqrt(gbt[ib])
                gbt[ib] += grad_bt * grad_bt
        loss = glove_loss(entries, w, wt, b, bt, x_max, alpha)
        if not math.isfinite(loss):
            raise TrainingDivergedError(
                f"non-finite loss at epoch {epoch}; vectors rolled back")
        report.append(EpochLoss(epoch=epoch, loss=loss))

    combined = w + wt
    for i, k in enumerate(keywords):
        table.set(k, combined[i])
    return report
