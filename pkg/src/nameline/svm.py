"""Linear binary SVM trained with sequential minimal optimization.

The trainer solves the usual soft-margin dual (box constraint C, one equality
constraint) by repeatedly optimizing a pair of dual variables analytically.
Pair selection is simplified relative to Platt's heuristic cascade: the outer
loop alternates full sweeps with sweeps over non-bound examples, and the
second index is drawn at random, falling back to a scan from a random offset
when the first draw makes no progress.  A sweep that changes nothing
certifies the KKT conditions within ``tol``, and training stops after
``max_passes`` consecutive such sweeps.

Decisions are ``sum(weights[i] for active i) - bias`` (the classic
``w.x - b`` threshold form); ``classify`` maps a zero decision value to the
negative class.
"""

from __future__ import annotations

import datetime as _dt
import json
import os
import random
from dataclasses import dataclass, field, asdict
from typing import Sequence

import numpy as np
from scipy import sparse

from .features import FeatureIndex, FeatureVector

MODEL_FORMAT_VERSION = 1
VALID_TAGS = ("D0", "D1", "D2", "All")

# relative minimum for an accepted alpha step; near-bound alphas snap to the
# exact bound below _BOUND_SNAP
_STEP_EPS = 1e-10
_BOUND_SNAP = 1e-10


class TrainingError(Exception):
    pass


class ModelFormatError(Exception):
    pass


@dataclass(frozen=True)
class TrainConfig:
    C: float = 1.0
    tol: float = 1e-3
    max_passes: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.C <= 0:
            raise ValueError("C must be positive")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_passes <= 0:
            raise ValueError("max_passes must be positive")


@dataclass
class Model:
    weights: dict[int, float]
    bias: float
    dimension: int
    index: FeatureIndex
    distance_tag: str
    config: TrainConfig
    metadata: dict
    # dual variables of the training run; diagnostic only, not serialized
    alphas: np.ndarray | None = field(default=None, repr=False, compare=False)


def decision(model: Model, vector: FeatureVector) -> float:
    weights = model.weights
    return sum(weights.get(i, 0.0) for i in vector.active_ids) - model.bias


def classify(model: Model, vector: FeatureVector) -> int:
    return 1 if decision(model, vector) > 0.0 else -1


def _examples_matrix(examples: Sequence[tuple[FeatureVector, int]]) -> tuple[sparse.csr_matrix, np.ndarray, int]:
    dims = {v.dimension for v, _ in examples}
    if len(dims) > 1:
        raise TrainingError(f"examples disagree on dimension: {sorted(dims)}")
    dimension = dims.pop() if dims else 0
    rows, cols = [], []
    for i, (vector, _) in enumerate(examples):
        rows.extend([i] * len(vector.active_ids))
        cols.extend(vector.active_ids)
    data = np.ones(len(rows), dtype=np.float64)
    matrix = sparse.csr_matrix(
        (data, (rows, cols)), shape=(len(examples), max(dimension, 1))
    )
    labels = np.array([y for _, y in examples], dtype=np.float64)
    return matrix, labels, dimension


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        moment = _dt.datetime.fromtimestamp(int(epoch), tz=_dt.timezone.utc)
    else:
        moment = _dt.datetime.now(tz=_dt.timezone.utc)
    return moment.strftime("%Y-%m-%dT%H:%M:%SZ")


class _SMO:
    def __init__(self, K: np.ndarray, y: np.ndarray, config: TrainConfig):
        self.K = K
        self.y = y
        self.n = len(y)
        self.C = float(config.C)
        self.tol = float(config.tol)
        self.alpha = np.zeros(self.n)
        self.ay = np.zeros(self.n)  # alpha * y, kept in sync
        self.b = 0.0
        self.rng = random.Random(config.seed)

    def error(self, i: int) -> float:
        return float(self.K[i] @ self.ay) + self.b - self.y[i]

    def raw_output(self, i: int) -> float:
        return float(self.K[i] @ self.ay)

    def take_step(self, i: int, j: int) -> bool:
        if i == j:
            return False
        alpha, y, K, C = self.alpha, self.y, self.K, self.C
        ai_old, aj_old = alpha[i], alpha[j]
        yi, yj = y[i], y[j]
        s = yi * yj
        Ei, Ej = self.error(i), self.error(j)
        if yi != yj:
            L = max(0.0, aj_old - ai_old)
            H = min(C, C + aj_old - ai_old)
        else:
            L = max(0.0, ai_old + aj_old - C)
            H = min(C, ai_old + aj_old)
        if L >= H:
            return False
        kii, kjj, kij = K[i, i], K[j, j], K[i, j]
        eta = kii + kjj - 2.0 * kij
        if eta > 0.0:
            aj_new = aj_old + yj * (Ei - Ej) / eta
            aj_new = min(H, max(L, aj_new))
        else:
            # identical kernel rows: the subproblem is linear in aj, so move
            # to whichever bound improves the dual objective
            gi, gj = Ei + yi - self.b, Ej + yj - self.b
            best, aj_new = _STEP_EPS, None
            for t in (L, H):
                d2 = t - aj_old
                d1 = -s * d2
                gain = (d1 + d2) - (d1 * yi * gi + d2 * yj * gj) \
                    - 0.5 * (d1 * d1 * kii + d2 * d2 * kjj + 2.0 * d1 * d2 * s * kij)
                if gain > best:
                    best, aj_new = gain, t
            if aj_new is None:
                return False
        if abs(aj_new - aj_old) < _STEP_EPS * (aj_new + aj_old + _STEP_EPS):
            return False
        ai_new = ai_old + s * (aj_old - aj_new)
        if ai_new < _BOUND_SNAP:
            ai_new = 0.0
        elif ai_new > C - _BOUND_SNAP:
            ai_new = C
        if aj_new < _BOUND_SNAP:
            aj_new = 0.0
        elif aj_new > C - _BOUND_SNAP:
            aj_new = C

        di, dj = ai_new - ai_old, aj_new - aj_old
        b1 = self.b - Ei - yi * di * kii - yj * dj * kij
        b2 = self.b - Ej - yi * di * kij - yj * dj * kjj
        if 0.0 < ai_new < C:
            self.b = b1
        elif 0.0 < aj_new < C:
            self.b = b2
        else:
            self.b = (b1 + b2) / 2.0
        alpha[i], alpha[j] = ai_new, aj_new
        self.ay[i], self.ay[j] = ai_new * yi, aj_new * yj
        return True

    def examine(self, i: int) -> bool:
        r = self.y[i] * self.error(i)
        violates = (r < -self.tol and self.alpha[i] < self.C) or \
                   (r > self.tol and self.alpha[i] > 0.0)
        if not violates:
            return False
        j = self.rng.randrange(self.n)
        if self.take_step(i, j):
            return True
        start = self.rng.randrange(self.n)
        for offset in range(self.n):
            k = (start + offset) % self.n
            if k != j and self.take_step(i, k):
                return True
        return False

    def solve(self, max_passes: int, hard_cap: int = 2000) -> None:
        examine_all = True
        quiet_passes = 0
        sweeps = 0
        while quiet_passes < max_passes and sweeps < hard_cap:
            if examine_all:
                indices = range(self.n)
            else:
                indices = [k for k in range(self.n) if 0.0 < self.alpha[k] < self.C]
            changed = 0
            for i in indices:
                if self.examine(i):
                    changed += 1
            sweeps += 1
            if examine_all:
                examine_all = False
            elif changed == 0:
                examine_all = True
            quiet_passes = quiet_passes + 1 if changed == 0 else 0


def train_smo(examples: Sequence[tuple[FeatureVector, int]], config: TrainConfig | None = None,
              index: FeatureIndex | None = None, distance_tag: str = "All") -> Model:
    """Train a linear SVM on (vector, label in {+1, -1}) pairs.

    Raises :class:`TrainingError` when the examples are empty or single-class.
    The returned model carries the dual variables in ``alphas`` so optimality
    can be audited.
    """
    config = config or TrainConfig()
    if distance_tag not in VALID_TAGS:
        raise ValueError(f"distance_tag must be one of {VALID_TAGS}")
    labels = {y for _, y in examples}
    if not examples:
        raise TrainingError("no training examples")
    if labels - {1, -1}:
        raise TrainingError(f"labels must be +1/-1, got {sorted(labels)}")
    if len(labels) < 2:
        raise TrainingError("training set is single-class")

    matrix, y, dimension = _examples_matrix(examples)
    K = (matrix @ matrix.T).toarray()
    solver = _SMO(K, y, config)
    solver.solve(config.max_passes)

    weight_vector = np.asarray(matrix.T @ solver.ay).ravel()
    weights = {int(i): float(w) for i, w in enumerate(weight_vector[:dimension]) if w != 0.0}
    n_pos = int(np.sum(y > 0))
    metadata = {
        "n_examples": len(examples),
        "n_positive": n_pos,
        "n_negative": len(examples) - n_pos,
        "trained_at": _timestamp(),
    }
    return Model(
        weights=weights,
        bias=-solver.b,
        dimension=dimension,
        index=index if index is not None else FeatureIndex.from_keys([]),
        distance_tag=distance_tag,
        config=config,
        metadata=metadata,
        alphas=solver.alpha,
    )


def dual_objective(alphas: np.ndarray, examples: Sequence[tuple[FeatureVector, int]]) -> float:
    """Value of the dual objective sum(a) - 1/2 sum a_i a_j y_i y_j K_ij."""
    matrix, y, _ = _examples_matrix(examples)
    K = (matrix @ matrix.T).toarray()
    ay = alphas * y
    return float(alphas.sum() - 0.5 * ay @ K @ ay)


def kkt_violations(model: Model, examples: Sequence[tuple[FeatureVector, int]],
                   tol: float | None = None) -> list[tuple[int, float, float]]:
    """KKT residual audit of a trained model against its training set.

    Returns ``(index, alpha, margin)`` for every example violating its KKT
    condition beyond ``tol``; an empty list certifies the solution.
    """
    if model.alphas is None:
        raise ValueError("model carries no dual variables")
    tol = model.config.tol if tol is None else tol
    C = model.config.C
    out = []
    for i, (vector, label) in enumerate(examples):
        margin = label * decision(model, vector)
        a = model.alphas[i]
        if a < -tol or a > C + tol:
            out.append((i, float(a), margin))
        elif a <= 0.0 and margin < 1.0 - tol:
            out.append((i, float(a), margin))
        elif a >= C and margin > 1.0 + tol:
            out.append((i, float(a), margin))
        elif 0.0 < a < C and abs(margin - 1.0) > tol:
            out.append((i, float(a), margin))
    return out


def _model_payload(model: Model) -> dict:
    return {
        "format_version": MODEL_FORMAT_VERSION,
        "distance_tag": model.distance_tag,
        "config": asdict(model.config),
        "features": model.index.keys_in_order(),
        "weights": [[i, model.weights[i]] for i in sorted(model.weights)],
        "bias": model.bias,
        "metadata": model.metadata,
    }


def serialize_model(model: Model) -> str:
    return json.dumps(_model_payload(model), ensure_ascii=False, separators=(",", ":")) + "\n"


def save_model(model: Model, destination) -> None:
    with open(destination, "w", encoding="utf-8") as fh:
        fh.write(serialize_model(model))


def _parse_model(payload: dict) -> Model:
    version = payload.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format version: {version!r}")
    try:
        index = FeatureIndex.from_keys(payload["features"], frozen=True)
        weights = {int(i): float(w) for i, w in payload["weights"]}
        model = Model(
            weights=weights,
            bias=float(payload["bias"]),
            dimension=len(index),
            index=index,
            distance_tag=payload["distance_tag"],
            config=TrainConfig(**payload["config"]),
            metadata=payload.get("metadata", {}),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"malformed model file: {exc}") from exc
    if model.distance_tag not in VALID_TAGS:
        raise ModelFormatError(f"unknown distance tag: {model.distance_tag!r}")
    return model


def load_model(source) -> Model:
    try:
        with open(source, encoding="utf-8") as fh:
            payload = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ModelFormatError("model file must contain a JSON object")
    return _parse_model(payload)
