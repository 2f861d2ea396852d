"""Threshold calibration against human similar/dissimilar labels.

Treats the combined CodeBLEU score as a binary classifier (similar iff
score > θ) and sweeps a candidate grid, returning the θ maximizing F1 of the
similar class.  Ties break to the smallest θ, so calibration is deterministic.
"""

from __future__ import annotations

from ..errors import DataError

DEFAULT_GRID_START = 0.2
DEFAULT_GRID_STOP = 0.6
DEFAULT_GRID_STEP = 0.05


def default_grid(
    start: float = DEFAULT_GRID_START,
    stop: float = DEFAULT_GRID_STOP,
    step: float = DEFAULT_GRID_STEP,
) -> list[float]:
    if step <= 0 or stop < start:
        raise DataError(f"invalid calibration grid: start={start} stop={stop} step={step}")
    n = int(round((stop - start) / step))
    return [round(start + i * step, 10) for i in range(n + 1)]


def calibrate_theta(
    labeled_pairs: list[tuple[float, str]],
    candidates: list[float] | None = None,
) -> tuple[float, float]:
    """Return (θ*, F1*) over the candidate grid.

    ``labeled_pairs`` holds (combined CodeBLEU, label) with labels "similar"
    or "dissimilar"; at least two of each class are required.
    """
    if candidates is None:
        candidates = default_grid()
    if not candidates:
        raise DataError("empty candidate grid")
    for score, label in labeled_pairs:
        if label not in ("similar", "dissimilar"):
            raise DataError(f"bad label {label!r} (expected similar/dissimilar)")
        if not 0.0 <= score <= 1.0:
            raise DataError(f"score {score} outside [0,1]")
    n_similar = sum(1 for _, label in labeled_pairs if label == "similar")
    n_dissimilar = len(labeled_pairs) - n_similar
    if n_similar < 2 or n_dissimilar < 2:
        raise DataError(
            f"calibration needs >= 2 labels of each class, got "
            f"{n_similar} similar / {n_dissimilar} dissimilar"
        )

    best_theta = None
    best_f1 = -1.0
    for theta in sorted(candidates):
        tp = fp = fn = 0
        for score, label in labeled_pairs:
            predicted_similar = score > theta
            if predicted_similar and label == "similar":
                tp += 1
            elif predicted_similar:
                fp += 1
            elif label == "similar":
                fn += 1
        f1 = 2 * tp / (2 * tp + fp + fn) if tp else 0.0
        if f1 > best_f1:
            best_f1 = f1
            best_theta = theta
    return best_theta, best_f1
