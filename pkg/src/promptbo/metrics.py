"""Classification metrics for the shipped tasks: accuracy and binary F1."""

from __future__ import annotations

from typing import Sequence


def _check(predictions: Sequence, labels: Sequence):
    if len(predictions) != len(labels):
        raise ValueError(f"length mismatch: {len(predictions)} predictions vs {len(labels)} labels")
    if len(labels) == 0:
        raise ValueError("empty input")


def accuracy(predictions: Sequence, labels: Sequence) -> float:
    _check(predictions, labels)
    return sum(p == y for p, y in zip(predictions, labels)) / len(labels)


def f1_binary(predictions: Sequence, labels: Sequence, positive_label=1) -> float:
    """F1 = 2PR/(P+R); returns 0.0 by convention when P+R would be 0."""
    _check(predictions, labels)
    seen = set(predictions) | set(labels) | {positive_label}
    if len(seen) > 2:
        raise ValueError(f"labels are not binary: {sorted(map(repr, seen))}")
    tp = fp = fn = 0
    for p, y in zip(predictions, labels):
        if p == positive_label and y == positive_label:
            tp += 1
        elif p == positive_label:
            fp += 1
        elif y == positive_label:
            fn += 1
    if 2 * tp + fp + fn == 0:
        return 0.0
    return 2 * tp / (2 * tp + fp + fn)
