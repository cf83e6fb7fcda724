import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from promptbo.metrics import accuracy, f1_binary


def brute_accuracy(preds, labels):
    return sum(1 for p, y in zip(preds, labels) if p == y) / len(labels)


def brute_f1(preds, labels, pos=1):
    tp = sum(1 for p, y in zip(preds, labels) if p == pos and y == pos)
    fp = sum(1 for p, y in zip(preds, labels) if p == pos and y != pos)
    fn = sum(1 for p, y in zip(preds, labels) if p != pos and y == pos)
    prec = tp / (tp + fp) if tp + fp else 0.0
    rec = tp / (tp + fn) if tp + fn else 0.0
    return 2 * prec * rec / (prec + rec) if prec + rec else 0.0


def test_accuracy_examples():
    assert accuracy([1, 2, 3], [1, 2, 3]) == 1.0
    assert accuracy([0, 0], [1, 2]) == 0.0
    assert accuracy([1, 0, 1, 1], [1, 1, 1, 0]) == 0.5


def test_accuracy_errors():
    with pytest.raises(ValueError, match="mismatch"):
        accuracy([1], [1, 2])
    with pytest.raises(ValueError, match="empty"):
        accuracy([], [])


def test_f1_examples():
    assert f1_binary([1, 0, 1], [1, 0, 1]) == 1.0
    assert f1_binary([0, 0], [0, 0]) == 0.0  # degenerate case convention
    assert f1_binary([1, 1, 0, 1], [1, 0, 0, 1]) == pytest.approx(0.8)


def test_f1_rejects_non_binary():
    with pytest.raises(ValueError, match="binary"):
        f1_binary([1, 2, 3], [1, 2, 3])


def test_f1_string_labels():
    assert f1_binary(["great", "great"], ["great", "terrible"], positive_label="great") == pytest.approx(2 / 3)


def test_oracle_agreement():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        n = int(rng.integers(1, 30))
        preds = rng.integers(0, 2, n).tolist()
        labels = rng.integers(0, 2, n).tolist()
        assert abs(accuracy(preds, labels) - brute_accuracy(preds, labels)) <= 1e-12
        assert abs(f1_binary(preds, labels) - brute_f1(preds, labels)) <= 1e-12


@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=1), st.randoms())
@settings(max_examples=100, deadline=None)
def test_permutation_invariance(pairs, rnd):
    preds, labels = zip(*pairs)
    shuffled = list(pairs)
    rnd.shuffle(shuffled)
    sp, sl = zip(*shuffled)
    assert accuracy(preds, labels) == accuracy(sp, sl)
    assert f1_binary(preds, labels) == f1_binary(sp, sl)


@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=1))
@settings(max_examples=100, deadline=None)
def test_accuracy_flip_identity(pairs):
    preds, labels = zip(*pairs)
    flipped = [1 - p for p in preds]
    assert accuracy(preds, labels) == pytest.approx(1 - accuracy(flipped, labels))


def test_f1_harmonic_mean_identity():
    rng = np.random.default_rng(4)
    for _ in range(200):
        n = int(rng.integers(2, 40))
        preds = rng.integers(0, 2, n).tolist()
        labels = rng.integers(0, 2, n).tolist()
        tp = sum(1 for p, y in zip(preds, labels) if p == y == 1)
        fp = sum(1 for p, y in zip(preds, labels) if p == 1 and y == 0)
        fn = sum(1 for p, y in zip(preds, labels) if p == 0 and y == 1)
        if tp + fp == 0 or tp + fn == 0 or tp == 0:
            continue
        prec, rec = tp / (tp + fp), tp / (tp + fn)
        assert abs(f1_binary(preds, labels) - 2 / (1 / prec + 1 / rec)) <= 1e-12
