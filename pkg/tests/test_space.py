import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from promptbo.space import PromptSpace, cardinality, decode, encode, sample_uniform


def test_encode_bounds():
    sp = PromptSpace(3, 5)
    pt = encode(sp, [0, 4, 2])
    assert pt[0] == 0.0
    assert pt[1] == 1.0
    assert pt[2] == pytest.approx(0.5)


def test_decode_rounding_half_up():
    sp = PromptSpace(1, 5)
    assert decode(sp, [0.0])[0] == 0
    assert decode(sp, [0.5])[0] == 2
    # 0.375 * 4 = 1.5, half rounds up
    assert decode(sp, [0.375])[0] == 2


def test_decode_clamps_out_of_band():
    sp = PromptSpace(2, 4)
    assert decode(sp, [-0.5, 1.7]).tolist() == [0, 3]


def test_decode_rejects_non_finite():
    sp = PromptSpace(1, 4)
    with pytest.raises(ValueError, match="non-finite"):
        decode(sp, [float("nan")])


def test_encode_rejects_out_of_range():
    sp = PromptSpace(2, 4)
    with pytest.raises(ValueError, match="out of range"):
        encode(sp, [0, 4])


@given(st.data())
@settings(max_examples=200, deadline=None)
def test_round_trip(data):
    vocab_size = data.draw(st.integers(2, 10**5))
    length = data.draw(st.integers(1, 64))
    sp = PromptSpace(length, vocab_size)
    prompt = np.array(data.draw(
        st.lists(st.integers(0, vocab_size - 1), min_size=length, max_size=length)
    ))
    assert np.array_equal(decode(sp, encode(sp, prompt)), prompt)


@given(st.integers(2, 50), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
@settings(max_examples=100, deadline=None)
def test_decode_monotone_per_dimension(vocab_size, a, b):
    lo, hi = sorted([a, b])
    sp = PromptSpace(1, vocab_size)
    assert decode(sp, [lo])[0] <= decode(sp, [hi])[0]


def test_sample_uniform_determinism():
    sp = PromptSpace(4, 7)
    a = sample_uniform(sp, np.random.default_rng(42))
    b = sample_uniform(sp, np.random.default_rng(42))
    assert np.array_equal(a, b)


def test_sample_uniform_mean():
    sp = PromptSpace(4, 2)
    rng = np.random.default_rng(0)
    draws = np.array([sample_uniform(sp, rng) for _ in range(10000)])
    assert np.all(np.abs(draws.mean(axis=0) - 0.5) < 0.02)


def test_sample_uniform_support_coverage():
    sp = PromptSpace(1, 2)
    rng = np.random.default_rng(1)
    seen = {int(sample_uniform(sp, rng)[0]) for _ in range(10000)}
    assert seen == {0, 1}


def test_cardinality():
    assert cardinality(PromptSpace(2, 4)) == 16
    assert cardinality(PromptSpace(1, 2)) == 2
    assert cardinality(PromptSpace(10, 117056)) == 117056**10


def test_space_validation():
    with pytest.raises(ValueError):
        PromptSpace(0, 4)
    with pytest.raises(ValueError):
        PromptSpace(3, 1)
