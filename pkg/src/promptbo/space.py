"""The discrete prompt search space and its continuous relaxation.

A prompt is a length-L sequence of token indices, each in [0, V). The
relaxation maps index i to the coordinate i / (V - 1), so the extreme
indices land exactly on the corners of the unit box; decoding rounds
back to the closest integer index, with halves rounded up.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PromptSpace:
    length: int
    vocab_size: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError(f"length must be >= 1, got {self.length}")
        if self.vocab_size < 2:
            raise ValueError(f"vocab_size must be >= 2, got {self.vocab_size}")

    def validate_prompt(self, indices) -> np.ndarray:
        arr = np.asarray(indices, dtype=np.int64)
        if arr.shape != (self.length,):
            raise ValueError(f"expected {self.length} indices, got shape {arr.shape}")
        if np.any(arr < 0) or np.any(arr >= self.vocab_size):
            bad = int(np.argmax((arr < 0) | (arr >= self.vocab_size)))
            raise ValueError(f"index {arr[bad]} at position {bad} out of range [0, {self.vocab_size})")
        return arr


def encode(space: PromptSpace, indices) -> np.ndarray:
    """Map token indices to coordinates in the closed unit box."""
    arr = space.validate_prompt(indices)
    return arr.astype(np.float64) / (space.vocab_size - 1)


def decode(space: PromptSpace, coords) -> np.ndarray:
    """Map unit-box coordinates back to token indices (half rounds up)."""
    arr = np.asarray(coords, dtype=np.float64)
    if arr.shape != (space.length,):
        raise ValueError(f"expected {space.length} coordinates, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("non-finite coordinate")
    scaled = np.clip(arr, 0.0, 1.0) * (space.vocab_size - 1)
    idx = np.floor(scaled + 0.5).astype(np.int64)
    return np.clip(idx, 0, space.vocab_size - 1)


def sample_uniform(space: PromptSpace, rng: np.random.Generator) -> np.ndarray:
    """Draw each index independently and uniformly over [0, V)."""
    return rng.integers(0, space.vocab_size, size=space.length, dtype=np.int64)


def cardinality(space: PromptSpace) -> int:
    """|V|^L, exact."""
    return space.vocab_size**space.length
