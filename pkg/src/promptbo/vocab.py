"""Candidate prompt vocabulary: loading from disk and rendering index
sequences as prompt text.

File format: UTF-8 text, one candidate (a token or an n-gram already
rendered as a string) per line; line k becomes index k.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence


class VocabularyError(ValueError):
    pass


@dataclass(frozen=True)
class Vocabulary:
    entries: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __post_init__(self):
        if len(self.entries) < 2:
            raise VocabularyError(f"vocabulary needs at least 2 entries, got {len(self.entries)}")
        for i, e in enumerate(self.entries):
            if not e:
                raise VocabularyError(f"empty entry at index {i}")


def load_vocabulary(path) -> Vocabulary:
    """Read a one-candidate-per-line vocabulary file.

    A single trailing newline is tolerated; empty lines elsewhere are
    rejected with their 1-based line number.
    """
    p = Path(path)
    if not p.is_file():
        raise VocabularyError(f"vocabulary file not found: {p}")
    try:
        text = p.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise VocabularyError(f"vocabulary file is not valid UTF-8: {p}") from exc
    if text.endswith("\n"):
        text = text[:-1]
    if not text:
        raise VocabularyError(f"vocabulary file is empty: {p}")
    lines = text.split("\n")
    for lineno, line in enumerate(lines, start=1):
        if not line:
            raise VocabularyError(f"empty entry at line {lineno} of {p}")
    return Vocabulary(entries=tuple(lines))


def render_prompt(vocab: Vocabulary, indices: Sequence[int]) -> str:
    """Join vocabulary entries for the given indices with single spaces."""
    parts = []
    for pos, idx in enumerate(indices):
        if not 0 <= idx < vocab.size:
            raise VocabularyError(
                f"index {idx} at position {pos} out of range for vocabulary of size {vocab.size}"
            )
        parts.append(vocab.entries[idx])
    return " ".join(parts)
