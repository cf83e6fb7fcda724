"""Shipped task presets: vocabulary cardinality, prompt length, and metric
for the six GLUE classification tasks."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TaskPreset:
    name: str
    vocab_size: int
    prompt_length: int
    metric: str  # "acc" or "f1"


TASK_PRESETS = {
    "mnli": TaskPreset("mnli", 117056, 10, "acc"),
    "qqp": TaskPreset("qqp", 61571, 25, "f1"),
    "sst2": TaskPreset("sst2", 3747, 50, "acc"),
    "mrpc": TaskPreset("mrpc", 7940, 50, "f1"),
    "qnli": TaskPreset("qnli", 3163, 50, "acc"),
    "rte": TaskPreset("rte", 46992, 50, "acc"),
}


def get_preset(name: str) -> TaskPreset:
    key = name.lower().replace("-", "")
    if key not in TASK_PRESETS:
        raise KeyError(f"unknown task preset {name!r}; known: {sorted(TASK_PRESETS)}")
    return TASK_PRESETS[key]
