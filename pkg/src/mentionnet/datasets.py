"""Bundled synthetic data used for self-tests and CLI demos."""

from __future__ import annotations

import gzip
from importlib import resources
from pathlib import Path

import numpy as np

from .tailfit import sample_power_law

BUNDLED_SAMPLE = "synthetic_powerlaw_degrees.txt.gz"

# parameters of the bundled sample; regenerating with these reproduces it
BUNDLED_GAMMA = 2.3
BUNDLED_X_MIN = 11
BUNDLED_SIZE = 50_000
BUNDLED_SEED = 42


def bundled_sample_path() -> Path:
    """Filesystem path of the packaged synthetic power-law degree sample."""
    return Path(resources.files("mentionnet") / "data" / BUNDLED_SAMPLE)


def load_degrees(path) -> np.ndarray:
    """Load a degree file: one integer per line, # comments ignored."""
    opener = gzip.open if str(path).endswith(".gz") else open
    values = []
    with opener(path, "rt", encoding="utf-8") as handle:
        for line in handle:
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            values.append(int(stripped))
    return np.asarray(values, dtype=np.int64)


def generate_bundled_sample(path=None) -> Path:
    """Regenerate the bundled sample deterministically (dev utility)."""
    target = Path(path) if path else bundled_sample_path()
    samples = sample_power_law(
        BUNDLED_GAMMA, BUNDLED_X_MIN, BUNDLED_SIZE, rng=BUNDLED_SEED
    )
    with gzip.open(target, "wt", encoding="utf-8", newline="\n") as handle:
        for value in samples:
            handle.write(f"{value}\n")
    return target
