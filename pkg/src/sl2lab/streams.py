"""Counter-based pseudorandom streams.

Every draw is a pure function of (seed, counter tuple), so orbit positions,
sample indices, and parallel workers can generate values in any order
without shared state. The mixer is the splitmix64 finalizer, applied once
per counter component.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_PHI = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_INV53 = 2.0 ** -53


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def bits(seed: int, *counters) -> np.ndarray:
    """64 hashed bits for (seed, counters); counters may be int arrays."""
    with np.errstate(over="ignore"):
        h = np.asarray(np.uint64(seed & _MASK64))
        h = _mix64(h + _PHI)
        for c in counters:
            c = np.asarray(c, dtype=np.uint64)
            h = _mix64(h + _PHI * (c + np.uint64(1)))
    return h


def uniform01(seed: int, *counters):
    """Uniform float64 in [0, 1), one per broadcast element of counters."""
    u = (bits(seed, *counters) >> np.uint64(11)) * _INV53
    return float(u) if np.ndim(u) == 0 else u


def coin(seed: int, *counters):
    """Fair 0/1 draw (top hash bit)."""
    b = bits(seed, *counters) >> np.uint64(63)
    return int(b) if np.ndim(b) == 0 else b.astype(np.int64)
