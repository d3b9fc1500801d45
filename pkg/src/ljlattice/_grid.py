import math

import numpy as np


def grid_axis(lo: float, hi: float, step: float) -> np.ndarray:
    """``lo, lo + step, ...`` up to ``hi`` (inclusive within rounding)."""
    if not step > 0:
        raise ValueError("grid step must be positive")
    if hi < lo:
        raise ValueError(f"empty range [{lo}, {hi}]")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)
