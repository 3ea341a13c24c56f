import numpy as np

from mushy_stefan.errors import DomainError


def fit_loglog_slope(pairs):
    """Least-squares slope of log(gap) against log(h) over (h, gap) pairs."""
    pairs = list(pairs)
    if len(pairs) < 3:
        raise DomainError(f"need at least 3 pairs, got {len(pairs)}")
    h = np.array([p[0] for p in pairs], dtype=float)
    gap = np.array([p[1] for p in pairs], dtype=float)
    if not (np.all(np.isfinite(h)) and np.all(np.isfinite(gap))):
        raise DomainError("pairs must be finite")
    if np.any(h <= 0) or np.any(gap <= 0):
        raise DomainError("pairs must be strictly positive")
    lh, lg = np.log(h), np.log(gap)
    if np.ptp(lh) == 0:
        raise DomainError("all h values coincide")
    slope, _ = np.polyfit(lh, lg, 1)
    return float(slope)
