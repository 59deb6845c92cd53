import math
import os

DEFAULT_TOL = 1e-12


def default_tol():
    """Comparison tolerance; ``DTOP_TOL`` overrides the 1e-12 default."""
    raw = os.environ.get("DTOP_TOL")
    if not raw:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        tol = math.nan
    if not (tol >= 0.0 and math.isfinite(tol)):
        raise ValueError(f"DTOP_TOL must be a non-negative number, got {raw!r}")
    return tol
