"""Configurable size caps for the enumeration-heavy operations.

Set-partition and permutation sweeps grow like Bell(n) and n!, so every
enumerating entry point checks an explicit cap and refuses loudly instead
of silently grinding.  Defaults can be overridden process-wide through
environment variables (read once at import time) or per call via the
``cap`` keyword that capped operations accept.

Environment variable          default  governs
---------------------------   -------  -----------------------------------------
FINFREE_PARTITION_CAP           12     set-partition enumeration (Bell growth)
FINFREE_NC_CAP                  12     non-crossing enumeration (Catalan growth)
FINFREE_SNC_CAP                  9     S_n sweeps for annular/genus permutations
FINFREE_PAIR_CAP                 8     partition-pair sums over P(n) x P(n)
FINFREE_ANNULAR_CAP              9     annular weight sums alpha_{r,s}
FINFREE_GENUS_CAP_K01            8     genus layers with k <= 1
FINFREE_GENUS_CAP_K2             7     genus layers with k >= 2
FINFREE_CUMULANT_CAP            16     finite free cumulant order
"""

import os

from .errors import SizeCapError


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise SizeCapError(f"environment variable {name}={raw!r} is not an integer") from None


PARTITION_CAP = _env_int("FINFREE_PARTITION_CAP", 12)
NC_CAP = _env_int("FINFREE_NC_CAP", 12)
SNC_CAP = _env_int("FINFREE_SNC_CAP", 9)
PAIR_CAP = _env_int("FINFREE_PAIR_CAP", 8)
ANNULAR_CAP = _env_int("FINFREE_ANNULAR_CAP", 9)
GENUS_CAP_K01 = _env_int("FINFREE_GENUS_CAP_K01", 8)
GENUS_CAP_K2 = _env_int("FINFREE_GENUS_CAP_K2", 7)
CUMULANT_CAP = _env_int("FINFREE_CUMULANT_CAP", 16)


def require(n: int, cap: int, what: str) -> None:
    """Raise SizeCapError when ``n`` exceeds ``cap``, naming both."""
    if n > cap:
        raise SizeCapError(f"{what}: size {n} exceeds the configured cap {cap}")


def defaults() -> dict:
    """Snapshot of the active cap values (echoed into CLI reports)."""
    return {
        "partition": PARTITION_CAP,
        "noncrossing": NC_CAP,
        "snc": SNC_CAP,
        "pair": PAIR_CAP,
        "annular": ANNULAR_CAP,
        "genus_k01": GENUS_CAP_K01,
        "genus_k2": GENUS_CAP_K2,
        "cumulant": CUMULANT_CAP,
    }
