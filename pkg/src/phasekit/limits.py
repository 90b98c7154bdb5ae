"""Enumeration caps for the exponential-time oracles.

The caps keep worst-case work near 2**24 rank evaluations. Setting the
environment variable PHASEKIT_MAX_SUBSET_BITS replaces every cap with the
given bit count (expert use only).
"""

import os

ENV_VAR = "PHASEKIT_MAX_SUBSET_BITS"

RANK_CHECK_BITS = 24
CENSUS_BITS = 20
CONSISTENT_BITS = 20
SUBSET_SUM_BITS = 24
VERIFY_BITS = 16


def subset_bits_limit(default: int) -> int:
    """Cap for a 2**N enumeration; the env override wins when set."""
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return default
    return int(raw)
