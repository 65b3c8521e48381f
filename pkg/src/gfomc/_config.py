"""Size caps for the exponential parts of the library.

Every brute-force routine consults one of these limits before it starts
enumerating.  Setting ``GFOMC_MAX_VARS`` in the environment overrides all
variable caps at once; the coloring cap scales as ``2**GFOMC_MAX_VARS``.
"""

import os

# Formulas with at most this many variables are counted by a plain truth
# table; larger ones go through the component-splitting search.
ENUM_LIMIT = 10

_DEFAULTS = {
    "arithmetize": 22,
    "p2cnf": 24,
    "signatures": 20,
    "detd": 18,
    "fa": 14,
}

CCP_LIMIT = 10**6


def cap(name):
    """Return the variable cap called ``name``, honoring GFOMC_MAX_VARS."""
    override = os.environ.get("GFOMC_MAX_VARS")
    if override:
        return int(override)
    return _DEFAULTS[name]


def ccp_limit():
    override = os.environ.get("GFOMC_MAX_VARS")
    if override:
        return 2 ** int(override)
    return CCP_LIMIT


class CapExceeded(ValueError):
    """Raised when an input is too large for an exhaustive routine."""
