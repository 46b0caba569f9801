"""Backend selection for the hot kernels.

The compiled extension is preferred; ``SUBWORDKIT_PURE=1`` forces the
pure-Python implementation.
"""

import os

from subwordkit import _pyfallback

BACKEND = "python"

if os.environ.get("SUBWORDKIT_PURE", "") not in ("", "0"):
    from subwordkit._pyfallback import lcs_length, levenshtein, merge_pair
else:
    try:
        from subwordkit._core import lcs_length, levenshtein, merge_pair

        BACKEND = "cython"
    except ImportError:  # extension not built
        from subwordkit._pyfallback import lcs_length, levenshtein, merge_pair


def backends():
    """Map of available backend name to its kernel module."""
    found = {"python": _pyfallback}
    try:
        from subwordkit import _core
    except ImportError:
        pass
    else:
        found["cython"] = _core
    return found


__all__ = ["BACKEND", "backends", "lcs_length", "levenshtein", "merge_pair"]
