"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
fallback. Set ``FACIMEAN_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

if os.environ.get("FACIMEAN_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = _impl.BACKEND

comp_cumsum = _impl.comp_cumsum
comp_cumsum_sq = _impl.comp_cumsum_sq
search_index = _impl.search_index
search_indices = _impl.search_indices
sup_abs_attained = _impl.sup_abs_attained
step_integral = _impl.step_integral
sup_intersection = _impl.sup_intersection
weighted_partial = _impl.weighted_partial
path_sup_abs = _impl.path_sup_abs
