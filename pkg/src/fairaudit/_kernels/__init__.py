"""Hot-loop kernels with backend selection at import time.

The compiled Cython extension is preferred; the numpy implementation is the
fallback. Both expose the same two functions and produce identical
assignments (the distance arithmetic is ordered identically), so clustering
results do not depend on which backend is active.
"""

from . import _numpy

try:
    from . import _lloyd as _impl

    BACKEND = "cython"
except ImportError:  # extension not built
    _impl = _numpy
    BACKEND = "numpy"

assign_labels = _impl.assign_labels
accumulate_clusters = _impl.accumulate_clusters

numpy_backend = _numpy

__all__ = ["BACKEND", "assign_labels", "accumulate_clusters", "numpy_backend"]
