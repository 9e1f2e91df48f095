import importlib

import pytest

from facimean import _pykernels, kernels

KERNEL_API = [
    "comp_cumsum", "comp_cumsum_sq", "search_index", "search_indices",
    "sup_abs_attained", "step_integral", "sup_intersection",
    "weighted_partial", "path_sup_abs",
]


def _compiled():
    try:
        return importlib.import_module("facimean._ckernels")
    except ImportError:
        return None


BACKENDS = {"python": _pykernels, "cython": _compiled()}


@pytest.fixture(params=["python", "cython"])
def backend(request, monkeypatch):
    """Route every kernel call through one backend for the test's duration."""
    impl = BACKENDS[request.param]
    if impl is None:
        pytest.skip("compiled kernels not built")
    for name in KERNEL_API:
        monkeypatch.setattr(kernels, name, getattr(impl, name))
    return impl
