import os
import subprocess
import sys

import pytest

from opav import _backend, _pykernels
from opav.core import compositions

compiled = _backend.compiled_kernels
needs_ext = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


@needs_ext
def test_fixed_and_star_parity():
    for n in range(1, 8):
        for k in range(1, n + 1):
            for sizes in compositions(n, k):
                for rho in [(1,), (2, 1), (1, 2, 3), (2, 3, 1), (1, 3, 2, 4)]:
                    assert compiled.count_fixed(sizes, rho) == _pykernels.count_fixed(sizes, rho)
    for n in range(0, 7):
        for k in range(1, 5):
            for rho in [(1, 3, 2), (3, 2, 1)]:
                assert compiled.count_star(n, k, rho) == _pykernels.count_star(n, k, rho)
                assert compiled.count_words(k, n, rho) == _pykernels.count_words(k, n, rho)


@needs_ext
def test_points_contain_parity():
    import itertools

    for k in range(1, 5):
        for vec in itertools.product(range(k), repeat=5):
            pblk = sorted(vec)
            pval = [x + 1 for j in range(k) for x in range(5) if vec[x] == j]
            for rho in [(1, 2), (1, 3, 2), (2, 1, 3)]:
                assert compiled.points_contain(pblk, pval, rho) == _pykernels.points_contain(pblk, pval, rho)


@needs_ext
def test_scheme_engine_parity():
    a, b = compiled.SchemeEngine(), _pykernels.SchemeEngine()
    for n in range(1, 10):
        for k in range(1, n + 1):
            for sizes in compositions(n, k):
                assert a.count(sizes) == b.count(sizes), sizes
    assert a.cache_len() == b.cache_len()
    a.clear()
    assert a.cache_len() == 0


def test_uncached_engine_agrees():
    cached, bare = _pykernels.SchemeEngine(), _pykernels.SchemeEngine(use_cache=False)
    for sizes in [(2, 2, 2), (1, 3, 1, 2), (4, 1, 1)]:
        assert cached.count(sizes) == bare.count(sizes)
    assert bare.cache_len() == 0


def test_backend_switch():
    names = [m.NAME for m in _backend.available()]
    assert "python" in names
    active = _backend.kernels.NAME
    try:
        assert _backend.use("python").NAME == "python"
        with pytest.raises(ValueError):
            _backend.use("fortran")
    finally:
        _backend.use(active)


def test_env_forces_fallback():
    env = dict(os.environ, OPAV_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import opav; print(opav.backend_name())"], env=env, capture_output=True, text=True
    )
    assert out.stdout.strip() == "python"
