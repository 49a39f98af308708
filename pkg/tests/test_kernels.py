"""The compiled kernels agree with the pure-Python fallback."""

import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallcluster import _kernels
from hallcluster._kernels import _pykernels
from hallcluster.finfield import make_field
from hallcluster.quiver import kronecker
from hallcluster.reps import hom_data, random_rep

ck = pytest.importorskip("hallcluster._kernels._ckernels")

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)]


@settings(max_examples=60)
@given(
    st.sampled_from(FIELDS),
    st.integers(0, 6),
    st.integers(1, 7),
    st.integers(0, 2**32),
)
def test_rref_parity(pk, nrows, ncols, rs):
    F = make_field(*pk)
    rng = random.Random(rs)
    rows = [[rng.randrange(F.order) for _ in range(ncols)] for _ in range(nrows)]
    a = _pykernels.rref(rows, ncols, *F.tables)
    b = ck.rref(rows, ncols, *F.tables)
    assert [list(r) for r in a[0]] == [list(r) for r in b[0]]
    assert list(a[1]) == list(b[1])


def test_rref_does_not_mutate_input():
    F = make_field(3, 1)
    rows = [[2, 1, 0], [1, 2, 2]]
    snapshot = [list(r) for r in rows]
    ck.rref(rows, 3, *F.tables)
    assert rows == snapshot


@pytest.mark.parametrize("mode", [0, 1, 2])
@pytest.mark.parametrize("pk", [(2, 1), (3, 1), (2, 2)])
def test_scan_parity(mode, pk):
    F = make_field(*pk)
    q = kronecker()
    rng = random.Random(7 * mode + pk[0])
    for _ in range(12):
        dims = (rng.randrange(0, 3), rng.randrange(0, 3))
        M = random_rep(q, F, dims, rng)
        N = M if rng.random() < 0.5 else random_rep(q, F, dims, rng)
        h = hom_data(M, N)
        if F.order ** len(h.basis) > 5000:
            continue
        args = (h.basis, h.blocks(), *F.tables, mode)
        a, b = _pykernels.scan(*args), ck.scan(*args)
        if a is None or isinstance(a, int):
            assert a == b
        else:
            assert list(a) == list(b)


def test_backend_selected():
    assert _kernels.BACKEND in ("compiled", "python")
    assert _kernels.BACKEND == "compiled"


def test_pure_python_switch():
    env = dict(os.environ, HALLCLUSTER_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from hallcluster import _kernels; print(_kernels.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"
