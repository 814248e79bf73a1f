import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from reidemeister import _kernels as K
from reidemeister._accel import backend
from reidemeister.chars import _class_data
from reidemeister.corpus import corpus_group
from reidemeister.group import enumerate_automorphisms

NAMES = ["Z6", "S3", "Q8", "A4", "H3", "S4"]


@pytest.mark.parametrize("name", NAMES)
def test_orbit_and_fixed_kernels_agree(name):
    G = corpus_group(name)
    for phi in enumerate_automorphisms(G)[:20]:
        args = (G.table, G.inverse, phi.images)
        assert (K.twisted_orbit_labels_nb(*args) == K.twisted_orbit_labels_np(*args)).all()
        assert (K.twisted_fixed_counts_nb(*args) == K.twisted_fixed_counts_np(*args)).all()


@pytest.mark.parametrize("name", NAMES)
def test_class_coefficient_kernels_agree(name):
    G = corpus_group(name)
    _, class_of, reps = _class_data(G)
    a = K.class_coefficients_nb(G.table, G.inverse, class_of, reps)
    b = K.class_coefficients_np(G.table, G.inverse, class_of, reps)
    assert (a == b).all()


def test_associativity_kernels_agree():
    t = corpus_group("A4").table.copy()
    assert K.associativity_witness_nb(t) == K.associativity_witness_np(t) == (-1, -1, -1)
    bad = np.array([[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]])
    w = K.associativity_witness_nb(bad)
    assert tuple(int(x) for x in w) == K.associativity_witness_np(bad)


@given(st.integers(1, 8), st.integers(1, 8), st.sampled_from([7, 101, 7919]), st.integers(0, 2**32 - 1))
def test_rref_kernels_agree(r, c, p, seed):
    m = np.random.default_rng(seed).integers(0, p, size=(r, c)).astype(np.int64)
    m[:, 0] = 0 if seed % 3 == 0 else m[:, 0]
    a, pa = K.rref_mod_nb(m.copy(), p)
    b, pb = K.rref_mod_np(m.copy(), p)
    assert (a == b).all() and (pa == pb).all()


def test_env_flag_selects_numpy():
    env = dict(os.environ, REIDEMEISTER_DISABLE_NUMBA="1")
    code = "from reidemeister._accel import backend; print(backend())"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True).stdout.strip()
    assert out == "numpy"
    assert backend() in ("numba", "numpy")


def test_numpy_backend_end_to_end():
    env = dict(os.environ, REIDEMEISTER_DISABLE_NUMBA="1")
    code = "from reidemeister.cli import main; import sys; sys.exit(main(['verify-corpus', '--max-order', '12']))"
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
