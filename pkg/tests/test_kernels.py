"""Agreement between the numba and pure-numpy kernel paths."""

import os
import subprocess
import sys

import numpy as np
import pytest

from extsum._kernels import (
    NUMBA_ENV_VAR,
    jacobi_sweeps_numba,
    jacobi_sweeps_numpy,
    plsa_step_numba,
    plsa_step_numpy,
)

needs_numba = pytest.mark.skipif(
    jacobi_sweeps_numba is None, reason="numba unavailable or disabled"
)


@needs_numba
def test_jacobi_paths_agree():
    rng = np.random.default_rng(81)
    for _ in range(20):
        # caller contract: the worked matrix is tall (rows of c <= its width)
        s = int(rng.integers(2, 20))
        t = int(rng.integers(s, 40))
        a = rng.normal(size=(t, s))
        c1 = np.ascontiguousarray(a.T.copy())
        v1 = np.eye(s)
        c2 = c1.copy()
        v2 = np.eye(s)
        s1, conv1 = jacobi_sweeps_numba(c1, v1, 1e-12, 60)
        s2, conv2 = jacobi_sweeps_numpy(c2, v2, 1e-12, 60)
        assert conv1 and conv2
        sig1 = np.sort(np.linalg.norm(c1, axis=1))
        sig2 = np.sort(np.linalg.norm(c2, axis=1))
        np.testing.assert_allclose(sig1, sig2, rtol=1e-10, atol=1e-12)
        # both paths produce valid factorizations of the same input
        for c, v in ((c1, v1), (c2, v2)):
            np.testing.assert_allclose(c.T @ v, a, atol=1e-10)
            np.testing.assert_allclose(v @ v.T, np.eye(s), atol=1e-10)


@needs_numba
def test_plsa_step_paths_agree():
    rng = np.random.default_rng(82)
    for _ in range(20):
        t = int(rng.integers(2, 25))
        s = int(rng.integers(2, 12))
        k = int(rng.integers(1, 6))
        counts = rng.integers(0, 5, size=(t, s)).astype(np.float64)
        p_z = rng.random(k)
        p_z /= p_z.sum()
        p_d_z = rng.random((k, s))
        p_d_z /= p_d_z.sum(axis=1, keepdims=True)
        p_w_z = rng.random((k, t))
        p_w_z /= p_w_z.sum(axis=1, keepdims=True)

        nz1, nd1, nw1 = np.zeros(k), np.zeros((k, s)), np.zeros((k, t))
        nz2, nd2, nw2 = np.zeros(k), np.zeros((k, s)), np.zeros((k, t))
        ll1 = plsa_step_numba(counts, p_z, p_d_z, p_w_z, nz1, nd1, nw1)
        ll2 = plsa_step_numpy(counts, p_z, p_d_z, p_w_z, nz2, nd2, nw2)
        assert ll1 == pytest.approx(ll2, rel=1e-12)
        np.testing.assert_allclose(nz1, nz2, rtol=1e-10, atol=1e-12)
        np.testing.assert_allclose(nd1, nd2, rtol=1e-10, atol=1e-12)
        np.testing.assert_allclose(nw1, nw2, rtol=1e-10, atol=1e-12)


def _selected_path(env_value: str | None) -> str:
    env = dict(os.environ)
    env.pop(NUMBA_ENV_VAR, None)
    if env_value is not None:
        env[NUMBA_ENV_VAR] = env_value
    out = subprocess.run(
        [sys.executable, "-c", "from extsum._kernels import USING_NUMBA; print(USING_NUMBA)"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return out.stdout.strip()


def test_env_flag_forces_numpy_path():
    assert _selected_path("0") == "False"
    assert _selected_path("off") == "False"


@needs_numba
def test_env_flag_default_uses_numba():
    assert _selected_path(None) == "True"
    assert _selected_path("1") == "True"
