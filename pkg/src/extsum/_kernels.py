"""Hot numeric kernels: one-sided Jacobi sweeps and the PLSA EM step.

Each kernel exists twice: a scalar-loop version compiled with numba's
``@njit`` and a vectorized pure-numpy version.  The numba path is the default
whenever numba imports; set ``EXTSUM_NUMBA=0`` (or ``false``/``no``/``off``)
to force the numpy path.  Both paths implement the same contract and agree to
floating-point roundoff; ``benchmarks/bench_kernels.py`` compares their speed.
"""

from __future__ import annotations

import math
import os

import numpy as np

NUMBA_ENV_VAR = "EXTSUM_NUMBA"

# Probability floor applied before logarithms in the likelihood.
_LOG_FLOOR = 1e-12


def _numba_requested() -> bool:
    flag = os.environ.get(NUMBA_ENV_VAR, "1").strip().lower()
    return flag not in {"0", "false", "no", "off"}


def _jacobi_sweeps_loops(c, vt, rel_thresh, max_sweeps):
    # Cyclic one-sided Jacobi over row pairs of c (rows are the working
    # vectors), accumulating the same plane rotations in vt.  Mutates both
    # in place.  Returns (sweeps_used, converged).  A pair is rotated while
    # its cross dot product exceeds rel_thresh relative to the row norms.
    # Callers must pass c with no more rows than columns (a tall source
    # matrix); extra rows would have to reach exact zero and may oscillate.
    s = c.shape[0]
    width = c.shape[1]
    sweeps = 0
    rotated = True
    while rotated and sweeps < max_sweeps:
        rotated = False
        sweeps += 1
        for p in range(s - 1):
            for q in range(p + 1, s):
                app = 0.0
                aqq = 0.0
                apq = 0.0
                for i in range(width):
                    app += c[p, i] * c[p, i]
                    aqq += c[q, i] * c[q, i]
                    apq += c[p, i] * c[q, i]
                if app * aqq == 0.0:
                    continue
                if abs(apq) <= rel_thresh * math.sqrt(app * aqq):
                    continue
                tau = (aqq - app) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - math.sqrt(1.0 + tau * tau))
                cs = 1.0 / math.sqrt(1.0 + t * t)
                sn = t * cs
                for i in range(width):
                    tmp = cs * c[p, i] - sn * c[q, i]
                    c[q, i] = sn * c[p, i] + cs * c[q, i]
                    c[p, i] = tmp
                for i in range(s):
                    tmp = cs * vt[p, i] - sn * vt[q, i]
                    vt[q, i] = sn * vt[p, i] + cs * vt[q, i]
                    vt[p, i] = tmp
                rotated = True
    return sweeps, not rotated


def jacobi_sweeps_numpy(c, vt, rel_thresh, max_sweeps):
    """Pure-numpy Jacobi sweeps; same contract as the jitted kernel."""
    s = c.shape[0]
    sweeps = 0
    rotated = True
    while rotated and sweeps < max_sweeps:
        rotated = False
        sweeps += 1
        for p in range(s - 1):
            cp = c[p]
            vp = vt[p]
            for q in range(p + 1, s):
                cq = c[q]
                apq = float(cp @ cq)
                app = float(cp @ cp)
                aqq = float(cq @ cq)
                if app * aqq == 0.0:
                    continue
                if abs(apq) <= rel_thresh * math.sqrt(app * aqq):
                    continue
                tau = (aqq - app) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - math.sqrt(1.0 + tau * tau))
                cs = 1.0 / math.sqrt(1.0 + t * t)
                sn = t * cs
                vq = vt[q]
                new_p = cs * cp - sn * cq
                c[q] = sn * cp + cs * cq
                c[p] = new_p
                new_vp = cs * vp - sn * vq
                vt[q] = sn * vp + cs * vq
                vt[p] = new_vp
                rotated = True
    return sweeps, not rotated


def _plsa_step_loops(counts, p_z, p_d_z, p_w_z, nz, nd, nw):
    # One fused EM step.  Reads the current parameters, accumulates the
    # expected-count numerators into nz/nd/nw (caller normalizes), and
    # returns the log-likelihood of the *input* parameters.
    k = p_z.shape[0]
    t = counts.shape[0]
    s = counts.shape[1]
    for z in range(k):
        nz[z] = 0.0
        for d in range(s):
            nd[z, d] = 0.0
        for w in range(t):
            nw[z, w] = 0.0
    ll = 0.0
    for w in range(t):
        for d in range(s):
            n = counts[w, d]
            if n == 0.0:
                continue
            denom = 0.0
            for z in range(k):
                denom += p_z[z] * p_d_z[z, d] * p_w_z[z, w]
            clamped = denom if denom > _LOG_FLOOR else _LOG_FLOOR
            ll += n * math.log(clamped)
            safe = denom if denom > 0.0 else 1.0
            scale = n / safe
            for z in range(k):
                post = p_z[z] * p_d_z[z, d] * p_w_z[z, w] * scale
                nw[z, w] += post
                nd[z, d] += post
                nz[z] += post
    return ll


def plsa_step_numpy(counts, p_z, p_d_z, p_w_z, nz, nd, nw):
    """Vectorized EM step; same contract as the jitted kernel."""
    joint = p_z[:, None, None] * p_w_z[:, :, None] * p_d_z[:, None, :]
    denom = joint.sum(axis=0)
    ll = float((counts * np.log(np.maximum(denom, _LOG_FLOOR))).sum())
    weighted = counts[None, :, :] * joint / np.maximum(denom, 1e-300)[None, :, :]
    nw[:] = weighted.sum(axis=2)
    nd[:] = weighted.sum(axis=1)
    nz[:] = nw.sum(axis=1)
    return ll


jacobi_sweeps_numba = None
plsa_step_numba = None

if _numba_requested():
    try:
        from numba import njit
    except ImportError:
        njit = None
    if njit is not None:
        jacobi_sweeps_numba = njit(cache=True)(_jacobi_sweeps_loops)
        plsa_step_numba = njit(cache=True)(_plsa_step_loops)

USING_NUMBA = jacobi_sweeps_numba is not None

if USING_NUMBA:
    jacobi_sweeps = jacobi_sweeps_numba
    plsa_step = plsa_step_numba
else:
    jacobi_sweeps = jacobi_sweeps_numpy
    plsa_step = plsa_step_numpy
