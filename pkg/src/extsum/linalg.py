"""Dense singular value decomposition via one-sided Jacobi, plus truncation.

The decomposition works on the rows of the transposed input (so the working
vectors are contiguous), cyclically rotating row pairs until mutually
orthogonal, then reading off singular values as row norms.  Output is fully
deterministic: fixed sweep order, stable descending sort, and a sign
convention that makes the largest-magnitude entry of every left singular
vector non-negative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import jacobi_sweeps

MAX_SWEEPS = 60

# A column pair is rotated while its cross dot product exceeds this fraction
# of the product of the column norms; relative so that near-zero columns are
# driven fully to zero instead of stalling above the rank tolerance.
_SWEEP_TOL = 1e-12


class NonFiniteInputError(ValueError):
    """Input matrix contains NaN or infinity."""


class SvdConvergenceError(RuntimeError):
    """Jacobi sweeps did not reach orthogonality within the sweep budget."""

    def __init__(self, off_norm: float, sweeps: int):
        self.off_norm = off_norm
        self.sweeps = sweeps
        super().__init__(
            f"no convergence after {sweeps} sweeps; "
            f"off-diagonal norm still {off_norm:.3e}"
        )


@dataclass(eq=False)
class SvdFactorization:
    """A = u @ diag(sigma) @ vt with sigma descending and non-negative.

    ``rank`` counts singular values above max(t, s) * sigma[0] * machine-eps.
    """

    u: np.ndarray      # t x c, column-orthonormal
    sigma: np.ndarray  # length c, descending
    vt: np.ndarray     # c x s, row-orthonormal
    rank: int

    @property
    def n_components(self) -> int:
        return len(self.sigma)


def rank_tolerance(shape: tuple[int, int], leading_sigma: float) -> float:
    """Standard numerical-rank cutoff for a matrix of the given shape."""
    return max(shape) * leading_sigma * np.finfo(np.float64).eps


def _gram_off_norm(c: np.ndarray) -> float:
    g = c @ c.T
    off = g - np.diag(np.diag(g))
    return float(np.sqrt((off**2).sum() / 2.0))


def _complete_orthonormal(u: np.ndarray, col: int) -> None:
    """Fill column ``col`` of u with a unit vector orthogonal to columns < col
    that correspond to already-established directions (all other columns are
    zero at this point).  Deterministic: picks the canonical basis vector with
    the largest residual."""
    established = u[:, :col]
    residual_sq = 1.0 - (established**2).sum(axis=1)
    k = int(np.argmax(residual_sq))
    w = np.zeros(u.shape[0])
    w[k] = 1.0
    w -= established @ (established.T @ w)
    w -= established @ (established.T @ w)  # second pass for numerical safety
    u[:, col] = w / np.linalg.norm(w)


def _svd_tall(a: np.ndarray, max_sweeps: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Factor a t x s matrix with t >= s; returns (u, sigma, vt) unsorted-signs."""
    t, s = a.shape
    c = np.ascontiguousarray(a.T, dtype=np.float64)  # rows are A's columns
    vt = np.eye(s)
    sweeps, converged = jacobi_sweeps(c, vt, _SWEEP_TOL, max_sweeps)
    if not converged:
        raise SvdConvergenceError(_gram_off_norm(c), sweeps)

    sigma = np.linalg.norm(c, axis=1)
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    c = c[order]
    vt = vt[order]

    tol = rank_tolerance((t, s), float(sigma[0]) if s else 0.0)
    u = np.zeros((t, s))
    deferred = []
    for j in range(s):
        if sigma[j] > tol:
            u[:, j] = c[j] / sigma[j]
        else:
            deferred.append(j)
    for j in deferred:
        _complete_orthonormal(u, j)
    return u, sigma, vt


def _fix_signs(u: np.ndarray, vt: np.ndarray) -> None:
    """Make the largest-magnitude entry of each u column non-negative."""
    for j in range(u.shape[1]):
        i = int(np.argmax(np.abs(u[:, j])))
        if u[i, j] < 0:
            u[:, j] = -u[:, j]
            vt[j] = -vt[j]


def svd(a: np.ndarray, max_sweeps: int = MAX_SWEEPS) -> SvdFactorization:
    """Decompose a dense t x s matrix into U, sigma, Vt with c = min(t, s).

    Raises :class:`NonFiniteInputError` for NaN/inf entries and
    :class:`SvdConvergenceError` (reporting the achieved off-diagonal norm)
    if the sweep budget runs out.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise NonFiniteInputError("matrix contains non-finite entries")

    t, s = a.shape
    if t >= s:
        u, sigma, vt = _svd_tall(a, max_sweeps)
    else:
        # Factor the transpose (tall) and swap the outer factors.
        ub, sigma, vtb = _svd_tall(np.ascontiguousarray(a.T), max_sweeps)
        u = vtb.T.copy()
        vt = ub.T.copy()

    _fix_signs(u, vt)
    tol = rank_tolerance((t, s), float(sigma[0]) if len(sigma) else 0.0)
    rank = int((sigma > tol).sum())
    return SvdFactorization(u=u, sigma=sigma, vt=np.ascontiguousarray(vt), rank=rank)


def truncate(f: SvdFactorization, k: int) -> SvdFactorization:
    """Keep the leading k components of a factorization."""
    c = f.n_components
    if not 1 <= k <= c:
        raise ValueError(f"k={k} outside valid range [1, {c}]")
    return SvdFactorization(
        u=f.u[:, :k].copy(),
        sigma=f.sigma[:k].copy(),
        vt=f.vt[:k].copy(),
        rank=min(f.rank, k),
    )
