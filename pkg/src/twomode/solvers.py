"""Symmetric eigensolvers, truncated SVD, and matrix functions.

Dense LAPACK paths handle systems up to ``SolverConfig.dense_threshold``;
larger systems go through ARPACK (implicitly restarted Lanczos) with a
seeded start vector, making every result reproducible bit for bit given
(seed, tol, max_iter).  Smallest eigenvalues are always obtained by the
spectral-shift trick -- the largest eigenvalue of ``lam_max*I - M`` -- so
no sparse factorization is ever required.

Sign convention: every eigenvector or singular-vector pair is flipped so
that its entry of largest magnitude (first such index on ties) is
positive.  Vectors of eigenvalues closer than ``DEGENERATE_GAP`` are
re-orthonormalized as a block, since only the invariant subspace is
determined.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh, svds

from .errors import ConvergenceError, DisconnectedGraphError, ScaleLimitError

# below this dimension a Krylov subspace is the whole space; solve densely
_DENSE_FALLBACK = 5

DEGENERATE_GAP = 1e-10


@dataclass(frozen=True)
class SolverConfig:
    """Shared solver knobs.

    tol: relative residual tolerance for iterative solves.
    max_iter: restart cap handed to ARPACK.
    dense_threshold: dimension at or below which dense solvers run.
    seed: seed of the deterministic start vector.
    """

    tol: float = 1e-8
    max_iter: int = 10000
    dense_threshold: int = 1000
    seed: int = 0

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.dense_threshold < 2:
            raise ValueError("dense_threshold must be at least 2")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class Spectrum:
    """Eigenpairs of a symmetric matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column i pairs with eigenvalues[i]
    converged: np.ndarray
    residual_norms: np.ndarray

    @property
    def count(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class SingularTriplets:
    """Leading singular triplets of a rectangular matrix, descending."""

    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray
    rank_requested: int
    converged: np.ndarray
    residual_norms: np.ndarray

    @property
    def count(self) -> int:
        return len(self.singular_values)


def _start_vector(n: int, seed) -> np.ndarray:
    return np.random.default_rng(seed).standard_normal(n)


def _fix_signs(vectors: np.ndarray, companions: np.ndarray | None = None) -> None:
    """Flip column signs so the entry of largest magnitude is positive.

    ``companions`` columns are flipped together with ``vectors`` columns to
    preserve pairings such as B v = sigma u.
    """
    for j in range(vectors.shape[1]):
        col = vectors[:, j]
        lead = int(np.argmax(np.abs(col)))
        if col[lead] < 0:
            col *= -1.0
            if companions is not None:
                companions[:, j] *= -1.0


def _reorthonormalize_clusters(values: np.ndarray, vectors: np.ndarray) -> None:
    """QR-orthonormalize runs of (near-)equal eigenvalues in place."""
    start = 0
    for end in range(1, len(values) + 1):
        if end == len(values) or values[end] - values[end - 1] > DEGENERATE_GAP:
            if end - start > 1:
                q, _ = np.linalg.qr(vectors[:, start:end])
                vectors[:, start:end] = q
            start = end


def _residuals(mat, values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    prod = mat @ vectors
    return np.linalg.norm(prod - vectors * values[np.newaxis, :], axis=0)


def _spectrum_from(mat, values, vectors, tol) -> Spectrum:
    order = np.argsort(values, kind="stable")
    values = np.asarray(values, dtype=float)[order]
    vectors = np.asarray(vectors, dtype=float)[:, order]
    _reorthonormalize_clusters(values, vectors)
    _fix_signs(vectors)
    res = _residuals(mat, values, vectors)
    scale = max(1.0, float(np.max(np.abs(values))) if len(values) else 1.0)
    converged = res <= tol * scale
    for a in (values, vectors, converged, res):
        a.setflags(write=False)
    return Spectrum(values, vectors, converged, res)


def dense_spectrum(mat, config: SolverConfig | None = None) -> Spectrum:
    """Full spectrum of a symmetric matrix via dense LAPACK, ascending.

    Refuses matrices larger than ``dense_threshold``: full-spectrum
    quantities (such as the odd-cycle measure) are unavailable at that
    scale.
    """
    cfg = config or DEFAULT_CONFIG
    n = mat.shape[0]
    if n > cfg.dense_threshold:
        raise ScaleLimitError(
            f"dimension {n} exceeds dense_threshold={cfg.dense_threshold}; "
            "full-spectrum quantities are unavailable at this scale"
        )
    dense = mat.toarray() if sp.issparse(mat) else np.asarray(mat, dtype=float)
    values, vectors = np.linalg.eigh(dense)
    return _spectrum_from(mat, values, vectors, cfg.tol)


def _eigsh_largest(mat, k: int, cfg: SolverConfig, ncv: int | None = None):
    """Largest algebraic eigenpairs through ARPACK with a seeded start."""
    n = mat.shape[0]
    v0 = _start_vector(n, cfg.seed)
    try:
        values, vectors = eigsh(
            mat,
            k=k,
            which="LA",
            v0=v0,
            tol=cfg.tol * 0.1,
            maxiter=cfg.max_iter,
            ncv=ncv or min(n, max(32, 2 * k + 1)),
        )
    except ArpackNoConvergence as exc:
        best = None
        if getattr(exc, "eigenvalues", None) is not None and len(exc.eigenvalues):
            best = float(
                np.min(_residuals(mat, exc.eigenvalues, exc.eigenvectors))
            )
        raise ConvergenceError(
            f"eigensolver did not converge within max_iter={cfg.max_iter}",
            best_residual=best,
        ) from exc
    return values, vectors


def extremal_eigs(mat, which: str = "both", config: SolverConfig | None = None) -> Spectrum:
    """Extremal eigenpairs of a symmetric matrix.

    The largest eigenvalue comes from restarted Lanczos iteration; the
    smallest from the shift trick: the largest eigenpair of
    ``lam_max*I - M`` gives ``lam_min = lam_max - mu``.  Tiny systems are
    solved densely.  Returns a Spectrum holding the requested extremes in
    ascending order.
    """
    if which not in ("max", "min", "both"):
        raise ValueError("which must be 'max', 'min' or 'both'")
    cfg = config or DEFAULT_CONFIG
    n = mat.shape[0]
    if n < _DENSE_FALLBACK:
        full = dense_spectrum(mat, SolverConfig(cfg.tol, cfg.max_iter, max(n, 2), cfg.seed))
        idx = {"min": [0], "max": [n - 1], "both": ([0] if n == 1 else [0, n - 1])}[which]
        return _spectrum_from(
            mat, full.eigenvalues[idx], full.eigenvectors[:, idx], cfg.tol
        )

    lam_max, vec_max = _eigsh_largest(mat, 1, cfg)
    values = [float(lam_max[0])]
    vectors = [vec_max[:, 0]]
    if which in ("min", "both"):
        shifted = (sp.identity(n, format="csr") * values[0]) - mat
        mu, vec_min = _eigsh_largest(shifted, 1, cfg)
        lam_min = values[0] - float(mu[0])
        if which == "min":
            values, vectors = [lam_min], [vec_min[:, 0]]
        else:
            values.append(lam_min)
            vectors.append(vec_min[:, 0])
    return _spectrum_from(mat, np.array(values), np.column_stack(vectors), cfg.tol)


def truncated_svd(mat, rank: int, config: SolverConfig | None = None) -> SingularTriplets:
    """Top ``rank`` singular triplets of a rectangular sparse matrix.

    Uses ARPACK bidiagonalization-style iteration through matrix-vector
    products only (the Gram matrix is never densified); full-rank or tiny
    requests fall back to dense LAPACK.
    """
    cfg = config or DEFAULT_CONFIG
    m, n = mat.shape
    small = min(m, n)
    if rank < 1 or rank > small:
        raise ValueError(f"rank must be in [1, {small}]")
    nnz = mat.nnz if sp.issparse(mat) else np.count_nonzero(mat)
    if nnz == 0:
        u = np.eye(m, rank)
        v = np.eye(n, rank)
        s = np.zeros(rank)
        conv = np.ones(rank, dtype=bool)
        return SingularTriplets(s, u, v, rank, conv, np.zeros(rank))
    if small < _DENSE_FALLBACK or rank > small - 2:
        dense = mat.toarray() if sp.issparse(mat) else np.asarray(mat, dtype=float)
        u, s, vt = np.linalg.svd(dense, full_matrices=False)
        u, s, v = u[:, :rank], s[:rank], vt[:rank].T
    else:
        v0 = _start_vector(small, cfg.seed)
        try:
            u, s, vt = svds(
                mat, k=rank, which="LM", v0=v0, tol=cfg.tol * 0.1, maxiter=cfg.max_iter
            )
        except ArpackNoConvergence as exc:
            raise ConvergenceError(
                f"SVD did not converge within max_iter={cfg.max_iter}"
            ) from exc
        order = np.argsort(s)[::-1]
        u, s, v = u[:, order], s[order], vt[order].T
    u = np.ascontiguousarray(u)
    v = np.ascontiguousarray(v)
    # pair the signs through u where sigma > 0, independently on the null part
    for j in range(len(s)):
        cols = (u[:, j : j + 1], v[:, j : j + 1])
        if s[j] > DEGENERATE_GAP:
            _fix_signs(cols[0], cols[1])
        else:
            _fix_signs(cols[0])
            _fix_signs(cols[1])
    res = np.linalg.norm(mat @ v - u * s[np.newaxis, :], axis=0)
    scale = max(float(s[0]), 1e-300)
    converged = res <= cfg.tol * max(1.0, scale)
    for a in (s, u, v, converged, res):
        a.setflags(write=False)
    return SingularTriplets(s, u, v, rank, converged, res)


def smallest_nonzero_laplacian_vectors(
    lap, count: int, config: SolverConfig | None = None
) -> Spectrum:
    """Eigenvectors of the ``count`` smallest nonzero Laplacian eigenvalues.

    Requires a connected graph, whose Laplacian null space is exactly the
    constant vector; a second near-zero eigenvalue raises
    DisconnectedGraphError.  Returned vectors are orthogonal to the
    constant vector, ascending by eigenvalue.
    """
    cfg = config or DEFAULT_CONFIG
    n = lap.shape[0]
    if count < 1 or count > n - 1:
        raise ValueError(f"count must be in [1, {n - 1}]")
    k = count + 1
    if n <= cfg.dense_threshold or n < _DENSE_FALLBACK or k > n - 2:
        local = SolverConfig(cfg.tol, cfg.max_iter, max(n, 2), cfg.seed)
        full = dense_spectrum(lap, local)
        values, vectors = full.eigenvalues[:k], full.eigenvectors[:, :k]
    else:
        lam_max, _ = _eigsh_largest(lap, 1, cfg)
        top = float(lam_max[0])
        shifted = (sp.identity(n, format="csr") * top) - lap
        mu, vecs = _eigsh_largest(shifted, k, cfg, ncv=min(n, max(48, 3 * k)))
        values = top - mu
        order = np.argsort(values, kind="stable")
        values, vectors = values[order], vecs[:, order]
    zero_cut = cfg.tol * max(1.0, float(values[-1]), float(abs(values[0])))
    if values[1] <= zero_cut:
        raise DisconnectedGraphError(
            "graph disconnected: the Laplacian null space is not one-dimensional"
        )
    values, vectors = values[1:], np.array(vectors[:, 1:])
    # deflate numerical drift along the constant vector
    vectors -= vectors.mean(axis=0, keepdims=True)
    vectors /= np.linalg.norm(vectors, axis=0, keepdims=True)
    return _spectrum_from(lap, values, vectors, cfg.tol)


class MatrixFunction:
    """Entry accessor for f(M) evaluated through a decomposition.

    For a Spectrum this reconstructs ``U f(Lambda) U^T``; for
    SingularTriplets of a biadjacency matrix it reconstructs the
    off-diagonal block ``U f(Sigma) V^T`` of the odd function of the full
    adjacency matrix, so row indices address left nodes and column indices
    right nodes.
    """

    def __init__(self, left: np.ndarray, values: np.ndarray, right: np.ndarray):
        self._left = left
        self._right = right
        self._values = values

    @property
    def shape(self) -> tuple[int, int]:
        return (self._left.shape[0], self._right.shape[0])

    def entry(self, u: int, v: int) -> float:
        return float((self._left[u] * self._values) @ self._right[v])

    def entries(self, us, vs) -> np.ndarray:
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        return np.einsum(
            "ij,ij->i", self._left[us] * self._values[np.newaxis, :], self._right[vs]
        )

    def to_dense(self) -> np.ndarray:
        return (self._left * self._values[np.newaxis, :]) @ self._right.T


def _function_values(fn, points: np.ndarray) -> np.ndarray:
    return np.array([float(fn(float(x))) for x in points])


def _require_odd(fn, sigmas: np.ndarray) -> None:
    # the block reconstruction only evaluates fn at +/- the singular
    # values, so oddness there (and at zero) is exactly what is required
    probe = sorted(set(float(s) for s in sigmas if s > DEGENERATE_GAP)) or [1.0]
    for t in probe:
        f_pos, f_neg = float(fn(t)), float(fn(-t))
        if abs(f_pos + f_neg) > 1e-9 * max(1.0, abs(f_pos)):
            raise ValueError(
                "only odd functions factor through the bipartite block "
                "reconstruction; even components touch the diagonal blocks"
            )
    if abs(float(fn(0.0))) > 1e-12:
        raise ValueError("odd functions must vanish at zero")


def apply_matrix_function(dec, fn) -> MatrixFunction:
    """Evaluate a scalar function of a matrix through its decomposition.

    ``dec`` may be a Spectrum (symmetric functional calculus) or
    SingularTriplets (bipartite block path, odd functions only).
    """
    if isinstance(dec, Spectrum):
        vals = _function_values(fn, dec.eigenvalues)
        return MatrixFunction(dec.eigenvectors, vals, dec.eigenvectors)
    if isinstance(dec, SingularTriplets):
        _require_odd(fn, dec.singular_values)
        vals = _function_values(fn, dec.singular_values)
        return MatrixFunction(dec.left_vectors, vals, dec.right_vectors)
    raise TypeError("dec must be a Spectrum or SingularTriplets")


def laplacian_pseudoinverse_entry(
    dec: Spectrum, u: int, v: int, tol: float = 1e-8
) -> float:
    """Entry (u, v) of the Laplacian pseudoinverse from a full spectrum.

    Eigenvalues at or below ``tol`` (relative to the largest) are treated
    as the null space; exactly one is expected for a connected graph.
    """
    cut = tol * max(1.0, float(dec.eigenvalues[-1]))
    null_count = int(np.sum(dec.eigenvalues <= cut))
    if null_count != 1:
        raise DisconnectedGraphError(
            "Laplacian pseudoinverse requires a connected graph "
            f"(found {null_count} near-zero eigenvalues)"
        )
    keep = dec.eigenvalues > cut
    inv = 1.0 / dec.eigenvalues[keep]
    vu = dec.eigenvectors[u, keep]
    vv = dec.eigenvectors[v, keep]
    return float((vu * inv) @ vv)
