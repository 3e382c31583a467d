"""Dense complex linear algebra for small matrices.

Kernels and ranks come from the SVD.  Generalized eigenspaces are computed
as kernels of powers of shifted matrices, after the raw spectrum of a
nonsymmetric eigensolver has been grouped into clusters.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ClusterAmbiguity, DimensionMismatch, NotNilpotent, NotUnipotent

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "CharDecomposition",
    "DecompositionResult",
    "as_matrix",
    "norm",
    "kernel",
    "rank",
    "orth",
    "nilpotency_defect",
    "is_nilpotent_matrix",
    "nilindex",
    "generalized_eigenspaces",
    "nilpotent_part",
    "endo_jordan_chevalley",
    "exp_nilpotent",
    "log_unipotent",
]


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds.

    ``eps_rank`` is relative to the largest singular value, ``eps_cluster``
    is an absolute radius in the complex plane, ``eps_residual`` bounds
    verification defects.
    """

    eps_rank: float = 1e-9
    eps_cluster: float = 1e-6
    eps_residual: float = 1e-8

    def __post_init__(self):
        for name in ("eps_rank", "eps_cluster", "eps_residual"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")


DEFAULT_TOL = Tolerance()


def as_matrix(M, square: bool = False) -> np.ndarray:
    """Coerce ``M`` to a finite 2-d complex array."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got array of shape {A.shape}")
    if square and A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def norm(M) -> float:
    """Frobenius norm (Euclidean norm for vectors)."""
    return float(np.linalg.norm(M))


def _svd_rank(s: np.ndarray, tol: Tolerance, scale: float | None) -> int:
    ref = float(s[0]) if scale is None and s.size else (scale or 0.0)
    if ref == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.eps_rank * ref))


def kernel(M, tol: Tolerance = DEFAULT_TOL, scale: float | None = None) -> np.ndarray:
    """Orthonormal basis (as columns) of the numerical null space of ``M``.

    Singular values below ``eps_rank * scale`` count as zero; ``scale``
    defaults to the largest singular value.
    """
    M = as_matrix(M)
    cols = M.shape[1]
    if M.shape[0] == 0 or cols == 0:
        return np.eye(cols, dtype=complex)
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    r = _svd_rank(s, tol, scale)
    return vh[r:].conj().T.copy()


def rank(M, tol: Tolerance = DEFAULT_TOL, scale: float | None = None) -> int:
    M = as_matrix(M)
    if 0 in M.shape:
        return 0
    return _svd_rank(np.linalg.svd(M, compute_uv=False), tol, scale)


def orth(M, tol: Tolerance = DEFAULT_TOL, scale: float | None = None) -> np.ndarray:
    """Orthonormal basis of the column span of ``M``."""
    M = as_matrix(M)
    if 0 in M.shape:
        return np.zeros((M.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(M, full_matrices=False)
    return u[:, : _svd_rank(s, tol, scale)].copy()


def nilpotency_defect(N, floor: float = 0.0) -> float:
    """``||N^n|| / s^n`` with ``s = max(||N||, floor)``; zero exactly when ``N`` is
    numerically nilpotent.

    ``floor`` keeps rounding noise (say ``Q - I`` for ``Q`` close to ``I``)
    from being inflated to unit norm.
    """
    N = as_matrix(N, square=True)
    n = N.shape[0]
    scale = max(norm(N), floor)
    if n == 0 or scale == 0.0:
        return 0.0
    # normalise first so the power cannot overflow
    return norm(np.linalg.matrix_power(N / scale, n))


def is_nilpotent_matrix(N, tol: Tolerance = DEFAULT_TOL) -> bool:
    return nilpotency_defect(N) <= tol.eps_residual


def nilindex(N, tol: Tolerance = DEFAULT_TOL) -> int:
    """Smallest ``k`` with ``N^k`` numerically zero (0 for the empty matrix)."""
    N = as_matrix(N, square=True)
    n = N.shape[0]
    scale = norm(N)
    if scale == 0.0:
        return 1 if n else 0
    X = N / scale
    P = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        P = P @ X
        if norm(P) <= tol.eps_residual:
            return k
    raise NotNilpotent(f"matrix is not nilpotent (defect {norm(P):.3e})")


# ---------------------------------------------------------------------------
# characteristic subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharDecomposition:
    """Direct sum of generalized eigenspaces of a square matrix."""

    eigenvalues: tuple
    blocks: tuple
    multiplicities: tuple

    @property
    def dim(self) -> int:
        return int(sum(self.multiplicities))

    @property
    def change_of_basis(self) -> np.ndarray:
        """Matrix whose columns are all block bases, concatenated in order."""
        if not self.blocks:
            return np.zeros((0, 0), dtype=complex)
        return np.hstack(self.blocks)

    def coordinate_projectors(self) -> list:
        """Oblique projectors onto each block along the sum of the others."""
        V = self.change_of_basis
        W = np.linalg.inv(V)
        out, start = [], 0
        for m, B in zip(self.multiplicities, self.blocks):
            out.append(B @ W[start : start + m])
            start += m
        return out

    def index_of(self, value: complex, radius: float) -> int | None:
        """Index of the block whose eigenvalue lies within ``radius``, if any."""
        if not self.eigenvalues:
            return None
        dist = np.abs(np.asarray(self.eigenvalues) - value)
        i = int(np.argmin(dist))
        return i if dist[i] <= radius else None

    def separation(self) -> float:
        """Smallest distance between distinct clustered eigenvalues."""
        ev = np.asarray(self.eigenvalues)
        if ev.size < 2:
            return float("inf")
        d = np.abs(ev[:, None] - ev[None, :])
        return float(d[~np.eye(ev.size, dtype=bool)].min())


def _threshold_clusters(raw: np.ndarray, eps: float) -> list:
    n = raw.size
    adj = np.abs(raw[:, None] - raw[None, :]) <= eps
    seen = np.zeros(n, dtype=bool)
    clusters = []
    for start in range(n):
        if seen[start]:
            continue
        comp, stack = [], [start]
        seen[start] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in np.flatnonzero(adj[i] & ~seen):
                seen[j] = True
                stack.append(int(j))
        comp.sort()
        if not adj[np.ix_(comp, comp)].all():
            raise ClusterAmbiguity(
                f"eigenvalues {raw[comp]} chain together at eps_cluster={eps:g} "
                "without being pairwise close; adjust eps_cluster"
            )
        clusters.append(comp)
    return clusters


def _shifted_power(M: np.ndarray, mu: complex, m: int):
    B = M - mu * np.eye(M.shape[0])
    return np.linalg.matrix_power(B, m), norm(B) ** m


def _nullity(M, mu, m, tol) -> int:
    P, scale = _shifted_power(M, mu, m)
    if scale == 0.0:
        return M.shape[0]
    s = np.linalg.svd(P, compute_uv=False)
    return int(np.count_nonzero(s <= tol.eps_rank * scale))


def _blocks(M: np.ndarray, means, sizes, tol: Tolerance):
    n = M.shape[0]
    out = []
    for mu, m in zip(means, sizes):
        P, scale = _shifted_power(M, mu, m)
        out.append(kernel(P, tol, scale=scale) if scale else np.eye(n, dtype=complex))
    return out


def _closest(means, clusters, allowed):
    best = None
    for a in range(len(clusters)):
        for b in range(a + 1, len(clusters)):
            if not allowed(a, b):
                continue
            d = abs(means[a] - means[b])
            if best is None or d < best[0]:
                best = (d, a, b)
    return best


def _cluster_spectrum(M: np.ndarray, tol: Tolerance) -> list:
    """Group raw eigenvalues into clusters whose means are true eigenvalues.

    Returns ``(mean, block)`` pairs.  Raw eigenvalues of a defective matrix
    scatter on a ring much wider than ``eps_cluster``, so after the threshold
    pass two clusters are merged while any of these holds:

    * some cluster of size ``m`` has ``nullity((M - mean I)^m) != m``;
    * the blocks ``kernel((M - mean I)^m)`` do not form a well-conditioned
      direct sum;
    * two means are closer than the rounding-error bound
      ``(||P_a|| + ||P_b||) 10 n u ||M||`` from the spectral projectors
      (``u`` the unit roundoff); split pieces of a Jordan block have
      projector norms that blow up like ``spread^(1 - m)``.

    The first rule only merges pairs involving an inconsistent cluster; the
    others merge the closest offending pair.
    """
    raw = np.linalg.eigvals(M)
    clusters = _threshold_clusters(raw, tol.eps_cluster)
    n = M.shape[0]
    noise = 10 * n * np.finfo(float).eps * max(norm(M), 1.0)
    while True:
        means = [complex(raw[c].mean()) for c in clusters]
        sizes = [len(c) for c in clusters]
        bad = [_nullity(M, mu, m, tol) != m for mu, m in zip(means, sizes)]
        pick = None
        if any(bad):
            pick = _closest(means, clusters, lambda a, b: bad[a] or bad[b])
        else:
            blocks = _blocks(M, means, sizes, tol)
            V = np.hstack(blocks)
            if V.shape[1] != n or np.linalg.cond(V) * tol.eps_rank > 1.0:
                pick = _closest(means, clusters, lambda a, b: True)
            else:
                W = np.linalg.inv(V)
                starts = np.cumsum([0] + sizes)
                pnorm = [np.linalg.norm(B @ W[starts[i]:starts[i + 1]], 2) for i, B in enumerate(blocks)]
                pick = _closest(
                    means, clusters,
                    lambda a, b: abs(means[a] - means[b]) <= (pnorm[a] + pnorm[b]) * noise,
                )
                if pick is None:
                    return list(zip(means, blocks))
        if pick is None:
            raise ClusterAmbiguity("no consistent grouping of the spectrum into generalized eigenspaces")
        _, a, b = pick
        clusters[a] = sorted(clusters[a] + clusters[b])
        del clusters[b]


def generalized_eigenspaces(M, tol: Tolerance = DEFAULT_TOL) -> CharDecomposition:
    """Decompose the underlying space into characteristic subspaces of ``M``.

    Each block is ``kernel((M - lam I)^m)`` with ``m`` the cluster's
    algebraic multiplicity.  Blocks are ordered by eigenvalue (real part,
    then imaginary part).
    """
    M = as_matrix(M, square=True)
    if M.shape[0] == 0:
        return CharDecomposition((), (), ())
    clustered = sorted(_cluster_spectrum(M, tol), key=lambda t: (round(t[0].real, 9), round(t[0].imag, 9)))
    eigenvalues = tuple(mu for mu, _ in clustered)
    blocks = tuple(B for _, B in clustered)
    return CharDecomposition(eigenvalues, blocks, tuple(B.shape[1] for B in blocks))


# ---------------------------------------------------------------------------
# Jordan-Chevalley for endomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecompositionResult:
    semisimple: np.ndarray
    nilpotent: np.ndarray
    residuals: dict = field(default_factory=dict)

    def __iter__(self):
        yield self.semisimple
        yield self.nilpotent


def nilpotent_part(M, decomp: CharDecomposition, projectors) -> np.ndarray:
    """``sum_i (M - lam_i I) P_i`` over clusters of multiplicity at least 2.

    On a one-dimensional characteristic subspace ``M - lam I`` vanishes, so
    those terms are dropped exactly instead of carrying the rounding error
    of an ill-conditioned eigenvector basis.
    """
    n = M.shape[0]
    N = np.zeros((n, n), dtype=complex)
    for mu, m, proj in zip(decomp.eigenvalues, decomp.multiplicities, projectors):
        if m > 1:
            N += (M - mu * np.eye(n)) @ proj
    return N


def endo_jordan_chevalley(M, tol: Tolerance = DEFAULT_TOL) -> DecompositionResult:
    """Split ``M = S + N`` with ``S`` diagonalizable, ``N`` nilpotent, ``SN = NS``.

    ``S`` acts as the eigenvalue on each characteristic subspace.  The
    spectral projectors are built from right and left generalized
    eigenspaces, ``P = V (W^H V)^{-1} W^H``, so this route does not reuse
    the inverse of the concatenated block basis.
    """
    M = as_matrix(M, square=True)
    n = M.shape[0]
    decomp = generalized_eigenspaces(M, tol)
    projectors = []
    for mu, V, m in zip(decomp.eigenvalues, decomp.blocks, decomp.multiplicities):
        P, scale = _shifted_power(M.conj().T, np.conj(mu), m)
        W = kernel(P, tol, scale=scale) if scale else np.eye(n, dtype=complex)
        if W.shape[1] != m:
            raise ClusterAmbiguity("left and right generalized eigenspaces disagree in dimension")
        projectors.append(V @ np.linalg.solve(W.conj().T @ V, W.conj().T))
    N = nilpotent_part(M, decomp, projectors)
    S = M - N
    residuals = {
        "commutator": norm(S @ N - N @ S),
        "nilpotency": norm(np.linalg.matrix_power(N, n)) if n else 0.0,
        "projector_sum": norm(sum(projectors) - np.eye(n)),
    }
    return DecompositionResult(S, N, residuals)


# ---------------------------------------------------------------------------
# exp / log on nilpotent / unipotent matrices
# ---------------------------------------------------------------------------


def exp_nilpotent(N, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Finite exponential series ``sum_{k<n} N^k / k!`` of a nilpotent matrix."""
    N = as_matrix(N, square=True)
    defect = nilpotency_defect(N, tol.eps_residual)
    if defect > tol.eps_residual:
        raise NotNilpotent(f"matrix is not nilpotent (defect {defect:.3e})")
    n = N.shape[0]
    out = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, n):
        term = term @ N / k
        out = out + term
    return out


def log_unipotent(Q, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Finite logarithm series ``sum_{k<n} (-1)^(k-1) P^k / k`` with ``P = Q - I``."""
    Q = as_matrix(Q, square=True)
    n = Q.shape[0]
    P = Q - np.eye(n)
    # Q itself sets the scale
    defect = nilpotency_defect(P, 1.0)
    if defect > tol.eps_residual:
        raise NotUnipotent(f"Q - I is not nilpotent (defect {defect:.3e})")
    out = np.zeros((n, n), dtype=complex)
    power = np.eye(n, dtype=complex)
    for k in range(1, n):
        power = power @ P
        out = out + ((-1) ** (k - 1) / k) * power
    return out
