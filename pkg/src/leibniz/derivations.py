"""Derivations: the solution space, grading, additive Jordan-Chevalley, nilpotency criteria."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    DEFAULT_SEED,
    Check,
    LeibnizAlgebra,
    Subspace,
    is_ideal,
    lower_central_series,
    quotient,
)
from .errors import DimensionMismatch, NotADerivation, NotAnIdeal, TheoremViolation
from .linalg import (
    DEFAULT_TOL,
    CharDecomposition,
    Tolerance,
    as_matrix,
    endo_jordan_chevalley,
    generalized_eigenspaces,
    is_nilpotent_matrix,
    kernel,
    nilpotent_part,
    norm,
)

__all__ = [
    "DerivationSpace",
    "AdditiveJC",
    "GradingReport",
    "NonsingularReport",
    "CharNilpotency",
    "derivation_defect",
    "check_derivation",
    "derivation_space",
    "grading_check",
    "additive_jc",
    "nonsingular_derivation_analysis",
    "characteristically_nilpotent",
    "ideal_plus_image",
    "invariance_check",
    "extends_from_quotient",
]


def _map(A: LeibnizAlgebra, D) -> np.ndarray:
    D = as_matrix(D)
    if D.shape != (A.dim, A.dim):
        raise DimensionMismatch(f"expected a {A.dim}x{A.dim} map, got shape {D.shape}")
    return D


def derivation_defect(A: LeibnizAlgebra, D) -> float:
    """``max_{i,j} ||D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j]||``."""
    D = _map(A, D)
    c = A.c
    r = (np.einsum("kl,ijl->ijk", D, c)
         - np.einsum("ri,rjk->ijk", D, c)
         - np.einsum("rj,irk->ijk", D, c))
    return float(np.linalg.norm(r, axis=-1).max())


def check_derivation(A: LeibnizAlgebra, D, tol: Tolerance = DEFAULT_TOL) -> Check:
    r = derivation_defect(A, D)
    return Check(r <= tol.eps_residual, r)


def _require_derivation(A, D, tol):
    chk = check_derivation(A, D, tol)
    if not chk.ok:
        raise NotADerivation(f"map is not a derivation (defect {chk.residual:.3e})")
    return _map(A, D)


@dataclass(frozen=True)
class DerivationSpace:
    algebra: LeibnizAlgebra
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combine(self, coeffs) -> np.ndarray:
        n = self.algebra.dim
        out = np.zeros((n, n), dtype=complex)
        for a, D in zip(coeffs, self.basis):
            out = out + a * D
        return out

    def random_element(self, rng: np.random.Generator) -> np.ndarray:
        k = self.dim
        return self.combine(rng.standard_normal(k) + 1j * rng.standard_normal(k))

    def samples(self, count: int, seed: int = DEFAULT_SEED) -> list:
        """Basis elements followed by ``count`` seeded random combinations."""
        rng = np.random.default_rng(seed)
        return list(self.basis) + [self.random_element(rng) for _ in range(count if self.dim else 0)]


def derivation_system(A: LeibnizAlgebra) -> np.ndarray:
    """Coefficient matrix of the derivation equations in the unknowns ``D[p, q]``.

    Row ``(i, j, k)`` is the ``e_k`` coordinate of
    ``D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j]``; unknowns are row-major.
    """
    n = A.dim
    c = A.c
    E = np.eye(n)
    M = (np.einsum("kp,ijq->ijkpq", E, c)
         - np.einsum("qi,pjk->ijkpq", E, c)
         - np.einsum("qj,ipk->ijkpq", E, c))
    return M.reshape(n ** 3, n ** 2)


def _echelon(K: np.ndarray, tol: Tolerance) -> np.ndarray:
    """Reduced echelon basis of the column span of ``K``.

    Pivot unknowns are chosen greedily in index order; each returned column
    is 1 at its own pivot and 0 at the others.  An orthonormal SVD basis
    mixes grading and nilpotent directions arbitrarily, which produces
    basis derivations with spectra squeezed below ``eps_cluster``.
    """
    r = K.shape[1]
    pivots: list = []
    for u in range(K.shape[0]):
        if len(pivots) == r:
            break
        trial = K[pivots + [u], :]
        # K has orthonormal columns, so singular values of row subsets are <= 1
        if np.linalg.svd(trial, compute_uv=False)[-1] > 1e-6:
            pivots.append(u)
    B = K @ np.linalg.inv(K[pivots, :])
    B[np.abs(B) < tol.eps_rank] = 0.0
    return B


def derivation_space(A: LeibnizAlgebra, tol: Tolerance = DEFAULT_TOL) -> DerivationSpace:
    """Basis of all derivations, in reduced echelon form over the unknowns ``D[p, q]``."""
    n = A.dim
    K = kernel(derivation_system(A), tol)
    if K.shape[1]:
        K = _echelon(K, tol)
    return DerivationSpace(A, tuple(K[:, t].reshape(n, n).copy() for t in range(K.shape[1])))


# ---------------------------------------------------------------------------
# grading by characteristic subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GradingReport:
    """Bracket containment between characteristic subspaces of a map.

    ``pairs`` holds ``(a, b, target, defect)`` with block indices ``a, b``,
    the block index of the combined eigenvalue (or ``None`` when it is not in
    the spectrum) and the distance of ``[L_a, L_b]`` from that target.
    """

    decomposition: CharDecomposition
    pairs: tuple
    max_defect: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.max_defect <= self.tolerance


def _grading(A: LeibnizAlgebra, M, combine, tol: Tolerance) -> GradingReport:
    decomp = generalized_eigenspaces(M, tol)
    projectors = decomp.coordinate_projectors()
    n = A.dim
    pairs, worst = [], 0.0
    for a, (alpha, Ba) in enumerate(zip(decomp.eigenvalues, decomp.blocks)):
        for b, (beta, Bb) in enumerate(zip(decomp.eigenvalues, decomp.blocks)):
            X = A.bracket_many(Ba, Bb).reshape(n, -1)
            target_value = combine(alpha, beta)
            radius = tol.eps_cluster * max(1.0, abs(alpha) + abs(beta))
            t = decomp.index_of(target_value, radius)
            R = X if t is None else X - projectors[t] @ X
            d = float(np.linalg.norm(R, axis=0).max()) if R.size else 0.0
            pairs.append((a, b, t, d))
            worst = max(worst, d)
    return GradingReport(decomp, tuple(pairs), worst, tol.eps_residual)


def grading_check(A: LeibnizAlgebra, D, tol: Tolerance = DEFAULT_TOL) -> GradingReport:
    """``[L_alpha, L_beta]`` lies in ``L_(alpha+beta)``, or vanishes if that is no eigenvalue."""
    return _grading(A, _map(A, D), lambda x, y: x + y, tol)


# ---------------------------------------------------------------------------
# additive Jordan-Chevalley
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdditiveJC:
    d0: np.ndarray
    t: np.ndarray
    residuals: dict = field(default_factory=dict)

    def within(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return all(v <= tol.eps_residual for v in self.residuals.values())


def additive_jc(A: LeibnizAlgebra, D, tol: Tolerance = DEFAULT_TOL) -> AdditiveJC:
    """``D = D0 + T`` with ``D0`` a diagonalizable and ``T`` a nilpotent derivation.

    ``D0`` multiplies each characteristic subspace of ``D`` by its eigenvalue.
    The residuals record every defining property plus the distance to the
    semisimple part returned by :func:`endo_jordan_chevalley`.
    """
    D = _require_derivation(A, D, tol)
    n = A.dim
    decomp = generalized_eigenspaces(D, tol)
    # D0 = sum rho_i P_i, written as D - T to keep simple eigenvalues exact
    t = nilpotent_part(D, decomp, decomp.coordinate_projectors())
    d0 = D - t
    reference = endo_jordan_chevalley(D, tol)
    residuals = {
        "reconstruction": norm(d0 + t - D),
        "commutator": norm(d0 @ t - t @ d0),
        "derivation_d0": derivation_defect(A, d0),
        "derivation_t": derivation_defect(A, t),
        "nilpotency_t": norm(np.linalg.matrix_power(t, n)),
        "uniqueness": norm(d0 - reference.semisimple),
    }
    return AdditiveJC(d0, t, residuals)


# ---------------------------------------------------------------------------
# nonsingular derivations and characteristic nilpotency
# ---------------------------------------------------------------------------


def _is_nonsingular(D: np.ndarray, tol: Tolerance) -> bool:
    s = np.linalg.svd(D, compute_uv=False)
    return bool(s[0] > 0 and s[-1] > tol.eps_rank * s[0])


@dataclass(frozen=True)
class NonsingularReport:
    found_nonsingular: bool
    witness: np.ndarray | None
    algebra_nilpotent: bool
    derivation_dim: int
    samples_tested: int
    certificate: str = "sampled"


def nonsingular_derivation_analysis(A: LeibnizAlgebra, tol: Tolerance = DEFAULT_TOL,
                                    samples: int = 200, seed: int = DEFAULT_SEED,
                                    space: DerivationSpace | None = None) -> NonsingularReport:
    """Look for an invertible derivation and test that its existence forces nilpotency.

    Candidates are the basis derivations and ``samples`` seeded random
    combinations.  Raises :class:`TheoremViolation` if a nonsingular
    derivation is found on a non-nilpotent algebra.
    """
    space = space or derivation_space(A, tol)
    candidates = space.samples(samples, seed)
    witness = next((D for D in candidates if _is_nonsingular(D, tol)), None)
    nilpotent = lower_central_series(A).reaches_zero
    if witness is not None and not nilpotent:
        raise TheoremViolation("nonsingular derivation found on a non-nilpotent algebra")
    return NonsingularReport(witness is not None, witness, nilpotent, space.dim, len(candidates))


@dataclass(frozen=True)
class CharNilpotency:
    value: bool
    samples_tested: int
    counterexample: np.ndarray | None = None
    certificate: str = "sampled"

    def __bool__(self):
        return self.value


def characteristically_nilpotent(A: LeibnizAlgebra, tol: Tolerance = DEFAULT_TOL,
                                 samples: int = 200, seed: int = DEFAULT_SEED,
                                 space: DerivationSpace | None = None) -> CharNilpotency:
    """Whether every derivation is nilpotent, certified on a seeded sample.

    A non-nilpotent sample is a proof of ``False``; ``True`` rests on the
    random combinations being generic.
    """
    space = space or derivation_space(A, tol)
    candidates = space.samples(samples, seed)
    for D in candidates:
        if not is_nilpotent_matrix(D, tol):
            return CharNilpotency(False, len(candidates), D, certificate="witness")
    return CharNilpotency(True, len(candidates))


# ---------------------------------------------------------------------------
# ideals and derivations
# ---------------------------------------------------------------------------


def ideal_plus_image(A: LeibnizAlgebra, J: Subspace, D, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """``J + D(J)``, checked to be a two-sided ideal again."""
    chk = is_ideal(A, J, "two_sided", tol)
    if not chk.ok:
        raise NotAnIdeal(f"input subspace is not a two-sided ideal (defect {chk.residual:.3e})")
    D = _require_derivation(A, D, tol)
    out = Subspace(A, np.hstack([J.basis, D @ J.basis]))
    after = is_ideal(A, out, "two_sided", tol)
    if not after.ok:
        raise TheoremViolation(f"J + D(J) is not an ideal (defect {after.residual:.3e})")
    return out


def invariance_check(A: LeibnizAlgebra, J: Subspace, D, tol: Tolerance = DEFAULT_TOL) -> Check:
    """``D(J) ⊆ J``, reported with the containment defect."""
    D = _map(A, D)
    r = J.defect(D @ J.basis)
    return Check(r <= tol.eps_residual, r)


def extends_from_quotient(A: LeibnizAlgebra, J: Subspace, Dbar, tol: Tolerance = DEFAULT_TOL,
                          space: DerivationSpace | None = None) -> Check:
    """Whether a map on ``A / J`` is induced by some derivation of ``A``.

    ``Dbar`` is written in the quotient basis returned by :func:`quotient`.
    Solves ``pi D = Dbar pi`` over the derivation space in the least-squares
    sense and reports the residual.
    """
    _, proj = quotient(A, J, tol)
    Dbar = as_matrix(Dbar, square=True)
    if Dbar.shape[0] != proj.shape[0]:
        raise DimensionMismatch(f"quotient has dimension {proj.shape[0]}, map has {Dbar.shape[0]}")
    space = space or derivation_space(A, tol)
    target = (Dbar @ proj).ravel()
    if space.dim == 0:
        r = norm(target)
        return Check(r <= tol.eps_residual, r)
    G = np.stack([(proj @ D).ravel() for D in space.basis], axis=1)
    coeffs, *_ = np.linalg.lstsq(G, target, rcond=None)
    r = norm(G @ coeffs - target)
    return Check(r <= tol.eps_residual, r)
