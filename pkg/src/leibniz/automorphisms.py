"""Automorphisms: validation, the product decomposition ``A = A0 exp(T)``, and
numerical verifiers for the binomial expansions and the prime-order criterion.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .algebra import DEFAULT_SEED, Check, LeibnizAlgebra, lower_central_series, random_vector
from .derivations import GradingReport, _grading, derivation_defect
from .errors import (
    DimensionMismatch,
    NotAnAutomorphism,
    NotNilpotent,
    NotUnipotentShift,
    OrderMismatch,
    TheoremViolation,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    endo_jordan_chevalley,
    exp_nilpotent,
    generalized_eigenspaces,
    log_unipotent,
    nilpotency_defect,
    nilpotent_part,
    norm,
)

__all__ = [
    "MultiplicativeJC",
    "PkReport",
    "PrimeOrderReport",
    "automorphism_defect",
    "check_automorphism",
    "pk_expansion_check",
    "aut_grading_check",
    "multiplicative_jc",
    "prime_order_fixed_point_analysis",
]


def _map(A_alg: LeibnizAlgebra, A) -> np.ndarray:
    A = as_matrix(A)
    if A.shape != (A_alg.dim, A_alg.dim):
        raise DimensionMismatch(f"expected a {A_alg.dim}x{A_alg.dim} map, got shape {A.shape}")
    return A


def automorphism_defect(A_alg: LeibnizAlgebra, A) -> float:
    """``max_{i,j} ||A[e_i,e_j] - [A e_i, A e_j]||``."""
    A = _map(A_alg, A)
    c = A_alg.c
    r = np.einsum("kl,ijl->ijk", A, c) - np.einsum("ai,bj,abk->ijk", A, A, c)
    return float(np.linalg.norm(r, axis=-1).max())


def _invertible(A: np.ndarray, tol: Tolerance) -> bool:
    s = np.linalg.svd(A, compute_uv=False)
    return bool(s[0] > 0 and s[-1] > tol.eps_rank * s[0])


def check_automorphism(A_alg: LeibnizAlgebra, A, tol: Tolerance = DEFAULT_TOL) -> Check:
    A = _map(A_alg, A)
    r = automorphism_defect(A_alg, A)
    return Check(_invertible(A, tol) and r <= tol.eps_residual, r)


def _require_automorphism(A_alg, A, tol):
    A = _map(A_alg, A)
    chk = check_automorphism(A_alg, A, tol)
    if not chk.ok:
        raise NotAnAutomorphism(f"map is not an automorphism (defect {chk.residual:.3e})")
    return A


@dataclass(frozen=True)
class PkReport:
    defects: dict
    pairs: int

    @property
    def max_defect(self) -> float:
        return max(self.defects.values(), default=0.0)


def pk_expansion(A_alg: LeibnizAlgebra, P: np.ndarray, k: int, x, y) -> np.ndarray:
    """``sum_{i<=k} sum_{j<=i} C(k,i) C(i,j) [P^(k-j) x, P^(k-i+j) y]``."""
    px = [np.asarray(x, dtype=complex)]
    py = [np.asarray(y, dtype=complex)]
    for _ in range(k):
        px.append(P @ px[-1])
        py.append(P @ py[-1])
    out = np.zeros(A_alg.dim, dtype=complex)
    for i in range(k + 1):
        for j in range(i + 1):
            out += comb(k, i) * comb(i, j) * A_alg.bracket(px[k - j], py[k - i + j])
    return out


def pk_expansion_check(A_alg: LeibnizAlgebra, P, k_max: int, tol: Tolerance = DEFAULT_TOL,
                       pairs: int = 50, seed: int = DEFAULT_SEED) -> PkReport:
    """Compare ``P^k([x, y])`` with its double binomial expansion for ``k = 1..k_max``.

    ``P`` must be nilpotent with ``P + I`` an automorphism.  Defects are
    taken over ``pairs`` seeded random vector pairs, scaled to unit norm.
    """
    P = _map(A_alg, P)
    if nilpotency_defect(P) > tol.eps_residual:
        raise NotNilpotent("P is not nilpotent")
    n = A_alg.dim
    if not check_automorphism(A_alg, P + np.eye(n), tol).ok:
        raise NotUnipotentShift("P + I is not an automorphism")
    rng = np.random.default_rng(seed)
    vecs = []
    for _ in range(pairs):
        x, y = random_vector(rng, n), random_vector(rng, n)
        vecs.append((x / norm(x), y / norm(y)))
    defects = {}
    for k in range(1, k_max + 1):
        Pk = np.linalg.matrix_power(P, k)
        defects[k] = max(
            norm(Pk @ A_alg.bracket(x, y) - pk_expansion(A_alg, P, k, x, y)) for x, y in vecs
        )
    return PkReport(defects, pairs)


def aut_grading_check(A_alg: LeibnizAlgebra, A, tol: Tolerance = DEFAULT_TOL) -> GradingReport:
    """``[L_alpha, L_beta]`` lies in ``L_(alpha*beta)``, or vanishes if that is no eigenvalue."""
    return _grading(A_alg, _map(A_alg, A), lambda x, y: x * y, tol)


@dataclass(frozen=True)
class MultiplicativeJC:
    a0: np.ndarray
    t: np.ndarray
    eigenvalues: tuple = ()
    multiplicities: tuple = ()
    residuals: dict = field(default_factory=dict)

    def within(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return all(v <= tol.eps_residual for v in self.residuals.values())


def multiplicative_jc(A_alg: LeibnizAlgebra, A, tol: Tolerance = DEFAULT_TOL) -> MultiplicativeJC:
    """``A = A0 exp(T)`` with ``A0`` a diagonalizable automorphism, ``T`` a nilpotent
    derivation and ``A0 T = T A0``.

    ``A0`` scales each characteristic subspace of ``A`` by its eigenvalue,
    ``T = log(A0^{-1} A)`` through the finite series.
    """
    A = _require_automorphism(A_alg, A, tol)
    n = A_alg.dim
    decomp = generalized_eigenspaces(A, tol)
    projectors = decomp.coordinate_projectors()
    # A0 = sum rho_i P_i and A0^{-1} A = I + sum rho_i^{-1} (A - rho_i I) P_i,
    # where one-dimensional blocks contribute nothing
    a0 = A - nilpotent_part(A, decomp, projectors)
    q = np.eye(n, dtype=complex)
    for rho, m, proj in zip(decomp.eigenvalues, decomp.multiplicities, projectors):
        if m > 1:
            q += (A - rho * np.eye(n)) @ proj / rho
    t = log_unipotent(q, tol)
    reference = endo_jordan_chevalley(A, tol)
    residuals = {
        "reconstruction": norm(A - a0 @ exp_nilpotent(t, tol)),
        "commutator": norm(a0 @ t - t @ a0),
        "derivation_t": derivation_defect(A_alg, t),
        "nilpotency_t": norm(np.linalg.matrix_power(t, n)),
        "automorphism_a0": automorphism_defect(A_alg, a0),
        "uniqueness": norm(a0 - reference.semisimple),
    }
    return MultiplicativeJC(a0, t, decomp.eigenvalues, decomp.multiplicities, residuals)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class PrimeOrderReport:
    p: int
    order_residual: float
    eigenvalues: tuple
    fixed_point_free: bool
    primitive_roots: bool
    algebra_nilpotent: bool

    @property
    def hypotheses_hold(self) -> bool:
        return self.fixed_point_free and self.primitive_roots


def prime_order_fixed_point_analysis(A_alg: LeibnizAlgebra, A, p: int,
                                     tol: Tolerance = DEFAULT_TOL) -> PrimeOrderReport:
    """Check ``A^p = I``, absence of eigenvalue 1, and that the spectrum consists of
    primitive ``p``-th roots of unity; when all hold the algebra must be nilpotent.
    """
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    A = _require_automorphism(A_alg, A, tol)
    n = A_alg.dim
    order_residual = norm(np.linalg.matrix_power(A, p) - np.eye(n))
    if order_residual > tol.eps_residual:
        raise OrderMismatch(f"A^{p} != I (residual {order_residual:.3e})")
    ev = generalized_eigenspaces(A, tol).eigenvalues
    eps = tol.eps_cluster
    fixed_point_free = all(abs(lam - 1) > eps for lam in ev)
    primitive = all(
        abs(lam ** p - 1) <= eps and all(abs(lam ** k - 1) > eps for k in range(1, p)) for lam in ev
    )
    nilpotent = lower_central_series(A_alg).reaches_zero
    if fixed_point_free and primitive and not nilpotent:
        raise TheoremViolation("fixed-point-free automorphism of prime order on a non-nilpotent algebra")
    return PrimeOrderReport(p, order_residual, ev, fixed_point_free, primitive, nilpotent)
