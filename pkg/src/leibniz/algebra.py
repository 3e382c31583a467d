"""Leibniz algebras given by structure constants.

The bracket is ``[e_i, e_j] = sum_k c[i, j, k] e_k`` (0-based indices).
Linear maps are matrices acting on column vectors, so column ``j`` of a
map ``D`` holds the coordinates of ``D(e_j)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, NamedTuple, Sequence

import numpy as np

from .errors import DimensionMismatch, NotAnIdeal, NotLeibniz
from .linalg import DEFAULT_TOL, Tolerance, as_matrix, is_nilpotent_matrix, kernel, orth

__all__ = [
    "LeibnizAlgebra",
    "Subspace",
    "SeriesReport",
    "Check",
    "Violation",
    "check_leibniz",
    "leibniz_residuals",
    "derived_series",
    "lower_central_series",
    "right_annihilator",
    "l_ann_ideal",
    "is_ideal",
    "quotient",
    "engel_check",
    "random_vector",
]

DEFAULT_SEED = 0xD5


class Check(NamedTuple):
    ok: bool
    residual: float


class Violation(NamedTuple):
    i: int
    j: int
    k: int
    residual: float


def random_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    """Vector with unit-normal real and imaginary parts."""
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def leibniz_residuals(c: np.ndarray) -> np.ndarray:
    """``||[[e_i,e_j],e_k] - [[e_i,e_k],e_j] - [e_i,[e_j,e_k]]||`` for every triple."""
    lhs = np.einsum("ijl,lkm->ijkm", c, c)
    swap = np.einsum("ikl,ljm->ijkm", c, c)
    inner = np.einsum("jkl,ilm->ijkm", c, c)
    return np.linalg.norm(lhs - swap - inner, axis=-1)


class LeibnizAlgebra:
    """Finite-dimensional complex algebra satisfying the (right) Leibniz identity.

    Instances are immutable.  The identity is checked at construction unless
    ``validate=False`` is passed, which keeps deliberately invalid tensors
    expressible.
    """

    def __init__(self, c, labels: Sequence[str] | None = None, *, validate: bool = True,
                 tol: Tolerance = DEFAULT_TOL):
        c = np.array(c, dtype=complex)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]) or c.shape[0] == 0:
            raise DimensionMismatch(f"structure tensor must have shape (n, n, n) with n > 0, got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("structure tensor has non-finite entries")
        c.setflags(write=False)
        self._c = c
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != self.dim:
                raise DimensionMismatch(f"{len(labels)} labels for dimension {self.dim}")
        self.labels = labels
        if validate:
            bad = check_leibniz(self, tol)
            if bad:
                worst = max(bad, key=lambda v: v.residual)
                raise NotLeibniz(
                    f"Leibniz identity fails at {len(bad)} triples; worst {worst[:3]} "
                    f"residual {worst.residual:.3e}"
                )

    @classmethod
    def from_brackets(cls, dim: int, brackets, **kwargs) -> "LeibnizAlgebra":
        """Build from ``{(i, j): {k: coeff}}`` or an iterable of ``(i, j, k, coeff)``."""
        c = np.zeros((dim, dim, dim), dtype=complex)
        if isinstance(brackets, dict):
            items = [(i, j, k, v) for (i, j), row in brackets.items() for k, v in row.items()]
        else:
            items = list(brackets)
        for i, j, k, v in items:
            c[i, j, k] += v
        return cls(c, **kwargs)

    @property
    def dim(self) -> int:
        return self._c.shape[0]

    @property
    def c(self) -> np.ndarray:
        return self._c

    def basis_labels(self) -> tuple:
        return self.labels or tuple(f"e{i + 1}" for i in range(self.dim))

    def _vec(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.dim,):
            raise DimensionMismatch(f"expected a vector of length {self.dim}, got shape {x.shape}")
        return x

    def bracket(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", self._vec(x), self._vec(y), self._c)

    def bracket_many(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """All brackets of columns: result[:, a, b] = [X[:, a], Y[:, b]]."""
        return np.einsum("ia,jb,ijk->kab", X, Y, self._c)

    def right_mult(self, x) -> np.ndarray:
        """Matrix of ``R_x: z -> [z, x]``."""
        return np.einsum("j,ijk->ki", self._vec(x), self._c)

    def left_mult(self, x) -> np.ndarray:
        """Matrix of ``z -> [x, z]``."""
        return np.einsum("i,ijk->kj", self._vec(x), self._c)

    def transform(self, g) -> "LeibnizAlgebra":
        """Structure constants in the basis given by the columns of ``g``."""
        g = as_matrix(g, square=True)
        ginv = np.linalg.inv(g)
        c = np.einsum("ia,jb,ijk,ck->abc", g, g, self._c, ginv)
        return LeibnizAlgebra(c, self.labels, validate=False)

    def is_lie(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        sym = self._c + self._c.transpose(1, 0, 2)
        return float(np.abs(sym).max()) <= tol.eps_residual

    @property
    def full(self) -> "Subspace":
        return Subspace(self, np.eye(self.dim, dtype=complex))

    @property
    def zero(self) -> "Subspace":
        return Subspace(self, np.zeros((self.dim, 0), dtype=complex))

    def __eq__(self, other):
        return isinstance(other, LeibnizAlgebra) and np.array_equal(self._c, other._c)

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        return f"LeibnizAlgebra(dim={self.dim})"


class Subspace:
    """Column span of a basis matrix inside an ambient algebra.

    The stored basis is always orthonormal.
    """

    def __init__(self, ambient: LeibnizAlgebra, basis, tol: Tolerance = DEFAULT_TOL):
        B = np.asarray(basis, dtype=complex)
        if B.ndim == 1:
            B = B[:, None]
        if B.size == 0:
            B = np.zeros((ambient.dim, 0), dtype=complex)
        if B.shape[0] != ambient.dim:
            raise DimensionMismatch(f"basis has {B.shape[0]} rows, ambient dimension is {ambient.dim}")
        B = as_matrix(B)
        self.ambient = ambient
        # spans of bracket images carry their own scale; relative cutoff is enough
        self.basis = orth(B, tol) if B.shape[1] else B.astype(complex)
        self.basis.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def defect(self, vectors) -> float:
        """Largest distance of the given columns from this subspace."""
        V = np.asarray(vectors, dtype=complex).reshape(self.ambient.dim, -1)
        if V.shape[1] == 0:
            return 0.0
        R = V - self.basis @ (self.basis.conj().T @ V)
        return float(np.linalg.norm(R, axis=0).max())

    def contains(self, other: "Subspace | np.ndarray", tol: Tolerance = DEFAULT_TOL) -> bool:
        V = other.basis if isinstance(other, Subspace) else other
        return self.defect(V) <= tol.eps_residual

    def equals(self, other: "Subspace", tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.dim == other.dim and self.contains(other, tol) and other.contains(self, tol)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient, np.hstack([self.basis, other.basis]))

    def image(self, D) -> "Subspace":
        return Subspace(self.ambient, as_matrix(D) @ self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient.dim})"


def _bracket_span(A: LeibnizAlgebra, X: np.ndarray, Y: np.ndarray) -> Subspace:
    prods = A.bracket_many(X, Y).reshape(A.dim, -1)
    return Subspace(A, _significant(prods))


def _significant(V: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    # brackets of orthonormal vectors: drop columns at rounding level before spanning
    if V.shape[1] == 0:
        return V
    keep = np.linalg.norm(V, axis=0) > tol.eps_residual * 1e-3
    return V[:, keep]


def check_leibniz(A: LeibnizAlgebra, tol: Tolerance = DEFAULT_TOL) -> list:
    """Basis triples violating the Leibniz identity, as :class:`Violation` tuples."""
    res = leibniz_residuals(A.c)
    idx = np.argwhere(res > tol.eps_residual)
    return [Violation(int(i), int(j), int(k), float(res[i, j, k])) for i, j, k in idx]


@dataclass(frozen=True)
class SeriesReport:
    kind: Literal["derived", "lower_central"]
    terms: tuple
    stabilized: bool

    @property
    def dims(self) -> list:
        return [t.dim for t in self.terms]

    @property
    def terminal_dim(self) -> int:
        return self.terms[-1].dim

    @property
    def reaches_zero(self) -> bool:
        return self.terminal_dim == 0

    @property
    def length(self) -> int:
        """Number of bracket steps taken (nilpotency class when it reaches zero)."""
        return len(self.terms) - 1


def _series(A: LeibnizAlgebra, kind: str) -> SeriesReport:
    terms = [A.full]
    while terms[-1].dim > 0:
        prev = terms[-1].basis
        right = prev if kind == "derived" else np.eye(A.dim, dtype=complex)
        nxt = _bracket_span(A, prev, right)
        if nxt.dim >= terms[-1].dim:
            return SeriesReport(kind, tuple(terms), True)
        terms.append(nxt)
    return SeriesReport(kind, tuple(terms), False)


def derived_series(A: LeibnizAlgebra) -> SeriesReport:
    """``L^(1) = L``, ``L^(k+1) = [L^(k), L^(k)]`` until zero or stabilization."""
    return _series(A, "derived")


def lower_central_series(A: LeibnizAlgebra) -> SeriesReport:
    """``L^1 = L``, ``L^(k+1) = [L^k, L]`` until zero or stabilization."""
    return _series(A, "lower_central")


def is_nilpotent(A: LeibnizAlgebra) -> bool:
    return lower_central_series(A).reaches_zero


def is_solvable(A: LeibnizAlgebra) -> bool:
    return derived_series(A).reaches_zero


def right_annihilator(A: LeibnizAlgebra, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """``{x : [L, x] = 0}``, the kernel of ``x -> ([e_1, x], ..., [e_n, x])``."""
    n = A.dim
    # row block i is the matrix of x -> [e_i, x]
    stacked = np.concatenate([A.c[i].T for i in range(n)], axis=0)
    if not np.any(stacked):
        return A.full
    return Subspace(A, kernel(stacked, tol))


def _ideal_closure(A: LeibnizAlgebra, S: Subspace) -> Subspace:
    E = np.eye(A.dim, dtype=complex)
    for _ in range(A.dim + 1):
        if S.dim == 0:
            return S
        left = A.bracket_many(E, S.basis).reshape(A.dim, -1)
        right = A.bracket_many(S.basis, E).reshape(A.dim, -1)
        grown = Subspace(A, np.hstack([S.basis, _significant(left), _significant(right)]))
        if grown.dim == S.dim:
            return S
        S = grown
    return S


def l_ann_ideal(A: LeibnizAlgebra) -> Subspace:
    """Two-sided ideal generated by all squares ``[x, x]``.

    Squares span the same space as ``[e_i, e_i]`` and ``[e_i, e_j] + [e_j, e_i]``.
    """
    c = A.c
    sym = (c + c.transpose(1, 0, 2)).reshape(-1, A.dim).T
    return _ideal_closure(A, Subspace(A, _significant(sym)))


def ideal_defect(A: LeibnizAlgebra, S: Subspace, side: str = "two_sided") -> float:
    E = np.eye(A.dim, dtype=complex)
    parts = []
    if side in ("right", "two_sided"):
        parts.append(A.bracket_many(S.basis, E).reshape(A.dim, -1))
    if side in ("left", "two_sided"):
        parts.append(A.bracket_many(E, S.basis).reshape(A.dim, -1))
    if not parts:
        raise ValueError(f"side must be 'left', 'right' or 'two_sided', got {side!r}")
    return S.defect(np.hstack(parts))


def is_ideal(A: LeibnizAlgebra, S: Subspace, side: str = "two_sided",
             tol: Tolerance = DEFAULT_TOL) -> Check:
    """``[S, L] ⊆ S`` (right), ``[L, S] ⊆ S`` (left) or both."""
    r = ideal_defect(A, S, side)
    return Check(r <= tol.eps_residual, r)


def quotient(A: LeibnizAlgebra, J: Subspace, tol: Tolerance = DEFAULT_TOL):
    """Quotient algebra ``A / J`` on the orthogonal complement of ``J``.

    Returns ``(quotient_algebra, projection)`` where ``projection`` is the
    ``(n - k) x n`` matrix of the canonical map.
    """
    chk = is_ideal(A, J, "two_sided", tol)
    if not chk.ok:
        raise NotAnIdeal(f"subspace is not a two-sided ideal (defect {chk.residual:.3e})")
    if J.dim == 0:
        U = np.eye(A.dim, dtype=complex)
    else:
        U = kernel(J.basis.conj().T, tol)
    proj = U.conj().T
    if U.shape[1] == 0:
        return None, proj
    prods = A.bracket_many(U, U)  # (n, m, m)
    c = np.einsum("pk,kab->abp", proj, prods)
    return LeibnizAlgebra(c, validate=True, tol=tol), proj


def engel_check(A: LeibnizAlgebra, tol: Tolerance = DEFAULT_TOL, samples: int = 20,
                seed: int = DEFAULT_SEED) -> bool:
    """Whether ``R_x`` is nilpotent for every basis vector and ``samples`` random ``x``."""
    rng = np.random.default_rng(seed)
    E = np.eye(A.dim, dtype=complex)
    xs = [E[i] for i in range(A.dim)] + [random_vector(rng, A.dim) for _ in range(samples)]
    return all(is_nilpotent_matrix(A.right_mult(x), tol) for x in xs)
