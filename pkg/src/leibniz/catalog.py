"""Built-in fixture algebras, addressable by stable string ids."""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field

import numpy as np

from .algebra import LeibnizAlgebra
from .errors import ParameterMismatch, UnknownId

__all__ = [
    "CatalogEntry",
    "RemarkParameterWarning",
    "abelian",
    "null2",
    "aff1",
    "leib2_solvable",
    "heisenberg",
    "sl2",
    "sl2_module",
    "filiform_leibniz",
    "remark_family",
    "nonliftable_example",
    "catalog_ids",
    "stock",
    "entries",
]


class RemarkParameterWarning(UserWarning):
    """No pair ``alpha_i alpha_j != 0``; characteristic nilpotency is not claimed."""


@dataclass(frozen=True)
class CatalogEntry:
    """A fixture algebra with hand-derived facts.

    ``facts`` keys: ``is_nilpotent``, ``is_solvable``, ``is_lie``,
    ``characteristically_nilpotent``, ``nonsingular_derivation`` (booleans)
    and ``radical``, ``nilradical`` (basis index lists, when known).
    """

    id: str
    algebra: LeibnizAlgebra
    params: dict = field(default_factory=dict)
    facts: dict = field(default_factory=dict)
    summary: str = ""

    def subspace(self, name: str) -> np.ndarray | None:
        idx = self.facts.get(name)
        if idx is None:
            return None
        return np.eye(self.algebra.dim, dtype=complex)[:, list(idx)]


def _table(dim, rows, labels=None) -> LeibnizAlgebra:
    c = np.zeros((dim, dim, dim), dtype=complex)
    for (i, j, k), v in rows.items():
        c[i, j, k] = v
    return LeibnizAlgebra(c, labels)


def abelian(n: int) -> LeibnizAlgebra:
    return LeibnizAlgebra(np.zeros((n, n, n)))


def null2() -> LeibnizAlgebra:
    """``[e1, e1] = e2``."""
    return _table(2, {(0, 0, 1): 1})


def aff1() -> LeibnizAlgebra:
    """Two-dimensional non-abelian Lie algebra ``[e1, e2] = e1``."""
    return _table(2, {(0, 1, 0): 1, (1, 0, 0): -1})


def leib2_solvable() -> LeibnizAlgebra:
    """Non-Lie solvable algebra ``[e1, e2] = e1`` with all other products zero."""
    return _table(2, {(0, 1, 0): 1})


def heisenberg() -> LeibnizAlgebra:
    return _table(3, {(0, 1, 2): 1, (1, 0, 2): -1})


def sl2() -> LeibnizAlgebra:
    """Basis ``h, e, f``."""
    rows = {(0, 1, 1): 2, (1, 0, 1): -2, (0, 2, 2): -2, (2, 0, 2): 2, (1, 2, 0): 1, (2, 1, 0): -1}
    return _table(3, rows, ["h", "e", "f"])


def sl2_module() -> LeibnizAlgebra:
    """``sl2`` plus its two-dimensional irreducible module ``V`` as right annihilator.

    ``[v, x] = -x.v`` for ``v`` in ``V`` and ``x`` in ``sl2``; ``V`` is the
    solvable radical and ``L^ann``.
    """
    rows = {(0, 1, 1): 2, (1, 0, 1): -2, (0, 2, 2): -2, (2, 0, 2): 2, (1, 2, 0): 1, (2, 1, 0): -1}
    rows.update({(3, 0, 3): -1, (4, 0, 4): 1, (4, 1, 3): -1, (3, 2, 4): -1})
    return _table(5, rows, ["h", "e", "f", "v1", "v2"])


def filiform_leibniz(n: int) -> LeibnizAlgebra:
    """``[e_i, e_1] = e_(i+1)`` for ``1 <= i < n``; graded by ``diag(1, ..., n)``."""
    if n < 2:
        raise ParameterMismatch(f"filiform_leibniz needs n >= 2, got {n}")
    return _table(n, {(i, 0, i + 1): 1 for i in range(n - 1)})


def remark_family(n: int, alphas, theta=0.0) -> LeibnizAlgebra:
    """Characteristically nilpotent family on ``e_0, ..., e_n`` (dimension ``n + 1``).

    ``alphas`` lists ``alpha_3, ..., alpha_n``.  Products::

        [e_0, e_0] = e_2,   [e_i, e_0] = e_(i+1)                    (1 <= i <= n-1)
        [e_0, e_1] = alpha_3 e_3 + ... + alpha_(n-1) e_(n-1) + theta e_n
        [e_i, e_1] = alpha_3 e_(i+2) + ... + alpha_(n+1-i) e_n       (1 <= i <= n-2)
    """
    alphas = list(alphas)
    if n < 5:
        raise ParameterMismatch(f"remark_family needs n >= 5, got {n}")
    if len(alphas) != n - 2:
        raise ParameterMismatch(f"expected {n - 2} alphas (alpha_3..alpha_{n}), got {len(alphas)}")
    nonzero = [a for a in alphas if a != 0]
    if len(nonzero) < 2:
        warnings.warn(
            "no alpha_i * alpha_j != 0 with i != j; the algebra need not be characteristically nilpotent",
            RemarkParameterWarning,
            stacklevel=2,
        )
    alpha = {s: complex(a) for s, a in zip(range(3, n + 1), alphas)}
    d = n + 1
    c = np.zeros((d, d, d), dtype=complex)
    c[0, 0, 2] = 1
    for i in range(1, n):
        c[i, 0, i + 1] = 1
    for s in range(3, n):
        c[0, 1, s] = alpha[s]
    c[0, 1, n] += theta
    for i in range(1, n - 1):
        for s in range(3, n + 2 - i):
            c[i, 1, i + s - 1] += alpha[s]
    return LeibnizAlgebra(c, [f"e{i}" for i in range(d)])


def nonliftable_example(m: int) -> LeibnizAlgebra:
    """``[e_i, e_i] = f_i`` and ``[e_1, e_i] = f_i`` on ``e_1..e_m, f_1..f_m``."""
    if m < 2:
        raise ParameterMismatch(f"nonliftable_example needs m >= 2, got {m}")
    rows = {}
    for i in range(m):
        rows[(i, i, m + i)] = 1
        rows[(0, i, m + i)] = 1
    labels = [f"e{i + 1}" for i in range(m)] + [f"f{i + 1}" for i in range(m)]
    return _table(2 * m, rows, labels)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

_NIL = dict(is_nilpotent=True, is_solvable=True)


def _abelian_entry(n):
    return CatalogEntry(
        f"abelian-{n}", abelian(n), {"n": n},
        dict(_NIL, is_lie=True, characteristically_nilpotent=False, nonsingular_derivation=True,
             radical=list(range(n)), nilradical=list(range(n))),
        f"{n}-dim abelian",
    )


def _filiform_entry(n):
    return CatalogEntry(
        f"filiform-leibniz-{n}", filiform_leibniz(n), {"n": n},
        dict(_NIL, is_lie=False, characteristically_nilpotent=False, nonsingular_derivation=True,
             radical=list(range(n)), nilradical=list(range(n))),
        f"[e_i,e_1]=e_(i+1), dim {n}",
    )


def _remark_entry(n):
    return CatalogEntry(
        f"remark-{n}", remark_family(n, [1] * (n - 2), 0), {"n": n, "alphas": [1] * (n - 2), "theta": 0},
        dict(_NIL, is_lie=False, characteristically_nilpotent=True, nonsingular_derivation=False,
             radical=list(range(n + 1)), nilradical=list(range(n + 1))),
        f"characteristically nilpotent family, n={n}, alphas=1, theta=0",
    )


def _nonliftable_entry(m):
    return CatalogEntry(
        f"nonliftable-{m}", nonliftable_example(m), {"m": m},
        dict(_NIL, is_lie=False, characteristically_nilpotent=False, nonsingular_derivation=True,
             radical=list(range(2 * m)), nilradical=list(range(2 * m)), l_ann=list(range(m, 2 * m))),
        f"quotient derivations need not lift, m={m}",
    )


_FIXED = {
    "null2": lambda: CatalogEntry(
        "null2", null2(), {},
        dict(_NIL, is_lie=False, characteristically_nilpotent=False, nonsingular_derivation=True,
             radical=[0, 1], nilradical=[0, 1]),
        "[e1,e1]=e2",
    ),
    "aff1": lambda: CatalogEntry(
        "aff1", aff1(), {},
        dict(is_nilpotent=False, is_solvable=True, is_lie=True, characteristically_nilpotent=False,
             nonsingular_derivation=False, radical=[0, 1], nilradical=[0]),
        "[e1,e2]=e1 (Lie), solvable, not nilpotent",
    ),
    "leib2-solvable": lambda: CatalogEntry(
        "leib2-solvable", leib2_solvable(), {},
        dict(is_nilpotent=False, is_solvable=True, is_lie=False, characteristically_nilpotent=False,
             nonsingular_derivation=False, radical=[0, 1], nilradical=[0]),
        "[e1,e2]=e1 only, solvable non-Lie",
    ),
    "heisenberg": lambda: CatalogEntry(
        "heisenberg", heisenberg(), {},
        dict(_NIL, is_lie=True, characteristically_nilpotent=False, nonsingular_derivation=True,
             radical=[0, 1, 2], nilradical=[0, 1, 2]),
        "3-dim Heisenberg Lie algebra",
    ),
    "sl2": lambda: CatalogEntry(
        "sl2", sl2(), {},
        dict(is_nilpotent=False, is_solvable=False, is_lie=True, characteristically_nilpotent=False,
             nonsingular_derivation=False, radical=[], nilradical=[]),
        "simple Lie algebra sl(2)",
    ),
    "sl2-module": lambda: CatalogEntry(
        "sl2-module", sl2_module(), {},
        dict(is_nilpotent=False, is_solvable=False, is_lie=False, characteristically_nilpotent=False,
             nonsingular_derivation=False, radical=[3, 4], nilradical=[3, 4], l_ann=[3, 4]),
        "sl(2) with 2-dim irreducible module as right annihilator",
    ),
}

_PATTERNS = [
    (re.compile(r"abelian-(\d+)$"), _abelian_entry, 1),
    (re.compile(r"filiform-leibniz-(\d+)$"), _filiform_entry, 2),
    (re.compile(r"remark-(\d+)$"), _remark_entry, 5),
    (re.compile(r"nonliftable-(\d+)$"), _nonliftable_entry, 2),
]

_PUBLISHED = (
    ["abelian-2", "abelian-3", "abelian-4", "null2", "aff1", "leib2-solvable", "heisenberg",
     "sl2", "sl2-module"]
    + [f"filiform-leibniz-{n}" for n in range(3, 13)]
    + ["remark-5", "remark-6", "remark-7", "nonliftable-2", "nonliftable-3", "nonliftable-4"]
)


def catalog_ids() -> list:
    return list(_PUBLISHED)


def stock(name: str) -> CatalogEntry:
    """Catalog entry by id.

    Besides the published ids, the parametric families accept any size that
    meets their constructor's precondition (``abelian-7``, ``remark-9``, ...).
    """
    if name in _FIXED:
        return _FIXED[name]()
    for pattern, make, lowest in _PATTERNS:
        m = pattern.match(name)
        if m and int(m.group(1)) >= lowest:
            return make(int(m.group(1)))
    raise UnknownId(name, _PUBLISHED)


def entries() -> list:
    return [stock(i) for i in _PUBLISHED]
