"""Exact rational checks of the binomial identities behind the logarithm argument.

Everything here uses :class:`fractions.Fraction` and Python integers, so the
results are exact and compared without tolerance.
"""
from __future__ import annotations

import warnings
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import DegreeTooHigh, PreconditionViolation

__all__ = [
    "DegreeWarning",
    "poly_eval",
    "poly_degree",
    "alternating_binomial_sum",
    "corollary_sum",
    "log_bracket_coefficients",
]


class DegreeWarning(UserWarning):
    """Sum evaluated for a polynomial whose degree is not below ``n``."""


def poly_degree(coeffs: Sequence) -> int:
    """Degree of ``sum coeffs[k] x^k``; ``-1`` for the zero polynomial."""
    for k in range(len(coeffs) - 1, -1, -1):
        if coeffs[k] != 0:
            return k
    return -1


def poly_eval(coeffs: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for a in reversed(coeffs):
        acc = acc * x + Fraction(a)
    return acc


def alternating_binomial_sum(coeffs: Sequence, n: int, force: bool = False) -> Fraction:
    """``sum_{i=0}^{n} (-1)^i C(n, i) P(i)`` for ``P = sum coeffs[k] x^k``.

    The sum vanishes whenever ``deg P < n``.  For higher degree this raises
    :class:`DegreeTooHigh` unless ``force`` is set, in which case the value is
    computed anyway and a :class:`DegreeWarning` is emitted.
    """
    if n < 0:
        raise PreconditionViolation(f"n must be non-negative, got {n}")
    deg = poly_degree(coeffs)
    if deg >= n:
        if not force:
            raise DegreeTooHigh(f"degree {deg} is not below n = {n}")
        warnings.warn(f"degree {deg} >= n = {n}; the sum need not vanish", DegreeWarning, stacklevel=2)
    return sum(((-1) ** i * comb(n, i) * poly_eval(coeffs, i) for i in range(n + 1)), Fraction(0))


def corollary_sum(n: int, m: int) -> Fraction:
    """``sum_{i=0}^{n} (-1)^i / (m - i) * C(n, i) * C(m - i, n)`` for ``0 <= n < m``.

    Equals ``1/m`` for ``n = 0`` and ``0`` otherwise.
    """
    if not (0 <= n < m):
        raise PreconditionViolation(f"need 0 <= n < m, got n={n}, m={m}")
    return sum(
        (Fraction((-1) ** i * comb(n, i) * comb(m - i, n), m - i) for i in range(n + 1)),
        Fraction(0),
    )


def log_bracket_coefficients(max_power: int) -> dict:
    """Exact coefficients of ``[P^a x, P^b y]`` in ``log(I + P)([x, y])``.

    Expands ``sum_k (-1)^(k-1)/k P^k([x, y])`` through the double binomial
    sum ``P^k([x,y]) = sum_{i<=k} sum_{j<=i} C(k,i) C(i,j) [P^(k-j) x, P^(k-i+j) y]``
    and collects terms with ``a, b <= max_power``.  For ``log`` to act as a
    derivation, only ``b = 0`` or ``a = 0`` may survive, with coefficient
    ``(-1)^(a-1)/a`` (resp. ``(-1)^(b-1)/b``).

    Every term with exponents ``(a, b)`` comes from ``k <= a + b``, so the
    truncation is exact for the returned keys.
    """
    coeffs: dict = {}
    for k in range(1, 2 * max_power + 1):
        w = Fraction((-1) ** (k - 1), k)
        for i in range(k + 1):
            for j in range(i + 1):
                a, b = k - j, k - i + j
                if a > max_power or b > max_power:
                    continue
                coeffs[(a, b)] = coeffs.get((a, b), Fraction(0)) + w * comb(k, i) * comb(i, j)
    return coeffs
