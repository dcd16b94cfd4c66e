"""Chern data of degree-d hypersurfaces in CP^4 and of their smooth parts.

All classes are integers in units of powers of the hyperplane class x
pulled back to the hypersurface; <x^3, [V]> = d.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import PreconditionError

AMBIENT_DIM = 4  # CP^4
SERIES_ORDER = 3  # complex dimension of the hypersurface


@dataclass(frozen=True)
class ChernData:
    degree: int
    c1: int
    c2: int
    c3: int
    chi: int
    p1_coeff: int
    spin: bool


def _check_degree(d: int) -> None:
    if not isinstance(d, int) or d < 1:
        raise PreconditionError(f"degree must be a positive integer, got {d!r}")


def chern_series(d: int, order: int = SERIES_ORDER) -> list[int]:
    """Coefficients of (1+x)^5 / (1+dx) up to x^order, by long division."""
    _check_degree(d)
    numerator = [comb(AMBIENT_DIM + 1, i) for i in range(order + 1)]
    q: list[int] = []
    for j in range(order + 1):
        q.append(numerator[j] - (d * q[j - 1] if j else 0))
    return q


def total_chern_hypersurface(d: int) -> ChernData:
    c0, c1, c2, c3 = chern_series(d)
    assert c0 == 1
    return ChernData(
        degree=d,
        c1=c1,
        c2=c2,
        c3=c3,
        chi=d * c3,
        p1_coeff=c1 * c1 - 2 * c2,
        spin=d % 2 == 1,
    )


def chi_smooth_part(d: int, mu: int) -> int:
    """Euler characteristic after removing a Milnor ball (closed fibre has chi = 1 - mu)."""
    if mu < 0:
        raise PreconditionError("Milnor number must be nonnegative")
    return total_chern_hypersurface(d).chi - (1 - mu)


def p1_smooth_part(d: int) -> int:
    return total_chern_hypersurface(d).p1_coeff


def is_spin_smooth_part(d: int) -> bool:
    _check_degree(d)
    return d % 2 == 1
