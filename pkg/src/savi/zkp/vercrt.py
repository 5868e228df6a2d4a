"""Batch check that claimed multi-exponentiations match a matrix.

Given bases w (length d), claimed points h_t (length k+1) and a public
exponent matrix A ((k+1) x d), verify h_t == sum_l A[t,l] * w_l for all
t at the cost of two multiexps: draw random weights b, form the
combined exponent row c = b·A, and test

    sum_t b_t * h_t  ==  sum_l c_l * w_l.

Any single wrong h_t escapes detection with probability 1/p.  The same
check also validates a client's projection commitments e_t against its
coordinate commitments y_l, since both sides then equal the projected
commitment of the same update.
"""

from __future__ import annotations

from typing import Protocol, Sequence

from ..group.base import Point
from ..group.multiexp import multiexp
from ..rng import Rng


class ExponentMatrix(Protocol):
    """What ver_crt needs from a matrix: k+1 rows combinable mod p."""

    @property
    def num_projections(self) -> int:
        """k; the matrix has k+1 rows (one uniform row plus k sampled)."""
        ...

    def weighted_combination(self, weights: Sequence[int]) -> list[int]:
        """Return (weights · A) mod p as a length-d list."""
        ...


def ver_crt(
    bases: Sequence[Point],
    claimed: Sequence[Point],
    matrix: ExponentMatrix,
    rng: Rng,
) -> bool:
    if len(claimed) != matrix.num_projections + 1:
        return False
    weights = [rng.nonzero_scalar() for _ in range(len(claimed))]
    combined = matrix.weighted_combination(weights)
    if len(combined) != len(bases):
        return False
    lhs = multiexp(claimed, weights, backend=claimed[0].backend)
    rhs = multiexp(bases, combined, backend=claimed[0].backend)
    return lhs == rhs
