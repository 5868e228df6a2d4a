"""Reductions of published robustness predicates to a shifted L2 ball.

Every supported defense turns into "commit u - shift and prove
norm(u - shift) <= bound"; for re-centered predicates the server adds
shift * |honest set| back after aggregation, which is exact because
aggregation is linear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence


@dataclass(frozen=True)
class DefensePredicate:
    """One of: l2(B) | sphere(v, B) | cosine(v, B, alpha) | zeno(v, rho, gamma, eps)."""

    kind: str
    bound: Optional[float] = None
    center: Optional[tuple[float, ...]] = None
    alpha: Optional[float] = None
    rho: Optional[float] = None
    gamma: Optional[float] = None
    eps: Optional[float] = None

    @staticmethod
    def l2(bound: float) -> "DefensePredicate":
        return DefensePredicate(kind="l2", bound=bound)

    @staticmethod
    def sphere(center: Sequence[float], bound: float) -> "DefensePredicate":
        return DefensePredicate(kind="sphere", bound=bound, center=tuple(center))

    @staticmethod
    def cosine(center: Sequence[float], bound: float, alpha: float) -> "DefensePredicate":
        return DefensePredicate(
            kind="cosine", bound=bound, center=tuple(center), alpha=alpha
        )

    @staticmethod
    def zeno(
        center: Sequence[float], rho: float, gamma: float, eps: float
    ) -> "DefensePredicate":
        return DefensePredicate(
            kind="zeno", center=tuple(center), rho=rho, gamma=gamma, eps=eps
        )


def convert_defense(
    pred: DefensePredicate, d: int
) -> tuple[list[float], float]:
    """(shift vector, effective L2 bound) for the committed u - shift.

    The cosine predicate's inner-product side condition has no
    zero-knowledge check here; only its norm component is enforced
    (callers should treat directional guarantees as out of scope).
    """
    if pred.kind == "l2":
        if pred.bound is None or pred.bound <= 0:
            raise ValueError("l2 defense needs a positive bound")
        return [0.0] * d, pred.bound

    if pred.kind in ("sphere", "cosine"):
        if pred.bound is None or pred.bound <= 0:
            raise ValueError(f"{pred.kind} defense needs a positive bound")
        if pred.center is None or len(pred.center) != d:
            raise ValueError("center vector must have the model dimension")
        if pred.kind == "cosine" and (pred.alpha is None or not -1 <= pred.alpha <= 1):
            raise ValueError("cosine similarity threshold must lie in [-1, 1]")
        return list(pred.center), pred.bound

    if pred.kind == "zeno":
        if pred.center is None or len(pred.center) != d:
            raise ValueError("center vector must have the model dimension")
        if pred.rho is None or pred.rho <= 0:
            raise ValueError("zeno needs rho > 0")
        if pred.gamma is None or pred.gamma <= 0:
            raise ValueError("zeno needs gamma > 0")
        if pred.eps is None or pred.eps < 0:
            raise ValueError("zeno needs eps >= 0")
        ratio = pred.gamma / (2.0 * pred.rho)
        shift = [ratio * x for x in pred.center]
        center_sq = sum(x * x for x in pred.center)
        bound = math.sqrt(
            (pred.gamma / pred.rho) * pred.eps + ratio * ratio * center_sq
        )
        if bound <= 0:
            raise ValueError("zeno parameters give an empty acceptance ball")
        return shift, bound

    raise ValueError(f"unknown defense kind {pred.kind!r}")
