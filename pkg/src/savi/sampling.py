"""Shared-seed projection sampling and the chi-square mathematics behind it.

The norm check projects the (integer) update onto k rounded Gaussian rows
and compares the summed squares against B0.  Everything here is either
the deterministic generation of that projection matrix from a shared
seed, or the numerics that justify the threshold: the chi-square
quantile gamma_{k,eps}, the rounding-slack-adjusted bound B0, the
attacker pass-rate F, and its worst-case expected damage.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

import numpy as np
from numpy.random import Philox
from scipy import optimize, special, stats

from .group.base import GROUP_ORDER, Point
from .group.scalars import reduce_wide

_Q = GROUP_ORDER

_LIMB_BITS = 16
_NUM_LIMBS = 16  # 16 x 16 = 256 bits, covers any scalar


def derive_seed(s: bytes, pks: Sequence[Union[Point, bytes]]) -> bytes:
    """Hash the server nonce together with the ordered client keys."""
    h = hashlib.sha256()
    h.update(len(s).to_bytes(4, "little"))
    h.update(s)
    h.update(len(pks).to_bytes(4, "little"))
    for pk in pks:
        h.update(pk.encode() if isinstance(pk, Point) else pk)
    return h.digest()


def _gaussian_rows(seed: bytes, k: int, d: int, M: int) -> np.ndarray:
    """The pre-rounding N(0, M^2) rows, reproducible bit-for-bit.

    Built from Philox raw output (whose stream is stable across numpy
    versions) and an explicit Box-Muller transform rather than
    Generator.standard_normal, whose stream is not guaranteed.
    """
    key = np.frombuffer(hashlib.sha256(seed + b"/rows").digest()[:16], dtype=np.uint64)
    total = k * d
    pairs = (total + 1) // 2
    raw = Philox(key=key).random_raw(2 * pairs)
    # 53-bit uniforms; u1 in (0, 1] so log never sees zero.
    u1 = ((raw[0::2] >> np.uint64(11)) + 1) * 2.0**-53
    u2 = (raw[1::2] >> np.uint64(11)) * 2.0**-53
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    z = np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])[:total]
    return (z * M).reshape(k, d)


def _round_half_away(b: np.ndarray) -> np.ndarray:
    return (np.sign(b) * np.floor(np.abs(b) + 0.5)).astype(np.int64)


@dataclass
class SampleMatrix:
    """One full-width binding row a_0 plus k small rounded-Gaussian rows."""

    seed: bytes
    M: int
    a0: tuple[int, ...]
    rows: np.ndarray  # (k, d) int64

    @property
    def k(self) -> int:
        return int(self.rows.shape[0])

    @property
    def d(self) -> int:
        return int(self.rows.shape[1])

    @property
    def num_projections(self) -> int:
        return self.k

    def gaussian_rows(self) -> np.ndarray:
        """Regenerate the unrounded rows (tests compare against these)."""
        return _gaussian_rows(self.seed, self.k, self.d, self.M)

    def row_inner(self, u: Sequence[int]) -> list[int]:
        """[<a_0,u> mod p, <a_1,u>, ..., <a_k,u>], the latter exact ints."""
        if len(u) != self.d:
            raise ValueError("update dimension mismatch")
        v0 = sum(a * x for a, x in zip(self.a0, u)) % _Q
        max_u = max((abs(int(x)) for x in u), default=0)
        max_a = int(np.max(np.abs(self.rows))) if self.rows.size else 0
        if max_u and max_a and max_u * max_a * self.d >= 1 << 62:
            arr = self.rows.astype(object)
            vs = [int(x) for x in arr @ np.array([int(x) for x in u], dtype=object)]
        else:
            vs = [int(x) for x in self.rows @ np.asarray(u, dtype=np.int64)]
        return [v0] + vs

    def weighted_combination(self, weights: Sequence[int]) -> list[int]:
        """c_l = sum_t weights[t] * a_tl mod p, for the batch check.

        The full-width weights are split into 16-bit limbs so the k x d
        bulk runs as int64 matrix products; limbs are recombined (and
        a_0's contribution added) in exact integer arithmetic.
        """
        if len(weights) != self.k + 1:
            raise ValueError("need one weight per projection row plus a_0")
        w0 = weights[0] % _Q
        rest = [w % _Q for w in weights[1:]]
        max_a = int(np.max(np.abs(self.rows))) if self.rows.size else 0
        if self.k and max_a * self.k << _LIMB_BITS >= 1 << 62:
            raise ValueError("row magnitudes too large for limb accumulation")
        limbs = np.array(
            [[(w >> (_LIMB_BITS * j)) & 0xFFFF for w in rest] for j in range(_NUM_LIMBS)],
            dtype=np.int64,
        )
        partial = limbs @ self.rows  # (num_limbs, d)
        cols = partial.T.tolist()
        out = []
        for l, col in enumerate(cols):
            acc = w0 * self.a0[l]
            for j, limb_val in enumerate(col):
                acc += limb_val << (_LIMB_BITS * j)
            out.append(acc % _Q)
        return out


def sample_matrix(seed: bytes, k: int, d: int, M: int) -> SampleMatrix:
    """Derive the projection matrix for a round from the shared seed.

    a_0 comes from SHAKE-256 (it must be unpredictable enough to bind
    commitments); rows 1..k only need reproducibility and speed, so they
    come from Philox + Box-Muller, rounded half away from zero.
    """
    if k < 1 or d < 1:
        raise ValueError("k and d must be positive")
    if M < 1:
        raise ValueError("scale M must be positive")
    shake = hashlib.shake_256(seed + b"/a0").digest(64 * d)
    a0 = tuple(reduce_wide(shake[64 * i : 64 * (i + 1)]) for i in range(d))
    rows = _round_half_away(_gaussian_rows(seed, k, d, M))
    return SampleMatrix(seed=seed, M=M, a0=a0, rows=rows)


def chi_square_quantile(k: int, epsilon: float) -> float:
    """gamma with Pr[chi2_k >= gamma] = epsilon, usable down to 2^-128.

    scipy's inverse regularized upper incomplete gamma resolves the
    extreme tail directly (it works on Q(a, x) = eps rather than on
    1 - eps, so there is no catastrophic cancellation).
    """
    if k < 1:
        raise ValueError("k must be positive")
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must be a probability in (0, 1)")
    return float(2.0 * special.gammainccinv(k / 2.0, epsilon))


def compute_b0(b_enc: int, M: int, k: int, d: int, epsilon: float) -> int:
    """Integer threshold for the rounded check: sum_t <a_t,u>^2 <= B0.

    b_enc is the L2 bound already in integer (fixed-point encoded)
    units.  The sqrt(kd)/(2M) term absorbs the worst-case rounding
    drift of the matrix entries.
    """
    gamma = chi_square_quantile(k, epsilon)
    root = math.sqrt(gamma) + math.sqrt(k * d) / (2.0 * M)
    return math.ceil(b_enc * b_enc * M * M * root * root)


def pass_rate_F(c: float, k: int, epsilon: float, d: int, M: int) -> float:
    """Probability that an update of norm c*B slips through the check."""
    if c <= 0:
        raise ValueError("norm ratio c must be positive")
    gamma = chi_square_quantile(k, epsilon)
    point = (math.sqrt(gamma) + 3.0 * math.sqrt(k * d) / (2.0 * M)) ** 2 / (c * c)
    return float(stats.chi2.cdf(point, k))


def max_expected_damage(
    k: int, epsilon: float, d: int, M: int
) -> tuple[float, float]:
    """argmax and max of c * F(c) over c in (1, inf), for B = 1.

    c * F(c) is the expected norm an attacker sneaks past the check by
    submitting at ratio c.  The peak is unimodal but can be extremely
    narrow (F collapses within a few percent of c for large k), so a
    geometric grid brackets it before a bounded Brent refinement.
    """
    gamma = chi_square_quantile(k, epsilon)
    point = (math.sqrt(gamma) + 3.0 * math.sqrt(k * d) / (2.0 * M)) ** 2

    def neg_damage(c: float) -> float:
        return -c * float(stats.chi2.cdf(point / (c * c), k))

    grid = np.geomspace(1.0 + 1e-9, 1e3, 4096)
    best = int(np.argmin([neg_damage(c) for c in grid]))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, len(grid) - 1)]
    res = optimize.minimize_scalar(
        neg_damage, bounds=(lo, hi), method="bounded", options={"xatol": 1e-9}
    )
    return float(res.x), float(-res.fun)


def plaintext_check(
    u: Sequence[int],
    rows: Union[SampleMatrix, np.ndarray],
    b0: int | None = None,
    B: float | None = None,
    M: int | None = None,
    gamma: float | None = None,
) -> bool:
    """Reference verdict the zero-knowledge path must agree with.

    Pass b0 for the rounded integer check (exact arithmetic), or
    (B, M, gamma) for the idealized unrounded threshold B^2 M^2 gamma.
    """
    mat = rows.rows if isinstance(rows, SampleMatrix) else np.asarray(rows)
    u_ints = [int(x) for x in u]
    max_u = max((abs(x) for x in u_ints), default=0)
    max_a = int(np.max(np.abs(mat))) if mat.size else 0
    if max_u and max_a and max_u * max_a * mat.shape[1] >= 1 << 62:
        vs = (mat.astype(object) @ np.array(u_ints, dtype=object)).tolist()
    else:
        vs = (mat @ np.asarray(u_ints, dtype=np.int64)).tolist()
    total = sum(int(v) ** 2 for v in vs)
    if b0 is not None:
        return total <= b0
    if B is None or M is None or gamma is None:
        raise ValueError("provide b0, or all of (B, M, gamma)")
    return total <= B * B * M * M * gamma


def _next_power_of_two(x: int) -> int:
    return 1 if x <= 1 else 1 << (x - 1).bit_length()


@dataclass(frozen=True)
class CheckParameters:
    """Everything both sides must agree on for one deployment.

    b_ip bounds each projection <a_t, u> (via a shifted range proof),
    b_max bounds the slack B0 - sum of squares, b_coord is the signed
    fixed-point width of one update coordinate.
    """

    n: int
    m: int
    d: int
    k: int
    epsilon: float
    M: int
    B: float
    b_ip: int
    b_max: int
    frac_bits: int = 8
    b_coord: int = 16

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one client")
        if not 0 <= self.m < self.n / 2:
            raise ValueError("honest majority requires m < n/2")
        if self.d < 1 or self.k < 1:
            raise ValueError("d and k must be positive")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must be in (0, 1)")
        if self.M < 1 or self.B <= 0:
            raise ValueError("M and B must be positive")
        for name in ("b_ip", "b_max"):
            width = getattr(self, name)
            if width < 2 or width & (width - 1):
                raise ValueError(f"{name} must be a power of two (range proof slots)")
        if self.b_ip >= self.b_max:
            raise ValueError("b_ip must be smaller than b_max")
        if self.B * (1 << self.frac_bits) + 0.5 >= 1 << (self.b_coord - 1):
            raise ValueError("bound B does not fit the b_coord fixed-point window")
        if self.b0 >= 1 << self.b_max:
            raise ValueError("B0 overflows b_max bits")
        if self.b0 >= 1 << (2 * (self.b_ip - 1)):
            raise ValueError("b_ip too narrow: a passing projection may overflow it")

    @property
    def threshold(self) -> int:
        """Shamir threshold t = m + 1."""
        return self.m + 1

    @cached_property
    def gamma(self) -> float:
        return chi_square_quantile(self.k, self.epsilon)

    @cached_property
    def b_enc(self) -> int:
        """The L2 bound in encoded integer units, with quantization slack.

        Rounding each coordinate moves the vector by at most sqrt(d)/2,
        so honest floats with norm <= B always encode within b_enc.
        """
        return math.ceil(self.B * (1 << self.frac_bits) + math.sqrt(self.d) / 2.0)

    @cached_property
    def b0(self) -> int:
        return compute_b0(self.b_enc, self.M, self.k, self.d, self.epsilon)

    @property
    def k_padded(self) -> int:
        """Range-proof value count: k padded up to a power of two."""
        return _next_power_of_two(self.k)

    @property
    def range_slots(self) -> int:
        return max(self.b_ip * self.k_padded, self.b_max)

    @classmethod
    def from_epsilon_log2(cls, epsilon_log2: int, **kwargs) -> "CheckParameters":
        if epsilon_log2 >= 0:
            raise ValueError("epsilon_log2 must be negative")
        return cls(epsilon=2.0**epsilon_log2, **kwargs)
