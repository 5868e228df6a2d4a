"""The composed client proof that a committed update passes the norm check.

A prover holding (u, r) behind the published commitment vector y and
blind commitment z shows, without revealing u:

  * e_star lists e_t = v_t g + r h_t where v_t = <a_t, u> — checkable
    against y and the projection matrix by a random linear combination;
  * o_t / o_prime_t commit to v_t and v_t^2 under the auxiliary base q
    (same v_t as e_t via the well-formedness proof, squares via the
    square proof);
  * each shifted v_t + 2^(b_ip-1) lies in [0, 2^b_ip) (range proof on
    2^(b_ip-1) g + o_t);
  * B0 - sum v_t^2 lies in [0, 2^b_max) (range proof on
    p_commit = B0 g - sum o_prime_t), i.e. the projected norm is bounded.

Verification reports which sub-check failed so the simulator can
attribute rejections.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from ..group.base import GROUP_ORDER, GroupBackend, Point
from ..group.generators import GeneratorSet
from ..group.multiexp import multiexp, sum_points
from ..rng import Rng
from ..serial import ByteReader, ByteWriter
from .rangeproof import RangeProof, gen_range_proof, ver_range_proof
from .sigma import (
    SquareProof,
    WellFormedProof,
    gen_prf_sq,
    gen_prf_wf,
    ver_prf_sq,
    ver_prf_wf,
)
from .vercrt import ver_crt

if TYPE_CHECKING:
    from ..sampling import CheckParameters, SampleMatrix

_Q = GROUP_ORDER

_PROJECTION_RANGE_LABEL = "shifted-projections"
_SLACK_RANGE_LABEL = "norm-slack"


class BoundExceededError(Exception):
    """The projected squared norm exceeds B0 — an honest client's
    update failed the probabilistic check (probability <= epsilon when
    the norm is truly within B)."""

    def __init__(self, total: int, b0: int) -> None:
        super().__init__(f"sum of squared projections {total} exceeds bound {b0}")
        self.total = total
        self.b0 = b0


@dataclass(frozen=True)
class IntegrityProof:
    e_star: tuple[Point, ...]
    o: tuple[Point, ...]
    o_prime: tuple[Point, ...]
    p_commit: Point
    rho: WellFormedProof
    tau: SquareProof
    sigma: RangeProof
    mu: RangeProof

    def to_bytes(self) -> bytes:
        w = ByteWriter()
        w.point_vec(self.e_star).point_vec(self.o).point_vec(self.o_prime)
        w.point(self.p_commit)
        w.var_bytes(self.rho.to_bytes())
        w.var_bytes(self.tau.to_bytes())
        w.var_bytes(self.sigma.to_bytes())
        w.var_bytes(self.mu.to_bytes())
        return w.getvalue()

    @staticmethod
    def from_bytes(data: bytes, backend: GroupBackend) -> "IntegrityProof":
        r = ByteReader(data)
        proof = IntegrityProof(
            e_star=tuple(r.point_vec(backend)),
            o=tuple(r.point_vec(backend)),
            o_prime=tuple(r.point_vec(backend)),
            p_commit=r.point(backend),
            rho=WellFormedProof.from_bytes(r.var_bytes(), backend),
            tau=SquareProof.from_bytes(r.var_bytes(), backend),
            sigma=RangeProof.from_bytes(r.var_bytes(), backend),
            mu=RangeProof.from_bytes(r.var_bytes(), backend),
        )
        r.expect_end()
        return proof


def _padded(values: list[int], pad_to: int) -> list[int]:
    return values + [0] * (pad_to - len(values))


def gen_integrity_proof(
    params: "CheckParameters",
    gens: GeneratorSet,
    matrix: "SampleMatrix",
    h: Sequence[Point],
    z: Point,
    r: int,
    u: Sequence[int],
    rng: Rng,
) -> IntegrityProof:
    """Produce the full proof for update u under blind r.

    Preconditions (the protocol layer guarantees them): the caller has
    checked h against the matrix with ver_crt, u is the committed
    update, z = r g.  Raises BoundExceededError when the projections
    genuinely exceed B0 — the honest response is to sit the round out.
    """
    k = params.k
    if len(u) != params.d or matrix.k != k or len(h) != k + 1:
        raise ValueError("dimension mismatch between update, matrix and h")
    g, q = gens.g, gens.q

    v = matrix.row_inner(u)  # v[0] already reduced; v[1:] signed ints
    total = sum(x * x for x in v[1:])
    if total > params.b0:
        raise BoundExceededError(total, params.b0)

    v_mod = [v[0]] + [x % _Q for x in v[1:]]
    s = [rng.scalar() for _ in range(k)]
    s_prime = [rng.scalar() for _ in range(k)]
    e_star = [multiexp([g, h[t]], [v_mod[t], r]) for t in range(k + 1)]
    o = [multiexp([g, q], [v_mod[1 + t], s[t]]) for t in range(k)]
    o_prime = [
        multiexp([g, q], [v[1 + t] * v[1 + t] % _Q, s_prime[t]]) for t in range(k)
    ]
    p_commit = (params.b0 % _Q) * g - sum_points(o_prime, backend=gens.backend)

    rho = gen_prf_wf(g, q, h, z, e_star, o, r, v_mod, s, rng)
    tau = gen_prf_sq(g, q, o, o_prime, v_mod[1:], s, s_prime, rng)

    shift = 1 << (params.b_ip - 1)
    sigma = gen_range_proof(
        gens,
        params.b_ip,
        _padded([x + shift for x in v[1:]], params.k_padded),
        _padded(list(s), params.k_padded),
        rng,
        label=_PROJECTION_RANGE_LABEL,
    )
    mu = gen_range_proof(
        gens,
        params.b_max,
        [params.b0 - total],
        [-sum(s_prime) % _Q],
        rng,
        label=_SLACK_RANGE_LABEL,
    )
    return IntegrityProof(
        e_star=tuple(e_star),
        o=tuple(o),
        o_prime=tuple(o_prime),
        p_commit=p_commit,
        rho=rho,
        tau=tau,
        sigma=sigma,
        mu=mu,
    )


def ver_integrity_proof(
    params: "CheckParameters",
    gens: GeneratorSet,
    matrix: "SampleMatrix",
    h: Sequence[Point],
    z: Point,
    y: Sequence[Point],
    proof: IntegrityProof,
    rng: Rng,
) -> tuple[bool, str | None]:
    """Check all sub-proofs; returns (verdict, failed-check label).

    The labels ("consistency", "wellformed", "square", "range_ip",
    "sum_structure", "range_sum") feed the simulator's rejection
    report; honest proofs return (True, None).
    """
    k = params.k
    if (
        len(proof.e_star) != k + 1
        or len(proof.o) != k
        or len(proof.o_prime) != k
        or len(h) != k + 1
        or len(y) != params.d
    ):
        return False, "malformed"
    g, q = gens.g, gens.q

    if not ver_crt(y, proof.e_star, matrix, rng):
        return False, "consistency"
    if not ver_prf_wf(g, q, h, z, proof.e_star, proof.o, proof.rho, rng):
        return False, "wellformed"
    if not ver_prf_sq(g, q, proof.o, proof.o_prime, proof.tau, rng):
        return False, "square"

    shift_point = (1 << (params.b_ip - 1)) * g
    shifted = [shift_point + o_t for o_t in proof.o]
    shifted += [gens.backend.identity()] * (params.k_padded - k)
    if not ver_range_proof(
        gens, params.b_ip, shifted, proof.sigma, label=_PROJECTION_RANGE_LABEL
    ):
        return False, "range_ip"

    expected_p = (params.b0 % _Q) * g - sum_points(proof.o_prime, backend=gens.backend)
    if proof.p_commit != expected_p:
        return False, "sum_structure"
    if not ver_range_proof(
        gens, params.b_max, [proof.p_commit], proof.mu, label=_SLACK_RANGE_LABEL
    ):
        return False, "range_sum"
    return True, None
