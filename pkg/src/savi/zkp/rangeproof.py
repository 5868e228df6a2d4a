"""Aggregated range proof with a logarithmic inner-product argument.

Proves that each of m Pedersen commitments V_j = v_j g + gamma_j q
hides a value in [0, 2^n).  The m*n bit commitments are folded through
the recursive inner-product argument, so the proof carries 2*log2(m*n)
points plus a constant number of elements, and verification is two
multiexp identities (one of length O(m*n), one of length m).

m*n must be a power of two; callers pad with zero-valued, zero-blinded
commitments (the identity point) to reach one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..group.base import GROUP_ORDER, GroupBackend, Point
from ..group.generators import GeneratorSet
from ..group.multiexp import multiexp
from ..group.scalars import batch_inv, inv
from ..rng import Rng
from ..serial import ByteReader, ByteWriter
from .transcript import Transcript

_Q = GROUP_ORDER


@dataclass(frozen=True)
class RangeProof:
    a_commit: Point
    s_commit: Point
    t1_commit: Point
    t2_commit: Point
    tau_x: int
    mu: int
    t_hat: int
    ls: tuple[Point, ...]
    rs: tuple[Point, ...]
    a: int
    b: int

    def to_bytes(self) -> bytes:
        w = ByteWriter()
        w.point(self.a_commit).point(self.s_commit)
        w.point(self.t1_commit).point(self.t2_commit)
        w.scalar(self.tau_x).scalar(self.mu).scalar(self.t_hat)
        w.point_vec(self.ls).point_vec(self.rs)
        w.scalar(self.a).scalar(self.b)
        return w.getvalue()

    @staticmethod
    def from_bytes(data: bytes, backend: GroupBackend) -> "RangeProof":
        r = ByteReader(data)
        proof = RangeProof(
            a_commit=r.point(backend),
            s_commit=r.point(backend),
            t1_commit=r.point(backend),
            t2_commit=r.point(backend),
            tau_x=r.scalar(),
            mu=r.scalar(),
            t_hat=r.scalar(),
            ls=tuple(r.point_vec(backend)),
            rs=tuple(r.point_vec(backend)),
            a=r.scalar(),
            b=r.scalar(),
        )
        r.expect_end()
        return proof


def _ip(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b)) % _Q


def _powers(y: int, n: int) -> list[int]:
    out = [1] * n
    for i in range(1, n):
        out[i] = out[i - 1] * y % _Q
    return out


def _start_transcript(label: str, n_bits: int, commitments: Sequence[Point]) -> Transcript:
    tr = Transcript(f"range-proof/{label}")
    tr.absorb_u64("bits", n_bits)
    tr.absorb_u64("values", len(commitments))
    tr.absorb_points("V", commitments)
    return tr


def _check_sizes(gens: GeneratorSet, n_bits: int, m: int) -> int:
    nm = n_bits * m
    if nm <= 0 or nm & (nm - 1):
        raise ValueError("total bit count must be a power of two (pad the values)")
    if gens.range_gens.slots() < nm:
        raise ValueError("generator set has too few range slots")
    return nm


def gen_range_proof(
    gens: GeneratorSet,
    n_bits: int,
    values: Sequence[int],
    blinds: Sequence[int],
    rng: Rng,
    label: str = "",
) -> RangeProof:
    """Prove values[j] in [0, 2^n_bits) under blinds[j].

    Raises ValueError when a value is outside the range — an honest
    caller must not be able to produce an unprovable statement.
    """
    m = len(values)
    if len(blinds) != m:
        raise ValueError("one blind per value required")
    nm = _check_sizes(gens, n_bits, m)
    for v in values:
        if not 0 <= v < (1 << n_bits):
            raise ValueError(f"value {v} outside [0, 2^{n_bits})")

    g, q = gens.g, gens.q
    gs = list(gens.range_gens.gs[:nm])
    hs = list(gens.range_gens.hs[:nm])
    commitments = [multiexp([g, q], [v, gamma]) for v, gamma in zip(values, blinds)]
    tr = _start_transcript(label, n_bits, commitments)

    a_l = [0] * nm
    for j, v in enumerate(values):
        for i in range(n_bits):
            a_l[j * n_bits + i] = (v >> i) & 1
    a_r = [(bit - 1) % _Q for bit in a_l]

    alpha = rng.scalar()
    a_commit = multiexp([q] + gs + hs, [alpha] + a_l + a_r)
    s_l = [rng.scalar() for _ in range(nm)]
    s_r = [rng.scalar() for _ in range(nm)]
    rho = rng.scalar()
    s_commit = multiexp([q] + gs + hs, [rho] + s_l + s_r)

    tr.absorb_point("A", a_commit)
    tr.absorb_point("S", s_commit)
    y = tr.nonzero_challenge("y")
    z = tr.nonzero_challenge("z")

    y_pow = _powers(y, nm)
    zz = _powers(z, m + 2)[2:]  # z^2, z^3, ... z^{m+1}

    l0 = [(a_l[i] - z) % _Q for i in range(nm)]
    l1 = s_l
    r0 = [
        (y_pow[i] * (a_r[i] + z) + zz[i // n_bits] * (1 << (i % n_bits))) % _Q
        for i in range(nm)
    ]
    r1 = [y_pow[i] * s_r[i] % _Q for i in range(nm)]

    t1 = (_ip(l0, r1) + _ip(l1, r0)) % _Q
    t2 = _ip(l1, r1)
    tau1, tau2 = rng.scalar(), rng.scalar()
    t1_commit = multiexp([g, q], [t1, tau1])
    t2_commit = multiexp([g, q], [t2, tau2])
    tr.absorb_point("T1", t1_commit)
    tr.absorb_point("T2", t2_commit)
    x = tr.nonzero_challenge("x")

    l_vec = [(l0[i] + x * l1[i]) % _Q for i in range(nm)]
    r_vec = [(r0[i] + x * r1[i]) % _Q for i in range(nm)]
    t_hat = _ip(l_vec, r_vec)
    tau_x = (tau2 * x * x + tau1 * x + sum(zz[j] * blinds[j] for j in range(m))) % _Q
    mu = (alpha + rho * x) % _Q
    tr.absorb_scalar("tau_x", tau_x)
    tr.absorb_scalar("mu", mu)
    tr.absorb_scalar("t_hat", t_hat)
    w = tr.nonzero_challenge("w")
    u_pt = w * gens.range_gens.u

    # Fold the h bases by y^{-i} so the inner product is plain.
    y_inv_pow = _powers(inv(y), nm)
    hs = [y_inv_pow[i] * hs[i] for i in range(nm)]

    ls: list[Point] = []
    rs: list[Point] = []
    a_cur, b_cur = l_vec, r_vec
    g_cur, h_cur = gs, hs
    while len(a_cur) > 1:
        half = len(a_cur) // 2
        c_l = _ip(a_cur[:half], b_cur[half:])
        c_r = _ip(a_cur[half:], b_cur[:half])
        left = multiexp(
            g_cur[half:] + h_cur[:half] + [u_pt],
            a_cur[:half] + b_cur[half:] + [c_l],
        )
        right = multiexp(
            g_cur[:half] + h_cur[half:] + [u_pt],
            a_cur[half:] + b_cur[:half] + [c_r],
        )
        ls.append(left)
        rs.append(right)
        tr.absorb_point("L", left)
        tr.absorb_point("R", right)
        x_r = tr.nonzero_challenge("x-fold")
        x_r_inv = inv(x_r)
        a_cur = [(a_cur[i] * x_r + a_cur[half + i] * x_r_inv) % _Q for i in range(half)]
        b_cur = [(b_cur[i] * x_r_inv + b_cur[half + i] * x_r) % _Q for i in range(half)]
        g_cur = [x_r_inv * g_cur[i] + x_r * g_cur[half + i] for i in range(half)]
        h_cur = [x_r * h_cur[i] + x_r_inv * h_cur[half + i] for i in range(half)]

    return RangeProof(
        a_commit=a_commit,
        s_commit=s_commit,
        t1_commit=t1_commit,
        t2_commit=t2_commit,
        tau_x=tau_x,
        mu=mu,
        t_hat=t_hat,
        ls=tuple(ls),
        rs=tuple(rs),
        a=a_cur[0],
        b=b_cur[0],
    )


def ver_range_proof(
    gens: GeneratorSet,
    n_bits: int,
    commitments: Sequence[Point],
    proof: RangeProof,
    label: str = "",
) -> bool:
    m = len(commitments)
    try:
        nm = _check_sizes(gens, n_bits, m)
    except ValueError:
        return False
    rounds = nm.bit_length() - 1
    if len(proof.ls) != rounds or len(proof.rs) != rounds:
        return False

    backend = gens.backend
    g, q = gens.g, gens.q
    gs = list(gens.range_gens.gs[:nm])
    hs = list(gens.range_gens.hs[:nm])

    tr = _start_transcript(label, n_bits, commitments)
    tr.absorb_point("A", proof.a_commit)
    tr.absorb_point("S", proof.s_commit)
    y = tr.nonzero_challenge("y")
    z = tr.nonzero_challenge("z")
    tr.absorb_point("T1", proof.t1_commit)
    tr.absorb_point("T2", proof.t2_commit)
    x = tr.nonzero_challenge("x")
    tr.absorb_scalar("tau_x", proof.tau_x)
    tr.absorb_scalar("mu", proof.mu)
    tr.absorb_scalar("t_hat", proof.t_hat)
    w = tr.nonzero_challenge("w")
    challenges = []
    for j in range(rounds):
        tr.absorb_point("L", proof.ls[j])
        tr.absorb_point("R", proof.rs[j])
        challenges.append(tr.nonzero_challenge("x-fold"))
    challenges_inv = batch_inv(challenges)

    y_pow = _powers(y, nm)
    zz = _powers(z, m + 2)[2:]

    # Polynomial identity at the challenge point:
    #   t_hat g + tau_x q == delta(y,z) g + sum_j z^{2+j} V_j + x T1 + x^2 T2
    delta = ((z - z * z % _Q) * sum(y_pow)) % _Q
    two_n = ((1 << n_bits) - 1) % _Q
    delta = (delta - sum(zz[j] * z for j in range(m)) % _Q * two_n) % _Q
    eq1_points = [g, q, proof.t1_commit, proof.t2_commit] + list(commitments)
    eq1_scalars = [
        (delta - proof.t_hat) % _Q,
        -proof.tau_x % _Q,
        x,
        x * x % _Q,
    ] + [zz[j] for j in range(m)]
    if not multiexp(eq1_points, eq1_scalars, backend=backend).is_identity():
        return False

    # Inner-product argument check, unrolled into one multiexp.
    s = [0] * nm
    s[0] = 1
    for c_inv in challenges_inv:
        s[0] = s[0] * c_inv % _Q
    for i in range(1, nm):
        lg = i.bit_length() - 1
        s[i] = s[i - (1 << lg)] * challenges[rounds - 1 - lg] ** 2 % _Q
    y_inv_pow = _powers(inv(y), nm)

    points: list[Point] = []
    scalars: list[int] = []
    for i in range(nm):
        points.append(gs[i])
        scalars.append((-z - proof.a * s[i]) % _Q)
        # s_i^{-1} equals the mirrored product s_{nm-1-i}
        h_coef = (
            z * y_pow[i]
            + zz[i // n_bits] * (1 << (i % n_bits))
            - proof.b * s[nm - 1 - i]
        ) % _Q
        points.append(hs[i])
        scalars.append(h_coef * y_inv_pow[i] % _Q)
    points.append(q)
    scalars.append(-proof.mu % _Q)
    points.append(gens.range_gens.u)
    scalars.append(w * (proof.t_hat - proof.a * proof.b) % _Q)
    points.append(proof.a_commit)
    scalars.append(1)
    points.append(proof.s_commit)
    scalars.append(x)
    for j in range(rounds):
        points.append(proof.ls[j])
        scalars.append(challenges[j] ** 2 % _Q)
        points.append(proof.rs[j])
        scalars.append(challenges_inv[j] ** 2 % _Q)
    return multiexp(points, scalars, backend=backend).is_identity()
