"""Pedersen commitments to update vectors and their homomorphic aggregation.

A client commits to a d-dimensional integer update u under a single blind
r: the l-th coordinate commitment is y_l = u_l g + r w_l, and z = r g
doubles as the constant term of the blind's Feldman check string.  Sums of
commitments open to sums of updates under the summed blind, which is what
lets the server aggregate only the surviving clients.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .group.base import GroupBackend, Point
from .group.generators import GeneratorSet
from .group.multiexp import multiexp
from .serial import ByteReader, ByteWriter
from .vsss import CheckString


def commit_update(
    u: Sequence[int], r: int, gens: GeneratorSet
) -> tuple[list[Point], Point]:
    """Commit coordinate-wise: y_l = u_l g + r w_l, plus z = r g."""
    if len(u) != len(gens.w):
        raise ValueError(f"update has {len(u)} coordinates, generators {len(gens.w)}")
    g = gens.g
    y = [multiexp([g, w_l], [u_l, r]) for u_l, w_l in zip(u, gens.w)]
    return y, r * g


def aggregate_commitments(
    vectors: Sequence[Sequence[Point]], gens: GeneratorSet
) -> list[Point]:
    """Coordinate-wise sum over a set of commitment vectors.

    An empty set yields the identity vector (callers flag that case in
    their reports rather than treating it as an error).
    """
    d = len(gens.w)
    total = [gens.backend.identity() for _ in range(d)]
    for vec in vectors:
        if len(vec) != d:
            raise ValueError("commitment vector length mismatch")
        total = [acc + y_l for acc, y_l in zip(total, vec)]
    return total


def commit_update_shared_blinds(
    u: Sequence[int], r_vec: Sequence[int], bases: Sequence[Point]
) -> list[Point]:
    """Commitment layout with e = len(r_vec) blinds over d/e shared bases.

    Coordinate ep + q is committed under base P_p with blind r_{q+1}:
    y[ep+q] = u[ep+q] g + r_vec[q] bases[p].  With e = d and a single
    base this degenerates to the one-blind-per-coordinate layout.
    """
    e = len(r_vec)
    if e == 0 or len(u) % e != 0:
        raise ValueError("blind count must divide the dimension")
    if len(u) != e * len(bases):
        raise ValueError("need exactly d/e shared bases")
    g = bases[0].backend.base()
    return [
        multiexp([g, bases[l // e]], [u_l, r_vec[l % e]])
        for l, u_l in enumerate(u)
    ]


@dataclass(frozen=True)
class CommitmentBundle:
    """Everything a client publishes in the commit round.

    The shares are ciphertexts (one per peer, addressed by index order);
    z is redundant with check_string.points[0] but is sent explicitly,
    and the server rejects bundles where the two disagree.
    """

    y: tuple[Point, ...]
    z: Point
    encrypted_shares: tuple[bytes, ...]
    check_string: CheckString

    def to_bytes(self) -> bytes:
        w = ByteWriter()
        w.point_vec(self.y).point(self.z)
        w.u32(len(self.encrypted_shares))
        for blob in self.encrypted_shares:
            w.var_bytes(blob)
        w.point_vec(self.check_string.points)
        return w.getvalue()

    @staticmethod
    def from_bytes(data: bytes, backend: GroupBackend) -> "CommitmentBundle":
        r = ByteReader(data)
        y = tuple(r.point_vec(backend))
        z = r.point(backend)
        shares = tuple(r.var_bytes() for _ in range(r.u32()))
        check = CheckString(points=tuple(r.point_vec(backend)))
        r.expect_end()
        return CommitmentBundle(y=y, z=z, encrypted_shares=shares, check_string=check)
