"""Deterministic derivation of independent generators.

Each generator is hash-to-group over a domain-separated tag, so no
party knows discrete-log relations between any of them (on the real
backend), and every party derives the identical set.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass

from .base import GroupBackend, Point

_DOMAIN = b"savi/v1/generators"


def derive_generators(tag: str, count: int, backend: GroupBackend) -> list[Point]:
    """Derive ``count`` independent generators under ``tag``.

    Deterministic in (tag, count-index); distinct tags give disjoint
    sets except with negligible probability.
    """
    encoded_tag = tag.encode()
    prefix = _DOMAIN + struct.pack("<I", len(encoded_tag)) + encoded_tag
    points = []
    for i in range(count):
        digest = hashlib.sha512(prefix + struct.pack("<Q", i)).digest()
        points.append(backend.from_uniform(digest))
    return points


@dataclass(frozen=True)
class RangeGenerators:
    """Generator vectors for bit-decomposition range proofs."""

    gs: tuple[Point, ...]
    hs: tuple[Point, ...]
    u: Point

    def slots(self) -> int:
        return len(self.gs)


@dataclass(frozen=True)
class GeneratorSet:
    """All public bases a protocol instance needs.

    g      value base (the group's canonical generator)
    q      blind base for the auxiliary commitments
    w      per-coordinate blind bases of the vector commitment
    range_gens  bit-slot bases for range proofs
    """

    g: Point
    q: Point
    w: tuple[Point, ...]
    range_gens: RangeGenerators

    @property
    def backend(self) -> GroupBackend:
        return self.g.backend

    @property
    def dimension(self) -> int:
        return len(self.w)

    @staticmethod
    def derive(backend: GroupBackend, dimension: int, range_slots: int) -> "GeneratorSet":
        g = backend.base()
        (q,) = derive_generators("q", 1, backend)
        w = tuple(derive_generators("w", dimension, backend))
        gs = tuple(derive_generators("range-g", range_slots, backend))
        hs = tuple(derive_generators("range-h", range_slots, backend))
        (u,) = derive_generators("range-u", 1, backend)
        return GeneratorSet(g=g, q=q, w=w, range_gens=RangeGenerators(gs, hs, u))
