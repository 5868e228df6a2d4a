"""Prime-order group abstraction.

Two interchangeable backends implement the same interface: the real one
(ristretto255 via libsodium) and a non-cryptographic mock used for fast
logic and cost-model tests.  Both groups have the same prime order, so
scalar arithmetic is shared and plain Python integers reduced mod
``GROUP_ORDER`` serve as scalars throughout.

Points are written additively: ``P + Q`` is the group operation and
``k * P`` is scalar multiplication.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

# Order of the ristretto255 group (and of the mock group).
GROUP_ORDER = 2**252 + 27742317777372353535851937790883648493

POINT_BYTES = 32
SCALAR_BYTES = 32


class OpCounter:
    """Counts group operations performed through a backend.

    Used by the bench harness to measure asymptotic cost without
    wall-clock noise.  Counting is not synchronized; run single-threaded
    when exact counts matter.
    """

    __slots__ = ("mul", "add", "from_hash")

    def __init__(self) -> None:
        self.mul = 0
        self.add = 0
        self.from_hash = 0

    def reset(self) -> None:
        self.mul = 0
        self.add = 0
        self.from_hash = 0

    def snapshot(self) -> dict[str, int]:
        return {"mul": self.mul, "add": self.add, "from_hash": self.from_hash}

    def total(self) -> int:
        return self.mul + self.add + self.from_hash


class GroupBackend(ABC):
    """Operations on opaque point representations.

    ``data`` values are canonical per backend (32-byte encodings for
    ristretto255, reduced ints for the mock group), so equality of
    representations is equality of points.
    """

    name: str
    # Whether multiexp should use Pippenger bucketing.  For libsodium a
    # point addition costs nearly as much as a scalar multiplication
    # (both are dominated by encode/decode), so bucketing never wins and
    # the naive loop is used instead.
    use_pippenger: bool

    def __init__(self) -> None:
        self.counter = OpCounter()

    @abstractmethod
    def identity_data(self):
        ...

    @abstractmethod
    def base_data(self):
        """Canonical generator of the group."""

    @abstractmethod
    def add_data(self, a, b):
        ...

    @abstractmethod
    def sub_data(self, a, b):
        ...

    @abstractmethod
    def mul_data(self, p, e: int):
        """e * P for an integer e (reduced internally mod the order)."""

    @abstractmethod
    def encode_data(self, p) -> bytes:
        ...

    @abstractmethod
    def decode_data(self, raw: bytes):
        """Parse a canonical 32-byte encoding; raise ValueError if invalid."""

    @abstractmethod
    def from_uniform_data(self, raw64: bytes):
        """Map 64 uniform bytes onto the group (hash-to-group)."""

    # -- Point-level conveniences -------------------------------------

    def identity(self) -> "Point":
        return Point(self, self.identity_data())

    def base(self) -> "Point":
        return Point(self, self.base_data())

    def decode(self, raw: bytes) -> "Point":
        return Point(self, self.decode_data(raw))

    def from_uniform(self, raw64: bytes) -> "Point":
        return Point(self, self.from_uniform_data(raw64))


class Point:
    """A group element bound to its backend."""

    __slots__ = ("backend", "data")

    def __init__(self, backend: GroupBackend, data) -> None:
        self.backend = backend
        self.data = data

    def __add__(self, other: "Point") -> "Point":
        return Point(self.backend, self.backend.add_data(self.data, other.data))

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.backend, self.backend.sub_data(self.data, other.data))

    def __mul__(self, e: int) -> "Point":
        return Point(self.backend, self.backend.mul_data(self.data, e))

    __rmul__ = __mul__

    def __neg__(self) -> "Point":
        return Point(self.backend, self.backend.sub_data(self.backend.identity_data(), self.data))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Point) and self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        return f"Point({self.backend.name}, {self.encode().hex()[:16]}…)"

    def encode(self) -> bytes:
        return self.backend.encode_data(self.data)

    def is_identity(self) -> bool:
        return self.data == self.backend.identity_data()
