"""Scalar field helpers (integers mod the group order)."""

from __future__ import annotations

from .base import GROUP_ORDER, SCALAR_BYTES


def scalar_to_bytes(x: int) -> bytes:
    """Canonical 32-byte little-endian encoding of a scalar."""
    return (x % GROUP_ORDER).to_bytes(SCALAR_BYTES, "little")


def scalar_from_bytes(raw: bytes) -> int:
    if len(raw) != SCALAR_BYTES:
        raise ValueError("scalars encode to exactly 32 bytes")
    x = int.from_bytes(raw, "little")
    if x >= GROUP_ORDER:
        raise ValueError("non-canonical scalar encoding")
    return x


def reduce_wide(raw64: bytes) -> int:
    """Reduce 64 uniform bytes to a near-uniform scalar."""
    return int.from_bytes(raw64, "little") % GROUP_ORDER


def inv(x: int) -> int:
    """Multiplicative inverse mod the group order."""
    return pow(x, -1, GROUP_ORDER)


def batch_inv(xs: list[int]) -> list[int]:
    """Montgomery batch inversion: one modular inverse for the whole list."""
    n = len(xs)
    if n == 0:
        return []
    prefix = [0] * n
    acc = 1
    for i, x in enumerate(xs):
        if x % GROUP_ORDER == 0:
            raise ZeroDivisionError("cannot invert zero scalar")
        prefix[i] = acc
        acc = acc * x % GROUP_ORDER
    acc_inv = pow(acc, -1, GROUP_ORDER)
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = prefix[i] * acc_inv % GROUP_ORDER
        acc_inv = acc_inv * xs[i] % GROUP_ORDER
    return out
