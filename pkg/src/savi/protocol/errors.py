"""Protocol-level failure modes that abort rather than flag."""

from __future__ import annotations


class AbortServerMaliciousError(Exception):
    """A client detected server misbehavior (bad h vector, or more than
    m clear-share requests) and quits the round."""


class ShareVerifyFailedError(Exception):
    """An aggregated blind share failed verification against the
    combined check string."""

    def __init__(self, client_id: int) -> None:
        super().__init__(f"aggregated share from client {client_id} failed verification")
        self.client_id = client_id


class DlogOutOfRangeError(Exception):
    """A recovered aggregate coordinate fell outside the expected
    bounded window — inconsistent inputs or a too-small b_coord."""

    def __init__(self, coordinate: int) -> None:
        super().__init__(f"aggregate coordinate {coordinate} outside recovery bound")
        self.coordinate = coordinate
