from .client import Client
from .defense import DefensePredicate, convert_defense
from .errors import (
    AbortServerMaliciousError,
    DlogOutOfRangeError,
    ShareVerifyFailedError,
)
from .pairwise import keygen, open_share, pairwise_key, seal_share
from .server import Server

__all__ = [
    "AbortServerMaliciousError",
    "Client",
    "DefensePredicate",
    "DlogOutOfRangeError",
    "Server",
    "ShareVerifyFailedError",
    "convert_defense",
    "keygen",
    "open_share",
    "pairwise_key",
    "seal_share",
]
