from twofold.kind.base import BaseKind
from twofold.kind.common import (
    KIND_NAMES,
    CoupledKind,
    DottedKind,
    TwofoldKind,
    get_kind,
)

__all__ = [
    "BaseKind",
    "CoupledKind",
    "DottedKind",
    "TwofoldKind",
    "KIND_NAMES",
    "get_kind",
]
