"""Deliberate fault injection for exercising the verification harness.

A fault is switched on either through the ``MOUFPLANE_FAULT`` environment
variable (comma separated names) or with the :func:`injected` context manager.
Known faults:

``adjoint-sign``
    use the opposite sign on the product terms of the adjoint map.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

KNOWN = frozenset({"adjoint-sign"})

_active: set[str] = set()


def _from_env() -> set[str]:
    raw = os.environ.get("MOUFPLANE_FAULT", "")
    return {name.strip() for name in raw.split(",") if name.strip()}


def active(name: str) -> bool:
    return name in _active or name in _from_env()


@contextmanager
def injected(name: str):
    if name not in KNOWN:
        raise ValueError(f"unknown fault {name!r}")
    _active.add(name)
    try:
        yield
    finally:
        _active.discard(name)


def enabled() -> frozenset[str]:
    """Every fault currently switched on, from either source."""
    return frozenset(_active | _from_env())
