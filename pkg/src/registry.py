"""
Named-group registry.

Resolves references such as ``"Z6"``, ``"D4"``, ``"S3"``, ``"V4"`` and products
like ``"Z2xZ4"`` (left-associative, ``"Z2xZ2xZ2"`` = ``(Z2xZ2)xZ2``). A
reference that names an existing file is loaded through ``src.storage``.
"""

import logging
import os
import re

from src.errors import InvalidOrderError, ResourceLimitError, UnknownGroupError
from src.groups import (
    FiniteGroup,
    make_cyclic,
    make_dihedral,
    make_product_group,
    make_symmetric,
)

logger = logging.getLogger("pfg.registry")

_ATOM = re.compile(r"^(Z|D|S)(\d+)$")
_ALIASES = {"V4": "Z2xZ2", "KLEIN": "Z2xZ2", "K4": "Z2xZ2"}

# Names the CLI advertises; anything matching the grammar also resolves.
SHIPPED_GROUPS: tuple[str, ...] = (
    *(f"Z{n}" for n in range(1, 13)),
    *(f"D{n}" for n in range(3, 7)),
    "S3",
    "S4",
    "V4",
    "Z2xZ4",
)


def _atom(token: str) -> FiniteGroup:
    match = _ATOM.match(token)
    if not match:
        raise UnknownGroupError(f"Unknown group name {token!r}")
    kind, n = match.group(1), int(match.group(2))
    try:
        if kind == "Z":
            return make_cyclic(n)
        if kind == "D":
            return make_dihedral(n)
        return make_symmetric(n)
    except InvalidOrderError as e:
        raise UnknownGroupError(f"Cannot build {token!r}: {e}") from e


def group_by_name(name: str) -> FiniteGroup:
    """
    Resolve a registry name to a (cached) group.

    Raises:
        UnknownGroupError: If the name does not follow the registry grammar.
    """
    tokens = [t.strip() for t in name.strip().split("x")]
    if any(not t for t in tokens):
        raise UnknownGroupError(f"Unknown group name {name!r}")
    factors = [
        group_by_name(_ALIASES[t.upper()]) if t.upper() in _ALIASES else _atom(t)
        for t in tokens
    ]
    group = factors[0]
    for factor in factors[1:]:
        group = make_product_group(group, factor)
    return group


def load_group(ref: str) -> FiniteGroup:
    """Resolve a registry name or a path to a group JSON file."""
    if os.path.isfile(ref):
        from src.storage import load_group_file

        logger.info(f"Loading group from file {ref}")
        return load_group_file(ref)
    return group_by_name(ref)


def registry_name_for(G: FiniteGroup) -> str | None:
    """Return G's name if it resolves back to the same table, else None."""
    try:
        resolved = group_by_name(G.name)
    except (UnknownGroupError, ResourceLimitError):
        return None
    return G.name if resolved.same_table(G) else None
