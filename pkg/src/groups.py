"""
Exact finite-group engine: Cayley-table groups, subsets, maps and predicates.

Elements are plain integer indices into the owning group's table. Every group is
checked against the group axioms when it is built, so an invalid table never
reaches the picture fuzzy layers.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from src.config import (
    BRUTE_FORCE_ORACLE_ORDER,
    GROUP_CACHE_SIZE,
    MAX_CARRIER_ORDER,
    MAX_ENUMERATION_ORDER,
    MAX_SYMMETRIC_DEGREE,
)
from src.errors import (
    InvalidElementError,
    InvalidMapError,
    InvalidOrderError,
    InvalidSubsetError,
    InvalidTableError,
    ResourceLimitError,
)

logger = logging.getLogger("pfg.groups")

GroupElement = int


def _validate_table(table: Sequence[Sequence[int]]) -> tuple[int, tuple[int, ...]]:
    """Check closure, identity, inverses and associativity; return (identity, inverses)."""
    n = len(table)
    if n < 1:
        raise InvalidOrderError("A group needs at least one element")
    for a, row in enumerate(table):
        if len(row) != n:
            raise InvalidTableError(f"Row {a} has {len(row)} entries, expected {n}")
        for b, c in enumerate(row):
            if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c < n:
                raise InvalidTableError(
                    f"Entry op({a},{b})={c!r} is not an element index (closure)"
                )

    columns = list(zip(*table))
    span = tuple(range(n))
    identity = next(
        (e for e in range(n) if tuple(table[e]) == span and columns[e] == span), None
    )
    if identity is None:
        raise InvalidTableError("No two-sided identity element")

    inverses = []
    for a in range(n):
        row = table[a]
        b = next((b for b in range(n) if row[b] == identity), None)
        if b is None or table[b][a] != identity:
            raise InvalidTableError(f"Element {a} has no two-sided inverse")
        inverses.append(b)

    for a in range(n):
        ra = table[a]
        for b in range(n):
            rb = table[b]
            if tuple(table[ra[b]]) != tuple(map(ra.__getitem__, rb)):
                c = next(c for c in range(n) if table[ra[b]][c] != ra[rb[c]])
                raise InvalidTableError(
                    f"Associativity fails at ({a},{b},{c}): "
                    f"op(op(a,b),c)={table[ra[b]][c]} but op(a,op(b,c))={ra[rb[c]]}"
                )
    return identity, tuple(inverses)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """
    A finite group given by its Cayley table on element indices.

    Instances compare by identity; use ``same_table`` for structural comparison.
    Registry and constructor caches make named groups singletons.

    Attributes:
        name (str): Display / registry name, e.g. ``"Z6"`` or ``"S3xD4"``.
        table (tuple[tuple[int, ...], ...]): ``table[a][b]`` is the index of ``a*b``.
        identity (int): Index of the identity element.
        inverses (tuple[int, ...]): ``inverses[a]`` is the index of ``a⁻¹``.
        factors (tuple[FiniteGroup, FiniteGroup] | None): Set for direct products.
    """

    name: str
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]
    factors: tuple["FiniteGroup", "FiniteGroup"] | None = field(
        default=None, repr=False
    )

    @classmethod
    def from_table(
        cls,
        table: Sequence[Sequence[int]],
        name: str = "G",
        factors: tuple["FiniteGroup", "FiniteGroup"] | None = None,
    ) -> "FiniteGroup":
        """Build a group from a Cayley table, verifying all four axioms."""
        identity, inverses = _validate_table(table)
        frozen = tuple(tuple(row) for row in table)
        logger.debug(f"Validated group {name} of order {len(frozen)}")
        return cls(name, frozen, identity, inverses, factors)

    @property
    def order(self) -> int:
        return len(self.table)

    def elements(self) -> range:
        return range(len(self.table))

    def op(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return self.table[a][b]

    def inverse(self, a: GroupElement) -> GroupElement:
        return self.inverses[a]

    def conjugate(self, g: GroupElement, a: GroupElement) -> GroupElement:
        """Return ``a⁻¹ g a``."""
        return self.table[self.table[self.inverses[a]][g]][a]

    def check_element(self, a: GroupElement) -> GroupElement:
        if isinstance(a, bool) or not isinstance(a, int) or not 0 <= a < self.order:
            raise InvalidElementError(
                f"Element {a!r} is not in [0, {self.order}) for group {self.name}"
            )
        return a

    def same_table(self, other: "FiniteGroup") -> bool:
        return self is other or self.table == other.table

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True)
class GroupSubset:
    """
    A crisp subset of a group in canonical (sorted, duplicate-free) form.

    Equality and hashing use the member list only; callers that mix groups
    check ownership explicitly.
    """

    owner: FiniteGroup = field(compare=False, repr=False)
    members: tuple[int, ...]
    _lookup: frozenset[int] = field(
        init=False, compare=False, repr=False, default=frozenset()
    )

    def __post_init__(self) -> None:
        canonical = tuple(sorted(set(self.members)))
        for m in canonical:
            if isinstance(m, bool) or not isinstance(m, int) or not 0 <= m < self.owner.order:
                raise InvalidSubsetError(
                    f"Member {m!r} is not an element of {self.owner.name}"
                )
        object.__setattr__(self, "members", canonical)
        object.__setattr__(self, "_lookup", frozenset(canonical))

    def __contains__(self, a: object) -> bool:
        return a in self._lookup

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def as_set(self) -> frozenset[int]:
        return self._lookup

    def issubset(self, other: "GroupSubset") -> bool:
        return self._lookup <= other._lookup


def make_subset(G: FiniteGroup, members: Iterable[int]) -> GroupSubset:
    return GroupSubset(G, tuple(members))


def whole(G: FiniteGroup) -> GroupSubset:
    return GroupSubset(G, tuple(G.elements()))


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------
def _check_int(n: object, what: str) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidOrderError(f"{what} must be an integer, got {n!r}")
    return n


@lru_cache(maxsize=None)
def make_cyclic(n: int) -> FiniteGroup:
    """Return Z_n with ``op(a, b) = (a + b) mod n``."""
    _check_int(n, "Cyclic order")
    if n < 1:
        raise InvalidOrderError(f"Cyclic group order must be >= 1, got {n}")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup.from_table(table, name=f"Z{n}")


@lru_cache(maxsize=None)
def make_dihedral(n: int) -> FiniteGroup:
    """
    Return the dihedral group of order 2n.

    Index ``k`` encodes the rotation r^k and ``n + k`` the reflection s·r^k,
    with ``r^k s = s r^-k``.
    """
    _check_int(n, "Dihedral parameter")
    if n < 2:
        raise InvalidOrderError(f"Dihedral parameter must be >= 2, got {n}")

    def encode(flip: int, k: int) -> int:
        return flip * n + k % n

    table = []
    for a in range(2 * n):
        f1, k1 = divmod(a, n)
        row = []
        for b in range(2 * n):
            f2, k2 = divmod(b, n)
            if f2 == 0:
                row.append(encode(f1, k1 + k2))
            else:
                row.append(encode(1 - f1, k2 - k1))
        table.append(row)
    return FiniteGroup.from_table(table, name=f"D{n}")


@lru_cache(maxsize=None)
def make_symmetric(n: int) -> FiniteGroup:
    """
    Return S_n on permutations of ``range(n)`` in lexicographic order.

    ``op(a, b)`` is the composite ``a ∘ b`` (apply b first). Index 0 is the
    identity; in S3 index 2 is the transposition swapping 0 and 1 and indices
    3, 4 are the 3-cycles.
    """
    _check_int(n, "Symmetric degree")
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise InvalidOrderError(
            f"Symmetric degree must be in [1, {MAX_SYMMETRIC_DEGREE}], got {n}"
        )
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms
    ]
    return FiniteGroup.from_table(table, name=f"S{n}")


@lru_cache(maxsize=GROUP_CACHE_SIZE)
def make_product_group(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """
    Return G × H with (g, h) encoded as ``g * |H| + h`` and componentwise op.

    Raises:
        ResourceLimitError: If ``|G| * |H|`` exceeds MAX_CARRIER_ORDER.
    """
    m = H.order
    if G.order * m > MAX_CARRIER_ORDER:
        raise ResourceLimitError(
            f"Product {G.name}x{H.name} of order {G.order * m} exceeds the cap {MAX_CARRIER_ORDER}"
        )
    table = [
        [
            G.table[g1][g2] * m + H.table[h1][h2]
            for g2 in G.elements()
            for h2 in H.elements()
        ]
        for g1 in G.elements()
        for h1 in H.elements()
    ]
    logger.info(f"Built product group {G.name}x{H.name} of order {G.order * m}")
    return FiniteGroup.from_table(table, name=f"{G.name}x{H.name}", factors=(G, H))


def pair_index(P: FiniteGroup, g: GroupElement, h: GroupElement) -> GroupElement:
    """Index of (g, h) in a product group."""
    if P.factors is None:
        raise InvalidElementError(f"{P.name} is not a direct product")
    return g * P.factors[1].order + h


def split_index(P: FiniteGroup, x: GroupElement) -> tuple[int, int]:
    """Inverse of ``pair_index``."""
    if P.factors is None:
        raise InvalidElementError(f"{P.name} is not a direct product")
    return divmod(x, P.factors[1].order)


# ---------------------------------------------------------------------------
# Predicates and subsets
# ---------------------------------------------------------------------------
def _owned(G: FiniteGroup, S: GroupSubset) -> GroupSubset:
    if S.owner is not G and S.members and S.members[-1] >= G.order:
        raise InvalidSubsetError(
            f"Subset member {S.members[-1]} is not an element of {G.name}"
        )
    return S


def is_abelian(G: FiniteGroup) -> bool:
    return all(G.table[a][b] == G.table[b][a] for a in G.elements() for b in G.elements())


def element_order(G: FiniteGroup, a: GroupElement) -> int:
    G.check_element(a)
    n, x = 1, a
    while x != G.identity:
        x = G.table[x][a]
        n += 1
    return n


def order_census(G: FiniteGroup) -> tuple[tuple[int, int], ...]:
    """Sorted (element order, count) pairs, an isomorphism heuristic."""
    counts = Counter(element_order(G, a) for a in G.elements())
    return tuple(sorted(counts.items()))


def is_subgroup(G: FiniteGroup, S: GroupSubset) -> bool:
    """True iff S is non-empty and closed under the operation and inverses."""
    _owned(G, S)
    if not S.members:
        return False
    table = G.table
    for a in S.members:
        row = table[a]
        if any(row[b] not in S for b in S.members):
            return False
        if G.inverses[a] not in S:
            return False
    return True


def is_normal_subgroup(G: FiniteGroup, S: GroupSubset) -> bool:
    """True iff S is a subgroup with ``g S g⁻¹ = S`` for every g."""
    if not is_subgroup(G, S):
        return False
    return all(
        G.conjugate(s, g) in S for g in G.elements() for s in S.members
    )


def translate_left(G: FiniteGroup, a: GroupElement, S: GroupSubset) -> GroupSubset:
    """Return ``{a·s : s ∈ S}``."""
    G.check_element(a)
    row = G.table[a]
    return GroupSubset(G, tuple(row[s] for s in _owned(G, S).members))


def translate_right(G: FiniteGroup, S: GroupSubset, a: GroupElement) -> GroupSubset:
    """Return ``{s·a : s ∈ S}``."""
    G.check_element(a)
    return GroupSubset(G, tuple(G.table[s][a] for s in _owned(G, S).members))


def _generated(G: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    gens = tuple(gens)
    members = {G.identity}
    frontier = [G.identity]
    while frontier:
        row = G.table[frontier.pop()]
        for g in gens:
            y = row[g]
            if y not in members:
                members.add(y)
                frontier.append(y)
    return frozenset(members)


@lru_cache(maxsize=GROUP_CACHE_SIZE)
def _all_subgroups(G: FiniteGroup) -> tuple[GroupSubset, ...]:
    found: dict[frozenset[int], tuple[int, ...]] = {}
    for g in G.elements():
        found.setdefault(_generated(G, (g,)), (g,))
    cyclic = list(found.items())
    frontier = list(found.items())
    while frontier:
        members, gens = frontier.pop()
        for c_members, (c,) in cyclic:
            if c_members <= members:
                continue
            joined_gens = gens + (c,)
            joined = _generated(G, joined_gens)
            if joined not in found:
                found[joined] = joined_gens
                frontier.append((joined, joined_gens))
    ordered = sorted((tuple(sorted(m)) for m in found), key=lambda m: (len(m), m))
    logger.info(f"Enumerated {len(ordered)} subgroups of {G.name}")
    return tuple(GroupSubset(G, m) for m in ordered)


def enumerate_subgroups(G: FiniteGroup, max_order: int | None = None) -> list[GroupSubset]:
    """
    Return every subgroup of G, sorted by cardinality then member order.

    Args:
        G (FiniteGroup): The group.
        max_order (int | None, optional): Enumeration cap. Defaults to
            MAX_ENUMERATION_ORDER (``PFG_MAX_ORDER``).

    Raises:
        ResourceLimitError: If ``|G|`` exceeds the cap.
    """
    cap = MAX_ENUMERATION_ORDER if max_order is None else max_order
    if G.order > cap:
        raise ResourceLimitError(
            f"Subgroup enumeration of {G.name} (order {G.order}) exceeds the cap {cap}"
        )
    return list(_all_subgroups(G))


def normal_subgroups(G: FiniteGroup, max_order: int | None = None) -> list[GroupSubset]:
    return [H for H in enumerate_subgroups(G, max_order) if is_normal_subgroup(G, H)]


def brute_force_subgroups(G: FiniteGroup) -> list[GroupSubset]:
    """Subgroups found by testing every subset; an oracle for tiny groups."""
    if G.order > BRUTE_FORCE_ORACLE_ORDER:
        raise ResourceLimitError(
            f"Brute-force oracle is limited to order {BRUTE_FORCE_ORACLE_ORDER}"
        )
    found = []
    for size in range(1, G.order + 1):
        for members in itertools.combinations(G.elements(), size):
            S = GroupSubset(G, members)
            if is_subgroup(G, S):
                found.append(S)
    return sorted(found, key=lambda S: (len(S), S.members))


def subset_product(
    P: FiniteGroup, A: GroupSubset, B: GroupSubset
) -> GroupSubset:
    """Cartesian product A × B as a subset of the product group P."""
    if P.factors is None:
        raise InvalidSubsetError(f"{P.name} is not a direct product")
    m = P.factors[1].order
    return GroupSubset(P, tuple(a * m + b for a in A.members for b in B.members))


# ---------------------------------------------------------------------------
# Maps
# ---------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class GroupHomomorphism:
    """
    A map between the element sets of two groups.

    With ``homomorphism=True`` (the default) the map is rejected unless it
    preserves the operation; ``homomorphism=False`` admits plain set maps.
    """

    source: FiniteGroup
    target: FiniteGroup
    mapping: tuple[int, ...]
    homomorphism: bool = True
    name: str = "f"

    def __post_init__(self) -> None:
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if len(self.mapping) != self.source.order:
            raise InvalidMapError(
                f"Map {self.name} has {len(self.mapping)} entries, "
                f"source {self.source.name} has {self.source.order} elements"
            )
        for a, y in enumerate(self.mapping):
            if isinstance(y, bool) or not isinstance(y, int) or not 0 <= y < self.target.order:
                raise InvalidMapError(
                    f"Map {self.name} sends {a} to {y!r}, not an element of {self.target.name}"
                )
        if self.homomorphism and not validate_homomorphism(self):
            raise InvalidMapError(f"Map {self.name} does not preserve the operation")

    def __call__(self, a: GroupElement) -> GroupElement:
        return self.mapping[a]

    def fiber(self, y: GroupElement) -> tuple[int, ...]:
        return tuple(a for a, fa in enumerate(self.mapping) if fa == y)


def validate_homomorphism(f: GroupHomomorphism) -> bool:
    """True iff ``f(a*b) = f(a)*f(b)`` for all pairs of source elements."""
    src, tgt, m = f.source, f.target, f.mapping
    if len(m) != src.order:
        raise InvalidMapError(f"Map {f.name} length {len(m)} != |source| {src.order}")
    for a in src.elements():
        row, ma = src.table[a], tgt.table[m[a]]
        for b in src.elements():
            if m[row[b]] != ma[m[b]]:
                return False
    return True


def identity_map(G: FiniteGroup) -> GroupHomomorphism:
    return GroupHomomorphism(G, G, tuple(G.elements()), name=f"id_{G.name}")


def trivial_map(G: FiniteGroup, H: FiniteGroup) -> GroupHomomorphism:
    """Constant map onto the identity of H."""
    return GroupHomomorphism(G, H, (H.identity,) * G.order, name=f"1_{G.name}->{H.name}")


def reduction_map(n: int, d: int) -> GroupHomomorphism:
    """The reduction Z_n → Z_d, ``a ↦ a mod d``; requires ``d | n``."""
    if d < 1 or n % d:
        raise InvalidMapError(f"Z{n} -> Z{d} reduction needs d | n")
    return GroupHomomorphism(
        make_cyclic(n), make_cyclic(d), tuple(a % d for a in range(n)), name=f"mod{d}"
    )


def projection(P: FiniteGroup, side: int) -> GroupHomomorphism:
    """Projection of a product group onto factor 0 or 1."""
    if P.factors is None or side not in (0, 1):
        raise InvalidMapError(f"{P.name} has no factor {side}")
    G, H = P.factors
    m = H.order
    mapping = tuple(divmod(x, m)[side] for x in P.elements())
    return GroupHomomorphism(P, P.factors[side], mapping, name=f"proj{side + 1}")


def set_map(G: FiniteGroup, H: FiniteGroup, mapping: Sequence[int]) -> GroupHomomorphism:
    """A plain set map; homomorphy is not enforced."""
    return GroupHomomorphism(G, H, tuple(mapping), homomorphism=False, name="set_map")


def subset_image(f: GroupHomomorphism, S: GroupSubset) -> GroupSubset:
    return GroupSubset(f.target, tuple(f.mapping[a] for a in S.members))


def subset_preimage(f: GroupHomomorphism, T: GroupSubset) -> GroupSubset:
    return GroupSubset(
        f.source, tuple(a for a, y in enumerate(f.mapping) if y in T)
    )
