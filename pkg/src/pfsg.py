"""
Picture fuzzy subgroup theory.

Predicates for picture fuzzy subgroups (PFSG) and normal subgroups (PFNSG) in
each of their equivalent forms, picture fuzzy cosets and conjugates, conjugacy
search, and samplers that build valid instances from subgroup chains.

Every predicate returns a ``PfsgVerdict`` whose witness is the first violation
in a fixed scan order, so failures are reproducible.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from src.config import SAMPLER_DENOMINATOR
from src.errors import (
    CarrierMismatchError,
    InvalidSubsetError,
    NotPfsgError,
    UnsatisfiableChainError,
)
from src.groups import (
    FiniteGroup,
    GroupElement,
    GroupSubset,
    enumerate_subgroups,
    is_subgroup,
    normal_subgroups,
)
from src.pfs import PictureFuzzySet, PictureTriple

logger = logging.getLogger("pfg.pfsg")


class Clause(str, Enum):
    """Which inequality or equality a verdict found violated."""

    SIGMA_CLOSURE = "sigma-closure"
    TAU_CLOSURE = "tau-closure"
    ETA_CLOSURE = "eta-closure"
    SIGMA_INVERSE = "sigma-inverse"
    TAU_INVERSE = "tau-inverse"
    ETA_INVERSE = "eta-inverse"
    SIGMA_NORMAL = "sigma-normal"
    TAU_NORMAL = "tau-normal"
    ETA_NORMAL = "eta-normal"


@dataclass(frozen=True)
class PfsgVerdict:
    """
    Outcome of a PFSG/PFNSG predicate.

    Attributes:
        holds (bool): Whether every condition holds.
        witness (tuple[int, ...] | None): ``(a, b)`` for pair conditions,
            ``(a,)`` for inverse conditions; None when ``holds``.
        violated_clause (Clause | None): The first failing condition.
    """

    holds: bool
    witness: tuple[int, ...] | None = None
    violated_clause: Clause | None = None

    def __post_init__(self) -> None:
        if self.holds != (self.witness is None):
            raise ValueError("A verdict holds exactly when it has no witness")

    def __bool__(self) -> bool:
        return self.holds

    def describe(self) -> str:
        if self.holds:
            return "holds"
        return f"fails: {self.violated_clause.value} at {self.witness}"

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "witness": list(self.witness) if self.witness else None,
            "violated_clause": self.violated_clause.value if self.violated_clause else None,
        }


HOLDS = PfsgVerdict(True)


def _require_carrier(G: FiniteGroup, Q: PictureFuzzySet) -> None:
    if not G.same_table(Q.carrier):
        raise CarrierMismatchError(
            f"PFS lives on {Q.carrier.name}, predicate asked about {G.name}"
        )


def _closure_violation(
    x_ab: PictureTriple, x_a: PictureTriple, x_b: PictureTriple
) -> Clause | None:
    if x_ab.positive < min(x_a.positive, x_b.positive):
        return Clause.SIGMA_CLOSURE
    if x_ab.neutral < min(x_a.neutral, x_b.neutral):
        return Clause.TAU_CLOSURE
    if x_ab.negative > max(x_a.negative, x_b.negative):
        return Clause.ETA_CLOSURE
    return None


def _inverse_violation(x_inv: PictureTriple, x_a: PictureTriple) -> Clause | None:
    if x_inv.positive < x_a.positive:
        return Clause.SIGMA_INVERSE
    if x_inv.neutral < x_a.neutral:
        return Clause.TAU_INVERSE
    if x_inv.negative > x_a.negative:
        return Clause.ETA_INVERSE
    return None


def _difference(x: PictureTriple, y: PictureTriple) -> Clause | None:
    if x.positive != y.positive:
        return Clause.SIGMA_NORMAL
    if x.neutral != y.neutral:
        return Clause.TAU_NORMAL
    if x.negative != y.negative:
        return Clause.ETA_NORMAL
    return None


def is_pfsg(G: FiniteGroup, Q: PictureFuzzySet) -> PfsgVerdict:
    """
    Check the closure and inverse conditions of a picture fuzzy subgroup.

    For each a (in index order) every b is checked against
    σ(ab) >= σ(a)∧σ(b), τ(ab) >= τ(a)∧τ(b), η(ab) <= η(a)∨η(b); then the
    inverse conditions σ(a⁻¹) >= σ(a), τ(a⁻¹) >= τ(a), η(a⁻¹) <= η(a).
    """
    _require_carrier(G, Q)
    T = Q.triples
    for a in G.elements():
        x_a, row = T[a], G.table[a]
        for b in G.elements():
            clause = _closure_violation(T[row[b]], x_a, T[b])
            if clause is not None:
                return PfsgVerdict(False, (a, b), clause)
        clause = _inverse_violation(T[G.inverses[a]], x_a)
        if clause is not None:
            return PfsgVerdict(False, (a,), clause)
    return HOLDS


def is_pfsg_compact(G: FiniteGroup, Q: PictureFuzzySet) -> PfsgVerdict:
    """Check the single-condition form on ``a * b⁻¹`` for all pairs."""
    _require_carrier(G, Q)
    T, inverses = Q.triples, G.inverses
    for a in G.elements():
        x_a, row = T[a], G.table[a]
        for b in G.elements():
            clause = _closure_violation(T[row[inverses[b]]], x_a, T[b])
            if clause is not None:
                return PfsgVerdict(False, (a, b), clause)
    return HOLDS


def identity_dominates(G: FiniteGroup, Q: PictureFuzzySet) -> bool:
    """True iff Q(e) dominates Q(g) for every g."""
    _require_carrier(G, Q)
    top = Q.triples[G.identity]
    return all(top.dominates(x) for x in Q.triples)


def require_pfsg(G: FiniteGroup, Q: PictureFuzzySet, role: str = "input") -> None:
    verdict = is_pfsg(G, Q)
    if not verdict.holds:
        raise NotPfsgError(
            f"{role} on {G.name} is not a picture fuzzy subgroup ({verdict.describe()})",
            verdict,
        )


def left_coset(G: FiniteGroup, Q: PictureFuzzySet, a: GroupElement) -> PictureFuzzySet:
    """aQ with ``aQ(u) = Q(a⁻¹ * u)``."""
    _require_carrier(G, Q)
    row = G.table[G.inverses[G.check_element(a)]]
    return PictureFuzzySet(Q.carrier, tuple(Q.triples[row[u]] for u in G.elements()))


def right_coset(G: FiniteGroup, Q: PictureFuzzySet, a: GroupElement) -> PictureFuzzySet:
    """Qa with ``Qa(u) = Q(u * a⁻¹)``."""
    _require_carrier(G, Q)
    a_inv = G.inverses[G.check_element(a)]
    return PictureFuzzySet(
        Q.carrier, tuple(Q.triples[G.table[u][a_inv]] for u in G.elements())
    )


def is_pfnsg_cosets(G: FiniteGroup, Q: PictureFuzzySet) -> PfsgVerdict:
    """Normality as ``Qa(b) = aQ(b)`` for all a, b; requires Q to be a PFSG."""
    require_pfsg(G, Q)
    T, table = Q.triples, G.table
    for a in G.elements():
        a_inv = G.inverses[a]
        for b in G.elements():
            clause = _difference(T[table[b][a_inv]], T[table[a_inv][b]])
            if clause is not None:
                return PfsgVerdict(False, (a, b), clause)
    return HOLDS


def is_pfnsg_commute(G: FiniteGroup, Q: PictureFuzzySet) -> PfsgVerdict:
    """Normality as ``Q(ab) = Q(ba)`` for all a, b; requires Q to be a PFSG."""
    require_pfsg(G, Q)
    T, table = Q.triples, G.table
    for a in G.elements():
        for b in G.elements():
            clause = _difference(T[table[a][b]], T[table[b][a]])
            if clause is not None:
                return PfsgVerdict(False, (a, b), clause)
    return HOLDS


def is_pfnsg_conjugation(G: FiniteGroup, Q: PictureFuzzySet) -> PfsgVerdict:
    """Normality as ``Q(b⁻¹ab) = Q(a)`` for all a, b; requires Q to be a PFSG."""
    require_pfsg(G, Q)
    T = Q.triples
    for a in G.elements():
        for b in G.elements():
            clause = _difference(T[G.conjugate(a, b)], T[a])
            if clause is not None:
                return PfsgVerdict(False, (a, b), clause)
    return HOLDS


def conjugate_pfs(G: FiniteGroup, Q: PictureFuzzySet, a: GroupElement) -> PictureFuzzySet:
    """The conjugate of Q by a: ``g ↦ Q(a⁻¹ g a)``."""
    _require_carrier(G, Q)
    G.check_element(a)
    return PictureFuzzySet(
        Q.carrier, tuple(Q.triples[G.conjugate(g, a)] for g in G.elements())
    )


def are_conjugate(
    G: FiniteGroup, P: PictureFuzzySet, Q: PictureFuzzySet
) -> GroupElement | None:
    """Smallest a with ``P = conjugate_pfs(G, Q, a)``, or None."""
    _require_carrier(G, P)
    _require_carrier(G, Q)
    key = PictureTriple.as_tuple
    if sorted(P.triples, key=key) != sorted(Q.triples, key=key):
        return None
    for a in G.elements():
        if all(P.triples[g] == Q.triples[G.conjugate(g, a)] for g in G.elements()):
            return a
    return None


# ---------------------------------------------------------------------------
# Samplers
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class SubgroupChain:
    """Subgroups H₁ ⊂ … ⊂ H_k = G, strictly increasing."""

    group: FiniteGroup
    subgroups: tuple[GroupSubset, ...]

    def __post_init__(self) -> None:
        if not self.subgroups:
            raise InvalidSubsetError("A subgroup chain needs at least one subgroup")
        for H in self.subgroups:
            if not is_subgroup(self.group, H):
                raise InvalidSubsetError(f"{H.members} is not a subgroup of {self.group.name}")
        for inner, outer in zip(self.subgroups, self.subgroups[1:]):
            if not (inner.issubset(outer) and len(inner) < len(outer)):
                raise InvalidSubsetError(f"{inner.members} is not strictly inside {outer.members}")
        if len(self.subgroups[-1]) != self.group.order:
            raise InvalidSubsetError("The last subgroup of a chain must be the whole group")

    def __len__(self) -> int:
        return len(self.subgroups)

    def layer_of(self, y: GroupElement) -> int:
        return next(i for i, H in enumerate(self.subgroups) if y in H)


def _heights(family: list[GroupSubset]) -> dict[GroupSubset, int]:
    """Length of the longest strict chain of family members below each member."""
    heights: dict[GroupSubset, int] = {}
    for H in family:  # family is sorted by cardinality
        heights[H] = max(
            (heights[K] + 1 for K in heights if len(K) < len(H) and K.issubset(H)),
            default=0,
        )
    return heights


def random_chain(
    G: FiniteGroup,
    rng: random.Random,
    length: int,
    normal: bool = False,
    max_order: int | None = None,
) -> SubgroupChain:
    """
    Pick a random strict chain of ``length`` subgroups ending at G.

    Raises:
        UnsatisfiableChainError: If G has no chain of that length.
    """
    if length < 1:
        raise UnsatisfiableChainError(f"Chain length must be >= 1, got {length}")
    family = normal_subgroups(G, max_order) if normal else enumerate_subgroups(G, max_order)
    heights = _heights(family)
    current = family[-1]
    if heights[current] + 1 < length:
        kind = "normal " if normal else ""
        raise UnsatisfiableChainError(
            f"Longest {kind}subgroup chain of {G.name} has {heights[current] + 1} "
            f"members, {length} requested"
        )
    chain = [current]
    for remaining in range(length - 1, 0, -1):
        candidates = [
            K
            for K in family
            if len(K) < len(current) and K.issubset(current) and heights[K] >= remaining - 1
        ]
        current = rng.choice(candidates)
        chain.append(current)
    return SubgroupChain(G, tuple(reversed(chain)))


def _layer_values(rng: random.Random, k: int, denominator: int) -> list[PictureTriple]:
    # each component stays within denominator // 3, so every triple sums to <= 1
    cap = denominator // 3
    if k > cap + 1:
        raise UnsatisfiableChainError(
            f"Grid 1/{denominator} cannot hold {k} strictly monotone layers"
        )
    sigma = sorted(rng.sample(range(cap + 1), k), reverse=True)
    tau = sorted(rng.sample(range(cap + 1), k), reverse=True)
    eta = sorted(rng.sample(range(cap + 1), k))
    return [
        PictureTriple(Fraction(s, denominator), Fraction(t, denominator), Fraction(e, denominator))
        for s, t, e in zip(sigma, tau, eta)
    ]


@dataclass(frozen=True)
class LayeredSample:
    """A sampled PFS together with the chain and layer triples it came from."""

    pfs: PictureFuzzySet
    chain: SubgroupChain
    layers: tuple[PictureTriple, ...]


def sample_layered(
    G: FiniteGroup,
    seed: int,
    chain_length: int,
    normal: bool = False,
    denominator: int = SAMPLER_DENOMINATOR,
    max_order: int | None = None,
) -> LayeredSample:
    """
    Sample a layered PFS: constant triples on ``H_i \\ H_{i-1}`` with σ, τ
    strictly decreasing and η strictly increasing outward.
    """
    rng = random.Random(seed)
    chain = random_chain(G, rng, chain_length, normal=normal, max_order=max_order)
    layers = _layer_values(rng, chain_length, denominator)
    triples = tuple(layers[chain.layer_of(y)] for y in G.elements())
    logger.debug(
        f"Sampled {'normal ' if normal else ''}chain of {chain_length} on {G.name} (seed {seed})"
    )
    return LayeredSample(PictureFuzzySet(G, triples), chain, tuple(layers))


def sample_pfsg(
    G: FiniteGroup,
    seed: int,
    chain_length: int,
    denominator: int = SAMPLER_DENOMINATOR,
    max_order: int | None = None,
) -> PictureFuzzySet:
    """A random picture fuzzy subgroup of G, deterministic per seed."""
    return sample_layered(G, seed, chain_length, False, denominator, max_order).pfs


def sample_pfnsg(
    G: FiniteGroup,
    seed: int,
    chain_length: int,
    denominator: int = SAMPLER_DENOMINATOR,
    max_order: int | None = None,
) -> PictureFuzzySet:
    """A random picture fuzzy normal subgroup of G (chain of normal subgroups)."""
    return sample_layered(G, seed, chain_length, True, denominator, max_order).pfs


def sample_mixed_pfsg(
    G: FiniteGroup,
    seed: int,
    chain_length: int,
    normal: bool = False,
    denominator: int = SAMPLER_DENOMINATOR,
    max_order: int | None = None,
) -> PictureFuzzySet:
    """
    A PFSG whose σ, τ and η follow three independent chains.

    Unlike layered samples, triples of different elements need not be ordered
    by ``dominates``; every degree's level sets are still subgroups, so the
    result is a PFSG (a PFNSG when ``normal``).
    """
    rng = random.Random(seed)
    chains = [
        random_chain(G, rng, chain_length, normal=normal, max_order=max_order) for _ in range(3)
    ]
    layers = [_layer_values(rng, chain_length, denominator) for _ in range(3)]
    triples = tuple(
        PictureTriple(
            layers[0][chains[0].layer_of(y)].positive,
            layers[1][chains[1].layer_of(y)].neutral,
            layers[2][chains[2].layer_of(y)].negative,
        )
        for y in G.elements()
    )
    return PictureFuzzySet(G, triples)


def longest_chain(G: FiniteGroup, normal: bool = False, max_order: int | None = None) -> int:
    """Number of subgroups in the longest strict chain ending at G."""
    family = normal_subgroups(G, max_order) if normal else enumerate_subgroups(G, max_order)
    return _heights(family)[family[-1]] + 1
