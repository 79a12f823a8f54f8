"""
Exact picture fuzzy sets over finite groups.

Degrees are ``fractions.Fraction`` values in [0, 1]; every comparison is exact.
A picture fuzzy set assigns a (positive σ, neutral τ, negative η) triple with
``σ + τ + η <= 1`` to each element of its carrier group.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from src.errors import (
    CarrierMismatchError,
    DegreeParseError,
    ThresholdError,
    TripleSumError,
)
from src.groups import (
    FiniteGroup,
    GroupElement,
    GroupHomomorphism,
    GroupSubset,
    make_product_group,
)
from src.utils import format_degree, parse_degree

logger = logging.getLogger("pfg.pfs")

Degree = Fraction
ZERO: Degree = Fraction(0)
ONE: Degree = Fraction(1)


@dataclass(frozen=True)
class PictureTriple:
    """
    Positive, neutral and negative membership degrees of one element.

    Components accept ``Fraction``, ``int`` or ``"p/q"`` strings and are stored
    as Fractions.

    Raises:
        DegreeParseError: If a component is not a rational in [0, 1].
        TripleSumError: If ``positive + neutral + negative > 1``.
    """

    positive: Degree
    neutral: Degree
    negative: Degree

    def __post_init__(self) -> None:
        for name in ("positive", "neutral", "negative"):
            object.__setattr__(self, name, parse_degree(getattr(self, name)))
        total = self.positive + self.neutral + self.negative
        if total > 1:
            raise TripleSumError(
                f"Triple {self} has component sum {format_degree(total)} > 1"
            )

    @property
    def refusal(self) -> Degree:
        # 1 - (σ + τ + η); the sign-flipped variant 1 - (σ - τ - η) can exceed 1.
        return ONE - (self.positive + self.neutral + self.negative)

    def as_tuple(self) -> tuple[Degree, Degree, Degree]:
        return (self.positive, self.neutral, self.negative)

    def meets(self, c: "CutThreshold") -> bool:
        return self.positive >= c.r and self.neutral >= c.s and self.negative <= c.t

    def dominates(self, other: "PictureTriple") -> bool:
        """σ and τ at least other's, η at most other's."""
        return (
            self.positive >= other.positive
            and self.neutral >= other.neutral
            and self.negative <= other.negative
        )

    def to_strings(self) -> list[str]:
        return [format_degree(v) for v in self.as_tuple()]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"


EMPTY = PictureTriple(ZERO, ZERO, ONE)


@dataclass(frozen=True, order=True)
class CutThreshold:
    """An (r, s, t) threshold with ``r + s + t <= 1``."""

    r: Degree
    s: Degree
    t: Degree

    def __post_init__(self) -> None:
        try:
            for name in ("r", "s", "t"):
                object.__setattr__(self, name, parse_degree(getattr(self, name)))
        except DegreeParseError as e:
            raise ThresholdError(str(e)) from e
        if self.r + self.s + self.t > 1:
            raise ThresholdError(
                f"Threshold ({self.r}, {self.s}, {self.t}) violates r + s + t <= 1"
            )

    def to_strings(self) -> list[str]:
        return [format_degree(v) for v in (self.r, self.s, self.t)]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"


@dataclass(frozen=True)
class PictureFuzzySet:
    """
    A picture fuzzy set: one PictureTriple per element of the carrier group.

    Attributes:
        carrier (FiniteGroup): The underlying group.
        triples (tuple[PictureTriple, ...]): ``triples[y]`` belongs to element y.
    """

    carrier: FiniteGroup
    triples: tuple[PictureTriple, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "triples", tuple(self.triples))
        if len(self.triples) != self.carrier.order:
            raise CarrierMismatchError(
                f"{len(self.triples)} triples given for carrier "
                f"{self.carrier.name} of order {self.carrier.order}"
            )

    def __getitem__(self, y: GroupElement) -> PictureTriple:
        return self.triples[self.carrier.check_element(y)]

    def __len__(self) -> int:
        return len(self.triples)

    def with_triple(self, y: GroupElement, triple: PictureTriple) -> "PictureFuzzySet":
        triples = list(self.triples)
        triples[self.carrier.check_element(y)] = triple
        return PictureFuzzySet(self.carrier, tuple(triples))


def _as_triple(value: PictureTriple | Sequence) -> PictureTriple:
    if isinstance(value, PictureTriple):
        return value
    if len(value) != 3:
        raise DegreeParseError(f"Expected three degrees, got {len(value)}")
    return PictureTriple(*value)


def make_pfs(carrier: FiniteGroup, triples: Iterable[PictureTriple | Sequence]) -> PictureFuzzySet:
    """
    Build a validated picture fuzzy set.

    Args:
        carrier (FiniteGroup): The carrier group.
        triples: One triple (or 3-sequence of degrees) per carrier element.

    Raises:
        TripleSumError: If an element's triple sums above 1; ``index`` names it.
        DegreeParseError: If a degree is malformed or outside [0, 1].
        CarrierMismatchError: If the number of triples differs from the order.
    """
    checked = []
    for index, value in enumerate(triples):
        try:
            checked.append(_as_triple(value))
        except TripleSumError as e:
            raise TripleSumError(f"Element {index}: {e}", index=index) from e
        except DegreeParseError as e:
            raise DegreeParseError(f"Element {index}: {e}") from e
    return PictureFuzzySet(carrier, tuple(checked))


def constant_pfs(carrier: FiniteGroup, triple: PictureTriple | Sequence) -> PictureFuzzySet:
    return PictureFuzzySet(carrier, (_as_triple(triple),) * carrier.order)


def refusal_degree(Q: PictureFuzzySet, y: GroupElement) -> Degree:
    """Return ``1 - (σ_Q(y) + τ_Q(y) + η_Q(y))``."""
    return Q[y].refusal


def cut_set(Q: PictureFuzzySet, c: CutThreshold) -> GroupSubset:
    """Return ``{y : σ_Q(y) >= r, τ_Q(y) >= s, η_Q(y) <= t}`` (possibly empty)."""
    r, s, t = c.r, c.s, c.t
    return GroupSubset(
        Q.carrier,
        tuple(
            y
            for y, x in enumerate(Q.triples)
            if x.positive >= r and x.neutral >= s and x.negative <= t
        ),
    )


def representative_thresholds(Q: PictureFuzzySet) -> list[CutThreshold]:
    """
    Finite stand-in for "all (r, s, t) with r + s + t <= 1".

    Uses attained σ values plus 0, attained τ values plus 0 and attained η
    values plus 1, keeping combinations with ``r + s + t <= 1``. Cut sets only
    change at attained values, so every realizable non-empty cut of Q is
    ``cut_set(Q, c)`` for a listed c: for a non-empty cut C the threshold
    (min σ over C, min τ over C, max η over C) is listed and reproduces C.
    """
    rs = sorted({x.positive for x in Q.triples} | {ZERO})
    ss = sorted({x.neutral for x in Q.triples} | {ZERO})
    ts = sorted({x.negative for x in Q.triples} | {ONE})
    return [
        CutThreshold(r, s, t)
        for r, s, t in itertools.product(rs, ss, ts)
        if r + s + t <= 1
    ]


def level_sets(Q: PictureFuzzySet) -> list[tuple[CutThreshold, GroupSubset]]:
    """
    Distinct non-empty cuts of Q with the first representative threshold that
    realises each, ordered by cardinality. For a PFSG these are its level
    subgroups.
    """
    seen: dict[GroupSubset, CutThreshold] = {}
    for c in representative_thresholds(Q):
        S = cut_set(Q, c)
        if S.members and S not in seen:
            seen[S] = c
    return sorted(((c, S) for S, c in seen.items()), key=lambda p: (len(p[1]), p[1].members))


def cartesian_product(P: PictureFuzzySet, Q: PictureFuzzySet) -> PictureFuzzySet:
    """
    Return P × Q on ``make_product_group(P.carrier, Q.carrier)``:
    σ and τ combine by min, η by max.
    """
    carrier = make_product_group(P.carrier, Q.carrier)
    triples = tuple(
        PictureTriple(
            min(p.positive, q.positive),
            min(p.neutral, q.neutral),
            max(p.negative, q.negative),
        )
        for p in P.triples
        for q in Q.triples
    )
    return PictureFuzzySet(carrier, triples)


def _check_carrier(expected: FiniteGroup, actual: FiniteGroup, role: str) -> None:
    if not expected.same_table(actual):
        raise CarrierMismatchError(
            f"{role}: expected carrier {expected.name}, got {actual.name}"
        )


def image(f: GroupHomomorphism, P: PictureFuzzySet) -> PictureFuzzySet:
    """
    Return f(P): max σ, max τ and min η over each fiber; (0, 0, 1) on
    elements outside the range of f.

    Raises:
        TripleSumError: If a fiber combines into a triple with sum above 1
            (σ and τ peaking at different elements); ``index`` is the target
            element. Fibers whose triples are ordered by ``dominates`` never do.
    """
    triples = []
    for y2, bounds in enumerate(fiber_bounds(f, P)):
        try:
            triples.append(PictureTriple(*bounds))
        except TripleSumError as e:
            raise TripleSumError(f"Image at element {y2}: {e}", index=y2) from e
    return PictureFuzzySet(f.target, tuple(triples))


def fiber_bounds(
    f: GroupHomomorphism, P: PictureFuzzySet
) -> list[tuple[Degree, Degree, Degree]]:
    """
    Per target element, (max σ, max τ, min η) over its fiber, or (0, 0, 1)
    for an empty fiber. The sum may exceed 1.
    """
    _check_carrier(f.source, P.carrier, "image")
    fibers: list[list[PictureTriple]] = [[] for _ in f.target.elements()]
    for y1, y2 in enumerate(f.mapping):
        fibers[y2].append(P.triples[y1])
    return [
        (
            max(x.positive for x in fiber),
            max(x.neutral for x in fiber),
            min(x.negative for x in fiber),
        )
        if fiber
        else EMPTY.as_tuple()
        for fiber in fibers
    ]


def preimage(f: GroupHomomorphism, Q: PictureFuzzySet) -> PictureFuzzySet:
    """Return f⁻¹(Q) with ``f⁻¹(Q)(y) = Q(f(y))``."""
    _check_carrier(f.target, Q.carrier, "preimage")
    return PictureFuzzySet(f.source, tuple(Q.triples[y] for y in f.mapping))


def pfs_equal(P: PictureFuzzySet, Q: PictureFuzzySet) -> bool:
    """Exact componentwise equality of two PFS on the same carrier."""
    _check_carrier(P.carrier, Q.carrier, "pfs_equal")
    return P.triples == Q.triples


def random_triple(rng: random.Random, denominator: int) -> PictureTriple:
    """A triple on the grid ``k / denominator`` with sum at most 1."""
    cuts = sorted(rng.randint(0, denominator) for _ in range(3))
    parts = [cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1]]
    rng.shuffle(parts)
    return PictureTriple(*(Fraction(p, denominator) for p in parts))


def random_pfs(G: FiniteGroup, rng: random.Random, denominator: int) -> PictureFuzzySet:
    """Uniform-random raw PFS (no subgroup structure)."""
    return PictureFuzzySet(G, tuple(random_triple(rng, denominator) for _ in G.elements()))


def random_threshold(rng: random.Random, denominator: int) -> CutThreshold:
    x = random_triple(rng, denominator)
    return CutThreshold(x.positive, x.neutral, x.negative)
