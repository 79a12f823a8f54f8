"""
Verification campaigns.

A campaign runs every selected verifier over ``trials`` generated instances
and merges the per-instance reports into one report per theorem. Instances
come from chain samplers (guaranteed PFSGs), perturbed samples (one triple
replaced, mostly non-PFSGs), uniform-random raw PFS and a few hand-picked
cases. Each instance draws from its own RNG seeded by (seed, theorem, trial),
and results are merged in trial order, so reports do not depend on thread
scheduling.
"""

import hashlib
import logging
import random
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from src.config import (
    CAMPAIGN_COMPLETENESS_PROBES,
    MAX_PRODUCT_ORDER,
    RAW_DENOMINATOR,
    SAMPLER_DENOMINATOR,
)
from src.errors import UnknownTheoremError
from src.groups import (
    FiniteGroup,
    GroupHomomorphism,
    enumerate_subgroups,
    identity_map,
    is_abelian,
    make_product_group,
    normal_subgroups,
    projection,
    reduction_map,
    set_map,
    trivial_map,
)
from src.models import CampaignConfig, VerificationReport
from src.pfs import (
    PictureFuzzySet,
    PictureTriple,
    constant_pfs,
    make_pfs,
    random_pfs,
    random_triple,
)
from src.pfsg import (
    conjugate_pfs,
    longest_chain,
    sample_layered,
    sample_mixed_pfsg,
)
from src.registry import group_by_name, load_group
from src.theorems import (
    verify_conjugate_products,
    verify_coset_translation,
    verify_cut_normal_iff,
    verify_cut_subgroup_iff,
    verify_factor_recovery,
    verify_identity_dominance,
    verify_image_cut_laws,
    verify_pfnsg_forms,
    verify_pfsg_forms,
    verify_product_cut,
    verify_product_pfnsg,
    verify_product_pfsg,
    verify_threshold_completeness,
)

logger = logging.getLogger("pfg.campaign")

# (group, triples) pairs that are not PFSGs
HANDPICKED_NON_PFSG: tuple[tuple[str, tuple[tuple[str, str, str], ...]], ...] = (
    ("Z2", (("3/5", "1/5", "1/10"), ("2/5", "3/10", "1/5"))),
    (
        "Z4",
        (
            ("1/2", "1/4", "1/8"),
            ("1/3", "0", "1/3"),
            ("1/2", "1/4", "1/8"),
            ("1/4", "0", "1/3"),
        ),
    ),
    ("S3", (("1/2", "0", "0"), ("0", "0", "1"), ("0", "0", "1"), ("1/2", "0", "0"), ("0", "0", "1"), ("0", "0", "1"))),
)

# Theorems whose statement is an equivalence; they need both polarities.
IFF_THEOREMS = frozenset({"cut_subgroup_iff", "cut_normal_iff", "pfsg_forms", "pfnsg_forms"})


@dataclass
class CampaignContext:
    """Groups, maps and chain depths shared by every instance of a campaign."""

    groups: list[FiniteGroup]
    strict: bool = False
    max_order: int | None = None
    depth: dict[int, int] = field(default_factory=dict)
    normal_depth: dict[int, int] = field(default_factory=dict)
    pairs: list[tuple[FiniteGroup, FiniteGroup]] = field(default_factory=list)
    maps: list[tuple[GroupHomomorphism, PictureFuzzySet | None]] = field(default_factory=list)

    @classmethod
    def build(cls, config: CampaignConfig) -> "CampaignContext":
        groups = [load_group(ref) for ref in config.groups]
        extra = [group_by_name(name) for name in ("Z6", "D4", "S3")]
        ctx = cls(groups=groups, strict=config.strict, max_order=config.max_order)
        for G in groups + extra:
            # enumerate once here so worker threads only read the caches
            enumerate_subgroups(G, ctx.max_order)
            normal_subgroups(G, ctx.max_order)
            ctx.depth[id(G)] = longest_chain(G, False, ctx.max_order)
            ctx.normal_depth[id(G)] = longest_chain(G, True, ctx.max_order)
        ctx.pairs = [
            (G, H) for G in groups for H in groups if G.order * H.order <= MAX_PRODUCT_ORDER
        ]
        if not ctx.pairs:
            ctx.pairs = [(G, group_by_name("Z1")) for G in groups]
        ctx.maps = _map_catalogue(groups)
        return ctx

    def chain_length(self, G: FiniteGroup, rng: random.Random, normal: bool = False) -> int:
        depths = self.normal_depth if normal else self.depth
        if id(G) not in depths:
            depths[id(G)] = longest_chain(G, normal, self.max_order)
        return rng.randint(1, depths[id(G)])

    def abelian(self) -> list[FiniteGroup]:
        return [G for G in self.groups if is_abelian(G)] or self.groups

    def non_abelian(self) -> list[FiniteGroup]:
        return [G for G in self.groups if not is_abelian(G)] or self.groups


def _map_catalogue(
    groups: list[FiniteGroup],
) -> list[tuple[GroupHomomorphism, PictureFuzzySet | None]]:
    """Identity, trivial, reduction, projection and set maps, plus one fixed instance."""
    z1, z2 = group_by_name("Z1"), group_by_name("Z2")
    maps: list[tuple[GroupHomomorphism, PictureFuzzySet | None]] = [_mixed_levels_instance()]
    for G in groups:
        maps.append((identity_map(G), None))
        maps.append((trivial_map(G, z1), None))
        maps.append((trivial_map(G, z2), None))
    for n, d in ((4, 2), (6, 3), (6, 2), (12, 4)):
        maps.append((reduction_map(n, d), None))
    for P in (group_by_name("Z2xZ4"), make_product_group(group_by_name("S3"), z2)):
        maps.append((projection(P, 0), None))
        maps.append((projection(P, 1), None))
    rng = random.Random(0)
    for G in groups[:4]:
        target = group_by_name("Z3")
        maps.append((set_map(G, target, [rng.randrange(3) for _ in G.elements()]), None))
    return maps


def _mixed_levels_instance() -> tuple[GroupHomomorphism, PictureFuzzySet]:
    """
    On V4 = Z2xZ2 with the sum map onto Z2, σ peaks at (1,0) and τ at (0,1),
    which share a fiber; the image cut at (1/2, 1/2, 0) then strictly contains
    the image of the cut.
    """
    v4, z2 = group_by_name("V4"), group_by_name("Z2")
    f = GroupHomomorphism(v4, z2, (0, 1, 1, 0), name="sum")
    P = make_pfs(v4, [("1/2", "1/2", "0"), ("0", "1/2", "0"), ("1/2", "0", "0"), ("0", "0", "0")])
    return f, P


# ---------------------------------------------------------------------------
# Instance sources
# ---------------------------------------------------------------------------
def _sampled(ctx: CampaignContext, G: FiniteGroup, rng: random.Random, normal: bool = False) -> PictureFuzzySet:
    """A layered or mixed-chain PFSG (PFNSG when ``normal``), chosen at random."""
    k = ctx.chain_length(G, rng, normal)
    seed = rng.randrange(2**32)
    if rng.random() < 0.5:
        return sample_layered(G, seed, k, normal, SAMPLER_DENOMINATOR, ctx.max_order).pfs
    return sample_mixed_pfsg(G, seed, k, normal, SAMPLER_DENOMINATOR, ctx.max_order)


def _perturbed(ctx: CampaignContext, G: FiniteGroup, rng: random.Random) -> PictureFuzzySet:
    Q = _sampled(ctx, G, rng)
    return Q.with_triple(rng.randrange(G.order), random_triple(rng, SAMPLER_DENOMINATOR))


def _mixed_source(ctx: CampaignContext, rng: random.Random, trial: int) -> tuple[FiniteGroup, PictureFuzzySet]:
    """Sampler, perturbed sampler or raw PFS by ``trial % 3``; hand-picked first."""
    if trial % 3 == 2 and trial // 3 < len(HANDPICKED_NON_PFSG):
        name, triples = HANDPICKED_NON_PFSG[trial // 3]
        G = group_by_name(name)
        return G, make_pfs(G, triples)
    G = rng.choice(ctx.groups)
    kind = trial % 3
    if kind == 0:
        return G, _sampled(ctx, G, rng)
    if kind == 1:
        return G, _perturbed(ctx, G, rng)
    return G, random_pfs(G, rng, RAW_DENOMINATOR)


def _dominance_pair(
    ctx: CampaignContext, rng: random.Random, trial: int
) -> tuple[PictureFuzzySet, PictureFuzzySet]:
    """Pairs for the identity-dominance and factor-recovery theorems."""
    G, H = rng.choice(ctx.pairs)
    kind = trial % 5
    if kind == 4:
        return (
            constant_pfs(G, random_triple(rng, SAMPLER_DENOMINATOR)),
            constant_pfs(H, random_triple(rng, SAMPLER_DENOMINATOR)),
        )
    if kind == 3:
        Q = constant_pfs(H, (1, 0, 0)) if rng.random() < 0.5 else _sampled(ctx, H, rng)
        return random_pfs(G, rng, RAW_DENOMINATOR), Q
    P, Q = _sampled(ctx, G, rng), _sampled(ctx, H, rng)
    raised = PictureTriple("1/3", "1/3", 0)
    if kind == 1:
        Q = Q.with_triple(H.identity, raised)
    elif kind == 2:
        P = P.with_triple(G.identity, raised)
    return P, Q


# ---------------------------------------------------------------------------
# Per-theorem instance runners
# ---------------------------------------------------------------------------
def _cut_subgroup_iff(ctx: CampaignContext, rng: random.Random, trial: int) -> VerificationReport:
    G, Q = _mixed_source(ctx, rng, trial)
    return verify_cut_subgroup_iff(G, Q, strict=ctx.strict)


def _pfsg_forms(ctx: CampaignContext, rng: random.Random, trial: int) -> VerificationReport:
    G, Q = _mixed_source(ctx, rng, trial)
    return verify_pfsg_forms(G, Q)


def _pfnsg_forms(ctx: CampaignContext, rng: random.Random, trial: int) -> VerificationReport:
    G = rng.choice(ctx.groups)
    return verify_pfnsg_forms(G, _sampled(ctx, G, rng, normal=trial % 2 == 1))


def _cut_normal_iff(ctx: CampaignContext, rng: random.Random, trial: int) -> VerificationReport:
    G = rng.choice(ctx.abelian() if trial % 2 == 0 else ctx.non_abelian())
    return verify_cut_normal_iff(G, _sampled(ctx, G, rng, normal=trial % 3 == 0))


def _coset_translation(ctx: CampaignContext, rng: random.Random, trial: int) -> VerificationReport:
    candidates = [group_by_name(n) for n in ("Z6", "D4", "S3")] + ctx.groups
    G = candidates[trial % len(candidates)]
    return verify_coset_translation(G, _sampled(ctx, G, rng))


def _image_cut_laws(ctx: CampaignContext, rng: random.Random, trial: int) -> VerificationReport:
    f, fixed = ctx.maps[trial % len(ctx.maps)]
    if fixed is not None:
        P = fixed
    elif (trial // len(ctx.maps)) % 3 == 2:
        P = random_pfs(f.source, rng, RAW_DENOMINATOR)
    else:
        P = _sampled(ctx, f.source, rng)
    Q = _sampled(ctx, f.target, rng) if rng.random() < 0.5 else random_pfs(f.target, rng, RAW_DENOMINATOR)
    return verify_image_cut_laws(f, P, Q)


def _product_cut(ctx: CampaignContext, rng: random.Random, trial: int) -> VerificationReport:
    G, H = rng.choice(ctx.pairs)
    if trial % 2:
        return verify_product_cut(_sampled(ctx, G, rng), _sampled(ctx, H, rng))
    return verify_product_cut(random_pfs(G, rng, RAW_DENOMINATOR), random_pfs(H, rng, RAW_DENOMINATOR))


def _product_pfsg(ctx: CampaignContext, rng: random.Random, trial: int) -> VerificationReport:
    G, H = rng.choice(ctx.pairs)
    return verify_product_pfsg(_sampled(ctx, G, rng), _sampled(ctx, H, rng))


def _product_pfnsg(ctx: CampaignContext, rng: random.Random, trial: int) -> VerificationReport:
    G, H = rng.choice(ctx.pairs)
    return verify_product_pfnsg(_sampled(ctx, G, rng, True), _sampled(ctx, H, rng, True))


def _identity_dominance(ctx: CampaignContext, rng: random.Random, trial: int) -> VerificationReport:
    P, Q = _dominance_pair(ctx, rng, trial)
    return verify_identity_dominance(P, Q, strict=ctx.strict)


def _factor_recovery(ctx: CampaignContext, rng: random.Random, trial: int) -> VerificationReport:
    P, Q = _dominance_pair(ctx, rng, trial)
    return verify_factor_recovery(P, Q, strict=ctx.strict)


def _conjugate_products(ctx: CampaignContext, rng: random.Random, trial: int) -> VerificationReport:
    if trial % 2 == 0:
        G, H = group_by_name("S3"), group_by_name("D4")
        P1, Q1 = _sampled(ctx, G, rng), _sampled(ctx, H, rng)
        P2 = conjugate_pfs(G, P1, rng.randrange(G.order))
        Q2 = conjugate_pfs(H, Q1, rng.randrange(H.order))
    else:
        G, H = rng.choice(ctx.groups), rng.choice(ctx.groups)
        P1, P2 = _sampled(ctx, G, rng), _sampled(ctx, G, rng)
        Q1, Q2 = _sampled(ctx, H, rng), _sampled(ctx, H, rng)
    return verify_conjugate_products(P1, P2, Q1, Q2)


def _threshold_completeness(ctx: CampaignContext, rng: random.Random, trial: int) -> VerificationReport:
    _, Q = _mixed_source(ctx, rng, trial)
    return verify_threshold_completeness(Q, rng.randrange(2**32), CAMPAIGN_COMPLETENESS_PROBES)


Runner = Callable[[CampaignContext, random.Random, int], VerificationReport]

THEOREMS: dict[str, Runner] = {
    "cut_subgroup_iff": _cut_subgroup_iff,
    "cut_normal_iff": _cut_normal_iff,
    "coset_translation": _coset_translation,
    "image_cut_laws": _image_cut_laws,
    "product_cut": _product_cut,
    "product_pfsg": _product_pfsg,
    "product_pfnsg": _product_pfnsg,
    "identity_dominance": _identity_dominance,
    "factor_recovery": _factor_recovery,
    "conjugate_products": _conjugate_products,
    "pfsg_forms": _pfsg_forms,
    "pfnsg_forms": _pfnsg_forms,
    "threshold_completeness": _threshold_completeness,
}


def instance_seed(seed: int, theorem: str, trial: int) -> int:
    """Stable per-instance seed, independent of run order and Python hashing."""
    digest = hashlib.sha256(f"{seed}:{theorem}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _aggregate_details(details: list[dict[str, Any]], prefix: str = "") -> dict[str, Any]:
    """Count booleans as how often they held and string outcomes by value; sum integers."""
    merged: dict[str, Any] = {}
    counters: dict[str, Counter] = {}
    for d in details:
        for key, value in d.items():
            name = prefix + key
            if isinstance(value, bool):
                merged[name] = merged.get(name, 0) + int(value)
            elif isinstance(value, int):
                merged[name] = merged.get(name, 0) + value
            elif isinstance(value, str):
                counters.setdefault(name, Counter())[value] += 1
            elif isinstance(value, dict):
                for k, v in _aggregate_details([value], prefix=f"{name}.").items():
                    if isinstance(v, dict):
                        for outcome, n in v.items():
                            counters.setdefault(k, Counter())[outcome] += n
                    else:
                        merged[k] = merged.get(k, 0) + v
    for name, counter in counters.items():
        merged[name] = dict(sorted(counter.items()))
    return dict(sorted(merged.items()))


def merge_reports(theorem_id: str, reports: list[VerificationReport]) -> VerificationReport:
    """
    Fold per-instance reports (in trial order) into one.

    The merged counterexample is the first failing instance's, tagged with its
    trial index. The report is flagged low-coverage when an equivalence saw only
    one polarity or a conditional statement had no substantive instance.
    """
    failing = next(((i, r) for i, r in enumerate(reports) if not r.passed), None)
    counterexample = None
    if failing is not None:
        counterexample = {"trial": failing[0], **failing[1].counterexample}
    lhs_true = sum(r.lhs_true for r in reports)
    lhs_false = sum(r.lhs_false for r in reports)
    substantive = sum(r.substantive for r in reports)
    if theorem_id in IFF_THEOREMS:
        low_coverage = lhs_true == 0 or lhs_false == 0
    else:
        low_coverage = substantive == 0
    return VerificationReport(
        theorem_id=theorem_id,
        passed=failing is None,
        instances_checked=sum(r.instances_checked for r in reports),
        substantive=substantive,
        vacuous=sum(r.vacuous for r in reports),
        lhs_true=lhs_true,
        lhs_false=lhs_false,
        strict=any(r.strict for r in reports),
        low_coverage=low_coverage,
        details=_aggregate_details([r.details for r in reports]),
        counterexample=counterexample,
        elapsed=sum(r.elapsed or 0.0 for r in reports),
    )


def select_theorems(names: list[str] | None) -> list[str]:
    """
    Validate a theorem filter; None selects every theorem.

    Raises:
        UnknownTheoremError: If a name is not in ``THEOREMS``.
    """
    if not names:
        return list(THEOREMS)
    unknown = [n for n in names if n not in THEOREMS]
    if unknown:
        raise UnknownTheoremError(
            f"Unknown theorem {', '.join(unknown)}; valid: {', '.join(THEOREMS)}",
            valid=list(THEOREMS),
        )
    return list(names)


def run_campaign(config: CampaignConfig) -> list[VerificationReport]:
    """
    Run the selected theorems over ``config.trials`` instances each.

    Returns:
        list[VerificationReport]: One merged report per theorem, in catalogue
        order (or filter order when a filter is given).

    Raises:
        UnknownTheoremError: For a theorem tag outside the catalogue.
        UnknownGroupError: For an unresolvable group reference.
        ResourceLimitError: If a group exceeds the enumeration cap.
    """
    theorems = select_theorems(config.theorems)
    ctx = CampaignContext.build(config)
    logger.info(
        f"Campaign: {len(theorems)} theorems x {config.trials} trials on "
        f"{[G.name for G in ctx.groups]} (seed {config.seed})"
    )
    reports = []
    with ThreadPoolExecutor(
        max_workers=config.workers, thread_name_prefix="pfg-campaign"
    ) as executor:
        for theorem in theorems:
            runner = THEOREMS[theorem]
            start = time.perf_counter()

            def run_one(trial: int, runner: Runner = runner, theorem: str = theorem) -> VerificationReport:
                rng = random.Random(instance_seed(config.seed, theorem, trial))
                return runner(ctx, rng, trial)

            merged = merge_reports(theorem, list(executor.map(run_one, range(config.trials))))
            if merged.low_coverage:
                logger.warning(f"{theorem}: low coverage ({merged.substantive} substantive)")
            logger.info(
                f"{theorem}: {'passed' if merged.passed else 'FAILED'} "
                f"in {time.perf_counter() - start:.2f} s"
            )
            reports.append(merged)
    return reports
