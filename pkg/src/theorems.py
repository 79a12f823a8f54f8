"""
Mechanical verifiers for the picture fuzzy subgroup theorems.

Each ``verify_*`` function checks one instance exhaustively and returns a
``VerificationReport``. Conditional statements count an instance as vacuous
when its hypothesis fails; iff statements record the polarity of their
left-hand side. Every counterexample carries the offending PFS in file format
so it can be replayed through the base predicates.
"""

from __future__ import annotations

import logging
import math
import random
import time
from typing import Any

from src.config import COMPLETENESS_PROBES
from src.errors import NotPfsgError, TripleSumError
from src.groups import (
    FiniteGroup,
    GroupHomomorphism,
    is_normal_subgroup,
    is_subgroup,
    pair_index,
    subset_image,
    subset_preimage,
    subset_product,
    translate_left,
    translate_right,
)
from src.models import VerificationReport
from src.pfs import (
    CutThreshold,
    PictureFuzzySet,
    cartesian_product,
    cut_set,
    fiber_bounds,
    image,
    pfs_equal,
    preimage,
    random_threshold,
    representative_thresholds,
)
from src.pfsg import (
    are_conjugate,
    conjugate_pfs,
    is_pfnsg_commute,
    is_pfnsg_conjugation,
    is_pfnsg_cosets,
    is_pfsg,
    is_pfsg_compact,
    left_coset,
    require_pfsg,
    right_coset,
)
from src.storage import pfs_payload
from src.utils import clean_for_json

logger = logging.getLogger("pfg.theorems")

# Thresholds outside the attained values; their cuts are empty for most PFS.
STRICT_PROBES: tuple[CutThreshold, ...] = (
    CutThreshold(1, 0, 0),
    CutThreshold(0, 1, 0),
    CutThreshold(0, 0, 0),
)


class _Tally:
    """Accumulates counts for one verifier call and builds its report."""

    def __init__(self, theorem_id: str, strict: bool = False):
        self.theorem_id = theorem_id
        self.strict = strict
        self.substantive = 0
        self.vacuous = 0
        self.lhs_true = 0
        self.lhs_false = 0
        self.details: dict[str, Any] = {}
        self.counterexample: dict[str, Any] | None = None
        self._start = time.perf_counter()

    def polarity(self, lhs: bool) -> None:
        self.substantive += 1
        if lhs:
            self.lhs_true += 1
        else:
            self.lhs_false += 1

    def fail(self, **payload: Any) -> None:
        if self.counterexample is None:
            self.counterexample = clean_for_json(payload)

    def report(self) -> VerificationReport:
        report = VerificationReport(
            theorem_id=self.theorem_id,
            passed=self.counterexample is None,
            instances_checked=1,
            substantive=self.substantive,
            vacuous=self.vacuous,
            lhs_true=self.lhs_true,
            lhs_false=self.lhs_false,
            strict=self.strict,
            details=clean_for_json(self.details),
            counterexample=self.counterexample,
            elapsed=time.perf_counter() - self._start,
        )
        if not report.passed:
            logger.warning(f"{self.theorem_id}: counterexample found")
        return report


def _nonempty_cuts(Q: PictureFuzzySet):
    for c in representative_thresholds(Q):
        S = cut_set(Q, c)
        if S.members:
            yield c, S


# ---------------------------------------------------------------------------
# Cuts and subgroups
# ---------------------------------------------------------------------------
def verify_cut_subgroup_iff(
    G: FiniteGroup, Q: PictureFuzzySet, strict: bool = False
) -> VerificationReport:
    """
    Q is a PFSG iff every non-empty (r, s, t)-cut of Q is a subgroup.

    With ``strict=True`` the quantifier runs over every representative
    threshold plus ``STRICT_PROBES`` and empty cuts count as non-subgroups,
    which is the unrestricted reading; it fails for every PFSG.
    """
    tally = _Tally("cut_subgroup_iff", strict)
    lhs = is_pfsg(G, Q)
    thresholds = representative_thresholds(Q)
    if strict:
        thresholds += [c for c in STRICT_PROBES if c not in thresholds]
    bad: tuple[CutThreshold, Any] | None = None
    for c in thresholds:
        S = cut_set(Q, c)
        if not S.members and not strict:
            continue
        if not is_subgroup(G, S):
            bad = (c, S)
            break
    rhs = bad is None
    tally.polarity(lhs.holds)
    tally.details = {"lhs": lhs.holds, "rhs": rhs}
    if lhs.holds != rhs:
        tally.fail(
            pfs=pfs_payload(Q),
            lhs=lhs.to_dict(),
            threshold=bad[0].to_strings() if bad else None,
            cut=list(bad[1].members) if bad else None,
            reason="cut is not a subgroup although the PFS is a PFSG"
            if lhs.holds
            else "every non-empty cut is a subgroup but the PFS is not a PFSG",
        )
    return tally.report()


def verify_cut_normal_iff(G: FiniteGroup, Q: PictureFuzzySet) -> VerificationReport:
    """A PFSG Q is normal iff every non-empty cut of Q is a normal subgroup."""
    tally = _Tally("cut_normal_iff")
    lhs = is_pfnsg_conjugation(G, Q)
    bad = next(((c, S) for c, S in _nonempty_cuts(Q) if not is_normal_subgroup(G, S)), None)
    rhs = bad is None
    tally.polarity(lhs.holds)
    tally.details = {"lhs": lhs.holds, "rhs": rhs}
    if lhs.holds != rhs:
        tally.fail(
            pfs=pfs_payload(Q),
            lhs=lhs.to_dict(),
            threshold=bad[0].to_strings() if bad else None,
            cut=list(bad[1].members) if bad else None,
        )
    return tally.report()


def verify_coset_translation(G: FiniteGroup, Q: PictureFuzzySet) -> VerificationReport:
    """``a * C(Q) = C(aQ)`` and ``C(Q) * a = C(Qa)`` for all a and thresholds."""
    require_pfsg(G, Q)
    tally = _Tally("coset_translation")
    thresholds = representative_thresholds(Q)
    cuts = [(c, cut_set(Q, c)) for c in thresholds]
    tally.substantive = 1
    for a in G.elements():
        left, right = left_coset(G, Q, a), right_coset(G, Q, a)
        for c, S in cuts:
            if translate_left(G, a, S) != cut_set(left, c):
                tally.fail(pfs=pfs_payload(Q), element=a, threshold=c.to_strings(), side="left")
                return tally.report()
            if translate_right(G, S, a) != cut_set(right, c):
                tally.fail(pfs=pfs_payload(Q), element=a, threshold=c.to_strings(), side="right")
                return tally.report()
    tally.details = {"elements": G.order, "thresholds": len(thresholds)}
    return tally.report()


# ---------------------------------------------------------------------------
# Images and preimages
# ---------------------------------------------------------------------------
def verify_image_cut_laws(
    f: GroupHomomorphism, P: PictureFuzzySet, Q: PictureFuzzySet
) -> VerificationReport:
    """
    For P on the source and Q on the target of f:

    (i) ``f(C(P)) ⊆ C(f(P))`` for every representative threshold of P,
    (ii) ``f⁻¹(C(Q)) = C(f⁻¹(Q))`` for every representative threshold of Q,
    (iii) the fiber bounds of P at ``f(y)`` dominate ``P(y)`` for every
          source element y.

    When a fiber of P sums above 1, f(P) is not a picture fuzzy set and only
    (i) is skipped; (ii) and (iii) are checked on every instance. The outcome
    of each clause is recorded in ``details.clauses`` and
    ``details.strict_inclusion_seen`` records whether (i) was strict somewhere.
    """
    tally = _Tally("image_cut_laws")
    tally.substantive = 1
    clauses = {"inclusion": "holds", "preimage": "holds", "pointwise": "holds"}
    strict_seen = False
    try:
        fP = image(f, P)
    except TripleSumError as e:
        logger.debug(f"Image under {f.name} is not a PFS: {e}")
        fP = None
        clauses["inclusion"] = "skipped"

    if fP is not None:
        for c in representative_thresholds(P):
            mapped, target_cut = subset_image(f, cut_set(P, c)), cut_set(fP, c)
            if not mapped.issubset(target_cut):
                clauses["inclusion"] = "fails"
                tally.fail(
                    clause="image-inclusion",
                    map=f.name,
                    pfs=pfs_payload(P),
                    threshold=c.to_strings(),
                    image_of_cut=list(mapped.members),
                    cut_of_image=list(target_cut.members),
                )
                break
            strict_seen = strict_seen or len(mapped) < len(target_cut)

    fQ = preimage(f, Q)
    for c in representative_thresholds(Q):
        pulled, source_cut = subset_preimage(f, cut_set(Q, c)), cut_set(fQ, c)
        if pulled != source_cut:
            clauses["preimage"] = "fails"
            tally.fail(
                clause="preimage-equality",
                map=f.name,
                pfs=pfs_payload(Q),
                threshold=c.to_strings(),
                preimage_of_cut=list(pulled.members),
                cut_of_preimage=list(source_cut.members),
            )
            break

    bounds = fiber_bounds(f, P)
    for y, x in enumerate(P.triples):
        sigma, tau, eta = bounds[f(y)]
        if sigma < x.positive or tau < x.neutral or eta > x.negative:
            clauses["pointwise"] = "fails"
            tally.fail(clause="pointwise-bound", map=f.name, pfs=pfs_payload(P), element=y)
            break

    tally.details = {
        "map": f.name,
        "image_is_pfs": fP is not None,
        "strict_inclusion_seen": strict_seen,
        "clauses": clauses,
    }
    return tally.report()


# ---------------------------------------------------------------------------
# Direct products
# ---------------------------------------------------------------------------
def verify_product_cut(P: PictureFuzzySet, Q: PictureFuzzySet) -> VerificationReport:
    """``C(P × Q) = C(P) × C(Q)`` for every representative threshold of P × Q."""
    tally = _Tally("product_cut")
    PQ = cartesian_product(P, Q)
    tally.substantive = 1
    for c in representative_thresholds(PQ):
        lhs = cut_set(PQ, c)
        rhs = subset_product(PQ.carrier, cut_set(P, c), cut_set(Q, c))
        if lhs != rhs:
            tally.fail(
                left=pfs_payload(P),
                right=pfs_payload(Q),
                threshold=c.to_strings(),
                cut_of_product=list(lhs.members),
                product_of_cuts=list(rhs.members),
            )
            break
    return tally.report()


def verify_product_pfsg(P: PictureFuzzySet, Q: PictureFuzzySet) -> VerificationReport:
    """The product of two PFSGs is a PFSG of the product group."""
    require_pfsg(P.carrier, P, "left factor")
    require_pfsg(Q.carrier, Q, "right factor")
    tally = _Tally("product_pfsg")
    PQ = cartesian_product(P, Q)
    verdict = is_pfsg(PQ.carrier, PQ)
    tally.substantive = 1
    if not verdict.holds:
        tally.fail(left=pfs_payload(P), right=pfs_payload(Q), verdict=verdict.to_dict())
    return tally.report()


def _require_pfnsg(Q: PictureFuzzySet, role: str) -> None:
    verdict = is_pfnsg_conjugation(Q.carrier, Q)
    if not verdict.holds:
        raise NotPfsgError(
            f"{role} on {Q.carrier.name} is not a picture fuzzy normal subgroup "
            f"({verdict.describe()})",
            verdict,
        )


def verify_product_pfnsg(P: PictureFuzzySet, Q: PictureFuzzySet) -> VerificationReport:
    """The product of two PFNSGs is a PFNSG of the product group."""
    _require_pfnsg(P, "left factor")
    _require_pfnsg(Q, "right factor")
    tally = _Tally("product_pfnsg")
    PQ = cartesian_product(P, Q)
    verdict = is_pfnsg_conjugation(PQ.carrier, PQ)
    tally.substantive = 1
    if not verdict.holds:
        tally.fail(left=pfs_payload(P), right=pfs_payload(Q), verdict=verdict.to_dict())
    return tally.report()


def _dominance_branches(P: PictureFuzzySet, Q: PictureFuzzySet) -> tuple[bool, bool]:
    """(Q(e₂) dominates all of P, P(e₁) dominates all of Q)."""
    top_p = P.triples[P.carrier.identity]
    top_q = Q.triples[Q.carrier.identity]
    return (
        all(top_q.dominates(x) for x in P.triples),
        all(top_p.dominates(x) for x in Q.triples),
    )


def _per_degree_failure(P: PictureFuzzySet, Q: PictureFuzzySet) -> str | None:
    top_p = P.triples[P.carrier.identity]
    top_q = Q.triples[Q.carrier.identity]
    checks = (
        (
            "positive",
            top_q.positive >= max(x.positive for x in P.triples)
            or top_p.positive >= max(x.positive for x in Q.triples),
        ),
        (
            "neutral",
            top_q.neutral >= max(x.neutral for x in P.triples)
            or top_p.neutral >= max(x.neutral for x in Q.triples),
        ),
        (
            "negative",
            top_q.negative <= min(x.negative for x in P.triples)
            or top_p.negative <= min(x.negative for x in Q.triples),
        ),
    )
    return next((name for name, ok in checks if not ok), None)


def verify_identity_dominance(
    P: PictureFuzzySet, Q: PictureFuzzySet, strict: bool = False
) -> VerificationReport:
    """
    If P × Q is a PFSG then the identities dominate across factors.

    The default check is per degree: for each of σ, τ, η either Q(e₂) bounds
    every value of P or P(e₁) bounds every value of Q. ``strict=True`` demands
    one whole factor identity to dominate the other factor in all three
    degrees at once, which fails for e.g. constant ``(1/2, 1/10, 0)`` against
    constant ``(1/10, 1/2, 0)``. The details record which whole-factor
    branches held.
    """
    tally = _Tally("identity_dominance", strict)
    PQ = cartesian_product(P, Q)
    hypothesis = is_pfsg(PQ.carrier, PQ).holds
    branch_i, branch_ii = _dominance_branches(P, Q)
    tally.details = {"hypothesis": hypothesis, "branch_i": branch_i, "branch_ii": branch_ii}
    if not hypothesis:
        tally.vacuous = 1
        return tally.report()
    tally.substantive = 1
    if strict:
        if not (branch_i or branch_ii):
            tally.fail(left=pfs_payload(P), right=pfs_payload(Q), reason="neither branch holds")
    else:
        degree = _per_degree_failure(P, Q)
        if degree is not None:
            tally.fail(left=pfs_payload(P), right=pfs_payload(Q), degree=degree)
    return tally.report()


def verify_factor_recovery(
    P: PictureFuzzySet, Q: PictureFuzzySet, strict: bool = False
) -> VerificationReport:
    """
    Recover factor PFSGs from a PFSG product.

    (a) P × Q a PFSG and Q(e₂) dominating all of P implies P is a PFSG.
    (b) P × Q a PFSG and P(e₁) dominating all of Q implies Q is a PFSG.
    (c) P × Q a PFSG implies P or Q is a PFSG. By default (c) also assumes
        (a)'s or (b)'s dominance; without it the product of ``(0, τ, 0)`` and
        ``(σ, 0, 0)`` is constant ``(0, 0, 0)`` while neither factor need be a
        PFSG. Instances missing the dominance are labelled ``dominance-gap``.
        ``strict=True`` checks the bare implication.

    The instance counts as vacuous when no clause's hypothesis held.
    """
    tally = _Tally("factor_recovery", strict)
    PQ = cartesian_product(P, Q)
    product_ok = is_pfsg(PQ.carrier, PQ).holds
    branch_i, branch_ii = _dominance_branches(P, Q)
    p_ok = is_pfsg(P.carrier, P).holds
    q_ok = is_pfsg(Q.carrier, Q).holds

    def outcome(hypothesis: bool, conclusion: bool) -> str:
        if not hypothesis:
            return "vacuous"
        return "holds" if conclusion else "fails"

    clause_c_hypothesis = product_ok and (strict or branch_i or branch_ii)
    clauses = {
        "a": outcome(product_ok and branch_i, p_ok),
        "b": outcome(product_ok and branch_ii, q_ok),
        "c": outcome(clause_c_hypothesis, p_ok or q_ok),
    }
    if product_ok and not clause_c_hypothesis:
        clauses["c"] = "dominance-gap"
    tally.details = {"product_is_pfsg": product_ok, "clauses": clauses}
    if any(v in ("holds", "fails") for v in clauses.values()):
        tally.substantive = 1
    else:
        tally.vacuous = 1
    failed = [k for k, v in clauses.items() if v == "fails"]
    if failed:
        tally.fail(left=pfs_payload(P), right=pfs_payload(Q), clause=failed[0])
    return tally.report()


def verify_conjugate_products(
    P1: PictureFuzzySet, P2: PictureFuzzySet, Q1: PictureFuzzySet, Q2: PictureFuzzySet
) -> VerificationReport:
    """
    If P1 is conjugate to P2 by a and Q1 to Q2 by b, then P1 × Q1 is the
    conjugate of P2 × Q2 by (a, b). Vacuous when either conjugacy is absent.
    """
    for role, X in (("P1", P1), ("P2", P2), ("Q1", Q1), ("Q2", Q2)):
        require_pfsg(X.carrier, X, role)
    tally = _Tally("conjugate_products")
    a = are_conjugate(P1.carrier, P1, P2)
    b = are_conjugate(Q1.carrier, Q1, Q2)
    tally.details = {"conjugate_left": a is not None, "conjugate_right": b is not None}
    if a is None or b is None:
        tally.vacuous = 1
        return tally.report()
    tally.substantive = 1
    PQ2 = cartesian_product(P2, Q2)
    w = pair_index(PQ2.carrier, a, b)
    if not pfs_equal(cartesian_product(P1, Q1), conjugate_pfs(PQ2.carrier, PQ2, w)):
        tally.fail(
            P1=pfs_payload(P1),
            P2=pfs_payload(P2),
            Q1=pfs_payload(Q1),
            Q2=pfs_payload(Q2),
            witness=[a, b],
        )
    return tally.report()


# ---------------------------------------------------------------------------
# Characterisations
# ---------------------------------------------------------------------------
def verify_pfsg_forms(G: FiniteGroup, Q: PictureFuzzySet) -> VerificationReport:
    """The closure/inverse form and the ``a * b⁻¹`` form of PFSG agree."""
    tally = _Tally("pfsg_forms")
    full, compact = is_pfsg(G, Q), is_pfsg_compact(G, Q)
    tally.polarity(full.holds)
    if full.holds != compact.holds:
        tally.fail(pfs=pfs_payload(Q), full=full.to_dict(), compact=compact.to_dict())
    return tally.report()


def verify_pfnsg_forms(G: FiniteGroup, Q: PictureFuzzySet) -> VerificationReport:
    """The coset, commuting and conjugation forms of normality agree on PFSGs."""
    tally = _Tally("pfnsg_forms")
    if not is_pfsg(G, Q).holds:
        tally.vacuous = 1
        return tally.report()
    verdicts = {
        "cosets": is_pfnsg_cosets(G, Q),
        "commute": is_pfnsg_commute(G, Q),
        "conjugation": is_pfnsg_conjugation(G, Q),
    }
    tally.polarity(verdicts["conjugation"].holds)
    if len({v.holds for v in verdicts.values()}) > 1:
        tally.fail(pfs=pfs_payload(Q), **{k: v.to_dict() for k, v in verdicts.items()})
    return tally.report()


def verify_threshold_completeness(
    Q: PictureFuzzySet, seed: int, probes: int = COMPLETENESS_PROBES
) -> VerificationReport:
    """
    Every non-empty cut at a random threshold is also the cut at some
    representative threshold.

    Probes are drawn on a grid twice as fine as the degrees of Q, so they hit
    attained values exactly as well as the gaps between them.
    """
    tally = _Tally("threshold_completeness")
    realised = {cut_set(Q, c) for c in representative_thresholds(Q)}
    denominator = 2 * math.lcm(*(v.denominator for x in Q.triples for v in x.as_tuple()))
    rng = random.Random(seed)
    tally.substantive = 1
    empty = 0
    for _ in range(probes):
        c = random_threshold(rng, denominator)
        S = cut_set(Q, c)
        if not S.members:
            empty += 1
            continue
        if S not in realised:
            tally.fail(pfs=pfs_payload(Q), threshold=c.to_strings(), cut=list(S.members))
            break
    tally.details = {"probes": probes, "empty_probes": empty, "distinct_cuts": len(realised)}
    return tally.report()
