"""
Tests for verification campaigns: determinism, filtering, merging and coverage.
"""

import json

import pytest

from src.campaign import (
    THEOREMS,
    instance_seed,
    merge_reports,
    run_campaign,
    select_theorems,
)
from src.cli import EXIT_OK, main
from src.errors import UnknownGroupError, UnknownTheoremError
from src.models import CampaignConfig, VerificationReport

SMALL_GROUPS = ["Z2", "Z4", "V4", "S3"]


def report(theorem_id="product_cut", counterexample=None, **counts):
    return VerificationReport(
        theorem_id=theorem_id,
        passed=counterexample is None,
        instances_checked=1,
        counterexample=counterexample,
        **counts,
    )


def without_elapsed(reports):
    return [r.model_dump(exclude={"elapsed"}) for r in reports]


def test_instance_seed_is_stable():
    assert instance_seed(7, "product_cut", 3) == instance_seed(7, "product_cut", 3)
    assert instance_seed(7, "product_cut", 3) != instance_seed(7, "product_cut", 4)
    assert instance_seed(7, "product_cut", 3) != instance_seed(8, "product_cut", 3)


def test_select_theorems():
    assert select_theorems(None) == list(THEOREMS)
    assert select_theorems(["product_cut"]) == ["product_cut"]
    with pytest.raises(UnknownTheoremError) as info:
        select_theorems(["product_cut", "thm_99"])
    assert "thm_99" in str(info.value)
    assert info.value.valid == list(THEOREMS)


def test_merge_reports_takes_first_failure():
    merged = merge_reports(
        "product_cut",
        [
            report(substantive=1),
            report(counterexample={"threshold": ["1", "0", "0"]}, substantive=1),
            report(counterexample={"threshold": ["0", "0", "0"]}, substantive=1),
        ],
    )
    assert not merged.passed
    assert merged.instances_checked == 3
    assert merged.counterexample == {"trial": 1, "threshold": ["1", "0", "0"]}


def test_merge_reports_coverage_flags():
    """Equivalences need both polarities; other theorems need one substantive instance."""
    one_sided = merge_reports("pfsg_forms", [report("pfsg_forms", substantive=1, lhs_true=1)] * 2)
    assert one_sided.low_coverage
    both = merge_reports(
        "pfsg_forms",
        [report("pfsg_forms", substantive=1, lhs_true=1), report("pfsg_forms", substantive=1, lhs_false=1)],
    )
    assert not both.low_coverage
    vacuous = merge_reports("identity_dominance", [report("identity_dominance", vacuous=1)] * 3)
    assert vacuous.low_coverage and vacuous.passed


def test_merge_reports_aggregates_details():
    reports = [
        report(details={"hypothesis": True, "clauses": {"c": "holds"}, "elements": 4, "map": "mod2"}),
        report(details={"hypothesis": False, "clauses": {"c": "dominance-gap"}, "elements": 6, "map": "mod2"}),
    ]
    details = merge_reports("factor_recovery", reports).details
    assert details["hypothesis"] == 1
    assert details["elements"] == 10
    assert details["map"] == {"mod2": 2}
    assert details["clauses.c"] == {"dominance-gap": 1, "holds": 1}


def test_campaign_reports_in_catalogue_order():
    config = CampaignConfig(groups=SMALL_GROUPS, trials=2, seed=1, workers=1)
    reports = run_campaign(config)
    assert [r.theorem_id for r in reports] == list(THEOREMS)
    assert all(r.instances_checked == 2 for r in reports)


def test_campaign_passes_on_small_groups():
    config = CampaignConfig(groups=SMALL_GROUPS, trials=15, seed=3, workers=2)
    failures = [r.theorem_id for r in run_campaign(config) if not r.passed]
    assert failures == []


def test_campaign_is_deterministic_across_workers():
    theorems = ["cut_subgroup_iff", "image_cut_laws", "factor_recovery", "threshold_completeness"]
    one = run_campaign(CampaignConfig(groups=SMALL_GROUPS, trials=9, seed=11, theorems=theorems, workers=1))
    four = run_campaign(CampaignConfig(groups=SMALL_GROUPS, trials=9, seed=11, theorems=theorems, workers=4))
    assert without_elapsed(one) == without_elapsed(four)


def test_campaign_filter_order():
    config = CampaignConfig(groups=["Z4"], trials=2, theorems=["pfsg_forms", "product_cut"])
    assert [r.theorem_id for r in run_campaign(config)] == ["pfsg_forms", "product_cut"]


def test_iff_campaign_sees_both_polarities():
    """The hand-picked and raw instances supply the false side of the equivalences."""
    config = CampaignConfig(groups=SMALL_GROUPS, trials=12, seed=7, theorems=["cut_subgroup_iff", "pfsg_forms"])
    for merged in run_campaign(config):
        assert merged.lhs_true > 0 and merged.lhs_false > 0
        assert not merged.low_coverage


def test_strict_cut_subgroup_iff_fails():
    config = CampaignConfig(groups=["Z4"], trials=3, theorems=["cut_subgroup_iff"], strict=True)
    (merged,) = run_campaign(config)
    assert not merged.passed and merged.strict
    assert merged.counterexample["trial"] == 0
    assert merged.counterexample["cut"] == []


def test_factor_recovery_labels_every_clause_c():
    config = CampaignConfig(groups=SMALL_GROUPS, trials=20, seed=2, theorems=["factor_recovery"])
    (merged,) = run_campaign(config)
    assert merged.passed
    assert sum(merged.details["clauses.c"].values()) == 20


def test_campaign_errors():
    with pytest.raises(UnknownTheoremError):
        run_campaign(CampaignConfig(groups=["Z2"], trials=1, theorems=["nope"]))
    with pytest.raises(UnknownGroupError):
        run_campaign(CampaignConfig(groups=["Q8"], trials=1, theorems=["product_cut"]))
    with pytest.raises(ValueError):
        CampaignConfig(trials=0)


def test_full_verify_run_at_default_scale(tmp_path, capsys):
    """All theorems, 200 trials, default groups: reproducible output and real coverage."""
    outputs = []
    for name in ("first.jsonl", "second.jsonl"):
        out = tmp_path / name
        argv = ["verify", "--all", "--trials", "200", "--seed", "7", "--json", "--out", str(out)]
        assert main(argv) == EXIT_OK
        capsys.readouterr()
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]

    reports = {r["theorem_id"]: r for r in map(json.loads, outputs[0].decode().splitlines())}
    assert list(reports) == list(THEOREMS)
    assert all(r["passed"] for r in reports.values())
    assert reports["cut_subgroup_iff"]["lhs_true"] >= 50
    assert reports["cut_subgroup_iff"]["lhs_false"] >= 50
    assert reports["cut_normal_iff"]["lhs_false"] >= 20
    assert reports["identity_dominance"]["substantive"] >= 30
    assert reports["factor_recovery"]["substantive"] >= 30
    assert reports["pfsg_forms"]["lhs_true"] + reports["pfsg_forms"]["lhs_false"] == 200
    image_laws = reports["image_cut_laws"]["details"]
    assert image_laws["strict_inclusion_seen"] >= 1
    assert image_laws["clauses.preimage"] == {"holds": 200}


def test_pfsg_forms_agree_on_many_instances():
    groups = ["Z1", "Z2", "Z4", "Z6", "Z12", "V4", "S3", "D4", "D6"]
    config = CampaignConfig(groups=groups, trials=500, seed=7, theorems=["pfsg_forms", "pfnsg_forms"])
    for merged in run_campaign(config):
        assert merged.passed and merged.instances_checked == 500
        assert merged.lhs_true + merged.lhs_false + merged.vacuous == 500
        assert merged.lhs_true > 0 and merged.lhs_false > 0
