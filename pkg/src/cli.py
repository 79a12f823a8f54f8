"""
Command-line interface: ``pfg check|cut|coset|product|image|verify|sample|group``.

Exit status is 0 when the predicate holds (or every report passed), 1 when it
fails, and 2 for usage and input errors. Human-readable output goes to stdout;
``--json`` switches to machine-readable output. Logs go to stderr.
"""

import argparse
import json
import logging
import os
import sys
from typing import Callable

from pydantic import ValidationError

from src.boot import configure_logging
from src.campaign import THEOREMS, run_campaign
from src.config import (
    DEFAULT_CAMPAIGN_GROUPS,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    MAX_THREAD_WORKERS,
    validate_environment,
)
from src.errors import CarrierMismatchError, InputFileError, InvalidMapError, PfgError
from src.groups import (
    FiniteGroup,
    GroupHomomorphism,
    element_order,
    enumerate_subgroups,
    identity_map,
    is_abelian,
    normal_subgroups,
    order_census,
    projection,
    reduction_map,
    trivial_map,
)
from src.models import CampaignConfig
from src.pfs import CutThreshold, PictureFuzzySet, cartesian_product, cut_set, image, preimage
from src.pfsg import (
    is_pfnsg_commute,
    is_pfnsg_conjugation,
    is_pfnsg_cosets,
    is_pfsg,
    left_coset,
    right_coset,
    sample_mixed_pfsg,
    sample_pfnsg,
    sample_pfsg,
)
from src.registry import SHIPPED_GROUPS, load_group
from src.storage import (
    check_output_path,
    group_to_model,
    load_map_file,
    load_pfs_file,
    pfs_to_model,
    save_group_file,
    save_pfs_file,
    write_reports,
)
from src.utils import format_duration, format_members, parse_degree

logger = logging.getLogger("pfg.cli")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
NAMED_MAPS = ("identity", "trivial", "mod", "proj1", "proj2")


def _load_pfs(args: argparse.Namespace, index: int = 0) -> PictureFuzzySet:
    if not args.pfs or len(args.pfs) <= index:
        raise InputFileError(f"--pfs is required ({index + 1} file(s) expected)")
    Q = load_pfs_file(args.pfs[index])
    if getattr(args, "group", None):
        G = load_group(args.group)
        if not G.same_table(Q.carrier):
            raise CarrierMismatchError(f"{args.pfs[index]} lives on {Q.carrier.name}, not on {G.name}")
    return Q


def _emit_pfs(Q: PictureFuzzySet, out: str | None) -> None:
    if out:
        save_pfs_file(Q, out)
        print(f"Wrote {out} ({Q.carrier.name}, {len(Q)} triples)")
    else:
        print(pfs_to_model(Q).model_dump_json(indent=2))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------
def cmd_check(args: argparse.Namespace) -> int:
    Q = _load_pfs(args)
    G = Q.carrier
    verdict = is_pfsg(G, Q)
    result = {"group": G.name, "mode": args.mode, "pfsg": verdict.to_dict()}
    holds = verdict.holds
    if args.mode == "pfnsg" and verdict.holds:
        forms = {
            "cosets": is_pfnsg_cosets(G, Q),
            "commute": is_pfnsg_commute(G, Q),
            "conjugation": is_pfnsg_conjugation(G, Q),
        }
        result["pfnsg"] = {k: v.to_dict() for k, v in forms.items()}
        holds = forms["conjugation"].holds
    result["holds"] = holds
    if args.json:
        print(json.dumps(result))
    else:
        print(f"PFSG on {G.name}: {verdict.describe()}")
        for name, v in result.get("pfnsg", {}).items():
            witness = f" at {tuple(v['witness'])}" if v["witness"] else ""
            clause = f": {v['violated_clause']}" if v["violated_clause"] else ""
            print(f"PFNSG ({name} form): {'holds' if v['holds'] else 'fails'}{clause}{witness}")
    return EXIT_OK if holds else EXIT_FAIL


def cmd_cut(args: argparse.Namespace) -> int:
    Q = _load_pfs(args)
    c = CutThreshold(args.r, args.s, args.t)
    S = cut_set(Q, c)
    if args.json:
        print(json.dumps({"threshold": c.to_strings(), "members": list(S.members)}))
    else:
        print(format_members(S.members))
    return EXIT_OK


def cmd_coset(args: argparse.Namespace) -> int:
    Q = _load_pfs(args)
    build = left_coset if args.side == "left" else right_coset
    _emit_pfs(build(Q.carrier, Q, args.element), args.out)
    return EXIT_OK


def cmd_product(args: argparse.Namespace) -> int:
    if not args.pfs or len(args.pfs) != 2:
        raise InputFileError("product needs exactly two --pfs files")
    _emit_pfs(cartesian_product(load_pfs_file(args.pfs[0]), load_pfs_file(args.pfs[1])), args.out)
    return EXIT_OK


def _resolve_map(args: argparse.Namespace, carrier: FiniteGroup) -> GroupHomomorphism:
    """A map file, or a named map whose PFS-side carrier is ``carrier``."""
    if os.path.isfile(args.map):
        return load_map_file(args.map)
    if args.map not in NAMED_MAPS:
        raise InvalidMapError(f"Unknown map {args.map!r}; use a map file or one of {', '.join(NAMED_MAPS)}")
    if args.preimage:
        if args.map == "identity":
            return identity_map(carrier)
        if not args.source:
            raise InvalidMapError(f"--source is required for the {args.map} map with --preimage")
        source, target = load_group(args.source), carrier
    else:
        source = carrier
        target = load_group(args.target) if args.target else None
    if args.map == "identity":
        return identity_map(source)
    if args.map == "trivial":
        return trivial_map(source, target or load_group("Z1"))
    if args.map == "mod":
        if target is None:
            raise InvalidMapError("--target is required for the mod map")
        return reduction_map(source.order, target.order)
    return projection(source, 0 if args.map == "proj1" else 1)


def cmd_image(args: argparse.Namespace) -> int:
    Q = _load_pfs(args)
    f = _resolve_map(args, Q.carrier)
    _emit_pfs(preimage(f, Q) if args.preimage else image(f, Q), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if not args.all and not args.theorem:
        raise InputFileError("verify needs --theorem TAG (repeatable) or --all")
    config = CampaignConfig(
        groups=args.groups or list(DEFAULT_CAMPAIGN_GROUPS),
        trials=args.trials,
        seed=args.seed,
        theorems=None if args.all else args.theorem,
        strict=args.strict,
        max_order=args.max_order,
        workers=args.workers,
    )
    reports = run_campaign(config)
    text = write_reports(reports, args.out, timings=args.timings)
    if args.json:
        sys.stdout.write(text)
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            coverage = " (low coverage)" if r.low_coverage else ""
            print(
                f"{status} {r.theorem_id}: {r.instances_checked} instances, "
                f"{r.substantive} substantive, {r.vacuous} vacuous{coverage} "
                f"[{format_duration(r.elapsed or 0.0)}]"
            )
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_sample(args: argparse.Namespace) -> int:
    if not args.group:
        raise InputFileError("sample needs --group")
    G = load_group(args.group)
    normal = args.kind == "pfnsg"
    if args.mixed:
        Q = sample_mixed_pfsg(G, args.seed, args.chain_length, normal, max_order=args.max_order)
    elif normal:
        Q = sample_pfnsg(G, args.seed, args.chain_length, max_order=args.max_order)
    else:
        Q = sample_pfsg(G, args.seed, args.chain_length, max_order=args.max_order)
    _emit_pfs(Q, args.out)
    return EXIT_OK


def cmd_group(args: argparse.Namespace) -> int:
    if not args.group:
        print("Shipped groups: " + " ".join(SHIPPED_GROUPS))
        return EXIT_OK
    G = load_group(args.group)
    if args.out:
        save_group_file(G, args.out)
        print(f"Wrote {args.out} ({G.name}, order {G.order})")
        return EXIT_OK
    subgroups = enumerate_subgroups(G, args.max_order)
    normal = normal_subgroups(G, args.max_order)
    info = {
        "name": G.name,
        "order": G.order,
        "identity": G.identity,
        "abelian": is_abelian(G),
        "element_orders": [element_order(G, a) for a in G.elements()],
        "order_census": [list(p) for p in order_census(G)],
        "subgroups": [list(S.members) for S in subgroups],
        "normal_subgroups": [list(S.members) for S in normal],
    }
    if args.json:
        print(json.dumps({**info, "table": group_to_model(G).table}))
        return EXIT_OK
    print(f"{G.name}: order {G.order}, identity {G.identity}, {'abelian' if info['abelian'] else 'non-abelian'}")
    print("element orders: " + format_members(info["element_orders"]))
    print(f"subgroups ({len(subgroups)}):")
    for S in subgroups:
        marker = "*" if S in normal else " "
        print(f"  {marker} {{{format_members(S.members)}}}")
    print("(* = normal)")
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "check": cmd_check,
    "cut": cmd_cut,
    "coset": cmd_coset,
    "product": cmd_product,
    "image": cmd_image,
    "verify": cmd_verify,
    "sample": cmd_sample,
    "group": cmd_group,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pfg",
        description="Picture fuzzy subgroups over finite groups: predicates, constructions and theorem checks.",
    )
    p.add_argument("command", choices=list(COMMANDS))
    p.add_argument("--group", help="Registry name (Z6, D4, S3, V4, Z2xZ4, ...) or group file")
    p.add_argument("--pfs", action="append", help="PFS file (repeat for product)")
    p.add_argument("--r", type=parse_degree, default=parse_degree("0"), help="Cut threshold r (p/q)")
    p.add_argument("--s", type=parse_degree, default=parse_degree("0"), help="Cut threshold s (p/q)")
    p.add_argument("--t", type=parse_degree, default=parse_degree("1"), help="Cut threshold t (p/q)")
    p.add_argument("--mode", choices=["pfsg", "pfnsg"], default="pfsg", help="Predicate for check")
    p.add_argument("--element", type=int, default=0, help="Translating element for coset")
    p.add_argument("--side", choices=["left", "right"], default="left", help="Coset side")
    p.add_argument("--map", default="identity", help=f"Map file or one of {', '.join(NAMED_MAPS)}")
    p.add_argument("--source", help="Source group for named maps with --preimage")
    p.add_argument("--target", help="Target group for named maps")
    p.add_argument("--preimage", action="store_true", help="Pull back instead of pushing forward")
    p.add_argument("--kind", choices=["pfsg", "pfnsg"], default="pfsg", help="Sampler kind")
    p.add_argument("--chain-length", type=int, default=2, help="Number of subgroups in the chain")
    p.add_argument("--mixed", action="store_true", help="Independent chains per degree")
    p.add_argument("--theorem", action="append", choices=list(THEOREMS), help="Theorem tag (repeatable)")
    p.add_argument("--all", action="store_true", help="Run every theorem")
    p.add_argument("--groups", nargs="+", help="Campaign groups")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="Instances per theorem")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Random seed")
    p.add_argument("--workers", type=int, default=MAX_THREAD_WORKERS, help="Campaign threads")
    p.add_argument("--max-order", type=int, default=None, help="Subgroup enumeration cap")
    p.add_argument("--strict", action="store_true", help="Check the literal theorem statements")
    p.add_argument("--json", action="store_true", help="Machine-readable output")
    p.add_argument("--timings", action="store_true", help="Include elapsed times in JSON reports")
    p.add_argument("--out", help="Output file")
    p.add_argument(
        "--log-level",
        type=str.upper,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Log level (default from PFG_LOG_LEVEL)",
    )
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        validate_environment()
        configure_logging(args.log_level)
        if args.out:
            check_output_path(args.out)
        return COMMANDS[args.command](args)
    except (PfgError, ValidationError) as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        detail = getattr(e, "valid", None)
        if detail:
            print("valid: " + " ".join(detail), file=sys.stderr)
        return EXIT_USAGE
