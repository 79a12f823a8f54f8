"""
Loading and saving of group, PFS and map files, and JSON-lines report export.

All files are JSON validated through the pydantic models in ``src.models``.
Rationals are written as ``"p/q"`` strings, so every file round-trips exactly.
"""

import logging
import os
from typing import Iterable

from pydantic import ValidationError

from src.errors import InputFileError, OutputFileError
from src.groups import FiniteGroup, GroupHomomorphism
from src.models import GroupFile, MapFile, PfsFile, VerificationReport
from src.pfs import PictureFuzzySet, make_pfs
from src.registry import load_group, registry_name_for

logger = logging.getLogger("pfg.storage")


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise InputFileError(f"Cannot read {path}: {e}") from e


def _write(path: str, text: str) -> None:
    try:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise OutputFileError(f"Cannot write {path}: {e}") from e
    logger.info(f"Wrote {path}")


def check_output_path(path: str) -> None:
    """Fail before any work is done when ``path`` can never be written as a file."""
    if os.path.isdir(path):
        raise OutputFileError(f"Cannot write {path}: it is a directory")


def _parse(model: type, text: str, path: str):
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        raise InputFileError(f"{path}: invalid {model.__name__}: {e}", detail=e.errors()) from e


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------
def group_to_model(G: FiniteGroup) -> GroupFile:
    return GroupFile(order=G.order, table=[list(row) for row in G.table], name=G.name)


def group_from_model(model: GroupFile) -> FiniteGroup:
    return FiniteGroup.from_table(model.table, name=model.name)


def carrier_ref(G: FiniteGroup) -> str | GroupFile:
    """Registry name when G is a registry group, otherwise the inline table."""
    return registry_name_for(G) or group_to_model(G)


def resolve_carrier(ref: str | GroupFile, base_dir: str | None = None) -> FiniteGroup:
    """Resolve an inline group, a registry name, or a group-file path.

    Relative paths are tried against ``base_dir`` (the referring file's folder)
    before the working directory.
    """
    if isinstance(ref, GroupFile):
        return group_from_model(ref)
    if base_dir and os.path.isfile(os.path.join(base_dir, ref)):
        return load_group(os.path.join(base_dir, ref))
    return load_group(ref)


def load_group_file(path: str) -> FiniteGroup:
    """
    Load a group file, re-deriving identity and inverses from the table.

    Raises:
        InputFileError: If the file is unreadable or fails schema validation.
        InvalidTableError: If the table is not a group.
    """
    return group_from_model(_parse(GroupFile, _read(path), path))


def save_group_file(G: FiniteGroup, path: str) -> None:
    _write(path, group_to_model(G).model_dump_json(indent=2))


# ---------------------------------------------------------------------------
# Picture fuzzy sets
# ---------------------------------------------------------------------------
def pfs_to_model(Q: PictureFuzzySet) -> PfsFile:
    return PfsFile(carrier=carrier_ref(Q.carrier), triples=[x.to_strings() for x in Q.triples])


def pfs_from_model(model: PfsFile, base_dir: str | None = None) -> PictureFuzzySet:
    return make_pfs(resolve_carrier(model.carrier, base_dir), model.triples)


def pfs_payload(Q: PictureFuzzySet) -> dict:
    """PFS in file format as a plain dict, for embedding in reports."""
    return pfs_to_model(Q).model_dump()


def load_pfs_file(path: str) -> PictureFuzzySet:
    """
    Load a PFS file.

    Raises:
        InputFileError: If the file is unreadable or fails schema validation.
        TripleSumError: Names the first element whose triple sums above 1.
        DegreeParseError: If a degree is not a rational ``p/q`` in [0, 1].
    """
    Q = pfs_from_model(_parse(PfsFile, _read(path), path), os.path.dirname(path))
    logger.info(f"Loaded PFS on {Q.carrier.name} from {path}")
    return Q


def save_pfs_file(Q: PictureFuzzySet, path: str) -> None:
    _write(path, pfs_to_model(Q).model_dump_json(indent=2))


# ---------------------------------------------------------------------------
# Maps
# ---------------------------------------------------------------------------
def map_to_model(f: GroupHomomorphism) -> MapFile:
    return MapFile(
        source=carrier_ref(f.source),
        target=carrier_ref(f.target),
        map=list(f.mapping),
        homomorphism=f.homomorphism,
    )


def map_from_model(
    model: MapFile, name: str = "f", base_dir: str | None = None
) -> GroupHomomorphism:
    return GroupHomomorphism(
        resolve_carrier(model.source, base_dir),
        resolve_carrier(model.target, base_dir),
        tuple(model.map),
        homomorphism=model.homomorphism,
        name=name,
    )


def load_map_file(path: str) -> GroupHomomorphism:
    name = os.path.splitext(os.path.basename(path))[0]
    return map_from_model(
        _parse(MapFile, _read(path), path), name=name, base_dir=os.path.dirname(path)
    )


def save_map_file(f: GroupHomomorphism, path: str) -> None:
    _write(path, map_to_model(f).model_dump_json(indent=2))


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------
def report_line(report: VerificationReport, timings: bool = False) -> str:
    """One JSON line; ``elapsed`` is left out unless timings are requested."""
    exclude = None if timings else {"elapsed"}
    return report.model_dump_json(exclude=exclude)


def write_reports(
    reports: Iterable[VerificationReport], path: str | None = None, timings: bool = False
) -> str:
    """Render reports as JSON lines, writing them to ``path`` when given."""
    text = "".join(report_line(r, timings) + "\n" for r in reports)
    if path:
        _write(path, text)
    return text


def load_reports(path: str) -> list[VerificationReport]:
    return [
        VerificationReport.model_validate_json(line)
        for line in _read(path).splitlines()
        if line.strip()
    ]
