"""Serialization module for sphex.

This module converts subgroup lattices, Oliver verdicts, exclusion reports and
groups to plain dictionaries and back, and saves or loads them as JSON files.
Lattices are written with every conjugate so a cached lattice can be checked
against the group it claims to describe.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Optional

from sphex.exclusion import ExclusionReport, RuleApplication, ScanResult
from sphex.group import FiniteGroup, format_group_file, generate_group, make_subgroup, parse_group_file
from sphex.isomorphism import Fingerprint
from sphex.lattice import SubgroupClass, SubgroupLattice
from sphex.models import (
    CandidateView,
    ExclusionReportView,
    OliverView,
    RuleApplicationView,
    ScanView,
)
from sphex.oliver import OliverVerdict


def serialize_fingerprint(fp: Fingerprint) -> Dict[str, Any]:
    return {
        "order": fp.order,
        "abelian": fp.abelian,
        "class_sizes": list(fp.class_sizes),
        "order_histogram": [list(pair) for pair in fp.order_histogram],
        "derived_orders": list(fp.derived_orders),
    }


def deserialize_fingerprint(data: Dict[str, Any]) -> Fingerprint:
    return Fingerprint(
        order=data["order"],
        abelian=data["abelian"],
        class_sizes=tuple(data["class_sizes"]),
        order_histogram=tuple((k, v) for k, v in data["order_histogram"]),
        derived_orders=tuple(data["derived_orders"]),
    )


def serialize_lattice(lattice: SubgroupLattice) -> Dict[str, Any]:
    """Serialize a SubgroupLattice to a dictionary.

    Args:
        lattice: The lattice to serialize.

    Returns:
        Dict: A dictionary containing:
            - group: The group's name
            - order: The group's order
            - classes: Per class its label, size, normality, fingerprint and
              every conjugate as sorted element ids
            - edges: Covering pairs of class indices
    """
    return {
        "group": lattice.group.name,
        "order": lattice.group.order,
        "classes": [
            {
                "label": cls.label,
                "class_size": cls.class_size,
                "is_normal": cls.is_normal,
                "fingerprint": serialize_fingerprint(cls.iso_fingerprint),
                "conjugates": [sorted(conj) for conj in cls.conjugates],
            }
            for cls in lattice.classes
        ],
        "edges": [list(edge) for edge in lattice.edges],
    }


def deserialize_lattice(group: FiniteGroup, data: Dict[str, Any]) -> SubgroupLattice:
    """Rebuild a SubgroupLattice over group from its dictionary.

    The result is not checked against the group; see sphex.cache for that.

    Raises:
        KeyError: If required fields are missing.
        ValueError: If the stored order differs from the group's.
    """
    if data["order"] != group.order:
        raise ValueError(f"lattice is for a group of order {data['order']}, not {group.order}")
    classes: List[SubgroupClass] = []
    for index, entry in enumerate(data["classes"]):
        conjugates = tuple(frozenset(conj) for conj in entry["conjugates"])
        classes.append(
            SubgroupClass(
                index=index,
                representative=make_subgroup(group, entry["conjugates"][0]),
                class_size=entry["class_size"],
                label=entry["label"],
                iso_fingerprint=deserialize_fingerprint(entry["fingerprint"]),
                is_normal=entry["is_normal"],
                conjugates=conjugates,
            )
        )
    edges = [(lo, hi) for lo, hi in data["edges"]]
    return SubgroupLattice(group, classes, edges)


def save_lattice(lattice: SubgroupLattice, filename: str) -> None:
    with open(filename, "w", encoding="utf-8") as f:
        json.dump(serialize_lattice(lattice), f)


def load_lattice(group: FiniteGroup, filename: str) -> SubgroupLattice:
    with open(filename, "r", encoding="utf-8") as f:
        return deserialize_lattice(group, json.load(f))


def serialize_group(group: FiniteGroup) -> Dict[str, Any]:
    return {
        "name": group.name,
        "order": group.order,
        "group_file": format_group_file(group.degree, group.generators),
    }


def deserialize_group(data: Dict[str, Any], cap: Optional[int] = None) -> FiniteGroup:
    """Regenerate a group from its generators.

    Raises:
        ValueError: If the regenerated order differs from the stored one.
    """
    _, gens = parse_group_file(data["group_file"])
    group = generate_group(gens, cap=cap or data["order"], name=data.get("name", ""))
    if group.order != data["order"]:
        raise ValueError(f"generators give order {group.order}, expected {data['order']}")
    return group


def oliver_view(verdict: OliverVerdict) -> OliverView:
    return OliverView(
        label=verdict.label,
        is_oliver=verdict.is_oliver,
        p_label=verdict.p_label,
        h_label=verdict.h_label,
        witness_p=list(verdict.witness_p.members) if verdict.witness_p else [],
        witness_h=list(verdict.witness_h.members) if verdict.witness_h else [],
    )


def serialize_verdicts(verdicts: Dict[int, OliverVerdict]) -> List[Dict[str, Any]]:
    return [oliver_view(verdicts[i]).model_dump() for i in sorted(verdicts)]


def application_view(app: RuleApplication) -> RuleApplicationView:
    return RuleApplicationView(
        rule=app.rule,
        subgroups=list(app.subgroups),
        fp_dims=dict(app.fp_dims),
        conclusion=app.conclusion.value,
        scope=app.scope.value,
        side_conditions=dict(app.side_conditions),
        axioms=list(app.axioms),
        witnesses={role: list(ids) for role, ids in app.witnesses.items()},
        bound=app.bound,
    )


def report_view(report: ExclusionReport, trace: bool = False) -> ExclusionReportView:
    """Build the JSON view of a report.

    Without trace only survivors are listed as candidates and their (empty)
    rule lists; with trace every candidate and every application is kept.
    """
    verdicts = report.candidates if trace else report.survivors
    return ExclusionReportView(
        group=report.group,
        mode=report.mode.value,
        scope=report.scope.value,
        dimension=report.dimension,
        pseudofree=report.pseudofree,
        effective=report.effective,
        excluded=report.excluded,
        verdict=report.verdict_line(),
        survivors=[v.candidate.name for v in report.survivors],
        families=report.families(),
        candidates=[
            CandidateView(
                module=v.candidate.name,
                multiplicities=list(v.candidate.module.multiplicities),
                dimension=v.candidate.dimension,
                effective=v.candidate.effective,
                excluded=v.excluded,
                applications=[application_view(a) for a in v.applications],
            )
            for v in verdicts
        ],
        global_applications=[application_view(a) for a in report.global_applications],
    )


def serialize_report(report: ExclusionReport, trace: bool = False) -> Dict[str, Any]:
    return report_view(report, trace).model_dump(mode="json")


def serialize_scan(result: ScanResult, n_max: int, trace: bool = False) -> Dict[str, Any]:
    first = result.reports[0]
    view = ScanView(
        group=first.group,
        mode=first.mode.value,
        scope=first.scope.value,
        effective=first.effective,
        pseudofree=first.pseudofree,
        n_max=n_max,
        admissible=result.admissible,
        reports=[report_view(r, trace) for r in result.reports],
    )
    return view.model_dump(mode="json")


def save_report(report: ExclusionReport, filename: str, trace: bool = False) -> None:
    with open(filename, "w", encoding="utf-8") as f:
        json.dump(serialize_report(report, trace), f, indent=2)


def load_report(filename: str) -> ExclusionReportView:
    """Load a saved report as its view; rule objects are not rebuilt."""
    with open(filename, "r", encoding="utf-8") as f:
        return ExclusionReportView.model_validate(json.load(f))
