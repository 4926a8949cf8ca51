"""Pydantic models for JSON reports."""

from __future__ import annotations

from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict


class RuleApplicationView(BaseModel):
    """Serializable view of one rule application."""

    model_config = ConfigDict(from_attributes=True)

    rule: str
    subgroups: List[str]
    fp_dims: Dict[str, int]
    conclusion: str
    scope: str
    side_conditions: Dict[str, Union[bool, int, str]]
    axioms: List[str]
    witnesses: Dict[str, List[int]]
    bound: Optional[int] = None


class CandidateView(BaseModel):
    """Serializable view of a candidate tangent module and its verdict."""

    model_config = ConfigDict(from_attributes=True)

    module: str
    multiplicities: List[int]
    dimension: int
    effective: bool
    excluded: bool
    applications: List[RuleApplicationView]


class ExclusionReportView(BaseModel):
    """Serializable view of an exclusion report."""

    model_config = ConfigDict(from_attributes=True)

    group: str
    mode: str
    scope: str
    dimension: int
    pseudofree: Optional[int]
    effective: bool
    excluded: bool
    verdict: str
    survivors: List[str]
    families: List[str]
    candidates: List[CandidateView]
    global_applications: List[RuleApplicationView]


class ScanView(BaseModel):
    """Serializable view of a dimension scan."""

    group: str
    mode: str
    scope: str
    effective: bool
    pseudofree: Optional[int]
    n_max: int
    admissible: List[int]
    reports: List[ExclusionReportView]


class OliverView(BaseModel):
    """Serializable view of an Oliver verdict."""

    model_config = ConfigDict(from_attributes=True)

    label: str
    is_oliver: bool
    p_label: str
    h_label: str
    witness_p: List[int]
    witness_h: List[int]
