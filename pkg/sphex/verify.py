"""
Independent re-verification of exclusion traces.

Nothing computed by the exclusion engine is reused here except the raw
character values and the lattice's class labels: closures are recomputed by
breadth-first search, normality by brute force over all elements, fixed-point
dimensions by direct summation over each witness subgroup, and the index-two
core as the subgroup generated by squares.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Sequence, Set

from sympy import factorint

from sphex.errors import TraceFailure, WitnessFailure
from sphex.exactnum import total
from sphex.exclusion import (
    KILLS,
    R5_SUMMANDS,
    CandidateModule,
    Conclusion,
    ExclusionContext,
    ExclusionReport,
    Mode,
    RuleApplication,
    Scope,
)
from sphex.group import FiniteGroup
from sphex.oliver import OliverVerdict

logger = logging.getLogger(__name__)

ROLES = {
    "R1": ("H1", "H2", "P"),
    "R2": ("G2",),
    "R3": ("H1", "H2", "H"),
    "R4": ("A", "B", "C"),
    "R5": ("H1", "H2", "P"),
}


def closure(group: FiniteGroup, seed: Iterable[int]) -> FrozenSet[int]:
    gens = sorted(set(seed)) or [group.identity]
    found: Set[int] = {group.identity}
    queue = [group.identity]
    while queue:
        x = queue.pop()
        for g in gens:
            y = group.mul(x, g)
            if y not in found:
                found.add(y)
                queue.append(y)
    return frozenset(found)


def is_subgroup(group: FiniteGroup, members: FrozenSet[int]) -> bool:
    return bool(members) and closure(group, members) == members


def normal_in(group: FiniteGroup, inner: FrozenSet[int], outer: FrozenSet[int]) -> bool:
    for g in outer:
        g_inv = group.inverse(g)
        for h in inner:
            if group.mul(group.mul(g, h), g_inv) not in inner:
                return False
    return True


def prime_power(n: int) -> bool:
    return len(factorint(n)) <= 1


def check_oliver_chain(group: FiniteGroup, verdict: OliverVerdict) -> None:
    """Re-verify a non-Oliver chain P <| H <| K with H/P cyclic.

    Raises:
        WitnessFailure: If any link of the chain does not hold.
    """
    if verdict.is_oliver or verdict.witness_p is None or verdict.witness_h is None:
        raise WitnessFailure(f"{verdict.label} carries no non-Oliver chain")
    k = verdict.subject.member_set
    h = verdict.witness_h.member_set
    p = verdict.witness_p.member_set
    if not (is_subgroup(group, p) and is_subgroup(group, h) and p <= h <= k):
        raise WitnessFailure(f"chain for {verdict.label} is not a chain of subgroups")
    if not prime_power(len(p)) or not prime_power(len(k) // len(h)):
        raise WitnessFailure(f"chain for {verdict.label} fails the prime-power conditions")
    if not normal_in(group, h, k) or not normal_in(group, p, h):
        raise WitnessFailure(f"chain for {verdict.label} fails normality")
    if not any(len(closure(group, p | {x})) == len(h) for x in h):
        raise WitnessFailure(f"H/P is not cyclic in the chain for {verdict.label}")


def fixed_dimension(context: ExclusionContext, candidate: CandidateModule, members: FrozenSet[int]) -> int:
    """dim V^H by summing the module character over the elements of H."""
    group = context.group
    class_of = group.class_of
    values = context.table.module_values(candidate.module)
    acc = total(values[class_of[h]] for h in members)
    dim = (acc * Fraction(1, len(members))).as_integer()
    if dim is None or dim < 0:
        raise TraceFailure(f"fixed-point sum of {candidate.name} over a witness is not a count")
    return dim


def _fail(app: RuleApplication, candidate: str, message: str) -> TraceFailure:
    return TraceFailure(f"{app.rule} on {candidate}: {message}")


def _check_pair(context: ExclusionContext, app: RuleApplication, roles: Sequence[str], name: str) -> None:
    group = context.group
    first, second, inner = (frozenset(app.witnesses[r]) for r in roles)
    if len(closure(group, first | second)) != group.order:
        raise _fail(app, name, f"{roles[0]} and {roles[1]} do not generate the group")
    if not inner <= first & second:
        raise _fail(app, name, f"{roles[2]} is not inside {roles[0]} and {roles[1]}")
    for witness in (first, second):
        cls = context.lattice.identify_class(witness)
        check_oliver_chain(group, context.verdicts[cls.index])


def verify_application(
    context: ExclusionContext,
    candidate: CandidateModule,
    app: RuleApplication,
    mode: Mode,
) -> Dict[str, int]:
    """Re-verify one per-candidate rule application.

    Returns:
        Dict[str, int]: Recomputed fixed-point dimensions by role.

    Raises:
        TraceFailure: If an arithmetic side condition does not hold.
        WitnessFailure: If a witness subgroup or Oliver chain does not hold.
    """
    group = context.group
    name = candidate.name
    roles = ROLES.get(app.rule)
    if roles is None:
        raise _fail(app, name, "unknown rule")
    if not app.axioms:
        raise _fail(app, name, "no axioms recorded")
    dims: Dict[str, int] = {}
    for role in roles:
        if role not in app.witnesses:
            raise WitnessFailure(f"{app.rule} on {name}: missing witness {role}")
        members = frozenset(app.witnesses[role])
        if not is_subgroup(group, members):
            raise WitnessFailure(f"{app.rule} on {name}: witness {role} is not a subgroup")
        label = context.lattice.identify_class(members).label
        if label not in app.subgroups:
            raise WitnessFailure(f"{app.rule} on {name}: witness {role} is {label}, not in {app.subgroups}")
        dims[role] = fixed_dimension(context, candidate, members)
        if app.fp_dims.get(label, dims[role]) != dims[role]:
            raise _fail(app, name, f"recorded dim V^{label} = {app.fp_dims[label]}, recomputed {dims[role]}")

    if app.rule == "R2":
        squares = closure(group, (group.mul(g, g) for g in range(group.order)))
        if frozenset(app.witnesses["G2"]) != squares:
            raise _fail(app, name, "witness is not the index-two core")
        if mode != Mode.ONE or dims["G2"] <= 0 or app.conclusion != Conclusion.NOT_SINGLE:
            raise _fail(app, name, "fixed points of the index-two core do not rule out one point")
        return dims

    _check_pair(context, app, roles, name)
    first, second, inner = (dims[r] for r in roles)
    inner_order = len(app.witnesses[roles[2]])
    if app.rule == "R1":
        if not prime_power(inner_order) or inner != 0 or app.conclusion != Conclusion.TWO_POINTS:
            raise _fail(app, name, "prime-power subgroup has fixed vectors")
    elif app.rule == "R3":
        if app.scope != Scope.STANDARD or mode != Mode.ONE or not prime_power(inner_order):
            raise _fail(app, name, "applies to one fixed point on standard spheres only")
        if first + second != inner or inner > 2:
            raise _fail(app, name, f"{first} + {second} != {inner} or {inner} > 2")
    elif app.rule == "R4":
        orders = [len(app.witnesses[r]) for r in roles]
        if any(n & (n - 1) for n in orders):
            raise _fail(app, name, "witnesses are not 2-groups")
        if first <= 0 or second <= 0 or inner != first + second or app.conclusion != Conclusion.EVEN:
            raise _fail(app, name, f"parity condition fails: {first}, {second}, {inner}")
    else:
        _check_r5_point(context, candidate, app, mode, dims)
    return dims


def _check_r5_point(
    context: ExclusionContext,
    candidate: CandidateModule,
    app: RuleApplication,
    mode: Mode,
    dims: Dict[str, int],
) -> None:
    table = context.table
    mult = {n: candidate.module.multiplicities[table.index_of(n)] for n in R5_SUMMANDS}
    q16, core, q8 = dims["H1"], dims["H2"], dims["P"]
    labels = [context.lattice.identify_class(frozenset(app.witnesses[r])).label for r in ("H1", "H2")]
    if labels == ["[24,4]", "Q16"]:
        q16, core = core, q16
    if app.conclusion == Conclusion.TWO_POINTS:
        if any(mult.values()) or q8 != 0:
            raise _fail(app, candidate.name, "module meets U4_2, U5_2, U5_1 or U6")
        return
    if app.conclusion != Conclusion.NOT_SINGLE or mode != Mode.ONE:
        raise _fail(app, candidate.name, "unexpected conclusion")
    if not (mult["U4_2"] or mult["U5_2"]) or mult["U6"]:
        raise _fail(app, candidate.name, "module must contain U4_2 or U5_2 and no U6")
    if q16 + core != q8 - mult["U6"] or core <= 0:
        raise _fail(app, candidate.name, f"identity fails: {q16} + {core} vs {q8} - {mult['U6']}")


def verify_global(context: ExclusionContext, report: ExclusionReport, app: RuleApplication) -> None:
    """Re-verify a rule applied to the whole survivor set."""
    table = context.table
    idx = {n: table.index_of(n) for n in R5_SUMMANDS}
    survivors = [v.candidate for v in report.survivors]
    if app.rule != "R5" or report.mode != Mode.ODD:
        raise TraceFailure(f"global {app.rule} in {report.mode.value} mode")
    if not all(c.contains(idx["U4_2"]) or c.contains(idx["U5_2"]) for c in survivors):
        raise TraceFailure("a survivor lacks both U4_2 and U5_2")
    with_u6 = any(c.contains(idx["U6"]) for c in survivors)
    if app.conclusion == Conclusion.EVEN and with_u6:
        raise TraceFailure("a survivor contains U6")
    if app.conclusion == Conclusion.LOWER_BOUND and (not with_u6 or app.bound is None):
        raise TraceFailure("lower bound recorded without a U6 survivor")


def verify_report(context: ExclusionContext, report: ExclusionReport) -> int:
    """Re-verify every application in a report and the report's verdict.

    Returns:
        int: Number of applications verified.

    Raises:
        TraceFailure: On any mismatch.
        WitnessFailure: On a bad witness subgroup or Oliver chain.
    """
    checked = 0
    kills = KILLS[report.mode]
    for verdict in report.candidates:
        candidate = verdict.candidate
        if context.table.dimension(candidate.module) != report.dimension:
            raise TraceFailure(f"{candidate.name} has the wrong dimension")
        killing = [a for a in verdict.applications if a.conclusion in kills]
        if verdict.excluded != bool(killing):
            raise TraceFailure(f"{candidate.name}: excluded flag disagrees with its applications")
        for app in verdict.applications:
            verify_application(context, candidate, app, report.mode)
            checked += 1
    for app in report.global_applications:
        verify_global(context, report, app)
        checked += 1
    global_kill = any(a.conclusion in kills for a in report.global_applications)
    if report.excluded != (not report.survivors or global_kill):
        raise TraceFailure("report verdict disagrees with its candidates")
    logger.debug("verified %d applications at n=%d", checked, report.dimension)
    return checked
