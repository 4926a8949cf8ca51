"""
Exclusion engine for sphex.

Given a group G with a verified character table and subgroup lattice, this
module enumerates candidate tangent modules V = T_x(Sigma) at a fixed point
of a G-action on an n-sphere and applies exclusion rules to them:

- R1: non-Oliver H1, H2 generating G and a prime-power P <= H1 and H2 with
  dim V^P = 0 force exactly two fixed points.
- R2: dim V^{G_2} > 0, G_2 the index-two core, rules out a single fixed point.
- R3: on a standard sphere, dim V^H1 + dim V^H2 = dim V^H <= 2 for a
  prime-power H in H1 and H2 rules out a single fixed point.
- R4: 2-groups A, B generating G and C in both with dim V^A, dim V^B > 0 and
  dim V^C = dim V^A + dim V^B force an even number of fixed points.
- R5: the dichotomy for SL(2,5).C2 built from Q16, [24,4] and Q8_A.

The manifold topology behind each rule is not computed; it enters as named
axioms recorded in every RuleApplication. What is computed and recorded is
every arithmetic side condition: fixed-point dimensions, generation,
non-Oliverness and containment, each with concrete witness subgroups.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from sphex.chartab import CharacterTable, RGModule
from sphex.errors import ScopeViolation
from sphex.lattice import SubgroupLattice
from sphex.oliver import OliverVerdict, oliver_table
from sphex.utils import is_prime_power

logger = logging.getLogger(__name__)

DEFAULT_N_MAX = 64


class Mode(str, Enum):
    ONE = "one"
    ODD = "odd"


class Scope(str, Enum):
    HOMOLOGY = "homology"
    STANDARD = "standard"


class Conclusion(str, Enum):
    TWO_POINTS = "two_points"
    EVEN = "even"
    NOT_SINGLE = "not_single"
    LOWER_BOUND = "lower_bound"


# Conclusions that contradict the fixed-point count of each mode.
KILLS: Dict[Mode, FrozenSet[Conclusion]] = {
    Mode.ONE: frozenset({Conclusion.TWO_POINTS, Conclusion.EVEN, Conclusion.NOT_SINGLE}),
    Mode.ODD: frozenset({Conclusion.TWO_POINTS, Conclusion.EVEN}),
}

AXIOMS: Dict[str, Tuple[str, ...]] = {
    "R1": ("smith_theory", "non_oliver_euler_characteristic"),
    "R2": ("index_two_core",),
    "R3": ("smith_theory", "standard_sphere_low_dimensional_fixed_set"),
    "R4": ("smith_theory", "mod2_intersection_number"),
    "R5": ("smith_theory", "mod2_intersection_form"),
}

# Names the R5 templates refer to.
R5_SUMMANDS = ("U4_2", "U5_2", "U5_1", "U6")
R5_CLASSES = ("Q16", "[24,4]", "Q8_A")


@dataclass(frozen=True)
class Frame:
    """Concrete witnesses for a pair of generating subgroups and a common subgroup.

    The indices are lattice classes; the witness sets are the actual
    subgroups: witness_first is the representative of first, witness_second a
    conjugate of second with <witness_first, witness_second> = G, and
    witness_inner a conjugate of inner inside both.
    """

    first: int
    second: int
    inner: int
    witness_first: FrozenSet[int]
    witness_second: FrozenSet[int]
    witness_inner: FrozenSet[int]


@dataclass
class RuleApplication:
    """One successful rule instance with every verified side condition.

    Attributes:
        rule (str): "R1" ... "R5".
        subgroups (Tuple[str, ...]): Labels of the subgroup classes used.
        fp_dims (Dict[str, int]): dim V^H for each subgroup used, by label.
        conclusion (Conclusion): What the rule proves.
        scope (Scope): Weakest kind of sphere the rule is valid on.
        side_conditions (Dict[str, Any]): Verified hypotheses and their values.
        axioms (Tuple[str, ...]): Topological facts taken as given.
        witnesses (Dict[str, Tuple[int, ...]]): Concrete subgroups by role.
        bound (Optional[int]): Lower bound on n for LOWER_BOUND conclusions.
    """

    rule: str
    subgroups: Tuple[str, ...]
    fp_dims: Dict[str, int]
    conclusion: Conclusion
    scope: Scope
    side_conditions: Dict[str, Any] = field(default_factory=dict)
    axioms: Tuple[str, ...] = ()
    witnesses: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    bound: Optional[int] = None

    @property
    def conclusive(self) -> bool:
        return self.conclusion != Conclusion.LOWER_BOUND


@dataclass(frozen=True)
class CandidateModule:
    """A candidate tangent module.

    Attributes:
        module (RGModule): Multiplicities of the real irreducibles.
        name (str): Module name such as "U6+W8_1".
        dimension (int): Real dimension.
        effective (bool): Whether the module is faithful.
    """

    module: RGModule
    name: str
    dimension: int
    effective: bool

    def contains(self, index: int) -> bool:
        return self.module.multiplicities[index] > 0


@dataclass
class CandidateVerdict:
    candidate: CandidateModule
    applications: List[RuleApplication] = field(default_factory=list)
    excluded: bool = False


@dataclass
class ExclusionReport:
    """Outcome of an exclusion run at one dimension.

    Attributes:
        group (str): Group name.
        mode (Mode): One or odd number of fixed points.
        scope (Scope): Homology or standard spheres.
        dimension (int): n.
        pseudofree (Optional[int]): Pseudofreeness bound k, if any.
        effective (bool): Whether only faithful modules were considered.
        candidates (List[CandidateVerdict]): Per-candidate verdicts.
        global_applications (List[RuleApplication]): Rules applied to the
            whole candidate set.
        excluded (bool): True iff no action with these properties exists.
    """

    group: str
    mode: Mode
    scope: Scope
    dimension: int
    pseudofree: Optional[int]
    effective: bool
    candidates: List[CandidateVerdict]
    global_applications: List[RuleApplication] = field(default_factory=list)
    excluded: bool = False

    @property
    def survivors(self) -> List[CandidateVerdict]:
        return [v for v in self.candidates if not v.excluded]

    def families(self) -> List[str]:
        return family_names([v.candidate for v in self.survivors])

    def verdict_line(self) -> str:
        if self.excluded:
            return "EXCLUDED"
        families = self.families()
        noun = "family" if len(families) == 1 else "families"
        return f"NOT EXCLUDED ({len(families)} surviving {noun}: {', '.join(families)})"


def family_name(name: str) -> str:
    """Collapse numbered summands of one type, e.g. "U6+W8_2" -> "U6+W8_*"."""
    counts: Dict[str, int] = {}
    for part in name.split("+"):
        base, _, power = part.partition("^")
        key = re.sub(r"_\d+$", "_*", base)
        counts[key] = counts.get(key, 0) + (int(power) if power else 1)
    return "+".join(k if m == 1 else f"{k}^{m}" for k, m in counts.items())


def family_names(candidates: Sequence[CandidateModule]) -> List[str]:
    return list(dict.fromkeys(family_name(c.name) for c in candidates))


def _is_two_power(n: int) -> bool:
    return n & (n - 1) == 0


class ExclusionContext:
    """Everything the rules consult, computed once per group.

    Attributes:
        table (CharacterTable): Verified character table.
        lattice (SubgroupLattice): Subgroup lattice of the same group.
        verdicts (Dict[int, OliverVerdict]): Oliver verdict per class.
        fp (List[Tuple[int, ...]]): fp_vector of each class representative.
        core (int): Class index of the index-two core G_2.
        frames (List[Frame]): R1/R3 frames ordered by (-|P|, |H1|+|H2|).
        parity_frames (List[Frame]): R4 frames ordered by (-|C|, |A|+|B|).
    """

    def __init__(
        self,
        table: CharacterTable,
        lattice: SubgroupLattice,
        verdicts: Optional[Dict[int, OliverVerdict]] = None,
    ):
        if table.group is not lattice.group:
            raise ValueError("table and lattice must describe the same group object")
        self.table = table
        self.lattice = lattice
        self.group = table.group
        self.verdicts = verdicts if verdicts is not None else oliver_table(lattice)
        self.fp = [table.fp_vector(cls.representative) for cls in lattice.classes]
        self.core = lattice.identify_class(lattice.index_two_core()).index
        whole = lattice.whole.index
        self.nontrivial_irreducibles = [i for i, v in enumerate(self.fp[whole]) if v == 0]
        self.frames = self._build_frames()
        self.parity_frames = sorted(
            (
                f
                for f in self.frames
                if all(_is_two_power(lattice.classes[i].order) for i in (f.first, f.second, f.inner))
            ),
            key=self._frame_key,
        )
        self._faithful: Dict[Tuple[int, ...], bool] = {}
        logger.info(
            "exclusion context: %d frames, %d parity frames, index-two core %s",
            len(self.frames),
            len(self.parity_frames),
            lattice.classes[self.core].label,
        )

    def label(self, index: int) -> str:
        return self.lattice.classes[index].label

    def order(self, index: int) -> int:
        return self.lattice.classes[index].order

    def is_non_oliver(self, index: int) -> bool:
        return not self.verdicts[index].is_oliver

    def _frame_key(self, frame: Frame) -> Tuple[int, int, int, int, int]:
        return (
            -self.order(frame.inner),
            self.order(frame.first) + self.order(frame.second),
            frame.first,
            frame.second,
            frame.inner,
        )

    def _build_frames(self) -> List[Frame]:
        lattice = self.lattice
        classes = lattice.classes
        non_oliver = [c.index for c in classes if self.is_non_oliver(c.index)]
        prime_power = [c for c in classes if is_prime_power(c.order)]
        frames: List[Frame] = []
        for a_pos, a in enumerate(non_oliver):
            for b in non_oliver[a_pos:]:
                seen: Set[int] = set()
                for pair in lattice.witness_pairs(a, b):
                    meet = pair.intersection
                    for p in prime_power:
                        if p.index in seen or len(meet) % p.order:
                            continue
                        inner = next((conj for conj in p.conjugates if conj <= meet), None)
                        if inner is None:
                            continue
                        seen.add(p.index)
                        frames.append(Frame(a, b, p.index, pair.first, pair.second, inner))
        frames.sort(key=self._frame_key)
        return frames

    def fp_of(self, module: RGModule) -> List[int]:
        """dim V^H for the representative of every class."""
        mult = module.multiplicities
        return [sum(m * d for m, d in zip(mult, vec) if m) for vec in self.fp]

    def is_faithful(self, module: RGModule) -> bool:
        support = tuple(module.summands())
        if support not in self._faithful:
            self._faithful[support] = self.table.is_faithful(module)
        return self._faithful[support]

    def candidate(self, module: RGModule) -> CandidateModule:
        return CandidateModule(
            module,
            self.table.module_name(module),
            self.table.dimension(module),
            self.is_faithful(module),
        )

    def frame_application(
        self,
        rule: str,
        frame: Frame,
        fp: Sequence[int],
        conclusion: Conclusion,
        scope: Scope,
        inner_role: str,
    ) -> RuleApplication:
        first, second, inner = frame.first, frame.second, frame.inner
        labels = (self.label(first), self.label(second), self.label(inner))
        roles = ("H1", "H2", inner_role) if rule != "R4" else ("A", "B", "C")
        side: Dict[str, Any] = {
            f"non_oliver({labels[0]})": self.is_non_oliver(first),
            f"non_oliver({labels[1]})": self.is_non_oliver(second),
            "generates": True,
            f"{roles[2]}_in_intersection": True,
        }
        if rule == "R4":
            side["two_groups"] = True
        else:
            side[f"prime_power({labels[2]})"] = True
        return RuleApplication(
            rule=rule,
            subgroups=labels,
            fp_dims={labels[0]: fp[first], labels[1]: fp[second], labels[2]: fp[inner]},
            conclusion=conclusion,
            scope=scope,
            side_conditions=side,
            axioms=AXIOMS[rule],
            witnesses={
                roles[0]: tuple(sorted(frame.witness_first)),
                roles[1]: tuple(sorted(frame.witness_second)),
                roles[2]: tuple(sorted(frame.witness_inner)),
            },
        )

    def class_for(self, label: str) -> int:
        return self.lattice.class_by_label(label).index

    def r5_indices(self) -> Tuple[Dict[str, int], Dict[str, int], Frame]:
        """Summand indices, class indices and the R1 frame used by R5.

        Raises:
            ScopeViolation: If the group lacks the named summands or classes,
                or Q16 and [24,4] do not generate G around Q8_A.
        """
        names = set(self.table.names)
        labels = set(self.lattice.labels)
        missing = [n for n in R5_SUMMANDS if n not in names] + [
            c for c in R5_CLASSES if c not in labels
        ]
        if missing:
            name = self.group.name or "this group"
            raise ScopeViolation(f"R5 needs {', '.join(missing)}, absent for {name}")
        summands = {n: self.table.index_of(n) for n in R5_SUMMANDS}
        classes = {c: self.class_for(c) for c in R5_CLASSES}
        frame = next(
            (
                f
                for f in self.frames
                if (f.first, f.second, f.inner)
                in {
                    (classes["Q16"], classes["[24,4]"], classes["Q8_A"]),
                    (classes["[24,4]"], classes["Q16"], classes["Q8_A"]),
                }
            ),
            None,
        )
        if frame is None:
            raise ScopeViolation("Q16 and [24,4] do not generate the group around Q8_A")
        return summands, classes, frame


def enumerate_candidates(
    context: ExclusionContext,
    n: int,
    effective: bool = False,
    pseudofree: Optional[int] = None,
    forbidden: Sequence[str] = (),
) -> List[CandidateModule]:
    """All candidate tangent modules of dimension n.

    Modules are multisets of nontrivial real irreducibles, listed in
    lexicographic order of their multiplicity vectors.

    Args:
        context: Exclusion context of the group.
        n: Dimension.
        effective: Keep only faithful modules.
        pseudofree: If given, keep only modules with dim V^H <= pseudofree for
            every nontrivial subgroup H.
        forbidden: Names of irreducibles that may not occur.

    Returns:
        List[CandidateModule]: The candidates.
    """
    if n < 0:
        raise ValueError(f"dimension must be non-negative, got {n}")
    table = context.table
    size = len(table.real_irreducibles)
    banned = {table.index_of(name) for name in forbidden}
    usable = [i for i in context.nontrivial_irreducibles if i not in banned]
    degrees = [chi.degree for chi in table.real_irreducibles]
    watched = [c.index for c in context.lattice.classes if c.order > 1]
    mult = [0] * size
    found: List[CandidateModule] = []

    def walk(pos: int, remaining: int, partial: List[int]) -> Iterator[None]:
        if pos == len(usable):
            if remaining == 0:
                yield None
            return
        idx = usable[pos]
        deg = degrees[idx]
        count = 0
        current = partial
        while count * deg <= remaining:
            mult[idx] = count
            yield from walk(pos + 1, remaining - count * deg, current)
            count += 1
            if pseudofree is not None:
                current = [v + context.fp[c][idx] for v, c in zip(current, watched)]
                if any(v > pseudofree for v in current):
                    break
        mult[idx] = 0

    for _ in walk(0, n, [0] * len(watched)):
        module = RGModule(tuple(mult))
        if effective and not context.is_faithful(module):
            continue
        found.append(context.candidate(module))
    return found


def rule_R1_two_point(context: ExclusionContext, candidate: CandidateModule) -> Optional[RuleApplication]:
    fp = context.fp_of(candidate.module)
    for frame in context.frames:
        if fp[frame.inner] == 0:
            return context.frame_application("R1", frame, fp, Conclusion.TWO_POINTS, Scope.HOMOLOGY, "P")
    return None


def rule_R2_index_two(context: ExclusionContext, candidate: CandidateModule) -> Optional[RuleApplication]:
    fp = context.fp_of(candidate.module)
    core = context.core
    if fp[core] <= 0:
        return None
    label = context.label(core)
    return RuleApplication(
        rule="R2",
        subgroups=(label,),
        fp_dims={label: fp[core]},
        conclusion=Conclusion.NOT_SINGLE,
        scope=Scope.HOMOLOGY,
        side_conditions={"index_two_core": label},
        axioms=AXIOMS["R2"],
        witnesses={"G2": context.lattice.classes[core].representative.members},
    )


def rule_R3_low_sphere(context: ExclusionContext, candidate: CandidateModule) -> Optional[RuleApplication]:
    fp = context.fp_of(candidate.module)
    for frame in context.frames:
        total = fp[frame.first] + fp[frame.second]
        if total == fp[frame.inner] and fp[frame.inner] <= 2:
            app = context.frame_application("R3", frame, fp, Conclusion.NOT_SINGLE, Scope.STANDARD, "H")
            app.side_conditions["fixed_set_dimension_at_most_2"] = True
            return app
    return None


def rule_R4_parity(context: ExclusionContext, candidate: CandidateModule) -> Optional[RuleApplication]:
    fp = context.fp_of(candidate.module)
    for frame in context.parity_frames:
        a, b, c = fp[frame.first], fp[frame.second], fp[frame.inner]
        if a > 0 and b > 0 and c == a + b:
            return context.frame_application("R4", frame, fp, Conclusion.EVEN, Scope.HOMOLOGY, "C")
    return None


def _r5_values(
    context: ExclusionContext, candidate: CandidateModule
) -> Tuple[Dict[str, int], Dict[str, int], Dict[str, int], Frame]:
    summands, classes, frame = context.r5_indices()
    fp = context.fp_of(candidate.module)
    mult = {name: candidate.module.multiplicities[i] for name, i in summands.items()}
    dims = {label: fp[i] for label, i in classes.items()}
    return mult, dims, classes, frame


def rule_R5_point(
    context: ExclusionContext, candidate: CandidateModule, mode: Mode
) -> Optional[RuleApplication]:
    """Per fixed point part of the R5 dichotomy.

    A module with none of U4_2, U5_2, U5_1, U6 has dim V^{Q8_A} = 0 and falls
    to the R1 frame (Q16, [24,4], Q8_A). With exactly one fixed point, a module
    containing U4_2 or U5_2 must contain U6.

    Raises:
        ScopeViolation: If the group lacks the named summands or classes.
    """
    mult, dims, classes, frame = _r5_values(context, candidate)
    has_twisted = mult["U4_2"] > 0 or mult["U5_2"] > 0
    labels = tuple(R5_CLASSES)
    witnesses = {
        "H1": tuple(sorted(frame.witness_first)),
        "H2": tuple(sorted(frame.witness_second)),
        "P": tuple(sorted(frame.witness_inner)),
    }
    if not has_twisted and mult["U5_1"] == 0 and mult["U6"] == 0:
        if dims["Q8_A"] != 0:
            return None
        return RuleApplication(
            rule="R5",
            subgroups=labels,
            fp_dims=dims,
            conclusion=Conclusion.TWO_POINTS,
            scope=Scope.HOMOLOGY,
            side_conditions={
                "lacks_U4_2_U5_2_U5_1_U6": True,
                "non_oliver(Q16)": context.is_non_oliver(classes["Q16"]),
                "non_oliver([24,4])": context.is_non_oliver(classes["[24,4]"]),
                "generates": True,
                "P_in_intersection": True,
            },
            axioms=AXIOMS["R1"],
            witnesses=witnesses,
        )
    if mode == Mode.ONE and has_twisted and mult["U6"] == 0:
        identity = dims["Q16"] + dims["[24,4]"] == dims["Q8_A"] - mult["U6"]
        if not identity or dims["[24,4]"] <= 0:
            return None
        return RuleApplication(
            rule="R5",
            subgroups=labels,
            fp_dims=dims,
            conclusion=Conclusion.NOT_SINGLE,
            scope=Scope.HOMOLOGY,
            side_conditions={
                "contains_U4_2_or_U5_2": True,
                "lacks_U6": True,
                "fp(Q16)+fp([24,4])=fp(Q8_A)-mult(U6)": identity,
                "fp([24,4])>0": True,
                "generates": True,
            },
            axioms=AXIOMS["R5"],
            witnesses=witnesses,
        )
    return None


def rule_R5_global(
    context: ExclusionContext, survivors: Sequence[CandidateModule], effective: bool
) -> Optional[RuleApplication]:
    """Global part of the R5 dichotomy for an odd number of fixed points.

    If every surviving module contains U4_2 or U5_2, an odd number of fixed
    points must carry U6; when no survivor contains U6 the count cannot be odd.
    An empty survivor list is excluded outright.

    Raises:
        ScopeViolation: If the group lacks the named summands or classes.
    """
    summands, classes, frame = context.r5_indices()
    twisted = all(c.contains(summands["U4_2"]) or c.contains(summands["U5_2"]) for c in survivors)
    with_u6 = [c for c in survivors if c.contains(summands["U6"])]
    if not twisted:
        return None
    if with_u6:
        if not effective:
            return None
        faithful = [chi.degree for i, chi in enumerate(context.table.real_irreducibles)
                    if context.table.real_kernel(i).order == 1]
        bound = context.table.real_irreducibles[summands["U6"]].degree + min(faithful)
        return RuleApplication(
            rule="R5",
            subgroups=tuple(R5_CLASSES),
            fp_dims={},
            conclusion=Conclusion.LOWER_BOUND,
            scope=Scope.HOMOLOGY,
            side_conditions={"all_survivors_contain_U4_2_or_U5_2": True, "effective": True},
            axioms=AXIOMS["R5"],
            bound=bound,
        )
    return RuleApplication(
        rule="R5",
        subgroups=tuple(R5_CLASSES),
        fp_dims={},
        conclusion=Conclusion.EVEN,
        scope=Scope.HOMOLOGY,
        side_conditions={
            "all_survivors_contain_U4_2_or_U5_2": True,
            "no_survivor_contains_U6": True,
            "survivors": len(survivors),
            "generates": True,
        },
        axioms=AXIOMS["R5"],
        witnesses={
            "H1": tuple(sorted(frame.witness_first)),
            "H2": tuple(sorted(frame.witness_second)),
            "P": tuple(sorted(frame.witness_inner)),
        },
    )


@dataclass
class R5Verdict:
    """Both halves of the R5 dichotomy applied to a candidate set."""

    point_applications: Dict[str, RuleApplication]
    global_application: Optional[RuleApplication]
    survivors: List[CandidateModule]

    @property
    def excluded(self) -> bool:
        app = self.global_application
        return app is not None and app.conclusive


def rule_R5_combined(
    context: ExclusionContext,
    candidates: Sequence[CandidateModule],
    mode: Mode,
    effective: bool = False,
) -> R5Verdict:
    """Apply R5 to every candidate, then globally to the survivors."""
    applications: Dict[str, RuleApplication] = {}
    survivors: List[CandidateModule] = []
    for candidate in candidates:
        app = rule_R5_point(context, candidate, mode)
        if app is not None and app.conclusion in KILLS[mode]:
            applications[candidate.name] = app
        else:
            survivors.append(candidate)
    global_app = rule_R5_global(context, survivors, effective) if mode == Mode.ODD else None
    return R5Verdict(applications, global_app, survivors)


def _supports_r5(context: ExclusionContext) -> bool:
    try:
        context.r5_indices()
    except ScopeViolation:
        return False
    return True


def exclude(
    context: ExclusionContext,
    n: int,
    mode: Mode = Mode.ONE,
    scope: Scope = Scope.HOMOLOGY,
    effective: bool = False,
    pseudofree: Optional[int] = None,
    forbidden: Sequence[str] = (),
) -> ExclusionReport:
    """Decide whether the rules exclude actions at dimension n.

    Candidates are enumerated under the constraints, then each one goes
    through R2 (one mode), R1, R4, R3 (standard scope, one mode) and R5 until
    a rule kills it. In odd mode the survivors are finally checked together.

    Args:
        context: Exclusion context of the group.
        n: Dimension of the sphere.
        mode: One or odd number of fixed points.
        scope: Homology or standard spheres.
        effective: Require a faithful tangent module.
        pseudofree: Pseudofreeness bound k, if any.
        forbidden: Irreducibles that may not occur.

    Returns:
        ExclusionReport: The verdict with the full trace.
    """
    mode = Mode(mode)
    scope = Scope(scope)
    candidates = enumerate_candidates(context, n, effective, pseudofree, forbidden)
    with_r5 = _supports_r5(context)
    verdicts: List[CandidateVerdict] = []
    for candidate in candidates:
        verdict = CandidateVerdict(candidate)
        rules = []
        if mode == Mode.ONE:
            rules.append(rule_R2_index_two)
        rules.extend([rule_R1_two_point, rule_R4_parity])
        if mode == Mode.ONE and scope == Scope.STANDARD:
            rules.append(rule_R3_low_sphere)
        for rule in rules:
            app = rule(context, candidate)
            if app is not None and app.conclusion in KILLS[mode]:
                verdict.applications.append(app)
                verdict.excluded = True
                break
        if not verdict.excluded and with_r5:
            app = rule_R5_point(context, candidate, mode)
            if app is not None and app.conclusion in KILLS[mode]:
                verdict.applications.append(app)
                verdict.excluded = True
        verdicts.append(verdict)

    report = ExclusionReport(
        group=context.group.name,
        mode=mode,
        scope=scope,
        dimension=n,
        pseudofree=pseudofree,
        effective=effective,
        candidates=verdicts,
    )
    survivors = [v.candidate for v in report.survivors]
    if mode == Mode.ODD and with_r5 and survivors:
        app = rule_R5_global(context, survivors, effective)
        if app is not None:
            report.global_applications.append(app)
    global_kill = any(a.conclusion in KILLS[mode] for a in report.global_applications)
    report.excluded = not survivors or global_kill
    logger.debug(
        "n=%d mode=%s scope=%s: %d candidates, %d survivors, %s",
        n,
        mode.value,
        scope.value,
        len(candidates),
        len(survivors),
        report.verdict_line(),
    )
    return report


@dataclass
class ScanResult:
    """Reports of a dimension scan and the dimensions not excluded."""

    reports: List[ExclusionReport]

    @property
    def admissible(self) -> List[int]:
        return [r.dimension for r in self.reports if not r.excluded]

    def survivors(self) -> Dict[int, List[str]]:
        return {
            r.dimension: [v.candidate.name for v in r.survivors] for r in self.reports if not r.excluded
        }


def scan(
    context: ExclusionContext,
    mode: Mode = Mode.ONE,
    scope: Scope = Scope.HOMOLOGY,
    effective: bool = False,
    pseudofree: Optional[int] = None,
    n_max: int = DEFAULT_N_MAX,
    n_min: int = 0,
) -> ScanResult:
    """Run exclude for every n in [n_min, n_max]."""
    if n_max < n_min:
        raise ValueError(f"empty scan range [{n_min}, {n_max}]")
    return ScanResult(
        [exclude(context, n, mode, scope, effective, pseudofree) for n in range(n_min, n_max + 1)]
    )


def pseudofree_scan(
    context: ExclusionContext,
    k: int,
    effective: bool = False,
    n_max: int = DEFAULT_N_MAX,
    scope: Scope = Scope.HOMOLOGY,
) -> ScanResult:
    """Dimensions admitting a k-pseudofree one fixed point action after all rules."""
    return scan(context, Mode.ONE, scope, effective, pseudofree=k, n_max=n_max)
