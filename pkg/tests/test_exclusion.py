"""
Unit tests for candidate enumeration, the exclusion rules and dimension scans.
"""

from pathlib import Path
from typing import Dict, List, Set

import pytest

from sphex.chartab import CharacterTable, load_table
from sphex.errors import ScopeViolation
from sphex.exclusion import (
    CandidateModule,
    Conclusion,
    ExclusionContext,
    Mode,
    Scope,
    enumerate_candidates,
    exclude,
    family_name,
    pseudofree_scan,
    rule_R1_two_point,
    rule_R2_index_two,
    rule_R3_low_sphere,
    rule_R4_parity,
    rule_R5_global,
    rule_R5_point,
    rule_R5_combined,
    scan,
)
from sphex.group import FiniteGroup
from sphex.lattice import SubgroupLattice

TEST_DATA_DIR = Path(__file__).resolve().parent / "data"


def _candidate(context: ExclusionContext, text: str) -> CandidateModule:
    return context.candidate(context.table.parse_module(text))


def _faithful_counts(context: ExclusionContext, n_max: int) -> Dict[int, int]:
    """Count faithful multisets per dimension from kernel classes alone."""
    table = context.table
    rows = [(i, chi) for i, chi in enumerate(table.real_irreducibles) if i in context.nontrivial_irreducibles]
    kernels = [{c for c, value in enumerate(chi.values) if value == chi.degree} for _, chi in rows]
    everything = set(range(len(table.classes)))
    counts = {n: 0 for n in range(n_max + 1)}

    def walk(pos: int, dim: int, kernel: Set[int]) -> None:
        if pos == len(rows):
            if kernel == {0}:
                counts[dim] += 1
            return
        degree = rows[pos][1].degree
        count = 0
        while dim + count * degree <= n_max:
            inner = kernel & kernels[pos] if count else kernel
            walk(pos + 1, dim + count * degree, inner)
            count += 1

    walk(0, 0, everything)
    return counts


def test_zero_dimension(context: ExclusionContext) -> None:
    candidates = enumerate_candidates(context, 0)
    assert [c.name for c in candidates] == ["0"]
    assert not candidates[0].effective
    assert enumerate_candidates(context, 0, effective=True) == []
    with pytest.raises(ValueError):
        enumerate_candidates(context, -1)


def test_enumeration_is_lexicographic_and_exact(context: ExclusionContext) -> None:
    candidates = enumerate_candidates(context, 12)
    vectors = [c.module.multiplicities for c in candidates]
    assert vectors == sorted(vectors)
    assert len(set(vectors)) == len(vectors)
    trivial = context.table.index_of("trivial")
    for c in candidates:
        assert c.dimension == 12
        assert c.module.multiplicities[trivial] == 0


def test_faithful_counts_match_kernel_oracle(context: ExclusionContext) -> None:
    expected = _faithful_counts(context, 18)
    for n in range(19):
        assert len(enumerate_candidates(context, n, effective=True)) == expected[n], n


def test_effective_candidates_contain_a_faithful_summand(context: ExclusionContext) -> None:
    names = [c.name for c in enumerate_candidates(context, 13, effective=True)]
    assert "U5_1+W8_1" in names
    assert "U1+U4_1+W8_2" in names
    assert all("W" in name for name in names)


def test_named_families_at_17(context: ExclusionContext) -> None:
    names = {c.name for c in enumerate_candidates(context, 17, effective=True, forbidden=["U1"])}
    for i in (1, 2, 3):
        assert f"U4_1+U5_1+W8_{i}" in names
        assert f"U4_2+U5_1+W8_{i}" in names
    assert "U5_1+W12_1" in names
    assert not any(name.startswith("U1") for name in names)


def test_family_name() -> None:
    assert family_name("U6+W8_2") == "U6+W8_*"
    assert family_name("U4_1+U5_1+W8_3") == "U4_*+U5_*+W8_*"
    assert family_name("U6+W8_1+W8_2") == "U6+W8_*^2"
    assert family_name("U1^2+W8_1") == "U1^2+W8_*"


class TestRules:
    def test_r1_kills_free_module(self, context: ExclusionContext) -> None:
        app = rule_R1_two_point(context, _candidate(context, "W8_1"))
        assert app is not None
        assert app.rule == "R1"
        assert app.conclusion == Conclusion.TWO_POINTS
        assert app.fp_dims[app.subgroups[2]] == 0
        assert set(app.witnesses) == {"H1", "H2", "P"}

    def test_r1_spares_u6(self, context: ExclusionContext) -> None:
        assert rule_R1_two_point(context, _candidate(context, "U6+W8_1")) is None

    def test_r2(self, context: ExclusionContext) -> None:
        app = rule_R2_index_two(context, _candidate(context, "U1+W8_1"))
        assert app is not None
        assert app.fp_dims == {"SL(2,5)": 1}
        assert app.conclusion == Conclusion.NOT_SINGLE
        assert rule_R2_index_two(context, _candidate(context, "W8_1")) is None
        assert rule_R2_index_two(context, _candidate(context, "0")) is None

    def test_r3(self, context: ExclusionContext) -> None:
        app = rule_R3_low_sphere(context, _candidate(context, "U4_1+U5_1+W8_2"))
        assert app is not None
        assert app.scope == Scope.STANDARD
        first, second, inner = (app.fp_dims[label] for label in app.subgroups)
        assert first + second == inner <= 2

    @pytest.mark.parametrize("module", ["U5_1+W8_1", "U5_1+W12_2", "U4_2+U5_1+W8_3"])
    def test_r4(self, context: ExclusionContext, module: str) -> None:
        app = rule_R4_parity(context, _candidate(context, module))
        assert app is not None
        assert app.conclusion == Conclusion.EVEN
        a, b, c = (app.fp_dims[label] for label in app.subgroups)
        assert a > 0 and b > 0 and c == a + b
        for role in ("A", "B", "C"):
            order = len(app.witnesses[role])
            assert order & (order - 1) == 0

    def test_u6_w8_escapes_every_rule(self, context: ExclusionContext) -> None:
        for i in (1, 2, 3):
            candidate = _candidate(context, f"U6+W8_{i}")
            assert rule_R1_two_point(context, candidate) is None
            assert rule_R2_index_two(context, candidate) is None
            assert rule_R3_low_sphere(context, candidate) is None
            assert rule_R4_parity(context, candidate) is None
            assert rule_R5_point(context, candidate, Mode.ONE) is None

    def test_r5_point_without_key_summands(self, context: ExclusionContext) -> None:
        app = rule_R5_point(context, _candidate(context, "U1^2+U4_1+W8_1"), Mode.ODD)
        assert app is not None
        assert app.conclusion == Conclusion.TWO_POINTS
        assert app.fp_dims["Q8_A"] == 0

    def test_r5_point_twisted(self, context: ExclusionContext) -> None:
        candidate = _candidate(context, "U4_2+W8_1")
        app = rule_R5_point(context, candidate, Mode.ONE)
        assert app is not None
        assert app.conclusion == Conclusion.NOT_SINGLE
        assert app.fp_dims == {"Q16": 1, "[24,4]": 1, "Q8_A": 2}
        assert rule_R5_point(context, candidate, Mode.ODD) is None

    def test_r5_global(self, context: ExclusionContext) -> None:
        twisted = [_candidate(context, "U4_2+W8_1"), _candidate(context, "U5_2+W8_2")]
        app = rule_R5_global(context, twisted, effective=True)
        assert app is not None and app.conclusion == Conclusion.EVEN
        with_u6 = [_candidate(context, "U4_2+U6+W8_1")]
        bound = rule_R5_global(context, with_u6, effective=True)
        assert bound is not None
        assert bound.conclusion == Conclusion.LOWER_BOUND
        assert bound.bound == 14
        assert not bound.conclusive
        assert rule_R5_global(context, with_u6, effective=False) is None
        assert rule_R5_global(context, [_candidate(context, "U6+W8_1")], effective=True) is None

    def test_r5_combined(self, context: ExclusionContext) -> None:
        candidates = [_candidate(context, "U4_1+W8_1"), _candidate(context, "U4_2+W8_1")]
        verdict = rule_R5_combined(context, candidates, Mode.ODD, effective=True)
        assert list(verdict.point_applications) == ["U4_1+W8_1"]
        assert [c.name for c in verdict.survivors] == ["U4_2+W8_1"]
        assert verdict.excluded


def test_odd_mode_homology_effective(context: ExclusionContext) -> None:
    result = scan(context, Mode.ODD, Scope.HOMOLOGY, effective=True, n_max=14)
    assert result.admissible == [14]


def test_one_mode_standard_effective(context: ExclusionContext) -> None:
    result = scan(context, Mode.ONE, Scope.STANDARD, effective=True, n_max=17)
    assert result.admissible == [14]
    report = result.reports[14]
    assert report.families() == ["U6+W8_*"]
    assert sorted(v.candidate.name for v in report.survivors) == ["U6+W8_1", "U6+W8_2", "U6+W8_3"]
    assert report.verdict_line() == "NOT EXCLUDED (1 surviving family: U6+W8_*)"


def test_n17_trace_names_the_killing_rules(context: ExclusionContext) -> None:
    report = exclude(context, 17, Mode.ONE, Scope.STANDARD, effective=True, forbidden=["U1"])
    assert report.excluded
    by_name = {v.candidate.name: v for v in report.candidates}
    assert by_name["U4_1+U5_1+W8_1"].applications[0].rule in {"R3", "R4"}
    assert by_name["U4_2+U5_1+W8_1"].applications[0].rule in {"R3", "R4"}
    assert by_name["U5_1+W12_1"].applications[0].rule in {"R3", "R4"}


def test_n8_one_mode_homology(context: ExclusionContext) -> None:
    assert exclude(context, 8, Mode.ONE, Scope.HOMOLOGY, effective=True).excluded


def test_odd_exclusion_implies_one(context: ExclusionContext) -> None:
    for n in range(21):
        odd = exclude(context, n, Mode.ODD, Scope.HOMOLOGY, effective=True)
        if odd.excluded:
            assert exclude(context, n, Mode.ONE, Scope.HOMOLOGY, effective=True).excluded, n


def test_no_5_pseudofree_actions(context: ExclusionContext) -> None:
    assert pseudofree_scan(context, 5, n_max=64).admissible == []


def test_6_pseudofree_effective_dimensions(context: ExclusionContext) -> None:
    result = pseudofree_scan(context, 6, effective=True, n_max=64)
    expected = sorted({6 + 8 * k for k in range(1, 8)} | {18 + 8 * k for k in range(6)})
    assert result.admissible == expected
    table = context.table
    w12 = [table.index_of("W12_1"), table.index_of("W12_2")]
    allowed = {table.index_of(n) for n in ("U6", "W8_1", "W8_2", "W8_3", "W12_1", "W12_2")}
    for survivors in result.survivors().values():
        for name in survivors:
            module = table.parse_module(name)
            assert module.multiplicities[table.index_of("U6")] == 1
            assert set(module.summands()) <= allowed
            assert sum(module.multiplicities[i] for i in w12) <= 1


def test_6_pseudofree_at_6_needs_effectiveness(context: ExclusionContext) -> None:
    report = exclude(context, 6, pseudofree=6)
    assert not report.excluded
    assert not report.effective
    assert [v.candidate.name for v in report.survivors] == ["U6"]
    assert exclude(context, 6, pseudofree=6, effective=True).excluded


def test_pseudofree_monotonicity(context: ExclusionContext) -> None:
    admissible: List[Set[int]] = [set(pseudofree_scan(context, k, n_max=40).admissible) for k in range(4, 9)]
    for smaller, larger in zip(admissible, admissible[1:]):
        assert smaller <= larger
    assert 6 in admissible[2]


def test_scan_range(context: ExclusionContext) -> None:
    with pytest.raises(ValueError):
        scan(context, n_max=3, n_min=5)
    result = scan(context, n_max=4, n_min=2)
    assert [r.dimension for r in result.reports] == [2, 3, 4]


def test_r5_needs_its_named_modules(s5: FiniteGroup, s5_lattice: SubgroupLattice) -> None:
    table = load_table(s5, str(TEST_DATA_DIR / "s5.chartab"))
    context = ExclusionContext(table, s5_lattice)
    with pytest.raises(ScopeViolation):
        context.r5_indices()
    candidate = context.candidate(table.parse_module("V4"))
    with pytest.raises(ScopeViolation):
        rule_R5_point(context, candidate, Mode.ONE)
    report = exclude(context, 4, Mode.ODD)
    assert report.global_applications == []
    assert {v.candidate.name for v in report.candidates} == {"V4", "V4_sign", "sign^4"}


def test_context_requires_one_group(fixture_table: CharacterTable, s5_lattice: SubgroupLattice) -> None:
    with pytest.raises(ValueError):
        ExclusionContext(fixture_table, s5_lattice)
