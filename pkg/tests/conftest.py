"""Shared fixtures for the sphex test suite.

The order-240 fixture group, its lattice and its character table are
expensive enough to build once per session.
"""

from pathlib import Path
from typing import Dict

import pytest

from sphex.chartab import CharacterTable, load_table
from sphex.exclusion import ExclusionContext
from sphex.fixtures import sl25c2, symmetric_group
from sphex.group import FiniteGroup
from sphex.lattice import SubgroupLattice, enumerate_subgroups
from sphex.oliver import OliverVerdict, oliver_table

ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = ROOT / "data"
TEST_DATA_DIR = Path(__file__).resolve().parent / "data"


@pytest.fixture(scope="session")
def fixture_group() -> FiniteGroup:
    return sl25c2()


@pytest.fixture(scope="session")
def fixture_table(fixture_group: FiniteGroup) -> CharacterTable:
    return load_table(fixture_group, str(DATA_DIR / "sl25c2.chartab"))


@pytest.fixture(scope="session")
def fixture_lattice(fixture_group: FiniteGroup) -> SubgroupLattice:
    return enumerate_subgroups(fixture_group)


@pytest.fixture(scope="session")
def fixture_verdicts(fixture_lattice: SubgroupLattice) -> Dict[int, OliverVerdict]:
    return oliver_table(fixture_lattice)


@pytest.fixture(scope="session")
def context(
    fixture_table: CharacterTable,
    fixture_lattice: SubgroupLattice,
    fixture_verdicts: Dict[int, OliverVerdict],
) -> ExclusionContext:
    return ExclusionContext(fixture_table, fixture_lattice, fixture_verdicts)


@pytest.fixture(scope="session")
def s5() -> FiniteGroup:
    return symmetric_group(5)


@pytest.fixture(scope="session")
def s5_lattice(s5: FiniteGroup) -> SubgroupLattice:
    return enumerate_subgroups(s5)
