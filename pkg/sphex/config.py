"""Configuration for sphex runs."""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, field_validator

from sphex.chartab import CharacterTable, load_table
from sphex.exclusion import DEFAULT_N_MAX
from sphex.group import DEFAULT_MAX_ORDER, FiniteGroup, load_group
from sphex.lattice import DEFAULT_LATTICE_CAP

logger = logging.getLogger(__name__)

# File paths
DATA_DIR = Path(__file__).resolve().parent.parent / "data"
CACHE_DIR = Path.home() / ".cache" / "sphex"
DEFAULT_GROUP_FILE = DATA_DIR / "sl25c2.group"
DEFAULT_CHARTAB_FILE = DATA_DIR / "sl25c2.chartab"
SCHEMA_FILE = DATA_DIR / "exclusion_report.schema.json"
FIXTURE_NAME = "SL(2,5).C2"

CACHE_ENV = "SPHEX_CACHE_DIR"
# Values of SPHEX_CACHE_DIR that switch the cache off.
CACHE_OFF = {"0", "off", "none", "false"}


class Config(BaseModel):
    """Settings shared by every command.

    Attributes:
        group_file (Path): Group file. The default is the bundled fixture.
        chartab_file (Optional[Path]): Complex character table file.
        max_group_order (int): Cap on the order of generated groups.
        lattice_cap (int): Cap on the order of groups whose lattice is built.
        n_max (int): Upper end of dimension scans.
        output_format (str): "text" or "json".
        trace (bool): Include every rule application in reports.
        cache_dir (Optional[Path]): Lattice cache location, None to disable.
    """

    model_config = ConfigDict(frozen=True)

    group_file: Path = DEFAULT_GROUP_FILE
    chartab_file: Optional[Path] = DEFAULT_CHARTAB_FILE
    max_group_order: int = DEFAULT_MAX_ORDER
    lattice_cap: int = DEFAULT_LATTICE_CAP
    n_max: int = DEFAULT_N_MAX
    output_format: Literal["text", "json"] = "text"
    trace: bool = False
    cache_dir: Optional[Path] = CACHE_DIR

    @field_validator("max_group_order", "lattice_cap", "n_max")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value <= 0:
            raise ValueError(f"caps must be positive, got {value}")
        return value

    @classmethod
    def from_env(cls, **overrides: Any) -> Config:
        """Build a Config, taking the cache location from SPHEX_CACHE_DIR."""
        settings = {k: v for k, v in overrides.items() if v is not None}
        if "cache_dir" not in settings:
            settings["cache_dir"] = _cache_dir_from_env()
        return cls(**settings)

    @property
    def uses_fixture(self) -> bool:
        return self.group_file == DEFAULT_GROUP_FILE

    def check_paths(self) -> None:
        """Raise FileNotFoundError for input files that cannot be read."""
        if not self.group_file.is_file():
            raise FileNotFoundError(f"group file not found: {self.group_file}")
        if self.chartab_file is not None and not self.chartab_file.is_file():
            raise FileNotFoundError(f"character table not found: {self.chartab_file}")

    def load_group(self) -> FiniteGroup:
        name = FIXTURE_NAME if self.uses_fixture else self.group_file.stem
        logger.debug("loading %s from %s", name, self.group_file)
        return load_group(str(self.group_file), cap=self.max_group_order, name=name)

    def load_table(self, group: FiniteGroup) -> CharacterTable:
        if self.chartab_file is None:
            raise FileNotFoundError("no character table configured")
        return load_table(group, str(self.chartab_file))


def _cache_dir_from_env() -> Optional[Path]:
    value = os.getenv(CACHE_ENV, "").strip()
    if not value:
        return CACHE_DIR
    if value.lower() in CACHE_OFF:
        return None
    return Path(value).expanduser()
