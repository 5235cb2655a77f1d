"""Pipeline configuration from TOML.

Lookup order: an explicit path, then ``$KAVYA_CONFIG``, then the bundled
``default.toml``. Every section is optional; omitted keys keep defaults.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .aucitya import MODULES as WEIGHTED_MODULES
from .aucitya import CompatibilityMatrix, ModuleWeights
from .errors import ConfigError, KavyaError
from .style import StyleConfig

ENV_VAR = "KAVYA_CONFIG"

# analysis modules in dependency order, with what each one consumes
MODULES = ("meter", "riti", "alankara", "rasa", "vakrokti", "dhvani", "aucitya")
DEPENDS_ON: dict[str, tuple[str, ...]] = {
    "meter": (),
    "riti": (),
    "alankara": (),
    "rasa": ("meter", "riti"),
    "vakrokti": ("alankara",),
    "dhvani": ("rasa", "alankara", "vakrokti"),
    "aucitya": ("riti", "alankara", "rasa", "vakrokti", "dhvani"),
}


def check_modules(modules) -> tuple[str, ...]:
    """Validate a module selection and return it in dependency order."""
    chosen = set(modules)
    unknown = chosen - set(MODULES)
    if unknown:
        raise ConfigError(f"unknown module(s) {sorted(unknown)}; choose from {', '.join(MODULES)}")
    for m in chosen:
        missing = [d for d in DEPENDS_ON[m] if d not in chosen]
        if missing:
            raise ConfigError(f"module '{m}' needs {', '.join(missing)}")
    return tuple(m for m in MODULES if m in chosen)


@dataclass(frozen=True)
class AlankaraConfig:
    min_count: int = 3
    min_words: int = 3
    min_suffix: int = 2

    def __post_init__(self):
        for k in ("min_count", "min_words", "min_suffix"):
            v = getattr(self, k)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise ConfigError(f"alankara.{k} must be a positive integer, got {v!r}")


@dataclass(frozen=True)
class PipelineConfig:
    meter_db: Optional[Path] = None
    budget: int = 2
    modules: tuple[str, ...] = MODULES
    threads: int = 1
    style: StyleConfig = field(default_factory=StyleConfig)
    alankara: AlankaraConfig = field(default_factory=AlankaraConfig)
    weights: ModuleWeights = field(default_factory=ModuleWeights)
    matrix: CompatibilityMatrix = field(default_factory=CompatibilityMatrix.default)
    source: str = "<defaults>"

    def __post_init__(self):
        object.__setattr__(self, "modules", check_modules(self.modules))
        if isinstance(self.budget, bool) or not isinstance(self.budget, int) or self.budget < 0:
            raise ConfigError(f"pipeline.budget must be a non-negative integer, got {self.budget!r}")
        if isinstance(self.threads, bool) or not isinstance(self.threads, int) or self.threads < 1:
            raise ConfigError(f"pipeline.threads must be >= 1, got {self.threads!r}")

    def enabled(self, module: str) -> bool:
        return module in self.modules

    def to_json(self) -> dict:
        """The effective configuration; threads is left out as it cannot change results."""
        return {
            "meter_db": str(self.meter_db) if self.meter_db else None,
            "budget": self.budget,
            "modules": list(self.modules),
            "style": {"long_compound_len": self.style.long_compound_len,
                      "tau_conj": self.style.tau_conj, "tau_comp": self.style.tau_comp},
            "alankara": {"min_count": self.alankara.min_count, "min_words": self.alankara.min_words,
                         "min_suffix": self.alankara.min_suffix},
            "weights": self.weights.as_dict(),
            "compatibility": self.matrix.to_json(),
        }

    @property
    def config_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, ensure_ascii=False).encode("utf-8")
        return "sha256:" + hashlib.sha256(blob).hexdigest()


_SECTIONS = {"pipeline", "style", "alankara", "weights", "compatibility"}


def _table(doc: dict, key: str, where: str) -> dict:
    value = doc.get(key, {})
    if not isinstance(value, dict):
        raise ConfigError(f"{where}: [{key}] must be a table")
    return value


def _cells(table: dict, where: str) -> dict[tuple[str, str], float]:
    """Accept nested ``a.b = v`` tables or quoted ``"a.b" = v`` keys."""
    cells = {}
    for k, v in table.items():
        if isinstance(v, dict):
            for k2, v2 in v.items():
                cells[(k, k2)] = v2
        elif "." in k:
            a, b = k.split(".", 1)
            cells[(a, b)] = v
        else:
            raise ConfigError(f"{where}: key {k!r} must look like <row>.<rasa>")
    return cells


def config_from_dict(doc: dict[str, Any], source: str = "<dict>", base_dir: Path | None = None) -> PipelineConfig:
    unknown = set(doc) - _SECTIONS
    if unknown:
        raise ConfigError(f"{source}: unknown section(s) {sorted(unknown)}")
    try:
        pipe = _table(doc, "pipeline", source)
        extra = set(pipe) - {"meter_db", "budget", "modules", "threads"}
        if extra:
            raise ConfigError(f"{source}: unknown [pipeline] key(s) {sorted(extra)}")
        meter_db = pipe.get("meter_db")
        if meter_db is not None:
            meter_db = Path(meter_db)
            if not meter_db.is_absolute() and base_dir is not None:
                meter_db = base_dir / meter_db
        style = StyleConfig(**_table(doc, "style", source))
        alankara = AlankaraConfig(**_table(doc, "alankara", source))
        weights_table = _table(doc, "weights", source)
        weights = ModuleWeights.from_mapping(weights_table) if weights_table else ModuleWeights()
        comp = _table(doc, "compatibility", source)
        extra = set(comp) - {"riti_rasa", "alankara_rasa"}
        if extra:
            raise ConfigError(f"{source}: unknown [compatibility] table(s) {sorted(extra)}")
        if comp:
            matrix = CompatibilityMatrix(
                riti_rasa=_cells(_table(comp, "riti_rasa", source), f"{source} [compatibility.riti_rasa]"),
                alankara_rasa=_cells(_table(comp, "alankara_rasa", source), f"{source} [compatibility.alankara_rasa]"),
            )
        else:
            matrix = CompatibilityMatrix.default()
        return PipelineConfig(
            meter_db=meter_db,
            budget=pipe.get("budget", 2),
            modules=tuple(pipe.get("modules", MODULES)),
            threads=pipe.get("threads", 1),
            style=style,
            alankara=alankara,
            weights=weights,
            matrix=matrix,
            source=source,
        )
    except TypeError as exc:
        # unexpected keyword from a dataclass constructor
        raise ConfigError(f"{source}: {exc}") from exc
    except KavyaError as exc:
        if str(exc).startswith(source):
            raise
        raise type(exc)(f"{source}: {exc}") from exc


def load_config(path: str | Path | None = None) -> PipelineConfig:
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    if path is None:
        text = resources.files("kavya.data").joinpath("default.toml").read_text(encoding="utf-8")
        return config_from_dict(tomllib.loads(text), source="<bundled default.toml>")
    path = Path(path)
    try:
        doc = tomllib.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: invalid TOML: {exc}") from exc
    return config_from_dict(doc, source=str(path), base_dir=path.parent)


__all__ = [
    "AlankaraConfig", "DEPENDS_ON", "ENV_VAR", "MODULES", "PipelineConfig", "WEIGHTED_MODULES",
    "check_modules", "config_from_dict", "load_config",
]
