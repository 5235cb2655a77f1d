"""Cross-module appropriateness scoring and the final composition grade.

Module weights stand in for learned weights: with no training data they are
configuration, uniform by default. The grade itself ignores the weighted
score and follows the dhvani rule alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Literal, Mapping, Optional

from .annotations import RASAS, SRNGARA_SUBTYPES, DhvaniCensus, RasaAnnotation, VakroktiAnnotation, normalize_label
from .errors import ConfigError, InvalidWeights
from .style import RitiVerdict

MODULES = ("riti", "alankara", "rasa", "vakrokti", "dhvani")
RITIS = ("vaidarbhi", "gaudi", "pancali")
CELL_VALUES = (0.0, 0.5, 1.0)
NEUTRAL = 0.5

Grade = Literal["uttama", "madhyama", "adhama"]


def rasa_key(rasa: RasaAnnotation | str | None) -> Optional[str]:
    """Matrix row for a rasa; sub-typed srngara collapses onto srngara."""
    if rasa is None:
        return None
    if isinstance(rasa, RasaAnnotation):
        return rasa.rasa
    norm = normalize_label(rasa)
    for st in SRNGARA_SUBTYPES:
        if norm == f"{st}_srngara":
            return "srngara"
    return norm


def _cell(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or float(value) not in CELL_VALUES:
        raise ConfigError(f"{where}: compatibility must be one of 0, 0.5, 1 (got {value!r})")
    return float(value)


@dataclass(frozen=True)
class CompatibilityMatrix:
    riti_rasa: Mapping[tuple[str, str], float] = field(default_factory=dict)
    alankara_rasa: Mapping[tuple[str, str], float] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("riti_rasa", "alankara_rasa"):
            cells = {}
            for (a, b), v in getattr(self, name).items():
                cells[(normalize_label(a), normalize_label(b))] = _cell(v, f"{name}.{a}.{b}")
            object.__setattr__(self, name, dict(sorted(cells.items())))

    @classmethod
    def default(cls) -> "CompatibilityMatrix":
        # only the pairings the tradition states outright; all else neutral
        return cls(riti_rasa={
            ("vaidarbhi", "srngara"): 1.0,
            ("gaudi", "vira"): 1.0,
            ("gaudi", "srngara"): 0.0,
        })

    def riti_cell(self, riti: str, rasa: str) -> float:
        return self.riti_rasa.get((riti, rasa), NEUTRAL)

    def alankara_cell(self, alankara: str, rasa: str) -> float:
        return self.alankara_rasa.get((alankara, rasa), NEUTRAL)

    def to_json(self) -> dict:
        def nest(cells):
            out: dict = {}
            for (a, b), v in cells.items():
                out.setdefault(a, {})[b] = v
            return out
        return {"riti_rasa": nest(self.riti_rasa), "alankara_rasa": nest(self.alankara_rasa)}


@dataclass(frozen=True)
class ModuleWeights:
    riti: float = 0.2
    alankara: float = 0.2
    rasa: float = 0.2
    vakrokti: float = 0.2
    dhvani: float = 0.2

    def __post_init__(self):
        values = self.as_dict()
        for k, v in values.items():
            if isinstance(v, bool) or not isinstance(v, (int, float)) or math.isnan(v) or v < 0:
                raise InvalidWeights(f"weight {k}={v!r} must be a non-negative number")
        total = sum(values.values())
        if abs(total - 1.0) > 1e-9:
            raise InvalidWeights(f"module weights must sum to 1, got {total!r}")

    @classmethod
    def from_mapping(cls, weights: Mapping[str, float]) -> "ModuleWeights":
        """Build from a partial mapping; modules left out get weight 0."""
        unknown = set(weights) - set(MODULES)
        if unknown:
            extra = " (meter output is deliberately not weighted)" if "meter" in unknown else ""
            raise InvalidWeights(f"unknown module(s) {sorted(unknown)}{extra}")
        return cls(**{m: weights.get(m, 0.0) for m in MODULES})

    def as_dict(self) -> dict[str, float]:
        return {m: getattr(self, m) for m in MODULES}


@dataclass(frozen=True)
class RasaDosha:
    """An incompatible pairing that obstructs the rasa."""

    source: Literal["riti", "alankara"]
    element: str
    rasa: str

    def __str__(self) -> str:
        return f"rasa-dosha: {self.source} '{self.element}' is incompatible with rasa '{self.rasa}'"


@dataclass(frozen=True)
class Compatibility:
    score: float
    warning: Optional[RasaDosha] = None


def compatibility(riti: RitiVerdict | str, rasa: RasaAnnotation | str, matrix: CompatibilityMatrix) -> Compatibility:
    riti_name = riti.riti if isinstance(riti, RitiVerdict) else normalize_label(riti)
    key = rasa_key(rasa)
    score = matrix.riti_cell(riti_name, key)
    return Compatibility(score, RasaDosha("riti", riti_name, key) if score == 0.0 else None)


@dataclass(frozen=True)
class AucityaInputs:
    riti: Optional[RitiVerdict] = None
    alankara: tuple = ()  # findings with a ``display_name``/``name``
    rasa: Optional[RasaAnnotation] = None
    vakrokti: tuple[VakroktiAnnotation, ...] = ()
    census: DhvaniCensus = field(default_factory=DhvaniCensus)


@dataclass(frozen=True)
class AucityaScore:
    score: float
    signals: dict[str, float]
    contributions: dict[str, float]
    warnings: tuple[RasaDosha, ...] = ()

    def __float__(self) -> float:
        return self.score


def module_signals(inputs: AucityaInputs, matrix: CompatibilityMatrix) -> tuple[dict[str, float], list[RasaDosha]]:
    warnings: list[RasaDosha] = []
    rasa = rasa_key(inputs.rasa)

    if inputs.riti is None or rasa is None:
        riti_signal = NEUTRAL
    else:
        c = compatibility(inputs.riti, inputs.rasa, matrix)
        riti_signal = c.score
        if c.warning:
            warnings.append(c.warning)

    findings = list(inputs.alankara)
    if not findings:
        alankara_signal = 0.0
    elif rasa is None:
        alankara_signal = 1.0
    else:
        cells = [matrix.alankara_cell(f.name, rasa) for f in findings]
        if all(c > 0 for c in cells):
            alankara_signal = 1.0
        else:
            alankara_signal = sum(cells) / len(cells)
            for f, c in zip(findings, cells):
                dosha = RasaDosha("alankara", f.name, rasa)
                if c == 0.0 and dosha not in warnings:
                    warnings.append(dosha)

    if inputs.rasa is None:
        rasa_signal = NEUTRAL
    else:
        rasa_signal = 1.0 if inputs.rasa.has_evidence else NEUTRAL

    levels = {v.level for v in inputs.vakrokti}
    vakrokti_signal = len(levels) / 6
    dhvani_signal = 1.0 if inputs.census.has_vyangya else 0.0

    return {
        "riti": riti_signal,
        "alankara": alankara_signal,
        "rasa": rasa_signal,
        "vakrokti": vakrokti_signal,
        "dhvani": dhvani_signal,
    }, warnings


def aucitya_score(inputs: AucityaInputs, matrix: CompatibilityMatrix | None = None,
                  weights: ModuleWeights | None = None) -> AucityaScore:
    """Weighted mean of the per-module appropriateness signals."""
    matrix = matrix or CompatibilityMatrix.default()
    weights = weights or ModuleWeights()
    if not isinstance(weights, ModuleWeights):
        weights = ModuleWeights.from_mapping(weights)
    signals, warnings = module_signals(inputs, matrix)
    w = weights.as_dict()
    contributions = {m: w[m] * signals[m] for m in MODULES}
    score = min(1.0, max(0.0, math.fsum(contributions.values())))
    return AucityaScore(score, signals, contributions, tuple(warnings))


@dataclass(frozen=True)
class GradeReport:
    grade: Grade
    aucitya_score: float
    rasa_dosha_warnings: tuple[RasaDosha, ...] = ()
    contributions: dict[str, float] = field(default_factory=dict)
    confidence: Literal["high", "reduced"] = "high"
    census: DhvaniCensus = field(default_factory=DhvaniCensus)

    def __post_init__(self):
        if self.grade != grade_for(self.census):
            raise ValueError("grade must follow the dhvani census")


def grade_for(census: DhvaniCensus) -> Grade:
    if census.has_dominant_vyangya:
        return "uttama"
    if census.has_vyangya:
        return "madhyama"
    return "adhama"


def grade(census: DhvaniCensus, aucitya: AucityaScore | float, warnings: Iterable[RasaDosha] = ()) -> GradeReport:
    """Grade by dhvani dominance; warnings only lower the confidence."""
    if isinstance(aucitya, AucityaScore):
        score, contributions = aucitya.score, aucitya.contributions
        warnings = tuple(aucitya.warnings) + tuple(w for w in warnings if w not in aucitya.warnings)
    else:
        score, contributions, warnings = float(aucitya), {}, tuple(warnings)
    return GradeReport(
        grade=grade_for(census),
        aucitya_score=score,
        rasa_dosha_warnings=warnings,
        contributions=contributions,
        confidence="reduced" if warnings else "high",
        census=census,
    )


def known_rasa(rasa: str) -> bool:
    return rasa_key(rasa) in RASAS
