"""Run every enabled module over a composition and collect one report.

Order follows the module dependencies: text, then meter, style and sound
figures, then the annotation layers, then aucitya and the grade. Stanza
analyses are independent and may run on a thread pool; results are always
reassembled in stanza order so the report does not depend on scheduling.
"""

from __future__ import annotations

import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from . import __version__
from .alankara import AlankaraFinding, detect_sabda, validate_artha_annotations
from .annotations import AnnotationSet, DhvaniCensus, RasaAnnotation, VakroktiAnnotation, dhvani_census, parse_annotations, serialize, validate
from .aucitya import AucityaInputs, GradeReport, aucitya_score, grade
from .config import PipelineConfig, load_config
from .errors import KavyaValidationError, ValidationErrors
from .meter import MeterDB, MeterMatch, ScanResult, Suggestion, identify, load_meter_db, scan, suggest_corrections
from .style import GunaProfile, RitiVerdict, classify_riti, guna_profile, guna_profile_of
from .text.composition import Composition, Stanza, load_composition

ANNOTATIONS_ABSENT = "annotations absent"


def bundled_composition_path() -> Path:
    return Path(str(resources.files("kavya.data").joinpath("siksastaka.txt")))


def bundled_annotations_path() -> Path:
    return Path(str(resources.files("kavya.data").joinpath("siksastaka.annotations.json")))


@dataclass(frozen=True)
class StanzaReport:
    index: int
    scan: Optional[ScanResult] = None
    matches: tuple[MeterMatch, ...] = ()
    suggestions: tuple[Suggestion, ...] = ()
    sabda: tuple[AlankaraFinding, ...] = ()
    artha: tuple[AlankaraFinding, ...] = ()
    guna: Optional[GunaProfile] = None

    @property
    def best(self) -> Optional[MeterMatch]:
        return self.matches[0] if self.matches else None


@dataclass(frozen=True)
class Provenance:
    composition_hash: str
    annotations_hash: Optional[str]
    config_hash: str
    meter_db_hash: Optional[str]
    tool_version: str = __version__


@dataclass(frozen=True)
class AnalysisReport:
    title: str
    composition: Composition
    stanzas: tuple[StanzaReport, ...]
    modules: tuple[str, ...]
    provenance: Provenance
    guna: Optional[GunaProfile] = None
    riti: Optional[RitiVerdict] = None
    artha: tuple[AlankaraFinding, ...] = ()
    rasa: Optional[RasaAnnotation] = None
    vakrokti: tuple[VakroktiAnnotation, ...] = ()
    census: Optional[DhvaniCensus] = None
    grade: Optional[GradeReport] = None
    annotations: Optional[AnnotationSet] = None
    flags: tuple[str, ...] = ()

    @property
    def meters_used(self) -> list[str]:
        """Distinct rank-1 meters in order of first appearance."""
        seen: list[str] = []
        for st in self.stanzas:
            if st.best and st.best.meter_name not in seen:
                seen.append(st.best.meter_name)
        return seen


def _sha256_file(path: Path) -> str:
    return "sha256:" + hashlib.sha256(path.read_bytes()).hexdigest()


def _analyze_stanza(stanza: Stanza, cfg: PipelineConfig, db: Optional[MeterDB],
                    compounds, artha: tuple[AlankaraFinding, ...]) -> StanzaReport:
    scan_result = matches = suggestions = None
    if cfg.enabled("meter"):
        scan_result = scan(stanza)
        matches = tuple(identify(scan_result, db, cfg.budget))
        if matches and matches[0].match_kind == "fuzzy":
            suggestions = tuple(suggest_corrections(stanza, matches[0]))
    sabda: tuple = ()
    if cfg.enabled("alankara"):
        a = cfg.alankara
        sabda = tuple(detect_sabda(stanza, a.min_count, a.min_words, a.min_suffix))
    guna = None
    if cfg.enabled("riti"):
        guna = guna_profile_of([stanza], [c for c in compounds if c.stanza == stanza.index], cfg.style)
    return StanzaReport(
        index=stanza.index,
        scan=scan_result,
        matches=matches or (),
        suggestions=suggestions or (),
        sabda=sabda,
        artha=tuple(f for f in artha if f.stanza == stanza.index),
        guna=guna,
    )


def _load_annotations(annotations, composition: Composition) -> tuple[Optional[AnnotationSet], Optional[str]]:
    if annotations is None:
        return None, None
    if isinstance(annotations, AnnotationSet):
        # in-memory sets are hashed through their canonical serialization
        blob = serialize(annotations).encode("utf-8")
        return annotations, "sha256:" + hashlib.sha256(blob).hexdigest()
    path = Path(annotations)
    return parse_annotations(path, composition), _sha256_file(path)


def run_pipeline(
    composition: Composition | str | Path,
    annotations: AnnotationSet | str | Path | None = None,
    config: PipelineConfig | str | Path | None = None,
) -> AnalysisReport:
    """Analyze a composition.

    Without annotations the annotation-backed signals stay neutral, the
    grade falls to adhama and the report carries the ``annotations absent``
    flag. Annotations that fail validation raise :class:`ValidationErrors`.
    """
    cfg = config if isinstance(config, PipelineConfig) else load_config(config)

    if isinstance(composition, Composition):
        comp = composition
    else:
        comp = load_composition(composition)

    aset, ann_hash = _load_annotations(annotations, comp)
    flags: list[str] = []
    if aset is None:
        flags.append(ANNOTATIONS_ABSENT)
        aset_eff = AnnotationSet()
    else:
        report = validate(aset, comp)
        if not report.ok:
            raise ValidationErrors([KavyaValidationError(str(e)) for e in report.errors])
        aset_eff = aset

    db = None
    db_hash = None
    if cfg.enabled("meter"):
        db = load_meter_db(cfg.meter_db)
        if cfg.meter_db is not None:
            db_hash = _sha256_file(Path(cfg.meter_db))
        else:
            text = resources.files("kavya.data").joinpath("meters.txt").read_bytes()
            db_hash = "sha256:" + hashlib.sha256(text).hexdigest()

    artha: tuple[AlankaraFinding, ...] = ()
    if cfg.enabled("alankara") and aset_eff.artha_alankara:
        artha = tuple(validate_artha_annotations(aset_eff.artha_alankara, comp))

    def work(st: Stanza) -> StanzaReport:
        return _analyze_stanza(st, cfg, db, aset_eff.compounds, artha)

    if cfg.threads > 1 and len(comp.stanzas) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            stanza_reports = list(pool.map(work, comp.stanzas))
    else:
        stanza_reports = [work(st) for st in comp.stanzas]
    stanza_reports.sort(key=lambda r: r.index)

    guna = riti = None
    if cfg.enabled("riti"):
        guna = guna_profile(comp, aset_eff.compounds, cfg.style)
        riti = classify_riti(guna, cfg.style)

    rasa = aset_eff.composition_rasa() if cfg.enabled("rasa") else None
    vakrokti = aset_eff.vakrokti if cfg.enabled("vakrokti") else ()
    census = dhvani_census(aset_eff) if cfg.enabled("dhvani") else None

    grade_report = None
    if cfg.enabled("aucitya"):
        findings = [f for st in stanza_reports for f in st.sabda] + list(artha)
        score = aucitya_score(
            AucityaInputs(riti=riti, alankara=tuple(findings), rasa=rasa, vakrokti=tuple(vakrokti), census=census),
            cfg.matrix,
            cfg.weights,
        )
        grade_report = grade(census, score)

    return AnalysisReport(
        title=comp.title,
        composition=comp,
        stanzas=tuple(stanza_reports),
        modules=cfg.modules,
        provenance=Provenance(
            composition_hash=comp.content_hash,
            annotations_hash=ann_hash,
            config_hash=cfg.config_hash,
            meter_db_hash=db_hash,
        ),
        guna=guna,
        riti=riti,
        artha=artha,
        rasa=rasa,
        vakrokti=tuple(vakrokti),
        census=census,
        grade=grade_report,
        annotations=aset,
        flags=tuple(flags),
    )
