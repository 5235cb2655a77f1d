"""Render an :class:`AnalysisReport` as JSON, self-contained HTML, or text.

Output is a pure function of the report: no timestamps, no host data, and
a fixed key order, so emitting the same report twice gives identical bytes.
"""

from __future__ import annotations

import json
from typing import Any, Literal

from jinja2 import Environment, select_autoescape

from .alankara import AlankaraFinding, Occurrence, RhymeWord
from .pipeline import AnalysisReport, StanzaReport
from .text.translit import from_canonical

REPORT_SCHEMA_VERSION = 1
FORMATS = ("json", "html", "text")
Format = Literal["json", "html", "text"]


def _iast(text: str) -> str:
    return from_canonical(text, "iast")


def _round(x: float) -> float:
    return round(x, 6)


def _finding(f: AlankaraFinding) -> dict[str, Any]:
    d: dict[str, Any] = {
        "category": f.category,
        "name": f.display_name,
        "provenance": f.provenance,
        "stanza": f.stanza,
    }
    if f.stanza_end != f.stanza:
        d["stanza_end"] = f.stanza_end
    d["padas"] = list(f.padas) if f.padas else None
    d["words"] = list(f.words) if f.words else None
    if f.category == "sabda":
        d["unit"] = _iast(f.unit)
        if f.name == "varnanuprasa":
            d["count"] = len(f.evidence)
            d["positions"] = [
                {"pada": o.pada, "syllable": o.syllable, "offset": o.offset, "word": o.word}
                for o in f.evidence if isinstance(o, Occurrence)
            ]
        else:
            d["participants"] = [_iast(w.text) for w in f.evidence if isinstance(w, RhymeWord)]
    if f.note:
        d["note"] = f.note
    return d


def _stanza(st: StanzaReport, report: AnalysisReport) -> dict[str, Any]:
    stanza = report.composition.stanza(st.index)
    d: dict[str, Any] = {"index": st.index, "padas": []}
    for i, pada in enumerate(stanza.padas):
        p: dict[str, Any] = {"position": pada.position, "text": pada.iast()}
        if st.scan is not None:
            p["syllables"] = [_iast(str(s)) for s in pada.syllables]
            p["weights"] = st.scan.padas[i]
        d["padas"].append(p)
    if st.scan is not None:
        d["meter"] = {
            "best": st.best.meter_name if st.best else None,
            "matches": [
                {
                    "meter": m.meter_name,
                    "match_kind": m.match_kind,
                    "distance": m.distance,
                    "pada_distances": list(m.pada_distances),
                    "pada_variants": list(m.pada_variants),
                    "mismatches": [
                        {"pada": x.pada, "syllable": x.syllable, "expected": x.expected,
                         "observed": x.observed, "kind": x.kind}
                        for x in m.mismatches
                    ],
                }
                for m in st.matches
            ],
            "suggestions": [
                {"pada": s.pada, "syllable": s.syllable, "span": list(s.span), "kind": s.kind,
                 "expected": s.expected, "observed": s.observed, "word": s.word,
                 "syllable_text": s.syllable_text, "hint": s.hint}
                for s in st.suggestions
            ],
        }
    if "alankara" in report.modules:
        d["alankara"] = {
            "sabda": [_finding(f) for f in st.sabda],
            "artha": [_finding(f) for f in st.artha],
        }
    if st.guna is not None:
        d["guna"] = {
            "madhurya_score": _round(st.guna.madhurya_score),
            "oja_score": _round(st.guna.oja_score),
            "conjunct_density": _round(st.guna.conjunct_density),
        }
    return d


def _evidence(ev) -> list:
    return [{**e.span.to_json(), **({"note": e.note} if e.note else {})} for e in ev]


def report_to_dict(report: AnalysisReport) -> dict[str, Any]:
    """The JSON object model of a report, in its stable key order."""
    pv = report.provenance
    glob: dict[str, Any] = {}
    if "meter" in report.modules:
        glob["meters_used"] = report.meters_used
    if report.guna is not None:
        g = report.guna
        glob["guna"] = {
            "madhurya_score": _round(g.madhurya_score),
            "oja_score": _round(g.oja_score),
            "prasada_present": g.prasada_present,
            "conjunct_density": _round(g.conjunct_density),
            "long_compound_fraction": _round(g.long_compound_fraction),
            "consonants": g.consonants,
            "syllables": g.syllables,
            "conjuncts": g.conjuncts,
            "compounds": g.compounds,
            "long_compounds": g.long_compounds,
            "evidence": dict(g.evidence),
        }
    if report.riti is not None:
        glob["riti"] = {
            "riti": report.riti.riti,
            "dominant_guna": report.riti.dominant_guna,
            "rationale": [{"rule": h.rule, "value": _round(h.value)} for h in report.riti.rationale],
        }
    if "alankara" in report.modules:
        counts: dict[str, int] = {}
        for f in [f for st in report.stanzas for f in st.sabda] + list(report.artha):
            counts[f.display_name] = counts.get(f.display_name, 0) + 1
        glob["alankara"] = {
            "counts": dict(sorted(counts.items())),
            "artha": [_finding(f) for f in report.artha],
        }
    if "rasa" in report.modules:
        r = report.rasa
        glob["rasa"] = None if r is None else {
            "scope": r.scope,
            "rasa": r.rasa,
            "subtype": r.subtype,
            "label": r.label,
            "vibhava": _evidence(r.vibhava),
            "anubhava": _evidence(r.anubhava),
            "vyabhicari": _evidence(r.vyabhicari),
        }
    if "vakrokti" in report.modules:
        levels = sorted({v.level for v in report.vakrokti})
        glob["vakrokti"] = {
            "levels_attested": levels,
            "entries": [
                {"level": v.level, "name": v.level_name, "span": v.span.to_json(), "note": v.note}
                for v in report.vakrokti
            ],
        }
    if report.census is not None:
        glob["dhvani"] = {
            **report.census.to_json(),
            "entries": [] if report.annotations is None else [
                {"meaning_level": d.meaning_level, "dhvani_type": d.dhvani_type,
                 "dominance": d.dominance, "description": d.description}
                for d in report.annotations.dhvani
            ],
        }
    if report.grade is not None:
        gr = report.grade
        glob["aucitya"] = {
            "grade": gr.grade,
            "aucitya_score": _round(gr.aucitya_score),
            "confidence": gr.confidence,
            "contributions": {k: _round(v) for k, v in gr.contributions.items()},
            "rasa_dosha_warnings": [str(w) for w in gr.rasa_dosha_warnings],
        }

    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "title": report.title,
        "modules": list(report.modules),
        "flags": list(report.flags),
        "stanzas": [_stanza(st, report) for st in report.stanzas],
        "global": glob,
        "provenance": {
            "composition_hash": pv.composition_hash,
            "annotations_hash": pv.annotations_hash,
            "config_hash": pv.config_hash,
            "meter_db_hash": pv.meter_db_hash,
            "tool_version": pv.tool_version,
        },
    }


_HTML = """<!DOCTYPE html>
<html lang="sa-Latn">
<head>
<meta charset="utf-8">
<title>{{ d.title }} analysis</title>
<style>
body { font-family: Georgia, serif; max-width: 60em; margin: 2em auto; padding: 0 1em; color: #222; }
h1 { border-bottom: 2px solid #446; }
section { border: 1px solid #ccd; border-radius: 6px; padding: 0.5em 1.2em 1em; margin: 1.2em 0; }
section.stanza { background: #f3f6fc; }
section.global { background: #f7f2fb; }
.weights { font-family: monospace; letter-spacing: 0.15em; }
table { border-collapse: collapse; }
td, th { padding: 0.15em 0.6em; text-align: left; vertical-align: top; }
.flag { color: #a33; font-weight: bold; }
.muted { color: #667; }
</style>
</head>
<body>
<h1>{{ d.title }}</h1>
<p class="muted">modules: {{ d.modules | join(", ") }}</p>
{% for f in d.flags %}<p class="flag">{{ f }}</p>{% endfor %}
{% for st in d.stanzas %}
<section class="stanza" id="stanza-{{ st.index }}">
<h2>Stanza {{ st.index }}</h2>
<table>
{% for p in st.padas %}<tr><td>{{ p.text }}</td>{% if p.weights %}<td class="weights">{{ p.weights }}</td>{% endif %}</tr>
{% endfor %}</table>
{% if st.meter %}
<h3>Meter</h3>
{% if st.meter.best %}<p>{{ st.meter.best }}{% if st.meter.matches[0].match_kind == "fuzzy" %} (fuzzy, distance {{ st.meter.matches[0].distance }}){% endif %}</p>{% else %}<p class="muted">no meter within budget</p>{% endif %}
{% if st.meter.matches | length > 1 %}<p class="muted">also: {% for m in st.meter.matches[1:] %}{{ m.meter }} ({{ m.distance }}){% if not loop.last %}, {% endif %}{% endfor %}</p>{% endif %}
{% if st.meter.suggestions %}<ul>{% for s in st.meter.suggestions %}<li>pada {{ s.pada }}, syllable {{ s.syllable + 1 }} in <i>{{ s.word }}</i>: {{ s.hint }}</li>{% endfor %}</ul>{% endif %}
{% endif %}
{% if st.alankara %}
<h3>Alankara</h3>
<ul>
{% for f in st.alankara.sabda %}<li>{{ f.name }} on <b>{{ f.unit }}</b>{% if f.participants %}: {{ f.participants | join(", ") }}{% else %} &times;{{ f.count }} in pada {{ f.padas[0] }}{% endif %}</li>
{% endfor %}{% for f in st.alankara.artha %}<li>{{ f.name }} (annotated){% if f.note %}: {{ f.note }}{% endif %}</li>
{% endfor %}</ul>
{% endif %}
</section>
{% endfor %}
<section class="global" id="global">
<h2>Whole composition</h2>
{% set g = d.global %}
{% if g.meters_used %}<p>Meters: {{ g.meters_used | join(", ") }}</p>{% endif %}
{% if g.riti %}<h3>Riti</h3>
<p>{{ g.riti.riti }} ({{ g.riti.dominant_guna }} dominant); madhurya {{ "%.3f" | format(g.guna.madhurya_score) }}, oja {{ "%.3f" | format(g.guna.oja_score) }}, conjunct density {{ "%.3f" | format(g.guna.conjunct_density) }}</p>
<ul>{% for h in g.riti.rationale %}<li>{{ h.rule }}: {{ h.value }}</li>{% endfor %}</ul>{% endif %}
{% if g.alankara %}<h3>Alankara</h3>
<table>{% for name, n in g.alankara.counts.items() %}<tr><td>{{ name }}</td><td>{{ n }}</td></tr>{% endfor %}</table>{% endif %}
{% if "rasa" in g %}<h3>Rasa</h3>
{% if g.rasa %}<p>{{ g.rasa.label }} ({{ g.rasa.vibhava | length }} vibhava, {{ g.rasa.anubhava | length }} anubhava, {{ g.rasa.vyabhicari | length }} vyabhicari spans)</p>{% else %}<p class="muted">not annotated</p>{% endif %}{% endif %}
{% if g.vakrokti %}<h3>Vakrokti</h3>
<p>levels attested: {{ g.vakrokti.levels_attested | join(", ") or "none" }}</p>{% endif %}
{% if g.dhvani %}<h3>Dhvani</h3>
<p>vyangya: {{ g.dhvani.has_vyangya }}, dominant: {{ g.dhvani.has_dominant_vyangya }}, types: {{ g.dhvani.types_present | join(", ") or "none" }}</p>
<ul>{% for e in g.dhvani.entries %}<li>{{ e.meaning_level }}{% if e.dhvani_type %} / {{ e.dhvani_type }}{% endif %} ({{ e.dominance }}){% if e.description %}: {{ e.description }}{% endif %}</li>{% endfor %}</ul>{% endif %}
{% if g.aucitya %}<h3>Aucitya and grade</h3>
<p><b>{{ g.aucitya.grade }}</b>, aucitya score {{ "%.3f" | format(g.aucitya.aucitya_score) }}, confidence {{ g.aucitya.confidence }}</p>
<table>{% for k, v in g.aucitya.contributions.items() %}<tr><td>{{ k }}</td><td>{{ v }}</td></tr>{% endfor %}</table>
{% for w in g.aucitya.rasa_dosha_warnings %}<p class="flag">{{ w }}</p>{% endfor %}{% endif %}
</section>
<footer class="muted">
<p>composition {{ d.provenance.composition_hash }}<br>
annotations {{ d.provenance.annotations_hash or "none" }}<br>
config {{ d.provenance.config_hash }}<br>
kavya {{ d.provenance.tool_version }}</p>
</footer>
</body>
</html>
"""

_env = Environment(autoescape=select_autoescape(default=True), trim_blocks=True, lstrip_blocks=True)
_template = _env.from_string(_HTML)


def _text(d: dict[str, Any]) -> str:
    lines = [d["title"], "=" * len(d["title"])]
    lines += [f"! {f}" for f in d["flags"]]
    for st in d["stanzas"]:
        lines.append("")
        lines.append(f"Stanza {st['index']}")
        for p in st["padas"]:
            lines.append(f"  {p['text']:<58} {p.get('weights', '')}".rstrip())
        meter = st.get("meter")
        if meter:
            if meter["best"]:
                top = meter["matches"][0]
                extra = "" if top["match_kind"] == "exact" else f" (fuzzy, distance {top['distance']})"
                lines.append(f"  meter: {meter['best']}{extra}")
            else:
                lines.append("  meter: none within budget")
            for s in meter["suggestions"]:
                lines.append(f"    pada {s['pada']} syllable {s['syllable'] + 1} ({s['word']}): {s['hint']}")
        al = st.get("alankara")
        if al:
            names = [f"{f['name']}[{f['unit']}]" for f in al["sabda"]] + [f["name"] for f in al["artha"]]
            if names:
                lines.append("  alankara: " + ", ".join(names))
    g = d["global"]
    lines += ["", "Whole composition"]
    if "meters_used" in g:
        lines.append("  meters: " + ", ".join(g["meters_used"]))
    if "riti" in g:
        lines.append(f"  riti: {g['riti']['riti']} ({g['riti']['dominant_guna']} dominant; "
                     f"madhurya {g['guna']['madhurya_score']:.3f}, oja {g['guna']['oja_score']:.3f})")
    if "alankara" in g:
        lines.append("  alankara: " + ", ".join(f"{k} x{v}" for k, v in g["alankara"]["counts"].items()))
    if "rasa" in g:
        lines.append("  rasa: " + (g["rasa"]["label"] if g["rasa"] else "not annotated"))
    if "vakrokti" in g:
        lines.append("  vakrokti levels: " + (", ".join(map(str, g["vakrokti"]["levels_attested"])) or "none"))
    if "dhvani" in g:
        dh = g["dhvani"]
        lines.append(f"  dhvani: vyangya={dh['has_vyangya']} dominant={dh['has_dominant_vyangya']} "
                     f"types={','.join(dh['types_present']) or '-'}")
    if "aucitya" in g:
        a = g["aucitya"]
        lines.append(f"  grade: {a['grade']} (aucitya {a['aucitya_score']:.3f}, confidence {a['confidence']})")
        lines += [f"  ! {w}" for w in a["rasa_dosha_warnings"]]
    return "\n".join(lines) + "\n"


def emit(report: AnalysisReport, format: Format = "json") -> bytes:
    d = report_to_dict(report)
    if format == "json":
        return (json.dumps(d, ensure_ascii=False, indent=2) + "\n").encode("utf-8")
    if format == "html":
        return _template.render(d=d).encode("utf-8")
    if format == "text":
        return _text(d).encode("utf-8")
    raise ValueError(f"unknown format {format!r}; choose from {', '.join(FORMATS)}")
