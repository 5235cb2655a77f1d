"""Meter database: patterns, gana notation and the line-oriented DB file."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterator, Literal

from ..errors import DuplicateName, FamilyInvariantViolated, MalformedPattern, MeterDBError

Family = Literal["samavrtta", "ardhasamavrtta", "anustubh", "upajati"]
FAMILIES = ("samavrtta", "ardhasamavrtta", "anustubh", "upajati")

GANAS = {
    "ma": "GGG", "ya": "LGG", "ra": "GLG", "sa": "LLG",
    "ta": "GGL", "ja": "LGL", "bha": "GLL", "na": "LLL",
    "la": "L", "ga": "G",
}

# free slot in an expanded pattern; never valid in the DB file itself
FREE = "X"
_WEIGHTS = re.compile(r"^[LG]+$")

ANUSTUBH_LENGTH = 8
ANUSTUBH_CADENCE = slice(4, 7)  # syllables 5-7
# syllables 2-3 of a sloka pada may not both be light
_ANUSTUBH_23 = ("LG", "GL", "GG")


def expand_ganas(notation: str) -> str:
    """``"ta-bha-ja-ja-ga-ga"`` -> ``"GGLGLLLGLLGLGG"``."""
    out = []
    for g in notation.strip().split("-"):
        g = g.strip()
        if g not in GANAS:
            raise ValueError(f"unknown gana {g!r}")
        out.append(GANAS[g])
    return "".join(out)


def to_ganas(pattern: str) -> str:
    """Inverse of :func:`expand_ganas`; leftover 1-2 syllables become la/ga."""
    names = {v: k for k, v in GANAS.items() if len(v) == 3}
    full = len(pattern) - len(pattern) % 3
    parts = [names[pattern[i:i + 3]] for i in range(0, full, 3)]
    parts += ["la" if w == "L" else "ga" for w in pattern[full:]]
    return "-".join(parts)


def anceps(pattern: str) -> str:
    return pattern[:-1] + FREE if pattern else pattern


@dataclass(frozen=True)
class MeterPattern:
    name: str
    family: Family
    # samavrtta/ardhasamavrtta/upajati: pada patterns for pada 1..4 (upajati
    # stores its two component patterns); anustubh: (odd cadence, even cadence)
    pada_patterns: tuple[str, ...]
    yati_positions: tuple[int, ...] = ()
    gana_notation: str | None = None
    variants: tuple[tuple[str, str], ...] = ()
    components: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.pada_patterns:
            raise ValueError("meter needs at least one pattern")
        for p in self.pada_patterns:
            if not _WEIGHTS.match(p):
                raise ValueError(f"{self.name}: pattern {p!r} is not over {{L,G}}")
        if self.family == "samavrtta" and len(set(self.pada_patterns)) != 1:
            raise ValueError(f"{self.name}: samavrtta padas must be identical")
        if self.family == "ardhasamavrtta":
            p = self.pada_patterns
            if len(p) != 4 or p[0] != p[2] or p[1] != p[3]:
                raise ValueError(f"{self.name}: ardhasamavrtta needs pada1=pada3, pada2=pada4")

    def alternatives(self, pada_index: int, final_anceps: bool = True) -> list[tuple[str, str]]:
        """``(label, slot pattern)`` choices for 0-based ``pada_index``.

        Slot patterns use ``X`` for positions that accept either weight.
        Without ``final_anceps`` the last syllable must have its nominal
        weight (guru for anustubh).
        """
        last = anceps if final_anceps else (lambda p: p)
        if self.family == "anustubh":
            odd = pada_index % 2 == 0
            cadences = [("pathyā", self.pada_patterns[0 if odd else 1])]
            if odd:
                cadences += list(self.variants)
            end = FREE if final_anceps else "G"
            return [
                (label, FREE + mid + FREE + cad + end)
                for label, cad in cadences
                for mid in _ANUSTUBH_23
            ]
        if self.family == "upajati":
            return [(n, last(p)) for n, p in zip(self.components, self.pada_patterns)]
        return [(self.name, last(self.pada_patterns[pada_index % 4]))]

    def synthesize(self) -> list[str]:
        """Four concrete pada weight strings that satisfy the meter."""
        if self.family == "anustubh":
            return [
                "G" + "LG" + "G" + self.pada_patterns[i % 2] + "G" for i in range(4)
            ]
        if self.family == "upajati":
            a, b = self.pada_patterns
            return [a, b, b, a]
        return list(self.pada_patterns)

    @property
    def syllables_per_pada(self) -> tuple[int, ...]:
        if self.family == "anustubh":
            return (ANUSTUBH_LENGTH,) * 4
        if self.family == "upajati":
            return (len(self.pada_patterns[0]),) * 4
        return tuple(len(p) for p in self.pada_patterns)


@dataclass(frozen=True)
class MeterDB:
    meters: tuple[MeterPattern, ...]
    source: str = "<memory>"
    _by_name: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_name", {m.name: m for m in self.meters})

    def __iter__(self) -> Iterator[MeterPattern]:
        return iter(self.meters)

    def __len__(self) -> int:
        return len(self.meters)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def get(self, name: str) -> MeterPattern:
        return self._by_name[name]


def _check_weights(p: str, lineno: int, source: str) -> str:
    p = p.strip()
    if not _WEIGHTS.match(p):
        raise MalformedPattern(f"pattern {p!r} must be a non-empty string over L/G", lineno, source)
    return p


def _parse_line(fields: list[str], lineno: int, source: str, known: dict[str, MeterPattern]) -> MeterPattern:
    if len(fields) not in (5, 6):
        raise MeterDBError(f"expected 5 or 6 '|'-separated fields, got {len(fields)}", lineno, source)
    name, family, patterns, yati, gana = (f.strip() for f in fields[:5])
    variants_field = fields[5].strip() if len(fields) == 6 else ""
    if not name:
        raise MeterDBError("empty meter name", lineno, source)
    if family not in FAMILIES:
        raise MeterDBError(f"unknown family {family!r}", lineno, source)

    try:
        yati_positions = tuple(int(y) for y in yati.split(",") if y.strip())
    except ValueError:
        raise MeterDBError(f"bad yati field {yati!r}", lineno, source) from None

    variants: tuple[tuple[str, str], ...] = ()
    components: tuple[str, ...] = ()
    if family == "upajati":
        components = tuple(c.strip() for c in patterns.split("+"))
        if len(components) != 2 or components[0] == components[1]:
            raise MalformedPattern("upajati needs two distinct components A+B", lineno, source)
        resolved = []
        for c in components:
            comp = known.get(c)
            if comp is None or comp.family != "samavrtta":
                raise MalformedPattern(f"upajati component {c!r} must be an earlier samavrtta entry", lineno, source)
            resolved.append(comp.pada_patterns[0])
        if len(resolved[0]) != len(resolved[1]):
            raise FamilyInvariantViolated("upajati components differ in length", lineno, source)
        pada_patterns = tuple(resolved)
    else:
        pats = [_check_weights(p, lineno, source) for p in patterns.split(",")]
        if family == "samavrtta":
            if len(pats) not in (1, 4) or len(set(pats)) != 1:
                raise FamilyInvariantViolated("samavrtta padas must all be identical", lineno, source)
            pada_patterns = (pats[0],) * 4
        elif family == "ardhasamavrtta":
            if len(pats) == 2:
                pats = pats * 2
            if len(pats) != 4 or pats[0] != pats[2] or pats[1] != pats[3]:
                raise FamilyInvariantViolated("ardhasamavrtta needs pada1=pada3 and pada2=pada4", lineno, source)
            pada_patterns = tuple(pats)
        else:  # anustubh
            if len(pats) != 2 or any(len(p) != 3 for p in pats):
                raise MalformedPattern("anustubh needs odd,even cadences of 3 weights", lineno, source)
            pada_patterns = tuple(pats)
            for item in filter(None, (v.strip() for v in variants_field.split(";"))):
                label, _, cad = item.partition("=")
                cad = _check_weights(cad, lineno, source)
                if len(cad) != 3 or not label.strip():
                    raise MalformedPattern(f"bad vipula variant {item!r}", lineno, source)
                variants += ((label.strip(), cad),)

    if variants_field and family != "anustubh":
        raise MeterDBError("variants field is only allowed for anustubh", lineno, source)

    gana_notation = gana or None
    if gana_notation:
        halves = gana_notation.split("/")
        try:
            expanded = [expand_ganas(h) for h in halves]
        except ValueError as exc:
            raise MalformedPattern(str(exc), lineno, source) from None
        expected = [pada_patterns[0]] if len(halves) == 1 else list(pada_patterns[:2])
        if family in ("anustubh", "upajati") or expanded != expected:
            raise MalformedPattern(f"gana notation {gana_notation!r} does not expand to the pattern", lineno, source)

    for y in yati_positions:
        if family != "anustubh" and not 0 < y < max(len(p) for p in pada_patterns):
            raise MeterDBError(f"yati {y} outside the pada", lineno, source)

    return MeterPattern(
        name=name,
        family=family,  # type: ignore[arg-type]
        pada_patterns=pada_patterns,
        yati_positions=yati_positions,
        gana_notation=gana_notation,
        variants=variants,
        components=components,
    )


def parse_meter_db(text: str, source: str = "<string>") -> MeterDB:
    meters: dict[str, MeterPattern] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        meter = _parse_line(line.split("|"), lineno, source, meters)
        if meter.name in meters:
            raise DuplicateName(f"duplicate meter name {meter.name!r}", lineno, source)
        meters[meter.name] = meter
    return MeterDB(tuple(meters.values()), source=source)


def load_meter_db(source: str | Path | None = None) -> MeterDB:
    """Load a meter DB file; ``None`` loads the bundled database."""
    if source is None:
        text = resources.files("kavya.data").joinpath("meters.txt").read_text(encoding="utf-8")
        return parse_meter_db(text, source="<bundled meters.txt>")
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise MeterDBError(f"cannot read meter DB: {exc}", source=str(path)) from exc
    return parse_meter_db(text, source=str(path))
