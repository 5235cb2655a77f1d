"""Composition model and the plain-text composition file format.

File format (UTF-8)::

    #title: Siksastaka
    #scheme: iast            # iast | devanagari | slp1
    #author: ...
    ceto-darpaṇa-mārjanaṁ bhava-mahā-dāvāgni-nirvāpaṇaṁ |
    ...

One pada per line, a blank line between stanzas. Header lines are
``#key: value``; other lines starting with ``#`` are comments. Dandas,
verse numbers, avagraha, Vedic accents and light punctuation are dropped
during normalization.
"""

from __future__ import annotations

import hashlib
import re
import unicodedata
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from ..errors import CompositionFormatError, KavyaInputError
from .phonemes import SEPARATORS
from .syllables import Syllable, syllabify
from .translit import SCHEMES, from_canonical, to_canonical

_STRIP_CHARS = set("|।॥ऽ'’,;.!?:\"()[]0123456789०१२३४५६७८९")
_ACCENT_RANGES = ((0x0951, 0x0954), (0x1CD0, 0x1CFF), (0xA8E0, 0xA8FF))
_HEADER = re.compile(r"^#\s*([A-Za-z_]+)\s*:\s*(.*?)\s*$")


def _is_accent(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _ACCENT_RANGES)


def normalize_line(line: str, scheme: str) -> str:
    """Strip non-phonemic marks and decode one pada line to canonical text."""
    line = unicodedata.normalize("NFC", line)
    kept = "".join(ch for ch in line if ch not in _STRIP_CHARS and not _is_accent(ch))
    if scheme == "iast":
        kept = kept.lower()
    kept = re.sub(r"\s+", " ", kept).strip()
    return to_canonical(kept, scheme)


@dataclass(frozen=True)
class Word:
    """A token after whitespace/hyphen splitting; ``index`` is stanza-wide."""

    stanza: int
    index: int
    pada: int
    start: int
    end: int
    text: str


@dataclass(frozen=True)
class WordUnit:
    """A whitespace-delimited unit of one pada (a compound counts once)."""

    stanza: int
    pada: int
    first_word: int
    last_word: int
    text: str

    @property
    def phonemes(self) -> str:
        return "".join(ch for ch in self.text if ch not in SEPARATORS)


@dataclass(frozen=True)
class Pada:
    text: str
    syllables: tuple[Syllable, ...]
    position: int
    raw: str = ""

    def __post_init__(self):
        if any(ch not in SEPARATORS for ch in self.text) and not self.syllables:
            raise ValueError("non-empty pada without syllables")

    def iast(self) -> str:
        return from_canonical(self.text, "iast")


@dataclass(frozen=True)
class Stanza:
    index: int
    padas: tuple[Pada, ...]
    raw_lines: tuple[str, ...] = ()

    @cached_property
    def words(self) -> tuple[Word, ...]:
        out: list[Word] = []
        for pada in self.padas:
            for m in re.finditer(r"[^ \-]+", pada.text):
                out.append(Word(self.index, len(out), pada.position, m.start(), m.end(), m.group()))
        return tuple(out)

    @cached_property
    def word_units(self) -> tuple[WordUnit, ...]:
        units: list[WordUnit] = []
        idx = 0
        for pada in self.padas:
            for m in re.finditer(r"[^ ]+", pada.text):
                n_tokens = len([t for t in m.group().split("-") if t])
                if n_tokens == 0:
                    continue
                units.append(WordUnit(self.index, pada.position, idx, idx + n_tokens - 1, m.group().strip("-")))
                idx += n_tokens
        return tuple(units)

    def word_at(self, pada: int, offset: int) -> Word | None:
        """The word containing char ``offset`` of pada ``pada`` (1-based)."""
        for w in self.words:
            if w.pada == pada and w.start <= offset < w.end:
                return w
        return None

    @property
    def syllable_count(self) -> int:
        return sum(len(p.syllables) for p in self.padas)


@dataclass(frozen=True)
class Composition:
    title: str
    stanzas: tuple[Stanza, ...]
    metadata: dict = field(default_factory=dict, compare=False, hash=False)
    scheme: str = "iast"

    def __post_init__(self):
        for expected, st in enumerate(self.stanzas, start=1):
            if st.index != expected:
                raise ValueError(f"stanza indices must be contiguous from 1, got {st.index} at {expected}")

    def canonical_text(self) -> str:
        return "\n\n".join("\n".join(p.text for p in s.padas) for s in self.stanzas)

    @cached_property
    def content_hash(self) -> str:
        digest = hashlib.sha256(self.canonical_text().encode("utf-8")).hexdigest()
        return f"sha256:{digest}"

    def stanza(self, index: int) -> Stanza:
        return self.stanzas[index - 1]

    def render(self, scheme: str) -> str:
        """Serialize back to the composition file format in ``scheme``."""
        lines = [f"#title: {self.title}", f"#scheme: {scheme}"]
        for key, value in self.metadata.items():
            lines.append(f"#{key}: {value}")
        for st in self.stanzas:
            lines.append("")
            lines.extend(from_canonical(p.text, scheme) for p in st.padas)
        return "\n".join(lines) + "\n"


def make_pada(text: str, position: int, raw: str = "", context: str = "") -> Pada:
    return Pada(text=text, syllables=tuple(syllabify(text, context)), position=position, raw=raw)


def make_stanza(index: int, canonical_padas: list[str], raw_lines: list[str] | None = None) -> Stanza:
    raw_lines = raw_lines or [""] * len(canonical_padas)
    padas = tuple(
        make_pada(t, j, raw, context=f"stanza {index}, pada {j}")
        for j, (t, raw) in enumerate(zip(canonical_padas, raw_lines), start=1)
    )
    return Stanza(index=index, padas=padas, raw_lines=tuple(raw_lines))


def parse_composition(text: str, scheme: str | None = None, source: str = "<string>") -> Composition:
    headers: dict[str, str] = {}
    blocks: list[list[tuple[int, str]]] = [[]]
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("#"):
            m = _HEADER.match(stripped)
            if m:
                headers[m.group(1).lower()] = m.group(2)
            continue
        if not stripped:
            if blocks[-1]:
                blocks.append([])
            continue
        blocks[-1].append((lineno, stripped))
    if not blocks[-1]:
        blocks.pop()

    scheme = scheme or headers.pop("scheme", "iast").strip().lower()
    headers.pop("scheme", None)
    if scheme not in SCHEMES:
        raise CompositionFormatError(f"{source}: unknown scheme {scheme!r}")

    stanzas = []
    for i, block in enumerate(blocks, start=1):
        canon, raws = [], []
        for j, (lineno, raw) in enumerate(block, start=1):
            try:
                canon.append(normalize_line(raw, scheme))
            except KavyaInputError as exc:
                raise CompositionFormatError(f"{source}:{lineno} (stanza {i}, pada {j}): {exc}") from exc
            raws.append(raw)
        try:
            stanzas.append(make_stanza(i, canon, raws))
        except KavyaInputError as exc:
            first_line = block[0][0]
            exc.args = (f"{source}:{first_line}: {exc}",)
            raise
    title = headers.pop("title", Path(source).stem if source != "<string>" else "untitled")
    return Composition(title=title, stanzas=tuple(stanzas), metadata=headers, scheme=scheme)


def load_composition(path: str | Path, scheme: str | None = None) -> Composition:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CompositionFormatError(f"cannot read composition {path}: {exc}") from exc
    return parse_composition(text, scheme=scheme, source=str(path))
