"""Guna evidence from phonology and compounds, and the riti verdict.

Madhurya-favoring tokens (counted per consonant):

* ``soft_sparsa``: a single-consonant onset that is a stop or nasal outside
  the retroflex row;
* ``nasal_cluster``: a nasal followed by a non-retroflex stop inside a
  cluster (both consonants count);
* ``short_r_n``: a single-consonant onset ``r`` or ``ṇ`` before a short vowel.

Oja patterns (counted per occurrence):

* ``aspirate_pair``: first+second or third+fourth consonant of one row;
* ``r_cluster``: any cluster pair involving ``r``;
* ``geminate``: a doubled consonant;
* ``ta_class``: a retroflex stop not preceded by ``ṇ``;
* ``sibilant``: ``ś`` or ``ṣ``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from .errors import ConfigError
from .text.composition import Composition, Stanza
from .text.phonemes import SHORT_VOWELS, is_nasal, is_sparsa, varga_of
from .text.syllables import Syllable

MADHURYA_RULES = ("soft_sparsa", "nasal_cluster", "short_r_n")
OJA_RULES = ("aspirate_pair", "r_cluster", "geminate", "ta_class", "sibilant")

Riti = Literal["vaidarbhi", "gaudi", "pancali"]
Guna = Literal["madhurya", "oja", "prasada"]


@dataclass(frozen=True)
class StyleConfig:
    # a compound with more constituents than this counts as long
    long_compound_len: int = 3
    tau_conj: float = 0.25
    tau_comp: float = 0.2

    def __post_init__(self):
        if self.long_compound_len < 1:
            raise ConfigError("style.long_compound_len must be >= 1")
        for name in ("tau_conj", "tau_comp"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigError(f"style.{name} must lie in [0, 1], got {v}")


@dataclass(frozen=True)
class GunaProfile:
    madhurya_score: float
    oja_score: float
    conjunct_density: float
    long_compound_fraction: float
    evidence: dict[str, int]
    consonants: int = 0
    syllables: int = 0
    conjuncts: int = 0
    compounds: int = 0
    long_compounds: int = 0
    prasada_present: bool = True

    def __post_init__(self):
        for name in ("madhurya_score", "oja_score", "conjunct_density", "long_compound_fraction"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v} outside [0, 1]")
        if any(c < 0 for c in self.evidence.values()):
            raise ValueError("negative evidence count")

    @property
    def madhurya_tokens(self) -> int:
        return sum(self.evidence.get(r, 0) for r in MADHURYA_RULES)

    @property
    def oja_occurrences(self) -> int:
        return sum(self.evidence.get(r, 0) for r in OJA_RULES)


@dataclass(frozen=True)
class RuleHit:
    rule: str
    value: float


@dataclass(frozen=True)
class RitiVerdict:
    riti: Riti
    dominant_guna: Guna
    rationale: tuple[RuleHit, ...] = field(default=())

    def __post_init__(self):
        if not self.rationale:
            raise ValueError("a verdict must cite at least one rule")


def _count_syllables(sylls: Sequence[Syllable], ev: Counter) -> tuple[int, int]:
    """Add rule counts for one pada; returns (consonants, conjunct onsets)."""
    consonants = conjuncts = 0
    for s in sylls:
        onset = s.onset
        consonants += len(onset) + len(s.tail)
        if len(onset) == 1:
            c = onset[0]
            if c in ("r", "R") and s.nucleus in SHORT_VOWELS:
                ev["short_r_n"] += 1
            elif is_sparsa(c) and varga_of(c)[0] != "retroflex":
                ev["soft_sparsa"] += 1
        elif len(onset) >= 2:
            conjuncts += 1
            counted: set[int] = set()
            for i, (a, b) in enumerate(zip(onset, onset[1:])):
                va, vb = varga_of(a), varga_of(b)
                if is_nasal(a) and vb and vb[1] != 5 and vb[0] != "retroflex":
                    counted.update((i, i + 1))
                if va and vb and va[0] == vb[0] and (va[1], vb[1]) in ((1, 2), (3, 4)):
                    ev["aspirate_pair"] += 1
                if "r" in (a, b):
                    ev["r_cluster"] += 1
                if a == b:
                    ev["geminate"] += 1
            ev["nasal_cluster"] += len(counted)
        cluster = onset + s.tail
        for i, c in enumerate(cluster):
            v = varga_of(c)
            if v and v[0] == "retroflex" and v[1] != 5 and not (i > 0 and cluster[i - 1] == "R"):
                ev["ta_class"] += 1
            if c in ("S", "z"):
                ev["sibilant"] += 1
    return consonants, conjuncts


def _compound_sizes(compounds: Iterable) -> list[int]:
    out = []
    for c in compounds:
        parts = getattr(c, "constituents", c)
        out.append(len(parts))
    return out


def guna_profile_of(stanzas: Iterable[Stanza], compounds: Iterable = (), config: StyleConfig | None = None) -> GunaProfile:
    config = config or StyleConfig()
    ev: Counter = Counter({r: 0 for r in MADHURYA_RULES + OJA_RULES})
    consonants = conjuncts = syllables = 0
    for st in stanzas:
        for pada in st.padas:
            c, j = _count_syllables(pada.syllables, ev)
            consonants += c
            conjuncts += j
            syllables += len(pada.syllables)

    conjunct_density = conjuncts / syllables if syllables else 0.0
    madhurya_tokens = sum(ev[r] for r in MADHURYA_RULES)
    madhurya = (madhurya_tokens / consonants) * (1.0 - conjunct_density) if consonants else 0.0

    sizes = _compound_sizes(compounds)
    long_compounds = sum(1 for n in sizes if n > config.long_compound_len)
    long_fraction = long_compounds / len(sizes) if sizes else 0.0
    oja_density = min(1.0, sum(ev[r] for r in OJA_RULES) / syllables) if syllables else 0.0
    # without compound annotations the compound term stays neutral
    oja = (oja_density + long_fraction) / 2 if sizes else oja_density

    return GunaProfile(
        madhurya_score=madhurya,
        oja_score=oja,
        conjunct_density=conjunct_density,
        long_compound_fraction=long_fraction,
        evidence=dict(ev),
        consonants=consonants,
        syllables=syllables,
        conjuncts=conjuncts,
        compounds=len(sizes),
        long_compounds=long_compounds,
    )


def guna_profile(composition: Composition, compounds: Iterable = (), config: StyleConfig | None = None) -> GunaProfile:
    """Whole-composition guna profile."""
    return guna_profile_of(composition.stanzas, compounds, config)


def stanza_profiles(composition: Composition, compounds: Iterable = (), config: StyleConfig | None = None) -> list[GunaProfile]:
    """One profile per stanza; compounds are filtered by their ``stanza`` attribute."""
    compounds = list(compounds)
    return [
        guna_profile_of([st], [c for c in compounds if getattr(c, "stanza", None) == st.index], config)
        for st in composition.stanzas
    ]


def classify_riti(profile: GunaProfile, config: StyleConfig | None = None) -> RitiVerdict:
    config = config or StyleConfig()
    m, o = profile.madhurya_score, profile.oja_score
    cd, lf = profile.conjunct_density, profile.long_compound_fraction

    if cd <= config.tau_conj and lf <= config.tau_comp and m >= o and m > 0:
        hits = [RuleHit("conjunct_density<=tau_conj", cd), RuleHit("long_compound_fraction<=tau_comp", lf),
                RuleHit("madhurya>=oja", m)]
        hits += [RuleHit(r, profile.evidence.get(r, 0)) for r in MADHURYA_RULES if profile.evidence.get(r, 0)]
        return RitiVerdict("vaidarbhi", "madhurya", tuple(hits))

    if o > m and (lf > config.tau_comp or cd > config.tau_conj):
        hits = [RuleHit("oja>madhurya", o)]
        if lf > config.tau_comp:
            hits.append(RuleHit("long_compound_fraction>tau_comp", lf))
        if cd > config.tau_conj:
            hits.append(RuleHit("conjunct_density>tau_conj", cd))
        hits += [RuleHit(r, profile.evidence.get(r, 0)) for r in OJA_RULES if profile.evidence.get(r, 0)]
        return RitiVerdict("gaudi", "oja", tuple(hits))

    return RitiVerdict("pancali", "prasada", (
        RuleHit("residual", 1.0),
        RuleHit("madhurya_score", m),
        RuleHit("oja_score", o),
    ))
