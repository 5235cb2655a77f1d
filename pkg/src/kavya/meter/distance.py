"""Edit distance between observed weight strings and slot patterns.

A slot pattern is a string over ``L``, ``G`` and ``X`` (either weight).
Edits are reported from the observed side: ``delete`` removes an extra
observed syllable, ``insert`` supplies a syllable the pattern expects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .db import FREE

EditKind = Literal["substitute", "insert", "delete"]


@dataclass(frozen=True)
class Edit:
    kind: EditKind
    observed_index: int  # for insert: index the missing syllable would take
    pattern_index: int | None
    expected: str | None
    observed: str | None


def slot_ok(slot: str, weight: str) -> bool:
    return slot == FREE or slot == weight


def hamming(observed: str, slots: str) -> tuple[int, list[Edit]]:
    if len(observed) != len(slots):
        raise ValueError("hamming needs equal lengths")
    edits = [
        Edit("substitute", i, i, s, w)
        for i, (w, s) in enumerate(zip(observed, slots))
        if not slot_ok(s, w)
    ]
    return len(edits), edits


def levenshtein(observed: str, slots: str) -> tuple[int, list[Edit]]:
    n, m = len(observed), len(slots)
    dist = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        dist[i][0] = i
    for j in range(1, m + 1):
        dist[0][j] = j
    for i in range(1, n + 1):
        w = observed[i - 1]
        row, prev = dist[i], dist[i - 1]
        for j in range(1, m + 1):
            sub = prev[j - 1] + (0 if slot_ok(slots[j - 1], w) else 1)
            row[j] = min(sub, prev[j] + 1, row[j - 1] + 1)

    edits: list[Edit] = []
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            cost = 0 if slot_ok(slots[j - 1], observed[i - 1]) else 1
            if dist[i][j] == dist[i - 1][j - 1] + cost:
                if cost:
                    edits.append(Edit("substitute", i - 1, j - 1, slots[j - 1], observed[i - 1]))
                i, j = i - 1, j - 1
                continue
        if i > 0 and dist[i][j] == dist[i - 1][j] + 1:
            edits.append(Edit("delete", i - 1, None, None, observed[i - 1]))
            i -= 1
        else:
            edits.append(Edit("insert", i, j - 1, slots[j - 1], None))
            j -= 1
    edits.reverse()
    return dist[n][m], edits
