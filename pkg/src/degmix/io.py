"""JSON file formats for sequences, forbidden sets, and spectra matrices.

Sequence files: {"kind": "simple", "degrees": [...]},
{"kind": "bipartite", "u": [...], "w": [...]} (u is the primary class for
composition purposes), or {"kind": "directed", "out": [...], "in": [...]}.
Forbidden-set files hold a list of [u, w] index pairs, 1-based on disk.
Spectra files: {"delta": D, "columns": [[...], ...]}.
"""

from __future__ import annotations

import json
from typing import Union

from .sequences import (
    BipartiteDegreeSequence,
    DegreeSequence,
    DirectedDegreeSequence,
    ForbiddenSet,
)
from .spectra import DegreeSpectraMatrix

AnySequence = Union[DegreeSequence, BipartiteDegreeSequence, DirectedDegreeSequence]


def sequence_from_dict(data: dict) -> AnySequence:
    kind = data.get("kind")
    if kind == "simple":
        return DegreeSequence(data["degrees"])
    if kind == "bipartite":
        return BipartiteDegreeSequence(data["u"], data["w"])
    if kind == "directed":
        return DirectedDegreeSequence(data["out"], data["in"])
    raise ValueError("unknown sequence kind: %r" % (kind,))


def sequence_to_dict(seq: AnySequence) -> dict:
    if isinstance(seq, DegreeSequence):
        return {"kind": "simple", "degrees": list(seq.degrees)}
    if isinstance(seq, BipartiteDegreeSequence):
        return {"kind": "bipartite", "u": list(seq.u_degrees), "w": list(seq.w_degrees)}
    if isinstance(seq, DirectedDegreeSequence):
        return {
            "kind": "directed",
            "out": list(seq.out_degrees),
            "in": list(seq.in_degrees),
        }
    raise TypeError("not a degree sequence: %r" % (seq,))


def load_sequence(path: str) -> AnySequence:
    with open(path) as fh:
        return sequence_from_dict(json.load(fh))


def load_forbidden(path: str) -> ForbiddenSet:
    """Forbidden pairs are 1-based in files, 0-based in memory."""
    with open(path) as fh:
        pairs = json.load(fh)
    return ForbiddenSet((int(u) - 1, int(w) - 1) for u, w in pairs)


def forbidden_to_list(f: ForbiddenSet) -> list:
    return sorted([u + 1, w + 1] for u, w in f.pairs)


def load_dsm(path: str) -> DegreeSpectraMatrix:
    with open(path) as fh:
        data = json.load(fh)
    return DegreeSpectraMatrix(data["delta"], data["columns"])


def dsm_to_dict(m: DegreeSpectraMatrix) -> dict:
    return {"delta": m.delta, "columns": [list(c) for c in m.columns]}
