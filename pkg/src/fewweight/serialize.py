"""Text and JSON formats for fields, maps, linear sets, matrices and enumerators.

Field elements are always written as their integer codes (base-p digits of
the coefficient vector, low degree first) under the deterministic modulus
chosen by ``make_field``.

Generator matrix file::

    # fewweight generator matrix
    p 2
    e 1
    n 3
    r 3
    N 7
    modulus 1 0 1 1
    source [...]          (optional, JSON list of map tuples)
    ---
    <r lines of N integer codes>
"""
from __future__ import annotations

import json

import numpy as np

from .codes import GeneratorMatrix
from .enumerator import PredictedEnumerator, WeightEnumerator
from .finite_field import FieldCtx, make_field, make_subfield_view
from .linsets import HyperplaneWeightProfile, LinearSet
from .qpoly import MapTuple, QPolynomial

MATRIX_MAGIC = "# fewweight generator matrix"


class FormatError(ValueError):
    """A file does not follow the expected layout."""


def field_to_dict(ctx: FieldCtx) -> dict:
    return {"p": ctx.p, "m": ctx.m, "modulus": list(ctx.modulus)}


def field_from_dict(d: dict) -> FieldCtx:
    ctx = make_field(int(d["p"]), int(d["m"]))
    if "modulus" in d and tuple(d["modulus"]) != ctx.modulus:
        raise FormatError(f"modulus {d['modulus']} is not the canonical one {list(ctx.modulus)}")
    return ctx


def qpoly_to_terms(f: QPolynomial) -> list[list[int]]:
    return [[c, i] for c, i in f.terms()]


def maptuple_to_dict(t: MapTuple) -> dict:
    return {"family": t.family, "params": dict(t.params), "r": t.r,
            "coeffs": [list(f.coeffs) for f in t.maps]}


def maptuple_from_dict(view, d: dict) -> MapTuple:
    maps = tuple(QPolynomial(view, tuple(c)) for c in d["coeffs"])
    return MapTuple(maps, d.get("family", "custom"), d.get("params", {}))


def linear_set_to_dict(L: LinearSet) -> dict:
    return {
        "field": field_to_dict(L.ctx),
        "e": L.view.e,
        "n": L.view.n,
        "rank": L.rank,
        "blocks": [maptuple_to_dict(b) for b in L.blocks],
        "points": L.points.tolist(),
        "point_weights": L.weights.tolist(),
    }


def profile_to_dict(profile: HyperplaneWeightProfile) -> dict:
    return {"r": profile.r, "n": profile.n, "q": profile.q,
            "weights": [[w, c] for w, c in profile.items()]}


def enumerator_to_dict(W: WeightEnumerator) -> dict:
    d = {"length": W.length, "dimension": W.dimension, "field_order": W.field_order,
         "weights": [[w, c] for w, c in W.items()]}
    if isinstance(W, PredictedEnumerator):
        d["source"] = W.source
    return d


def enumerator_from_dict(d: dict) -> WeightEnumerator:
    counts = {int(w): int(c) for w, c in d["weights"]}
    return WeightEnumerator(int(d["length"]), int(d["dimension"]), int(d["field_order"]), counts)


def dumps(obj: dict) -> str:
    """JSON with one top-level key per line and inner lists kept inline."""
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(obj[k])}" for k in sorted(obj))
    return "{\n" + body + "\n}\n"


def write_enumerator(W: WeightEnumerator, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(enumerator_to_dict(W)))


def read_enumerator(path) -> WeightEnumerator:
    with open(path) as fh:
        return enumerator_from_dict(json.load(fh))


def format_matrix(G: GeneratorMatrix) -> str:
    ctx = G.ctx
    lines = [
        MATRIX_MAGIC,
        f"p {ctx.p}",
        f"e {G.view.e}",
        f"n {G.view.n}",
        f"r {G.r}",
        f"N {G.N}",
        "modulus " + " ".join(map(str, ctx.modulus)),
    ]
    if G.source:
        lines.append("source " + json.dumps([maptuple_to_dict(t) for t in G.source], sort_keys=True))
    lines.append("---")
    lines.extend(" ".join(map(str, row)) for row in G.entries.tolist())
    return "\n".join(lines) + "\n"


def write_matrix(G: GeneratorMatrix, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_matrix(G))


def parse_matrix(text: str) -> GeneratorMatrix:
    lines = text.splitlines()
    if not lines or lines[0].strip() != MATRIX_MAGIC:
        raise FormatError("missing generator matrix header line")
    header = {}
    body_start = None
    for k, line in enumerate(lines[1:], start=1):
        if line.strip() == "---":
            body_start = k + 1
            break
        key, _, value = line.partition(" ")
        header[key] = value.strip()
    if body_start is None:
        raise FormatError("missing '---' separator after the header")
    try:
        p, e, n, r, N = (int(header[k]) for k in ("p", "e", "n", "r", "N"))
        modulus = [int(c) for c in header["modulus"].split()]
    except KeyError as exc:
        raise FormatError(f"header field {exc} missing") from None
    except ValueError as exc:
        raise FormatError(f"bad header value: {exc}") from None
    ctx = field_from_dict({"p": p, "m": e * n, "modulus": modulus})
    view = make_subfield_view(ctx, e)
    rows = [ln for ln in lines[body_start:] if ln.strip()]
    if len(rows) != r:
        raise FormatError(f"expected {r} matrix rows, found {len(rows)}")
    data = []
    for i, ln in enumerate(rows):
        try:
            vals = [int(v) for v in ln.split()]
        except ValueError:
            raise FormatError(f"row {i}: non-integer entry") from None
        if len(vals) != N:
            raise FormatError(f"row {i}: expected {N} entries, found {len(vals)}")
        data.append(vals)
    source = ()
    if "source" in header:
        try:
            source = tuple(maptuple_from_dict(view, d) for d in json.loads(header["source"]))
        except (ValueError, KeyError, TypeError) as exc:
            raise FormatError(f"bad source descriptor: {exc}") from None
    return GeneratorMatrix(view, np.array(data, dtype=np.int64), source)


def read_matrix(path) -> GeneratorMatrix:
    with open(path) as fh:
        return parse_matrix(fh.read())
