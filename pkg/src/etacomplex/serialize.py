"""Instance files: versioned JSON for every checkable object.

An instance file is a single JSON document with a format tag, a payload
kind, and the payload itself.  Supported kinds:

* ``complex``        -- one bounded complex over a base instance
* ``chain-maps``     -- a parallel pair of chain maps (homotopy questions)
* ``pair``           -- a composable pair i: X -> Y, p: Y -> Z (conflation
                        questions)
* ``gsystem``        -- a bigraded system with higher differentials
* ``delta-complex``  -- a completion input (strict i-differential plus a
                        commuting j-map)
* ``delta-map``      -- a column-wise chain map between two such inputs
"""

from __future__ import annotations

import json
from typing import Tuple

from .base import instance_from_json
from .complexes import ChainMap, Complex
from .gsystems import DeltaComplex, DeltaMap, GSystem
from .matrix import RingMatrix

FORMAT = "etacomplex/1"

KINDS = ("complex", "chain-maps", "pair", "gsystem", "delta-complex", "delta-map")


# -- complexes and chain maps ----------------------------------------------


def complex_to_json(c: Complex) -> dict:
    inst = c.instance
    return {
        "instance": inst.to_json(),
        "objects": [
            {"degree": n, "object": inst.obj_to_json(X)}
            for n, X in sorted(c.objects.items())
        ],
        "diffs": [
            {"degree": n, "morphism": inst.mor_to_json(d)}
            for n, d in sorted(c.diffs.items())
        ],
    }


def complex_from_json(d: dict) -> Complex:
    inst = instance_from_json(d["instance"])
    objects = {e["degree"]: inst.obj_from_json(e["object"]) for e in d["objects"]}

    def obj(n):
        return objects.get(n, inst.zero_obj())

    diffs = {
        e["degree"]: inst.mor_from_json(
            e["morphism"], obj(e["degree"]), obj(e["degree"] + 1)
        )
        for e in d["diffs"]
    }
    return Complex(inst, objects, diffs)


def chain_map_to_json(f: ChainMap) -> dict:
    inst = f.instance
    return {
        "source": complex_to_json(f.source),
        "target": complex_to_json(f.target),
        "components": [
            {"degree": n, "morphism": inst.mor_to_json(m)}
            for n, m in sorted(f.components.items())
        ],
    }


def chain_map_from_json(d: dict) -> ChainMap:
    src = complex_from_json(d["source"])
    tgt = complex_from_json(d["target"])
    inst = src.instance
    comps = {
        e["degree"]: inst.mor_from_json(
            e["morphism"], src.obj(e["degree"]), tgt.obj(e["degree"])
        )
        for e in d["components"]
    }
    return ChainMap(src, tgt, comps)


def delta_map_to_json(f: DeltaMap) -> dict:
    return {
        "source": f.source.to_json(),
        "target": f.target.to_json(),
        "components": [
            {"i": i, "j": j, "matrix": m.to_json()}
            for (i, j), m in sorted(f.components.items())
        ],
    }


def delta_map_from_json(d: dict) -> DeltaMap:
    src = DeltaComplex.from_json(d["source"])
    tgt = DeltaComplex.from_json(d["target"])
    comps = {
        (e["i"], e["j"]): RingMatrix.from_json(e["matrix"]) for e in d["components"]
    }
    return DeltaMap(src, tgt, comps)


# -- instance files ---------------------------------------------------------


def payload_to_json(kind: str, obj) -> dict:
    if kind == "complex":
        body = complex_to_json(obj)
    elif kind == "chain-maps":
        f, g = obj
        body = {"f": chain_map_to_json(f), "g": chain_map_to_json(g)}
    elif kind == "pair":
        i, p = obj
        body = {"i": chain_map_to_json(i), "p": chain_map_to_json(p)}
    elif kind == "gsystem":
        body = obj.to_json()
    elif kind == "delta-complex":
        body = obj.to_json()
    elif kind == "delta-map":
        body = delta_map_to_json(obj)
    else:
        raise ValueError(f"unknown payload kind {kind!r}")
    return {"format": FORMAT, "kind": kind, "payload": body}


def payload_from_json(d: dict) -> Tuple[str, object]:
    if d.get("format") != FORMAT:
        raise ValueError(f"unsupported format tag {d.get('format')!r}")
    kind = d.get("kind")
    body = d["payload"]
    if kind == "complex":
        return kind, complex_from_json(body)
    if kind == "chain-maps":
        return kind, (chain_map_from_json(body["f"]), chain_map_from_json(body["g"]))
    if kind == "pair":
        return kind, (chain_map_from_json(body["i"]), chain_map_from_json(body["p"]))
    if kind == "gsystem":
        return kind, GSystem.from_json(body)
    if kind == "delta-complex":
        return kind, DeltaComplex.from_json(body)
    if kind == "delta-map":
        return kind, delta_map_from_json(body)
    raise ValueError(f"unknown payload kind {kind!r}")


def save_instance_file(path: str, kind: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload_to_json(kind, obj), fh, ensure_ascii=False, indent=1)
        fh.write("\n")


def load_instance_file(path: str) -> Tuple[str, object]:
    with open(path, "r", encoding="utf-8") as fh:
        return payload_from_json(json.load(fh))
