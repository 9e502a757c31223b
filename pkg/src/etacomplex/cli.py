"""Command-line surface: instance I/O, seeded generation, checks, suite.

Machine contract: exit code 0 means the check or suite passed, 1 means a
well-posed check failed (non-conflation, obstruction, failing property),
2 means the input could not be understood (bad file, wrong payload kind,
bad flags).  All reports are UTF-8 JSON-lines on stdout or the file given
with ``-o``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import List, Optional

from .base import Graded, ScalarEta
from .complexes import (
    shift_complex,
    apply_auto,
    id_chain_map,
    validate_chain_map,
    validate_complex,
    zero_chain_map,
)
from .frobenius import (
    NotChainwiseSplit,
    StandardConflation,
    eta_homotopic,
    ex1_composite,
    ex1_op_composite,
    ex2_op_pushout,
    ex2_pullback,
    is_eta_conflation,
)
from .gsystems import (
    Obstruction,
    phi,
    phi_mor,
    theta_extend,
    theta_triangle_check,
    totalize,
    validate_delta,
    validate_gsystem,
)
from .rings import ring_from_name
from .serialize import (
    chain_map_to_json,
    complex_to_json,
    load_instance_file,
    save_instance_file,
)

RING_ENV = "ETACOMPLEX_RING"

CHECK_OPS = (
    "is-eta-conflation",
    "eta-homotopic",
    "totalize",
    "theta-extend",
    "phi",
    "triangle-check",
    "axioms",
)

PROFILES = (
    "scalar-eta",
    "graded",
    "gsystem",
    "delta",
    "pair",
    "chain-maps",
    "delta-map",
)


class _Usage(Exception):
    """Input that cannot be understood: maps to exit code 2."""


def _default_ring_name() -> str:
    return os.environ.get(RING_ENV, "Z/4")


def _parse_ring(name: str):
    try:
        return ring_from_name(name)
    except ValueError as exc:
        raise _Usage(str(exc))


def _emit(records: List[dict], out: Optional[str]) -> None:
    text = "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records)
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load(path: str):
    try:
        return load_instance_file(path)
    except FileNotFoundError as exc:
        raise _Usage(f"no such file: {path}")
    except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        raise _Usage(f"cannot parse instance file {path}: {exc}")


def _need_kind(kind: str, wanted, op: str):
    if isinstance(wanted, str):
        wanted = (wanted,)
    if kind not in wanted:
        raise _Usage(f"op {op!r} needs a {' or '.join(wanted)} file, got {kind!r}")


# -- check ------------------------------------------------------------------


def _check_record(op: str, verdict: str, **extra) -> dict:
    rec = {"check": op, "verdict": verdict}
    rec.update(extra)
    return rec


def cmd_check(path: str, op: str, seed: int) -> (int, List[dict]):
    kind, obj = _load(path)

    if op == "is-eta-conflation":
        _need_kind(kind, "pair", op)
        i, p = obj
        try:
            conf = is_eta_conflation(i, p)
        except NotChainwiseSplit as exc:
            return 1, [_check_record(op, "NONE", detail=f"not chainwise split: {exc}")]
        if conf is None:
            return 1, [_check_record(op, "NONE")]
        return 0, [
            _check_record(op, "SOME", witness={"alpha": chain_map_to_json(conf.alpha)})
        ]

    if op == "eta-homotopic":
        _need_kind(kind, "chain-maps", op)
        f, g = obj
        cert = eta_homotopic(f, g)
        if cert is None:
            return 1, [_check_record(op, "NONE")]
        inst = f.instance
        witness = {
            "homotopy": [
                {"degree": n, "morphism": inst.mor_to_json(m)}
                for n, m in sorted(cert.s.items())
            ]
        }
        return 0, [_check_record(op, "SOME", witness=witness)]

    if op == "totalize":
        _need_kind(kind, ("gsystem", "complex"), op)
        if kind == "gsystem":
            if not validate_gsystem(obj):
                return 1, [_check_record(op, "FAIL", detail="input relations fail")]
            tot = totalize(obj)
        else:
            from .complexes import Complex
            from .gsystems import totalize_complex

            if not isinstance(obj.instance, Graded):
                raise _Usage("totalize needs a complex over a graded instance")
            if not validate_complex(obj):
                return 1, [_check_record(op, "FAIL", detail="d^2 != 0")]
            tot = totalize_complex(obj)
        ok = validate_complex(tot)
        rec = _check_record(
            op, "PASS" if ok else "FAIL", result=complex_to_json(tot)
        )
        return (0 if ok else 1), [rec]

    if op == "theta-extend":
        _need_kind(kind, "delta-complex", op)
        if not validate_delta(obj):
            return 1, [_check_record(op, "FAIL", detail="input is not a valid completion problem")]
        out = theta_extend(obj)
        if isinstance(out, Obstruction):
            return 1, [_check_record(op, "OBSTRUCTED", obstruction=out.to_json())]
        ok = validate_gsystem(out)
        return (0 if ok else 1), [
            _check_record(op, "PASS" if ok else "FAIL", result=out.to_json())
        ]

    if op == "phi":
        _need_kind(kind, ("delta-complex", "delta-map"), op)
        if kind == "delta-complex":
            if not validate_delta(obj):
                return 1, [_check_record(op, "FAIL", detail="input is not a valid completion problem")]
            out = phi(obj)
            if isinstance(out, Obstruction):
                return 1, [_check_record(op, "OBSTRUCTED", obstruction=out.to_json())]
            ok = validate_complex(out)
            return (0 if ok else 1), [
                _check_record(op, "PASS" if ok else "FAIL", result=complex_to_json(out))
            ]
        out = phi_mor(obj)
        if isinstance(out, Obstruction):
            return 1, [_check_record(op, "OBSTRUCTED", obstruction=out.to_json())]
        ok = validate_chain_map(out)
        return (0 if ok else 1), [
            _check_record(op, "PASS" if ok else "FAIL", result=chain_map_to_json(out))
        ]

    if op == "triangle-check":
        _need_kind(kind, "delta-map", op)
        res = theta_triangle_check(obj)
        if isinstance(res, Obstruction):
            return 1, [_check_record(op, "OBSTRUCTED", obstruction=res.to_json())]
        return (0 if res else 1), [_check_record(op, "PASS" if res else "FAIL")]

    if op == "axioms":
        _need_kind(kind, "pair", op)
        return _check_axioms(obj, seed)

    raise _Usage(f"unknown check op {op!r}")


def _check_axioms(pair, seed: int) -> (int, List[dict]):
    """Recognize the pair and verify the closure axioms around it."""
    from .generators import random_chain_map, random_complex

    i, p = pair
    records = []
    try:
        conf = is_eta_conflation(i, p)
    except NotChainwiseSplit as exc:
        return 1, [_check_record("axioms", "NONE", detail=f"not chainwise split: {exc}")]
    if conf is None:
        return 1, [_check_record("axioms", "NONE", detail="pair is not a conflation")]
    records.append(_check_record("axioms/recognized", "PASS"))
    defl = StandardConflation(conf.alpha)
    inst = defl.instance
    rng = random.Random(seed)

    from .complexes import Complex

    zero = Complex(inst, {}, {})
    ok0 = is_eta_conflation(zero_chain_map(zero, defl.Z), id_chain_map(defl.Z)) is not None
    records.append(_check_record("axioms/ex0", "PASS" if ok0 else "FAIL"))

    V = random_complex(inst, rng, max_len=2)
    beta = random_chain_map(shift_complex(defl.middle, -1), apply_auto(V, 1), rng)
    ok1, conf1 = ex1_composite(defl, beta)
    ok1 = ok1 and conf1 is not None
    records.append(_check_record("axioms/ex1", "PASS" if ok1 else "FAIL"))

    U = random_complex(inst, rng, max_len=2)
    gamma = random_chain_map(shift_complex(U, -1), apply_auto(defl.middle, 1), rng)
    ok1op = ex1_op_composite(defl, gamma)
    records.append(_check_record("axioms/ex1-op", "PASS" if ok1op else "FAIL"))

    zp = random_complex(inst, rng, max_len=2)
    h = random_chain_map(zp, defl.Z, rng)
    ok2, conf2 = ex2_pullback(defl, h)
    ok2 = ok2 and conf2 is not None
    records.append(_check_record("axioms/ex2", "PASS" if ok2 else "FAIL"))

    xp = random_complex(inst, rng, max_len=2)
    hx = random_chain_map(defl.X, xp, rng)
    ok2op = ex2_op_pushout(defl, hx)
    records.append(_check_record("axioms/ex2-op", "PASS" if ok2op else "FAIL"))

    allok = ok0 and ok1 and ok1op and ok2 and ok2op
    return (0 if allok else 1), records


# -- gen --------------------------------------------------------------------


def cmd_gen(
    seed: int,
    profile: str,
    out: str,
    ring_name: str,
    r_value: int,
    max_len: int,
    max_rank: int,
) -> int:
    from .generators import (
        random_chain_map,
        random_complex,
        random_delta_complex,
        random_delta_map,
        random_gsystem,
        random_std_conflation,
    )

    ring = _parse_ring(ring_name)
    rng = random.Random(seed)

    if profile == "scalar-eta":
        inst = ScalarEta(ring, ring.canon(r_value))
        obj = random_complex(inst, rng, max_len=max_len, max_rank=max_rank)
        assert validate_complex(obj)
        kind = "complex"
    elif profile == "graded":
        inst = Graded(ScalarEta(ring, ring.canon(r_value)))
        obj = random_complex(inst, rng, max_len=max_len, max_rank=max_rank)
        assert validate_complex(obj)
        kind = "complex"
    elif profile == "gsystem":
        obj = random_gsystem(ring, rng, max_len=max_len, max_rank=max_rank)
        kind = "gsystem"
    elif profile == "delta":
        obj = random_delta_complex(ring, rng, max_rank=max_rank)
        assert validate_delta(obj)
        kind = "delta-complex"
    elif profile == "pair":
        inst = ScalarEta(ring, ring.canon(r_value))
        defl = random_std_conflation(inst, rng, max_len=max_len, max_rank=max_rank)
        obj = (defl.i, defl.p)
        kind = "pair"
    elif profile == "chain-maps":
        inst = ScalarEta(ring, ring.canon(r_value))
        a = random_complex(inst, rng, max_len=max_len, max_rank=max_rank)
        b = random_complex(inst, rng, max_len=max_len, max_rank=max_rank)
        obj = (random_chain_map(a, b, rng), random_chain_map(a, b, rng))
        kind = "chain-maps"
    elif profile == "delta-map":
        x = random_delta_complex(ring, rng, max_rank=max_rank)
        y = random_delta_complex(ring, rng, max_rank=max_rank)
        obj = random_delta_map(x, y, rng)
        kind = "delta-map"
    else:
        raise _Usage(f"unknown profile {profile!r}")

    save_instance_file(out, kind, obj)
    return 0


# -- suite ------------------------------------------------------------------


def cmd_suite(
    seed: int,
    trials: int,
    ring_name: Optional[str],
    names: Optional[List[str]],
    out: Optional[str],
    fail_dir: Optional[str],
) -> (int, List[dict]):
    from . import suite as suite_mod

    if trials < 1:
        raise _Usage("--trials must be at least 1")
    rings = None
    if ring_name:
        rings = [_parse_ring(ring_name)]
    if names:
        unknown = [n for n in names if n not in suite_mod.PROPERTIES]
        if unknown:
            raise _Usage(f"unknown properties: {', '.join(unknown)}")
    old = suite_mod.RINGS
    if rings is not None:
        suite_mod.RINGS = rings
    try:
        ok, records = suite_mod.run_suite(
            seed=seed, trials=trials, names=names, fail_dir=fail_dir
        )
    finally:
        suite_mod.RINGS = old
    summary = {
        "suite": "etacomplex",
        "seed": seed,
        "trials": trials,
        "properties": len({r["name"] for r in records}),
        "failures": sum(r["verdict"] != "pass" for r in records),
        "verdict": "pass" if ok else "fail",
    }
    return (0 if ok else 1), records + [summary]


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="etacomplex",
        description="checks, generators and the property suite for twisted "
        "Frobenius structures on complexes",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("check", help="run one named check on an instance file")
    c.add_argument("file")
    c.add_argument("--op", required=True, choices=CHECK_OPS)
    c.add_argument("--seed", type=int, default=0, help="seed for auxiliary data (axioms op)")
    c.add_argument("-o", "--out", default=None, help="write the report here instead of stdout")

    g = sub.add_parser("gen", help="deterministically generate an instance file")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--profile", required=True, choices=PROFILES)
    g.add_argument("-o", "--out", required=True)
    g.add_argument("--ring", default=None, help=f"ring name (default ${RING_ENV} or Z/4)")
    g.add_argument("--r", type=int, default=2, help="twist scalar for scalar-eta/graded/pair profiles")
    g.add_argument("--max-len", type=int, default=3)
    g.add_argument("--max-rank", type=int, default=2)

    s = sub.add_parser("suite", help="run the full property suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=5)
    s.add_argument("--ring", default=None, help="restrict the ring pool to one ring")
    s.add_argument("--property", action="append", default=None, dest="properties",
                   help="run only this property (repeatable)")
    s.add_argument("-o", "--out", default=None)
    s.add_argument("--fail-dir", default=None,
                   help="directory for replayable failing-instance files")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.cmd == "check":
            code, records = cmd_check(args.file, args.op, args.seed)
            _emit(records, args.out)
            return code
        if args.cmd == "gen":
            ring = args.ring or _default_ring_name()
            return cmd_gen(
                args.seed, args.profile, args.out, ring, args.r,
                args.max_len, args.max_rank,
            )
        if args.cmd == "suite":
            ring = args.ring  # None = full desk pool; env var narrows it
            if ring is None and os.environ.get(RING_ENV):
                ring = os.environ[RING_ENV]
            code, records = cmd_suite(
                args.seed, args.trials, ring, args.properties, args.out,
                args.fail_dir,
            )
            _emit(records, args.out)
            return code
        raise _Usage(f"unknown command {args.cmd!r}")
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
