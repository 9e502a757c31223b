"""Acceptance gate: one criterion per test, one printed PASS/FAIL line each.

Each criterion drives the named suite properties at full desk scale
(>= 100 seeded trials per property, >= 200 for the homotopy-agreement
equivalence) and fails on any counterexample.  The final criterion checks
mutation sensitivity: flipping any single structural sign knob must break
at least one suite property.
"""

import itertools
import random
import etacomplex.complexes as complexes_mod
import etacomplex.gsystems as gsystems_mod
from etacomplex.base import ScalarEta
from etacomplex.complexes import HomotopyCertificate
from etacomplex.frobenius import eta_homotopic
from etacomplex.generators import random_chain_map, random_complex
from etacomplex.rings import Zmod
from etacomplex.suite import run_property

SEED = 20260824


def _line(capsys, name, ok):
    with capsys.disabled():
        print(f"[ACCEPTANCE] {name}: {'PASS' if ok else 'FAIL'}", flush=True)


def _run(names, trials=100):
    failures = []
    for name in names:
        recs = run_property(name, SEED, trials)
        failures.extend(r for r in recs if r["verdict"] != "pass")
    return failures


def _criterion(capsys, name, names, trials=100):
    failures = _run(names, trials)
    _line(capsys, name, not failures)
    assert not failures, failures[:3]


def test_criterion_1_exact_structure_axioms(capsys):
    _criterion(
        capsys,
        "1 exact-structure axioms",
        ["axiom-ex0", "axiom-ex1", "axiom-ex1-op", "axiom-ex2", "axiom-ex2-op"],
    )


def test_criterion_2_frobenius_property(capsys):
    _criterion(
        capsys,
        "2 frobenius lifting and standard conflations",
        ["projective-lift", "injective-extend", "env-cover-conflations"],
    )


def test_criterion_3_degenerate_twist_calibration(capsys):
    _criterion(
        capsys,
        "3 degenerate-twist calibration",
        ["calibration-unit", "calibration-zero"],
    )


def test_criterion_4_homotopy_equivalences(capsys):
    failures = _run(["homotopy-agreement"], trials=200)
    failures += _run(["null-factorization"], trials=100)
    ok = not failures

    # independent brute-force cross-check over Z/4: enumerate every
    # candidate twisted homotopy when the total unknown count is small
    inst = ScalarEta(Zmod(4), 2)
    rng = random.Random(SEED)
    checked = 0
    while checked < 10 and ok:
        a = random_complex(inst, rng, max_len=3, max_rank=1)
        b = random_complex(inst, rng, max_len=3, max_rank=1)
        f = random_chain_map(a, b, rng)
        g = random_chain_map(a, b, rng)
        slots = [
            (n, a.obj(n) * b.obj(n - 1))
            for n in a.support
            if a.obj(n) and b.obj(n - 1)
        ]
        total = sum(d for _, d in slots)
        if total == 0 or total > 6:
            continue
        checked += 1
        found = False
        for vals in itertools.product(range(4), repeat=total):
            pos = 0
            s = {}
            for n, d in slots:
                s[n] = inst.vec_to_mor(vals[pos:pos + d], a.obj(n), b.obj(n - 1))
                pos += d
            if HomotopyCertificate(s, eta_twisted=True).validate(f, g):
                found = True
                break
        ok = ok and (eta_homotopic(f, g) is not None) == found
    ok = ok and checked == 10

    _line(capsys, "4 homotopy equivalences", ok)
    assert ok, failures[:3]


def test_criterion_5_bridge_reindexing_and_totalization(capsys):
    _criterion(
        capsys,
        "5 reindexing and totalization",
        ["psi-roundtrip", "totalize-functor", "xi-cone-eta"],
    )


def test_criterion_6_completion_pipeline(capsys):
    _criterion(
        capsys,
        "6 inductive completion pipeline",
        [
            "theta-revalidates",
            "theta-obstruction-reported",
            "theta-triangle",
            "eta-null-complete",
            "phi-null",
        ],
    )


def test_criterion_7_mutation_sensitivity(monkeypatch, capsys):
    trips = []

    monkeypatch.setattr(complexes_mod, "_CONE_SIGN", 1)
    trips.append(bool(_run(["cone-normalize"], trials=3)))
    monkeypatch.setattr(complexes_mod, "_CONE_SIGN", -1)

    monkeypatch.setattr(gsystems_mod, "_XI_SIGN", -1)
    trips.append(bool(_run(["totalize-functor", "xi-cone-eta"], trials=3)))
    monkeypatch.setattr(gsystems_mod, "_XI_SIGN", 1)

    monkeypatch.setattr(gsystems_mod, "_THETA_PARITY", "total")
    trips.append(bool(_run(["theta-obstruction-reported"], trials=3)))
    monkeypatch.setattr(gsystems_mod, "_THETA_PARITY", "column")

    # the clean build must still pass the same properties
    clean = not _run(
        ["cone-normalize", "totalize-functor", "xi-cone-eta",
         "theta-obstruction-reported"],
        trials=3,
    )
    ok = all(trips) and clean
    _line(capsys, "7 mutation sensitivity", ok)
    assert ok, (trips, clean)
