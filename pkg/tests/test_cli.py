import json
import random

import pytest

from etacomplex.base import Graded, ScalarEta
from etacomplex.cli import main
from etacomplex.complexes import ChainMap, Complex, cone, zero_chain_map
from etacomplex.generators import (
    obstructed_delta_complex,
    random_chain_map,
    random_complex,
    random_delta_complex,
    random_delta_map,
    random_gsystem,
    random_std_conflation,
)
from etacomplex.matrix import RingMatrix
from etacomplex.rings import GF, ZZ, Zmod
from etacomplex.serialize import (
    load_instance_file,
    payload_from_json,
    payload_to_json,
    save_instance_file,
)


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def records_of(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


class TestSerializeRoundTrip:
    def test_complex_kinds(self):
        rng = random.Random(70)
        for inst in (ScalarEta(Zmod(4), 2), Graded(ScalarEta(GF(5), 1))):
            c = random_complex(inst, rng)
            k, c2 = payload_from_json(
                json.loads(json.dumps(payload_to_json("complex", c)))
            )
            assert k == "complex" and c2 == c
            f = random_chain_map(c, random_complex(inst, rng), rng)
            g = random_chain_map(f.source, f.target, rng)
            k, (f2, g2) = payload_from_json(
                json.loads(json.dumps(payload_to_json("chain-maps", (f, g))))
            )
            assert f2 == f and g2 == g

    def test_pair_kind(self):
        rng = random.Random(71)
        defl = random_std_conflation(ScalarEta(Zmod(8), 2), rng)
        k, (i2, p2) = payload_from_json(
            payload_to_json("pair", (defl.i, defl.p))
        )
        assert i2 == defl.i and p2 == defl.p

    def test_bigraded_kinds(self):
        rng = random.Random(72)
        for ring in (ZZ, Zmod(9)):
            x = random_gsystem(ring, rng)
            k, x2 = payload_from_json(payload_to_json("gsystem", x))
            assert x2 == x
            d = random_delta_complex(ring, rng)
            k, d2 = payload_from_json(payload_to_json("delta-complex", d))
            assert (d2.ranks, d2.delta0, d2.delta1) == (d.ranks, d.delta0, d.delta1)
            m = random_delta_map(d, random_delta_complex(ring, rng), rng)
            k, m2 = payload_from_json(payload_to_json("delta-map", m))
            assert m2.components == m.components

    def test_canonical_after_one_pass(self, tmp_path):
        rng = random.Random(73)
        x = random_delta_complex(Zmod(4), rng)
        p = tmp_path / "x.json"
        save_instance_file(str(p), "delta-complex", x)
        first = p.read_text(encoding="utf-8")
        kind, back = load_instance_file(str(p))
        save_instance_file(str(p), kind, back)
        assert p.read_text(encoding="utf-8") == first

    def test_bad_format_tag(self):
        with pytest.raises(ValueError):
            payload_from_json({"format": "other/9", "kind": "complex", "payload": {}})

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            payload_to_json("nonsense", None)


class TestGen:
    def test_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for p in (a, b):
            assert main(["gen", "--seed", "5", "--profile", "pair", "-o", str(p), "--ring", "Z/4"]) == 0
        assert a.read_text() == b.read_text()

    def test_profiles_validate(self, tmp_path):
        for profile in ("scalar-eta", "graded", "gsystem", "delta", "pair", "chain-maps", "delta-map"):
            p = tmp_path / f"{profile}.json"
            code = main(["gen", "--seed", "9", "--profile", profile, "-o", str(p), "--ring", "Z/8"])
            assert code == 0
            kind, obj = load_instance_file(str(p))

    def test_empty_complex_at_len_zero(self, tmp_path):
        p = tmp_path / "e.json"
        assert main(["gen", "--seed", "1", "--profile", "scalar-eta", "-o", str(p), "--max-len", "0"]) == 0
        assert json.loads(p.read_text())["payload"]["objects"] == []

    def test_env_var_default_ring(self, tmp_path, monkeypatch):
        monkeypatch.setenv("ETACOMPLEX_RING", "F5")
        p = tmp_path / "f5.json"
        assert main(["gen", "--seed", "2", "--profile", "gsystem", "-o", str(p)]) == 0
        assert json.loads(p.read_text())["payload"]["ring"] == {"kind": "GF", "modulus": 5}

    def test_bad_ring_is_usage_error(self, tmp_path):
        p = tmp_path / "x.json"
        assert main(["gen", "--seed", "1", "--profile", "gsystem", "-o", str(p), "--ring", "nope"]) == 2


class TestCheck:
    def test_conflation_pass(self, tmp_path, capsys):
        p = tmp_path / "pair.json"
        main(["gen", "--seed", "5", "--profile", "pair", "-o", str(p), "--ring", "Z/4"])
        code, out = run(capsys, ["check", str(p), "--op", "is-eta-conflation"])
        assert code == 0
        rec = records_of(out)[0]
        assert rec["verdict"] == "SOME" and "witness" in rec

    def test_non_conflation_exit_one(self, tmp_path, capsys):
        # invariant [1] cannot factor through the twist scalar 2 on stalks
        inst = ScalarEta(Zmod(4), 2)
        x = Complex(inst, {0: 1}, {})
        f = ChainMap(x, x, {0: RingMatrix.from_rows(Zmod(4), [[1]])})
        c, i, pr = cone(f)
        p = tmp_path / "bad-pair.json"
        save_instance_file(str(p), "pair", (i, pr))
        code, out = run(capsys, ["check", str(p), "--op", "is-eta-conflation"])
        assert code == 1
        assert records_of(out)[0]["verdict"] == "NONE"

    def test_eta_homotopic_both_verdicts(self, tmp_path, capsys):
        inst = ScalarEta(Zmod(4), 2)
        x = Complex(inst, {0: 1}, {})
        ident = ChainMap(x, x, {0: RingMatrix.from_rows(Zmod(4), [[1]])})
        zero = zero_chain_map(x, x)
        good = tmp_path / "hom.json"
        save_instance_file(str(good), "chain-maps", (ident, ident))
        code, out = run(capsys, ["check", str(good), "--op", "eta-homotopic"])
        assert code == 0 and records_of(out)[0]["verdict"] == "SOME"
        bad = tmp_path / "nohom.json"
        save_instance_file(str(bad), "chain-maps", (ident, zero))
        code, out = run(capsys, ["check", str(bad), "--op", "eta-homotopic"])
        assert code == 1 and records_of(out)[0]["verdict"] == "NONE"

    def test_theta_extend_and_obstruction(self, tmp_path, capsys):
        good = tmp_path / "good.json"
        main(["gen", "--seed", "7", "--profile", "delta", "-o", str(good), "--ring", "Z/9"])
        code, out = run(capsys, ["check", str(good), "--op", "theta-extend"])
        assert code == 0 and records_of(out)[0]["verdict"] == "PASS"
        bad = tmp_path / "bad.json"
        save_instance_file(str(bad), "delta-complex", obstructed_delta_complex(GF(5)))
        code, out = run(capsys, ["check", str(bad), "--op", "theta-extend"])
        assert code == 1
        rec = records_of(out)[0]
        assert rec["verdict"] == "OBSTRUCTED" and rec["obstruction"]["level"] == 1

    def test_phi_and_triangle(self, tmp_path, capsys):
        d = tmp_path / "d.json"
        main(["gen", "--seed", "8", "--profile", "delta", "-o", str(d), "--ring", "Z/4"])
        assert run(capsys, ["check", str(d), "--op", "phi"])[0] == 0
        dm = tmp_path / "dm.json"
        main(["gen", "--seed", "9", "--profile", "delta-map", "-o", str(dm), "--ring", "Z/9"])
        code, out = run(capsys, ["check", str(dm), "--op", "triangle-check"])
        assert code in (0, 1)  # morphism extension may report an obstruction
        assert records_of(out)[0]["verdict"] in ("PASS", "OBSTRUCTED")

    def test_totalize(self, tmp_path, capsys):
        gs = tmp_path / "gs.json"
        main(["gen", "--seed", "3", "--profile", "gsystem", "-o", str(gs), "--ring", "Z"])
        code, out = run(capsys, ["check", str(gs), "--op", "totalize"])
        assert code == 0
        assert records_of(out)[0]["verdict"] == "PASS"

    def test_axioms(self, tmp_path, capsys):
        p = tmp_path / "pair.json"
        main(["gen", "--seed", "5", "--profile", "pair", "-o", str(p), "--ring", "Z/8"])
        code, out = run(capsys, ["check", str(p), "--op", "axioms", "--seed", "2"])
        assert code == 0
        recs = records_of(out)
        names = {r["check"] for r in recs}
        assert {"axioms/ex0", "axioms/ex1", "axioms/ex1-op", "axioms/ex2", "axioms/ex2-op"} <= names
        assert all(r["verdict"] == "PASS" for r in recs)

    def test_malformed_json_exit_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        assert run(capsys, ["check", str(bad), "--op", "totalize"])[0] == 2

    def test_wrong_kind_exit_two(self, tmp_path, capsys):
        p = tmp_path / "pair.json"
        main(["gen", "--seed", "5", "--profile", "pair", "-o", str(p), "--ring", "Z/4"])
        assert run(capsys, ["check", str(p), "--op", "theta-extend"])[0] == 2

    def test_missing_file_exit_two(self, tmp_path, capsys):
        assert run(capsys, ["check", str(tmp_path / "nope.json"), "--op", "phi"])[0] == 2

    def test_unknown_op_exit_two(self, tmp_path, capsys):
        p = tmp_path / "pair.json"
        main(["gen", "--seed", "5", "--profile", "pair", "-o", str(p), "--ring", "Z/4"])
        assert main(["check", str(p), "--op", "frobnicate"]) == 2


class TestSuiteCommand:
    def test_single_property_pass(self, capsys):
        code, out = run(capsys, ["suite", "--seed", "1", "--trials", "2",
                                 "--property", "cone-normalize"])
        assert code == 0
        recs = records_of(out)
        assert recs[-1]["verdict"] == "pass"
        assert all(r["verdict"] == "pass" for r in recs[:-1])

    def test_replay_determinism(self, capsys):
        argv = ["suite", "--seed", "4", "--trials", "2",
                "--property", "homotopy-agreement", "--property", "psi-roundtrip"]
        _, out1 = run(capsys, argv)
        _, out2 = run(capsys, argv)
        strip = lambda recs: [{k: v for k, v in r.items() if k != "time"} for r in recs]
        assert strip(records_of(out1)) == strip(records_of(out2))

    def test_trials_zero_is_usage_error(self, capsys):
        assert run(capsys, ["suite", "--trials", "0"])[0] == 2

    def test_unknown_property_is_usage_error(self, capsys):
        assert run(capsys, ["suite", "--property", "nope"])[0] == 2

    def test_failure_writes_replay_file(self, tmp_path, capsys, monkeypatch):
        import etacomplex.suite as suite_mod

        def always_fails(rng):
            from etacomplex.generators import random_delta_complex
            from etacomplex.rings import Zmod

            x = random_delta_complex(Zmod(4), rng)
            return False, "injected failure", ("delta-complex", x)

        monkeypatch.setitem(suite_mod.PROPERTIES, "injected-failure", always_fails)
        code, out = run(capsys, ["suite", "--seed", "1", "--trials", "1",
                                 "--property", "injected-failure",
                                 "--fail-dir", str(tmp_path)])
        assert code == 1
        recs = records_of(out)
        fail = recs[0]
        assert fail["verdict"] == "fail" and "replay" in fail
        kind, obj = load_instance_file(fail["replay"])
        assert kind == "delta-complex"

    def test_ring_restriction(self, capsys):
        code, out = run(capsys, ["suite", "--seed", "2", "--trials", "1",
                                 "--ring", "F5", "--property", "theta-revalidates"])
        assert code == 0
