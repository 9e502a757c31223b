import itertools
import random

import pytest

from etacomplex.base import Graded, GradedObject, ScalarEta
from etacomplex.complexes import (
    ChainMap,
    Complex,
    HomotopyCertificate,
    NotChainwiseSplit,
    add_chain_maps,
    apply_auto,
    apply_auto_map,
    compose_chain_maps,
    cone,
    complex_from_invariant,
    dsum_complex,
    eta_chain_map,
    eta_on_cone,
    homotopic,
    id_chain_map,
    normalize_exact_pair,
    null_homotopic,
    shift_chain_map,
    shift_complex,
    sub_chain_maps,
    validate_chain_map,
    validate_complex,
    zero_chain_map,
)
from etacomplex.generators import random_chain_map, random_complex
from etacomplex.matrix import RingMatrix
from etacomplex.rings import GF, QQ, ZZ, Zmod

RINGS = [ZZ, Zmod(4), Zmod(8), Zmod(9), GF(5)]


def instances():
    out = [ScalarEta(Zmod(4), 2), ScalarEta(Zmod(8), 2), ScalarEta(GF(5), 1), ScalarEta(ZZ, 2)]
    out.append(Graded(ScalarEta(Zmod(4), 1)))
    out.append(Graded(ScalarEta(GF(5), 1)))
    return out


class TestValidation:
    def test_zero_complex(self):
        inst = ScalarEta(ZZ, 1)
        assert validate_complex(Complex(inst, {}, {}))

    def test_mod4_two_term(self):
        inst = ScalarEta(Zmod(4), 2)
        d = RingMatrix.from_rows(Zmod(4), [[2]])
        c = Complex(inst, {0: 1, 1: 1}, {0: d})
        assert validate_complex(c)

    def test_invalid_three_term(self):
        inst = ScalarEta(Zmod(4), 2)
        one = RingMatrix.from_rows(Zmod(4), [[1]])
        c = Complex(inst, {0: 1, 1: 1, 2: 1}, {0: one, 1: one})
        assert not validate_complex(c)

    def test_random_generated_complexes_validate(self):
        rng = random.Random(20)
        for inst in instances():
            for _ in range(25):
                c = random_complex(inst, rng)
                assert validate_complex(c)

    def test_random_generated_chain_maps_validate(self):
        rng = random.Random(21)
        for inst in instances():
            for _ in range(15):
                a = random_complex(inst, rng)
                b = random_complex(inst, rng)
                f = random_chain_map(a, b, rng)
                assert validate_chain_map(f)


class TestShifts:
    def test_double_shift_round_trip(self):
        rng = random.Random(22)
        for inst in instances():
            c = random_complex(inst, rng)
            assert shift_complex(shift_complex(c, 1), -1) == c
            assert apply_auto(apply_auto(c, 1), -1) == c
            assert apply_auto(c, 0) == c

    def test_shift_negates_differential(self):
        inst = ScalarEta(Zmod(4), 2)
        d = RingMatrix.from_rows(Zmod(4), [[2]])
        c = Complex(inst, {0: 1, 1: 1}, {0: d})
        s = shift_complex(c, 1)
        assert s.obj(-1) == 1
        assert s.diff(-1) == RingMatrix.from_rows(Zmod(4), [[2]])  # -2 = 2 mod 4

    def test_auto_commutes_with_shift(self):
        # (1)[1] = [1](1) exactly
        rng = random.Random(23)
        for inst in instances():
            for _ in range(20):
                c = random_complex(inst, rng)
                assert apply_auto(shift_complex(c, 1), 1) == shift_complex(apply_auto(c, 1), 1)

    def test_eta_shift_compat(self):
        # eta_{X[1]} = eta_X[1] and eta_{X(1)} = eta_X(1)
        rng = random.Random(24)
        for inst in instances():
            for _ in range(20):
                c = random_complex(inst, rng)
                assert eta_chain_map(shift_complex(c, 1)) == shift_chain_map(eta_chain_map(c), 1)
                assert eta_chain_map(apply_auto(c, 1)) == apply_auto_map(eta_chain_map(c), 1)

    def test_eta_is_chain_map(self):
        rng = random.Random(25)
        for inst in instances():
            for _ in range(20):
                c = random_complex(inst, rng)
                assert validate_chain_map(eta_chain_map(c))


class TestCone:
    def test_cone_of_zero_map_between_empty(self):
        inst = ScalarEta(ZZ, 1)
        e = Complex(inst, {}, {})
        c, inj, proj = cone(zero_chain_map(e, e))
        assert c.is_zero()

    def test_cone_of_zero_map(self):
        rng = random.Random(26)
        inst = ScalarEta(Zmod(4), 2)
        a = random_complex(inst, rng)
        b = random_complex(inst, rng)
        c, _, _ = cone(zero_chain_map(a, b))
        expected, _, _, _, _ = dsum_complex(shift_complex(a, 1), b)
        assert c == expected

    def test_cone_valid_and_pair(self):
        rng = random.Random(27)
        for inst in instances():
            for _ in range(15):
                a = random_complex(inst, rng)
                b = random_complex(inst, rng)
                f = random_chain_map(a, b, rng)
                c, inj, proj = cone(f)
                assert validate_complex(c)
                assert validate_chain_map(inj)
                assert validate_chain_map(proj)
                assert compose_chain_maps(proj, inj).is_zero()

    def test_cone_identity_contractible(self):
        rng = random.Random(28)
        for inst in instances():
            for _ in range(10):
                a = random_complex(inst, rng)
                c, _, _ = cone(id_chain_map(a))
                assert null_homotopic(id_chain_map(c)) is not None

    def test_cone_commutes_with_auto(self):
        # cone(f(1)) = cone(f)(1)
        rng = random.Random(29)
        for inst in instances():
            for _ in range(10):
                a = random_complex(inst, rng)
                b = random_complex(inst, rng)
                f = random_chain_map(a, b, rng)
                c1, _, _ = cone(apply_auto_map(f, 1))
                c2, _, _ = cone(f)
                assert c1 == apply_auto(c2, 1)

    def test_eta_on_cone(self):
        rng = random.Random(30)
        for inst in instances():
            for _ in range(15):
                a = random_complex(inst, rng)
                b = random_complex(inst, rng)
                f = random_chain_map(a, b, rng)
                assert eta_on_cone(f)


class TestHomotopy:
    def test_self_homotopic(self):
        rng = random.Random(31)
        for inst in instances():
            a = random_complex(inst, rng)
            b = random_complex(inst, rng)
            f = random_chain_map(a, b, rng)
            cert = homotopic(f, f)
            assert cert is not None
            assert cert.validate(f, f)

    def test_identity_not_null_homotopic_mod4(self):
        inst = ScalarEta(Zmod(4), 2)
        c = Complex(inst, {0: 1, 1: 1}, {0: RingMatrix.from_rows(Zmod(4), [[2]])})
        assert null_homotopic(id_chain_map(c)) is None

    def test_brute_force_agreement_mod4(self):
        inst = ScalarEta(Zmod(4), 2)
        rng = random.Random(32)
        checked = 0
        while checked < 20:
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
            if total == 0 or total > 4:
                continue
            checked += 1
            found = None
            for vals in itertools.product(range(4), repeat=total):
                pos = 0
                s = {}
                for n, d in slots:
                    s[n] = inst.vec_to_mor(vals[pos : pos + d], a.obj(n), b.obj(n - 1))
                    pos += d
                cert = HomotopyCertificate(s, eta_twisted=False)
                if cert.validate(f, g):
                    found = cert
                    break
            assert (homotopic(f, g) is not None) == (found is not None)

    def test_certificate_revalidates(self):
        rng = random.Random(33)
        for inst in instances():
            for _ in range(10):
                a = random_complex(inst, rng)
                c, _, _ = cone(id_chain_map(a))
                cert = null_homotopic(id_chain_map(c))
                assert cert is not None
                assert cert.validate(id_chain_map(c), zero_chain_map(c, c))


class TestExactPairs:
    def test_cone_pair_recovers_f(self):
        rng = random.Random(34)
        for inst in instances():
            for _ in range(15):
                a = random_complex(inst, rng)
                b = random_complex(inst, rng)
                f = random_chain_map(a, b, rng)
                c, inj, proj = cone(f)
                pair = normalize_exact_pair(inj, proj)
                # quotient is X[1]; invariant h: X[1][-1] = X -> Y equals f
                assert pair.h.source == a
                assert pair.h.target == b
                assert homotopic(pair.h, f) is not None

    def test_direct_sum_pair_h_zero(self):
        rng = random.Random(35)
        for inst in instances():
            a = random_complex(inst, rng)
            b = random_complex(inst, rng)
            s, inj_a, _, _, proj_b = dsum_complex(a, b)
            pair = normalize_exact_pair(inj_a, proj_b)
            assert homotopic(pair.h, zero_chain_map(pair.h.source, pair.h.target)) is not None

    def test_not_chainwise_split(self):
        inst = ScalarEta(ZZ, 1)
        x = Complex(inst, {0: 1}, {})
        y = Complex(inst, {0: 1}, {})
        i = ChainMap(x, y, {0: RingMatrix.from_rows(ZZ, [[2]])})
        p = ChainMap(y, Complex(inst, {}, {}), {})
        with pytest.raises(NotChainwiseSplit):
            normalize_exact_pair(i, p)

    def test_round_trip_through_invariant(self):
        rng = random.Random(36)
        for inst in instances():
            for _ in range(10):
                a = random_complex(inst, rng)
                b = random_complex(inst, rng)
                f = random_chain_map(a, b, rng)
                c, inj, proj = cone(f)
                pair = normalize_exact_pair(inj, proj)
                mid, i2, p2 = complex_from_invariant(pair.h)
                assert validate_complex(mid)
                pair2 = normalize_exact_pair(i2, p2)
                assert homotopic(pair2.h, pair.h) is not None


class TestChainMapAlgebra:
    def test_add_sub(self):
        rng = random.Random(37)
        inst = ScalarEta(Zmod(9), 3)
        a = random_complex(inst, rng)
        b = random_complex(inst, rng)
        f = random_chain_map(a, b, rng)
        g = random_chain_map(a, b, rng)
        assert sub_chain_maps(add_chain_maps(f, g), g) == f
        assert validate_chain_map(add_chain_maps(f, g))

    def test_compose_valid(self):
        rng = random.Random(38)
        inst = Graded(ScalarEta(Zmod(4), 1))
        a = random_complex(inst, rng)
        b = random_complex(inst, rng)
        c = random_complex(inst, rng)
        f = random_chain_map(a, b, rng)
        g = random_chain_map(b, c, rng)
        assert validate_chain_map(compose_chain_maps(g, f))
