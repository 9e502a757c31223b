import itertools
import random

import pytest

from etacomplex.linalg import (
    kernel_generators,
    smith_normal_form,
    solve_linear_system,
    solve_with_kernel,
    verify_snf,
)
from etacomplex.matrix import RingMatrix, mat_mul
from etacomplex.rings import GF, QQ, ZZ, CoeffRing, Zmod


def M(ring, rows):
    return RingMatrix.from_rows(ring, rows)


class TestMatMul:
    def test_identity(self):
        m = M(ZZ, [[1, 2], [3, 4]])
        assert mat_mul(RingMatrix.identity(ZZ, 2), m) == m

    def test_mod4_annihilation(self):
        r = Zmod(4)
        assert mat_mul(M(r, [[2]]), M(r, [[2]])) == M(r, [[0]])

    def test_hand_expansion(self):
        a = M(ZZ, [[1, 2], [0, 1]])
        b = M(ZZ, [[1, 0], [3, 1]])
        assert mat_mul(a, b) == M(ZZ, [[7, 2], [3, 1]])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            mat_mul(M(ZZ, [[1, 2]]), M(ZZ, [[1, 2]]))

    def test_ring_mismatch(self):
        with pytest.raises(ValueError):
            mat_mul(M(ZZ, [[1]]), M(Zmod(4), [[1]]))

    def test_associative_and_bilinear_random(self):
        rng = random.Random(7)
        for ring in (ZZ, Zmod(6), GF(5), QQ):
            for _ in range(30):
                dims = [rng.randint(0, 3) for _ in range(4)]
                mats = []
                for r, c in zip(dims, dims[1:]):
                    mats.append(
                        RingMatrix(ring, r, c, [rng.randint(-9, 9) for _ in range(r * c)])
                    )
                a, b, c = mats
                assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))
                b2 = RingMatrix(
                    ring, b.rows, b.cols, [rng.randint(-9, 9) for _ in range(b.rows * b.cols)]
                )
                assert mat_mul(a, b + b2) == mat_mul(a, b) + mat_mul(a, b2)


class TestSmithNormalForm:
    def test_zero_matrix(self):
        a = RingMatrix.zero(ZZ, 2, 3)
        U, D, V = smith_normal_form(a)
        assert D.is_zero()
        assert verify_snf(a, U, D, V)

    def test_one_by_one(self):
        a = M(ZZ, [[2]])
        _, D, _ = smith_normal_form(a)
        assert D == M(ZZ, [[2]])

    def test_diag_2_4(self):
        a = M(ZZ, [[2, 4], [6, 8]])
        U, D, V = smith_normal_form(a)
        assert [D[(0, 0)], D[(1, 1)]] == [2, 4]
        assert D[(0, 1)] == 0 and D[(1, 0)] == 0
        assert verify_snf(a, U, D, V)

    def test_unsupported_ring(self):
        with pytest.raises(ValueError):
            smith_normal_form(M(Zmod(4), [[2]]))

    def test_reconstruction_random(self):
        rng = random.Random(11)
        for _ in range(60):
            r = rng.randint(1, 6)
            c = rng.randint(1, 6)
            a = RingMatrix(ZZ, r, c, [rng.randint(-20, 20) for _ in range(r * c)])
            U, D, V = smith_normal_form(a)
            assert verify_snf(a, U, D, V)


class TestSolve:
    def test_integer_simple(self):
        x = solve_linear_system(M(ZZ, [[2]]), M(ZZ, [[4]]))
        assert x == M(ZZ, [[2]])

    def test_integer_parity(self):
        assert solve_linear_system(M(ZZ, [[2]]), M(ZZ, [[3]])) is None

    def test_mod4(self):
        x = solve_linear_system(M(Zmod(4), [[2]]), M(Zmod(4), [[2]]))
        assert x is not None
        assert x[(0, 0)] in (1, 3)

    def test_field(self):
        a = M(GF(5), [[2, 1], [1, 1]])
        b = M(GF(5), [[1], [2]])
        x = solve_linear_system(a, b)
        assert mat_mul(a, x) == b

    def test_rationals(self):
        a = M(QQ, [[2, 0], [0, 3]])
        b = M(QQ, [[1], [1]])
        x = solve_linear_system(a, b)
        assert mat_mul(a, x) == b

    def test_solution_exactness_random(self):
        rng = random.Random(3)
        for ring in (ZZ, Zmod(4), Zmod(9), GF(5), QQ):
            for _ in range(40):
                r = rng.randint(1, 4)
                c = rng.randint(1, 4)
                a = RingMatrix(ring, r, c, [rng.randint(-6, 6) for _ in range(r * c)])
                b = RingMatrix(ring, r, 1, [rng.randint(-6, 6) for _ in range(r)])
                x = solve_linear_system(a, b)
                if x is not None:
                    assert mat_mul(a, x) == b

    @pytest.mark.parametrize("ring", [Zmod(4), Zmod(6), Zmod(9), GF(2), GF(3)])
    def test_brute_force_agreement(self, ring):
        """Solvability agrees with full enumeration for dims <= 3 over small rings."""
        rng = random.Random(ring.modulus)
        m = ring.modulus
        for _ in range(25):
            r = rng.randint(1, 3)
            c = rng.randint(1, 2)
            a = RingMatrix(ring, r, c, [rng.randrange(m) for _ in range(r * c)])
            b = RingMatrix(ring, r, 1, [rng.randrange(m) for _ in range(r)])
            solvable = any(
                mat_mul(a, RingMatrix(ring, c, 1, list(v))) == b
                for v in itertools.product(range(m), repeat=c)
            )
            x = solve_linear_system(a, b)
            assert (x is not None) == solvable
            if x is not None:
                assert mat_mul(a, x) == b

    def test_kernel_generators(self):
        a = M(ZZ, [[2, 4]])
        gens = kernel_generators(a)
        assert gens
        for g in gens:
            assert mat_mul(a, g).is_zero()

    def test_kernel_mod4(self):
        a = M(Zmod(4), [[2]])
        gens = kernel_generators(a)
        vals = {g[(0, 0)] for g in gens}
        assert 2 in vals

    def test_solve_with_kernel_covers_solutions(self):
        ring = Zmod(4)
        a = M(ring, [[2]])
        b = M(ring, [[2]])
        part, gens = solve_with_kernel(a, b)
        assert part is not None
        reachable = {part[(0, 0)]}
        for g in gens:
            for t in range(4):
                reachable.add((part[(0, 0)] + t * g[(0, 0)]) % 4)
        assert reachable == {1, 3}


class TestRings:
    def test_bad_modulus(self):
        with pytest.raises(ValueError):
            Zmod(1)

    def test_nonprime_field(self):
        with pytest.raises(ValueError):
            GF(6)

    def test_canon(self):
        assert Zmod(4).canon(-1) == 3
        assert ZZ.canon(-1) == -1

    def test_serialization_round_trip(self):
        for ring in (ZZ, QQ, Zmod(8), GF(5)):
            m = RingMatrix(ring, 2, 2, [ring.canon(x) for x in [1, -2, 3, 0]])
            assert RingMatrix.from_json(m.to_json()) == m
