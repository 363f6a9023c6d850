import random
from fractions import Fraction

import pytest

from killingtensors import (
    AlmostAbelianAlgebra,
    Endomorphism,
    MetricLieAlgebra,
    SymTensor,
    apply_derivation,
    sum_of_squares,
    sym2_from_endo,
)
from killingtensors.exactlinalg import dot
from conftest import derivation_suite, koszul_oracle, random_tensor, random_vector

J2 = Endomorphism.from_rows([[0, -1], [1, 0]])
DIAG = Endomorphism.diagonal([1, -1])


def heisenberg3():
    c = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1][2] = Fraction(1)
    c[1][0][2] = Fraction(-1)
    return MetricLieAlgebra(c)


def so3():
    c = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[i][j][k] = Fraction(1)
        c[j][i][k] = Fraction(-1)
    return MetricLieAlgebra(c)


class TestConstruction:
    def test_jacobi_violation_rejected(self):
        c = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
        c[0][1][2] = Fraction(1)
        c[1][0][2] = Fraction(-1)
        c[1][2][1] = Fraction(1)
        c[2][1][1] = Fraction(-1)
        with pytest.raises(ValueError, match="Jacobi"):
            MetricLieAlgebra(c)

    def test_antisymmetry_violation_rejected(self):
        c = [[[Fraction(0)] * 2 for _ in range(2)] for _ in range(2)]
        c[0][1][0] = Fraction(1)
        c[1][0][0] = Fraction(1)
        with pytest.raises(ValueError, match="antisymmetric"):
            MetricLieAlgebra(c)

    def test_valid_algebras_accepted(self):
        heisenberg3()
        so3()
        MetricLieAlgebra.abelian(4)


class TestAdjoint:
    def test_abelian_ad_is_zero(self):
        alg = MetricLieAlgebra.abelian(3)
        assert alg.ad((Fraction(1), Fraction(2), Fraction(-1))).is_zero()

    def test_almost_abelian_ad_of_b(self):
        alg = AlmostAbelianAlgebra(DIAG)
        got = alg.ad((Fraction(1), Fraction(0), Fraction(0)))
        assert got == alg.derivation_full

    def test_almost_abelian_ad_of_ideal_vector(self):
        alg = AlmostAbelianAlgebra(DIAG)
        h1 = (Fraction(0), Fraction(1), Fraction(0))
        got = alg.ad(h1)
        # only the b-column is populated, with -D(h1)
        assert got.column(0) == (Fraction(0), Fraction(-1), Fraction(0))
        assert got.column(1) == (Fraction(0),) * 3
        assert got.column(2) == (Fraction(0),) * 3

    def test_ad_star_is_transpose(self):
        rng = random.Random(2)
        for d in derivation_suite(per_kind=1):
            alg = AlmostAbelianAlgebra(d)
            x = random_vector(rng, alg.dim)
            assert alg.ad_star(x) == alg.ad(x).transpose()

    def test_ad_linear_in_argument(self):
        alg = so3()
        rng = random.Random(3)
        x, y = random_vector(rng, 3), random_vector(rng, 3)
        lhs = alg.ad(tuple(a + b for a, b in zip(x, y)))
        assert lhs == alg.ad(x) + alg.ad(y)


class TestConnection:
    def test_abelian_connection_vanishes(self):
        alg = MetricLieAlgebra.abelian(3)
        rng = random.Random(5)
        assert alg.nabla(random_vector(rng, 3), random_vector(rng, 3)) == (Fraction(0),) * 3

    def test_b_direction_geodesic(self):
        alg = AlmostAbelianAlgebra(DIAG)
        b = (Fraction(1), Fraction(0), Fraction(0))
        assert alg.nabla(b, b) == (Fraction(0),) * 3

    def test_ideal_self_derivative_hits_b(self):
        # Koszul gives nabla_{h1} h1 = b for D = diag(1, -1)
        alg = AlmostAbelianAlgebra(DIAG)
        h1 = (Fraction(0), Fraction(1), Fraction(0))
        got = alg.nabla(h1, h1)
        assert got == (Fraction(1), Fraction(0), Fraction(0))
        assert got == koszul_oracle(alg, h1, h1)

    def test_against_koszul_oracle(self):
        rng = random.Random(7)
        algebras = [AlmostAbelianAlgebra(d) for d in derivation_suite(per_kind=1)]
        algebras += [heisenberg3(), so3()]
        for alg in algebras:
            x, y = random_vector(rng, alg.dim), random_vector(rng, alg.dim)
            assert alg.nabla(y, x) == koszul_oracle(alg, y, x)

    def test_metric_compatibility_and_torsion(self):
        rng = random.Random(11)
        algebras = [AlmostAbelianAlgebra(d) for d in derivation_suite(per_kind=1)]
        algebras.append(so3())
        for alg in algebras:
            x = random_vector(rng, alg.dim)
            y = random_vector(rng, alg.dim)
            z = random_vector(rng, alg.dim)
            assert dot(alg.nabla(y, x), z) + dot(x, alg.nabla(y, z)) == 0
            lhs = tuple(a - b for a, b in zip(alg.nabla(y, x), alg.nabla(x, y)))
            assert lhs == alg.bracket(y, x)


class TestKillingOperator:
    def test_basis_squares_are_killing(self):
        for alg in [AlmostAbelianAlgebra(d) for d in derivation_suite(per_kind=1)] + [so3()]:
            assert alg.killing_operator(sum_of_squares(alg.dim)).is_zero()

    def test_degree_one_formula(self):
        rng = random.Random(13)
        for d in derivation_suite(per_kind=1):
            alg = AlmostAbelianAlgebra(d)
            x = random_vector(rng, alg.dim)
            got = alg.killing_operator(SymTensor.from_vector(alg.dim, x))
            assert got == -2 * sym2_from_endo(alg.ad(x))

    def test_b_value_two_ways(self):
        for d in derivation_suite(per_kind=2):
            alg = AlmostAbelianAlgebra(d)
            db = alg.killing_operator(alg.b_tensor())
            assert db == -2 * sym2_from_endo(alg.derivation_full)
            half = apply_derivation(alg.derivation_full, alg.ideal_twice_metric)
            assert db == half * Fraction(-1, 2)

    def test_leibniz(self):
        rng = random.Random(17)
        for d in derivation_suite(per_kind=1, sizes=(1, 2)):
            alg = AlmostAbelianAlgebra(d)
            a = random_tensor(rng, alg.dim, rng.randint(0, 2))
            b = random_tensor(rng, alg.dim, rng.randint(0, 2))
            lhs = alg.killing_operator(a * b)
            assert lhs == alg.killing_operator(a) * b + a * alg.killing_operator(b)

    def test_agrees_with_connection_route(self):
        rng = random.Random(19)
        algebras = [AlmostAbelianAlgebra(d) for d in derivation_suite(per_kind=2)]
        algebras += [heisenberg3(), so3()]
        for alg in algebras:
            k = random_tensor(rng, alg.dim, rng.randint(0, 3))
            assert alg.killing_operator(k) == alg.killing_operator_via_nabla(k)


class TestBruteForceSolver:
    def test_abelian_degree_one_is_everything(self):
        space = MetricLieAlgebra.abelian(3).killing_space_bruteforce(1)
        assert space.dimension == 3

    def test_rotation_degree_one_is_spanned_by_b(self):
        space = AlmostAbelianAlgebra(J2).killing_space_bruteforce(1)
        assert space.dimension == 1
        assert space.basis[0] == SymTensor.basis(3, 0)

    def test_diagonal_degree_two(self):
        space = AlmostAbelianAlgebra(DIAG).killing_space_bruteforce(2)
        assert space.dimension == 2
        assert space.basis == (sum_of_squares(3), SymTensor.monomial(3, (1, 2)))

    def test_bi_invariant_metric_all_vectors_killing(self):
        assert so3().killing_space_bruteforce(1).dimension == 3

    def test_every_basis_element_annihilated(self):
        rng = random.Random(23)
        for d in derivation_suite(per_kind=1):
            alg = AlmostAbelianAlgebra(d)
            p = rng.randint(0, 3)
            for t in alg.killing_space_bruteforce(p).basis:
                assert alg.killing_operator(t).is_zero()

    def test_caps_enforced(self):
        alg = MetricLieAlgebra.abelian(2)
        with pytest.raises(ValueError):
            alg.killing_space_bruteforce(9)
        with pytest.raises(ValueError):
            MetricLieAlgebra.abelian(7).killing_space_bruteforce(1)
        # explicit override works
        assert MetricLieAlgebra.abelian(7).killing_space_bruteforce(1, dim_cap=7).dimension == 7
