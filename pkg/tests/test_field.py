import math
from fractions import Fraction as F

import pytest

from egb.field import (
    CyclotomicNumber,
    CyclotomicField,
    Matrix,
    QQ_FIELD,
    cyclo_from_rational,
    cyclo_inverse,
    cyclo_mul,
    cyclo_one,
    cyclo_zero,
    cyclo_zeta,
    kernel_basis,
    primitive_roots,
    rank,
    solve_linear,
)

from conftest import rand_frac


def rand_cyclo(rng, p, lo=-4, hi=4):
    return CyclotomicNumber(p, tuple(rand_frac(rng, lo, hi, 3) for _ in range(p - 1)))


class TestCycloArithmetic:
    def test_zeta_squared_p3(self):
        z = cyclo_zeta(3)
        assert z * z == CyclotomicNumber(3, (F(-1), F(-1)))  # zeta^2 = -1 - zeta

    def test_inverse_witness_p3(self):
        z = cyclo_zeta(3)
        assert (cyclo_one(3) + z) * (-z) == cyclo_one(3)
        assert cyclo_inverse(cyclo_one(3) + z) == -z

    def test_p2_is_sign_arithmetic(self):
        minus_one = cyclo_zeta(2)
        assert minus_one == cyclo_from_rational(2, -1)
        assert cyclo_mul(minus_one, minus_one) == cyclo_one(2)
        assert cyclo_inverse(minus_one) == minus_one

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_identity_inverse(self, p):
        assert cyclo_inverse(cyclo_one(p)) == cyclo_one(p)

    def test_mismatched_p_rejected(self):
        with pytest.raises(ValueError):
            cyclo_mul(cyclo_zeta(3), cyclo_zeta(5))

    def test_inverse_of_zero_rejected(self):
        with pytest.raises(ZeroDivisionError):
            cyclo_inverse(cyclo_zero(3))

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_root_of_unity_relations(self, p):
        z = cyclo_zeta(p)
        assert (z ** p) == cyclo_one(p)
        total = cyclo_zero(p)
        for k in range(p):
            total = total + cyclo_zeta(p, k)
        assert total.is_zero()
        for k in range(1, p):
            assert not (cyclo_zeta(p, k) - cyclo_one(p)).is_zero()

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_field_axioms_sampled(self, rng, p):
        for _ in range(60):
            a, b, c = (rand_cyclo(rng, p) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            if not a.is_zero():
                assert a * cyclo_inverse(a) == cyclo_one(p)
                assert cyclo_inverse(cyclo_inverse(a)) == a

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_no_root_sampling(self, rng, p):
        """x^p = zeta^q has no solution for gcd(q, p) = 1: sampled heavily."""
        targets = [cyclo_zeta(p, q) for q in range(1, p) if math.gcd(q, p) == 1]
        count = 0
        while count < 1000:
            v = rand_cyclo(rng, p, -5, 5)
            if v.is_zero():
                continue
            count += 1
            vp = v ** p
            for t in targets:
                assert not (vp - t).is_zero()

    def test_unsupported_p_rejected(self):
        with pytest.raises(ValueError):
            cyclo_zeta(17)
        with pytest.raises(ValueError):
            cyclo_zeta(4)


class TestLinearAlgebra:
    def test_kernel_of_zero_matrix(self):
        assert len(kernel_basis(Matrix.zeros(QQ_FIELD, 2, 2))) == 2

    def test_kernel_of_identity_empty(self):
        assert kernel_basis(Matrix.identity(QQ_FIELD, 3)) == []

    def test_swap_eigenvector(self):
        field = CyclotomicField(2)
        a = Matrix.from_rows(field, [[0, 1], [1, 0]])
        m = a - Matrix.identity(field, 2).scale(cyclo_zeta(2))
        basis = kernel_basis(m)
        assert len(basis) == 1
        v = basis[0]
        # spans (1, -1)
        assert (v[0] + v[1]).is_zero()
        assert not v[0].is_zero()

    def test_rank_identity(self):
        assert rank(Matrix.identity(QQ_FIELD, 3)) == 3

    def test_solve_diagonal(self):
        m = Matrix.from_rows(QQ_FIELD, [[2, 0], [0, 2]])
        assert solve_linear(m, (F(1), F(1))) == (F(1, 2), F(1, 2))

    def test_solve_roundtrip_random(self, rng):
        for _ in range(25):
            m = Matrix.from_rows(
                QQ_FIELD, [[rand_frac(rng) for _ in range(4)] for _ in range(4)]
            )
            v = tuple(rand_frac(rng) for _ in range(4))
            sol = m.solve(v)
            if sol is not None:
                assert m.apply(sol) == v

    def test_solve_certifies_no_solution(self):
        m = Matrix.from_rows(QQ_FIELD, [[1, 0], [1, 0]])
        assert m.solve((F(0), F(1))) is None

    def test_rank_nullity_random(self, rng):
        for _ in range(25):
            rows, cols = rng.randint(1, 5), rng.randint(1, 5)
            m = Matrix.from_rows(
                QQ_FIELD,
                [[rand_frac(rng, -3, 3, 2) for _ in range(cols)] for _ in range(rows)],
            )
            assert m.rank() + len(m.kernel_basis()) == cols
            for v in m.kernel_basis():
                assert all(x == 0 for x in m.apply(v))

    def test_rank_nullity_cyclotomic(self, rng):
        field = CyclotomicField(3)
        for _ in range(10):
            rows, cols = rng.randint(1, 4), rng.randint(1, 4)
            m = Matrix.from_rows(
                field,
                [[rand_cyclo(rng, 3, -2, 2) for _ in range(cols)] for _ in range(rows)],
            )
            assert m.rank() + len(m.kernel_basis()) == cols

    def test_shape_mismatch_rejected(self):
        a = Matrix.identity(QQ_FIELD, 2)
        b = Matrix.zeros(QQ_FIELD, 3, 3)
        with pytest.raises(ValueError):
            a @ Matrix.zeros(QQ_FIELD, 3, 2)
        with pytest.raises(ValueError):
            a + b
        with pytest.raises(ValueError):
            a.solve((F(1), F(2), F(3)))

    def test_det_and_inverse(self, rng):
        for _ in range(10):
            m = Matrix.from_rows(
                QQ_FIELD, [[rand_frac(rng, -3, 3, 2) for _ in range(3)] for _ in range(3)]
            )
            if m.det() != 0:
                assert m @ m.inverse() == Matrix.identity(QQ_FIELD, 3)

    def test_empty_shapes(self):
        m = Matrix.zeros(QQ_FIELD, 0, 3)
        assert m.rank() == 0
        assert len(m.kernel_basis()) == 3
        n = Matrix.zeros(QQ_FIELD, 3, 0)
        assert n.rank() == 0
        assert n.kernel_basis() == []
        assert Matrix.zeros(QQ_FIELD, 0, 0).det() == F(1)

    def test_primitive_roots_count(self):
        assert len(primitive_roots(5)) == 4
        for z in primitive_roots(5):
            assert (z ** 5) == cyclo_one(5)
