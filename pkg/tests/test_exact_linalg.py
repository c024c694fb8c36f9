import itertools
import random

import pytest

from torfan.exact_linalg import (
    complement,
    det,
    hermite_normal_form,
    hnf_basis,
    in_lattice,
    is_unimodular,
    kernel_basis,
    lattice_coords,
    primitive,
    saturate,
    smith_normal_form,
    solve_rational,
)

I2 = ((1, 0), (0, 1))


def span_member_bruteforce(rows, v, box=6):
    """Oracle: is v an integer combination of the rows with coefficients
    in [-box, box]?"""
    k = len(rows)
    n = len(v)
    for coeffs in itertools.product(range(-box, box + 1), repeat=k):
        if all(sum(coeffs[i] * rows[i][j] for i in range(k)) == v[j] for j in range(n)):
            return True
    return False


def matmul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0])))
        for i in range(len(a))
    )


class TestHermite:
    def test_identity(self):
        h, t = hermite_normal_form(I2)
        assert h == I2 and t == I2

    def test_already_hnf(self):
        h, t = hermite_normal_form(((2, 0), (0, 3)))
        assert h == ((2, 0), (0, 3))
        assert t == I2

    def test_row_space_preserved(self):
        m = ((2, 4), (1, 3))
        h, t = hermite_normal_form(m)
        assert matmul(t, m) == h
        assert abs(det(t)) == 1
        # mutual membership of each row in the other's integer row span
        for row in m:
            assert span_member_bruteforce(h, row)
        for row in h:
            assert span_member_bruteforce(m, row)

    def test_idempotent_and_unimodular(self):
        r = random.Random(5)
        for _ in range(40):
            nr, nc = r.randint(1, 4), r.randint(1, 4)
            m = tuple(
                tuple(r.randint(-9, 9) for _ in range(nc)) for _ in range(nr)
            )
            h, t = hermite_normal_form(m)
            assert matmul(t, m) == h
            assert abs(det(t)) == 1
            h2, t2 = hermite_normal_form(h)
            assert h2 == h

    def test_pivots_canonical(self):
        h, _ = hermite_normal_form(((0, 2, 5), (0, 0, 7)))
        # pivots positive, entry above second pivot reduced into [0, 7)
        assert h[0][1] == 2 and 0 <= h[0][2] < 7


class TestSmith:
    def test_zero(self):
        d, left, right = smith_normal_form(((0, 0), (0, 0)))
        assert d == ((0, 0), (0, 0))
        assert abs(det(left)) == 1 and abs(det(right)) == 1

    def test_diag_2_3(self):
        d, left, right = smith_normal_form(((2, 0), (0, 3)))
        assert (d[0][0], d[1][1]) == (1, 6)
        assert matmul(matmul(left, ((2, 0), (0, 3))), right) == d

    def test_identity(self):
        d, left, right = smith_normal_form(I2)
        assert d == I2 and left == I2 and right == I2

    def test_divisibility_chain_random(self):
        r = random.Random(6)
        for _ in range(40):
            nr, nc = r.randint(1, 4), r.randint(1, 4)
            m = tuple(tuple(r.randint(-9, 9) for _ in range(nc)) for _ in range(nr))
            d, left, right = smith_normal_form(m)
            assert matmul(matmul(left, m), right) == d
            assert abs(det(left)) == 1 and abs(det(right)) == 1
            diag = [d[i][i] for i in range(min(nr, nc))]
            for i in range(nr):
                for j in range(nc):
                    if i != j:
                        assert d[i][j] == 0
            for a, b in zip(diag, diag[1:]):
                assert a >= 0
                if a:
                    assert b % a == 0
                else:
                    assert b == 0


class TestSaturate:
    def test_doubled_axis(self):
        assert saturate(((2, 0),)) == ((1, 0),)

    def test_already_saturated(self):
        assert saturate(I2) == I2

    def test_diagonal(self):
        assert saturate(((2, 2),)) == ((1, 1),)

    def test_doubled_axis_bruteforce(self):
        # every v with 2v in the span must be in the saturation
        sat = saturate(((2, 0),))
        for v in itertools.product(range(-4, 5), repeat=2):
            doubled = (2 * v[0], 2 * v[1])
            if span_member_bruteforce(((2, 0),), doubled):
                assert in_lattice(sat, v)

    def test_idempotent_and_contains_input(self):
        r = random.Random(7)
        for _ in range(30):
            nr, nc = r.randint(1, 3), r.randint(1, 4)
            m = tuple(tuple(r.randint(-5, 5) for _ in range(nc)) for _ in range(nr))
            s = saturate(m, cols=nc)
            assert saturate(s, cols=nc) == s if s else True
            for row in m:
                assert in_lattice(s if s else ((0,) * nc,), row)


class TestComplement:
    def test_axis(self):
        comp = complement(((1, 0),))
        assert len(comp) == 1
        assert abs(det(((1, 0),) + comp)) == 1

    def test_full_basis(self):
        assert complement(I2) == ()

    def test_diagonal(self):
        comp = complement(((1, 1),))
        assert abs(det(((1, 1),) + comp)) == 1

    def test_rejects_unsaturated(self):
        with pytest.raises(ValueError):
            complement(((2, 0),))
        with pytest.raises(ValueError):
            complement(((1, 0), (1, 0)))

    def test_random_direct_sums(self):
        r = random.Random(8)
        for _ in range(30):
            nc = r.randint(2, 4)
            nr = r.randint(1, nc)
            m = tuple(tuple(r.randint(-5, 5) for _ in range(nc)) for _ in range(nr))
            s = saturate(m, cols=nc)
            if not s:
                continue
            comp = complement(s, cols=nc)
            assert abs(det(s + comp)) == 1


class TestHelpers:
    def test_primitive(self):
        assert primitive((2, 4, -6)) == (1, 2, -3)
        assert primitive((0, 0)) == (0, 0)
        assert primitive((-3,)) == (-3,)  # gcd 3: (-1,)? no: gcd=3
        # direction is kept
        assert primitive((-4, -2)) == (-2, -1)

    def test_kernel(self):
        k = kernel_basis(((1, 1, 1),))
        assert len(k) == 2
        for row in k:
            assert sum(row) == 0

    def test_solve_and_coords(self):
        assert lattice_coords(((2, 0), (0, 1)), (4, 3)) == (2, 3)
        assert lattice_coords(((2, 0), (0, 1)), (3, 0)) is None
        assert solve_rational(((1, 1),), (2, 3)) is None

    def test_in_lattice(self):
        assert in_lattice(((2, 4), (1, 3)), (1, 1))
        assert in_lattice(((2, 0),), (4, 0))
        assert not in_lattice(((2, 0),), (3, 0))

    def test_det(self):
        assert det(((2, 0), (0, 3))) == 6
        assert det(((0, 1), (1, 0))) == -1
        assert is_unimodular(((1, 5), (0, 1)))
