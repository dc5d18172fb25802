import math
import random
from fractions import Fraction

import pytest

from cuspspec.numkit import (
    ExactComplex,
    IdealSpec,
    OrderSpec,
    QuadInt,
    QuadSurd,
    format_quadint,
    ideal_contains,
    ideal_is_unit,
    parse_quadint,
    quad_divmod,
    quad_norm,
    quad_xgcd,
    sqrt_fraction,
    unit_ideal,
)

O1 = OrderSpec.maximal(1)
O2 = OrderSpec.maximal(2)
O3 = OrderSpec.maximal(3)


def q1(a, b, order=O1):
    return QuadInt(a, b, order)


class TestOrderSpec:
    def test_maximal_omega_convention(self):
        assert (O1.omega_u, O1.omega_v) == (0, 2)  # omega = i
        assert (O3.omega_u, O3.omega_v) == (1, 1)  # omega = (1+i*sqrt3)/2
        assert O1.is_maximal and O3.is_maximal

    def test_non_maximal_order_accepted(self):
        sub = OrderSpec.with_omega(3, 0, 2)  # Z[i*sqrt3], conductor 2
        assert not sub.is_maximal
        assert sub.norm_omega == 3

    def test_rejects_bad_omega(self):
        with pytest.raises(ValueError):
            OrderSpec.with_omega(1, 1, 1)  # (1+i)/2 not an algebraic integer
        with pytest.raises(ValueError):
            OrderSpec.with_omega(4, 0, 2)  # m not squarefree
        with pytest.raises(ValueError):
            OrderSpec.with_omega(1, 0, -2)  # Im omega < 0

    def test_units(self):
        assert len(O1.units()) == 4
        assert len(O2.units()) == 2
        assert len(O3.units()) == 6
        assert all(u.norm() == 1 for u in O3.units())


class TestQuadNorm:
    def test_examples(self):
        assert quad_norm(q1(1, 1)) == 2  # |1+i|^2
        assert quad_norm(q1(0, 0)) == 0
        # omega = (1+i*sqrt3)/2: omega * conj(omega) = (1+3)/4
        assert quad_norm(O3.omega()) == 1

    def test_norm_matches_embedding(self):
        rng = random.Random(1)
        for order in (O1, O2, O3):
            for _ in range(50):
                x = QuadInt(rng.randint(-30, 30), rng.randint(-30, 30), order)
                assert math.isclose(
                    quad_norm(x), abs(x.to_complex()) ** 2, rel_tol=1e-12, abs_tol=1e-9
                )

    def test_norm_zero_iff_zero(self):
        rng = random.Random(19)
        for order in (O1, O2, O3):
            assert quad_norm(order.zero()) == 0
            for _ in range(50):
                x = QuadInt(rng.randint(-20, 20), rng.randint(-20, 20), order)
                assert (quad_norm(x) == 0) == x.is_zero()
                assert quad_norm(x) >= 0

    def test_multiplicativity(self):
        rng = random.Random(2)
        for order in (O1, O2, O3, OrderSpec.with_omega(3, 0, 2)):
            for _ in range(100):
                x = QuadInt(rng.randint(-50, 50), rng.randint(-50, 50), order)
                y = QuadInt(rng.randint(-50, 50), rng.randint(-50, 50), order)
                assert quad_norm(x * y) == quad_norm(x) * quad_norm(y)

    def test_conj_is_ring_involution(self):
        rng = random.Random(3)
        for _ in range(100):
            x = q1(rng.randint(-9, 9), rng.randint(-9, 9), O3)
            y = q1(rng.randint(-9, 9), rng.randint(-9, 9), O3)
            assert (x * y).conj() == x.conj() * y.conj()
            assert x.conj().conj() == x
            assert (x + y).conj() == x.conj() + y.conj()

    def test_mul_commutative_associative(self):
        rng = random.Random(4)
        for _ in range(60):
            x, y, z = (
                q1(rng.randint(-9, 9), rng.randint(-9, 9), O3) for _ in range(3)
            )
            assert x * y == y * x
            assert (x * y) * z == x * (y * z)


class TestIdeals:
    def test_membership_examples(self):
        ideal = IdealSpec.from_generators((q1(1, 1),))  # <1+i>
        assert ideal_contains(ideal, q1(2, 0))  # 2 = (1+i)(1-i)
        assert not ideal_contains(ideal, q1(1, 0))
        assert ideal_contains(unit_ideal(O1), q1(7, -5))

    def test_is_unit_examples(self):
        assert ideal_is_unit((q1(0, 1), q1(1, 1)))  # i is a unit
        assert not ideal_is_unit((q1(2, 0), q1(1, 1)))
        assert ideal_is_unit((q1(1, 0),))
        with pytest.raises(ValueError):
            ideal_is_unit((q1(0, 0),))

    def test_two_one_plus_i_has_index_two(self):
        ideal = IdealSpec.from_generators((q1(2, 0), q1(1, 1)))
        assert ideal.index() == 2  # <2, 1+i> = <1+i>

    def test_module_closure(self):
        rng = random.Random(5)
        for order in (O1, O3):
            gens = (
                QuadInt(rng.randint(-9, 9), rng.randint(1, 9), order),
                QuadInt(rng.randint(-9, 9), rng.randint(-9, 0), order),
            )
            ideal = IdealSpec.from_generators(gens)
            members = [g for g in gens] + list(ideal.basis_elements())
            for _ in range(60):
                x, y = rng.choice(members), rng.choice(members)
                r = QuadInt(rng.randint(-5, 5), rng.randint(-5, 5), order)
                assert ideal.contains(x + y)
                assert ideal.contains(r * x)

    def test_basis_idempotent(self):
        rng = random.Random(6)
        for _ in range(30):
            gens = (
                q1(rng.randint(-20, 20), rng.randint(1, 20)),
                q1(rng.randint(-20, 20), rng.randint(-20, 20)),
            )
            ideal = IdealSpec.from_generators(gens)
            again = IdealSpec.from_generators(ideal.basis_elements())
            assert (again.basis_a, again.basis_b, again.basis_c) == (
                ideal.basis_a,
                ideal.basis_b,
                ideal.basis_c,
            )

    def test_basis_mutual_membership(self):
        gens = (q1(3, 4), q1(5, -2))
        ideal = IdealSpec.from_generators(gens)
        # generators lie in the basis span
        for g in gens:
            assert ideal.contains(g)
        # basis elements lie in the module generated by the generators:
        # brute-force small order-combinations r1*g1 + r2*g2
        basis = ideal.basis_elements()
        span = set()
        rng = range(-6, 7)
        for a1 in rng:
            for b1 in rng:
                for a2 in rng:
                    for b2 in rng:
                        v = q1(a1, b1) * gens[0] + q1(a2, b2) * gens[1]
                        span.add(v.coords())
        for e in basis:
            assert e.coords() in span


class TestLatticeEnumeration:
    def test_norm_enumeration_complete_and_sorted(self):
        from cuspspec.numkit import ideal_elements_with_norm_up_to, unit_ideal

        for order in (O1, O3):
            got = list(ideal_elements_with_norm_up_to(unit_ideal(order), 20))
            brute = sorted(
                (
                    QuadInt(a, b, order)
                    for a in range(-10, 11)
                    for b in range(-10, 11)
                    if (a, b) != (0, 0) and QuadInt(a, b, order).norm() <= 20
                ),
                key=lambda x: (x.norm(), x.b, x.a),
            )
            assert [g.coords() for g in got] == [g.coords() for g in brute]
            norms = [g.norm() for g in got]
            assert norms == sorted(norms)

    def test_ideal_enumeration_respects_membership(self):
        from cuspspec.numkit import ideal_elements_with_norm_up_to

        ideal = IdealSpec.from_generators((q1(1, 1),))
        got = list(ideal_elements_with_norm_up_to(ideal, 30))
        assert got and all(ideal.contains(x) for x in got)
        assert all(x.norm() % 2 == 0 for x in got)  # norms in <1+i> are even

    def test_disc_enumeration_complete(self):
        from cuspspec.numkit import lattice_points_in_disc, unit_ideal

        import random as _r

        rng = _r.Random(77)
        for order in (O1, O3):
            w = order.omega_complex()
            for _ in range(20):
                center = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
                radius = rng.uniform(0.3, 2.5)
                got = {p.coords() for p in lattice_points_in_disc(unit_ideal(order), center, radius)}
                for a in range(-12, 13):
                    for b in range(-12, 13):
                        inside = abs((a + b * w) - center) <= radius - 1e-9
                        if inside:
                            assert (a, b) in got

    def test_nearest_order_elements_contains_nearest(self):
        from cuspspec.numkit import nearest_order_elements

        import random as _r

        rng = _r.Random(78)
        for order in (O1, O2, O3):
            w = order.omega_complex()
            for _ in range(100):
                z = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
                cands = nearest_order_elements(order, z)
                best = min(abs(z - c.to_complex()) for c in cands)
                brute = min(
                    abs(z - (a + b * w)) for a in range(-9, 10) for b in range(-9, 10)
                )
                assert best <= brute + 1e-12


class TestEuclidean:
    @pytest.mark.parametrize("m", [1, 2, 3, 7, 11])
    def test_divmod_reduces_norm(self, m):
        order = OrderSpec.maximal(m)
        rng = random.Random(m)
        for _ in range(100):
            x = QuadInt(rng.randint(-40, 40), rng.randint(-40, 40), order)
            y = QuadInt(rng.randint(-15, 15), rng.randint(-15, 15), order)
            if y.is_zero():
                continue
            qq, r = quad_divmod(x, y)
            assert x == qq * y + r
            assert r.norm() < y.norm()

    def test_xgcd_generates_ideal(self):
        rng = random.Random(7)
        for m in (1, 2, 3, 7, 11):
            order = OrderSpec.maximal(m)
            for _ in range(40):
                x = QuadInt(rng.randint(-20, 20), rng.randint(-20, 20), order)
                y = QuadInt(rng.randint(-20, 20), rng.randint(-20, 20), order)
                if x.is_zero() and y.is_zero():
                    continue
                g, s, t = quad_xgcd(x, y)
                assert s * x + t * y == g
                ideal = IdealSpec.from_generators((x, y))
                assert ideal.contains(g)
                gen = IdealSpec.from_generators((g,))
                assert gen.contains(x) and gen.contains(y)


class TestQuadSurd:
    def test_golden_ratio_identity(self):
        phi = QuadSurd.make(Fraction(1, 2), Fraction(1, 2), 5)
        assert phi * phi == phi + 1
        assert phi + phi.inverse() == QuadSurd.sqrt_int(5)

    def test_comparisons_exact(self):
        a = QuadSurd.sqrt_int(2)  # 1.414...
        b = QuadSurd.make(Fraction(141421356, 100000000))
        assert b < a
        assert a > 1 and a < 2
        assert QuadSurd.make(Fraction(3, 2)) > a

    def test_floor(self):
        rng = random.Random(8)
        for _ in range(200):
            p = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
            q = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
            d = rng.choice([2, 3, 5, 7, 13])
            s = QuadSurd.make(p, q, d)
            f = float(p) + float(q) * math.sqrt(d)
            if abs(f - round(f)) > 1e-6:
                assert s.floor() == math.floor(f)

    def test_inverse_roundtrip(self):
        s = QuadSurd.make(Fraction(3, 7), Fraction(-2, 5), 13)
        assert s.inverse().inverse() == s
        one = s * s.inverse()
        assert one.is_rational() and one.p == 1

    def test_square_discriminant_normalizes(self):
        s = QuadSurd.make(1, 2, 9)  # 1 + 2*3
        assert s.is_rational() and s.p == 7

    def test_mixed_fields_rejected(self):
        with pytest.raises(ValueError):
            QuadSurd.sqrt_int(2) + QuadSurd.sqrt_int(3)

    def test_bounds_certified(self):
        s = QuadSurd.make(Fraction(1, 3), Fraction(5, 2), 7)
        lo, hi = s.bounds(100)
        assert lo <= s.to_fraction(200) <= hi
        assert hi - lo < Fraction(1, 2**90)


class TestSqrtFraction:
    def test_enclosure(self):
        rng = random.Random(9)
        for _ in range(100):
            x = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**4))
            lo, hi = sqrt_fraction(x, 80)
            assert lo * lo <= x <= hi * hi
            assert hi - lo <= Fraction(1, 2**80)


class TestTextEncoding:
    def test_roundtrip(self):
        rng = random.Random(10)
        for _ in range(50):
            x = q1(rng.randint(-99, 99), rng.randint(-99, 99))
            assert parse_quadint(format_quadint(x), O1) == x

    def test_parse_forms(self):
        assert parse_quadint("3", O1) == q1(3, 0)
        assert parse_quadint("-2+5*w", O1) == q1(-2, 5)
        assert parse_quadint("1-1*w", O1) == q1(1, -1)
        assert parse_quadint("w", O1) == q1(0, 1)
        assert parse_quadint("-w", O1) == q1(0, -1)


class TestExactComplex:
    def test_field_membership(self):
        # (1 + i*sqrt3)/2 lies in Q(i*sqrt3) but not in Q(i)
        x = ExactComplex.make(Fraction(1, 2), QuadSurd.make(0, Fraction(1, 2), 3))
        assert x.is_in_quadratic_field(3)
        assert not x.is_in_quadratic_field(1)
        # rational + rational*i is exactly the Gaussian field
        y = ExactComplex.make(Fraction(1, 2), Fraction(1, 3))
        assert y.is_in_quadratic_field(1)
        assert not y.is_in_quadratic_field(2)
        # real rationals are in every field
        z = ExactComplex.make(Fraction(22, 7))
        assert z.is_in_quadratic_field(1) and z.is_in_quadratic_field(5)

    def test_arithmetic_matches_floats(self):
        a = ExactComplex.make(QuadSurd.sqrt_int(2), Fraction(1, 3))
        b = ExactComplex.make(Fraction(-1, 2), QuadSurd.make(1, 2, 2))
        for op in ("__add__", "__sub__", "__mul__", "__truediv__"):
            exact = getattr(a, op)(b).to_complex()
            approx = getattr(a.to_complex(), op)(b.to_complex())
            assert abs(exact - approx) < 1e-12
