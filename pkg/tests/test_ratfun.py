import pytest

from dshuffle.rationals import QQ
from dshuffle.ratfun import (ArityMismatch, ParseError, PoleOrderError,
                             Polynomial, RationalFunction, linear_form,
                             parse, rf_sum_a)
from dshuffle.gens import psi_zero_component, s_d

from conftest import make_rng, mono, random_rf


def rf(text, arity=None):
    return parse(text, arity=arity)


class TestAdd:
    def test_additive_inverse(self):
        f = rf("1/(x1)")
        assert (f + f.scale(-1)).is_zero()

    def test_common_denominator(self):
        got = rf("1/(x1)", 2) + rf("1/(x2)", 2)
        assert got.equals(rf("(x1^1 + x2^1)/(x1*x2)"))

    def test_sum_matches_weight_zero_component(self):
        # brute-force oracle: evaluate both sides at sample points
        a = rf("2/(x1*x2)")
        b = rf("1/(x1*(x1-x2))")
        total = a + b
        for pt in [(QQ(2), QQ(1)), (QQ(5), QQ(3)), (QQ(-7), QQ(2))]:
            assert total.evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)
        assert total.equals(s_d(2))
        assert total.equals(psi_zero_component(2).scale(3))

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatch):
            rf("1/(x1)") + rf("1/(x2)")


class TestMulScale:
    def test_cancellation(self):
        f = rf("1/(x1)")
        g = rf("x1")
        assert (f * g).equals(RationalFunction.const(1, 1))

    def test_scale_zero(self):
        assert random_rf(make_rng(1), 3).scale(0).is_zero()

    def test_partial_cancellation(self):
        f = rf("1/(x2-x1)")
        sq = rf("x2^2 + -2*x1^1x2^1 + x1^2", 2)
        assert (f * sq).equals(rf("x2 + -1*x1", 2))

    def test_weight_additive_on_homogeneous(self, rng):
        for _ in range(5):
            f = random_rf(rng, 2, num_degree=2, terms=1)
            g = random_rf(rng, 2, num_degree=3, terms=1)
            prod = f * g
            if prod.is_zero():
                continue
            assert prod.degree() == f.degree() + g.degree()
            assert prod.weight() == f.weight() + g.weight() - 2


class TestRingAxioms:
    def test_randomized(self):
        rng = make_rng(77)
        for _ in range(6):
            f = random_rf(rng, 2, 2, 1)
            g = random_rf(rng, 2, 1, 2)
            h = random_rf(rng, 2, 2, 2)
            assert ((f + g) + h).equals(f + (g + h))
            assert (f + g).equals(g + f)
            assert ((f * g) * h).equals(f * (g * h))
            assert (f * g).equals(g * f)
            assert (f * (g + h)).equals(f * g + f * h)

    def test_normal_form_equality_cross_multiplied(self):
        rng = make_rng(99)
        for _ in range(6):
            f = random_rf(rng, 2, 2, 2)
            g = random_rf(rng, 2, 2, 2)
            # equality iff cross-multiplied polynomial identity
            lhs = f.num
            for form, k in g.den.items():
                for _ in range(k):
                    lhs = lhs.mul_form(form)
            rhs = g.num
            for form, k in f.den.items():
                for _ in range(k):
                    rhs = rhs.mul_form(form)
            assert f.equals(g) == (lhs == rhs)


class TestSubstitute:
    def test_sharp_on_x1x2(self):
        f = rf("x1^1x2^1", 2)
        from dshuffle.dsh_check import sharp_eval
        got = sharp_eval(f, (1, 2))
        assert got.equals(rf("x1^2 + x1^1x2^1", 2))

    def test_shift_square(self):
        from dshuffle.ratfun import diff_vector
        f = rf("x1^2")
        got = f.substitute_affine([diff_vector(2, 2, 1)], 2)
        assert got.equals(rf("x2^2 + -2*x1^1x2^1 + x1^2", 2))

    def test_sigma_image_of_monomial(self):
        from dshuffle.series import sigma
        f = rf("x1^2x2^1", 2)
        # r = 2: positive sign, arguments (x2-x1, x2)
        got = sigma(f)
        expect = rf("x2^2 + -2*x1^1x2^1 + x1^2", 2) * rf("x2", 2)
        assert got.equals(expect)

    def test_denominator_vanishes(self):
        from dshuffle.ratfun import var_vector
        f = rf("1/(x2-x1)")
        images = [var_vector(2, 1), var_vector(2, 1)]
        with pytest.raises(PoleOrderError):
            f.substitute_affine(images, 2)


class TestResidue:
    def test_simple_pole_at_zero(self):
        assert rf("1/(x1)").residue(1).equals(RationalFunction.const(1, 1))

    def test_two_variable(self):
        got = rf("1/(x1*x2)").residue(1)
        assert got.equals(rf("1/(x2)", 2))

    def test_s_d_residue_closed_form(self):
        # residue of the weight-zero element along x_i = x_j
        for d in (2, 3):
            for j in range(1, d):
                for i in range(j + 1, d + 1):
                    got = s_d(d).residue(i, j)
                    den = {}
                    sign = 1
                    for a in range(0, d + 1):
                        if a in (i, j):
                            continue
                        hi, lo = (a, j) if a > j else (j, a)
                        if a < j:
                            sign = -sign
                        f = linear_form(hi, lo, d)
                        den[f] = den.get(f, 0) + 1
                    expect = RationalFunction.from_num_den(
                        Polynomial.const(d, sign * (i - j)), den)
                    assert got.equals(expect)

    def test_order_two_pole_raises(self):
        with pytest.raises(PoleOrderError):
            rf("1/(x1*x1)").residue(1)

    def test_linearity(self, rng):
        f = random_rf(rng, 2, 2, 1)
        g = random_rf(rng, 2, 2, 1)
        if f.pole_order(linear_form(1, 0, 2)) <= 1 \
                and g.pole_order(linear_form(1, 0, 2)) <= 1:
            lhs = (f + g) if not (f + g).pole_order(linear_form(1, 0, 2)) > 1 \
                else None
            if lhs is not None:
                assert lhs.residue(1).equals(f.residue(1) + g.residue(1))

    def test_product_rule_no_pole_factor(self):
        f = rf("1/(x1)", 2)
        g = rf("x1^1x2^1", 2)
        lhs = (f * g).residue(1)
        assert lhs.equals(g.residue_free_subs(1, 0) * f.residue(1))


class TestDerivative:
    def test_power(self):
        assert rf("x1^2").partial(1).equals(rf("2*x1^1", 1))

    def test_nabla_power(self):
        n = 3
        got = mono(2 * n).nabla()
        assert got.equals(mono(2 * n - 1, 2 * n))

    def test_quotient_rule(self, rng):
        f = random_rf(rng, 2, 2, 2)
        g = random_rf(rng, 2, 1, 1)
        prod = f * g
        lhs = prod.partial(1)
        rhs = f.partial(1) * g + f * g.partial(1)
        assert lhs.equals(rhs)


class TestEqualsZero:
    def test_sign_normalization(self):
        assert rf("1/(x1*(x1-x2))").equals(rf("-1/(x1*(x2-x1))", 2))

    def test_distinct_variables(self):
        assert not rf("x1", 2).equals(rf("x2", 2))

    def test_psi_depth2_closed_form(self):
        from dshuffle.gens import psi_odd_component
        n = 1
        p = psi_odd_component(n, 2)
        closed = (rf("(x2^2)/(x1)")
                  - rf("(x1^2 + -2*x1^1x2^1 + x2^2)/(x1)")
                  + rf("(x1^2 + -2*x1^1x2^1 + x2^2)/(x2)")
                  - rf("(x1^2)/(x2)")
                  + (rf("x2^2", 2) - rf("x1^2", 2)).divide_form_exact(
                      linear_form(2, 1, 2)).scale(-1)).scale(QQ(1, 2))
        assert p.equals(closed)


class TestSerialization:
    def test_text_round_trip(self, rng):
        for _ in range(5):
            f = random_rf(rng, 3, 2, 2)
            assert parse(f.text(), arity=3).equals(f)

    def test_json_round_trip_bit_exact(self, rng):
        f = random_rf(rng, 3, 2, 2)
        blob = f.to_json()
        g = RationalFunction.from_json(blob)
        assert g.to_json() == blob
        assert g.equals(f)

    def test_json_schema_shape(self):
        data = rf("1/(x1*(x2-x1))").to_json_dict()
        assert data["arity"] == 2
        assert data["den"] == [[1, 0], [2, 1]]
        assert data["num"] == [[1, 1, [0, 0]]]

    def test_parse_rejects_x0(self):
        with pytest.raises(ParseError):
            parse("x0")

    def test_parse_error_position(self):
        with pytest.raises(ParseError):
            parse("1/(x1*(x2-x1)")  # missing closing paren

    def test_widened_denominator_not_serializable(self):
        from dshuffle.dsh_check import sharp_eval
        f = rf("1/(x2)", 2)
        sharp = sharp_eval(f, (1, 2))  # denominator x1+x2
        with pytest.raises(ValueError):
            sharp.to_json_dict()


class TestSumHelper:
    def test_rf_sum_matches_pairwise(self, rng):
        vals = [random_rf(rng, 2, 2, 2) for _ in range(4)]
        total = rf_sum_a(2, vals)
        acc = RationalFunction.zero(2)
        for v in vals:
            acc = acc + v
        assert total.equals(acc)
