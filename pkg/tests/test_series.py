import pytest

from dshuffle.ratfun import RationalFunction, linear_form, parse, rf_sum_a
from dshuffle.series import (DepthSeries, cyclic_rotate, dihedral_bracket,
                             ihara_action_component,
                             ihara_bracket_component, is_translation_invariant,
                             plus_truncate, reduce_y, series_ihara_action,
                             series_ihara_bracket, series_stuffle,
                             shuffle_concat, sigma, stuffle_concat,
                             stuffle_exp, tau, unreduce)
from dshuffle.gens import (mu_minus, mu_plus, nu_series, psi_minus_one,
                           psi_odd, psi_odd_component, s_d, vine_rat, Vine)

from conftest import make_rng, mono, random_rf


class TestCoordinates:
    def test_reduce_square(self):
        # (y1 - y0)^2 reduces to x1^2
        y = parse("y", 2) if False else None
        f = parse("x2^2 + -2*x1^1x2^1 + x1^2", 2)  # (y1-y0)^2, slots y0 y1
        assert reduce_y(f).equals(mono(2))

    def test_unreduce_product(self):
        f = parse("x1^1x2^1", 2)
        got = unreduce(f)
        # (y1-y0)(y2-y0) with slots 1..3 holding y0..y2
        expect = (parse("x2", 3) - parse("x1", 3)) * \
            (parse("x3", 3) - parse("x1", 3))
        assert got.equals(expect)

    def test_round_trip_on_psi(self):
        f = psi_odd_component(1, 2)
        assert reduce_y(unreduce(f)).equals(f)
        assert is_translation_invariant(unreduce(f))

    def test_reduce_requires_invariance(self):
        from dshuffle.series import TranslationError
        with pytest.raises(TranslationError):
            reduce_y(parse("x1^2", 2))


class TestConcatenation:
    def test_shuffle_unit(self):
        f = random_rf(make_rng(5), 2)
        unit = RationalFunction.const(0, 1)
        assert shuffle_concat(unit, f).equals(f)

    def test_shuffle_concat_basic(self):
        got = shuffle_concat(mono(1), mono(1))
        assert got.equals(parse("x1^1x2^1 + -1*x1^2", 2))

    def test_ell_concatenation(self):
        # 1/((y0-y1)..(y_{r-1}-y_r)) multiplies like a monoid under the
        # shuffle concatenation; check in reduced coordinates at r = s = 1
        ell1 = RationalFunction.from_num_den(
            parse("-1", 1).num, {linear_form(1, 0, 1): 1})
        prod = shuffle_concat(ell1, ell1)
        expect = RationalFunction.from_num_den(
            parse("1", 2).num, {linear_form(1, 0, 2): 1,
                                linear_form(2, 1, 2): 1})
        assert prod.equals(expect)

    def test_stuffle_concat(self):
        got = stuffle_concat(mono(-1), mono(-1))
        assert got.equals(parse("1/(x1*x2)"))

    def test_stuffle_unit_series(self):
        one = DepthSeries.unit(4)
        f = psi_odd(1, 4)
        assert series_stuffle(one, f).equals(f)
        assert series_stuffle(f, one).equals(f)

    def test_mu_plus_is_iterated_concat(self):
        k = 4
        acc = mono(-1)
        for _ in range(k - 1):
            acc = stuffle_concat(acc, mono(-1))
        assert acc.equals(mu_plus(k).component(k))


class TestIharaAction:
    def test_unit_right_action(self):
        f = psi_odd(1, 3)
        one = DepthSeries.unit(3)
        assert series_ihara_action(f, one).equals(f)

    def test_depth2_cross_check_with_dihedral(self):
        # the two bracket formulas must agree on symmetric depth-1 inputs
        for (a, b) in [(1, 2), (1, 3), (2, 3)]:
            f, g = mono(2 * a), mono(2 * b)
            assert dihedral_bracket(f, g).equals(ihara_bracket_component(f, g))

    def test_dihedral_with_polar_input(self):
        f, g = mono(-2), mono(4)
        assert dihedral_bracket(f, g).equals(ihara_bracket_component(f, g))

    def test_dihedral_with_depth2_inputs(self):
        f2 = ihara_bracket_component(mono(2), mono(4))
        g2 = ihara_bracket_component(mono(2), mono(6))
        assert dihedral_bracket(f2, mono(6)).equals(
            ihara_bracket_component(f2, mono(6)))
        assert dihedral_bracket(f2, g2).equals(
            ihara_bracket_component(f2, g2))

    def test_double_pole_cancels_in_dihedral(self):
        got = dihedral_bracket(mono(-2), mono(4))
        assert got.pole_order(linear_form(2, 1, 2)) <= 1

    def test_action_on_grape(self):
        # s_d acting on the inverse grape monomial
        for d in (1, 2):
            for n in (1, 2):
                pg = vine_rat(Vine((n,)))
                lhs = ihara_action_component(s_d(d), pg)
                rhs = stuffle_concat(pg, s_d(d)) \
                    + vine_rat(Vine((n + d,))).scale(n)
                assert lhs.equals(rhs)

    def test_witt_algebra(self):
        s = {d: s_d(d) for d in range(1, 7)}
        for m in (1, 2, 3):
            for n in (1, 2, 3):
                if m + n > 6:
                    continue
                br = ihara_bracket_component(s[m], s[n])
                assert br.equals(s[m + n].scale(n - m))

    def test_bracket_antisymmetry(self):
        f = mono(4)
        assert ihara_bracket_component(f, f).is_zero()

    def test_ihara_relation(self):
        br1 = ihara_bracket_component(mono(2), mono(8))
        br2 = ihara_bracket_component(mono(4), mono(6))
        assert (br1 - br2.scale(3)).is_zero()

    def test_pre_lie_symmetry(self, rng):
        def A(a, b, c):
            return ihara_action_component(
                a, ihara_action_component(b, c)) \
                - ihara_action_component(ihara_action_component(a, b), c)
        for _ in range(3):
            a = random_rf(rng, 1, 2, 1, terms=2)
            b = mono(2 * rng.randint(1, 3))
            c = random_rf(rng, 2, 1, 1, terms=2)
            assert A(a, b, c).equals(A(b, a, c))

    def test_jacobi(self, rng):
        def br(x, y):
            return ihara_bracket_component(x, y)
        a, b, c = mono(2), mono(-2), random_rf(rng, 1, 4, 0, terms=1)
        total = rf_sum_a(3, [br(a, br(b, c)), br(b, br(c, a)),
                             br(c, br(a, b))])
        assert total.is_zero()

    def test_derivation_laws(self, rng):
        f = random_rf(rng, 1, 2, 1, terms=2)
        g = mono(2)
        h = random_rf(rng, 2, 1, 1, terms=2)
        n = f.arity + g.arity + h.arity
        lhs = ihara_action_component(f, shuffle_concat(g, h))
        rhs = rf_sum_a(n, [
            shuffle_concat(ihara_action_component(f, g), h),
            shuffle_concat(g, ihara_action_component(f, h)),
            shuffle_concat(shuffle_concat(g, f), h).scale(-1)])
        assert lhs.equals(rhs)
        lhs = ihara_action_component(f, stuffle_concat(g, h))
        rhs = rf_sum_a(n, [
            stuffle_concat(ihara_action_component(f, g), h),
            stuffle_concat(g, ihara_action_component(f, h)),
            stuffle_concat(stuffle_concat(g, f), h).scale(-1)])
        assert lhs.equals(rhs)

    def test_weight_additivity(self):
        f, g = mono(2), psi_odd_component(1, 2)
        out = ihara_action_component(f, g)
        assert out.weight() == f.weight() + g.weight()


class TestDihedralOperators:
    def test_sigma_involution(self, rng):
        f = random_rf(rng, 3, 2, 2)
        assert sigma(sigma(f)).equals(f)

    def test_tau_involution(self, rng):
        f = random_rf(rng, 3, 2, 2)
        assert tau(tau(f)).equals(f)

    def test_cyclic_rotation_order(self):
        # tau sigma has order r+1 on even-weight inputs
        f = psi_odd_component(1, 3) * psi_odd_component(1, 3)  # even weight
        g = f
        for _ in range(4):
            g = cyclic_rotate(g)
        assert g.equals(f)

    def test_sigma_of_grape_inverse(self):
        d = 3
        pg = vine_rat(Vine((d,)))
        got = sigma(pg)
        den = {linear_form(d, 0, d): 1}
        for j in range(1, d):
            den[linear_form(d, j, d)] = 1
        from dshuffle.ratfun import Polynomial
        expect = RationalFunction.from_num_den(
            Polynomial.const(d, (-1) ** d), den)
        assert got.equals(expect)


class TestExpAndTruncation:
    def test_exp_of_nu(self):
        one = DepthSeries.unit(4)
        assert stuffle_exp(nu_series(4), 4).equals(one + mu_plus(4))

    def test_telescoping(self):
        one = DepthSeries.unit(5)
        prod = series_stuffle(one + mu_plus(5), one - mu_minus(5))
        assert prod.equals(one)

    def test_plus_truncate_kills_negative_weight(self):
        assert plus_truncate(psi_minus_one(4)).is_zero()

    def test_plus_truncate_weight_bound(self):
        f = psi_odd(2, 6)  # weight 5
        out = plus_truncate(f)
        assert 4 in out.components
        assert 5 not in out.components and 6 not in out.components

    def test_plus_truncate_needs_weight(self):
        series = DepthSeries({1: mono(2)}, 3)
        with pytest.raises(ValueError):
            plus_truncate(series)


class TestSeriesBracketStructure:
    def test_bracket_weight(self):
        br = series_ihara_bracket(psi_odd(1, 3), psi_odd(2, 3))
        assert br.weight == 8

    def test_truncation_tracking(self):
        f = psi_odd(1, 2)
        g = psi_odd(2, 4)
        br = series_ihara_bracket(f, g)
        assert br.max_depth == 3  # limited by f's truncation

    def test_json_round_trip(self):
        f = psi_odd(1, 3)
        blob = f.to_json_dict()
        g = DepthSeries.from_json_dict(blob)
        assert g.equals(f)
        assert g.to_json_dict() == blob
