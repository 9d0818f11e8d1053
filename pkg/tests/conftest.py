import random

import pytest

from dshuffle.rationals import QQ
from dshuffle.ratfun import Polynomial, RationalFunction, linear_form


def mono(n, coeff=1):
    """coeff * x1^n in one variable (negative n allowed)."""
    return RationalFunction.power_of_var(1, 1, n, coeff)


def make_rng(seed):
    return random.Random(seed)


def random_poly(rng, arity, degree, terms=4):
    out = Polynomial(arity)
    for _ in range(terms):
        exps = [0] * arity
        for _ in range(degree):
            exps[rng.randrange(arity)] += 1
        c = QQ(rng.randint(-5, 5), rng.randint(1, 4))
        out = out + Polynomial.monomial(arity, tuple(exps), c)
    return out


def random_rf(rng, arity, num_degree=2, den_factors=2, terms=3):
    """Random rational function with difference-form poles."""
    num = random_poly(rng, arity, num_degree, terms)
    if num.is_zero():
        num = Polynomial.const(arity, 1)
    den = {}
    pool = [(a, b) for a in range(1, arity + 1) for b in range(0, a)]
    for _ in range(den_factors):
        a, b = pool[rng.randrange(len(pool))]
        f = linear_form(a, b, arity)
        den[f] = den.get(f, 0) + 1
    return RationalFunction.from_num_den(num, den)


@pytest.fixture
def rng():
    return make_rng(20240817)
