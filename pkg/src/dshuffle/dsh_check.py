"""Verifiers for the functional-equation families.

Each checker returns an EquationReport whose residual is an exact rational
function; an equation passes exactly when the residual normalizes to zero.
The sharp substitutions produce widened affine denominators (sums of
variables); these stay inside this module, since residuals are only
compared against zero after clearing denominators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rationals import ZERO
from .ratfun import RationalFunction, rf_sum_a, var_vector
from .series import sigma, tau
from .words import lie_projector, shuffle, stuffle


@dataclass
class EquationReport:
    family: str
    indices: tuple
    residual: RationalFunction
    passed: bool

    @classmethod
    def from_residual(cls, family, indices, residual):
        return cls(family, indices, residual, residual.is_zero())

    def to_json_dict(self):
        data = {"family": self.family, "indices": list(self.indices),
                "passed": self.passed}
        if self.residual.has_structured_denominator():
            data["residual"] = self.residual.to_json_dict()
        else:
            data["residual"] = {"text": self.residual.text()}
        return data

    def __repr__(self):
        return "EquationReport(%s %s: %s)" % (
            self.family, self.indices, "pass" if self.passed else "FAIL")


def sharp_eval(f, word):
    """f evaluated at the prefix sums of x along a word of indices."""
    n = f.arity
    images = []
    acc = [ZERO] * (n + 1)
    for idx in word:
        acc = list(acc)
        acc[idx] += 1
        images.append(tuple(acc))
    injective = len(set(word)) == len(word)
    return f.substitute_affine(images, n, renormalize=not injective)


def perm_eval(f, word, target_arity=None):
    """f evaluated at permuted variables x_(w1), .., x_(wr)."""
    n = target_arity if target_arity is not None else f.arity
    images = [var_vector(n, idx) for idx in word]
    injective = len(set(word)) == len(word)
    return f.substitute_affine(images, n, renormalize=not injective)


def check_shuffle(f, p, q):
    """(p,q) shuffle equation: sum over shuffles of the sharp evaluation."""
    n = f.arity
    if p + q != n:
        raise ValueError("need p + q = arity")
    u = tuple(range(1, p + 1))
    v = tuple(range(p + 1, n + 1))
    parts = [sharp_eval(f, w) for w in shuffle(u, v)]
    return EquationReport.from_residual("shuffle", (p, q), rf_sum_a(n, parts))


def _stuffle_term_eval(series, term, arity):
    """Evaluate one stuffle term, expanding merged letters as divided
    differences of the lower-depth components."""
    from .ratfun import Polynomial, linear_form
    merged = [i for i, l in enumerate(term) if isinstance(l, tuple)]
    r = len(term)
    comp = series.component(r)
    parts = []
    for mask in range(1 << len(merged)):
        word = list(term)
        sign = 1
        den = {}
        for bit, pos in enumerate(merged):
            lo, hi = term[pos]
            # divided difference (F(x_hi) - F(x_lo)) / (x_hi - x_lo)
            if (mask >> bit) & 1:
                word[pos] = lo
                sign = -sign
            else:
                word[pos] = hi
            fm = linear_form(hi, lo, arity)
            den[fm] = den.get(fm, 0) + 1
        value = perm_eval(comp, word, arity)
        coeff = RationalFunction.from_num_den(
            Polynomial.const(arity, sign), den)
        parts.append(value * coeff)
    return rf_sum_a(arity, parts)


def check_stuffle(series, p, q):
    """(p,q) stuffle equation on a truncated depth series."""
    n = p + q
    if n > series.max_depth:
        raise ValueError("series truncated below depth %d" % n)
    u = tuple(range(1, p + 1))
    v = tuple(range(p + 1, n + 1))
    parts = []
    for term, coeff in stuffle(u, v).items():
        parts.append(_stuffle_term_eval(series, term, n).scale(coeff))
    return EquationReport.from_residual("stuffle", (p, q), rf_sum_a(n, parts))


def check_linearized(f, p, q, sharp):
    """(p,q) linearized equation, with or without the sharp change of
    variables."""
    n = f.arity
    if p + q != n:
        raise ValueError("need p + q = arity")
    u = tuple(range(1, p + 1))
    v = tuple(range(p + 1, n + 1))
    evaluate = sharp_eval if sharp else perm_eval
    parts = [evaluate(f, w) for w in shuffle(u, v)]
    family = "lin_shuffle" if sharp else "lin_stuffle"
    return EquationReport.from_residual(family, (p, q), rf_sum_a(n, parts))


def check_lambda_form(f, sharp):
    """Single-identity form: the projector acts as multiplication by n."""
    n = f.arity
    if n < 2:
        raise ValueError("needs arity >= 2")
    word = tuple(range(1, n + 1))
    evaluate = sharp_eval if sharp else perm_eval
    parts = [evaluate(f, w).scale(c) for w, c in lie_projector(word).items()]
    parts.append(evaluate(f, word).scale(-n))
    family = "lambda_sharp" if sharp else "lambda"
    return EquationReport.from_residual(family, (n,), rf_sum_a(n, parts))


def check_translation_invariance(f):
    """nabla residual of a y-coordinate function."""
    return EquationReport.from_residual("translation", (f.arity,), f.nabla())


def check_dihedral(f):
    """Antipodal symmetries f + sigma(f) = f + tau(f) = 0."""
    r1 = f + sigma(f)
    r2 = f + tau(f)
    residual = r1 if not r1.is_zero() else r2
    report = EquationReport("dihedral", (f.arity,), residual,
                            r1.is_zero() and r2.is_zero())
    return report


def check_parity(depth, degree, nullspace_fn=None):
    """No nonzero polynomial solutions at odd homogeneous degree."""
    if nullspace_fn is None:
        from .modforms import lin_ds_nullspace
        nullspace_fn = lin_ds_nullspace
    basis = nullspace_fn(depth, degree + depth)
    if basis:
        residual = basis[0]
        passed = degree % 2 == 0
    else:
        residual = RationalFunction.zero(depth)
        passed = True
    return EquationReport("parity", (depth, degree), residual, passed)


def _signed_reversal(f):
    """(-1)^d f(-x_d, .., -x_1), the series-level conjugate component."""
    d = f.arity
    images = [var_vector(d, d + 1 - j, negate=True) for j in range(1, d + 1)]
    out = f.substitute_affine(images, d, renormalize=False)
    return out if d % 2 == 0 else -out


def check_six_term(series, d):
    """Reversal defect of the depth-d component against depth d-1.

    Implemented through the conjugation identity relating f plus its
    signed reversal to the one-variable stuffle factor: the depth-d
    component of (f + conj f) stuffled with (1 - mu) must match the
    commuting action terms of depth d-1.  Expanding the action gives the
    six-term shape.
    """
    if series.weight is None or series.weight % 2 != 0:
        raise ValueError("six-term relation is for even homogeneous weight")
    from .ratfun import Polynomial, linear_form
    from .series import ihara_action_component, stuffle_concat
    f_d = series.component(d)
    f_prev = series.component(d - 1)
    mu = RationalFunction.from_num_den(Polynomial.const(1, 1),
                                       {linear_form(1, 0, 1): 1})
    lhs = [f_d + _signed_reversal(f_d),
           -stuffle_concat(f_prev + _signed_reversal(f_prev), mu)]
    rhs = [stuffle_concat(mu, f_prev),
           -ihara_action_component(f_prev, mu)]
    residual = rf_sum_a(d, lhs) - rf_sum_a(d, rhs)
    return EquationReport.from_residual("six_term", (d,), residual)


def is_in_pdmr(series, max_depth):
    """All (p,q) shuffle and stuffle families through max_depth."""
    reports = []
    for n in range(2, max_depth + 1):
        for p in range(1, n // 2 + 1):
            q = n - p
            reports.append(check_shuffle(series.component(n), p, q))
            reports.append(check_stuffle(series, p, q))
    return reports


def is_in_pls(f, check_poles=True):
    """Linearized double shuffle plus the consecutive-pole condition."""
    reports = []
    n = f.arity
    for p in range(1, n // 2 + 1):
        q = n - p
        reports.append(check_linearized(f, p, q, sharp=False))
        reports.append(check_linearized(f, p, q, sharp=True))
    if n == 1:
        # depth-one evenness: only even powers of x1 are allowed
        odd = RationalFunction(
            1, _odd_part(f.num), dict(f.den))
        reports.append(EquationReport.from_residual("parity", (1,), odd))
    if check_poles:
        cleared = f * _c_bar_poly(n)
        residual = cleared if not cleared.is_polynomial() \
            else RationalFunction.zero(n)
        reports.append(EquationReport("pole_shape", (n,), residual,
                                      cleared.is_polynomial()))
    return reports


def _odd_part(p):
    from .ratfun import Polynomial
    return Polynomial(p.arity, {m: c for m, c in p.terms.items()
                                if sum(m) % 2 == 1})


def _c_bar_poly(n):
    """x_1 (x_2-x_1) .. (x_n-x_(n-1)) x_n as a rational function."""
    from .ratfun import Polynomial
    p = Polynomial.variable(n, 1)
    for i in range(2, n + 1):
        form = [0] * (n + 1)
        form[i] = 1
        form[i - 1] = -1
        p = p.mul_form(tuple(form))
    form = [0] * (n + 1)
    form[n] = 1
    p = p.mul_form(tuple(form))
    return RationalFunction.from_poly(p)


def all_pass(reports):
    return all(r.passed for r in reports)


def summary_line(reports):
    failed = [r for r in reports if not r.passed]
    if not failed:
        return "all %d checks passed" % len(reports)
    return "%d of %d checks FAILED: %s" % (
        len(failed), len(reports),
        ", ".join("%s%s" % (r.family, r.indices) for r in failed))
