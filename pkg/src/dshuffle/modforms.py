"""Period-polynomial spaces, exceptional depth-4 elements, and brute-force
nullspace solvers for the linearized equation families.

Only the polynomial avatars of modular forms appear here: spaces of
antisymmetric bivariate polynomials satisfying the three-term relation,
split by parity, and the dimension generating series they are compared
against.
"""

from __future__ import annotations

from .rationals import QQ, ZERO
from .ratfun import (Polynomial, RationalFunction, linear_form, rf_sum_a,
                     var_vector)
from . import linalg
from .dsh_check import check_linearized, perm_eval


# ---------------------------------------------------------------------------
# dimension generating series


def series_coefficients(num_exps, den_factors, bound):
    """Coefficients of s^k, k <= bound, of sum(s^e) / prod(1 - s^f)."""
    coeffs = [0] * (bound + 1)
    for e in num_exps:
        if e <= bound:
            coeffs[e] += 1
    for f in den_factors:
        # multiply by the expansion of 1/(1 - s^f)
        for k in range(f, bound + 1):
            coeffs[k] += coeffs[k - f]
    return coeffs


def dimension_series(name, bound):
    """Named dimension series evaluated to the given bound."""
    if name == "cusp":            # s^12 / ((1-s^4)(1-s^6))
        return series_coefficients([12], [4, 6], bound)
    if name == "ls1":             # s^3 / (1-s^2)
        return series_coefficients([3], [2], bound)
    if name == "ls2":             # s^8 / ((1-s^2)(1-s^6))
        return series_coefficients([8], [2, 6], bound)
    if name == "c2":              # s / (s^4 - s^3 - s + 1) = s/((1-s)(1-s^3))
        return series_coefficients([1], [1, 3], bound)
    if name == "h13":             # s / ((1-s^2)(1-s^6)) - s
        out = series_coefficients([1], [2, 6], bound)
        if bound >= 1:
            out[1] -= 1
        return out
    raise ValueError("unknown series %r" % name)


def lie3_dimensions(gen_dims, bound):
    """Degree-3 part of the free Lie algebra on a graded set.

    gen_dims: coefficient list of the generator series v(s); returns the
    coefficients of (v(s)^3 - v(s^3)) / 3.
    """
    v = list(gen_dims) + [0] * (3 * bound)
    cube = [0] * (bound + 1)
    for a in range(bound + 1):
        if not v[a]:
            continue
        for b in range(bound + 1 - a):
            if not v[b]:
                continue
            for c in range(bound + 1 - a - b):
                if v[c]:
                    cube[a + b + c] += v[a] * v[b] * v[c]
    out = [0] * (bound + 1)
    for k in range(bound + 1):
        sub = v[k // 3] if k % 3 == 0 else 0
        val = cube[k] - sub
        if val % 3:
            raise ArithmeticError("free Lie count not divisible by 3")
        out[k] = val // 3
    return out


# ---------------------------------------------------------------------------
# period polynomials


class PeriodPolynomial:
    """Bivariate homogeneous antisymmetric polynomial with the three-term
    relation; parity refers to evenness of both exponents."""

    __slots__ = ("poly", "parity")

    def __init__(self, poly, parity):
        self.poly = poly
        self.parity = parity

    def degree(self):
        return self.poly.degree()

    def __repr__(self):
        return "PeriodPolynomial(%s, %s)" % (self.poly.text(), self.parity)


def _bivariate_monomials(degree, parity):
    out = []
    for a in range(degree + 1):
        b = degree - a
        if parity == "even" and (a % 2 or b % 2):
            continue
        if parity == "odd" and (a % 2 == 0 or b % 2 == 0):
            continue
        out.append((a, b))
    return out


def _three_term_rows(monomials, degree):
    """Rows of the linear system P(x,y)+P(y,x) = 0 and
    P(x,y)+P(x-y,x)+P(-y,x-y) = 0 in the given monomial basis."""
    sym_rows = {}
    rel_rows = {}
    swap = [var_vector(2, 2), var_vector(2, 1)]
    sub1 = [(ZERO, QQ(1), QQ(-1)), (ZERO, QQ(1), ZERO)]      # (x-y, x)
    sub2 = [(ZERO, ZERO, QQ(-1)), (ZERO, QQ(1), QQ(-1))]     # (-y, x-y)
    for col, (a, b) in enumerate(monomials):
        p = Polynomial.monomial(2, (a, b), 1)
        f = RationalFunction.from_poly(p)
        sym = p + f.substitute_affine(swap, 2).num
        for m, c in sym.terms.items():
            sym_rows.setdefault(m, {})[col] = c
        rel = (p + f.substitute_affine(sub1, 2).num
               + f.substitute_affine(sub2, 2).num)
        for m, c in rel.terms.items():
            rel_rows.setdefault(m, {})[col] = c
    matrix = []
    for table in (sym_rows, rel_rows):
        for m in sorted(table):
            matrix.append([table[m].get(c, ZERO)
                           for c in range(len(monomials))])
    return matrix


def period_space(weight, parity, primitive=True):
    """Basis of the period-polynomial space of the given modular weight.

    parity 'even' or 'odd'; primitive means the even space with the value
    at (1, 0) removed (the cusp-form avatar).
    """
    if weight % 2 or weight < 4:
        return []
    degree = weight - 2
    monomials = _bivariate_monomials(degree, parity)
    if not monomials:
        return []
    matrix = _three_term_rows(monomials, degree)
    if parity == "even" and primitive:
        matrix.append([QQ(1) if b == 0 else ZERO for (a, b) in monomials])
    basis = linalg.nullspace(matrix, len(monomials))
    out = []
    for vec in basis:
        terms = {m: c for m, c in zip(monomials, vec) if c != 0}
        out.append(PeriodPolynomial(Polynomial(2, terms), parity))
    return out


def p_even_generator(weight):
    """x^(w-2) - y^(w-2), the Eisenstein-type element of the even space."""
    d = weight - 2
    return Polynomial(2, {(d, 0): QQ(1), (0, d): QQ(-1)})


# ---------------------------------------------------------------------------
# exceptional depth-4 elements


def exceptional_e(f):
    """The depth-4 solution attached to a primitive even period polynomial.

    f must vanish along x = 0, y = 0 and x = y; the result is the reduced
    cyclic sum, a polynomial in four variables.
    """
    if isinstance(f, PeriodPolynomial):
        f = f.poly
    rf = RationalFunction.from_poly(f)
    f0 = rf.divide_form_exact(linear_form(1, 0, 2)) \
           .divide_form_exact(linear_form(2, 0, 2)) \
           .divide_form_exact(linear_form(2, 1, 2)).scale(-1)
    f1 = rf.divide_form_exact(linear_form(1, 0, 2)) \
           .divide_form_exact(linear_form(2, 0, 2))
    if not (f0.is_polynomial() and f1.is_polynomial()):
        raise ValueError("input must vanish along x=0, y=0 and x=y")
    parts = []
    m = 5
    for k in range(5):
        def y(i):
            return (i + k) % 5 + 1
        img1 = [_slot_diff(m, y(4), y(3)), _slot_diff(m, y(2), y(1))]
        parts.append(f1.substitute_affine(img1, m))
        img0 = [_slot_diff(m, y(2), y(3)), _slot_diff(m, y(4), y(3))]
        lin = RationalFunction.from_poly(
            Polynomial.variable(m, y(0)) - Polynomial.variable(m, y(1)))
        parts.append(lin * f0.substitute_affine(img0, m))
    total = rf_sum_a(m, parts)
    images = [var_vector(4, 0)] + [var_vector(4, i) for i in range(1, 5)]
    return total.substitute_affine(images, 4)


def _slot_diff(arity, i, j):
    vec = [ZERO] * (arity + 1)
    vec[i] += QQ(1)
    vec[j] -= QQ(1)
    return tuple(vec)


# ---------------------------------------------------------------------------
# linearized double shuffle nullspaces


def _monomials(arity, degree):
    if degree < 0:
        return []
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, arity)
    return out


def _consecutive_pole_den(depth):
    """Denominator multiset of x_1 (x_2-x_1) .. (x_r-x_(r-1)) x_r."""
    den = {linear_form(1, 0, depth): 1}
    for i in range(2, depth + 1):
        f = linear_form(i, i - 1, depth)
        den[f] = den.get(f, 0) + 1
    f = linear_form(depth, 0, depth)
    den[f] = den.get(f, 0) + 1
    return den


def lin_ds_nullspace(depth, weight, allow_poles=False, ansatz_cap=20000):
    """Exact basis of linearized double shuffle solutions.

    allow_poles=False solves over polynomials of degree weight - depth;
    allow_poles=True solves over numerators divided by the consecutive
    difference product (the restricted pole shape).
    """
    if allow_poles:
        den = _consecutive_pole_den(depth)
        num_degree = weight - depth + depth + 1
    else:
        den = {}
        num_degree = weight - depth
    monomials = _monomials(depth, num_degree)
    if not monomials:
        return []
    if len(monomials) > ansatz_cap:
        raise ValueError("ansatz of %d monomials exceeds the cap"
                         % len(monomials))
    basis_fns = [RationalFunction.from_num_den(
        Polynomial.monomial(depth, m, 1), dict(den)) for m in monomials]
    rows = []
    for p in range(1, depth // 2 + 1):
        q = depth - p
        for sharp in (False, True):
            residuals = [check_linearized(b, p, q, sharp).residual
                         for b in basis_fns]
            rows.extend(_residual_rows(residuals))
    if depth == 1:
        # evenness constraint from the depth-two stuffle family
        for i, m in enumerate(monomials):
            if m[0] % 2 == 1:
                row = [ZERO] * len(monomials)
                row[i] = QQ(1)
                rows.append(row)
    kernel = linalg.nullspace(rows, len(monomials))
    out = []
    for vec in kernel:
        terms = {m: c for m, c in zip(monomials, vec) if c != 0}
        out.append(RationalFunction.from_num_den(Polynomial(depth, terms),
                                                 dict(den)))
    return out


def _residual_rows(residuals):
    """Turn a list of residuals (linear in the ansatz) into matrix rows."""
    common = {}
    for r in residuals:
        for f, k in r.den.items():
            common[f] = max(common.get(f, 0), k)
    cleared = []
    monos = set()
    for r in residuals:
        num = r.num
        for f, k in common.items():
            for _ in range(k - r.den.get(f, 0)):
                num = num.mul_form(f)
        cleared.append(num)
        monos.update(num.terms)
    rows = []
    for m in sorted(monos):
        rows.append([num.terms.get(m, ZERO) for num in cleared])
    return rows


def ls_dimension(depth, weight, allow_poles=False):
    return len(lin_ds_nullspace(depth, weight, allow_poles))


# ---------------------------------------------------------------------------
# the depth-2 bracket map and its kernel


def bracket_kernel_ls2(weight):
    """Kernel dimension of the bracket pairing of two depth-1 solutions.

    The domain is spanned by the brackets of x1^(2a) with x1^(2b) for
    a < b, 2a + 2b + 2 = weight.
    """
    from .series import ihara_bracket_component
    if weight % 2:
        return 0, []
    pairs = [(a, (weight - 2) // 2 - a)
             for a in range(1, (weight - 2) // 4 + 1)
             if a < (weight - 2) // 2 - a]
    if not pairs:
        return 0, pairs
    brackets = []
    for a, b in pairs:
        xa = RationalFunction.power_of_var(1, 1, 2 * a)
        xb = RationalFunction.power_of_var(1, 1, 2 * b)
        brackets.append(ihara_bracket_component(xa, xb))
    monos = set()
    for br in brackets:
        monos.update(br.num.terms)
    rows = []
    for m in sorted(monos):
        rows.append([br.num.terms.get(m, ZERO) for br in brackets])
    kernel = linalg.nullspace(rows, len(brackets))
    return len(kernel), pairs


# ---------------------------------------------------------------------------
# the antisymmetric cyclic space in two variables


def pi2(f):
    """Projection onto antisymmetric cyclic-sum-zero polynomials."""
    w1 = perm_eval(f, (2, 1))
    sub1 = f.substitute_affine([_slot_diff(2, 2, 1),
                                (ZERO, QQ(-1), ZERO)], 2)   # (x2-x1, -x1)
    sub2 = f.substitute_affine([_slot_diff(2, 1, 2),
                                (ZERO, ZERO, QQ(-1))], 2)   # (x1-x2, -x2)
    return rf_sum_a(2, [f, -w1, -sub1, sub2])


def c2_space(degree):
    """Basis of antisymmetric polynomials with vanishing cyclic sum."""
    monomials = _monomials(2, degree)
    if not monomials:
        return []
    rows = {}
    sym_rows = {}
    cyc_rows = {}
    for col, m in enumerate(monomials):
        f = RationalFunction.from_poly(Polynomial.monomial(2, m, 1))
        anti = f + perm_eval(f, (2, 1))
        for mm, c in anti.num.terms.items():
            sym_rows.setdefault(mm, {})[col] = c
        cyc = rf_sum_a(2, [
            f,
            f.substitute_affine([_slot_diff(2, 2, 1), (ZERO, QQ(-1), ZERO)], 2),
            f.substitute_affine([(ZERO, ZERO, QQ(-1)), _slot_diff(2, 1, 2)], 2)])
        for mm, c in cyc.num.terms.items():
            cyc_rows.setdefault(mm, {})[col] = c
    matrix = []
    for table in (sym_rows, cyc_rows):
        for mm in sorted(table):
            matrix.append([table[mm].get(c, ZERO)
                           for c in range(len(monomials))])
    basis = linalg.nullspace(matrix, len(monomials))
    out = []
    for vec in basis:
        terms = {m: c for m, c in zip(monomials, vec) if c != 0}
        out.append(Polynomial(2, terms))
    return out
