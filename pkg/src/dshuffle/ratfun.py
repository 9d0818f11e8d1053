"""Exact arithmetic for multivariate rational functions over Q.

Values live in the ring of functions of x_1..x_d whose denominators are
products of the linear forms x_a - x_b (convention x_0 = 0, so x_a itself
is allowed).  Substitution of affine forms can transiently produce wider
affine denominators such as x_1 + x_2; those are representable here but are
only meant to appear inside equation checking, never in stored elements.

Representation:
  * Monomial  -- exponent tuple, one entry per variable.
  * Polynomial -- sparse dict Monomial -> rational, fixed arity.
  * forms      -- a denominator factor is a canonical integer tuple
                  (c0, c1, .., cd) meaning c0 + c1*x1 + .. + cd*xd,
                  primitive, with its highest-index nonzero entry positive.
  * RationalFunction -- Polynomial numerator over a multiset of forms,
                  normalized so that no denominator form divides the
                  numerator.

Monomial order used for printing and serialization is graded lex:
sort key (total degree, exponent tuple).
"""

from __future__ import annotations

import json
import re
from math import gcd

from .rationals import QQ, ZERO, ONE, rat, rat_str, rat_from_str, as_int_pair


class ArityMismatch(ValueError):
    pass


# evaluation points for the fast divisibility pre-test
_EVAL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23)


class PoleOrderError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity, terms=None):
        self.arity = arity
        self.terms = terms if terms is not None else {}

    # -- constructors

    @classmethod
    def zero(cls, arity):
        return cls(arity)

    @classmethod
    def const(cls, arity, c):
        c = rat(c)
        if c == 0:
            return cls(arity)
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def variable(cls, arity, i, power=1, coeff=1):
        if not 1 <= i <= arity:
            raise ArityMismatch("variable x%d out of range for arity %d" % (i, arity))
        exps = [0] * arity
        exps[i - 1] = power
        return cls.monomial(arity, tuple(exps), coeff)

    @classmethod
    def monomial(cls, arity, exps, coeff=1):
        coeff = rat(coeff)
        if coeff == 0:
            return cls(arity)
        if len(exps) != arity:
            raise ArityMismatch("exponent tuple has wrong length")
        return cls(arity, {tuple(exps): coeff})

    # -- basic queries

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.arity == other.arity
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_parts(self):
        """dict degree -> Polynomial."""
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {d: Polynomial(self.arity, t) for d, t in parts.items()}

    # -- arithmetic

    def _check(self, other):
        if self.arity != other.arity:
            raise ArityMismatch("polynomial arities differ: %d vs %d"
                                % (self.arity, other.arity))

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, ZERO) + c
            if s == 0:
                terms.pop(m, None)
            else:
                terms[m] = s
        return Polynomial(self.arity, terms)

    def __sub__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, ZERO) - c
            if s == 0:
                terms.pop(m, None)
            else:
                terms[m] = s
        return Polynomial(self.arity, terms)

    def __neg__(self):
        return Polynomial(self.arity, {m: -c for m, c in self.terms.items()})

    def scale(self, c):
        c = rat(c)
        if c == 0:
            return Polynomial(self.arity)
        return Polynomial(self.arity, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                s = out.get(m, ZERO) + ca * cb
                if s == 0:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(self.arity, out)

    def mul_form(self, form):
        """Multiply by the affine form c0 + sum ci*xi (fast path)."""
        out = {}
        arity = self.arity
        entries = [(i - 1, form[i]) for i in range(1, arity + 1) if form[i]]
        c0 = form[0]
        get = out.get
        for m, c in self.terms.items():
            if c0:
                s = get(m, ZERO) + c0 * c
                if s == 0:
                    del out[m]
                else:
                    out[m] = s
            for pos, ci in entries:
                mm = m[:pos] + (m[pos] + 1,) + m[pos + 1:]
                s = get(mm, ZERO) + ci * c
                if s == 0:
                    del out[mm]
                else:
                    out[mm] = s
        return Polynomial(arity, out)

    def pow(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.const(self.arity, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def derivative(self, i):
        """Partial derivative with respect to x_i (1-based)."""
        out = {}
        for m, c in self.terms.items():
            e = m[i - 1]
            if e:
                mm = m[:i - 1] + (e - 1,) + m[i:]
                out[mm] = out.get(mm, ZERO) + c * e
        return Polynomial(self.arity, {m: c for m, c in out.items() if c != 0})

    # -- substitution and evaluation

    def substitute(self, images, target_arity):
        """Compose with x_i -> images[i-1], each a Polynomial of target arity.

        Uses iterated Horner evaluation, one source variable at a time.
        """
        if len(images) != self.arity:
            raise ArityMismatch("need one image per variable")
        return _subst_rec(self.terms, self.arity, images, target_arity)

    def subs_var(self, a, b):
        """Substitute x_a -> x_b (b = 0 means x_a -> 0).  Same arity."""
        out = {}
        for m, c in self.terms.items():
            e = m[a - 1]
            if e and b == 0:
                continue
            mm = list(m)
            mm[a - 1] = 0
            if b:
                mm[b - 1] += e
            mm = tuple(mm)
            s = out.get(mm, ZERO) + c
            if s == 0:
                out.pop(mm, None)
            else:
                out[mm] = s
        return Polynomial(self.arity, out)

    def evaluate(self, point):
        """Evaluate at a tuple of rationals."""
        if len(point) != self.arity:
            raise ArityMismatch("point has wrong length")
        total = ZERO
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def _vanishes_on(self, form):
        """Cheap necessary test for divisibility: evaluate at a pseudo-random
        point of the hyperplane form = 0.  A nonzero value certifies that
        the form does not divide; zero is only a hint (and is then checked
        by the exact division)."""
        arity = self.arity
        v = _form_pivot(form)
        cv = int(form[v])
        npts = len(_EVAL_PRIMES)
        point = [_EVAL_PRIMES[i % npts] * (1 + i // npts)
                 for i in range(arity)]
        # solve form = 0 for x_v; canonical pivots are almost always 1, in
        # which case the point stays integral
        acc = int(form[0])
        for i in range(1, arity + 1):
            if i != v and form[i]:
                acc += int(form[i]) * point[i - 1]
        point[v - 1] = -acc // cv if acc % cv == 0 else -QQ(acc, cv)
        # power tables keep the evaluation linear in the support size
        max_deg = [0] * arity
        for m in self.terms:
            for i, e in enumerate(m):
                if e > max_deg[i]:
                    max_deg[i] = e
        powers = []
        for x, d in zip(point, max_deg):
            row = [1]
            for _ in range(d):
                row.append(row[-1] * x)
            powers.append(row)
        total = QQ(0)
        for m, c in self.terms.items():
            v_ = 1
            for i, e in enumerate(m):
                if e:
                    v_ = v_ * powers[i][e]
            total += c * v_
        return total == 0

    def divide_form(self, form, skip_pretest=False):
        """Exact division by an affine form; returns the quotient or None.

        The form must be canonical (see form_normalize); in particular its
        pivot coefficient is a positive integer.
        """
        if not self.terms:
            return self
        arity = self.arity
        v = _form_pivot(form)
        cv = form[v]
        if cv == 1 and form[0] == 0 and \
                all(form[i] == 0 for i in range(1, arity + 1) if i != v):
            # plain variable x_v: divisible iff every monomial contains it
            if any(m[v - 1] == 0 for m in self.terms):
                return None
            return Polynomial(arity, {m[:v - 1] + (m[v - 1] - 1,) + m[v:]: c
                                      for m, c in self.terms.items()})
        if not skip_pretest and not self._vanishes_on(form):
            return None
        # form = cv*x_v - h  with h affine in the remaining variables
        h = tuple(-c for c in form[:v]) + (0,) * (arity + 1 - v)
        # group terms by the exponent of x_v
        layers = {}
        for m, c in self.terms.items():
            layers.setdefault(m[v - 1], {})[m[:v - 1] + (0,) + m[v:]] = c
        if not layers:
            return Polynomial(arity)
        top = max(layers)
        carry = Polynomial(arity)          # h * q_k contribution flowing down
        quotient = {}
        for k in range(top, -1, -1):
            pk = Polynomial(arity, layers.get(k, {})) + carry
            if k == 0:
                return Polynomial(arity, quotient) if pk.is_zero() else None
            if any(h):
                carry = pk.mul_form(h)
            else:
                carry = Polynomial(arity)
            inv = QQ(1, int(cv))
            for m, c in pk.terms.items():
                mm = m[:v - 1] + (m[v - 1] + k - 1,) + m[v:]
                quotient[mm] = c * inv
        return None  # pragma: no cover

    def extended(self, target_arity, offset=0):
        """Re-embed into a larger variable ring, shifting x_i -> x_(i+offset)."""
        if target_arity < self.arity + offset:
            raise ArityMismatch("target arity too small")
        pad = target_arity - self.arity - offset
        pre = (0,) * offset
        post = (0,) * pad
        return Polynomial(target_arity,
                          {pre + m + post: c for m, c in self.terms.items()})

    # -- output

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]))

    def text(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = "".join("x%d^%d" % (i + 1, e)
                              for i, e in enumerate(m) if e)
            parts.append(rat_str(c) + "*" + factors if factors else rat_str(c))
        return " + ".join(parts)

    def __repr__(self):
        return "Polynomial(%d, %s)" % (self.arity, self.text())


def _subst_rec(terms, arity, images, target_arity):
    """Horner substitution, recursing over source variables."""
    if not terms:
        return Polynomial(target_arity)
    if arity == 0:
        return Polynomial.const(target_arity, next(iter(terms.values())))
    # split off the last variable
    layers = {}
    for m, c in terms.items():
        layers.setdefault(m[-1], {})[m[:-1]] = c
    img = images[arity - 1]
    result = Polynomial(target_arity)
    for k in range(max(layers), -1, -1):
        if k != max(layers):
            result = result * img
        if k in layers:
            result = result + _subst_rec(layers[k], arity - 1, images,
                                         target_arity)
    # top-down Horner: result = (..(p_top*img + p_(top-1))*img + ..)*img + p_0
    return result


# ---------------------------------------------------------------------------
# denominator forms


def _form_pivot(form):
    """Index of the highest nonzero coefficient (the canonical pivot)."""
    for i in range(len(form) - 1, 0, -1):
        if form[i]:
            return i
    raise ValueError("constant form cannot appear in a denominator")


def form_normalize(coeffs):
    """Canonicalize an affine form given as rational coefficients.

    Returns (scalar, form) with scalar a rational and form a primitive
    integer tuple whose highest-index nonzero entry is positive, so that
    input = scalar * form.  Returns (0, None) for the zero form.
    """
    coeffs = [rat(c) for c in coeffs]
    if all(c == 0 for c in coeffs):
        return ZERO, None
    den_lcm = 1
    for c in coeffs:
        q = int(c.denominator)
        den_lcm = den_lcm * q // gcd(den_lcm, q)
    ints = [int(c * den_lcm) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    ints = [v // g for v in ints]
    pivot = 0
    for i in range(len(ints) - 1, 0, -1):
        if ints[i]:
            pivot = i
            break
    if pivot == 0:
        raise ValueError("nonzero constant form in denominator")
    sign = 1
    if ints[pivot] < 0:
        sign = -1
        ints = [-v for v in ints]
    return QQ(sign * g, den_lcm), tuple(ints)


def linear_form(a, b, arity):
    """The canonical form x_a - x_b (b = 0 encodes plain x_a)."""
    if not (0 <= b < a <= arity):
        raise ArityMismatch("need 0 <= b < a <= arity, got a=%d b=%d" % (a, b))
    coeffs = [0] * (arity + 1)
    coeffs[a] = 1
    if b:
        coeffs[b] = -1
    return tuple(coeffs)


def form_difference_pair(form):
    """(a, b) if the form is x_a - x_b (or x_a when b = 0), else None."""
    if form[0] != 0:
        return None
    pos = [i for i in range(1, len(form)) if form[i] == 1]
    neg = [i for i in range(1, len(form)) if form[i] == -1]
    other = [i for i in range(1, len(form)) if form[i] not in (-1, 0, 1)]
    if other:
        return None
    if len(pos) == 1 and not neg:
        return pos[0], 0
    if len(pos) == 1 and len(neg) == 1:
        return pos[0], neg[0]
    return None


def form_text(form):
    pair = form_difference_pair(form)
    if pair:
        a, b = pair
        return "x%d" % a if b == 0 else "x%d-x%d" % (a, b)
    parts = []
    for i in range(1, len(form)):
        c = form[i]
        if not c:
            continue
        s = "x%d" % i if abs(c) == 1 else "%dx%d" % (abs(c), i)
        parts.append(("-" if c < 0 else "+") + s)
    if form[0]:
        parts.append(("+" if form[0] > 0 else "-") + str(abs(form[0])))
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def form_to_poly(form, arity):
    p = Polynomial(arity)
    if form[0]:
        p = p + Polynomial.const(arity, form[0])
    for i in range(1, arity + 1):
        if form[i]:
            p = p + Polynomial.variable(arity, i, coeff=form[i])
    return p


def form_substitute(form, images, target_arity):
    """Substitute affine images (coefficient tuples) into a form.

    images[i-1] is the coefficient tuple (c0, c1, .., cD) of the image of
    x_i.  Returns (scalar, canonical form or None).
    """
    out = [rat(form[0])] + [ZERO] * target_arity
    for i in range(1, len(form)):
        if not form[i]:
            continue
        img = images[i - 1]
        for j in range(len(img)):
            out[j] += form[i] * img[j]
    return form_normalize(out)


def affine_vector(arity, const=0, **coeffs):
    """Convenience constructor: affine_vector(3, x1=1, x2=-1)."""
    vec = [rat(const)] + [ZERO] * arity
    for name, c in coeffs.items():
        vec[int(name[1:])] = rat(c)
    return tuple(vec)


def var_vector(arity, i, negate=False):
    vec = [ZERO] * (arity + 1)
    if i:
        vec[i] = -ONE if negate else ONE
    return tuple(vec)


def diff_vector(arity, i, j):
    """Coefficient tuple of x_i - x_j in the target ring (0 means absent)."""
    vec = [ZERO] * (arity + 1)
    if i:
        vec[i] += ONE
    if j:
        vec[j] -= ONE
    return tuple(vec)


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """num / prod(den forms), normalized: no den form divides num."""

    __slots__ = ("arity", "num", "den")

    def __init__(self, arity, num, den):
        # internal: trusted inputs; use from_num_den for normalization
        self.arity = arity
        self.num = num
        self.den = den

    @classmethod
    def from_num_den(cls, num, den=()):
        """den: iterable of canonical forms, or dict form -> multiplicity."""
        arity = num.arity
        counts = {}
        if isinstance(den, dict):
            items = den.items()
        else:
            items = ((f, 1) for f in den)
        for f, k in items:
            if k < 0:
                raise ValueError("negative multiplicity")
            if k:
                counts[f] = counts.get(f, 0) + k
        return cls._normalized(arity, num, counts)

    @classmethod
    def _normalized(cls, arity, num, counts):
        if num.is_zero():
            return cls(arity, num, {})
        tester = _DivisibilityTester(num)
        for f in sorted(counts):
            while counts.get(f, 0) > 0:
                if not tester.may_divide(f):
                    break
                q = num.divide_form(f, skip_pretest=True)
                if q is None:
                    break
                num = q
                tester = _DivisibilityTester(num)
                counts[f] -= 1
                if num.is_zero():
                    return cls(arity, num, {})
        return cls(arity, num, {f: k for f, k in counts.items() if k > 0})

    # -- constructors

    @classmethod
    def zero(cls, arity):
        return cls(arity, Polynomial(arity), {})

    @classmethod
    def const(cls, arity, c):
        return cls(arity, Polynomial.const(arity, c), {})

    @classmethod
    def from_poly(cls, p):
        return cls(p.arity, p, {})

    @classmethod
    def monomial(cls, arity, exps, coeff=1):
        return cls.from_poly(Polynomial.monomial(arity, exps, coeff))

    @classmethod
    def power_of_var(cls, arity, i, n, coeff=1):
        """coeff * x_i^n for any integer n (negative allowed)."""
        if n >= 0:
            return cls.from_poly(Polynomial.variable(arity, i, n, coeff))
        return cls.from_num_den(Polynomial.const(arity, coeff),
                                {linear_form(i, 0, arity): -n})

    # -- queries

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return not self.den

    def has_structured_denominator(self):
        return all(form_difference_pair(f) for f in self.den)

    def den_degree(self):
        return sum(self.den.values())

    def degree(self):
        """Degree of a homogeneous value (num degree minus den degree)."""
        if self.num.is_zero():
            return None
        if not self.num.is_homogeneous() or any(f[0] for f in self.den):
            return None
        return self.num.degree() - self.den_degree()

    def weight(self):
        """degree + arity, the natural grading on depth-d components."""
        d = self.degree()
        return None if d is None else d + self.arity

    def is_homogeneous(self):
        return self.is_zero() or self.degree() is not None

    def pole_order(self, form):
        return self.den.get(form, 0)

    # -- arithmetic

    def _check(self, other):
        if self.arity != other.arity:
            raise ArityMismatch("rational function arities differ: %d vs %d"
                                % (self.arity, other.arity))

    def __add__(self, other):
        self._check(other)
        return rf_sum([self, other])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RationalFunction(self.arity, -self.num, dict(self.den))

    def scale(self, c):
        c = rat(c)
        if c == 0:
            return RationalFunction.zero(self.arity)
        return RationalFunction(self.arity, self.num.scale(c), dict(self.den))

    def __mul__(self, other):
        self._check(other)
        # a form divides the product numerator iff it divides one factor
        # (linear forms cut irreducible hyperplanes), so cancellation can be
        # settled factor by factor before multiplying
        f_num, g_num = self.num, other.num
        counts = dict(self.den)
        for f, k in other.den.items():
            counts[f] = counts.get(f, 0) + k
        if f_num.is_zero() or g_num.is_zero():
            return RationalFunction.zero(self.arity)
        for f in sorted(counts):
            while counts[f] > 0:
                q = f_num.divide_form(f)
                if q is not None:
                    f_num = q
                    counts[f] -= 1
                    continue
                q = g_num.divide_form(f)
                if q is not None:
                    g_num = q
                    counts[f] -= 1
                    continue
                break
        return RationalFunction(self.arity, f_num * g_num,
                                {f: k for f, k in counts.items() if k > 0})

    def divide_form_exact(self, form, power=1):
        """Divide by form^power (adds to the denominator, then normalizes)."""
        counts = dict(self.den)
        counts[form] = counts.get(form, 0) + power
        return RationalFunction._normalized(self.arity, self.num, counts)

    def equals(self, other):
        self._check(other)
        return (self - other).is_zero()

    def __eq__(self, other):
        return isinstance(other, RationalFunction) and self.equals(other)

    def __hash__(self):  # pragma: no cover
        raise TypeError("RationalFunction is not hashable")

    # -- calculus

    def partial(self, i):
        """Exact partial derivative with respect to x_i."""
        pieces = [RationalFunction(self.arity, self.num.derivative(i),
                                   dict(self.den))]
        for f, k in self.den.items():
            ci = f[i]
            if not ci:
                continue
            counts = dict(self.den)
            counts[f] = k + 1
            pieces.append(RationalFunction._normalized(
                self.arity, self.num.scale(-k * ci), counts))
        return rf_sum_a(self.arity, pieces)

    def nabla(self):
        """Sum of all partial derivatives."""
        return rf_sum_a(self.arity,
                        [self.partial(i) for i in range(1, self.arity + 1)])

    def residue(self, a, b=0):
        """Residue along x_a = x_b (b = 0: along x_a = 0).

        The result is a rational function of the same arity in which the
        slot of x_a is unused (x_a was substituted by x_b); callers that
        want a smaller arity should follow with drop_variable.  Raises
        PoleOrderError when the pole order exceeds one.
        """
        form = linear_form(a, b, self.arity)
        k = self.den.get(form, 0)
        if k == 0:
            return RationalFunction.zero(self.arity)
        if k > 1:
            raise PoleOrderError("pole of order %d along %s"
                                 % (k, form_text(form)))
        counts = {f: m for f, m in self.den.items() if f != form}
        num = self.num.subs_var(a, b)
        new_counts = {}
        scalar = ONE
        for f, m in counts.items():
            images = [var_vector(self.arity, i) for i in range(1, self.arity + 1)]
            images[a - 1] = var_vector(self.arity, b)
            s, nf = form_substitute(f, images, self.arity)
            if nf is None:
                raise PoleOrderError("denominator form %s vanishes on x%d=x%d"
                                     % (form_text(f), a, b))
            scalar *= s ** m
            new_counts[nf] = new_counts.get(nf, 0) + m
        if scalar != 1:
            num = num.scale(ONE / scalar)
        return RationalFunction._normalized(self.arity, num, new_counts)

    def laurent_residue(self, a, b=0):
        """Coefficient of 1/(x_a - x_b) in the Laurent expansion along the
        hyperplane, for poles of any order."""
        form = linear_form(a, b, self.arity)
        m = self.den.get(form, 0)
        if m == 0:
            return RationalFunction.zero(self.arity)
        if m == 1:
            return self.residue(a, b)
        counts = dict(self.den)
        counts[form] = 0
        cleared = RationalFunction._normalized(self.arity, self.num, counts)
        for _ in range(m - 1):
            cleared = cleared.partial(a)
        fact = 1
        for k in range(2, m):
            fact *= k
        return cleared.residue_free_subs(a, b).scale(QQ(1, fact))

    def laurent_coefficient_order2(self, a, b=0):
        """Coefficient of the order-2 pole along x_a = x_b.

        Used for the one named exception in the residue filtration; this is
        not a residue.
        """
        form = linear_form(a, b, self.arity)
        k = self.den.get(form, 0)
        if k > 2:
            raise PoleOrderError("pole order %d > 2" % k)
        if k < 2:
            return RationalFunction.zero(self.arity)
        counts = dict(self.den)
        counts[form] = 0
        shifted = RationalFunction._normalized(self.arity, self.num, counts)
        return shifted.residue_free_subs(a, b)

    def residue_free_subs(self, a, b):
        """Substitute x_a -> x_b assuming no pole along x_a = x_b."""
        form = linear_form(a, b, self.arity)
        if self.den.get(form, 0):
            raise PoleOrderError("value has a pole along %s" % form_text(form))
        images = [var_vector(self.arity, i) for i in range(1, self.arity + 1)]
        images[a - 1] = var_vector(self.arity, b)
        return self.substitute_affine(images, self.arity)

    # -- substitution

    def substitute_affine(self, images, target_arity, renormalize=True):
        """Compose with x_i -> affine image (coefficient tuples).

        Denominator forms are re-derived by factoring the substituted
        forms; a form substituting to zero raises PoleOrderError.
        renormalize=False is sound only for injective affine images (the
        substitution then preserves divisibility both ways).
        """
        if len(images) != self.arity:
            raise ArityMismatch("need one affine image per variable")
        scalar = ONE
        counts = {}
        for f, k in self.den.items():
            s, nf = form_substitute(f, images, target_arity)
            if nf is None:
                raise PoleOrderError(
                    "denominator form %s becomes identically zero" % form_text(f))
            scalar *= s ** k
            counts[nf] = counts.get(nf, 0) + k
        poly_images = [form_to_poly(v, target_arity) for v in images]
        num = self.num.substitute(poly_images, target_arity)
        if scalar != 1:
            num = num.scale(ONE / scalar)
        if not renormalize:
            if num.is_zero():
                return RationalFunction.zero(target_arity)
            return RationalFunction(target_arity, num, counts)
        return RationalFunction._normalized(target_arity, num, counts)

    def drop_variable(self, i):
        """Remove an unused variable slot, renumbering higher slots down."""
        for m in self.num.terms:
            if m[i - 1]:
                raise ArityMismatch("x%d appears in the numerator" % i)
        for f in self.den:
            if f[i]:
                raise ArityMismatch("x%d appears in a denominator form" % i)
        num = Polynomial(self.arity - 1,
                         {m[:i - 1] + m[i:]: c for m, c in self.num.terms.items()})
        den = {f[:i] + f[i + 1:]: k for f, k in self.den.items()}
        return RationalFunction(self.arity - 1, num, den)

    def extended(self, target_arity, offset=0):
        """View in a larger ring, with variables shifted up by offset."""
        num = self.num.extended(target_arity, offset)
        den = {}
        for f, k in self.den.items():
            nf = (f[0],) + (0,) * offset + f[1:] + (0,) * (target_arity - self.arity - offset)
            den[nf] = k
        return RationalFunction(target_arity, num, den)

    def evaluate(self, point):
        """Exact evaluation at a rational point off the polar locus."""
        num = self.num.evaluate(point)
        for f, k in self.den.items():
            v = f[0] + sum(f[i] * point[i - 1] for i in range(1, self.arity + 1))
            if v == 0:
                raise ZeroDivisionError("point lies on %s" % form_text(f))
            num /= v ** k
        return num

    def homogeneous_parts(self):
        """dict degree -> RationalFunction (degree = num part deg - den deg)."""
        if any(f[0] for f in self.den):
            raise ValueError("inhomogeneous denominator form")
        dd = self.den_degree()
        return {d - dd: RationalFunction(self.arity, p, dict(self.den))
                for d, p in self.num.homogeneous_parts().items()}

    # -- serialization

    def _den_sorted(self):
        def key(f):
            pair = form_difference_pair(f)
            return (0, pair) if pair else (1, f)
        return sorted(self.den, key=key)

    def text(self):
        num = "(%s)" % self.num.text()
        if not self.den:
            return num
        forms = []
        for f in self._den_sorted():
            forms.extend([form_text(f)] * self.den[f])
        return "%s/( %s )" % (num, " ".join(forms))

    def __repr__(self):
        return "RF[%d] %s" % (self.arity, self.text())

    def to_json_dict(self):
        if not self.has_structured_denominator():
            raise ValueError("widened affine denominators are not serializable")
        num = []
        for m, c in self.num.sorted_terms():
            p, q = as_int_pair(c)
            num.append([p, q, list(m)])
        den = []
        for f in self._den_sorted():
            den.extend([list(form_difference_pair(f))] * self.den[f])
        return {"arity": self.arity, "num": num, "den": den}

    def to_json(self):
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data):
        arity = data["arity"]
        terms = {}
        for p, q, exps in data["num"]:
            if len(exps) != arity:
                raise ParseError("exponent tuple of wrong length")
            terms[tuple(exps)] = QQ(p, q)
        num = Polynomial(arity, {m: c for m, c in terms.items() if c != 0})
        den = {}
        for a, b in data["den"]:
            f = linear_form(a, b, arity)
            den[f] = den.get(f, 0) + 1
        return cls.from_num_den(num, den)

    @classmethod
    def from_json(cls, s):
        return cls.from_json_dict(json.loads(s))


class _DivisibilityTester:
    """Shared evaluation tables for divisibility pre-tests on one numerator.

    For a pivot variable v, the numerator is collapsed to a one-variable
    polynomial sum(S_e t^e) by evaluating all other variables at a fixed
    integer point; testing a form with pivot v is then a single Horner
    evaluation at the point of the hyperplane.  A nonzero value certifies
    non-divisibility; zero falls through to the exact division.
    """

    __slots__ = ("terms", "arity", "point", "layers")

    def __init__(self, poly):
        self.terms = poly.terms
        self.arity = poly.arity
        npts = len(_EVAL_PRIMES)
        self.point = [_EVAL_PRIMES[i % npts] * (1 + i // npts)
                      for i in range(self.arity)]
        self.layers = {}

    def _layer(self, v):
        cached = self.layers.get(v)
        if cached is not None:
            return cached
        arity = self.arity
        max_deg = [0] * arity
        for m in self.terms:
            for i in range(arity):
                if m[i] > max_deg[i]:
                    max_deg[i] = m[i]
        powers = []
        for i in range(arity):
            if i == v - 1:
                powers.append(None)
                continue
            row = [1]
            x = self.point[i]
            for _ in range(max_deg[i]):
                row.append(row[-1] * x)
            powers.append(row)
        layer = {}
        for m, c in self.terms.items():
            val = 1
            for i in range(arity):
                e = m[i]
                if e and i != v - 1:
                    val *= powers[i][e]
            e = m[v - 1]
            layer[e] = layer.get(e, ZERO) + c * val
        self.layers[v] = layer
        return layer

    def may_divide(self, form):
        v = _form_pivot(form)
        cv = int(form[v])
        acc = int(form[0])
        for i in range(1, self.arity + 1):
            if i != v and form[i]:
                acc += int(form[i]) * self.point[i - 1]
        t = -acc // cv if acc % cv == 0 else -QQ(acc, cv)
        layer = self._layer(v)
        total = ZERO
        for e, s in layer.items():
            total += s * t ** e
        return total == 0


def rf_sum(values):
    """Exact sum of rational functions over one common denominator."""
    values = list(values)
    if not values:
        raise ValueError("rf_sum needs the arity; use rf_sum_a")
    return rf_sum_a(values[0].arity, values)


def rf_sum_a(arity, values):
    values = [v for v in values if not v.is_zero()]
    if not values:
        return RationalFunction.zero(arity)
    common = {}
    for v in values:
        if v.arity != arity:
            raise ArityMismatch("mixed arities in sum")
        for f, k in v.den.items():
            if common.get(f, 0) < k:
                common[f] = k
    total = {}
    for v in values:
        num = v.num
        for f, k in common.items():
            missing = k - v.den.get(f, 0)
            for _ in range(missing):
                num = num.mul_form(f)
        for m, c in num.terms.items():
            s = total.get(m, ZERO) + c
            if s == 0:
                total.pop(m, None)
            else:
                total[m] = s
    return RationalFunction._normalized(arity, Polynomial(arity, total),
                                        dict(common))


# ---------------------------------------------------------------------------
# module-level operation aliases


def add(f, g):
    return f + g


def mul(f, g):
    return f * g


def scale(f, c):
    return f.scale(c)


def substitute_affine(f, images, target_arity):
    return f.substitute_affine(images, target_arity)


def residue(f, a, b=0):
    return f.residue(a, b)


def equals(f, g):
    return f.equals(g)


def is_zero(f):
    return f.is_zero()


def partial_derivative(f, i):
    return f.partial(i)


def nabla(f):
    return f.nabla()


# ---------------------------------------------------------------------------
# text parsing


_TOKEN = re.compile(r"\s*(x\d+|\^|\d+/\d+|\d+|[+\-*/()])")


def _tokenize(s):
    tokens = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            if s[pos:].strip():
                raise ParseError("unexpected character %r" % s[pos], pos)
            break
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent parser for the canonical text grammar.

    poly   := term ('+' term)*
    term   := ['-'] coeff ['*' factors] | ['-'] factors
    factors:= ('x' INT ['^' INT])+
    rf     := '(' poly ')' ['/' '(' form+ ')']
            | poly ['/' denprod]        (tolerant input form)
    denprod:= '(' factor ('*' factor)* ')'
    factor := 'x' INT | '(' form ')'
    form   := 'x' INT ['-' 'x' INT]
    """

    def __init__(self, s, arity=None):
        self.s = s
        self.tokens = _tokenize(s)
        self.i = 0
        self.arity = arity
        self.max_var = 0

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def next(self):
        if self.i >= len(self.tokens):
            raise ParseError("unexpected end of input", len(self.s))
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok, pos = self.next()
        if tok != value:
            raise ParseError("expected %r, found %r" % (value, tok), pos)

    def var_index(self, tok, pos):
        idx = int(tok[1:])
        if idx == 0:
            raise ParseError("x0 is internal and cannot be used", pos)
        self.max_var = max(self.max_var, idx)
        return idx

    def parse_factors(self):
        exps = {}
        while self.peek() is not None and self.peek().startswith("x"):
            tok, pos = self.next()
            idx = self.var_index(tok, pos)
            power = 1
            if self.peek() == "^":
                self.next()
                ptok, ppos = self.next()
                if not ptok.isdigit():
                    raise ParseError("expected exponent", ppos)
                power = int(ptok)
            exps[idx] = exps.get(idx, 0) + power
        return exps

    def parse_term(self):
        sign = 1
        while self.peek() in ("+", "-"):
            tok, _ = self.next()
            if tok == "-":
                sign = -sign
        tok = self.peek()
        if tok is None:
            raise ParseError("empty term", len(self.s))
        if tok.startswith("x"):
            coeff = QQ(sign)
            exps = self.parse_factors()
        else:
            ctok, cpos = self.next()
            try:
                coeff = rat_from_str(ctok) * sign
            except ValueError:
                raise ParseError("bad coefficient %r" % ctok, cpos)
            exps = {}
            if self.peek() == "*":
                self.next()
                exps = self.parse_factors()
        return coeff, exps

    def parse_poly_terms(self):
        terms = [self.parse_term()]
        while self.peek() in ("+", "-"):
            if self.peek() == "+":
                self.next()
            terms.append(self.parse_term())
        return terms

    def parse_form(self):
        tok, pos = self.next()
        if not tok.startswith("x"):
            raise ParseError("expected a variable in a denominator form", pos)
        a = self.var_index(tok, pos)
        b = 0
        if self.peek() == "-":
            self.next()
            tok2, pos2 = self.next()
            if not tok2.startswith("x"):
                raise ParseError("expected a variable after '-'", pos2)
            b = self.var_index(tok2, pos2)
        return a, b

    def parse(self):
        # numerator
        if self.peek() == "(":
            self.next()
            terms = self.parse_poly_terms()
            self.expect(")")
        else:
            terms = self.parse_poly_terms()
        pairs = []
        if self.peek() == "/":
            self.next()
            self.expect("(")
            while True:
                if self.peek() == "(":
                    self.next()
                    pairs.append(self.parse_form())
                    self.expect(")")
                elif self.peek() is not None and self.peek().startswith("x"):
                    pairs.append(self.parse_form())
                else:
                    tok, pos = self.next()
                    raise ParseError("expected a denominator factor, found %r"
                                     % tok, pos)
                if self.peek() == "*":
                    self.next()
                    continue
                if self.peek() == ")":
                    self.next()
                    break
        if self.i != len(self.tokens):
            tok, pos = self.tokens[self.i]
            raise ParseError("trailing input %r" % tok, pos)
        arity = self.arity if self.arity is not None else self.max_var
        if self.max_var > arity:
            raise ParseError("variable x%d exceeds arity %d"
                             % (self.max_var, arity))
        num = Polynomial(arity)
        for coeff, exps in terms:
            m = [0] * arity
            for idx, e in exps.items():
                m[idx - 1] = e
            num = num + Polynomial.monomial(arity, tuple(m), coeff)
        den = {}
        sign = ONE
        for a, b in pairs:
            if b and b > a:
                a, b = b, a
                sign = -sign
            if a == b:
                raise ParseError("zero denominator form")
            f = linear_form(a, b, arity)
            den[f] = den.get(f, 0) + 1
        if sign != 1:
            num = num.scale(sign)
        return RationalFunction.from_num_den(num, den)


def parse(s, arity=None):
    """Parse the canonical text form (tolerant about '*' in denominators)."""
    return _Parser(s, arity).parse()
