"""Depth-graded sequences of rational functions and the Ihara calculus.

A DepthSeries models an element of the product over d >= 1 of the rings
O_d, with an optional scalar (depth-zero) part used by the stuffle
exponentials.  Components are reduced functions of x_1..x_d; the
y-coordinate picture (translation-invariant functions of y_0..y_r) is
reached through unreduce/reduce, with y_i stored in variable slot i+1.

Truncation: components are only stored up to max_depth, and binary
operations propagate the depth range on which the result is exact, so no
silently wrong high-depth component is ever produced.
"""

from __future__ import annotations

from .rationals import QQ, ZERO, ONE, rat
from .ratfun import (ArityMismatch, RationalFunction, diff_vector,
                     rf_sum_a, var_vector)


class TranslationError(ValueError):
    pass


class DepthSeries:
    """Mapping depth -> RationalFunction plus an optional scalar part."""

    __slots__ = ("components", "weight", "max_depth", "const", "complete")

    def __init__(self, components, max_depth, weight=None, const=ZERO,
                 complete=False):
        comps = {}
        for d, f in components.items():
            if f.arity != d:
                raise ArityMismatch("depth %d component has arity %d"
                                    % (d, f.arity))
            if d > max_depth:
                continue
            if not f.is_zero():
                comps[d] = f
        self.components = comps
        self.max_depth = max_depth
        self.weight = weight
        self.const = rat(const)
        self.complete = complete
        if weight is not None:
            for d, f in comps.items():
                deg = f.degree()
                if deg is not None and deg != weight - d:
                    raise ValueError("depth %d component has degree %d, "
                                     "expected %d" % (d, deg, weight - d))

    @classmethod
    def single(cls, f, max_depth=None, weight=None):
        """Series supported in one depth (complete: zero elsewhere)."""
        d = f.arity
        return cls({d: f}, max_depth if max_depth is not None else d,
                   weight=weight, complete=True)

    @classmethod
    def unit(cls, max_depth):
        return cls({}, max_depth, weight=0, const=ONE, complete=True)

    @classmethod
    def zero(cls, max_depth):
        return cls({}, max_depth, const=ZERO, complete=True)

    def component(self, d):
        if d == 0:
            raise ValueError("use .const for the scalar part")
        if d > self.max_depth:
            raise ValueError("depth %d beyond truncation order %d"
                             % (d, self.max_depth))
        f = self.components.get(d)
        return f if f is not None else RationalFunction.zero(d)

    def min_support(self):
        """Smallest depth with a nonzero component (None if pure scalar)."""
        return min(self.components) if self.components else None

    def truncated(self, max_depth):
        return DepthSeries(self.components, max_depth, weight=self.weight,
                           const=self.const, complete=self.complete)

    def is_zero(self):
        return not self.components and self.const == 0

    # -- linear structure

    def __add__(self, other):
        md = min(self.max_depth, other.max_depth)
        comps = {}
        for d in set(self.components) | set(other.components):
            if d <= md:
                comps[d] = self.component(d) + other.component(d)
        w = self.weight if self.weight == other.weight else None
        return DepthSeries(comps, md, weight=w, const=self.const + other.const,
                           complete=self.complete and other.complete)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = rat(c)
        return DepthSeries({d: f.scale(c) for d, f in self.components.items()},
                           self.max_depth, weight=self.weight,
                           const=self.const * c, complete=self.complete)

    def equals(self, other, through_depth=None):
        md = min(self.max_depth, other.max_depth)
        if through_depth is not None:
            md = min(md, through_depth)
        if self.const != other.const:
            return False
        return all(self.component(d).equals(other.component(d))
                   for d in range(1, md + 1))

    def __repr__(self):
        body = ", ".join("%d: %s" % (d, f.text())
                         for d, f in sorted(self.components.items()))
        return "DepthSeries(max_depth=%d%s){%s}" % (
            self.max_depth,
            "" if self.const == 0 else ", const=%s" % self.const, body)

    def to_json_dict(self):
        data = {"max_depth": self.max_depth,
                "components": {str(d): f.to_json_dict()
                               for d, f in sorted(self.components.items())}}
        if self.weight is not None:
            data["weight"] = self.weight
        return data

    @classmethod
    def from_json_dict(cls, data):
        comps = {int(d): RationalFunction.from_json_dict(f)
                 for d, f in data["components"].items()}
        return cls(comps, data["max_depth"], weight=data.get("weight"))


def _binary_max_depth(f, g):
    """Exactness bound for a depth-additive binary operation.

    The depth-d output needs a-components up to d - min_support(b) (and up
    to d itself when b has a scalar part), so a's truncation order caps the
    exact range unless a is complete.
    """
    bounds = []

    def side(a, b):
        if a.complete:
            return
        ms = b.min_support()
        if ms is not None:
            bounds.append(a.max_depth + ms)
        if b.const != 0:
            bounds.append(a.max_depth)

    side(f, g)
    side(g, f)
    if not bounds:
        return max(f.max_depth, g.max_depth)
    return min(bounds)


# ---------------------------------------------------------------------------
# coordinate changes


def unreduce(f):
    """Reduced f(x_1..x_r) -> translation-invariant f(y_0..y_r).

    Slot i of the result holds y_(i-1); x_i maps to y_i - y_0.
    """
    r = f.arity
    images = [diff_vector(r + 1, i + 1, 1) for i in range(1, r + 1)]
    return f.substitute_affine(images, r + 1, renormalize=False)


def is_translation_invariant(f):
    """Check nabla f = 0 for a y-coordinate function."""
    return f.nabla().is_zero()


def reduce_y(f):
    """Translation-invariant f(y_0..y_r) -> reduced f(x_1..x_r)."""
    if not is_translation_invariant(f):
        raise TranslationError("function is not translation invariant")
    r = f.arity - 1
    images = [var_vector(r, 0)] + [var_vector(r, i) for i in range(1, r + 1)]
    return f.substitute_affine(images, r)


# ---------------------------------------------------------------------------
# concatenation products


def shuffle_concat(f, g):
    """f(x_1..x_r) * g(x_(r+1)-x_r, .., x_(r+s)-x_r)."""
    r, s = f.arity, g.arity
    n = r + s
    if s == 0 or g.is_zero():
        return f.extended(n) if n > r else f
    images = [diff_vector(n, r + j, r if r else 0) for j in range(1, s + 1)]
    return f.extended(n) * g.substitute_affine(images, n, renormalize=False)


def stuffle_concat(f, g):
    """f(x_1..x_p) * g(x_(p+1)..x_(p+q)), disjoint variable blocks."""
    p, q = f.arity, g.arity
    n = p + q
    return f.extended(n) * g.extended(n, offset=p)


def series_stuffle(f, g):
    """Extension of the stuffle concatenation to depth series."""
    md = _binary_max_depth(f, g)
    comps = {}
    for d in range(1, md + 1):
        parts = []
        if f.const != 0:
            parts.append(g.component(d).scale(f.const))
        if g.const != 0:
            parts.append(f.component(d).scale(g.const))
        for i in range(1, d):
            fi = f.components.get(i)
            gj = g.components.get(d - i)
            if fi is not None and gj is not None:
                parts.append(stuffle_concat(fi, gj))
        comps[d] = rf_sum_a(d, parts)
    w = None
    if f.weight is not None and g.weight is not None:
        w = f.weight + g.weight
    return DepthSeries(comps, md, weight=w, const=f.const * g.const,
                       complete=f.complete and g.complete)


def series_stuffle_bracket(f, g):
    return series_stuffle(f, g) - series_stuffle(g, f)


def stuffle_exp(nu, max_depth):
    """exp of a scalar-free series in the stuffle algebra."""
    if nu.const != 0:
        raise ValueError("exponential needs a scalar-free argument")
    total = DepthSeries.unit(max_depth)
    term = DepthSeries.unit(max_depth)
    for k in range(1, max_depth + 1):
        term = series_stuffle(term, nu).scale(QQ(1, k)).truncated(max_depth)
        total = total + term
        if term.is_zero():
            break
    return total


# ---------------------------------------------------------------------------
# linearized Ihara action


def _ihara_action_homogeneous(f, g, deg_f):
    """circ-formula for a homogeneous depth-r component acting on depth-s."""
    r, s = f.arity, g.arity
    n = r + s
    sign = QQ(1) if (deg_f + r) % 2 == 0 else QQ(-1)
    parts = []
    for i in range(0, s + 1):
        f_imgs = [diff_vector(n, i + k, i) for k in range(1, r + 1)]
        g_imgs = ([var_vector(n, j) for j in range(1, i + 1)]
                  + [var_vector(n, j) for j in range(i + r + 1, n + 1)])
        parts.append(f.substitute_affine(f_imgs, n, renormalize=False)
                     * g.substitute_affine(g_imgs, n, renormalize=False))
    for i in range(1, s + 1):
        f_imgs = [diff_vector(n, i + r - k, i + r) for k in range(1, r + 1)]
        g_imgs = ([var_vector(n, j) for j in range(1, i)]
                  + [var_vector(n, j) for j in range(i + r, n + 1)])
        parts.append((f.substitute_affine(f_imgs, n, renormalize=False)
                      * g.substitute_affine(g_imgs, n, renormalize=False))
                     .scale(sign))
    return rf_sum_a(n, parts)


def ihara_action_component(f, g):
    """Linearized Ihara action on single components (any arities >= 1)."""
    if f.is_zero() or g.is_zero():
        return RationalFunction.zero(f.arity + g.arity)
    parts = [_ihara_action_homogeneous(RationalFunction(f.arity, piece.num,
                                                        dict(piece.den)),
                                       g, deg)
             for deg, piece in f.homogeneous_parts().items()]
    return rf_sum_a(f.arity + g.arity, parts)


def ihara_bracket_component(f, g):
    return ihara_action_component(f, g) - ihara_action_component(g, f)


def series_ihara_action(f, g):
    """Per-depth action: (f o g)^(d) = sum over i+j=d of f^(i) o g^(j)."""
    if f.const != 0:
        raise ValueError("left action of a scalar is not defined")
    md = _binary_max_depth(f, g)
    comps = {}
    for d in range(1, md + 1):
        parts = []
        if g.const != 0 and d in f.components:
            parts.append(f.components[d].scale(g.const))
        for i in range(1, d):
            fi = f.components.get(i)
            gj = g.components.get(d - i)
            if fi is not None and gj is not None:
                parts.append(ihara_action_component(fi, gj))
        comps[d] = rf_sum_a(d, parts)
    w = None
    if f.weight is not None and g.weight is not None:
        w = f.weight + g.weight
    return DepthSeries(comps, md, weight=w, const=ZERO,
                       complete=f.complete and g.complete)


def series_ihara_bracket(f, g):
    return series_ihara_action(f, g) - series_ihara_action(g, f)


# ---------------------------------------------------------------------------
# dihedral operators


def sigma(f):
    """Antipode involution: (-1)^r f(x_r-x_(r-1), .., x_r-x_1, x_r)."""
    r = f.arity
    images = [diff_vector(r, r, r - j) for j in range(1, r)] + [var_vector(r, r)]
    out = f.substitute_affine(images, r, renormalize=False)
    return out if r % 2 == 0 else -out


def tau(f):
    """Stuffle reversal: (-1)^r f(x_r, .., x_1)."""
    r = f.arity
    images = [var_vector(r, r + 1 - j) for j in range(1, r + 1)]
    out = f.substitute_affine(images, r, renormalize=False)
    return out if r % 2 == 0 else -out


def cyclic_rotate(f):
    """tau o sigma, the signed cyclic rotation of order r+1 on y-labels."""
    return tau(sigma(f))


def dihedral_bracket(f, g):
    """Ihara bracket computed by summing over cyclic label rotations.

    Valid for inputs with the cyclic/antipodal symmetries of the polar
    dihedral Lie algebra; agrees with the general bracket there.  The sum
    is oriented to match the commutator f o g - g o f.
    """
    r, s = f.arity, g.arity
    n = r + s
    fy = unreduce(f)   # arity r+1, slot k holds y_(k-1)
    gy = unreduce(g)
    parts = []
    for i in range(0, n + 1):
        # f(y_i, .., y_(i+r)) in slots mod n+1
        f_imgs = [var_vector(n + 1, ((i + k) % (n + 1)) + 1)
                  for k in range(0, r + 1)]
        g1 = [var_vector(n + 1, ((i + r + k) % (n + 1)) + 1)
              for k in range(0, s + 1)]
        g2 = [var_vector(n + 1, ((i + r + 1 + k) % (n + 1)) + 1)
              for k in range(0, s + 1)]
        fi = fy.substitute_affine(f_imgs, n + 1, renormalize=False)
        parts.append(fi * gy.substitute_affine(g2, n + 1, renormalize=False))
        parts.append(-(fi * gy.substitute_affine(g1, n + 1,
                                                 renormalize=False)))
    return reduce_y(rf_sum_a(n + 1, parts))


# ---------------------------------------------------------------------------
# truncation


def plus_truncate(xi):
    """Kill every component of homogeneous degree <= 0."""
    if xi.weight is None:
        raise ValueError("plus truncation needs a homogeneous weight")
    comps = {d: f for d, f in xi.components.items() if xi.weight - d >= 1}
    return DepthSeries(comps, xi.max_depth, weight=xi.weight,
                       complete=xi.complete)
