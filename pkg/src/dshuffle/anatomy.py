"""Decomposition of zeta elements into iterated brackets of generators.

The solver works depth by depth: the unknowns are coefficients of
right-nested bracket words in the generators of odd weight (including the
weight -1 counterterm generator), and the linear conditions force the
residue of the running total to vanish at each depth.  Underdetermined
systems are resolved deterministically: unknowns are ordered with the
canonical word list and free coordinates are pinned to zero, with the
kernel dimension reported.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rationals import QQ, ZERO, rat_str
from .ratfun import RationalFunction
from .series import DepthSeries, series_ihara_bracket
from .gens import chi as chi_gen
from .gens import psi_minus_one, psi_odd, psi_zero, Q4
from .resflt import R
from . import linalg


class SolveError(ValueError):
    pass


@dataclass
class BracketExpression:
    """Rational combination of right-nested bracket words over generators.

    A word (a1, .., ak) denotes the nested bracket of the generators of
    weights a1, .., ak, with the pairing at the innermost position.
    """
    terms: dict
    weight: int
    basis: str = "psi"
    kernel_dim: int = 0

    def to_json_dict(self):
        words = sorted(self.terms, key=lambda w: (len(w), w))
        return {"weight": self.weight,
                "basis": self.basis,
                "kernel_dim": self.kernel_dim,
                "terms": [{"word": list(w), "coeff": rat_str(self.terms[w])}
                          for w in words]}

    def text(self):
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            name = "{%s}" % ",".join(str(a) for a in w) if len(w) > 1 \
                else str(w[0])
            parts.append("%s * %s[%s]" % (rat_str(c), self.basis, name))
        return " + ".join(parts) if parts else "0"


from functools import lru_cache


@lru_cache(maxsize=None)
def generator_series(weight, max_depth, basis="psi"):
    if basis == "psi":
        if weight == -1:
            return psi_minus_one(max_depth)
        if weight == 0:
            return psi_zero(max_depth)
        if weight >= 3 and weight % 2 == 1:
            return psi_odd((weight - 1) // 2, max_depth)
        raise ValueError("no generator of weight %d" % weight)
    if basis == "chi":
        return chi_gen(weight, max_depth)
    raise ValueError("unknown basis %r" % basis)


@lru_cache(maxsize=None)
def evaluate_word(word, max_depth, basis="psi"):
    """Right-nested bracket of generator series (cached; values are
    immutable).

    Depth budgets shrink going inward: a partial bracket over m generators
    has minimum support m, so each factor is only ever needed up to
    max_depth minus the depth already claimed by its partners.
    """
    k = len(word)
    series = generator_series(word[-1], max(max_depth - (k - 1), 1), basis)
    for i, a in enumerate(reversed(word[:-1])):
        consumed = i + 1
        gen = generator_series(a, max(max_depth - consumed, 1), basis)
        series = series_ihara_bracket(gen, series)
    return series


def evaluate(expr, max_depth):
    total = None
    for word in sorted(expr.terms, key=lambda w: (len(w), w)):
        piece = evaluate_word(word, max_depth,
                              expr.basis).scale(expr.terms[word])
        total = piece if total is None else total + piece
    if total is None:
        return DepthSeries.zero(max_depth)
    return total


def bracket_basis(weight, depth_bound, require_minus_one=False):
    """Canonical triple-bracket words of the given odd total weight.

    The list is ordered for the deterministic pinning rule: first the word
    with two weight -1 entries, then the (a, b, -1) words by descending
    first index.
    """
    if weight % 2 == 0:
        raise SolveError("odd total weight required")
    words = []
    if depth_bound >= 3:
        words.append((-1, -1, weight + 2))
        pairs = []
        for a in range(weight - 2, 2, -2):
            b = weight + 1 - a
            if b >= 3:
                pairs.append((a, b, -1))
        words.extend(pairs)
        if not require_minus_one:
            # words without any -1 entry would belong here; for odd weight
            # and length three they all contain -1 already
            pass
    if not words:
        raise SolveError("empty bracket basis for weight %d, depth %d"
                         % (weight, depth_bound))
    return words


def _residue_rows(residuals, rhs):
    """Linear rows (one per monomial) for sum c_i residuals_i + rhs = 0."""
    common = {}
    for r in residuals + [rhs]:
        for f, k in r.den.items():
            common[f] = max(common.get(f, 0), k)
    cleared = []
    monos = set()
    for r in residuals + [rhs]:
        num = r.num
        for f, k in common.items():
            for _ in range(k - r.den.get(f, 0)):
                num = num.mul_form(f)
        cleared.append(num)
        monos.update(num.terms)
    rows, rhs_vec = [], []
    for m in sorted(monos):
        rows.append([c.terms.get(m, ZERO) for c in cleared[:-1]])
        rhs_vec.append(-cleared[-1].terms.get(m, ZERO))
    return rows, rhs_vec


def solve_sigma(weight, depth_bound, require_minus_one=False, basis="psi"):
    """Coefficients making the total residue vanish through depth_bound.

    Returns a BracketExpression with leading word (weight,) at coefficient
    one.  Raises SolveError when the conditions are inconsistent; an
    underdetermined system is resolved by pinning free coordinates to zero
    and recorded in kernel_dim.
    """
    if weight % 2 == 0 or weight < 3:
        raise SolveError("weight must be odd and >= 3")
    n = (weight - 1) // 2
    if depth_bound > 2 * n:
        raise SolveError("depth bound %d beyond the solvable range %d"
                         % (depth_bound, 2 * n))
    words = bracket_basis(weight, min(depth_bound, 3),
                          require_minus_one=require_minus_one) \
        if depth_bound >= 3 else []
    lead = generator_series(weight, depth_bound, basis)
    word_series = [evaluate_word(w, depth_bound, basis) for w in words]
    rows, rhs = [], []
    for d in range(2, depth_bound + 1):
        residuals = [R(s.component(d)) for s in word_series]
        lead_res = R(lead.component(d))
        if all(r.is_zero() for r in residuals) and lead_res.is_zero():
            continue
        r_rows, r_rhs = _residue_rows(residuals, lead_res)
        rows.extend(r_rows)
        rhs.extend(r_rhs)
    if rows:
        sol, kernel_dim, consistent = linalg.solve_affine(rows, rhs)
        if not consistent:
            raise SolveError("residue conditions are inconsistent")
    else:
        sol, kernel_dim = [ZERO] * len(words), len(words)
    terms = {(weight,): QQ(1)}
    for w, c in zip(words, sol):
        if c != 0:
            terms[w] = c
    return BracketExpression(terms, weight, basis=basis,
                             kernel_dim=kernel_dim)


def chi_q4_decomposition(weight):
    """Depth-5 decomposition over the twisted basis with the depth-4
    counterterm.

    Solves for the coefficients of the triple bracket words and of the
    bracket of x1^(weight-1) with the exceptional depth-4 element so that
    the total residue vanishes through depth 5.  Returns (expression,
    q4_coefficient).
    """
    words = bracket_basis(weight, 3)
    lead = generator_series(weight, 5, "chi")
    word_series = [evaluate_word(w, 5, "chi") for w in words]
    q4_word = series_ihara_bracket(
        DepthSeries.single(RationalFunction.power_of_var(1, 1, weight - 1),
                           5, weight=weight),
        DepthSeries.single(Q4(), 5, weight=0))
    columns = word_series + [q4_word]
    rows, rhs = [], []
    for d in range(2, 5):
        residuals = [R(s.component(d)) for s in columns]
        lead_res = R(lead.component(d))
        if all(r.is_zero() for r in residuals) and lead_res.is_zero():
            continue
        r_rows, r_rhs = _residue_rows(residuals, lead_res)
        rows.extend(r_rows)
        rhs.extend(r_rhs)
    # at depth 5 only the residues along the inner divisors x_i = 0 are
    # used: length-5 words have the restricted pole shape and cannot
    # contribute there, so these conditions close over this basis
    for i in (2, 3, 4):
        residuals = [s.component(5).residue(i).drop_variable(i)
                     for s in columns]
        lead_res = lead.component(5).residue(i).drop_variable(i)
        if all(r.is_zero() for r in residuals) and lead_res.is_zero():
            continue
        r_rows, r_rhs = _residue_rows(residuals, lead_res)
        rows.extend(r_rows)
        rhs.extend(r_rhs)
    sol, kernel_dim, consistent = linalg.solve_affine(rows, rhs)
    if not consistent:
        raise SolveError("residue conditions are inconsistent")
    terms = {(weight,): QQ(1)}
    for w, c in zip(words, sol[:-1]):
        if c != 0:
            terms[w] = c
    expr = BracketExpression(terms, weight, basis="chi",
                             kernel_dim=kernel_dim)
    return expr, sol[-1]


def coefficient_of_word(series, word):
    """Coefficient of the monomial encoding a composition word.

    The word (n1, .., nr) selects the monomial x1^(n1-1) .. xr^(nr-1) of
    the depth-r component, which must be polynomial.
    """
    r = len(word)
    comp = series.component(r)
    if not comp.is_polynomial():
        raise ValueError("depth-%d component is not polynomial" % r)
    mono = tuple(k - 1 for k in word)
    if any(e < 0 for e in mono):
        raise ValueError("word entries must be >= 1")
    return comp.num.terms.get(mono, ZERO)


def congruence_check(value, prime):
    """All numerator coefficients divisible by the prime.

    The value must have denominators coprime to the prime (exact rational
    coefficients; the denominator multiset is untouched).
    """
    if isinstance(value, DepthSeries):
        items = [c for _, c in sorted(value.components.items())]
    else:
        items = [value]
    for f in items:
        for c in f.num.terms.values():
            p, q = int(c.numerator), int(c.denominator)
            if q % prime == 0:
                raise ValueError("denominator not coprime to %d" % prime)
            if p % prime != 0:
                return False
    return True


def relation_check(left, right, depth_bound):
    """Compare two depth series through the given depth."""
    from .dsh_check import EquationReport
    diff = left - right
    residual = RationalFunction.zero(1)
    passed = True
    for d in range(1, depth_bound + 1):
        c = diff.component(d)
        if not c.is_zero():
            residual = c
            passed = False
            break
    return EquationReport("relation", (depth_bound,), residual, passed)
