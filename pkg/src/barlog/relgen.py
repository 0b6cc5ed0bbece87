"""Generation and verification of the generalized harmonic product
relations, and the two-contour decomposition consistency check of the
normalized fundamental solution.

Each relation equates a product L(theta1(W'); z1) L(theta2(W''); z2)
with the contour integral of the split integrable representative
phi(W', W''), read off factorwise: the left factor integrates along
the z2 leg first, so each right-hand term is a product of a main-z2
hyperlogarithm and a main-z1 one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .duality import FORM_DIRECTIONS, iota, phi, theta
from .hyperlog import eval_series, word_to_term
from .ipbenv import alpha_pair, omega_power, w0_pairs, _reduce_word, \
    _split_pair, DIRECTIONS
from .words import TensorPoly, WordPoly, FORM_BASE


@dataclass(frozen=True)
class Relation:
    """One generalized harmonic product relation.

    lhs is the ordered pair of factor terms (main z1, main z2); rhs is
    a tuple of (coefficient, main-z2 term, main-z1 term) triples.
    """
    w1: tuple
    w2: tuple
    degree: int
    lhs: tuple
    rhs: tuple
    trivial: bool

    def sorted_rhs(self):
        return tuple(sorted(self.rhs, key=lambda t: (t[1].index,
                                                     t[1].letters,
                                                     t[2].index,
                                                     t[2].letters)))

    def render(self):
        left = " * ".join(t.render() for t in self.lhs if t.depth) or "1"
        parts = []
        for c, t2, t1 in self.sorted_rhs():
            factors = [t.render() for t in (t2, t1) if t.depth]
            body = " * ".join(factors) or "1"
            parts.append(f"{'+' if c > 0 else '-'} {abs(c)}*{body}")
        return f"{left} = {' '.join(parts)}"

    def __eq__(self, other):
        return (isinstance(other, Relation)
                and (self.w1, self.w2) == (other.w1, other.w2)
                and self.lhs == other.lhs
                and sorted(self.sorted_rhs()) == sorted(other.sorted_rhs()))


def _term_key(t):
    """Function identity of a term: an all-param term is a function of
    the product z1*z2, so its main variable is immaterial."""
    if t.depth == 0:
        return None
    if all(a == "param" for a in t.letters):
        return ("prod", t.index)
    return (t.main_var, t.index, t.letters)


def generate_relation(w1, w2):
    """The relation attached to a product-basis pair of the 1x2
    splitting: both factor words must avoid trailing Z1/Z2."""
    w1, w2 = tuple(w1), tuple(w2)
    lhs = (word_to_term(theta(w1, "1x2", "left")),
           word_to_term(theta(w2, "1x2", "right")))
    split = iota(phi(w1, w2, direction="1x2"), "2x1")
    rhs = []
    for (u, v), c in split.sorted_terms():
        rhs.append((c, word_to_term(u), word_to_term(v)))
    rhs = tuple(rhs)
    trivial = (len(rhs) == 1 and rhs[0][0] == 1 and
               sorted(filter(None, map(_term_key, rhs[0][1:])))
               == sorted(filter(None, map(_term_key, lhs))))
    return Relation(w1=w1, w2=w2, degree=len(w1) + len(w2),
                    lhs=lhs, rhs=rhs, trivial=trivial)


def generate_all(s):
    """All relations of total degree s, in enumeration order."""
    return [generate_relation(w1, w2) for w1, w2 in w0_pairs(s, "1x2")]


def _product_eval(t_a, t_b, z1, z2, max_n):
    """Value and honest truncation bound of a product of two terms."""
    ra = eval_series(t_a, z1, z2, max_n)
    rb = eval_series(t_b, z1, z2, max_n)
    value = ra.value * rb.value
    bound = (abs(ra.value) * rb.truncation_bound
             + abs(rb.value) * ra.truncation_bound
             + ra.truncation_bound * rb.truncation_bound)
    return value, bound


def verify_relation(r, points, max_n=10000, tol=1e-8):
    """Numeric witness of a relation at the given (z1, z2) points.

    Returns a list of {point, lhs, rhs, residual, bound, passed}; a
    point passes when the residual does not exceed tol plus the
    combined truncation bounds.
    """
    report = []
    for z1, z2 in points:
        lv, lb = _product_eval(r.lhs[0], r.lhs[1], z1, z2, max_n)
        rv, rb = 0.0 + 0j, 0.0
        for c, t2, t1 in r.rhs:
            v, b = _product_eval(t2, t1, z1, z2, max_n)
            rv += complex(c) * v
            rb += abs(c) * b
        residual = abs(lv - rv)
        bound = lb + rb
        report.append({
            "point": (z1, z2),
            "lhs": lv,
            "rhs": rv,
            "residual": residual,
            "bound": bound,
            "passed": residual <= tol + bound,
        })
    return report


# -- decomposition consistency ----------------------------------------------

def _theta_eval(pair, direction, z1, z2, max_n):
    """Value/bound of L(theta1(W'); main) L(theta2(W''); other)."""
    w1, w2 = pair
    t1 = word_to_term(theta(w1, direction, "left"))
    t2 = word_to_term(theta(w2, direction, "right"))
    return _product_eval(t1, t2, z1, z2, max_n)


def _numeric_coeffs(s, direction, z1, z2, max_n):
    """Coefficients of the degree-s solution kernel at a point, in the
    1x2 product basis, evaluated through one contour's expansion."""
    acc = {}
    bound = 0.0
    for pair in w0_pairs(s, direction):
        v, b = _theta_eval(pair, direction, z1, z2, max_n)
        lie = alpha_pair(*pair)
        for w, c in lie.terms.items():
            for nw, nc in _reduce_word(w, DIRECTIONS["1x2"],
                                       "leftmost").items():
                key = _split_pair(nw, DIRECTIONS["1x2"])
                acc[key] = acc.get(key, 0j) + v * float(c) * float(nc)
                bound += b * abs(float(c) * float(nc))
    return acc, bound


def _symbolic_direction_check(s, direction):
    """Certify that the degree-s kernel in one direction is exactly the
    sum over admissible pairs of (split integrable form) x (pair): each
    pair's form coefficient is integrable and its tensor splitting is
    the theta monomial of the pair."""
    kernel = omega_power(s, direction)
    pairs = set(w0_pairs(s, direction))
    if not kernel.pairs() <= pairs:
        return False
    for pair in kernel.pairs():
        coeff = kernel.form_coefficient(*pair)
        if coeff != phi(pair[0], pair[1], direction=direction):
            return False
    return True


def decompose_check(s, point=(0.3, 0.4), max_n=10000, tol=1e-8):
    """Consistency of the two contour expansions of the degree-s kernel.

    Symbolic part: in each direction the kernel decomposes exactly over
    the admissible pairs with theta-monomial splittings.  Numeric part:
    the two expansions, reduced to a common product basis, agree
    coefficientwise at the point.
    """
    z1, z2 = point
    symbolic = all(_symbolic_direction_check(s, d) for d in ("1x2", "2x1"))
    a, ba = _numeric_coeffs(s, "1x2", z1, z2, max_n)
    b, bb = _numeric_coeffs(s, "2x1", z1, z2, max_n)
    keys = set(a) | set(b)
    residual = max((abs(a.get(k, 0) - b.get(k, 0)) for k in keys),
                   default=0.0)
    passed = symbolic and residual <= tol + ba + bb
    return {
        "degree": s,
        "point": point,
        "symbolic": symbolic,
        "coefficients": len(keys),
        "residual": residual,
        "bound": ba + bb,
        "passed": passed,
    }


# -- JSON rendering ----------------------------------------------------------

def relation_to_dict(r, verified=None, residual=None):
    out = {
        "degree": r.degree,
        "w1": list(r.w1),
        "w2": list(r.w2),
        "trivial": r.trivial,
        "lhs": [{"term": t.render(), "coeff": "1"} for t in r.lhs],
        "rhs": [{"factor2": t2.render(), "factor1": t1.render(),
                 "coeff": str(c)} for c, t2, t1 in r.sorted_rhs()],
    }
    if verified is not None:
        out["verified"] = verified
        out["residual"] = residual
    return out
