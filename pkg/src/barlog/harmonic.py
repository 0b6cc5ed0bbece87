"""Harmonic (quasi-shuffle) products of nested-sum indices and the
two-variable generalization.

Provides the classical quasi-shuffle product of indices, its closed
partial-fraction expansion, the two-variable harmonic expansion of a
product Li_k(z1) Li_l(z2) into 2MPLs of both orientations, the exact
action of the one-variable integral operators on a 2MPL (the
preparation recursion), truncated multiple zeta values with tail
bounds, and the symbolic equivalence check between the operator
recursion and the harmonic expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivergentTermError
from .hyperlog import MplIndex, eval_series


def _merge(acc, idx, coeff):
    v = acc.get(idx, 0) + coeff
    if v:
        acc[idx] = v
    else:
        acc.pop(idx, None)


def index_harmonic(k, l):
    """Quasi-shuffle product of two indices: {index: integer coeff}."""
    k, l = tuple(k), tuple(l)
    if not k:
        return {l: 1}
    if not l:
        return {k: 1}
    acc = {}
    for idx, c in index_harmonic(k[1:], l).items():
        _merge(acc, (k[0],) + idx, c)
    for idx, c in index_harmonic(k, l[1:]).items():
        _merge(acc, (l[0],) + idx, c)
    for idx, c in index_harmonic(k[1:], l[1:]).items():
        _merge(acc, (k[0] + l[0],) + idx, c)
    return acc


def closed_harmonic_expand(k, l):
    """The closed re-grouping of the quasi-shuffle product: all ways of
    inserting k1 (possibly merged with the next entry of l) after a
    prefix of l, recursing on the tails, plus the fully-stacked term."""
    k, l = tuple(k), tuple(l)
    if not k:
        return {l: 1}
    acc = {}
    j = len(l)
    for p in range(j):
        head = l[:p] + (k[0],)
        for idx, c in index_harmonic(k[1:], l[p:]).items():
            _merge(acc, head + idx, c)
        head = l[:p] + (k[0] + l[p],)
        for idx, c in index_harmonic(k[1:], l[p + 1:]).items():
            _merge(acc, head + idx, c)
    _merge(acc, l + k, 1)
    return acc


# -- tagged 2MPL sums -------------------------------------------------------

# A tagged term is (index, numbering, orientation) with orientation
# "12" for Li(i, j; z1, z2), "21" for Li(i, j; z2, z1), and "prod" for
# the numbering-(0, j) functions of the product z1*z2 (either
# orientation collapses to the same function).


def _tag(index, numbering, orientation):
    MplIndex(index, numbering)  # validate
    return (tuple(index), tuple(numbering), orientation)


def canonical_tag(tag):
    index, (i, j), orientation = tag
    if i == 0 and orientation in ("12", "21"):
        return (index, (0, j), "prod")
    return tag


class TaggedMplSum:
    """Integer/rational combination of tagged 2MPL terms."""

    def __init__(self, terms=None):
        self.terms = dict(terms or {})

    @classmethod
    def single(cls, index, numbering, orientation, coeff=1):
        return cls({_tag(index, numbering, orientation): Fraction(coeff)})

    def add(self, tag, coeff):
        v = self.terms.get(tag, Fraction(0)) + coeff
        if v:
            self.terms[tag] = v
        else:
            self.terms.pop(tag, None)

    def __add__(self, other):
        out = TaggedMplSum(self.terms)
        for t, c in other.terms.items():
            out.add(t, c)
        return out

    def scale(self, coeff):
        coeff = Fraction(coeff)
        return TaggedMplSum({t: c * coeff for t, c in self.terms.items()}
                            if coeff else {})

    def canonicalize(self):
        out = TaggedMplSum()
        for t, c in self.terms.items():
            out.add(canonical_tag(t), c)
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: item[0])

    def __eq__(self, other):
        return isinstance(other, TaggedMplSum) and self.terms == other.terms

    def __repr__(self):
        return f"TaggedMplSum({self.terms!r})"


def eval_tagged(tag, z1, z2, max_n=100000):
    """Numeric value of one tagged term by truncated series."""
    index, numbering, orientation = tag
    m = MplIndex(index, numbering)
    if orientation == "21":
        return eval_series(m.to_term(1), z2, z1, max_n)
    # "12" and "prod" (numbering (0, j)) both evaluate as main-z1 terms.
    return eval_series(m.to_term(1), z1, z2, max_n)


def eval_sum(s, z1, z2, max_n=100000):
    """(value, combined truncation bound) of a tagged sum."""
    total = 0.0 + 0j
    bound = 0.0
    for tag, c in s.terms.items():
        r = eval_tagged(tag, z1, z2, max_n)
        total += complex(c) * r.value
        bound += abs(c) * r.truncation_bound
    return total, bound


# -- the two-variable harmonic expansion ------------------------------------

def mpl_harmonic_expand(k, l):
    """Expansion of Li_k(z1) Li_l(z2) into tagged 2MPL terms.

    Splits the double summation domain by which variable carries the
    larger summation index and by how deep the interleaving reaches.
    """
    k, l = tuple(k), tuple(l)
    if not k or not l:
        raise ValueError("both indices must be nonempty")
    i, j = len(k), len(l)
    out = TaggedMplSum()

    def emit(prefix, tail_product, first, orientation):
        for idx, c in tail_product.items():
            index = prefix + idx
            out.add(_tag(index, (first, len(index) - first), orientation),
                    Fraction(c))

    for p in range(1, i):
        emit(k[:p] + (l[0],), index_harmonic(k[p:], l[1:]), p, "12")
        emit(k[:p] + (l[0] + k[p],), index_harmonic(k[p + 1:], l[1:]),
             p, "12")
    out.add(_tag(k + l, (i, j), "12"), Fraction(1))
    for p in range(1, j):
        emit(l[:p] + (k[0],), index_harmonic(l[p:], k[1:]), p, "21")
        emit(l[:p] + (k[0] + l[p],), index_harmonic(l[p + 1:], k[1:]),
             p, "21")
    out.add(_tag(l + k, (j, i), "21"), Fraction(1))
    emit((k[0] + l[0],), index_harmonic(k[1:], l[1:]), 0, "21")
    return out.canonicalize()


# -- the preparation recursion ----------------------------------------------

def prepare2(index, numbering, k):
    """Apply the weight-k integral operator in the second variable to
    Li_index(i, j; z1, z2).

    The new entry k is inserted at every admissible slot inside the
    leading block (optionally merging with the entry it lands on), and
    the fully-outrun term flips orientation.
    """
    index = tuple(index)
    i, j = numbering
    out = TaggedMplSum()
    for s in range(i):
        pos = i - s
        ins = index[:pos] + (k,) + index[pos:]
        out.add(_tag(ins, (pos, j + s + 1), "12"), Fraction(1))
        merged = index[:pos - 1] + (index[pos - 1] + k,) + index[pos:]
        out.add(_tag(merged, (pos - 1, j + s + 1), "12"), Fraction(1))
    out.add(_tag((k,) + index, (1, i + j), "21"), Fraction(1))
    return out


def apply_operator(s, k):
    """Apply the weight-k second-variable integral operator to every
    term of a tagged sum."""
    out = TaggedMplSum()
    for (index, (i, j), orientation), c in s.terms.items():
        if orientation == "12" or (orientation == "prod" and True):
            # A "prod" term is the numbering-(0, j) case of either
            # orientation; treat it as orientation 12 with i = 0.
            piece = prepare2(index, (i, j), k)
        elif orientation == "21":
            piece = TaggedMplSum.single((k,) + index, (i + 1, j), "21")
        else:
            raise ValueError(f"unknown orientation {orientation!r}")
        out = out + piece.scale(c)
    return out


def recursion_expand(k, l):
    """Li_k(z1) Li_l(z2) by iterating the integral operators of l
    (innermost entry first) on Li_k(i, 0; z1, z2)."""
    k, l = tuple(k), tuple(l)
    s = TaggedMplSum.single(k, (len(k), 0), "12")
    for weight in reversed(l):
        s = apply_operator(s, weight)
    return s.canonicalize()


def all_indices(weight):
    """All compositions of the given total weight (admissible nested-sum
    indices), in lexicographic order."""
    if weight == 0:
        return [()]
    out = []
    for first in range(1, weight + 1):
        for rest in all_indices(weight - first):
            out.append((first,) + rest)
    return sorted(out)


def equivalence_check(max_weight):
    """Compare the operator recursion against the harmonic expansion
    for every pair of nonempty indices of total weight <= max_weight.

    Returns a list of (k, l, matched) triples.
    """
    report = []
    for total in range(2, max_weight + 1):
        for wk in range(1, total):
            for k in all_indices(wk):
                for l in all_indices(total - wk):
                    lhs = mpl_harmonic_expand(k, l)
                    rhs = recursion_expand(k, l)
                    report.append((k, l, lhs == rhs))
    return report


# -- truncated multiple zeta values -----------------------------------------

@dataclass(frozen=True)
class MzvResult:
    value: float
    truncation_bound: float
    terms_used: int


def mzv_truncated(index, max_n=100000):
    """Truncated nested harmonic sum zeta(k1, ..., kr) with an explicit
    tail bound.

    Requires k1 >= 2 (else the series diverges).  The leading-entry
    terms satisfy the proven majorant

        T(n) <= (1 + ln n)^(r-1) / ((r-1)! n^k1)

    (the inner sum over r-1 distinct smaller indices of products of
    1/m is at most the (r-1)-th power of the harmonic sum over (r-1)!),
    so the tail is bounded by the corresponding integral from max_n.
    """
    index = tuple(index)
    r = len(index)
    if r == 0:
        return MzvResult(1.0, 0.0, 0)
    if index[0] < 2:
        raise DivergentTermError(
            f"zeta{index} diverges: leading entry must be >= 2")
    T = [0.0] * r
    C = [0.0] * max(r - 1, 1)
    total = 0.0
    for n in range(1, max_n + 1):
        newC = [C[q] + T[q + 1] for q in range(r - 1)]
        newT = [0.0] * r
        newT[r - 1] = 1.0 / n ** index[r - 1]
        for q in range(r - 1):
            newT[q] = newC[q] / n ** index[q]
        T = newT
        if r > 1:
            C = newC
        total += T[0]
    # I(m) = integral_N^inf (1 + ln t)^m t^(-(a+1)) dt with a = k1 - 1:
    # I(m) = (1 + ln N)^m / (a N^a) + (m / a) I(m - 1).
    a = index[0] - 1
    im = 1.0 / (a * max_n ** a)
    for m in range(1, r):
        im = (1.0 + math.log(max_n)) ** m / (a * max_n ** a) + m / a * im
    return MzvResult(total, im / math.factorial(r - 1), max_n)
