"""Hyperlogarithm terms and their numerical oracles.

A term is the nested series

    L(^{k1}a1 ... ^{kr}ar; z) =
        sum_{n1>...>nr>0} a1^(n1-n2) ... ar^(nr) z^n1 / (n1^k1 ... nr^kr)

with main variable z in {z1, z2} and each letter a_i either 1 ("one")
or the other variable ("param").  The block-sorted case (all ones
first) is the two-variable multiple polylogarithm with numbering
(i, j).

The module translates words over the projected one-form alphabets to
terms and back, evaluates truncated series with an explicit tail
bound, implements the exact differential recursion of the numbering
calculus, and provides an adaptive Gauss-Legendre quadrature oracle
for iterated integrals of form words along polyline contours.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (AlphabetError, ContourError, DivergentTermError,
                     DomainError)

ONE = "one"
PARAM = "param"

_MAIN_OF_LETTER = {
    "z1": 1, "z11": 1, "z12_1": 1,
    "z2": 2, "z22": 2, "z12_2": 2,
}
_LOG_LETTER = {1: "z1", 2: "z2"}
_ONE_LETTER = {1: "z11", 2: "z22"}
_PARAM_LETTER = {1: "z12_1", 2: "z12_2"}


@dataclass(frozen=True, order=True)
class HyperlogTerm:
    main_var: int                # 1 or 2
    index: tuple                 # (k1, ..., kr), positive integers
    letters: tuple               # each ONE or PARAM

    def __post_init__(self):
        if self.main_var not in (1, 2):
            raise ValueError("main_var must be 1 or 2")
        if len(self.index) != len(self.letters):
            raise ValueError("index and letters must have equal length")
        if any(k < 1 for k in self.index):
            raise ValueError("index entries must be positive")
        if any(a not in (ONE, PARAM) for a in self.letters):
            raise ValueError("letters must be 'one' or 'param'")

    @property
    def depth(self):
        return len(self.index)

    @property
    def weight(self):
        return sum(self.index)

    def render(self):
        """Compact display form, e.g. L[1,1|one,param]@z1."""
        return (f"L[{','.join(map(str, self.index))}|"
                f"{','.join(self.letters)}]@z{self.main_var}")


@dataclass(frozen=True)
class MplIndex:
    """A 2MPL index with its numbering: i leading 'one' letters and j
    trailing 'param' letters, i + j = len(index)."""
    index: tuple
    numbering: tuple

    def __post_init__(self):
        i, j = self.numbering
        if i < 0 or j < 0 or i + j != len(self.index):
            raise ValueError(
                f"bad numbering {self.numbering} for index {self.index}")

    @property
    def weight(self):
        return sum(self.index)

    def to_term(self, main_var=1):
        i, j = self.numbering
        return HyperlogTerm(main_var, tuple(self.index),
                            (ONE,) * i + (PARAM,) * j)


def word_to_term(word):
    """Parse a word over a projected alphabet into a term: maximal runs
    of the main log letter become exponents."""
    word = tuple(word)
    if not word:
        return HyperlogTerm(1, (), ())
    mains = {_MAIN_OF_LETTER.get(x) for x in word}
    if None in mains:
        raise AlphabetError(f"letter outside the projected alphabets: {word}")
    if len(mains) != 1:
        raise AlphabetError(f"word mixes main variables: {word}")
    main = mains.pop()
    log_letter = _LOG_LETTER[main]
    if word[-1] == log_letter:
        raise DivergentTermError(f"word {word} ends in {log_letter}")
    index, letters = [], []
    pending = 0
    for x in word:
        if x == log_letter:
            pending += 1
        else:
            index.append(pending + 1)
            letters.append(ONE if x == _ONE_LETTER[main] else PARAM)
            pending = 0
    return HyperlogTerm(main, tuple(index), tuple(letters))


def term_to_word(t):
    """Inverse of word_to_term."""
    out = []
    for k, a in zip(t.index, t.letters):
        out.extend([_LOG_LETTER[t.main_var]] * (k - 1))
        out.append(_ONE_LETTER[t.main_var] if a == ONE
                   else _PARAM_LETTER[t.main_var])
    return tuple(out)


@dataclass(frozen=True)
class EvalResult:
    value: complex
    truncation_bound: float
    terms_used: int


def eval_series(t, z1, z2, max_n=100000):
    """Truncated nested series of a term.

    Requires |z_main| < 1 and |param| <= 1.  The inner sums are kept as
    cumulative quantities, so the cost is O(depth * max_n).  The tail
    bound is geometric: (max inner magnitude seen) * |z|^(N+1)/(1-|z|).
    """
    z = complex(z1 if t.main_var == 1 else z2)
    param = complex(z2 if t.main_var == 1 else z1)
    r = t.depth
    if r == 0:
        return EvalResult(complex(1.0), 0.0, 0)
    if abs(z) >= 1:
        raise DomainError(f"|z{t.main_var}| = {abs(z)} must be < 1")
    if abs(param) > 1 + 1e-15:
        raise DomainError(f"|parameter| = {abs(param)} must be <= 1")
    alphas = [1.0 + 0j if a == ONE else param for a in t.letters]
    ks = t.index
    # T[j](n): inner sum with the j-th summation index fixed at n,
    # including its own 1/n^k and geometric factors.  C[j] accumulates
    # sum_{m<n} alpha_j^(n-m) T[j+1](m).
    T = [0.0 + 0j] * r
    C = [0.0 + 0j] * max(r - 1, 1)
    ar_pow = 1.0 + 0j
    z_pow = 1.0 + 0j
    total = 0.0 + 0j
    inner_max = 0.0
    for n in range(1, max_n + 1):
        newC = [alphas[j] * (C[j] + T[j + 1]) for j in range(r - 1)]
        ar_pow *= alphas[r - 1]
        newT = [0.0 + 0j] * r
        newT[r - 1] = ar_pow / n ** ks[r - 1]
        for j in range(r - 1):
            newT[j] = newC[j] / n ** ks[j]
        T = newT
        if r > 1:
            C = newC
        z_pow *= z
        total += z_pow * T[0]
        mag = abs(T[0])
        if mag > inner_max:
            inner_max = mag
    bound = inner_max * abs(z) ** (max_n + 1) / (1 - abs(z))
    return EvalResult(total, bound, max_n)


# -- differential recursion ------------------------------------------------

# Rational-function coefficient tags for the derivative branches.
COEFF_EVAL = {
    "1/z1": lambda z1, z2: 1 / z1,
    "1/(1-z1)": lambda z1, z2: 1 / (1 - z1),
    "z2/(1-z1z2)": lambda z1, z2: z2 / (1 - z1 * z2),
    "1/z2": lambda z1, z2: 1 / z2,
    "1/(1-z2)": lambda z1, z2: 1 / (1 - z2),
    "z1/(1-z1z2)": lambda z1, z2: z1 / (1 - z1 * z2),
}


def partial_derivative(m, var):
    """d/dz_var of Li_index(i, j; z1, z2) (main variable z1).

    Returns a list of (coefficient tag, rational coefficient, MplIndex)
    triples; the sum of coeff * tag * term is the derivative.
    """
    index, (i, j) = m.index, m.numbering
    if not index:
        raise ValueError("empty index has no derivative branches")
    one = Fraction(1)
    if var == 1:
        k1 = index[0]
        if i == 0 and k1 == 1:
            return [("z2/(1-z1z2)", one, MplIndex(index[1:], (0, j - 1)))]
        if i > 0 and k1 == 1:
            return [("1/(1-z1)", one, MplIndex(index[1:], (i - 1, j)))]
        return [("1/z1", one, MplIndex((k1 - 1,) + index[1:], (i, j)))]
    if var == 2:
        if i == 0 and index[0] == 1:
            return [("z1/(1-z1z2)", one, MplIndex(index[1:], (0, j - 1)))]
        if j == 0:
            return []
        knext = index[i]
        if knext == 1:
            dropped = index[:i] + index[i + 1:]
            return [
                ("1/(1-z2)", one, MplIndex(dropped, (i, j - 1))),
                ("1/(1-z2)", -one, MplIndex(dropped, (i - 1, j))),
                ("1/z2", -one, MplIndex(dropped, (i - 1, j))),
            ]
        dec = index[:i] + (knext - 1,) + index[i + 1:]
        return [("1/z2", one, MplIndex(dec, (i, j)))]
    raise ValueError("var must be 1 or 2")


def eval_mpl(m, z1, z2, max_n=100000):
    """Numeric value of Li_index(i, j; z1, z2) by truncated series."""
    return eval_series(m.to_term(main_var=1), z1, z2, max_n)


# -- quadrature oracle -----------------------------------------------------

_GL_N = 16


def _gl_tables(n=_GL_N):
    x, w = np.polynomial.legendre.leggauss(n)
    # Legendre values P_j(x_i), j = 0..n.
    P = np.zeros((n + 1, n))
    P[0] = 1.0
    P[1] = x
    for j in range(1, n):
        P[j + 1] = ((2 * j + 1) * x * P[j] - j * P[j - 1]) / (j + 1)
    # Value -> coefficient matrix: c_j = (2j+1)/2 sum_i w_i g_i P_j(x_i).
    C = ((2 * np.arange(n) + 1) / 2)[:, None] * P[:n] * w[None, :]
    # Antiderivative basis at the nodes: T_0 = x + 1,
    # T_j = (P_{j+1} - P_{j-1}) / (2j+1) for j >= 1 (zero at x = -1).
    T = np.zeros((n, n))
    T[0] = x + 1.0
    for j in range(1, n):
        T[j] = (P[j + 1] - P[j - 1]) / (2 * j + 1)
    cum = T.T @ C       # node values of g -> node values of its integral
    return x, w, cum


_GL_X, _GL_W, _GL_CUM = _gl_tables()

# Singular denominators of each letter's coefficient functions.
_LETTER_ATOMS = {
    "z1": ("z1",), "z11": ("1-z1",),
    "z2": ("z2",), "z22": ("1-z2",),
    "z12": ("1-z1z2",), "z12_1": ("1-z1z2",), "z12_2": ("1-z1z2",),
}

_ATOM_EVAL = {
    "z1": lambda z1, z2: z1,
    "1-z1": lambda z1, z2: 1 - z1,
    "z2": lambda z1, z2: z2,
    "1-z2": lambda z1, z2: 1 - z2,
    "1-z1z2": lambda z1, z2: 1 - z1 * z2,
}


def _form_pullback(tag, z1, z2, dz1, dz2):
    """omega(gamma(t)) gamma'(t) for one letter along a linear leg;
    vectorized over node arrays.  Components with zero derivative are
    skipped so axis-riding legs never divide by zero."""
    out = np.zeros_like(z1, dtype=complex)
    if tag == "z1":
        if dz1 != 0:
            out += dz1 / z1
    elif tag == "z11":
        if dz1 != 0:
            out += dz1 / (1 - z1)
    elif tag == "z2":
        if dz2 != 0:
            out += dz2 / z2
    elif tag == "z22":
        if dz2 != 0:
            out += dz2 / (1 - z2)
    elif tag in ("z12", "z12_1", "z12_2"):
        den = 1 - z1 * z2
        if tag != "z12_2" and dz1 != 0:
            out += z2 * dz1 / den
        if tag != "z12_1" and dz2 != 0:
            out += z1 * dz2 / den
    else:
        raise AlphabetError(f"unknown form letter {tag!r}")
    return out


def _panel_breaks(graded, pieces):
    """Breakpoints in [0, 1] for one segment: geometric toward 0 when
    graded (for integrable singular starts), each geometric cell split
    uniformly into `pieces`."""
    if graded:
        base = [0.0] + [2.0 ** -g for g in range(44, -1, -1)]
    else:
        base = [0.0, 1.0]
    breaks = []
    for a, b in zip(base[:-1], base[1:]):
        for q in range(pieces):
            breaks.append(a + (b - a) * q / pieces)
    breaks.append(1.0)
    return breaks


def _word_integral(word, panels):
    """Iterated integral of one word over precomputed panels.

    panels: list of (z1 nodes, z2 nodes, dz1, dz2, half-width) in path
    order.  The innermost letter is the last one.
    """
    level_vals = [np.ones(_GL_N, dtype=complex) for _ in panels]
    start = 1.0 + 0j
    # Iterate outward over the word's letters.
    for tag in reversed(word):
        new_vals = []
        start = 0.0 + 0j
        for (z1n, z2n, dz1, dz2, half), inner in zip(panels, level_vals):
            g = _form_pullback(tag, z1n, z2n, dz1, dz2) * inner
            new_vals.append(start + half * (_GL_CUM @ g))
            start = start + half * np.dot(_GL_W, g)
        level_vals = new_vals
    return start


def _build_panels(path, pieces, graded_first):
    panels = []
    for seg, (p0, p1) in enumerate(zip(path[:-1], path[1:])):
        z10, z20 = complex(p0[0]), complex(p0[1])
        z11_, z21 = complex(p1[0]), complex(p1[1])
        dz1, dz2 = z11_ - z10, z21 - z20
        breaks = _panel_breaks(graded_first and seg == 0, pieces)
        for a, b in zip(breaks[:-1], breaks[1:]):
            half = (b - a) / 2.0
            tn = (a + b) / 2.0 + half * _GL_X
            panels.append((z10 + tn * dz1, z20 + tn * dz2, dz1, dz2, half))
    return panels


def _check_contour(path, atoms, skip_start):
    for seg, (p0, p1) in enumerate(zip(path[:-1], path[1:])):
        z10, z20 = complex(p0[0]), complex(p0[1])
        dz1 = complex(p1[0]) - z10
        dz2 = complex(p1[1]) - z20
        for t in np.linspace(0.0, 1.0, 33):
            if seg == 0 and skip_start and t < 0.05:
                continue
            if seg == 0 and t == 0.0 and skip_start:
                continue
            z1 = z10 + t * dz1
            z2 = z20 + t * dz2
            for atom in atoms:
                if abs(_ATOM_EVAL[atom](z1, z2)) < 1e-9:
                    raise ContourError(
                        f"contour touches {atom} = 0 near t={t} of "
                        f"segment {seg}")


def eval_quadrature(p, path, tol=1e-10, max_refine=7):
    """Iterated integral of a form polynomial along a polyline.

    path is a sequence of (z1, z2) points.  Panels are refined (doubled)
    until two successive evaluations differ by less than tol.  A start
    at a singular point (such as the origin) is handled by geometric
    grading of the first segment; words whose innermost letter is a
    pure-log letter are rejected there as divergent.
    """
    path = [(complex(a), complex(b)) for a, b in path]
    if len(path) < 2:
        raise ValueError("path needs at least two points")
    atoms = set()
    for w in p.terms:
        for x in w:
            atoms.update(_LETTER_ATOMS[x])
    z1s, z2s = path[0]
    start_singular = any(abs(_ATOM_EVAL[a](z1s, z2s)) < 1e-9
                         for a in _ATOM_EVAL)
    _check_contour(path, atoms, skip_start=start_singular)
    if start_singular:
        for w in p.terms:
            if w and w[-1] in ("z1", "z2"):
                raise DivergentTermError(
                    f"word {w} ends in a pure-log letter; its integral "
                    "from a singular base point diverges")
    prev = None
    pieces = 2
    for _ in range(max_refine + 1):
        panels = _build_panels(path, pieces, graded_first=start_singular)
        total = 0.0 + 0j
        for w, c in p.terms.items():
            total += complex(c) * _word_integral(w, panels)
        if prev is not None and abs(total - prev) < tol / 2:
            return total
        prev = total
        pieces *= 2
    return prev
