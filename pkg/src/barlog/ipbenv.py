"""The quotient of the free algebra on Z1, Z11, Z2, Z22, Z12 by the
quadratic commutator relations

    [Z1,Z2] = [Z11,Z2] = [Z1,Z22] = 0,
    [Z11,Z22] = -[Z11,Z12] = [Z22,Z12] = -[Z1-Z2,Z12],

realized concretely by a terminating rewriting system onto the
product basis W' * W'' (left factor over one free subalgebra, right
factor over the complementary one), in either of the two directions.

Also provides the alpha action (Z1, Z2 act by commutator, the other
letters by left multiplication), the symbolic degree-s kernel of the
normalized fundamental solution, and enumeration of the words not
ending in Z1 or Z2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ResourceLimitError
from .formspace import DEFAULT_DEGREE_CAP
from .words import LIE_BASE, WordPoly, word_sort_key

# The six quadratic relators generating the two-sided ideal, as
# {word: coeff} maps ([A,B] written out as AB - BA).
def _bracket(a, b):
    return {(a, b): Fraction(1), (b, a): Fraction(-1)}


def _combine(*weighted):
    out = {}
    for coeff, term in weighted:
        for w, c in term.items():
            v = out.get(w, Fraction(0)) + coeff * c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


RELATORS = (
    _bracket("Z1", "Z2"),
    _bracket("Z1", "Z22"),
    _bracket("Z11", "Z2"),
    _combine((1, _bracket("Z11", "Z22")), (1, _bracket("Z11", "Z12"))),
    _combine((1, _bracket("Z11", "Z22")), (1, _bracket("Z12", "Z22"))),
    _combine((1, _bracket("Z11", "Z22")),
             (1, _bracket("Z1", "Z12")), (-1, _bracket("Z2", "Z12"))),
)

# Rewriting rules: (mover, target) -> replacement for the two-letter
# word mover*target, as a list of (word, coeff).  The direction 1x2
# moves Z2/Z22 rightwards past Z1/Z11/Z12; 2x1 is the mirror.  The
# commutator values are pre-derived from the relators (asserted in the
# test suite).
_RULES = {
    "1x2": {
        ("Z2", "Z1"): [(("Z1", "Z2"), 1)],
        ("Z2", "Z11"): [(("Z11", "Z2"), 1)],
        ("Z22", "Z1"): [(("Z1", "Z22"), 1)],
        # [Z2,Z12] = [Z1,Z12] - [Z11,Z12]
        ("Z2", "Z12"): [(("Z12", "Z2"), 1), (("Z1", "Z12"), 1),
                        (("Z12", "Z1"), -1), (("Z11", "Z12"), -1),
                        (("Z12", "Z11"), 1)],
        # [Z22,Z11] = -[Z11,Z22] = [Z11,Z12]
        ("Z22", "Z11"): [(("Z11", "Z22"), 1), (("Z11", "Z12"), 1),
                         (("Z12", "Z11"), -1)],
        # [Z22,Z12] = -[Z11,Z12]
        ("Z22", "Z12"): [(("Z12", "Z22"), 1), (("Z11", "Z12"), -1),
                         (("Z12", "Z11"), 1)],
    },
    "2x1": {
        ("Z1", "Z2"): [(("Z2", "Z1"), 1)],
        ("Z1", "Z22"): [(("Z22", "Z1"), 1)],
        ("Z11", "Z2"): [(("Z2", "Z11"), 1)],
        # [Z11,Z22] = [Z22,Z12]
        ("Z11", "Z22"): [(("Z22", "Z11"), 1), (("Z22", "Z12"), 1),
                         (("Z12", "Z22"), -1)],
        # [Z1,Z12] = [Z2,Z12] - [Z22,Z12]
        ("Z1", "Z12"): [(("Z12", "Z1"), 1), (("Z2", "Z12"), 1),
                        (("Z12", "Z2"), -1), (("Z22", "Z12"), -1),
                        (("Z12", "Z22"), 1)],
        # [Z11,Z12] = -[Z22,Z12]
        ("Z11", "Z12"): [(("Z12", "Z11"), 1), (("Z22", "Z12"), -1),
                         (("Z12", "Z22"), 1)],
    },
}


@dataclass(frozen=True)
class Direction:
    name: str
    left_letters: tuple   # letters collected in the left factor
    right_letters: tuple  # letters collected in the right factor

    @property
    def rules(self):
        return _RULES[self.name]


DIRECTIONS = {
    "1x2": Direction("1x2", ("Z1", "Z11", "Z12"), ("Z2", "Z22")),
    "2x1": Direction("2x1", ("Z2", "Z22", "Z12"), ("Z1", "Z11")),
}


def _as_direction(direction):
    if isinstance(direction, Direction):
        return direction
    return DIRECTIONS[direction]


_NF_CACHE = {}


def _reduce_word(word, d, strategy):
    """Rewrite a single word to the product basis; returns
    {normal word: coeff}."""
    key = (d.name, strategy, word)
    got = _NF_CACHE.get(key)
    if got is not None:
        return got
    movers = set(d.right_letters)
    positions = range(len(word) - 1)
    if strategy == "rightmost":
        positions = reversed(positions)
    elif strategy != "leftmost":
        raise ValueError(f"unknown strategy {strategy!r}")
    hit = None
    for i in positions:
        if word[i] in movers and word[i + 1] not in movers:
            hit = i
            break
    if hit is None:
        out = {word: Fraction(1)}
    else:
        out = {}
        for repl, coeff in d.rules[(word[hit], word[hit + 1])]:
            new_word = word[:hit] + repl + word[hit + 2:]
            for w, c in _reduce_word(new_word, d, strategy).items():
                v = out.get(w, Fraction(0)) + coeff * c
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
    _NF_CACHE[key] = out
    return out


@dataclass(frozen=True)
class NormalForm:
    """A polynomial written in the product basis of one direction:
    terms maps (left word, right word) pairs to coefficients."""
    direction: str
    terms: dict

    def coefficient(self, w1, w2):
        return self.terms.get((tuple(w1), tuple(w2)), Fraction(0))

    def pairs(self):
        return set(self.terms)

    def sorted_terms(self):
        key = word_sort_key(LIE_BASE)
        return sorted(self.terms.items(),
                      key=lambda item: (key(item[0][0]), key(item[0][1])))

    def as_poly(self):
        return WordPoly(LIE_BASE,
                        {w1 + w2: c for (w1, w2), c in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, NormalForm)
                and self.direction == other.direction
                and self.terms == other.terms)


def _split_pair(word, d):
    right = set(d.right_letters)
    cut = len(word)
    for i, x in enumerate(word):
        if x in right:
            cut = i
            break
    w1, w2 = word[:cut], word[cut:]
    assert all(x not in right for x in w1) and all(x in right for x in w2), \
        f"word {word} is not in {d.name} normal form"
    return w1, w2


def normal_form(p, direction="1x2", strategy="leftmost"):
    """Rewrite a polynomial over the Z letters into the product basis
    of the requested direction."""
    d = _as_direction(direction)
    acc = {}
    for word, coeff in p.terms.items():
        for w, c in _reduce_word(word, d, strategy).items():
            pair = _split_pair(w, d)
            v = acc.get(pair, Fraction(0)) + coeff * c
            if v:
                acc[pair] = v
            else:
                acc.pop(pair, None)
    return NormalForm(d.name, acc)


# -- the alpha action ---------------------------------------------------

_AD_LETTERS = {"Z1", "Z2"}


def alpha_eval(word, start=None):
    """alpha(word) applied to the identity (or to `start`), the letters
    acting right to left: Z1 and Z2 by commutator, the others by left
    multiplication."""
    result = WordPoly.unit(LIE_BASE) if start is None else start
    for x in reversed(tuple(word)):
        acc = {}
        for w, c in result.terms.items():
            key = (x,) + w
            acc[key] = acc.get(key, Fraction(0)) + c
            if x in _AD_LETTERS:
                key = w + (x,)
                acc[key] = acc.get(key, Fraction(0)) - c
        result = WordPoly(LIE_BASE, acc)
    return result


def alpha_pair(w1, w2):
    """alpha(W') alpha(W'') applied to the identity."""
    return alpha_eval(tuple(w1) + tuple(w2))


# -- the symbolic solution kernel ----------------------------------------

_OMEGA_RAW_CACHE = {}


def _omega_raw(s):
    """(ad(Omega0) + mu(Omega'))^s applied to 1 (x) I, before any
    normal-form reduction: {(form word, Z word): coeff}."""
    if s in _OMEGA_RAW_CACHE:
        return _OMEGA_RAW_CACHE[s]
    if s == 0:
        out = {((), ()): Fraction(1)}
    else:
        prev = _omega_raw(s - 1)
        out = {}

        def put(fw, lw, c):
            key = (fw, lw)
            v = out.get(key, Fraction(0)) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)

        for (fw, lw), c in prev.items():
            for ftag, ztag in (("z1", "Z1"), ("z2", "Z2")):
                nfw = (ftag,) + fw
                put(nfw, (ztag,) + lw, c)
                put(nfw, lw + (ztag,), -c)
            for ftag, ztag in (("z11", "Z11"), ("z22", "Z22"),
                               ("z12", "Z12")):
                put((ftag,) + fw, (ztag,) + lw, c)
    _OMEGA_RAW_CACHE[s] = out
    return out


@dataclass(frozen=True)
class OmegaKernel:
    """The degree-s kernel of the normalized fundamental solution with
    its Z part reduced to the product basis of one direction:
    terms maps (form word, (W', W'')) to coefficients.

    Coefficient extraction works against the alpha images of the
    admissible pairs (which are triangular over the product basis, with
    corrections carrying trailing ad letters), not against raw product
    words: a raw product-basis readout would smear each coefficient
    over the correction terms of the other pairs.
    """
    degree: int
    direction: str
    terms: dict

    def decomposition(self):
        return omega_decomposition(self.degree, self.direction)

    def pairs(self):
        return {p for p, c in self.decomposition().items() if c}

    def form_coefficient(self, w1, w2):
        from .words import FORM_BASE
        pair = (tuple(w1), tuple(w2))
        return self.decomposition().get(pair, WordPoly.zero(FORM_BASE))


_OMEGA_CACHE = {}


def omega_power(s, direction="1x2", cap=None):
    """Symbolic degree-s kernel, Z parts in normal form."""
    if cap is None:
        cap = DEFAULT_DEGREE_CAP
    if s > cap:
        raise ResourceLimitError(f"degree {s} exceeds cap {cap}")
    d = _as_direction(direction)
    key = (s, d.name)
    if key in _OMEGA_CACHE:
        return _OMEGA_CACHE[key]
    acc = {}
    for (fw, lw), c in _omega_raw(s).items():
        for w, cc in _reduce_word(lw, d, "leftmost").items():
            pair = _split_pair(w, d)
            k = (fw, pair)
            v = acc.get(k, Fraction(0)) + c * cc
            if v:
                acc[k] = v
            else:
                acc.pop(k, None)
    kernel = OmegaKernel(degree=s, direction=d.name, terms=acc)
    _OMEGA_CACHE[key] = kernel
    return kernel


_DECOMP_CACHE = {}


def omega_decomposition(s, direction="1x2", cap=None):
    """Exact expansion of the degree-s kernel over the alpha images of
    the admissible pairs: {(W', W''): form-word polynomial}.

    The alpha images are linearly independent (asserted), so the
    expansion is unique; a solve failure would mean the kernel leaves
    their span.
    """
    from .linalg import RowReducer
    from .words import FORM_BASE
    d = _as_direction(direction)
    key = (s, d.name)
    if key in _DECOMP_CACHE:
        return _DECOMP_CACHE[key]
    kernel = omega_power(s, d, cap=cap)
    red = RowReducer()
    pairs = w0_pairs(s, d.name)
    for p in pairs:
        dep = red.add(normal_form(alpha_pair(*p), d).terms, p)
        assert dep is None, "alpha images of admissible pairs are dependent"
    by_form = {}
    for (fw, pair), c in kernel.terms.items():
        by_form.setdefault(fw, {})[pair] = c
    coeffs = {p: {} for p in pairs}
    for fw, vec in by_form.items():
        rep = red.solve(vec)
        if rep is None:
            raise ValueError(
                "kernel does not lie in the span of the alpha images")
        for p, c in rep.items():
            if c:
                coeffs[p][fw] = c
    result = {p: WordPoly(FORM_BASE, terms) for p, terms in coeffs.items()}
    _DECOMP_CACHE[key] = result
    return result


# -- word enumeration -----------------------------------------------------

SUBALPHABETS = {
    "1x2-left": ("Z1", "Z11", "Z12"),
    "1x2-right": ("Z2", "Z22"),
    "2x1-left": ("Z2", "Z22", "Z12"),
    "2x1-right": ("Z1", "Z11"),
}


def enumerate_w0(letters, s):
    """All length-s words over the given letters that do not end in Z1
    or Z2, in lexicographic order of the letter tuple."""
    if isinstance(letters, str):
        letters = SUBALPHABETS[letters]
    out = []
    for word in itertools.product(letters, repeat=s):
        if word and word[-1] in ("Z1", "Z2"):
            continue
        out.append(word)
    return out


def w0_pairs(s, direction="1x2"):
    """All (W', W'') pairs of total degree s over the direction's left
    and right letters, neither word ending in Z1 or Z2."""
    d = _as_direction(direction)
    pairs = []
    for s1 in range(s + 1):
        for w1 in enumerate_w0(d.left_letters, s1):
            for w2 in enumerate_w0(d.right_letters, s - s1):
                pairs.append((w1, w2))
    return pairs
