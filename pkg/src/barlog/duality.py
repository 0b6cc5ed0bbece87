"""The duality between the integrable forms and the product bases of
the enveloping algebra: the letterwise theta substitution, the tensor
splitting isomorphisms iota (deconcatenation followed by the two
letter projections), their inverses by exact linear solve against the
bar bases, and the construction of the canonical integrable
representative phi(W', W'') of a product-basis pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AlphabetError, DomainError, NotInImageError
from .formspace import bar_basis, chen_defect
from .linalg import RowReducer
from .words import (FORM_BASE, FORM_MAIN1, FORM_MAIN2, FORM_PURE1,
                    FORM_PURE2, TensorPoly, WordPoly)


@dataclass(frozen=True)
class FormDirection:
    """Alphabet bookkeeping for one tensor splitting.

    The z12 letter always lands in the left factor (as its projected
    variant); in the right factor it projects to zero, as forced by the
    right factor's alphabet and the shape of the reference relation
    reproduced in the test suite.
    """
    name: str
    left_alphabet: tuple
    right_alphabet: tuple
    left_map: dict    # base letter -> projected letter, or None to kill
    right_map: dict
    theta_left: dict  # Z letter -> projected form letter
    theta_right: dict


FORM_DIRECTIONS = {
    "1x2": FormDirection(
        name="1x2",
        left_alphabet=FORM_MAIN1,
        right_alphabet=FORM_PURE2,
        left_map={"z1": "z1", "z11": "z11", "z12": "z12_1",
                  "z2": None, "z22": None},
        right_map={"z2": "z2", "z22": "z22",
                   "z1": None, "z11": None, "z12": None},
        theta_left={"Z1": "z1", "Z11": "z11", "Z12": "z12_1"},
        theta_right={"Z2": "z2", "Z22": "z22"},
    ),
    "2x1": FormDirection(
        name="2x1",
        left_alphabet=FORM_MAIN2,
        right_alphabet=FORM_PURE1,
        left_map={"z2": "z2", "z22": "z22", "z12": "z12_2",
                  "z1": None, "z11": None},
        right_map={"z1": "z1", "z11": "z11",
                   "z2": None, "z22": None, "z12": None},
        theta_left={"Z2": "z2", "Z22": "z22", "Z12": "z12_2"},
        theta_right={"Z1": "z1", "Z11": "z11"},
    ),
}


def _as_form_direction(direction):
    if isinstance(direction, FormDirection):
        return direction
    return FORM_DIRECTIONS[direction]


def theta(word, direction="1x2", side="left"):
    """Letterwise displacement of Z letters to form letters for one
    factor of the given splitting."""
    d = _as_form_direction(direction)
    table = d.theta_left if side == "left" else d.theta_right
    out = []
    for x in word:
        if x not in table:
            raise AlphabetError(
                f"letter {x!r} not in the {side} factor of {d.name}")
        out.append(table[x])
    return tuple(out)


def _project(word, table):
    """Apply a letter projection to a word; None if any letter dies."""
    out = []
    for x in word:
        y = table[x]
        if y is None:
            return None
        out.append(y)
    return tuple(out)


def iota(p, direction="1x2"):
    """Tensor splitting of an integrable form polynomial: sum over all
    deconcatenation cuts of (left projection) x (right projection)."""
    d = _as_form_direction(direction)
    for s, part in p.degree_parts().items():
        for l in range(1, s):
            if chen_defect(part, l):
                raise DomainError(
                    "polynomial does not satisfy the integrability "
                    f"condition at degree {s}, cut {l}")
    acc = {}
    for w, c in p.terms.items():
        for l in range(len(w) + 1):
            left = _project(w[:l], d.left_map)
            if left is None:
                continue
            right = _project(w[l:], d.right_map)
            if right is None:
                continue
            key = (left, right)
            v = acc.get(key, Fraction(0)) + c
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
    return TensorPoly(d.left_alphabet, d.right_alphabet, acc)


# -- inverse by linear solve ----------------------------------------------

def _tensor_key(d, w1, w2):
    li = {a: i for i, a in enumerate(d.left_alphabet)}
    ri = {a: i for i, a in enumerate(d.right_alphabet)}
    return ((len(w1), tuple(li[x] for x in w1)),
            (len(w2), tuple(ri[x] for x in w2)))


def _tensor_vector(d, t):
    return {_tensor_key(d, w1, w2): c for (w1, w2), c in t.terms.items()}


_IOTA_SOLVERS = {}


def _iota_solver(direction, s, cap=None):
    d = _as_form_direction(direction)
    key = (d.name, s)
    if key in _IOTA_SOLVERS:
        return _IOTA_SOLVERS[key]
    basis = bar_basis(s, cap=cap)
    red = RowReducer()
    for i, b in enumerate(basis):
        dep = red.add(_tensor_vector(d, iota(b, d)), i)
        assert dep is None, "tensor splitting is not injective on the basis"
    _IOTA_SOLVERS[key] = (red, basis)
    return red, basis


def iota_rank(direction, s, cap=None):
    """Rank of the tensor splitting restricted to the degree-s basis."""
    red, basis = _iota_solver(direction, s, cap=cap)
    return red.rank, len(basis)


def iota_inv(t, direction="1x2", cap=None):
    """The unique integrable preimage of a tensor polynomial, solved
    exactly degree by degree against the bar basis."""
    d = _as_form_direction(direction)
    result = WordPoly.zero(FORM_BASE)
    for s, part in t.degree_parts().items():
        red, basis = _iota_solver(d, s, cap=cap)
        rep = red.solve(_tensor_vector(d, part))
        if rep is None:
            raise NotInImageError(
                f"no integrable preimage at degree {s} for {d.name}")
        for i, c in rep.items():
            result = result + basis[i].scale(c)
    return result


def phi(w1, w2, direction="1x2", cap=None):
    """The integrable representative of a product-basis pair: the
    preimage of theta(W') x theta(W'') under the splitting."""
    d = _as_form_direction(direction)
    w1, w2 = tuple(w1), tuple(w2)
    for w in (w1, w2):
        if w and w[-1] in ("Z1", "Z2"):
            raise ValueError(f"word {w} ends in Z1/Z2 and is not allowed")
    t = TensorPoly.monomial(d.left_alphabet, d.right_alphabet,
                            theta(w1, d, "left"), theta(w2, d, "right"))
    return iota_inv(t, d, cap=cap)
