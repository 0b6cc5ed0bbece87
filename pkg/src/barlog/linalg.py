"""Incremental exact row reduction over the rationals.

Vectors are sparse dicts mapping orderable column keys to Fraction.
The reducer keeps its stored rows fully reduced (RREF) and, for each
stored row, an expression of that row as a combination of the vectors
fed in so far.  Feeding vectors one by one therefore yields, in a
single pass, both a canonical spanning set and the dependencies
(nullspace combinations) among the inputs.
"""

from __future__ import annotations

from fractions import Fraction


def vec_scale(vec, coeff):
    coeff = Fraction(coeff)
    if not coeff:
        return {}
    return {k: v * coeff for k, v in vec.items()}


def vec_add_into(target, vec, coeff=1):
    """target += coeff * vec, dropping zeros; mutates and returns target."""
    coeff = Fraction(coeff)
    if not coeff:
        return target
    for k, v in vec.items():
        c = target.get(k, Fraction(0)) + coeff * v
        if c:
            target[k] = c
        else:
            target.pop(k, None)
    return target


class RowReducer:
    """Incremental reduced-row-echelon form with combination tracking."""

    def __init__(self):
        # pivot column -> (row vector, {input tag: coefficient})
        self._rows = {}

    @property
    def rank(self):
        return len(self._rows)

    def _reduce(self, vec):
        """Return (residual, representation) with
        vec == residual + sum(rep[tag] * input_tag)."""
        residual = {k: Fraction(v) for k, v in vec.items() if v}
        rep = {}
        # Stored rows are fully reduced, so each stored row is zero on
        # every pivot column but its own: one pass suffices and no new
        # pivot columns can appear in the residual.
        for piv in [k for k in residual if k in self._rows]:
            c = residual.get(piv)
            if not c:
                continue
            row, combo = self._rows[piv]
            vec_add_into(residual, row, -c)
            vec_add_into(rep, combo, c)
        return residual, rep

    def add(self, vec, tag):
        """Feed a vector labelled by a hashable tag.

        Returns None if the vector enlarged the span.  Otherwise
        returns a dependency {tag_i: c_i} with sum(c_i * input_i) == 0
        and coefficient 1 on the newly fed tag.
        """
        residual, rep = self._reduce(vec)
        if not residual:
            dep = {tag: Fraction(1)}
            vec_add_into(dep, rep, -1)
            return dep
        pivot = min(residual)
        inv = 1 / residual[pivot]
        row = vec_scale(residual, inv)
        combo = vec_add_into({tag: inv}, rep, -inv)
        # Back-substitute to keep all stored rows fully reduced.
        for other_piv, (other_row, other_combo) in list(self._rows.items()):
            c = other_row.get(pivot)
            if c:
                vec_add_into(other_row, row, -c)
                vec_add_into(other_combo, combo, -c)
        self._rows[pivot] = (row, combo)
        return None

    def solve(self, vec):
        """Express vec over the inputs fed so far.

        Returns {tag: coefficient} or None if vec is not in the span.
        """
        residual, rep = self._reduce(vec)
        if residual:
            return None
        return rep

    def contains(self, vec):
        residual, _ = self._reduce(vec)
        return not residual

    def rows(self):
        """Stored rows as (pivot, row, combo), sorted by pivot."""
        return [(piv, dict(row), dict(combo))
                for piv, (row, combo) in sorted(self._rows.items())]


def canonical_basis(vectors):
    """Reduced row echelon basis of the span of the given sparse
    vectors, as a list of dicts ordered by pivot."""
    red = RowReducer()
    for i, vec in enumerate(vectors):
        red.add(vec, i)
    return [row for _, row, _ in red.rows()]


def nullspace_combos(vectors):
    """Dependencies among the given vectors.

    Returns a list of {input index: coefficient} dicts; each dict d
    satisfies sum(d[i] * vectors[i]) == 0 and the dicts are linearly
    independent (each has coefficient 1 on a distinct last index).
    """
    red = RowReducer()
    combos = []
    for i, vec in enumerate(vectors):
        dep = red.add(vec, i)
        if dep is not None:
            combos.append(dep)
    return combos
