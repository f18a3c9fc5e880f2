"""Sparse exact linear algebra over the coefficient fields.

Vectors are dicts mapping hashable keys to nonzero scalars; the zero
vector is the empty dict.  Keys are arbitrary (branch/exponent pairs,
module slots, tagged copies) and are ordered by a caller-supplied sort
key, so the same routines serve series windows, quotient modules and
hom spaces.
"""

from __future__ import annotations

from bisect import bisect_left


def vec_scale(c, v):
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vec_iaddmul(out, c, b):
    """In-place out += c*b, dropping keys that cancel to zero."""
    if not c:
        return out
    for k, x in b.items():
        y = out.get(k)
        if y is None:
            out[k] = c * x
        else:
            y = y + c * x
            if y:
                out[k] = y
            else:
                del out[k]
    return out


def vec_addmul(a, c, b):
    return vec_iaddmul(dict(a), c, b)


def vec_sub(a, b):
    out = dict(a)
    for k, x in b.items():
        y = out.get(k)
        if y is None:
            out[k] = -x
        else:
            y = y - x
            if y:
                out[k] = y
            else:
                del out[k]
    return out


class Echelon:
    """Row-reduced spanning set, maintained fully reduced.

    Rows are sorted by the sort key of their pivot, each row is scaled
    to pivot coefficient one, and no row's support meets another row's
    pivot.  Inserting a vector either grows the span by one.  or
    reduces to zero and is dropped.
    """

    def __init__(self, field, sort_key=None):
        self.field = field
        self.sort_key = sort_key if sort_key is not None else (lambda k: k)
        self.rows = []
        self.pivots = []
        self._pivot_keys = []

    def reduce(self, vec):
        """Residual of vec after eliminating every pivot; a new dict."""
        out = {k: x for k, x in vec.items() if x}
        for i, p in enumerate(self.pivots):
            c = out.get(p)
            if c is not None:
                vec_iaddmul(out, -c, self.rows[i])
        return out

    def insert(self, vec):
        """Add vec to the span; returns the new pivot key, or None."""
        r = self.reduce(vec)
        if not r:
            return None
        p = min(r, key=self.sort_key)
        r = vec_scale(self.field.one / r[p], r)
        for i, row in enumerate(self.rows):
            c = row.get(p)
            if c is not None:
                self.rows[i] = vec_addmul(row, -c, r)
        key = self.sort_key(p)
        pos = bisect_left(self._pivot_keys, key)
        self.rows.insert(pos, r)
        self.pivots.insert(pos, p)
        self._pivot_keys.insert(pos, key)
        return p

    def extend(self, vecs):
        for v in vecs:
            self.insert(v)

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def coords(self, vec):
        """Coefficients of vec on self.rows, or None if outside the span."""
        out = {k: x for k, x in vec.items() if x}
        cs = [self.field.zero] * len(self.rows)
        for i, p in enumerate(self.pivots):
            c = out.get(p)
            if c is not None:
                cs[i] = c
                vec_iaddmul(out, -c, self.rows[i])
        return None if out else cs


def span(field, vecs, sort_key=None) -> Echelon:
    ech = Echelon(field, sort_key=sort_key)
    ech.extend(vecs)
    return ech


class TrackedEchelon:
    """Echelon that remembers how each row combines the inserted
    vectors, so span members can be rewritten over the original tags.

    Invariant: rows[i] == sum over t of combos[i][t] * (vector inserted
    under tag t).  Tags must be unique per insert.
    """

    def __init__(self, field, sort_key=None):
        self.field = field
        self.sort_key = sort_key if sort_key is not None else (lambda k: k)
        self.rows = []
        self.combos = []
        self.pivots = []
        self._pivot_keys = []

    def _reduce(self, vec):
        out = {k: x for k, x in vec.items() if x}
        acc = {}
        for i, p in enumerate(self.pivots):
            c = out.get(p)
            if c is not None:
                vec_iaddmul(out, -c, self.rows[i])
                vec_iaddmul(acc, -c, self.combos[i])
        return out, acc

    def insert(self, vec, tag) -> bool:
        """Insert under a fresh tag; True if the span grew."""
        r, acc = self._reduce(vec)
        if not r:
            return False
        vec_iaddmul(acc, self.field.one, {tag: self.field.one})
        p = min(r, key=self.sort_key)
        inv = self.field.one / r[p]
        r = vec_scale(inv, r)
        acc = vec_scale(inv, acc)
        for i, row in enumerate(self.rows):
            c = row.get(p)
            if c is not None:
                self.rows[i] = vec_addmul(row, -c, r)
                self.combos[i] = vec_addmul(self.combos[i], -c, acc)
        key = self.sort_key(p)
        pos = bisect_left(self._pivot_keys, key)
        self.rows.insert(pos, r)
        self.combos.insert(pos, acc)
        self.pivots.insert(pos, p)
        self._pivot_keys.insert(pos, key)
        return True

    def express(self, vec):
        """vec as a tag combination (dict), or None if outside the span."""
        r, acc = self._reduce(vec)
        if r:
            return None
        return {t: -c for t, c in acc.items()}

    @property
    def dim(self) -> int:
        return len(self.rows)


def kernel(field, constraints, unknowns):
    """Basis of {x : sum_k row[k]*x[k] = 0 for every constraint row}.

    `unknowns` fixes the coordinate order; one basis vector is emitted
    per free unknown, in that order, with that unknown set to one.
    """
    pos = {u: i for i, u in enumerate(unknowns)}
    ech = Echelon(field, sort_key=lambda k: pos[k])
    for row in constraints:
        ech.insert(row)
    pivot_set = set(ech.pivots)
    basis = []
    for f in unknowns:
        if f in pivot_set:
            continue
        sol = {f: field.one}
        for row, p in zip(ech.rows, ech.pivots):
            c = row.get(f)
            if c:
                sol[p] = -c
        basis.append(sol)
    return basis


def intersect_spans(field, avecs, bvecs, sort_key=None):
    """Basis of span(avecs) ∩ span(bvecs), by the two-block trick:
    echelonize rows (a,a) and (b,0); rows pivoted in the second block
    have zero first block, and their second blocks span the meet."""
    sk = sort_key if sort_key is not None else (lambda k: k)
    ech = Echelon(field, sort_key=lambda t: (t[0], sk(t[1])))
    for v in avecs:
        row = {(0, k): x for k, x in v.items()}
        row.update({(1, k): x for k, x in v.items()})
        ech.insert(row)
    for v in bvecs:
        ech.insert({(0, k): x for k, x in v.items()})
    out = []
    for row, p in zip(ech.rows, ech.pivots):
        if p[0] == 1:
            out.append({k: x for (_, k), x in row.items()})
    return out


def dense_rank(field, mat) -> int:
    """Rank of a dense matrix given as a list of rows of scalars."""
    ech = Echelon(field)
    for row in mat:
        ech.insert({j: x for j, x in enumerate(row) if x})
    return ech.dim


def is_invertible(field, mat) -> bool:
    n = len(mat)
    if n == 0:
        return True
    if any(len(row) != n for row in mat):
        return False
    return dense_rank(field, mat) == n
