"""One-dimensional local rings presented inside a tuple of branches.

A ring O is the subalgebra of ⊕_i k[[t_i]] generated by finitely many
vectors with zero constant term (adjoined to the diagonal constants).
Everything is computed through the image of O in the finite window
⊕_i k[t]/t^W: the closure of the generators under multiplication, as a
reduced echelon of exponent vectors.

The conductor exponents n_i are read off the window image by a
top-down scan for the full monomial slab.  The scan is certified once
the window is at least twice the claimed conductor plus two: any ring
element agreeing with a slab monomial that far out can be corrected to
an exact slab member by the usual successive-approximation argument,
so the scan result is the true conductor, not a window artifact.  The
window grows adaptively toward that certificate and gives up at
`window_bound` with NotFiniteColength.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (DifferentialDegreeError, InvariantViolation, NotARing,
                     NotCoprime, NotFiniteColength, NotPrimeField, ParseError)
from .fields import FiniteField, format_field, parse_field
from .laurent import Element, format_element, parse_element
from .linalg import Echelon

INF = math.inf


def _wkey(key):
    return (key[1], key[0])


# -- presentation -------------------------------------------------------------

@dataclass(frozen=True)
class CurveSpec:
    """Input data for a ring build.

    `semigroup`, for one-branch monomial rings only, lists exponent
    generators; it both supplies the generators (as monomials) and
    presizes the window from the exact conductor, which is how large
    monomial rings get past the default window bound honestly.
    """

    field: object
    generators: tuple = ()
    semigroup: tuple = None
    window_bound: int = 200
    label: str = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.semigroup is not None:
            object.__setattr__(self, "semigroup",
                               tuple(int(a) for a in self.semigroup))


def _normalize_generators(gens):
    """Subtract the diagonal constant of each generator.

    A generator whose constant terms differ across branches would make
    the constants of the subring strictly larger than the diagonal k,
    so the result would not be local: rejected.
    """
    out = []
    for g in gens:
        if g.degree != 0:
            raise DifferentialDegreeError("ring generators must be functions")
        consts = {g.coefficient(i, 0) for i in range(g.nbranches)}
        if len(consts) > 1:
            raise NotARing(
                "generator constants differ across branches; "
                "the subring would contain a nontrivial idempotent")
        c = consts.pop()
        if c:
            g = g - Element.one(g.field, g.nbranches).scale(c)
        if g:
            out.append(g)
    return out


def _mul_clip(a, b, width):
    """Branchwise product of two exponent-vector dicts, clipped."""
    out = {}
    for (i, ja), ca in a.items():
        for (ib, jb), cb in b.items():
            if ib != i:
                continue
            j = ja + jb
            if j >= width:
                continue
            key = (i, j)
            s = out.get(key)
            s = ca * cb if s is None else s + ca * cb
            if s:
                out[key] = s
            else:
                del out[key]
    return out


def _closure_window(field, nbranches, gens, width):
    """Echelon of the image of the ring in ⊕ k[t]/t^width.

    Worklist closure: every vector that grows the span is multiplied
    by every generator.  Generators vanish to order at least one on
    each branch they touch, so the window is exhausted after finitely
    many rounds; the span dimension bounds the work outright.
    """
    ech = Echelon(field, sort_key=_wkey)
    gvecs = [{k: c for k, c in g.coeffs.items() if k[1] < width} for g in gens]
    frontier = []

    def push(vec):
        vec = {k: c for k, c in vec.items() if k[1] < width}
        if vec and ech.insert(vec) is not None:
            frontier.append(vec)

    push({(i, 0): field.one for i in range(nbranches)})
    while frontier:
        v = frontier.pop()
        for g in gvecs:
            push(_mul_clip(v, g, width))
    return ech


def _slab_start(ech, nbranches, width):
    """Per-branch least s with every monomial t^j, s <= j < width, in
    the span; width itself when even the top monomial is missing."""
    field = ech.field
    out = []
    for i in range(nbranches):
        s = width
        for j in range(width - 1, -1, -1):
            if ech.contains({(i, j): field.one}):
                s = j
            else:
                break
        out.append(s)
    return out


def build(spec: CurveSpec) -> "CurveRing":
    """Close the generators, certify the conductor, package the ring."""
    field = spec.field
    gens = list(spec.generators)
    if spec.semigroup is not None:
        if gens:
            raise ParseError("give either generators or a semigroup, not both")
        data = semigroup_oracle(spec.semigroup)
        gens = [Element.monomial(field, 1, 0, a) for a in spec.semigroup]
        width = 2 * max(data.conductor, 1) + 2
    else:
        width = None
    gens = _normalize_generators(gens)
    if not gens:
        raise NotFiniteColength("no generators beyond the constants")
    nbranches = gens[0].nbranches
    for g in gens:
        if g.nbranches != nbranches:
            raise NotARing("generators disagree on the number of branches")

    if width is None:
        vals = [int(g.valuation(i)) for g in gens for i in range(nbranches)
                if g.valuation(i) != INF]
        width = min(spec.window_bound, max(8, 2 * max(vals) + 2))
    while True:
        ech = _closure_window(field, nbranches, gens, width)
        cond = _slab_start(ech, nbranches, width)
        need = 2 * max(max(cond), 1) + 2
        if need <= width:
            break
        if spec.semigroup is not None:
            raise InvariantViolation(
                "window scan disagrees with the semigroup oracle")
        if width >= spec.window_bound:
            raise NotFiniteColength(
                f"conductor not certified within window bound "
                f"{spec.window_bound} (needs at least {need})")
        width = min(need, spec.window_bound)

    basis = []
    for row, piv in zip(ech.rows, ech.pivots):
        if piv[1] < cond[piv[0]]:
            basis.append({k: c for k, c in row.items() if k[1] < cond[k[0]]})
    reduced = Echelon(field, sort_key=_wkey)
    reduced.extend(basis)
    lifts = tuple(Element(field, nbranches, row, 0) for row in reduced.rows)
    return CurveRing(spec, field, nbranches, tuple(gens), tuple(cond),
                     lifts, width)


# -- the ring object ----------------------------------------------------------

@dataclass(frozen=True)
class ConductorData:
    exponents: tuple
    colength_ring: int          # dim O / conductor
    colength_normalization: int  # dim (branch tuple) / conductor
    delta: int                  # dim (branch tuple) / O


@dataclass(frozen=True)
class GorensteinCertificate:
    gorenstein: bool
    colength_normalization: int
    twice_colength_ring: int

    def __bool__(self):
        return self.gorenstein


class CurveRing:
    """A built ring: generators, conductor, and a reduced basis of the
    ring modulo its conductor (unit row first).

    Equality and hashing use the conductor and the reduced basis, which
    are canonical for the subring itself, not for the presentation.
    """

    def __init__(self, spec, field, nbranches, gens, cond, basis, window):
        self.spec = spec
        self.field = field
        self.nbranches = nbranches
        self.gens = gens
        self.cond = cond
        self.basis = basis
        self.window = window
        self.label = spec.label

    def __eq__(self, other):
        if not isinstance(other, CurveRing):
            return NotImplemented
        return (self.field == other.field
                and self.nbranches == other.nbranches
                and self.cond == other.cond
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.nbranches, self.cond, self.basis))

    def __repr__(self):
        name = self.label or "ring"
        return (f"<{name}: {self.nbranches} branch(es), "
                f"conductor {self.cond} over {format_field(self.field)}>")

    @property
    def colength_ring(self) -> int:
        return len(self.basis)

    @property
    def colength_normalization(self) -> int:
        return sum(self.cond)

    @property
    def delta(self) -> int:
        return self.colength_normalization - self.colength_ring

    def membership(self, elem) -> bool:
        from .fracideal import unit_ideal
        if elem.degree != 0:
            return False
        return unit_ideal(self).contains_element(elem)

    def conductor(self) -> ConductorData:
        """Conductor exponents plus the three colengths, cross-checked
        against a direct quotient-length computation."""
        from .fracideal import normalization_module, unit_ideal
        data = ConductorData(self.cond, self.colength_ring,
                             self.colength_normalization, self.delta)
        direct = normalization_module(self).len_quotient(unit_ideal(self))
        if direct != data.delta:
            raise InvariantViolation(
                f"delta mismatch: scan gives {data.delta}, quotient {direct}")
        return data

    def is_gorenstein(self) -> GorensteinCertificate:
        a = self.colength_normalization
        b = 2 * self.colength_ring
        if a < b:
            raise InvariantViolation(
                "conductor colength below twice the ring colength")
        return GorensteinCertificate(a == b, a, b)

    def is_seminormal(self) -> bool:
        return all(n <= 1 for n in self.cond)

    def seminormalization(self) -> "CurveRing":
        """The smallest intermediate ring containing every branchwise
        t: just rebuild with those monomials adjoined."""
        extra = [Element.monomial(self.field, self.nbranches, i, 1)
                 for i in range(self.nbranches)]
        label = f"seminormalization({self.label})" if self.label else None
        out = build(CurveSpec(self.field, tuple(self.gens) + tuple(extra),
                              window_bound=max(self.spec.window_bound,
                                               self.window),
                              label=label))
        if not out.is_seminormal():
            raise InvariantViolation("seminormalization is not seminormal")
        return out

    def artin_quotient(self, x):
        from .artin import curve_quotient
        return curve_quotient(self, x)

    def base_change(self, e: int):
        """The same generators over the degree-e extension field.

        Returns (new ring, coefficient mapper).  Only prime fields can
        be extended here; the extension elements themselves stay an
        implementation detail of the new ring.
        """
        if not isinstance(self.field, FiniteField) or self.field.e != 1:
            raise NotPrimeField("base change starts from a prime field")
        if e == 1:
            return self, lambda elem: elem
        big = self.field.extension(e)

        def mapper(elem):
            return elem.map_coefficients(big.coerce, big)

        label = f"{self.label}@ext{e}" if self.label else None
        spec = CurveSpec(big, tuple(mapper(g) for g in self.gens),
                         semigroup=self.spec.semigroup,
                         window_bound=self.spec.window_bound, label=label)
        out = build(spec)
        if out.cond != self.cond or out.colength_ring != self.colength_ring:
            raise InvariantViolation("base change moved the conductor data")
        return out, mapper


# -- numerical semigroups ------------------------------------------------------

@dataclass(frozen=True)
class SemigroupData:
    generators: tuple
    conductor: int
    delta: int          # number of gaps
    symmetric: bool
    gaps: tuple


def semigroup_oracle(generators) -> SemigroupData:
    """Conductor, gap count and symmetry of a numerical semigroup.

    Sieve reachability with a growing bound; once a run of min(gens)
    consecutive members appears, every larger integer is a member, so
    the sieve is complete.
    """
    gens = sorted({int(a) for a in generators})
    if not gens or gens[0] <= 0:
        raise NotCoprime("semigroup generators must be positive")
    g = 0
    for a in gens:
        g = math.gcd(g, a)
    if g != 1:
        raise NotCoprime(f"generators share the common factor {g}")
    step = gens[0]
    bound = 2 * max(gens) + 2
    while True:
        hit = [False] * bound
        hit[0] = True
        for i in range(1, bound):
            for a in gens:
                if a <= i and hit[i - a]:
                    hit[i] = True
                    break
        run = 0
        for i in range(bound):
            run = run + 1 if hit[i] else 0
            if run >= step:
                gaps = tuple(j for j in range(i + 1) if not hit[j])
                c = gaps[-1] + 1 if gaps else 0
                return SemigroupData(tuple(gens), c, len(gaps),
                                     c == 2 * len(gaps), gaps)
        bound *= 2


# -- text format ---------------------------------------------------------------

def parse_curve_file(text: str, window_bound: int = 200,
                     label: str = None) -> CurveSpec:
    """Sections, one per line: `field`, `branches`, `gen` (repeatable),
    `semigroup`.  `#` starts a comment.  Errors carry line numbers."""
    field = None
    nbranches = None
    gens = []
    semigroup = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if key == "field":
                field = parse_field(rest)
            elif key == "branches":
                nbranches = int(rest)
                if nbranches < 1:
                    raise ParseError("at least one branch")
            elif key == "gen":
                if field is None:
                    raise ParseError("gen before field")
                gens.append(parse_element(field, rest, nbranches=nbranches))
            elif key == "semigroup":
                semigroup = tuple(int(tok) for tok in rest.split())
            else:
                raise ParseError(f"unknown section {key!r}")
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if field is None:
        raise ParseError("missing field section")
    if semigroup is not None and gens:
        raise ParseError("give either gen lines or a semigroup line")
    return CurveSpec(field, tuple(gens), semigroup=semigroup,
                     window_bound=window_bound, label=label)


def format_curve_file(spec: CurveSpec) -> str:
    lines = [f"field {format_field(spec.field)}"]
    if spec.semigroup is not None:
        lines.append("branches 1")
        lines.append("semigroup " + " ".join(str(a) for a in spec.semigroup))
    else:
        if spec.generators:
            lines.append(f"branches {spec.generators[0].nbranches}")
        for g in spec.generators:
            lines.append(f"gen {format_element(g)}")
    return "\n".join(lines) + "\n"
