"""The free Lie algebra of nilpotent class < p over GR(p^M, N0) in Lyndon
coordinates: brackets, the semilinear sigma-action, the distinguished elements
sigma^n(alpha0) D_0, and sigma-stable ideal spans realised through Howell
normal forms on flattened coordinates.

A LieElement is a finitely supported map Lyndon word -> GRElem; conversion to
and from the enveloping word algebra uses the triangularity of standard
bracketings (the expansion of b(w) is w plus lexicographically larger words of
the same length with integer coefficients).
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeffring import GRElem
from .freeassoc import AssocElement, FreeAlgebra, Gen, is_lyndon
from .modlinalg import SpanBasis, contains, howellize, reduce_vector


class LieElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: FreeAlgebra, coords: dict):
        self.algebra = algebra
        self.coords = {w: c for w, c in coords.items() if c}

    def __add__(self, other):
        out = dict(self.coords)
        for w, c in other.coords.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
        return LieElement(self.algebra, out)

    def __sub__(self, other):
        out = dict(self.coords)
        for w, c in other.coords.items():
            s = out.get(w)
            out[w] = -c if s is None else s - c
        return LieElement(self.algebra, out)

    def __neg__(self):
        return LieElement(self.algebra, {w: -c for w, c in self.coords.items()})

    def __mul__(self, other):
        if isinstance(other, (int, GRElem)):
            return LieElement(self.algebra, {w: c * other for w, c in self.coords.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LieElement) and self.coords == other.coords

    def __bool__(self):
        return bool(self.coords)

    def __repr__(self):
        if not self.coords:
            return "0"
        bits = []
        for w in sorted(self.coords, key=lambda w: (len(w), w)):
            label = "".join(self.algebra.gens[i].label() for i in w)
            bits.append(f"{list(self.coords[w].coeffs)}*[{label}]")
        return " + ".join(bits)

    def to_assoc(self) -> AssocElement:
        alg = self.algebra
        out = {}
        for w, c in self.coords.items():
            for ww, s in alg.bracket_expansion(w).items():
                coeff = c * s
                prev = out.get(ww)
                out[ww] = coeff if prev is None else prev + coeff
        return AssocElement(alg, out)

    def to_json(self):
        out = []
        for w in sorted(self.coords, key=lambda w: (len(w), w)):
            out.append([[self.algebra.gens[i].label() for i in w], list(self.coords[w].coeffs)])
        return out


def lie_zero(algebra: FreeAlgebra) -> LieElement:
    return LieElement(algebra, {})


def lie_gen(algebra: FreeAlgebra, g: Gen) -> LieElement:
    return LieElement(algebra, {(algebra.index[g],): algebra.ring.one})


def lie_from_json(algebra: FreeAlgebra, data) -> LieElement:
    coords = {}
    for labels, coeffs in data:
        w = algebra.word_of_gens([Gen.from_label(s) for s in labels])
        coords[w] = algebra.ring.from_coeffs(coeffs)
    return LieElement(algebra, coords)


def from_assoc(x: AssocElement) -> LieElement:
    """Lyndon coordinates of a Lie element of the word algebra, by triangular
    elimination; raises ValueError if x is not Lie."""
    alg = x.algebra
    if x.terms.get(()):
        raise ValueError("nonzero constant term; not a Lie element")
    coords = {}
    for d in x.degrees():
        if d == 0:
            continue
        comp = {w: c for w, c in x.terms.items() if len(w) == d}
        while comp:
            w = min(comp)
            if not is_lyndon(w):
                raise ValueError(f"leading word {w} is not Lyndon; not a Lie element")
            c = comp.pop(w)
            coords[w] = c
            for ww, s in alg.bracket_expansion(w).items():
                if ww == w:
                    continue
                prev = comp.get(ww, alg.ring.zero)
                nc = prev - c * s
                if nc:
                    comp[ww] = nc
                elif ww in comp:
                    del comp[ww]
    return LieElement(alg, coords)


def bracket(x: LieElement, y: LieElement) -> LieElement:
    xa, ya = x.to_assoc(), y.to_assoc()
    return from_assoc(xa * ya - ya * xa)


def sigma(x: LieElement, power: int = 1) -> LieElement:
    """Semilinear sigma: Frobenius on coefficients, n -> n + power on letters."""
    alg = x.algebra
    ring = alg.ring
    k = power % ring.N0
    if k == 0:
        return x
    perm = _letter_shift(alg, k)
    out = {}
    xa = x.to_assoc()
    for w, c in xa.terms.items():
        ww = tuple(perm[i] for i in w)
        cc = ring.frobenius(c, k)
        prev = out.get(ww)
        out[ww] = cc if prev is None else prev + cc
    return from_assoc(AssocElement(alg, out))


def _letter_shift(algebra: FreeAlgebra, k: int):
    perm = []
    for g in algebra.gens:
        if g.is_d0:
            perm.append(algebra.index[g])
        else:
            target = Gen(g.a, (g.n + k) % algebra.ring.N0)
            perm.append(algebra.index[target])
    return perm


def d0n(n: int, algebra: FreeAlgebra) -> LieElement:
    """sigma^n(alpha0) * D_0, the trace-normalised multiple of D_0."""
    ring = algebra.ring
    coeff = ring.frobenius(ring.alpha0, n % ring.N0)
    return LieElement(algebra, {(algebra.index[Gen(0, 0)],): coeff})


# -- flattened coordinates and ideal spans ----------------------------------


def flatten(x: LieElement):
    """Coordinates over Z/p^M: per Lyndon word, N0 power-basis components."""
    alg = x.algebra
    n0 = alg.ring.N0
    vec = [0] * (len(alg.lyndon) * n0)
    for w, c in x.coords.items():
        base = alg.lyndon_pos[w] * n0
        for j, cj in enumerate(c.coeffs):
            vec[base + j] = cj
    return tuple(vec)


def unflatten(algebra: FreeAlgebra, vec) -> LieElement:
    n0 = algebra.ring.N0
    coords = {}
    for i, w in enumerate(algebra.lyndon):
        chunk = vec[i * n0 : (i + 1) * n0]
        if any(chunk):
            coords[w] = algebra.ring.from_coeffs(chunk)
    return LieElement(algebra, coords)


def ambient_dim(algebra: FreeAlgebra) -> int:
    return len(algebra.lyndon) * algebra.ring.N0


@dataclass(frozen=True)
class IdealSpan:
    """sigma-stable, bracket-closed W_M(k)-submodule in flattened coordinates."""

    algebra: FreeAlgebra
    basis: SpanBasis
    meta: str = ""

    def contains_elem(self, x: LieElement) -> bool:
        return contains(self.basis, flatten(x))

    def reduce_elem(self, x: LieElement) -> LieElement:
        return unflatten(self.algebra, reduce_vector(self.basis, flatten(x)))


def _howell(algebra: FreeAlgebra, rows) -> SpanBasis:
    ring = algebra.ring
    return howellize(rows, ring.modulus, ambient_dim(algebra), ring.p, ring.M)


def module_span(algebra: FreeAlgebra, gens, extra_rows=()) -> SpanBasis:
    """Howell basis of the W_M(k)-module span of the given Lie elements."""
    ring = algebra.ring
    rows = list(extra_rows)
    for g in gens:
        for j in range(ring.N0):
            rows.append(flatten(g * ring.basis_elem(j)))
    return _howell(algebra, rows)


def ideal_closure(algebra, gens, sigma_stable: bool = True, extra_rows=(), meta: str = "") -> IdealSpan:
    """Smallest W_M(k)-submodule containing the generators that is closed under
    bracketing with every alphabet generator and, optionally, under sigma.
    Computed by saturating the Howell basis until it stabilises."""
    ring = algebra.ring
    basis = module_span(algebra, gens, extra_rows)
    gen_elems = [lie_gen(algebra, g) for g in algebra.gens]
    while True:
        new_rows = []
        for row in basis.rows:
            elem = unflatten(algebra, row)
            for ge in gen_elems:
                new_rows.append(flatten(bracket(elem, ge)))
            if sigma_stable:
                new_rows.append(flatten(sigma(elem, 1)))
            if ring.N0 > 1:
                new_rows.append(flatten(elem * ring.basis_elem(1)))
        if all(contains(basis, r) for r in new_rows):
            return IdealSpan(algebra, basis, meta)
        basis = _howell(algebra, list(basis.rows) + new_rows)


def quotient_map(x: LieElement, span: SpanBasis):
    """Canonical coordinate sequence of x modulo the span."""
    return reduce_vector(span, flatten(x))


def left_nested(algebra: FreeAlgebra, letters) -> LieElement:
    """[...[l_1, l_2], ..., l_r] for LieElement letters."""
    acc = letters[0]
    for nxt in letters[1:]:
        acc = bracket(acc, nxt)
    return acc
