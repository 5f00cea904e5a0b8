"""Words, Lyndon combinatorics and the truncated free associative algebra.

The algebra is free on an ordered alphabet of generators over GR(p^M, N0),
truncated below degree p: any concatenation of total length >= p is dropped,
which simultaneously realises nilpotent class < p on the Lie side and the
vanishing of the p-th power of the augmentation ideal.

Words are tuples of letter indices into the alphabet; the lexicographic order
on index tuples is the word order.  Lyndon words with their right standard
bracketings give the triangular basis used by the Lie-coordinate conversion.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .coeffring import GRElem, RingContext


@dataclass(frozen=True, order=True)
class Gen:
    """Generator index: a = 0 is the distinguished D_0, otherwise D_{a,n} with
    gcd(a, p) = 1 and n mod N0.  The dataclass order (a, n) is the word order."""

    a: int
    n: int = 0

    @property
    def is_d0(self):
        return self.a == 0

    def label(self):
        return "D0" if self.a == 0 else f"D({self.a},{self.n})"

    @staticmethod
    def from_label(text: str) -> "Gen":
        text = text.strip()
        if text == "D0":
            return Gen(0, 0)
        if text.startswith("D(") and text.endswith(")"):
            a, n = text[2:-1].split(",")
            return Gen(int(a), int(n))
        raise ValueError(f"bad generator label {text!r}")


def standard_alphabet(p: int, N0: int, a_max: int) -> tuple:
    """D_0 followed by all D_{a,n} with a in Z+(p), a <= a_max, n in Z/N0."""
    gens = [Gen(0, 0)]
    for a in range(1, a_max + 1):
        if gcd(a, p) == 1:
            gens.extend(Gen(a, n) for n in range(N0))
    return tuple(gens)


def is_lyndon(word) -> bool:
    if not word:
        return False
    n = len(word)
    return all(word < word[i:] + word[:i] for i in range(1, n))


def lyndon_words(n_letters: int, max_len: int):
    """All Lyndon words (as index tuples) of length <= max_len via Duval's
    generation, returned in graded lexicographic order."""
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[-m])
        # strip the periodic tail back to the last incrementable position
        while w and w[-1] == n_letters - 1:
            w.pop()
    out.sort(key=lambda word: (len(word), word))
    return out


def necklace_count(k: int, n: int) -> int:
    """Number of Lyndon words of length n over k letters (Witt formula)."""
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += _moebius(n // d) * k ** d
    return total // n


def _moebius(n: int) -> int:
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def standard_bracketing(word):
    """Right standard factorisation tree: b(uv) = [b(u), b(v)] with v the
    longest proper Lyndon suffix.  Letters are returned as bare indices."""
    if not is_lyndon(word):
        raise ValueError(f"{word!r} is not a Lyndon word")
    if len(word) == 1:
        return word[0]
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return (standard_bracketing(word[:i]), standard_bracketing(word[i:]))
    raise AssertionError("unreachable: every Lyndon word has a proper Lyndon suffix")


class FreeAlgebra:
    """Context object: ring, ordered alphabet, class bound p, Lyndon caches."""

    def __init__(self, ring: RingContext, gens):
        self.ring = ring
        self.p = ring.p
        self.gens = tuple(sorted(set(gens)))
        self.index = {g: i for i, g in enumerate(self.gens)}
        self.lyndon = lyndon_words(len(self.gens), self.p - 1)
        self.lyndon_pos = {w: i for i, w in enumerate(self.lyndon)}
        self._bracket_expansion = {}

    def zero(self):
        return AssocElement(self, {})

    def one(self):
        return AssocElement(self, {(): self.ring.one})

    def gen(self, g: Gen):
        return AssocElement(self, {(self.index[g],): self.ring.one})

    def term(self, word, coeff: GRElem):
        if len(word) >= self.p:
            return self.zero()
        return AssocElement(self, {tuple(word): coeff} if coeff else {})

    def word_of_gens(self, gens):
        return tuple(self.index[g] for g in gens)

    def bracket_expansion(self, word):
        """Expansion of the standard bracketing of a Lyndon word as an integer
        word-combination; coefficient of the word itself is 1 and all other
        words are lexicographically larger of the same length."""
        try:
            return self._bracket_expansion[word]
        except KeyError:
            pass

        def expand(tree):
            if isinstance(tree, int):
                return {(tree,): 1}
            left, right = expand(tree[0]), expand(tree[1])
            out = {}
            for wu, cu in left.items():
                for wv, cv in right.items():
                    for w, s in ((wu + wv, 1), (wv + wu, -1)):
                        c = out.get(w, 0) + s * cu * cv
                        if c:
                            out[w] = c
                        elif w in out:
                            del out[w]
            return out

        exp = expand(standard_bracketing(word))
        assert exp.get(word) == 1
        self._bracket_expansion[word] = exp
        return exp


class AssocElement:
    """Finitely supported map word -> GRElem; products truncate at length p."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = {w: c for w, c in terms.items() if c}

    def algebra_one(self):
        return self.algebra.one()

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
        return AssocElement(self.algebra, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            out[w] = -c if s is None else s - c
        return AssocElement(self.algebra, out)

    def __neg__(self):
        return AssocElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, GRElem)):
            return AssocElement(self.algebra, {w: c * other for w, c in self.terms.items()})
        p = self.algebra.p
        out = {}
        for wu, cu in self.terms.items():
            for wv, cv in other.terms.items():
                if len(wu) + len(wv) >= p:
                    continue
                w = wu + wv
                c = cu * cv
                s = out.get(w)
                out[w] = c if s is None else s + c
        return AssocElement(self.algebra, out)

    def __rmul__(self, other):
        if isinstance(other, (int, GRElem)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, AssocElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            label = "*".join(self.algebra.gens[i].label() for i in w) or "1"
            bits.append(f"{list(self.terms[w].coeffs)}*{label}")
        return " + ".join(bits)

    def component(self, degree: int) -> "AssocElement":
        return AssocElement(
            self.algebra, {w: c for w, c in self.terms.items() if len(w) == degree}
        )

    def degrees(self):
        return sorted({len(w) for w in self.terms})

    def to_json(self):
        out = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            out.append([[self.algebra.gens[i].label() for i in w], list(self.terms[w].coeffs)])
        return out


def left_bracket_expansion(word):
    """Integer word-expansion of [...[x_{w1}, x_{w2}], ..., x_{wn}]."""
    out = {(word[0],): 1}
    for letter in word[1:]:
        nxt = {}
        for w, c in out.items():
            for ww, s in ((w + (letter,), c), ((letter,) + w, -c)):
                t = nxt.get(ww, 0) + s
                if t:
                    nxt[ww] = t
                elif ww in nxt:
                    del nxt[ww]
        out = nxt
    return out


def dynkin_project(x: AssocElement, degree: int) -> AssocElement:
    """(1/n) sum_w coeff(w) [...[w_1,w_2],...,w_n]: the idempotent projection
    onto Lie elements in homogeneous degree n < p."""
    if degree < 1 or degree >= x.algebra.p:
        raise ValueError("degree must satisfy 1 <= n < p")
    for w in x.terms:
        if len(w) != degree:
            raise ValueError("input is not homogeneous of the stated degree")
    ring = x.algebra.ring
    inv_n = pow(degree, -1, ring.modulus)
    out = {}
    for w, c in x.terms.items():
        for ww, s in left_bracket_expansion(w).items():
            coeff = c * (s * inv_n)
            prev = out.get(ww)
            out[ww] = coeff if prev is None else prev + coeff
    return AssocElement(x.algebra, out)


def is_lie(x: AssocElement) -> bool:
    """True iff the degree-0 part vanishes and every homogeneous component is
    fixed by the Dynkin projection."""
    if x.terms.get(()):
        return False
    for d in x.degrees():
        if d == 0:
            continue
        comp = x.component(d)
        if dynkin_project(comp, d) != comp:
            return False
    return True


def multiply(u: AssocElement, v: AssocElement) -> AssocElement:
    return u * v
