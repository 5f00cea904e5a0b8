"""Structural constants of diagonal elements and their shuffle calculus.

An EtaTable assigns to every index tuple (a_1, ..., a_r), r < p, a constant
eta in GR(p^M, N0), subject to the shuffle condition: for any split point,
eta(prefix) * eta(suffix) equals the sum of eta over all interleavings of the
two halves.  The built-in variants are the symmetric table 1/r! and the
ordered-product table (1/(r_1! ... r_s!) on weakly increasing tuples, 0
otherwise); custom tables are validated against the shuffle condition at
construction.

Time-indexed constants eta(a, n) factor through maximal constant blocks of
the integer vector n with strictly decreasing block values, each block
twisted by the matching Frobenius power; the dual constants use strictly
increasing blocks and a signed reversal per block.  The connected-permutation
sums B_{s1} tie these to iterated commutators through the Dynkin-style word
identity.
"""

from __future__ import annotations

from itertools import combinations

from .coeffring import GRElem, RingContext


def shuffles(s1: int, s: int):
    """All permutations pi of [0, s) keeping the relative order of the first
    s1 positions and of the remaining ones: the tuple at index i is
    source[pi[i]].  Count: binomial(s, s1)."""
    out = []
    for spots in combinations(range(s), s1):
        spots = set(spots)
        first = iter(range(s1))
        second = iter(range(s1, s))
        out.append(tuple(next(first) if i in spots else next(second) for i in range(s)))
    return out


def connected_perms(s: int, s1: int):
    """Permutations pi of [1, s] with pi(1) = s1 whose prefixes are integer
    intervals; returned 0-indexed.  |Phi_{s,s1}| = binomial(s-1, s1-1)."""
    if s1 < 1 or s1 > s:
        return []
    out = []

    def rec(lo, hi, acc):
        if len(acc) == s:
            out.append(tuple(acc))
            return
        if lo > 0:
            rec(lo - 1, hi, acc + [lo - 1])
        if hi < s - 1:
            rec(lo, hi + 1, acc + [hi + 1])

    rec(s1 - 1, s1 - 1, [s1 - 1])
    return out


def _blocks(n_vec):
    """Maximal constant runs of n_vec as (value, start, stop) triples."""
    out = []
    i = 0
    while i < len(n_vec):
        j = i
        while j < len(n_vec) and n_vec[j] == n_vec[i]:
            j += 1
        out.append((n_vec[i], i, j))
        i = j
    return out


class EtaTable:
    """Constants eta(a) for tuples over Z>=0 of length < p, with the
    time-indexed and dual extensions."""

    def __init__(self, ring: RingContext, variant: str = "simple", custom=None, letters=None):
        if variant not in ("simple", "ordered", "custom"):
            raise ValueError(f"unknown eta variant {variant!r}")
        self.ring = ring
        self.p = ring.p
        self.variant = variant
        self._inv_fact = [1]
        for i in range(1, self.p):
            self._inv_fact.append(self._inv_fact[-1] * pow(i, -1, ring.modulus) % ring.modulus)
        if variant == "custom":
            if custom is None or letters is None:
                raise ValueError("custom tables need the value map and its letter alphabet")
            self.custom = {tuple(k): v for k, v in custom.items()}
            self.letters = tuple(letters)
            errs = check_star_e(self, self.letters, self.p - 1)
            if errs:
                raise ValueError(f"custom eta table violates the shuffle condition: {errs[0]}")
        else:
            self.custom = None
            self.letters = tuple(letters) if letters else None

    def eta(self, a_vec) -> GRElem:
        a_vec = tuple(a_vec)
        r = len(a_vec)
        if r >= self.p:
            raise ValueError("tuple length must be < p")
        if r == 0:
            return self.ring.one
        if self.variant == "simple":
            return self.ring.from_int(self._inv_fact[r])
        if self.variant == "ordered":
            if any(a_vec[i] > a_vec[i + 1] for i in range(r - 1)):
                return self.ring.zero
            denom = 1
            for _, i, j in _blocks(a_vec):
                denom = denom * self._inv_fact[j - i] % self.ring.modulus
            return self.ring.from_int(denom)
        try:
            return self.custom[a_vec]
        except KeyError:
            raise KeyError(f"custom eta table has no entry for {a_vec}")

    def eta_n(self, a_vec, n_vec) -> GRElem:
        """Time-indexed constant: blocks of n_vec must strictly decrease."""
        a_vec, n_vec = tuple(a_vec), tuple(n_vec)
        if len(a_vec) != len(n_vec):
            raise ValueError("index vectors must have equal length")
        if not a_vec:
            return self.ring.one
        blocks = _blocks(n_vec)
        if any(blocks[i][0] <= blocks[i + 1][0] for i in range(len(blocks) - 1)):
            return self.ring.zero
        out = self.ring.one
        for value, i, j in blocks:
            out = out * self.ring.frobenius(self.eta(a_vec[i:j]), value % self.ring.N0)
            if not out:
                return out
        return out

    def eta_dual(self, a_vec, n_vec) -> GRElem:
        """Dual constant: strictly increasing blocks, each (-1)^len * eta(reversed)."""
        a_vec, n_vec = tuple(a_vec), tuple(n_vec)
        if len(a_vec) != len(n_vec):
            raise ValueError("index vectors must have equal length")
        if not a_vec:
            return self.ring.one
        blocks = _blocks(n_vec)
        if any(blocks[i][0] >= blocks[i + 1][0] for i in range(len(blocks) - 1)):
            return self.ring.zero
        out = self.ring.one
        for value, i, j in blocks:
            base = self.eta(a_vec[i:j][::-1])
            if (j - i) % 2:
                base = -base
            out = out * self.ring.frobenius(base, value % self.ring.N0)
            if not out:
                return out
        return out


def check_star_e(table: EtaTable, letters, max_s: int):
    """Exhaustive shuffle-condition check for tuples over the given letters up
    to length max_s; returns the list of violations."""
    errs = []
    from itertools import product

    for s in range(0, max_s + 1):
        for tup in product(letters, repeat=s):
            for s1 in range(0, s + 1):
                lhs = table.eta(tup[:s1]) * table.eta(tup[s1:])
                rhs = table.ring.zero
                for pi in shuffles(s1, s):
                    rhs = rhs + table.eta(tuple(tup[pi[i]] for i in range(s)))
                if lhs != rhs:
                    errs.append((tup, s1))
    return errs


def B_sum(table: EtaTable, a_vec, n_vec, s1: int) -> GRElem:
    """Sum of time-indexed constants over the connected permutations with
    leading value s1."""
    s = len(a_vec)
    out = table.ring.zero
    for pi in connected_perms(s, s1):
        out = out + table.eta_n([a_vec[i] for i in pi], [n_vec[i] for i in pi])
    return out


def check_lemma46a(table: EtaTable, a_vec, n_vec, s1: int) -> bool:
    """B_{s1} + B_{s1+1} = eta(s1, ..., 1) * eta(s1+1, ..., s)."""
    s = len(a_vec)
    lhs = B_sum(table, a_vec, n_vec, s1) + B_sum(table, a_vec, n_vec, s1 + 1)
    pre = list(range(s1))[::-1]
    suf = list(range(s1, s))
    rhs = table.eta_n([a_vec[i] for i in pre], [n_vec[i] for i in pre]) * table.eta_n(
        [a_vec[i] for i in suf], [n_vec[i] for i in suf]
    )
    return lhs == rhs


def check_dynkin_identity(s: int) -> bool:
    """Signed connected-permutation word sum equals the left-nested bracket
    expansion, symbolically over s distinct letters (integer coefficients)."""
    if s < 2:
        raise ValueError("needs s >= 2")
    lhs = {}
    for s1 in range(1, s + 1):
        sign = 1 if s1 % 2 else -1
        for pi in connected_perms(s, s1):
            inv = [0] * s
            for pos, val in enumerate(pi):
                inv[val] = pos
            word = tuple(inv)  # position j carries the letter pi^-1(j)
            lhs[word] = lhs.get(word, 0) + sign
            if lhs[word] == 0:
                del lhs[word]
    rhs = {(0,): 1}
    for letter in range(1, s):
        nxt = {}
        for w, c in rhs.items():
            for ww, cc in ((w + (letter,), c), ((letter,) + w, -c)):
                t = nxt.get(ww, 0) + cc
                if t:
                    nxt[ww] = t
                elif ww in nxt:
                    del nxt[ww]
        rhs = nxt
    return lhs == rhs


def check_convolution(table: EtaTable, a_vec, n_vec) -> bool:
    """sum_{s1} eta(1..s1) * eta_dual(s1+1..s) = delta_{0s}."""
    s = len(a_vec)
    total = table.ring.zero
    for s1 in range(0, s + 1):
        total = total + table.eta_n(a_vec[:s1], n_vec[:s1]) * table.eta_dual(
            a_vec[s1:], n_vec[s1:]
        )
    expected = table.ring.one if s == 0 else table.ring.zero
    return total == expected
