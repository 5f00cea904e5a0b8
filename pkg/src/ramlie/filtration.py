"""The numerical filtration functions and the weight ideals they generate.

U(s, m) is the minimal value of 1/p^{i_1} + ... + 1/p^{i_s} over non-negative
exponents summing to m; M(a, s) is the least m with p^m D_{an} in the (1+s)-th
weight ideal.  Both come with closed forms and independent brute-force
oracles.  build_Lw / build_LNw materialise the ideals L(w) and the submodules
L_N(w) over the truncated alphabet as Howell spans.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .freeassoc import FreeAlgebra
from .modlinalg import SpanBasis
from .nilpotentlie import IdealSpan, left_nested, lie_gen, module_span
from .params import GlobalParams, Rational

INFINITY = None  # sentinel: no relation below class p


def U(s: int, m: int, p: int) -> Rational:
    """Closed form: with m = s*u0 + s1, 0 <= s1 < s, the minimum is
    (s - s1)/p^u0 + s1/p^(u0+1); U(0, m) = 0."""
    if s < 0 or m < 0:
        raise ValueError("s and m must be non-negative")
    if s == 0:
        return Fraction(0)
    u0, s1 = divmod(m, s)
    return Fraction(s - s1, p ** u0) + Fraction(s1, p ** (u0 + 1))


@lru_cache(maxsize=None)
def U_bruteforce(s: int, m: int, p: int) -> Rational:
    """Direct minimum over all exponent compositions (oracle)."""
    if s == 0:
        return Fraction(0) if m >= 0 else None
    best = None
    for i in range(m + 1):
        rest = U_bruteforce(s - 1, m - i, p)
        if rest is None:
            continue
        val = Fraction(1, p ** i) + rest
        if best is None or val < best:
            best = val
    return best


def U_min_split(s: int, s2: int, m_total: int, p: int) -> Rational:
    """min over m + m' = m_total of U(s, m) + U(s2, m'); equals U(s+s2, m_total)
    whenever s + s2 < p."""
    best = None
    for m in range(m_total + 1):
        val = U(s, m, p) + U(s2, m_total - m, p)
        if best is None or val < best:
            best = val
    return best


def _digits(a: int, v0: Rational, p: int, count: int):
    """p-digits theta_i of a/v0 = sum theta_i p^-i, 0 <= theta_i < p."""
    x = Fraction(a) / v0
    if x >= p:
        raise ValueError(f"a/v0 = {x} >= p; no base-p digit expansion")
    out = []
    for _ in range(count):
        d = int(x)
        out.append(d)
        x = (x - d) * p
    return out


def M_as(a: int, s: int, v0: Rational, p: int):
    """Prop-style case analysis on the leading digits of a/v0; returns the
    minimal m with p^m D_an in L(1+s), or the INFINITY sentinel (a = 0)."""
    if s == 0:
        return 0
    if not 1 <= s <= p - 1:
        raise ValueError("s must satisfy 0 <= s <= p-1")
    if a == 0:
        return INFINITY
    if not 0 < Fraction(a) / v0 < p:
        raise ValueError("a out of range: need 0 < a/v0 < p")
    digs = _digits(a, v0, p, s + p + 4)
    u = next(i for i, d in enumerate(digs) if d)
    k0 = digs[u]
    k1 = digs[u + 1]
    if s <= k0:
        return s * u
    if s <= k0 + k1:
        return k0 * u + (s - k0) * (u + 1)
    # one-step jump at s = k0 + k1 + 1, then steps of u+1
    base = k0 * u + k1 * (u + 1) + (u + 2)
    return base + (s - (k0 + k1 + 1)) * (u + 1)


def leading_digit_data(a: int, v0: Rational, p: int):
    """(u, k0, k1): first nonzero digit position of a/v0 and the two digits."""
    digs = _digits(a, v0, p, 2 * p + 8)
    u = next(i for i, d in enumerate(digs) if d)
    return u, digs[u], digs[u + 1]


def mas_monotonicity_ok(a: int, v0: Rational, p: int) -> bool:
    """The step structure of s -> M(a, s): nondecreasing with steps u, u+1,
    u+2, u+1 across the digit regimes, hence strictly increasing exactly where
    the step is positive (everywhere when u >= 1; past s = k0 when u = 0)."""
    seq = [M_as(a, s, v0, p) for s in range(0, p)]
    if any(seq[i] > seq[i + 1] for i in range(p - 1)):
        return False
    u, k0, _ = leading_digit_data(a, v0, p)
    start = 0 if u >= 1 else min(k0, p - 1)
    return all(seq[i] < seq[i + 1] for i in range(start, p - 1))


def M_as_oracle(a: int, s: int, v0: Rational, p: int):
    """Independent minimum over the defining relations: m = s0*j + s1*(j+1)
    with s0 >= 1, s0 + s1 >= s and a/v0 >= s0/p^j + s1/p^(j+1)."""
    if s == 0:
        return 0
    if a == 0:
        return INFINITY
    ratio = Fraction(a) / v0
    best = None
    j = 0
    while True:
        # cost = s0*j + s1*(j+1) >= (s0+s1)*j >= s*j, so stop once s*j passes best
        if best is not None and j >= 1 and s * j > best:
            return best
        s0 = 1
        while Fraction(s0, p ** j) <= ratio:
            s1 = max(0, s - s0)
            if Fraction(s0, p ** j) + Fraction(s1, p ** (j + 1)) <= ratio:
                cost = s0 * j + s1 * (j + 1)
                if best is None or cost < best:
                    best = cost
            s0 += 1
        j += 1
        if j > 10000:
            raise AssertionError("oracle failed to converge")


def M_bar(a_vec, j: int, v0: Rational, p: int) -> int:
    """Composite-monomial bound: minimal m with p^m [D_{a n}] in L(r + j),
    from the summed leading digits of the a_i."""
    r = len(a_vec)
    if not 1 <= r < p:
        raise ValueError("need 1 <= r < p")
    if j == 0:
        return 0
    if all(a == 0 for a in a_vec):
        raise ValueError("all-zero index vector has no relations")
    digs = [_digits(a, v0, p, j + p + 4) for a in a_vec]
    u = next(i for i in range(j + p + 4) if any(d[i] for d in digs))
    k0 = sum(d[u] for d in digs)
    k1 = sum(d[u + 1] for d in digs)
    if j <= min(p - r, k0):
        return j * u
    if k0 < j <= k0 + min(p - (r + k0), k1):
        return u * k0 + (u + 1) * (j - k0)
    if k0 + k1 < j <= p - r:
        return k0 * u + k1 * (u + 1) + 1 + (j - k0 - k1) * (u + 1)
    raise ValueError(f"j={j} outside the regimes of the composite bound for r={r}")


# -- weight-ideal spans ------------------------------------------------------


def _max_s(a: int, m: int, v0: Rational, p: int) -> int:
    """Largest s in [0, p-1] with U(s, m) * v0 <= a (s = 0 always qualifies)."""
    s = 0
    while s < p - 1 and U(s + 1, m, p) * v0 <= a:
        s += 1
    return s


def _monomials(algebra: FreeAlgebra, max_len: int):
    """All left-nested bracket monomials (as generator tuples) of length <= max_len."""
    gens = algebra.gens
    stack = [(g,) for g in gens]
    while stack:
        tup = stack.pop()
        yield tup
        if len(tup) < max_len:
            stack.extend(tup + (g,) for g in gens)


def _min_qualifying_m(a_vec, w: int, params: GlobalParams) -> int | None:
    """Least m < M admitting a splitting m = sum m_i with r + sum s_i >= w and
    a_i >= U(s_i, m_i) v0; None if no m < M qualifies."""
    p, v0, M = params.p, params.v0, params.M
    r = len(a_vec)
    need = w - r
    if need <= 0:
        return 0
    # best[t] = max total s over splittings of t across the letters so far
    best = [0] + [-1] * (M - 1)
    for a in a_vec:
        per = [_max_s(a, mm, v0, p) for mm in range(M)]
        nxt = [-1] * M
        for t in range(M):
            if best[t] < 0:
                continue
            for mm in range(M - t):
                cand = best[t] + per[mm]
                if cand > nxt[t + mm]:
                    nxt[t + mm] = cand
        best = nxt
    running = -1
    for m in range(M):
        running = max(running, best[m])
        if running >= need:
            return m
    return None


def build_Lw(w: int, params: GlobalParams, algebra: FreeAlgebra) -> IdealSpan:
    """The ideal L(w) over the truncated alphabet: the W_M(k)-span of all
    qualifying p^m [D_{a n}] (already sigma-stable and bracket-closed)."""
    if not 1 <= w <= params.p:
        raise ValueError("need 1 <= w <= p")
    gens = []
    for tup in _monomials(algebra, params.p - 1):
        a_vec = [g.a for g in tup]
        m = _min_qualifying_m(a_vec, w, params)
        if m is None:
            continue
        mono = left_nested(algebra, [lie_gen(algebra, g) for g in tup])
        if mono:
            gens.append(mono * (params.p ** m))
    basis = module_span(algebra, gens)
    return IdealSpan(algebra, basis, meta=f"L({w})")


def build_Lp(params: GlobalParams, algebra: FreeAlgebra) -> IdealSpan:
    return build_Lw(params.p, params, algebra)


def build_LNw(w: int, params: GlobalParams, algebra: FreeAlgebra) -> SpanBasis:
    """The submodule L_N(w): spanned by p^m [D_{a n}] with |a| >= v0 U(w-1, m)."""
    if not 1 <= w <= params.p:
        raise ValueError("need 1 <= w <= p")
    p, v0, M = params.p, params.v0, params.M
    gens = []
    for tup in _monomials(algebra, params.p - 1):
        total = sum(g.a for g in tup)
        m_min = None
        for m in range(M):
            if total >= v0 * U(w - 1, m, p):
                m_min = m
                break
        if m_min is None:
            continue
        mono = left_nested(algebra, [lie_gen(algebra, g) for g in tup])
        if mono:
            gens.append(mono * (p ** m_min))
    return module_span(algebra, gens)


def lemma_splitting_witness(a1_sum: int, a2_sum: int, w: int, m: int, params: GlobalParams):
    """Search m = m1 + m2, w = w1 + w2 with |a_i| >= v0 U(w_i - 1, m_i); returns
    a witness tuple or None.  Used to check the commutator-splitting lemma."""
    p, v0 = params.p, params.v0
    for w1 in range(1, w):
        w2 = w - w1
        for m1 in range(m + 1):
            m2 = m - m1
            if a1_sum >= v0 * U(w1 - 1, m1, p) and a2_sum >= v0 * U(w2 - 1, m2, p):
                return (w1, w2, m1, m2)
    return None
