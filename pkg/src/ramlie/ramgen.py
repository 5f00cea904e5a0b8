"""Explicit generators of the ramification ideal and the ideal itself.

F0(gamma, N) is the weighted sum of iterated commutators
a_1 p^(n_1) eta(a, n) [...[D_{a_1 n_1}, D_{a_2 n_2}], ..., D_{a_s n_s}]
over tuples with n_1 >= 0, n_i >= -N and sum a_i p^(n_i) = gamma; letters with
a = 0 stand for sigma^n(alpha0) D_0, letter subscripts are taken mod N0 while
the weight gamma and the eta constants see the integer n_i.

fbar_direct is the independent closed form for the same elements attached to
a ch = 1 exponent: a word sum over non-negative time vectors weighted by
p^A eta_dual(prefix) eta(suffix) gamma*(window), where gamma* collects the
a_u sitting at the maximal time level.  The two routes are tied together by
the sigma-twist identity checked in check_prop47.

The ramification ideal is emitted in two provably equal ways: from the ch = 1
admissible exponents with their canonical depth choices, and from all
realisable weights gamma >= v0 at the fixed depth N* - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .admissible import AdmissibleExponent, Eq41Data, ParamSelection, ch1_subset, eq41_data, filter_Aplus
from .etaconst import EtaTable
from .freeassoc import AssocElement, FreeAlgebra, Gen
from .nilpotentlie import (
    IdealSpan,
    LieElement,
    bracket,
    d0n,
    from_assoc,
    ideal_closure,
    lie_gen,
    lie_zero,
    quotient_map,
    sigma,
)
from .params import GlobalParams, Rational, vp


@dataclass(frozen=True)
class GeneratorSpec:
    gamma: Rational
    N: int
    iota: int | None = None


@dataclass(frozen=True)
class RamificationIdeal:
    span: IdealSpan
    generators: tuple  # (GeneratorSpec, LieElement reduced mod the weight-p ideal)


def _letter(algebra: FreeAlgebra, a: int, n: int) -> LieElement:
    if a == 0:
        return d0n(n, algebra)
    return lie_gen(algebra, Gen(a, n % algebra.ring.N0))


def _f0_tuples(gamma: Rational, N: int, params: GlobalParams):
    """All (a, n) tuples with s < p, n_1 in [0, M), n non-increasing with
    n_i >= -N, a_i in the truncated alphabet, and weight exactly gamma.
    Degenerate a_i = 0 letters carry no weight but keep their time index."""
    p, M = params.p, params.M
    avals = [0] + [a for a in range(1, params.a_max + 1) if a % p and a <= params.a_max]
    lowest = -N

    def rec(prefix, remaining, last_n):
        s = len(prefix)
        if s >= 1 and remaining == 0:
            yield tuple(prefix)
        if s == p - 1:
            return
        # bound: future positive letters sit at levels <= last_n
        if remaining > 0 and remaining > (p - 1 - s) * params.a_max * Fraction(p) ** last_n:
            return
        for n in range(last_n, lowest - 1, -1):
            pw = Fraction(p) ** n
            for a in avals:
                contrib = a * pw
                if contrib > remaining:
                    break
                yield from rec(prefix + [(a, n)], remaining - contrib, n)

    for n1 in range(max(0, lowest), M):
        pw = Fraction(p) ** n1
        for a1 in avals:
            if a1 == 0:
                continue  # zero leading coefficient kills the term
            contrib = a1 * pw
            if contrib > gamma:
                break
            yield from rec([(a1, n1)], gamma - contrib, n1)


def F0(gamma: Rational, N: int, table: EtaTable, algebra: FreeAlgebra, params: GlobalParams) -> LieElement:
    """The explicit commutator sum at weight gamma and depth N (0 if empty)."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    ring = algebra.ring
    out = lie_zero(algebra)
    for tup in _f0_tuples(gamma, N, params):
        a_vec = [a for a, _ in tup]
        n_vec = [n for _, n in tup]
        coeff = table.eta_n(a_vec, n_vec)
        if not coeff:
            continue
        coeff = coeff * (a_vec[0] * params.p ** n_vec[0])
        if not coeff:
            continue
        letters = [_letter(algebra, a, n) for a, n in tup]
        acc = letters[0]
        for nxt in letters[1:]:
            acc = bracket(acc, nxt)
        out = out + acc * coeff
    return out


def _fbar_tuples(target: int, n_max: int, params: GlobalParams):
    """All (a, n) tuples with s < p, 0 <= n_i <= n_max and weight = target,
    in any order (no monotonicity)."""
    p = params.p
    avals = [0] + [a for a in range(1, params.a_max + 1) if a % p]
    powers = [p ** n for n in range(n_max + 1)]

    def rec(prefix, remaining):
        s = len(prefix)
        if s >= 1 and remaining == 0:
            yield tuple(prefix)
        if s == p - 1:
            return
        if remaining > (p - 1 - s) * params.a_max * powers[-1]:
            return
        for n in range(n_max + 1):
            for a in avals:
                contrib = a * powers[n]
                if contrib > remaining:
                    break
                yield from rec(prefix + [(a, n)], remaining - contrib)

    yield from rec([], target)


def fbar_direct(
    ae: AdmissibleExponent,
    data: Eq41Data,
    table: EtaTable,
    algebra: FreeAlgebra,
    params: GlobalParams,
) -> AssocElement:
    """Word-sum form of the generator attached to a ch = 1 exponent."""
    if ae.ch != 1:
        raise ValueError("requires a ch = 1 exponent")
    ring = algebra.ring
    p, M = params.p, params.M
    target = ae.P_alpha  # = p^M_iota * gamma(iota)
    n_max = data.M_iota + M - 1
    out = algebra.zero()
    if n_max < 0:
        return out
    for tup in _fbar_tuples(target, n_max, params):
        a_vec = [a for a, _ in tup]
        n_vec = [n for _, n in tup]
        top = max(n_vec)
        A = top - data.M_iota
        if A < 0 or A >= M:
            continue
        s = len(tup)
        # gamma* over suffix windows: sum of a_u at the maximal time level
        coeff_total = ring.zero
        for s1 in range(1, s + 1):
            gstar = sum(a_vec[u] for u in range(s1 - 1, s) if n_vec[u] == top)
            if gstar == 0:
                continue
            c = table.eta_dual(a_vec[: s1 - 1], n_vec[: s1 - 1])
            if not c:
                continue
            c = c * table.eta_n(a_vec[s1 - 1 :], n_vec[s1 - 1 :])
            if not c:
                continue
            coeff_total = coeff_total + c * gstar
        if not coeff_total:
            continue
        coeff_total = coeff_total * p ** A
        if not coeff_total:
            continue
        # build the word, folding a = 0 letters into alpha0 multiples of D_0
        word = []
        scalar = ring.one
        for a, n in tup:
            if a == 0:
                scalar = scalar * ring.frobenius(ring.alpha0, n % ring.N0)
                word.append(algebra.index[Gen(0, 0)])
            else:
                word.append(algebra.index[Gen(a, n % ring.N0)])
        out = out + algebra.term(tuple(word), coeff_total * scalar)
    return out


def scaled_exponent(ae: AdmissibleExponent, n: int, params: GlobalParams) -> AdmissibleExponent:
    """The exponent iota * p^n with its invariants scaled accordingly."""
    return AdmissibleExponent(
        iota=ae.iota * params.p ** n,
        P_alpha=ae.P_alpha * params.p ** n,
        P_beta=ae.P_beta * params.p ** n,
        m=ae.m + n,
        ch=ae.ch,
        kappa=ae.kappa,
    )


def check_prop47(
    ae: AdmissibleExponent,
    n: int,
    table: EtaTable,
    algebra: FreeAlgebra,
    params: GlobalParams,
    sel: ParamSelection,
    weight_p_span,
) -> bool:
    """The word-sum route for iota p^n equals the sigma-twisted commutator sum
    at depth M_iota + n, compared modulo the weight-p ideal."""
    data = eq41_data(ae, params, sel)
    scaled = scaled_exponent(ae, n, params)
    sdata = eq41_data(scaled, params, sel)
    assert sdata.gamma == data.gamma and sdata.M_iota == data.M_iota + n
    lhs_assoc = fbar_direct(scaled, sdata, table, algebra, params)
    lhs = from_assoc(lhs_assoc)  # raises if not Lie
    depth = data.M_iota + n
    rhs = sigma(F0(data.gamma, depth, table, algebra, params), depth)
    return not any(quotient_map(lhs - rhs, weight_p_span))


def emit_generators(
    exponents,
    table: EtaTable,
    algebra: FreeAlgebra,
    params: GlobalParams,
    sel: ParamSelection,
    m_choice: dict | None = None,
):
    """The Theorem-style generator list: one commutator sum per ch = 1
    positive primitive exponent, at depth M_iota + m_iota (overridable)."""
    out = []
    for ae in ch1_subset(filter_Aplus(exponents, params)):
        data = eq41_data(ae, params, sel)
        m_iota = data.m_iota if not m_choice else m_choice.get(ae.iota, data.m_iota)
        if m_iota < data.m_iota:
            raise ValueError(f"m choice for iota={ae.iota} is below the minimum {data.m_iota}")
        N = data.M_iota + m_iota
        elem = F0(data.gamma, N, table, algebra, params)
        out.append((GeneratorSpec(gamma=data.gamma, N=N, iota=ae.iota), elem))
    return out


def emit_thm_main(
    exponents,
    table: EtaTable,
    algebra: FreeAlgebra,
    params: GlobalParams,
    sel: ParamSelection,
    weight_p_ideal: IdealSpan,
    m_choice: dict | None = None,
) -> RamificationIdeal:
    """Minimal sigma-stable ideal containing the per-exponent generators,
    taken inside the quotient by the weight-p ideal (its rows are included)."""
    gens = emit_generators(exponents, table, algebra, params, sel, m_choice)
    span = ideal_closure(
        algebra,
        [g for _, g in gens],
        sigma_stable=True,
        extra_rows=weight_p_ideal.basis.rows,
        meta="ramification ideal (per-exponent generators)",
    )
    reduced = tuple(
        (spec, weight_p_ideal.reduce_elem(elem)) for spec, elem in gens
    )
    return RamificationIdeal(span=span, generators=reduced)


def realizable_gammas(N: int, params: GlobalParams):
    """All weights gamma = sum a_i p^(n_i) >= v0 realisable by tuples with
    n_1 in [0, M), n_i >= -N over the truncated alphabet (finite, sorted)."""
    seen = set()
    p, M = params.p, params.M
    avals = [a for a in range(1, params.a_max + 1) if a % p]

    def rec(total, last_n, length):
        if length >= 1:
            seen.add(total)
        if length == p - 1:
            return
        for n in range(last_n, -N - 1, -1):
            pw = Fraction(p) ** n
            for a in avals:
                rec(total + a * pw, n, length + 1)

    for n1 in range(0, M):
        pw = Fraction(p) ** n1
        for a1 in avals:
            rec(a1 * pw, n1, 1)
    return sorted(g for g in seen if g >= params.v0)


def emit_thm_sweep(
    table: EtaTable,
    algebra: FreeAlgebra,
    params: GlobalParams,
    sel: ParamSelection,
    weight_p_ideal: IdealSpan,
) -> RamificationIdeal:
    """The cross-check emission: all realisable weights >= v0 at depth N* - 1."""
    N = sel.N_star - 1
    gens = []
    for gamma in realizable_gammas(N, params):
        elem = F0(gamma, N, table, algebra, params)
        if elem:
            gens.append((GeneratorSpec(gamma=gamma, N=N), elem))
    span = ideal_closure(
        algebra,
        [g for _, g in gens],
        sigma_stable=True,
        extra_rows=weight_p_ideal.basis.rows,
        meta="ramification ideal (weight sweep)",
    )
    reduced = tuple((spec, weight_p_ideal.reduce_elem(elem)) for spec, elem in gens)
    return RamificationIdeal(span=span, generators=reduced)
