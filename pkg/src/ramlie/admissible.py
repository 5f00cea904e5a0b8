"""Parameter selection and the admissible exponent sets.

An admissible exponent is an integer iota = q p^(M-1) P_alpha - b* P_beta
bounded by p^(M-1) b* (p-1), where P_alpha ranges over integers expressible
as short sums of terms a p^n (a below (p-1) v0, with a nonzero term at the
top level n = m) and P_beta over integers with base-p digit sum below p and a
nonzero digit at level >= m.  The pair (P_alpha, P_beta) is an invariant of
iota; ch(iota) is the digit sum of P_beta and kappa(iota) the least number of
terms needed for P_alpha.

delta0 is the gap between v0 and the nearest smaller value alpha/U(s, m);
r* = b0*/(q0*-1) is a rational approximation of v0 inside that gap, and N*
is grown until the enumerated exponent set satisfies the separation
inequality q|iota|/p^m > p^(M-1) b* (p-1) for every presentation with
nonzero beta (the a-posteriori form of the distance condition on the
parameter choice).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .filtration import U
from .params import GlobalParams, Rational, vp


@dataclass(frozen=True)
class ParamSelection:
    delta0: Rational
    N0_star: int
    b0_star: int
    r_star: Rational
    N_star: int
    q: int
    b_star: int

    def report(self, params: GlobalParams) -> dict:
        lo, hi = params.v0 - self.delta0, params.v0
        c3_val = self.r_star * (1 - Fraction(1, self.q))
        return {
            "delta0": str(self.delta0),
            "N0_star": self.N0_star,
            "b0_star": self.b0_star,
            "r_star": str(self.r_star),
            "N_star": self.N_star,
            "q": self.q,
            "b_star": self.b_star,
            "C1_Nstar_multiple_of_N0star": self.N_star % self.N0_star == 0,
            "C2_surrogate": "separation inequality verified on the enumerated exponent set",
            "C3_value": str(c3_val),
            "C3_holds": lo < c3_val < hi,
        }


@dataclass(frozen=True)
class AdmissibleExponent:
    iota: int
    P_alpha: int
    P_beta: int
    m: int  # smallest witnessing level
    ch: int
    kappa: int

    def vp(self, p: int) -> int:
        return vp(self.iota, p)


# -- term-count combinatorics ------------------------------------------------

_BIG = 10 ** 9


def min_terms(value: int, coeff_max: int, p: int, exp_cap: int) -> int:
    """Least number of terms a*p^n (1 <= a <= coeff_max, 0 <= n <= exp_cap)
    summing to value.  A term group at exponent n realises a digit c_n at cost
    ceil(c_n / coeff_max); for coeff_max <= p no down-borrow can lower the
    total (p borrowed units fill at least one fresh group), so the standard
    digits give the exact answer.  Larger coefficient caps fall back to a
    borrow DP."""
    if value == 0:
        return 0
    if coeff_max <= 0:
        return _BIG
    if coeff_max <= p:
        total = 0
        v = value
        for _ in range(exp_cap):
            d = v % p
            v //= p
            total += -(-d // coeff_max)
        return total + -(-v // coeff_max)
    return _min_terms_dp(value, coeff_max, p, exp_cap)


@lru_cache(maxsize=2 ** 18)
def _min_terms_dp(value: int, coeff_max: int, p: int, exp_cap: int) -> int:
    memo = {}

    def rec(level, rem):
        if rem == 0:
            return 0
        if level == exp_cap:
            return (rem + coeff_max - 1) // coeff_max
        key = (level, rem)
        cached = memo.get(key)
        if cached is not None:
            return cached
        best = _BIG
        c = rem % p
        while c <= rem:
            cost = (c + coeff_max - 1) // coeff_max
            if cost >= best:
                break
            sub = rec(level + 1, (rem - c) // p)
            if cost + sub < best:
                best = cost + sub
            c += p
        memo[key] = best
        return best

    return rec(0, value)


def _exp_cap_for(value: int, p: int) -> int:
    cap = 0
    while p ** (cap + 1) <= value:
        cap += 1
    return cap


def kappa(P_alpha: int, params: GlobalParams) -> int:
    """Least number of nonzero terms a p^n representing P_alpha (0 for 0)."""
    if P_alpha == 0:
        return 0
    return min_terms(P_alpha, params.coeff_max, params.p, _exp_cap_for(P_alpha, params.p))


def _alpha_valid_at(P: int, m: int, params: GlobalParams) -> bool:
    """P = p^m * alpha for an admissible alpha at level m: zero, or some
    presentation with a nonzero top term a1 p^m and at most u*-1 further
    terms at levels <= m."""
    if P == 0:
        return True
    p, amax, ustar = params.p, params.coeff_max, params.u_star
    top = p ** m
    for a1 in range(1, amax + 1):
        rest = P - a1 * top
        if rest < 0:
            break
        if min_terms(rest, amax, p, m) <= ustar - 1:
            return True
    return False


def _digit_sum(n: int, p: int) -> int:
    s = 0
    while n:
        s += n % p
        n //= p
    return s


def _beta_candidates(m: int, params: GlobalParams):
    """All P_beta = p^m beta / r* at level m: base-p digit sum in [1, p-1],
    all digits at levels <= m+M-1, some nonzero digit at level >= m."""
    p, M = params.p, params.M
    out = []
    max_exp = m + M - 1

    def rec(exp, acc, budget, has_high):
        if exp < 0:
            if acc and has_high:
                out.append(acc)
            return
        for d in range(0, budget + 1):
            rec(exp - 1, acc + d * p ** exp, budget - d, has_high or (d > 0 and exp >= m))

    rec(max_exp, 0, p - 1, False)
    return sorted(out)


def _alpha_candidates(m: int, bound: int, params: GlobalParams):
    """All admissible P_alpha at level m up to the bound."""
    return [P for P in range(max(bound, -1) + 1) if _alpha_valid_at(P, m, params)]


def delta0(params: GlobalParams) -> Rational:
    """Exact minimum of the positive gaps v0 - alpha/U(s, m) over 1 <= s < p,
    0 <= m < M and admissible alpha with at most u* terms at levels <= m."""
    p, M, v0 = params.p, params.M, params.v0
    best = None
    for m in range(M):
        # alpha in p^-m Z>=0; only alpha < v0 * U(s,m) <= v0 * (p-1) matters
        denom = p ** m
        max_p = math.ceil(v0 * (p - 1) * denom)
        reachable = [
            P for P in range(max_p + 1) if min_terms(P, params.coeff_max, p, m) <= params.u_star
        ]
        for s in range(1, p):
            u = U(s, m, p)
            for P in reachable:
                alpha = Fraction(P, denom)
                gap = v0 - alpha / u
                if gap > 0 and (best is None or gap < best):
                    best = gap
    assert best is not None and best > 0
    return best


def choose_rstar(params: GlobalParams, d0: Rational):
    """Smallest-N0*, then smallest-b0* rational r* = b0*/(p^N0* - 1) inside
    (v0 - delta0, v0) with gcd(b0*, p(q0*-1)) = 1."""
    p = params.p
    lo, hi = params.v0 - d0, params.v0
    for n0s in range(2, 9):
        q0 = p ** n0s - 1
        b_lo = math.floor(lo * q0) + 1
        b_hi = math.ceil(hi * q0) - 1
        for b0 in range(max(1, b_lo), b_hi + 1):
            if gcd(b0, p * q0) != 1:
                continue
            r = Fraction(b0, q0)
            if lo < r < hi:
                return n0s, b0, r
    raise ArithmeticError("no valid r* below the N0* safety bound")


def _selection_for(params: GlobalParams, d0, n0s, b0, r, N_star) -> ParamSelection:
    q = params.p ** N_star
    b_star = b0 * (q - 1) // (params.p ** n0s - 1)
    return ParamSelection(
        delta0=d0, N0_star=n0s, b0_star=b0, r_star=r, N_star=N_star, q=q, b_star=b_star
    )


def iota_bound(params: GlobalParams, sel: ParamSelection) -> int:
    return params.p ** (params.M - 1) * sel.b_star * (params.p - 1)


def _scan_presentations(params: GlobalParams, sel: ParamSelection, m_top: int):
    """All (P_alpha, P_beta, m) with m <= m_top whose iota passes the bound.
    Per P_beta only a narrow window of P_alpha can survive the bound."""
    p, M = params.p, params.M
    b_star = sel.b_star
    bound = iota_bound(params, sel)
    qpm = sel.q * p ** (M - 1)
    hits = []
    for m in range(m_top + 1):
        pm = params.p ** m
        pa_cap = params.u_star * params.coeff_max * pm
        betas = [0] + _beta_candidates(m, params)
        for pb in betas:
            lo = max(0, -(-(b_star * pb - bound) // qpm))  # ceil division
            hi = (b_star * pb + bound) // qpm
            for pa in range(lo, hi + 1):
                if pa != 0 and not pm <= pa <= pa_cap:
                    continue
                if abs(qpm * pa - b_star * pb) <= bound and _alpha_valid_at(pa, m, params):
                    hits.append((pa, pb, m))
    return hits


def prop21a_holds(params: GlobalParams, sel: ParamSelection, pa: int, pb: int, m: int) -> bool:
    """Separation inequality q |q p^(M-1) alpha - (q-1) beta| > p^(M-1) b*(p-1),
    scaled to the integer presentation at level m."""
    p, M = params.p, params.M
    iota = sel.q * p ** (M - 1) * pa - sel.b_star * pb
    return sel.q * abs(iota) > p ** (m + M - 1) * sel.b_star * (p - 1)


def choose_Nstar(params: GlobalParams, d0, n0s, b0, r):
    """Smallest multiple of N0* passing the interval condition and the
    enumerated separation check.  The separation constant is governed by
    term-budget-limited approximation families, which can push N* to
    ~3 u* levels, hence the generous 14 N0* abort bound."""
    p, v0 = params.p, params.v0
    lo, hi = v0 - d0, v0
    for k in range(1, 15):
        N_star = n0s * k
        sel = _selection_for(params, d0, n0s, b0, r, N_star)
        c3 = r * (1 - Fraction(1, sel.q))
        if not lo < c3 < hi:
            continue
        # scan one level beyond N*-1: survivors at m = N* would violate finiteness
        hits = _scan_presentations(params, sel, N_star)
        ok = all(
            prop21a_holds(params, sel, pa, pb, m) for (pa, pb, m) in hits if pb != 0
        )
        if ok:
            assert not any(m >= N_star for (_, pb, m) in hits if pb != 0), (
                "separation passed yet a high-level survivor exists"
            )
            return sel
    raise ArithmeticError("no valid N* below the safety bound 14*N0*")


def select_parameters(params: GlobalParams) -> ParamSelection:
    d0 = delta0(params)
    n0s, b0, r = choose_rstar(params, d0)
    return choose_Nstar(params, d0, n0s, b0, r)


# -- the admissible sets -------------------------------------------------------


def enumerate_A0(params: GlobalParams, sel: ParamSelection):
    """The deduplicated admissible set, sorted by iota; dedup key is the
    invariant pair (P_alpha, P_beta) with the smallest witnessing level kept."""
    hits = _scan_presentations(params, sel, sel.N_star - 1)
    by_pair = {}
    for pa, pb, m in hits:
        key = (pa, pb)
        if key not in by_pair or m < by_pair[key]:
            by_pair[key] = m
    out = []
    for (pa, pb), m in sorted(by_pair.items()):
        iota = sel.q * params.p ** (params.M - 1) * pa - sel.b_star * pb
        ch = _digit_sum(pb, params.p)
        assert ch < params.p, "digit-sum invariant violated"
        out.append(
            AdmissibleExponent(iota=iota, P_alpha=pa, P_beta=pb, m=m, ch=ch, kappa=kappa(pa, params))
        )
    out.sort(key=lambda ae: (ae.iota, ae.P_alpha))
    assert len({ae.iota for ae in out}) == len(out), "iota does not determine the pair"
    return out


def filter_Aplus(exponents, params: GlobalParams):
    """The positive primitive part: iota > 0, not both invariants divisible by
    p, and kappa bounded by (p-2) ch + 1."""
    p = params.p
    out = []
    for ae in exponents:
        if ae.iota <= 0:
            continue
        if ae.P_alpha % p == 0 and ae.P_beta % p == 0:
            continue
        if ae.kappa > (p - 2) * ae.ch + 1:
            continue
        out.append(ae)
    return out


def ch1_subset(exponents):
    return [ae for ae in exponents if ae.ch == 1]


@dataclass(frozen=True)
class Eq41Data:
    gamma: Rational
    M_iota: int
    m_iota: int
    r_iota: int


def eq41_data(ae: AdmissibleExponent, params: GlobalParams, sel: ParamSelection) -> Eq41Data:
    """For ch = 1: iota = p^(M-1+M_iota) (q gamma - b*), with gamma = P_alpha
    p^(M-1-e) for P_beta = p^e; m_iota and r_iota bound the p-power shifts that
    stay admissible."""
    if ae.ch != 1:
        raise ValueError("eq41 data requires ch = 1")
    p, M = params.p, params.M
    e = vp(ae.P_beta, p)
    assert ae.P_beta == p ** e
    M_iota = e - (M - 1)
    gamma = Fraction(ae.P_alpha) * Fraction(p) ** (M - 1 - e)
    # reconstruction check
    assert ae.iota == p ** (M - 1 + M_iota) * (sel.q * gamma - sel.b_star)
    bound = iota_bound(params, sel)
    m_iota = 0
    while abs(ae.iota) * p ** (m_iota + 1) <= bound:
        m_iota += 1
    return Eq41Data(gamma=gamma, M_iota=M_iota, m_iota=m_iota, r_iota=m_iota)
