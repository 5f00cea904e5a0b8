"""Arithmetic in the Galois ring GR(p^M, N0) = W_M(F_{p^N0}).

The ring is (Z/p^M)[x]/(h(x)) for a monic lift h of an irreducible degree-N0
polynomial over F_p; by default h is the Conway polynomial lifted coefficient
wise, which makes all emitted constants reproducible.  The Frobenius sigma is
the unique ring automorphism reducing to c -> c^p on the residue field; it is
obtained by Hensel-lifting the residue Frobenius and cached as tables
sigma^k(x^i).

truncated_exp / truncated_log are the degree-truncated series used with the
nilpotent algebras downstream; they are generic in any associative algebra
whose elements support +, -, * and integer scaling, nilpotency of degree at
most p being supplied structurally by the caller.
"""

from __future__ import annotations

from math import gcd

from .params import is_prime

# Conway polynomials for F_{p^n}: lower coefficients in ascending order,
# the leading 1 implicit.
_CONWAY = {
    (3, 1): (1,),
    (3, 2): (2, 2),
    (3, 3): (1, 2, 0),
    (3, 4): (2, 0, 0, 2),
    (5, 1): (3,),
    (5, 2): (2, 4),
    (5, 3): (3, 3, 0),
    (5, 4): (2, 4, 4, 0),
    (7, 1): (4,),
    (7, 2): (3, 6),
    (7, 3): (4, 0, 6),
    (7, 4): (3, 4, 5, 0),
}


def conway_poly(p: int, n: int) -> tuple:
    try:
        return _CONWAY[(p, n)]
    except KeyError:
        raise ValueError(
            f"no Conway polynomial on record for p={p}, n={n}; pass modulus_poly explicitly"
        )


def _trim(f, p):
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def _polydivmod_fp(f, g, p):
    """Quotient and remainder in F_p[x]; g nonzero with unit leading coefficient."""
    f = [c % p for c in f]
    q = [0] * max(1, len(f) - len(g) + 1)
    inv_lead = pow(g[-1], -1, p)
    while True:
        f = _trim(f, p)
        if len(f) < len(g):
            break
        c = f[-1] * inv_lead % p
        shift = len(f) - len(g)
        q[shift] = c
        for i, gi in enumerate(g):
            f[i + shift] = (f[i + shift] - c * gi) % p
    return q, f


def _poly_mul_mod(a, b, p, h_low):
    """Product in F_p[x]/(h) with h monic, lower coefficients h_low."""
    n = len(h_low)
    prod = [0] * (2 * n - 1 if n > 1 else 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for i in range(len(prod) - 1, n - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(n):
                prod[i - n + j] = (prod[i - n + j] - c * h_low[j]) % p
    prod = prod[:n]
    return prod + [0] * (n - len(prod))


def _is_irreducible_mod_p(h_low, p):
    """Rabin test: x^(p^n) = x mod h, and x^(p^(n/q)) != x for prime divisors q of n."""
    n = len(h_low)
    if n == 1:
        return True
    x = [0, 1] + [0] * (n - 2)

    def frob_iterate(times):
        cur = list(x)
        for _ in range(times):
            acc = [1] + [0] * (n - 1)
            sq, e = cur, p
            while e:
                if e & 1:
                    acc = _poly_mul_mod(acc, sq, p, h_low)
                e >>= 1
                if e:
                    sq = _poly_mul_mod(sq, sq, p, h_low)
            cur = acc
        return cur

    if frob_iterate(n) != x:
        return False
    for q in range(2, n + 1):
        if is_prime(q) and n % q == 0:
            if frob_iterate(n // q) == x:
                return False
    return True


class GRElem:
    """Element of GR(p^M, N0) in power-basis coordinates (immutable)."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = tuple(c % ctx.modulus for c in coeffs)

    def __add__(self, other):
        return GRElem(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return GRElem(self.ctx, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return GRElem(self.ctx, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return GRElem(self.ctx, [a * other for a in self.coeffs])
        return self.ctx.mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, GRElem) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"GR{list(self.coeffs)}"

    def is_unit(self):
        return any(c % self.ctx.p for c in self.coeffs)

    def inv(self):
        return self.ctx.inv(self)


class RingContext:
    """Immutable context for GR(p^M, N0) with Frobenius tables and alpha0."""

    def __init__(self, p: int, M: int, N0: int, modulus_poly=None):
        if not is_prime(p) or p < 3:
            raise ValueError("p must be an odd prime >= 3")
        if M < 1 or N0 < 1:
            raise ValueError("M and N0 must be >= 1")
        self.p, self.M, self.N0 = p, M, N0
        self.modulus = p ** M
        if modulus_poly is None:
            h_low = [c % self.modulus for c in conway_poly(p, N0)]
        else:
            poly = [c % self.modulus for c in modulus_poly]
            if len(poly) == N0 + 1:
                if poly[-1] != 1:
                    raise ValueError("modulus polynomial must be monic")
                poly = poly[:-1]
            if len(poly) != N0:
                raise ValueError("modulus polynomial must have degree N0")
            h_low = poly
        if not _is_irreducible_mod_p([c % p for c in h_low], p):
            raise ValueError("modulus polynomial is not irreducible mod p")
        self.h_low = tuple(h_low)
        self.zero = GRElem(self, [0] * N0)
        self.one = GRElem(self, [1] + [0] * (N0 - 1))
        self._frob_tables = self._build_frobenius_tables()
        self.alpha0 = self._trace_one_element()

    # -- multiplication ----------------------------------------------------

    def mul(self, a: GRElem, b: GRElem) -> GRElem:
        n, m = self.N0, self.modulus
        if n == 1:
            return GRElem(self, [a.coeffs[0] * b.coeffs[0]])
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, bj in enumerate(b.coeffs):
                    prod[i + j] += ai * bj
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i] % m
            if c:
                prod[i] = 0
                for j in range(n):
                    prod[i - n + j] = (prod[i - n + j] - c * self.h_low[j]) % m
        return GRElem(self, prod[:n])

    def from_int(self, c: int) -> GRElem:
        return GRElem(self, [c] + [0] * (self.N0 - 1))

    def from_coeffs(self, coeffs) -> GRElem:
        if len(coeffs) != self.N0:
            raise ValueError("coordinate length must be N0")
        return GRElem(self, coeffs)

    def basis_elem(self, j: int) -> GRElem:
        """x^j for 0 <= j < N0 (the flattening basis)."""
        coeffs = [0] * self.N0
        coeffs[j] = 1
        return GRElem(self, coeffs)

    def pow(self, a: GRElem, e: int) -> GRElem:
        acc, sq = self.one, a
        while e:
            if e & 1:
                acc = self.mul(acc, sq)
            e >>= 1
            if e:
                sq = self.mul(sq, sq)
        return acc

    def inv(self, a: GRElem) -> GRElem:
        """Inverse of a unit: residue-field inverse, then Newton lifting."""
        if not a.is_unit():
            raise ZeroDivisionError("not a unit in GR(p^M, N0)")
        v = self._inv_mod_p(a)
        prec = 1
        while prec < self.M:
            v = self.mul(v, self.from_int(2) - self.mul(a, v))
            prec *= 2
        return v

    def _inv_mod_p(self, a: GRElem) -> GRElem:
        p = self.p
        r0 = [c % p for c in self.h_low] + [1]
        r1 = _trim(a.coeffs, p)
        s0, s1 = [0], [1]
        while r1:
            q, r = _polydivmod_fp(r0, r1, p)
            s = list(s0) + [0] * max(0, len(q) + len(s1) - 1 - len(s0))
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        s[i + j] = (s[i + j] - qi * sj) % p
            r0, r1 = r1, r
            s0, s1 = s1, _trim(s, p)
        c_inv = pow(r0[0], -1, p)
        out = [(c * c_inv) % p for c in s0]
        out += [0] * (self.N0 - len(out))
        return GRElem(self, out[: self.N0])

    # -- Frobenius ---------------------------------------------------------

    def _build_frobenius_tables(self):
        n = self.N0
        identity = [self._basis_tuple(i) for i in range(n)]
        if n == 1:
            return [identity]
        # residue Frobenius root: x^p mod (p, h), then Hensel-lift to mod p^M
        x = GRElem(self, [0, 1] + [0] * (n - 2))
        r = self.pow(x, self.p)
        r = GRElem(self, [c % self.p for c in r.coeffs])
        prec = 1
        while prec < self.M:
            r = r - self.mul(self._eval_h(r), self.inv(self._eval_h_prime(r)))
            prec *= 2
        if self._eval_h(r):
            raise ArithmeticError("Hensel lifting of the Frobenius root failed")
        tables = [identity]
        imgs = [self.one]
        for _ in range(1, n):
            imgs.append(self.mul(imgs[-1], r))
        tables.append([tuple(e.coeffs) for e in imgs])
        for _ in range(2, n):
            prev = tables[-1]
            tables.append([tuple(self._apply_table(tables[1], prev[i]).coeffs) for i in range(n)])
        closure = [tuple(self._apply_table(tables[1], tables[n - 1][i]).coeffs) for i in range(n)]
        if closure != identity:
            raise ArithmeticError("Frobenius does not have order N0; broken modulus")
        return tables

    def _apply_table(self, table, coeffs) -> GRElem:
        acc = self.zero
        for j, cj in enumerate(coeffs):
            if cj:
                acc = acc + GRElem(self, table[j]) * cj
        return acc

    def _basis_tuple(self, i):
        t = [0] * self.N0
        t[i] = 1
        return tuple(t)

    def _eval_h(self, r: GRElem) -> GRElem:
        acc, out = self.one, self.zero
        for c in self.h_low:
            if c:
                out = out + acc * c
            acc = self.mul(acc, r)
        return out + acc

    def _eval_h_prime(self, r: GRElem) -> GRElem:
        powers = [self.one]
        for _ in range(1, self.N0):
            powers.append(self.mul(powers[-1], r))
        out = self.zero
        for i in range(1, self.N0):
            if self.h_low[i]:
                out = out + powers[i - 1] * (i * self.h_low[i])
        return out + powers[self.N0 - 1] * self.N0

    def frobenius(self, a: GRElem, power: int = 1) -> GRElem:
        k = power % self.N0
        if k == 0:
            return a
        return self._apply_table(self._frob_tables[k], a.coeffs)

    def trace(self, a: GRElem) -> int:
        acc = self.zero
        for k in range(self.N0):
            acc = acc + self.frobenius(a, k)
        if any(acc.coeffs[1:]):
            raise ArithmeticError("trace did not land in the prime subring")
        return acc.coeffs[0]

    # -- alpha0 ------------------------------------------------------------

    def _trace_one_element(self) -> GRElem:
        """Lexicographically smallest coordinate vector with absolute trace 1."""
        m = self.modulus
        t = [self.trace(GRElem(self, self._basis_tuple(i))) for i in range(self.N0)]

        def tail_gcd(idx):
            g = m
            for ti in t[idx:]:
                g = gcd(g, ti)
            return gcd(g, m)

        if 1 % tail_gcd(0) != 0:
            raise ArithmeticError("trace map is not surjective; broken modulus")
        coords, rhs = [], 1
        for i in range(self.N0):
            g = tail_gcd(i + 1)
            for c in range(m):
                if (rhs - c * t[i]) % g == 0:
                    coords.append(c)
                    rhs = (rhs - c * t[i]) % m
                    break
        if rhs != 0:
            raise ArithmeticError("no trace-one element found")
        alpha = GRElem(self, coords)
        assert self.trace(alpha) == 1
        return alpha

    def __repr__(self):
        return f"RingContext(p={self.p}, M={self.M}, N0={self.N0}, h_low={list(self.h_low)})"


def frobenius(x: GRElem, power: int = 1) -> GRElem:
    return x.ctx.frobenius(x, power)


def trace_one_element(ctx: RingContext) -> GRElem:
    return ctx.alpha0


def truncated_exp(x, p: int, modulus: int):
    """Sum_{0<=i<p} x^i / i! in the ambient algebra of x (x structurally nilpotent)."""
    one = x.algebra_one()
    acc, term = one, one
    for i in range(1, p):
        term = (term * x) * pow(i, -1, modulus)
        acc = acc + term
    return acc


def truncated_log(y, p: int, modulus: int):
    """Sum_{1<=i<p} (-1)^(i+1) (y-1)^i / i, inverse of truncated_exp on 1+nilpotents."""
    u = y - y.algebra_one()
    acc = u * 0
    power = y.algebra_one()
    for i in range(1, p):
        power = power * u
        c = pow(i, -1, modulus)
        acc = acc + power * (c if i % 2 else -c)
    return acc
