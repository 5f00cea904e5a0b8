"""Linear algebra over Z/p^M: Howell normal form, membership, span equality.

Submodules of (Z/p^M)^n are stored by their Howell basis, which is canonical:
two submodules are equal iff the bases are identical.  Pivots are normalised
to powers of p, pivot columns strictly increase, entries above a pivot p^e are
reduced into [0, p^e), and the row set is saturated so that p^(M-e) times a
pivot row is again spanned by later rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def _val(x: int, p: int, M: int) -> int:
    """p-adic valuation of x mod p^M, with val(0) = M."""
    if x == 0:
        return M
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class SpanBasis:
    """Canonical Howell basis of a submodule of (Z/modulus)^ambient_dim."""

    modulus: int
    p: int
    M: int
    ambient_dim: int
    rows: tuple = field(default_factory=tuple)

    @property
    def pivots(self):
        out = []
        for r in self.rows:
            c = next(i for i, x in enumerate(r) if x)
            out.append((c, _val(r[c], self.p, self.M)))
        return out

    def to_json(self):
        return {
            "modulus": self.modulus,
            "ambient_dim": self.ambient_dim,
            "rows": [list(r) for r in self.rows],
        }


def howellize(rows, modulus: int, ambient_dim: int, p: int, M: int) -> SpanBasis:
    """Canonical Howell form of the Z/p^M-span of the given rows."""
    assert modulus == p ** M
    pivot_rows = {}  # column -> normalised row (list)
    work = [[x % modulus for x in r] for r in rows]
    for r in work:
        if len(r) != ambient_dim:
            raise ValueError("row length does not match ambient dimension")

    def normalise(row, col):
        # scale so the leading entry becomes p^val exactly
        v = _val(row[col], p, M)
        unit = row[col] // (p ** v)
        inv = pow(unit, -1, modulus)
        return [(x * inv) % modulus for x in row], v

    while work:
        row = work.pop()
        col = 0
        while col < ambient_dim:
            x = row[col]
            if x == 0:
                col += 1
                continue
            if col not in pivot_rows:
                row, v = normalise(row, col)
                pivot_rows[col] = row
                if v > 0:
                    # Howell saturation: the annihilator shadow must be spanned too
                    shadow = [(p ** (M - v) * y) % modulus for y in row]
                    if any(shadow):
                        work.append(shadow)
                break
            piv = pivot_rows[col]
            pv = _val(piv[col], p, M)
            xv = _val(x, p, M)
            if xv < pv:
                # the incoming row is a better pivot; displace the old one
                row, v = normalise(row, col)
                pivot_rows[col] = row
                work.append(piv)
                if v > 0:
                    shadow = [(p ** (M - v) * y) % modulus for y in row]
                    if any(shadow):
                        work.append(shadow)
                break
            mult = x // (p ** pv)
            row = [(a - mult * b) % modulus for a, b in zip(row, piv)]
            # leading entry is now zero; continue to the right

    cols = sorted(pivot_rows)
    # reduce entries above each pivot into [0, pivot)
    for i, ci in enumerate(cols):
        ri = pivot_rows[ci]
        step = ri[ci]  # p^e
        for cj in cols[:i]:
            rj = pivot_rows[cj]
            if rj[ci]:
                mult = rj[ci] // step
                if mult:
                    pivot_rows[cj] = [(a - mult * b) % modulus for a, b in zip(rj, ri)]
    return SpanBasis(
        modulus=modulus,
        p=p,
        M=M,
        ambient_dim=ambient_dim,
        rows=tuple(tuple(pivot_rows[c]) for c in cols),
    )


def reduce_vector(basis: SpanBasis, v) -> tuple:
    """Canonical representative of v modulo the span (pivot-wise reduction)."""
    if len(v) != basis.ambient_dim:
        raise ValueError("vector length does not match ambient dimension")
    m = basis.modulus
    v = [x % m for x in v]
    for row in basis.rows:
        c = next(i for i, x in enumerate(row) if x)
        if v[c]:
            mult = v[c] // row[c]
            if mult:
                v = [(a - mult * b) % m for a, b in zip(v, row)]
    return tuple(v)


def contains(basis: SpanBasis, v) -> bool:
    return not any(reduce_vector(basis, v))


def span_equal(a: SpanBasis, b: SpanBasis) -> bool:
    if a.ambient_dim != b.ambient_dim or a.modulus != b.modulus:
        raise ValueError("spans live in different ambient modules")
    return a.rows == b.rows
