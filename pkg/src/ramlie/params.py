"""Global configuration, exact rational arithmetic and p-adic valuations.

Everything downstream works over Z/p^M with rational weight data, so this
module pins the exact-arithmetic conventions once: rationals are
fractions.Fraction (always lowest terms, positive denominator, arbitrary
precision), and no float ever enters the library.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

Rational = Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def vp(x, p: int) -> int:
    """p-adic valuation of a nonzero integer or Rational, normalised by vp(p)=1."""
    if x == 0:
        raise ValueError("vp(0) is undefined")
    if isinstance(x, int):
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v
    x = Fraction(x)
    return vp(x.numerator, p) - vp(x.denominator, p)


def parse_rational(text) -> Fraction:
    """Parse "num/den" or "num"; floats are rejected on purpose."""
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if isinstance(text, float):
        raise ValueError("rational values must be given as 'num/den' strings, not floats")
    s = str(text).strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


@dataclass(frozen=True)
class GlobalParams:
    """Shared configuration: p, coefficient period p^M, residue degree N0,
    the break candidate v0 and the generator-index truncation a_max."""

    p: int
    M: int
    N0: int
    v0: Rational
    a_max: int

    @property
    def modulus(self) -> int:
        return self.p ** self.M

    @property
    def w_star(self) -> Rational:
        return (self.p - 1) * self.v0

    @property
    def u_star(self) -> int:
        return (self.p - 1) * (self.p - 2) + 1

    @property
    def coeff_max(self) -> int:
        """Largest integer in [0, (p-1)*v0), the coefficient range of index sums."""
        return math.ceil(self.w_star) - 1

    def validate(self) -> list[str]:
        """Diagnostic list of violated invariants; empty means usable."""
        errs = []
        if not is_prime(self.p):
            errs.append(f"p={self.p} is not prime")
        if self.p < 3:
            errs.append(f"p must be >= 3 (got {self.p})")
        if self.M < 1:
            errs.append(f"M must be >= 1 (got {self.M})")
        if self.N0 < 1:
            errs.append(f"N0 must be >= 1 (got {self.N0})")
        if not isinstance(self.v0, Fraction) or self.v0 <= 0:
            errs.append(f"v0 must be a positive rational (got {self.v0!r})")
        else:
            need = math.ceil(self.w_star)
            if self.a_max < need:
                errs.append(
                    f"a_max={self.a_max} < ceil((p-1)*v0)={need}; quotient algebra would be truncated unfaithfully"
                )
        if self.u_star != (self.p - 1) * (self.p - 2) + 1:
            errs.append("u_star mismatch")  # unreachable; documents the derived invariant
        return errs


def params_from_dict(data: dict) -> GlobalParams:
    return GlobalParams(
        p=int(data["p"]),
        M=int(data["M"]),
        N0=int(data["N0"]),
        v0=parse_rational(data["v0"]),
        a_max=int(data["a_max"]),
    )


def load_config(path) -> dict:
    """Load a JSON or TOML config file into a plain dict."""
    path = Path(path)
    raw = path.read_bytes()
    if path.suffix.lower() == ".toml":
        try:
            import tomllib
        except ImportError:
            import tomli as tomllib
        return tomllib.loads(raw.decode("utf-8"))
    return json.loads(raw.decode("utf-8"))
