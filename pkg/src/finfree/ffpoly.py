"""Exact monic polynomials of degree d and their finite free structure.

A polynomial is held by its signed elementary-symmetric coefficients
a_0, ..., a_d with a_0 = 1:

    p(x) = sum_{i=0}^{d} x^{d-i} (-1)^i a_i,

so a_i is the i-th elementary symmetric polynomial in the roots.  All
coefficients are exact rationals and no roots are ever extracted: moments
come from Newton's identities, and the cumulant transforms are partition
sums evaluated type-by-type.

The degree-d convolutions are coefficient formulas:

    a_k(p boxplus_d q)  = (d)_k * sum_{i+j=k} a_i(p) a_j(q) / ((d)_i (d)_j)
    a_k(p boxtimes_d q) = a_k(p) a_k(q) k! / (d)_k

with (d)_k = d(d-1)...(d-k+1).  Both demand equal ambient degrees;
mismatches raise instead of padding, since the convolutions are
d-parametric and implicit padding changes their meaning.

Finite free cumulants kappa_n^d(p) exist for 1 <= n <= d only:

    kappa_n^d(p) = (-d)^n / (d (n-1)!) *
        sum_{pi in P(n)} (-1)^{|pi|} (prod_V |V|!) a_pi (|pi|-1)! / (d)_pi,

and the inverse direction is

    a_n = (d)_n / (d^n n!) * sum_{pi in P(n)} d^{|pi|} mu(0_n, pi) kappa_pi.

Both sums see pi only through its block-size type, so they are evaluated
over types with exact integer multiplicities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import caps
from .errors import DimensionMismatch, DomainError
from .partitions import (
    type_block_count,
    type_factorial_product,
    type_mobius,
    type_set_partition_count,
    type_vectors,
)


def falling(d: int, k: int) -> int:
    """Falling factorial (d)_k = d(d-1)...(d-k+1)."""
    out = 1
    for i in range(k):
        out *= d - i
    return out


def falling_frac(x: Fraction, k: int) -> Fraction:
    """(x)_k for a rational x."""
    out = Fraction(1)
    for i in range(k):
        out *= x - i
    return out


class MonicPoly:
    """Monic degree-d polynomial with exact rational a-coefficients."""

    __slots__ = ("d", "a")

    def __init__(self, d, a):
        a = tuple(Fraction(x) for x in a)
        if d < 1:
            raise DomainError(f"degree must be positive, got {d}")
        if len(a) != d + 1:
            raise DomainError(f"need {d + 1} coefficients a_0..a_{d}, got {len(a)}")
        if a[0] != 1:
            raise DomainError(f"polynomial must be monic (a_0 = 1), got a_0 = {a[0]}")
        self.d = d
        self.a = a

    @classmethod
    def from_coefficients(cls, a):
        a = tuple(a)
        return cls(len(a) - 1, a)

    def monomial_coeffs(self):
        """Coefficients (c_0, ..., c_d) with p(x) = sum c_i x^{d-i}."""
        return tuple((-1) ** i * ai for i, ai in enumerate(self.a))

    def __eq__(self, other):
        return isinstance(other, MonicPoly) and self.d == other.d and self.a == other.a

    def __hash__(self):
        return hash((self.d, self.a))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.monomial_coeffs()):
            if c == 0:
                continue
            power = self.d - i
            if power == 0:
                body = str(abs(c))
            else:
                xpart = "x" if power == 1 else f"x^{power}"
                body = xpart if abs(c) == 1 else f"{abs(c)}*{xpart}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        head_sign, head = terms[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"MonicPoly(d={self.d}, {self})"

    def to_json(self) -> str:
        return json.dumps({"d": self.d, "a": [str(x) for x in self.a]})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data):
        """Accepts {"a": [...]} (with optional "d") or {"roots": [...]}."""
        if "roots" in data:
            return from_roots([Fraction(str(r)) for r in data["roots"]])
        if "a" in data:
            a = [Fraction(str(x)) for x in data["a"]]
            d = data.get("d", len(a) - 1)
            return cls(d, a)
        raise DomainError("polynomial JSON needs a 'roots' or 'a' field")


@dataclass(frozen=True)
class MomentVector:
    """Moments m_1..m_N of the empirical root distribution (m may extend past d)."""

    d: int
    m: tuple

    def nth(self, n) -> Fraction:
        return self.m[n - 1]

    def __len__(self):
        return len(self.m)

    def __iter__(self):
        return iter(self.m)


@dataclass(frozen=True)
class CumulantVector:
    """Finite free cumulants kappa_1..kappa_d; nothing exists beyond n = d."""

    d: int
    k: tuple

    def nth(self, n) -> Fraction:
        return self.k[n - 1]

    def __len__(self):
        return len(self.k)

    def __iter__(self):
        return iter(self.k)


def profile_of(values):
    """Normalize a CumulantVector / MomentVector / plain sequence to a tuple."""
    if isinstance(values, CumulantVector):
        return values.k
    if isinstance(values, MomentVector):
        return values.m
    return tuple(Fraction(v) for v in values)


def type_weight(profile, counts) -> Fraction:
    """prod_i profile[i]^{s_i}, the multiplicative weight of a block-size type."""
    out = Fraction(1)
    for i, c in enumerate(counts):
        if c:
            out *= profile[i] ** c
    return out


def from_roots(roots) -> MonicPoly:
    """Monic polynomial with the given rational roots (a_n = e_n(roots))."""
    roots = [Fraction(r) for r in roots]
    if not roots:
        raise DomainError("need at least one root")
    e = [Fraction(1)]
    for r in roots:
        e.append(Fraction(0))
        for k in range(len(e) - 1, 0, -1):
            e[k] += r * e[k - 1]
    return MonicPoly(len(roots), e)


def dilate(p: MonicPoly, c) -> MonicPoly:
    """Scale every root by c: a_k -> c^k a_k."""
    c = Fraction(c)
    return MonicPoly(p.d, tuple(c ** k * ak for k, ak in enumerate(p.a)))


def moments(p: MonicPoly, upto: int) -> MomentVector:
    """Moments m_n = (power sums)/d for n = 1..upto, via Newton's identities.

    Elementary symmetric values beyond e_d are zero, so the vector may
    extend past the degree.
    """
    if upto < 1:
        raise DomainError(f"moment order must be positive, got {upto}")
    e = list(p.a) + [Fraction(0)] * max(0, upto - p.d)
    psums = []
    for k in range(1, upto + 1):
        acc = Fraction(0)
        for i in range(1, k):
            term = e[i] * psums[k - i - 1]
            acc += -term if i % 2 == 0 else term
        if k <= p.d:
            acc += (k * e[k]) if k % 2 else (-k * e[k])
        psums.append(acc)
    return MomentVector(p.d, tuple(s / p.d for s in psums))


def cumulants(p: MonicPoly, cap=None) -> CumulantVector:
    """All finite free cumulants kappa_1^d, ..., kappa_d^d of p."""
    cap = caps.CUMULANT_CAP if cap is None else cap
    caps.require(p.d, cap, "finite free cumulants")
    d = p.d
    out = []
    for n in range(1, d + 1):
        acc = Fraction(0)
        for counts in type_vectors(n):
            nb = type_block_count(counts)
            mult = type_set_partition_count(counts) * type_factorial_product(counts)
            mult *= factorial(nb - 1)
            if nb % 2:
                mult = -mult
            dpi = 1
            for i, c in enumerate(counts):
                if c:
                    dpi *= falling(d, i + 1) ** c
            acc += Fraction(mult, dpi) * type_weight(p.a[1:], counts)
        scale = Fraction((-d) ** n, d * factorial(n - 1))
        out.append(scale * acc)
    return CumulantVector(d, tuple(out))


def poly_from_cumulants(d: int, k, cap=None) -> MonicPoly:
    """The unique monic degree-d polynomial with the given cumulants.

    ``k`` must supply at least d values; exact inverse of :func:`cumulants`.
    """
    cap = caps.CUMULANT_CAP if cap is None else cap
    caps.require(d, cap, "polynomial from cumulants")
    kv = profile_of(k)
    if len(kv) < d:
        raise DomainError(f"need at least {d} cumulants, got {len(kv)}")
    a = [Fraction(1)]
    for n in range(1, d + 1):
        acc = Fraction(0)
        for counts in type_vectors(n):
            nb = type_block_count(counts)
            weight = type_set_partition_count(counts) * type_mobius(counts) * d ** nb
            acc += weight * type_weight(kv, counts)
        a.append(Fraction(falling(d, n), d ** n * factorial(n)) * acc)
    return MonicPoly(d, tuple(a))


def boxplus(p: MonicPoly, q: MonicPoly) -> MonicPoly:
    """Finite free additive convolution at the common degree d."""
    if p.d != q.d:
        raise DimensionMismatch(f"boxplus needs equal degrees, got {p.d} and {q.d}")
    d = p.d
    a = []
    for k in range(d + 1):
        acc = Fraction(0)
        for i in range(k + 1):
            j = k - i
            acc += p.a[i] * q.a[j] / (falling(d, i) * falling(d, j))
        a.append(falling(d, k) * acc)
    return MonicPoly(d, tuple(a))


def boxtimes(p: MonicPoly, q: MonicPoly) -> MonicPoly:
    """Finite free multiplicative convolution at the common degree d."""
    if p.d != q.d:
        raise DimensionMismatch(f"boxtimes needs equal degrees, got {p.d} and {q.d}")
    d = p.d
    a = tuple(p.a[k] * q.a[k] * Fraction(factorial(k), falling(d, k))
              for k in range(d + 1))
    return MonicPoly(d, a)


def derivative_shift(p: MonicPoly, j: int) -> MonicPoly:
    """x^j D^j p(x) / (d)_j as a monic degree-d polynomial.

    Coefficient-wise this is a_i -> a_i (d-i)_j / (d)_j, and it agrees
    exactly with boxtimes against the polynomial with j roots at 0 and
    d-j roots at 1.
    """
    if not 0 <= j <= p.d:
        raise DomainError(f"derivative order must lie in 0..{p.d}, got {j}")
    d = p.d
    scale = falling(d, j)
    a = tuple(ai * Fraction(falling(d - i, j), scale) for i, ai in enumerate(p.a))
    return MonicPoly(d, a)
