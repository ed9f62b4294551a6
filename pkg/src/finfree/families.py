"""Closed-form constructors for the named polynomial families.

Three families carry the whole asymptotic story: the power family
(x-a)^d with cumulant profile (a, 0, 0, ...), the rescaled Hermite
family with profile (0, 1, 0, ...), and the rescaled Laguerre family
with the constant profile (lambda, lambda, ...).  The unit Laguerre
polynomial doubles as the compound-Poisson witness: multiplying by it
turns moments into cumulants.

Real-rootedness is documented, not enforced: for instance the Laguerre
polynomial with lambda = 1/3 at d = 4 has two non-real roots, yet every
coefficient-level identity here still holds, so constructors accept any
rational parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import DomainError
from .ffpoly import MonicPoly, falling, falling_frac


def hermite(d: int) -> MonicPoly:
    """Rescaled Hermite polynomial: a_{2k} = (-1)^k (d)_{2k} / (k! 2^k d^k)."""
    if d < 1:
        raise DomainError(f"degree must be positive, got {d}")
    a = [Fraction(0)] * (d + 1)
    a[0] = Fraction(1)
    for k in range(1, d // 2 + 1):
        sign = -1 if k % 2 else 1
        a[2 * k] = Fraction(sign * falling(d, 2 * k), factorial(k) * 2 ** k * d ** k)
    return MonicPoly(d, tuple(a))


def laguerre(d: int, lam) -> MonicPoly:
    """Rescaled Laguerre polynomial: a_k = (d)_k (d*lambda)_k / (d^k k!)."""
    if d < 1:
        raise DomainError(f"degree must be positive, got {d}")
    lam = Fraction(lam)
    a = [Fraction(1)]
    for k in range(1, d + 1):
        a.append(falling(d, k) * falling_frac(d * lam, k) / (d ** k * factorial(k)))
    return MonicPoly(d, tuple(a))


def power(d: int, a) -> MonicPoly:
    """The power polynomial (x - a)^d, i.e. a_k = C(d, k) a^k."""
    if d < 1:
        raise DomainError(f"degree must be positive, got {d}")
    a = Fraction(a)
    return MonicPoly(d, tuple(comb(d, k) * a ** k for k in range(d + 1)))


def compound_poisson_witness(d: int) -> MonicPoly:
    """The unit Laguerre polynomial; all its finite free cumulants equal 1."""
    return laguerre(d, 1)


@dataclass(frozen=True)
class FamilySpec:
    """A family selector: kind in {power, hermite, laguerre} plus parameters."""

    kind: str
    a: Fraction = Fraction(0)
    lam: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind not in ("power", "hermite", "laguerre"):
            raise DomainError(f"unknown family {self.kind!r}")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "lam", Fraction(self.lam))

    def instantiate(self, d: int) -> MonicPoly:
        if self.kind == "power":
            return power(d, self.a)
        if self.kind == "hermite":
            return hermite(d)
        return laguerre(d, self.lam)

    def limit_cumulants(self, upto: int) -> tuple:
        """Free cumulants of the limiting measure, out to order ``upto``.

        power -> (a, 0, 0, ...); hermite -> (0, 1, 0, ...) (semicircle);
        laguerre -> (lam, lam, ...) (free Poisson).
        """
        if self.kind == "power":
            return (self.a,) + (Fraction(0),) * (upto - 1)
        if self.kind == "hermite":
            return tuple(Fraction(1) if n == 2 else Fraction(0)
                         for n in range(1, upto + 1))
        return (self.lam,) * upto

    def label(self) -> str:
        if self.kind == "power":
            return f"power(a={self.a})"
        if self.kind == "hermite":
            return "hermite"
        return f"laguerre(lambda={self.lam})"


# Reference expansions for the Gaussian orthogonal ensemble's first even
# moments in powers of 1/d, kept purely as documentation constants for
# comparison with the Hermite column: the 1/d coefficients agree up to
# sign, the 1/d^2 coefficients already differ.
GOE_MOMENT_POLYS = {
    2: (1, 1),
    4: (2, 5, 5),
    6: (5, 22, 52, 41),
}
