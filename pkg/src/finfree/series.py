"""Truncated formal series with exact rational coefficients.

A :class:`PowerSeries` keeps coefficients c_0..c_N of a series in z; N is
the truncation order and is explicit in every result.  Arithmetic keeps
whatever order is honestly known: sums and products of series of orders
N and M are exact to min(N, M), differentiation drops one order,
integration gains one, and composition f(g) with val(g) >= 1 is exact to
min order.  Asking for a coefficient beyond the truncation order raises
instead of returning a silent zero.

A :class:`LaurentSeries` is a series in the variable w = 1/z with an
explicit lowest power ``lo`` and coefficients through ``hi``; it is the
natural container for Cauchy-type transforms, which have lo = 1 and unit
leading coefficient.  Coefficients below ``lo`` are exactly zero (not
unknown), so differentiation in z is exact and raises the order window.

Reversion (compositional inverse) uses Lagrange inversion:

    [z^n] f^{<-1>} = (1/n) [z^{n-1}] (z / f(z))^n,

valid for c_0 = 0, c_1 != 0.  Logarithms need unit constant term and go
through term-wise integration of f'/f.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError


class PowerSeries:
    """Coefficients c_0..c_N of a truncated series in z."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = tuple(Fraction(x) for x in coeffs)
        if not c:
            raise DomainError("a series needs at least its constant coefficient")
        self.c = c

    @classmethod
    def zero(cls, order):
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def one(cls, order):
        return cls((Fraction(1),) + (Fraction(0),) * order)

    @classmethod
    def identity(cls, order):
        """The series z, truncated at the given order (>= 1)."""
        if order < 1:
            raise DomainError("identity series needs order >= 1")
        return cls((Fraction(0), Fraction(1)) + (Fraction(0),) * (order - 1))

    @property
    def order(self):
        return len(self.c) - 1

    def coeff(self, j) -> Fraction:
        if j < 0:
            return Fraction(0)
        if j > self.order:
            raise DomainError(f"coefficient {j} beyond truncation order {self.order}")
        return self.c[j]

    def truncate(self, order):
        if order > self.order:
            raise DomainError(f"cannot extend order {self.order} to {order}")
        return PowerSeries(self.c[:order + 1])

    def __eq__(self, other):
        return isinstance(other, PowerSeries) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"PowerSeries({[str(x) for x in self.c]})"

    def __neg__(self):
        return PowerSeries(tuple(-x for x in self.c))

    def _coerce(self, other):
        if isinstance(other, PowerSeries):
            return other
        return None

    def __add__(self, other):
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            return PowerSeries(tuple(self.c[j] + other.c[j] for j in range(n + 1)))
        val = Fraction(other)
        return PowerSeries((self.c[0] + val,) + self.c[1:])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, PowerSeries) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + Fraction(other)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            out = [Fraction(0)] * (n + 1)
            for i, a in enumerate(self.c[:n + 1]):
                if a == 0:
                    continue
                for j in range(n + 1 - i):
                    b = other.c[j]
                    if b:
                        out[i + j] += a * b
            return PowerSeries(out)
        val = Fraction(other)
        return PowerSeries(tuple(x * val for x in self.c))

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse; needs a nonzero constant term."""
        if self.c[0] == 0:
            raise DomainError("series with zero constant term has no inverse")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / self.c[0]
        for k in range(1, n + 1):
            acc = Fraction(0)
            for i in range(1, k + 1):
                if self.c[i]:
                    acc += self.c[i] * out[k - i]
            out[k] = -acc / self.c[0]
        return PowerSeries(out)

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def shift(self, k):
        """Multiply by z^k (k >= 0); the order window grows with it."""
        if k < 0:
            raise DomainError("shift by a negative power is not defined here")
        return PowerSeries((Fraction(0),) * k + self.c)

    def deriv(self):
        if self.order == 0:
            return PowerSeries((Fraction(0),))
        return PowerSeries(tuple(j * self.c[j] for j in range(1, self.order + 1)))

    def integ(self):
        """Antiderivative with zero constant term."""
        return PowerSeries((Fraction(0),) + tuple(self.c[j] / (j + 1)
                                                  for j in range(self.order + 1)))

    def compose(self, inner):
        """self(inner); the inner series must have zero constant term."""
        if inner.c[0] != 0:
            raise DomainError("composition needs inner valuation >= 1")
        n = min(self.order, inner.order)
        acc = PowerSeries((self.c[n],) + (Fraction(0),) * n)
        inner_t = inner.truncate(n) if inner.order > n else inner
        for j in range(n - 1, -1, -1):
            acc = acc * inner_t + self.c[j]
        return acc

    def revert(self):
        """Compositional inverse; needs c_0 = 0 and c_1 != 0."""
        if self.c[0] != 0 or self.order < 1 or self.c[1] == 0:
            raise DomainError("reversion needs c_0 = 0 and c_1 != 0")
        n = self.order
        # u = z / f(z), a unit series of order n-1
        u = PowerSeries(self.c[1:]).inverse()
        out = [Fraction(0)] * (n + 1)
        upow = PowerSeries.one(n - 1)
        for m in range(1, n + 1):
            upow = upow * u
            out[m] = upow.coeff(m - 1) / m
        return PowerSeries(out)

    def log(self):
        """log of a series with c_0 = 1, exact to the same order."""
        if self.c[0] != 1:
            raise DomainError("series log needs unit constant term")
        if self.order == 0:
            return PowerSeries((Fraction(0),))
        return (self.deriv() / self.truncate(self.order - 1)).integ()

    def pow_int(self, k):
        if k < 0:
            return self.inverse().pow_int(-k)
        acc = PowerSeries.one(self.order)
        for _ in range(k):
            acc = acc * self
        return acc


class LaurentSeries:
    """A truncated series sum_{j=lo}^{hi} c_j w^j in the variable w = 1/z.

    Coefficients below ``lo`` are exactly zero; coefficients above ``hi``
    are unknown (truncated away).
    """

    __slots__ = ("lo", "c")

    def __init__(self, lo, coeffs):
        c = tuple(Fraction(x) for x in coeffs)
        if not c:
            raise DomainError("a Laurent series needs at least one coefficient")
        self.lo = lo
        self.c = c

    @property
    def hi(self):
        return self.lo + len(self.c) - 1

    def coeff(self, j) -> Fraction:
        if j < self.lo:
            return Fraction(0)
        if j > self.hi:
            raise DomainError(f"coefficient {j} beyond truncation order {self.hi}")
        return self.c[j - self.lo]

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.hi != other.hi:
            return False
        lo = min(self.lo, other.lo)
        return all(self.coeff(j) == other.coeff(j) for j in range(lo, self.hi + 1))

    def __repr__(self):
        return f"LaurentSeries(lo={self.lo}, {[str(x) for x in self.c]})"

    def __neg__(self):
        return LaurentSeries(self.lo, tuple(-x for x in self.c))

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            raise TypeError("can only add Laurent series")
        lo = min(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if hi < lo:
            raise DomainError("sum has an empty coefficient window")
        return LaurentSeries(lo, tuple(self.coeff(j) + other.coeff(j)
                                       for j in range(lo, hi + 1)))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = Fraction(factor)
        return LaurentSeries(self.lo, tuple(x * factor for x in self.c))

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        lo = self.lo + other.lo
        hi = min(self.hi + other.lo, other.hi + self.lo)
        out = [Fraction(0)] * (hi - lo + 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            pa = self.lo + i
            for j, b in enumerate(other.c):
                if b == 0:
                    continue
                p = pa + other.lo + j
                if p <= hi:
                    out[p - lo] += a * b
        return LaurentSeries(lo, out)

    __rmul__ = __mul__

    def normalized(self):
        """Strip leading zero coefficients so lo is the true valuation."""
        c = self.c
        lo = self.lo
        while c and c[0] == 0:
            c = c[1:]
            lo += 1
        if not c:
            raise DomainError("the zero series has no valuation")
        return LaurentSeries(lo, c)

    def __truediv__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(1 / Fraction(other))
        den = other.normalized()
        num_unit = PowerSeries(self.c)
        den_unit = PowerSeries(den.c)
        quot = num_unit * den_unit.inverse()
        return LaurentSeries(self.lo - den.lo, quot.c)

    def deriv_z(self):
        """d/dz: the term c_j w^j maps to -j c_j w^{j+1} (w = 1/z)."""
        return LaurentSeries(self.lo + 1,
                             tuple(-(self.lo + i) * x for i, x in enumerate(self.c)))

    def deriv_w(self):
        return LaurentSeries(self.lo - 1,
                             tuple((self.lo + i) * x for i, x in enumerate(self.c)))


class BivariateSeries:
    """The two-circle generating object: values beta_{r,s} for r, s >= 1
    with r + s <= N, representing (1/(zw)) sum beta_{r,s} z^{-r} w^{-s}."""

    __slots__ = ("N", "beta")

    def __init__(self, N, beta):
        self.N = N
        self.beta = {k: Fraction(v) for k, v in beta.items()}

    def value(self, r, s) -> Fraction:
        if r < 1 or s < 1 or r + s > self.N:
            raise DomainError(f"({r},{s}) outside the truncation triangle N={self.N}")
        return self.beta.get((r, s), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        if self.N != other.N:
            return False
        for r in range(1, self.N):
            for s in range(1, self.N - r + 1):
                if self.value(r, s) != other.value(r, s):
                    return False
        return True

    def __repr__(self):
        return f"BivariateSeries(N={self.N})"
