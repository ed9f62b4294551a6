"""Formal-series free probability and the order-1/d corrections.

Moments and free cumulants are tied by sums over non-crossing partitions;
the multiplicative convolution pairs a partition with its Kreweras
complement.  Both censuses are cached by block-size type, so repeated
evaluations against different cumulant profiles cost almost nothing.

The infinitesimal layer describes the order-1/d drift of the moment
sequences.  Three independent routes to the same numbers live here or
nearby, and the test suite requires exact agreement:

  * the annular sums  m'_n = -(n/2) sum_{r+s=n} alpha_{r,s}/(rs)  with
    alpha_{r,s} the cumulant weight of the annular non-crossing
    permutations on the (r, s) annulus,
  * the series combination  G_inf = G''/(2G') - G'/G  of the Cauchy
    transform, and
  * the (1/d)^1 coefficient of the exact moment expansion in
    :mod:`finfree.identities`.

On the cumulant side, R_inf = K''/(2K') + 1/z, and the inverse Markov
transform M with G_M = -G'/G satisfies mu' = (M(mu) - M(M(mu)))/2.

Everything is a truncated exact-rational series; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor

from . import caps
from .errors import DomainError
from .ffpoly import dilate, moments, profile_of, type_weight, derivative_shift
from .families import FamilySpec
from .partitions import enumerate_noncrossing, kreweras, partition_type
from .permutations import snc_type_census
from .series import BivariateSeries, LaurentSeries, PowerSeries


@dataclass(frozen=True)
class MomentProfile:
    """Moments m_1..m_N of a limiting distribution (m_0 = 1 implicit)."""

    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(Fraction(x) for x in self.m))

    def nth(self, n) -> Fraction:
        return self.m[n - 1]

    def __len__(self):
        return len(self.m)

    def __iter__(self):
        return iter(self.m)


@dataclass(frozen=True)
class InfinitesimalProfile:
    """Order-1/d corrections: infinitesimal moments and, when derived,
    infinitesimal cumulants."""

    mp: tuple
    kp: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "mp", tuple(Fraction(x) for x in self.mp))
        if self.kp is not None:
            object.__setattr__(self, "kp", tuple(Fraction(x) for x in self.kp))


# ---------------------------------------------------------------------------
# non-crossing censuses

@lru_cache(maxsize=None)
def _nc_census(n):
    """{type: count} over the non-crossing partitions of [n]."""
    census = {}
    for p in enumerate_noncrossing(n):
        t = partition_type(p).counts
        census[t] = census.get(t, 0) + 1
    return census


@lru_cache(maxsize=None)
def _nc_kreweras_census(n):
    """{(type pi, type Kr(pi)): count} over the non-crossing partitions."""
    census = {}
    for p in enumerate_noncrossing(n):
        key = (partition_type(p).counts, partition_type(kreweras(p)).counts)
        census[key] = census.get(key, 0) + 1
    return census


def free_moments_from_cumulants(k, upto, cap=None) -> MomentProfile:
    """m_n = sum over NC(n) of kappa_pi, for n = 1..upto."""
    caps.require(upto, caps.NC_CAP if cap is None else cap, "non-crossing moment sum")
    kv = profile_of(k)
    if len(kv) < upto:
        raise DomainError(f"need {upto} cumulants, got {len(kv)}")
    out = []
    for n in range(1, upto + 1):
        acc = Fraction(0)
        for t, count in _nc_census(n).items():
            w = type_weight(kv, t)
            if w:
                acc += count * w
        out.append(acc)
    return MomentProfile(tuple(out))


def free_boxtimes(ka, kb, upto, cap=None) -> tuple:
    """Cumulants of the free multiplicative convolution:

    kappa_n(mu boxtimes nu) = sum over NC(n) of kappa_pi(mu)
    kappa_{Kr(pi)}(nu).
    """
    caps.require(upto, caps.NC_CAP if cap is None else cap, "non-crossing product sum")
    ka = profile_of(ka)
    kb = profile_of(kb)
    if len(ka) < upto or len(kb) < upto:
        raise DomainError(f"need {upto} cumulants on both sides")
    out = []
    for n in range(1, upto + 1):
        acc = Fraction(0)
        for (ta, tb), count in _nc_kreweras_census(n).items():
            w = type_weight(ka, ta) * type_weight(kb, tb)
            if w:
                acc += count * w
        out.append(acc)
    return tuple(out)


# ---------------------------------------------------------------------------
# Cauchy-type transforms

def cauchy_from_moments(m) -> LaurentSeries:
    """G = sum_{n>=0} m_n w^{n+1} with m_0 = 1 (w = 1/z)."""
    mv = tuple(m.m) if isinstance(m, MomentProfile) else profile_of(m)
    return LaurentSeries(1, (Fraction(1),) + mv)


def _cauchy_parts(g: LaurentSeries):
    if g.lo != 1 or g.c[0] != 1:
        raise DomainError("Cauchy-type series must start with the unit w^1 term")
    a = PowerSeries(g.c)                                   # A(w): a_j = m_j
    p = PowerSeries(tuple((j + 1) * x for j, x in enumerate(g.c)))   # dG/dw
    return a, p


def k_transform(g: LaurentSeries, upto: int) -> PowerSeries:
    """Regular part of the compositional inverse K of G.

    K(z) = 1/z + kappa_1 + kappa_2 z + ...; the returned series holds
    coefficient j = kappa_{j+1}, truncated so kappa_1..kappa_upto are
    exact.  Needs moments through order ``upto``.
    """
    a, _ = _cauchy_parts(g)
    avail = g.hi - 1
    if upto < 1 or upto > avail:
        raise DomainError(f"k_transform to order {upto} needs moments m_1..m_{upto}, "
                          f"have {avail}")
    psi = PowerSeries((Fraction(0),) + a.c[:upto + 1])  # w * A(w), order upto+1
    phi = psi.revert()                                  # 1/K as a series in z
    w_unit = PowerSeries(phi.c[1:])                     # phi = z * w_unit, unit term 1
    reg = w_unit.inverse() - 1                          # z * (K - 1/z)
    return PowerSeries(reg.c[1:])


def r_transform(g: LaurentSeries, upto: int) -> PowerSeries:
    """R(z) = K(z) - 1/z = sum_{n>=1} kappa_n z^{n-1}; same layout as
    :func:`k_transform` (they coincide coefficient-wise)."""
    return k_transform(g, upto)


def markov_transform(g: LaurentSeries) -> LaurentSeries:
    """Inverse Markov transform at series level: G_M = -G'/G.

    The result is again a Cauchy-type series (unit leading w) whose
    coefficients are exact through the input's truncation order.
    """
    a, p = _cauchy_parts(g)
    quot = p * a.inverse()
    return LaurentSeries(1, quot.c)


def g_inf_from_cauchy(g: LaurentSeries) -> LaurentSeries:
    """Infinitesimal Cauchy transform G_inf = G''/(2G') - G'/G.

    Input holding m_0..m_N yields m'_1..m'_N, returned as the series
    sum m'_n w^{n+1}.
    """
    a, p = _cauchy_parts(g)
    # With G = w A(w): G'/G = -w P/A and G''/(2G') = -(2P + w P')/(2P)
    # where P = dG/dw has coefficients (j+1) m_j; the combination below
    # collapses to w * (P/A - T/(2P)) with T_j = (j+1)(j+2) m_j.
    t = PowerSeries(tuple((j + 1) * (j + 2) * x for j, x in enumerate(g.c)))
    s = p * a.inverse() - t * (2 * p).inverse()
    if s.c[0] != 0:
        raise RuntimeError("infinitesimal series must vanish at order w^1")
    return LaurentSeries(2, s.c[1:])


def infinitesimal_moments(ginf: LaurentSeries, upto: int) -> tuple:
    """Extract (m'_1, ..., m'_upto) from a G_inf-type series."""
    return tuple(ginf.coeff(n + 1) for n in range(1, upto + 1))


def r_inf_from_k(kt: PowerSeries) -> PowerSeries:
    """Infinitesimal R-transform R_inf = K''/(2K') + 1/z from the regular
    part of K.

    With r the regular part this is z (z r'' + 2 r') / (2 (z^2 r' - 1)),
    a power series since the denominator has constant term -2.  The
    returned coefficient j is kappa'_{j+1}.  Also satisfies
    R_inf = -K' * (G_inf o K).
    """
    if kt.order < 2:
        raise DomainError("need the K-transform through order 2 for R_inf")
    rp = kt.deriv()
    rpp = rp.deriv()
    num = (rpp.shift(1) + 2 * rp).shift(1)
    den = 2 * (rp.shift(2) - 1)
    return num * den.inverse()


# ---------------------------------------------------------------------------
# annular sums and the second-order functional equation

def alpha_annular(k, r: int, s: int, cap=None) -> Fraction:
    """alpha_{r,s} = sum of kappa_pi over the annular non-crossing
    permutations of the (r, s) annulus."""
    if r < 1 or s < 1:
        raise DomainError(f"annulus sides must be positive, got ({r}, {s})")
    caps.require(r + s, caps.ANNULAR_CAP if cap is None else cap, "annular sum")
    kv = profile_of(k)
    if len(kv) < r + s:
        raise DomainError(f"need cumulants through order {r + s}")
    zeta = (r, s) if r >= s else (s, r)   # census is conjugation-invariant
    census = snc_type_census(zeta).get(0, {})
    acc = Fraction(0)
    for (ta, _tb), count in census.items():
        w = type_weight(kv, ta)
        if w:
            acc += count * w
    return acc


def bivariate_from_annular(k, upto: int, cap=None) -> BivariateSeries:
    """The annular generating object with beta_{r,s} = alpha_{r,s}."""
    beta = {}
    for r in range(1, upto):
        for s in range(1, upto - r + 1):
            beta[(r, s)] = alpha_annular(k, r, s, cap=cap)
    return BivariateSeries(upto, beta)


def _bi_mul(a, b, n):
    out = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        arow = a[i]
        for j in range(n + 1 - i):
            av = arow[j]
            if av == 0:
                continue
            for p in range(n + 1 - i - j):
                brow = b[p]
                for q in range(n + 1 - i - j - p):
                    bv = brow[q]
                    if bv:
                        out[i + p][j + q] += av * bv
    return out


def bivariate_from_cauchy(k, upto: int, cap=None) -> BivariateSeries:
    """Right-hand side of the second-order functional equation.

    The difference quotient (G(w) - G(z))/(z - w) expands term-wise via
    (v^{a+1} - u^{a+1})/(v - u) * uv = uv * sum_{i+j=a} u^i v^j (u = 1/z,
    v = 1/w), so it equals uv * D(u, v) with D(u, v) = sum m_{i+j} u^i v^j.
    Taking log and the mixed z, w derivative kills the log u + log v part
    and leaves alpha_{r,s} = r s [u^r v^s] log D.
    """
    n = upto
    m = free_moments_from_cumulants(k, n, cap=cap)
    mom = (Fraction(1),) + tuple(m)
    d = [[mom[i + j] if i + j <= n else Fraction(0) for j in range(n + 1)]
         for i in range(n + 1)]
    x = [row[:] for row in d]
    x[0][0] -= 1
    # log(1 + X) = X - X^2/2 + X^3/3 - ...; X has total valuation >= 1
    logd = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    power = x
    q = 1
    while q <= n:
        coeff = Fraction((-1) ** (q + 1), q)
        for i in range(n + 1):
            for j in range(n + 1 - i):
                if power[i][j]:
                    logd[i][j] += coeff * power[i][j]
        q += 1
        if q <= n:
            power = _bi_mul(power, x, n)
    beta = {}
    for r in range(1, n):
        for s in range(1, n - r + 1):
            beta[(r, s)] = Fraction(r * s) * logd[r][s]
    return BivariateSeries(n, beta)


def second_order_functional_check(k, upto: int, cap=None) -> bool:
    """True iff the annular sums satisfy the functional equation

    G(z, w) = d^2/(dz dw) log((G(w) - G(z))/(z - w))

    as exact bivariate series through total order ``upto``."""
    caps.require(upto, caps.ANNULAR_CAP if cap is None else cap,
                 "second-order functional check")
    return bivariate_from_annular(k, upto, cap=cap) == bivariate_from_cauchy(k, upto)


def infinitesimal_from_annular(k, upto: int, cap=None) -> InfinitesimalProfile:
    """m'_n = -(n/2) sum_{r+s=n} alpha_{r,s}/(r s), n = 1..upto."""
    caps.require(upto, caps.ANNULAR_CAP if cap is None else cap, "annular sum")
    out = []
    for n in range(1, upto + 1):
        acc = Fraction(0)
        for r in range(1, n):
            acc += alpha_annular(k, r, n - r, cap=cap) / (r * (n - r))
        out.append(-Fraction(n, 2) * acc)
    return InfinitesimalProfile(mp=tuple(out))


# ---------------------------------------------------------------------------
# fractional convolution powers and derivative flow

def fractional_identity_check(k, t, upto: int, cap=None) -> bool:
    """Moment identity tying fractional powers to the multiplicative
    convolution with a Bernoulli factor, for t in (0, 1):

        (1-t) delta_0 + t mu^{boxplus 1/t}
            = (dilation of mu by 1/t) boxtimes ((1-t) delta_0 + t delta_1).

    Left side: scale cumulants by 1/t, take free moments, weigh by t.
    Right side: the Kreweras pairing sum with dilated cumulants against
    the Bernoulli moment sequence (t, t, ...).  Exact through ``upto``.
    """
    t = Fraction(t)
    if not 0 < t < 1:
        raise DomainError(f"t must lie strictly between 0 and 1, got {t}")
    caps.require(upto, caps.NC_CAP if cap is None else cap, "fractional power check")
    kv = profile_of(k)
    if len(kv) < upto:
        raise DomainError(f"need {upto} cumulants, got {len(kv)}")
    scaled = tuple(x / t for x in kv)
    lhs = [t * m for m in free_moments_from_cumulants(scaled, upto, cap=cap)]
    dilated = tuple(kv[n - 1] / t ** n for n in range(1, upto + 1))
    bern = (t,) * upto
    rhs = []
    for n in range(1, upto + 1):
        acc = Fraction(0)
        for (ta, tb), count in _nc_kreweras_census(n).items():
            w = type_weight(dilated, ta) * type_weight(bern, tb)
            if w:
                acc += count * w
        rhs.append(acc)
    return lhs == rhs


def _gap_ratios(ds, gaps, window):
    lo, hi = Fraction(window[0]), Fraction(window[1])
    ratios = []
    ok = True
    for i in range(len(ds) - 1):
        if ds[i + 1] != 2 * ds[i]:
            continue
        g1, g2 = gaps[i], gaps[i + 1]
        if g1 == 0 and g2 == 0:
            ratios.append({"d": ds[i], "ratio": None, "ok": True})
            continue
        if g2 == 0 or g1 == 0:
            ratios.append({"d": ds[i], "ratio": None, "ok": False})
            ok = False
            continue
        ratio = g1 / g2
        good = lo <= ratio <= hi
        ratios.append({"d": ds[i], "ratio": ratio, "ok": good})
        ok = ok and good
    return ratios, ok


def derivative_flow_trend(fam: FamilySpec, t, order: int, ds,
                          window=(Fraction(3, 2), Fraction(5, 2))) -> dict:
    """Exact finite-d moments of repeated derivatives against the
    fractional-power limit.

    For each degree d: take the family member, rescale its roots by 1/t,
    apply k = floor((1-t) d) derivative steps through the multiplicative
    shift, drop the k roots pinned at zero (factor d/(d-k)), and compare
    the order-``order`` moment with that of the limit mu^{boxplus 1/t}.
    Gaps shrink like 1/d; doubling pairs in ``ds`` are checked against
    the ratio window.
    """
    t = Fraction(t)
    if not 0 < t < 1:
        raise DomainError(f"t must lie strictly between 0 and 1, got {t}")
    limit_k = tuple(x / t for x in fam.limit_cumulants(order))
    target = free_moments_from_cumulants(limit_k, order).nth(order)
    entries = []
    gaps = []
    ds = list(ds)
    for d in ds:
        k = floor((1 - t) * d)
        if not 0 <= k < d:
            raise DomainError(f"degree {d} leaves no roots after {k} derivatives")
        shifted = derivative_shift(dilate(fam.instantiate(d), 1 / t), k)
        value = moments(shifted, order).nth(order) * Fraction(d, d - k)
        gap = abs(value - target)
        entries.append({"d": d, "k": k, "moment": value, "target": target, "gap": gap})
        gaps.append(gap)
    ratios, ok = _gap_ratios(ds, gaps, window)
    return {"kind": "derivative", "family": fam.label(), "t": t, "order": order,
            "entries": entries, "ratios": ratios, "trend_ok": ok}


def convolution_trend(p_fam: FamilySpec, q_fam: FamilySpec, order: int, ds,
                      window=(Fraction(3, 2), Fraction(5, 2))) -> dict:
    """Finite multiplicative convolutions against the free limit.

    Compares m_order(p_d boxtimes_d q_d) with the moment of the free
    multiplicative convolution of the limiting measures, over the degrees
    in ``ds``; doubling pairs are checked against the ratio window.
    """
    from .ffpoly import boxtimes  # local import keeps module load light
    kk = free_boxtimes(p_fam.limit_cumulants(order), q_fam.limit_cumulants(order), order)
    target = free_moments_from_cumulants(kk, order).nth(order)
    entries = []
    gaps = []
    ds = list(ds)
    for d in ds:
        value = moments(boxtimes(p_fam.instantiate(d), q_fam.instantiate(d)),
                        order).nth(order)
        gap = abs(value - target)
        entries.append({"d": d, "moment": value, "target": target, "gap": gap})
        gaps.append(gap)
    ratios, ok = _gap_ratios(ds, gaps, window)
    return {"kind": "boxtimes", "p": p_fam.label(), "q": q_fam.label(), "order": order,
            "entries": entries, "ratios": ratios, "trend_ok": ok}
