"""Mechanical evaluation of the partition-sum identities.

Everything here revolves around sums of the shape

    sum over sigma, tau in P(n) with sigma v tau = 1_n of
        d^{|sigma|+|tau|} mu(0,sigma) mu(0,tau) u_sigma v_tau,

their restriction to fixed |sigma|+|tau| = n+1-k (the coefficient of
(1/d)^k), and the equivalent genus-layer sums over permutations.

Sweep organization.  Every summand depends on sigma and tau only through
their block-size types, so the P(n) x P(n) sweep is collapsed once per n
into an exact census: for each type s a representative sigma is fixed and
every tau is swept with a running union-find that exits as soon as the
join reaches 1_n; relabeling symmetry then scales the row by the number
of partitions of type s.  The census is cached and shared by every
evaluation at that n, which keeps the n = 8 case (Bell(8)^2 ~ 1.7e7 raw
pairs) interactive.

The formal variable 1/d. With the cumulant profile held fixed, the
moment at degree d is a genuine polynomial in 1/d whose k-th coefficient
is the restricted sum above; :class:`OneOverDPoly` carries those
coefficients exactly, so statements about orders of 1/d become testable
equalities instead of asymptotics.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import caps
from .errors import DomainError
from .families import compound_poisson_witness
from .ffpoly import MonicPoly, boxtimes, cumulants, moments, profile_of, type_weight
from .partitions import (
    SetPartition,
    _iter_rgs,
    enumerate_partitions,
    merge_is_full,
    type_block_count,
    type_mobius,
    type_set_partition_count,
)
from .permutations import snc_type_census


@dataclass(frozen=True)
class WeightSequences:
    """Weight sequences (u_j), (v_j); a partition weighs prod_V u_{|V|}."""

    u: tuple
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(Fraction(x) for x in self.u))
        object.__setattr__(self, "v", tuple(Fraction(x) for x in self.v))

    def u_of(self, counts) -> Fraction:
        return type_weight(self.u, counts)

    def v_of(self, counts) -> Fraction:
        return type_weight(self.v, counts)


@dataclass(frozen=True)
class GenusLayer:
    """One term s_k^{(g)} of the genus decomposition at (n, k)."""

    n: int
    k: int
    g: int
    value: Fraction


@dataclass(frozen=True)
class OneOverDPoly:
    """A polynomial in the formal variable 1/d with exact rational coefficients.

    coeffs[j] multiplies (1/d)^j; trailing zeros are normalized away.
    """

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            coeffs = (Fraction(0),)
        object.__setattr__(self, "coeffs", coeffs)

    def coefficient(self, j) -> Fraction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Fraction(0)

    def evaluate(self, d) -> Fraction:
        inv = Fraction(1, 1) / Fraction(d)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * inv + c
        return acc

    def __str__(self):
        if all(c == 0 for c in self.coeffs):
            return "0"
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            body = str(mag) if mag.denominator == 1 else f"({mag})"
            if j == 1:
                body += "/d"
            elif j > 1:
                body += f"/d^{j}"
            terms.append(("-" if c < 0 else "+", body))
        sign, head = terms[0]
        text = ("-" if sign == "-" else "") + head
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


# ---------------------------------------------------------------------------
# cached join census over P(n) x P(n), grouped by block-size type

@lru_cache(maxsize=None)
def _partition_rows(n):
    """(masks, type counts) for every partition of [n], enumeration order."""
    rows = []
    for rgs in _iter_rgs(n):
        nb = max(rgs) + 1
        masks = [0] * nb
        sizes = [0] * nb
        for i, b in enumerate(rgs):
            masks[b] |= 1 << i
            sizes[b] += 1
        counts = [0] * n
        for s in sizes:
            counts[s - 1] += 1
        rows.append((tuple(masks), tuple(counts)))
    return tuple(rows)


@lru_cache(maxsize=None)
def _join_census(n):
    """For each type s: {type t: number of tau of type t with sigma_rep v tau = 1_n}.

    One representative sigma per type suffices: relabeling [n] carries any
    sigma of type s onto any other while permuting the admissible tau of
    each type among themselves.
    """
    rows = _partition_rows(n)
    reps = {}
    for masks, counts in rows:
        if counts not in reps:
            reps[counts] = masks
    census = {}
    for s, rep in reps.items():
        row = {}
        for masks, counts in rows:
            if merge_is_full(rep, masks):
                row[counts] = row.get(counts, 0) + 1
        census[s] = row
    return census


def _pair_sum(n, d, uprofile, vprofile, k=None):
    """sum d^{|s|+|t|} mu mu u_s v_t over join-to-top type pairs.

    ``k`` restricts to |s|+|t| = n+1-k; ``d`` may be None for the bare sum
    without d powers (the genus-decomposition left side).
    """
    census = _join_census(n)
    total = Fraction(0)
    for s, row in census.items():
        bs = type_block_count(s)
        us = type_weight(uprofile, s)
        if us == 0:
            continue
        left = type_set_partition_count(s) * type_mobius(s) * us
        if d is not None:
            left *= d ** bs
        for t, count in row.items():
            bt = type_block_count(t)
            if k is not None and bs + bt != n + 1 - k:
                continue
            term = count * type_mobius(t) * left * type_weight(vprofile, t)
            if d is not None:
                term *= d ** bt
            total += term
    return total


def _ones(n):
    return (Fraction(1),) * n


def _require_profile(values, n, what):
    prof = profile_of(values)
    if len(prof) < n:
        raise DomainError(f"{what} needs at least {n} entries, got {len(prof)}")
    return prof


# ---------------------------------------------------------------------------
# the product formulas and the moment-cumulant formula

def product_cumulant_rhs(n, d, kp, kq, cap=None) -> Fraction:
    """Partition-sum side of the cumulant formula for p boxtimes_d q.

    Evaluates (-1)^{n-1}/(d^{n+1}(n-1)!) * sum over sigma v tau = 1_n of
    d^{|sigma|+|tau|} mu mu kappa_sigma(p) kappa_tau(q), exactly.
    """
    caps.require(n, caps.PAIR_CAP if cap is None else cap, "partition-pair sum")
    kp = _require_profile(kp, n, "cumulants of p")
    kq = _require_profile(kq, n, "cumulants of q")
    total = _pair_sum(n, d, kp, kq)
    sign = -1 if n % 2 == 0 else 1
    return Fraction(sign, d ** (n + 1) * factorial(n - 1)) * total


def product_moment_rhs(n, d, kp, mq, cap=None) -> Fraction:
    """Partition-sum side of the moment formula for p boxtimes_d q.

    Same sum with m_tau(q) in place of kappa_tau(q).
    """
    caps.require(n, caps.PAIR_CAP if cap is None else cap, "partition-pair sum")
    kp = _require_profile(kp, n, "cumulants of p")
    mq = _require_profile(mq, n, "moments of q")
    total = _pair_sum(n, d, kp, mq)
    sign = -1 if n % 2 == 0 else 1
    return Fraction(sign, d ** (n + 1) * factorial(n - 1)) * total


def moment_cumulant_eval(n, d, k, cap=None) -> Fraction:
    """m_n at concrete degree d from the cumulant profile, by the double
    partition sum (the v-side weights are all 1)."""
    caps.require(n, caps.PAIR_CAP if cap is None else cap, "partition-pair sum")
    kv = _require_profile(k, n, "cumulant profile")
    total = _pair_sum(n, d, kv, _ones(n))
    sign = -1 if n % 2 == 0 else 1
    return Fraction(sign, d ** (n + 1) * factorial(n - 1)) * total


def order_d_expansion(n, k, cap=None) -> OneOverDPoly:
    """m_n as an exact polynomial in 1/d for a fixed cumulant profile.

    Collects d^{|sigma|+|tau|-n-1} by exponent; the constant term is the
    non-crossing sum sum_{NC(n)} kappa_pi and the (1/d)^1 coefficient is
    the annular correction -(n/2) sum_{r+s=n} alpha_{r,s}/(rs).
    """
    caps.require(n, caps.PAIR_CAP if cap is None else cap, "partition-pair sum")
    kv = _require_profile(k, n, "cumulant profile")
    census = _join_census(n)
    buckets = [Fraction(0)] * n
    for s, row in census.items():
        bs = type_block_count(s)
        us = type_weight(kv, s)
        if us == 0:
            continue
        left = type_set_partition_count(s) * type_mobius(s) * us
        for t, count in row.items():
            power = n + 1 - bs - type_block_count(t)
            buckets[power] += count * type_mobius(t) * left
    sign = -1 if n % 2 == 0 else 1
    scale = Fraction(sign, factorial(n - 1))
    return OneOverDPoly(tuple(scale * b for b in buckets))


def compound_poisson_check(p: MonicPoly, cap=None) -> bool:
    """True iff m_n(p) = kappa_n(p boxtimes_d L) for all n <= d, where L is
    the unit Laguerre polynomial (all cumulants 1)."""
    caps.require(p.d, caps.CUMULANT_CAP if cap is None else cap, "compound Poisson check")
    lifted = cumulants(boxtimes(p, compound_poisson_witness(p.d)))
    direct = moments(p, p.d)
    return tuple(lifted) == tuple(direct)


# ---------------------------------------------------------------------------
# genus decomposition

def genus_lhs(n, k, w: WeightSequences, cap=None) -> Fraction:
    """Left side of the genus decomposition at order k:

    (-1)^{n-1}/(n-1)! * sum over sigma v tau = 1_n with
    |sigma|+|tau| = n+1-k of mu mu u_sigma v_tau.
    """
    if not 0 <= k <= n - 1:
        raise DomainError(f"order k must lie in 0..{n - 1}, got {k}")
    caps.require(n, caps.PAIR_CAP if cap is None else cap, "partition-pair sum")
    if len(w.u) < n or len(w.v) < n:
        raise DomainError(f"weight sequences must reach index {n}")
    total = _pair_sum(n, None, w.u, w.v, k=k)
    sign = -1 if n % 2 == 0 else 1
    return Fraction(sign, factorial(n - 1)) * total


def genus_layer(n, k, g, w: WeightSequences, cap=None) -> GenusLayer:
    """The layer s_k^{(g)}: a weighted sweep over the permutations of genus
    g relative to every canonical gamma_zeta with k+1-2g cycles.

    Each cycle type zeta contributes n/(prod zeta_i * prod t_i!) times the
    sum of u_{f(alpha)} v_{f(alpha^{-1} gamma_zeta)}.
    """
    if not 0 <= k <= n - 1:
        raise DomainError(f"order k must lie in 0..{n - 1}, got {k}")
    if not 0 <= g <= k // 2:
        raise DomainError(f"genus must lie in 0..{k // 2} for k={k}, got {g}")
    default_cap = caps.GENUS_CAP_K01 if k <= 1 else caps.GENUS_CAP_K2
    if cap is None:
        cap = default_cap
    elif cap > default_cap:
        warnings.warn(f"genus layer cap raised to {cap} (default {default_cap}); "
                      "the S_n sweep grows factorially", stacklevel=2)
    caps.require(n, cap, "genus layer sweep")
    if len(w.u) < n or len(w.v) < n:
        raise DomainError(f"weight sequences must reach index {n}")
    want_cycles = k + 1 - 2 * g
    total = Fraction(0)
    for zeta in _cycle_types_with_parts(n, want_cycles):
        census = snc_type_census(zeta).get(g)
        if not census:
            continue
        inner = Fraction(0)
        for (ta, tb), count in census.items():
            uv = w.u_of(ta) * w.v_of(tb)
            if uv:
                inner += count * uv
        denom = 1
        mult = {}
        for part in zeta:
            denom *= part
            mult[part] = mult.get(part, 0) + 1
        for t in mult.values():
            denom *= factorial(t)
        total += Fraction(n, denom) * inner
    return GenusLayer(n, k, g, total)


@lru_cache(maxsize=None)
def _cycle_types_with_parts(n, m):
    out = []

    def rec(remaining, largest, acc):
        if len(acc) == m:
            if remaining == 0:
                out.append(acc)
            return
        if remaining <= 0:
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(remaining - part, part, acc + (part,))

    rec(n, n, ())
    return tuple(out)


# ---------------------------------------------------------------------------
# Mobius algebra of the partition lattice

def mobius_algebra_check(n, f, g) -> bool:
    """Verify F(f*g) = F(f)F(g) on P(n), where (f*g)(pi) sums f(s1)g(s2)
    over joins s1 v s2 = pi and F sums over the order ideal below pi.

    ``f`` and ``g`` may be callables on SetPartition or dicts keyed by it.
    Exhaustive over P(n); capped at n = 6.
    """
    caps.require(n, 6, "Mobius algebra check")
    fv = _as_function(f)
    gv = _as_function(g)
    parts = list(enumerate_partitions(n))
    index = {p.rgs: i for i, p in enumerate(parts)}
    masks = [p.block_masks for p in parts]
    fvals = [Fraction(fv(p)) for p in parts]
    gvals = [Fraction(gv(p)) for p in parts]

    star = [Fraction(0)] * len(parts)
    from .partitions import merge_components, _partition_from_masks
    for i, pi_masks in enumerate(masks):
        if fvals[i] == 0:
            continue
        for j, tj_masks in enumerate(masks):
            if gvals[j] == 0:
                continue
            comp = merge_components(pi_masks, tj_masks)
            target = _partition_from_masks(n, comp)
            star[index[target.rgs]] += fvals[i] * gvals[j]

    below = _leq_table(n)
    for i in range(len(parts)):
        lhs = sum((star[j] for j in below[i]), Fraction(0))
        rf = sum((fvals[j] for j in below[i]), Fraction(0))
        rg = sum((gvals[j] for j in below[i]), Fraction(0))
        if lhs != rf * rg:
            return False
    return True


def _as_function(f):
    if callable(f):
        return f
    return lambda p: f[p]


@lru_cache(maxsize=None)
def _leq_table(n):
    """below[i] = indices j with partition_j <= partition_i (refinement order)."""
    rows = _partition_rows(n)
    below = []
    for i, (pi_masks, _) in enumerate(rows):
        idxs = []
        for j, (sj_masks, _) in enumerate(rows):
            if all(any(sb & pb == sb for pb in pi_masks) for sb in sj_masks):
                idxs.append(j)
        below.append(tuple(idxs))
    return below


# ---------------------------------------------------------------------------
# type-pair counting formulas

def _check_type_pair(s, t):
    if s.n != t.n:
        raise DomainError(f"types live on different ground sets: {s.n} vs {t.n}")
    if s.block_count + t.block_count != s.n + 1:
        raise DomainError(
            f"type pair needs |s| + |t| = n + 1; got {s.block_count} + "
            f"{t.block_count} with n = {s.n}")
    caps.require(s.n, 9, "type-pair count")


def count_A(s, t) -> int:
    """Number of non-crossing partitions of type s whose Kreweras complement
    has type t: n (|s|-1)! (|t|-1)! / (prod s_i! prod t_i!)."""
    _check_type_pair(s, t)
    num = s.n * factorial(s.block_count - 1) * factorial(t.block_count - 1)
    den = 1
    for c in s.counts:
        den *= factorial(c)
    for c in t.counts:
        den *= factorial(c)
    value = Fraction(num, den)
    if value.denominator != 1:
        raise RuntimeError(f"count_A({s.counts}, {t.counts}) is not integral")
    return int(value)


def count_B(s, t) -> int:
    """Number of pairs (sigma, tau) of types (s, t) with sigma v tau = 1_n:

    n! (|s|-1)! (|t|-1)! / (prod s_i! prod t_i! * prod ((i-1)!)^{s_i}
    * prod ((i-1)!)^{t_i}).
    """
    _check_type_pair(s, t)
    num = factorial(s.n) * factorial(s.block_count - 1) * factorial(t.block_count - 1)
    den = 1
    for counts in (s.counts, t.counts):
        for i, c in enumerate(counts):
            if c:
                den *= factorial(c) * factorial(i) ** c
    value = Fraction(num, den)
    if value.denominator != 1:
        raise RuntimeError(f"count_B({s.counts}, {t.counts}) is not integral")
    return int(value)


# ---------------------------------------------------------------------------
# seeded rational fuzz inputs (numerators in [-9, 9], denominators in {1,2,3})

def seeded_rational(rng) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.choice((1, 2, 3)))


def seeded_profile(rng, n) -> tuple:
    return tuple(seeded_rational(rng) for _ in range(n))


def seeded_poly(rng, d) -> MonicPoly:
    return MonicPoly(d, (Fraction(1),) + seeded_profile(rng, d))


def seeded_weights(rng, n) -> WeightSequences:
    return WeightSequences(seeded_profile(rng, n), seeded_profile(rng, n))
