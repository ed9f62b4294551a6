"""Identity verification drivers behind the CLI ``verify`` subcommand.

Each driver runs one identity over a seeded batch of exact-rational
inputs, comparing two independently computed sides, and returns a report
dict: ``{identity, parameters, cases, all_passed, first_failure}``.
Values are exact, so a case either matches bit-for-bit or it fails;
witness values are attached to failures (and to every case when verbose).
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import asymptotics, identities
from .errors import DomainError
from .families import FamilySpec
from .ffpoly import boxtimes, cumulants, moments
from .identities import (
    WeightSequences,
    count_A,
    count_B,
    genus_layer,
    genus_lhs,
    mobius_algebra_check,
    order_d_expansion,
    product_cumulant_rhs,
    product_moment_rhs,
    seeded_poly,
    seeded_profile,
    seeded_weights,
)
from .partitions import (
    PartitionType,
    enumerate_noncrossing,
    enumerate_partitions,
    kreweras,
    merge_is_full,
    partition_type,
)
from .permutations import annular_kreweras, enumerate_annular, orbit_partition


def _case(ok, detail, verbose, cases, failures):
    entry = dict(detail)
    entry["ok"] = ok
    if ok and not verbose:
        entry = {k: entry[k] for k in entry if k not in ("lhs", "rhs")}
    cases.append(entry)
    if not ok:
        failures.append(entry)
    return ok


def _report(identity, parameters, cases, failures):
    report = {
        "identity": identity,
        "parameters": parameters,
        "cases": cases,
        "all_passed": not failures,
    }
    if failures:
        report["first_failure"] = failures[0]
    return report


def _product_driver(identity, moment_side, d, n, seed, cases_per_d, verbose):
    ds = [d] if d is not None else list(range(2, 9))
    rng = random.Random(seed)
    cases, failures = [], []
    for dd in ds:
        for case in range(cases_per_d):
            p = seeded_poly(rng, dd)
            q = seeded_poly(rng, dd)
            kp = cumulants(p)
            conv = boxtimes(p, q)
            if moment_side:
                side = moments(q, dd)
                direct = moments(conv, dd)
            else:
                side = cumulants(q)
                direct = cumulants(conv)
            orders = range(1, dd + 1) if n is None else [min(n, dd)]
            for nn in orders:
                if moment_side:
                    rhs = product_moment_rhs(nn, dd, kp, side)
                else:
                    rhs = product_cumulant_rhs(nn, dd, kp, side)
                lhs = direct.nth(nn)
                _case(lhs == rhs,
                      {"d": dd, "case": case, "n": nn,
                       "lhs": str(lhs), "rhs": str(rhs)},
                      verbose, cases, failures)
    params = {"d": ds if len(ds) > 1 else ds[0], "n": n, "cases_per_d": cases_per_d}
    return _report(identity, params, cases, failures)


def _nc_layer_driver(identity, n_max, seed, weight_pairs, verbose):
    rng = random.Random(seed)
    cases, failures = [], []
    for n in range(2, n_max + 1):
        nc_pairs = [(partition_type(p).counts, partition_type(kreweras(p)).counts)
                    for p in enumerate_noncrossing(n)]
        for case in range(weight_pairs):
            w = seeded_weights(rng, n)
            direct = sum((w.u_of(s) * w.v_of(t) for s, t in nc_pairs), Fraction(0))
            lhs = genus_lhs(n, 0, w)
            _case(lhs == direct,
                  {"n": n, "case": case, "lhs": str(lhs), "rhs": str(direct)},
                  verbose, cases, failures)
    return _report(identity, {"n_max": n_max, "weight_pairs": weight_pairs},
                   cases, failures)


def _annular_layer_driver(identity, n_max, seed, weight_pairs, verbose):
    rng = random.Random(seed)
    cases, failures = [], []
    for n in range(2, n_max + 1):
        annular = []
        for r in range(1, n):
            s = n - r
            pairs = [(partition_type(orbit_partition(a)).counts,
                      partition_type(orbit_partition(annular_kreweras(a, r, s))).counts)
                     for a in enumerate_annular(r, s)]
            annular.append((r, s, pairs))
        for case in range(weight_pairs):
            w = seeded_weights(rng, n)
            acc = Fraction(0)
            for r, s, pairs in annular:
                inner = sum((w.u_of(ta) * w.v_of(tb) for ta, tb in pairs), Fraction(0))
                acc += inner / (r * s)
            direct = -Fraction(n, 2) * acc
            lhs = genus_lhs(n, 1, w)
            _case(lhs == direct,
                  {"n": n, "case": case, "lhs": str(lhs), "rhs": str(direct)},
                  verbose, cases, failures)
    return _report(identity, {"n_max": n_max, "weight_pairs": weight_pairs},
                   cases, failures)


def _genus_driver(identity, n_max, seed, weight_pairs, verbose):
    rng = random.Random(seed)
    cases, failures = [], []
    for n in range(2, n_max + 1):
        for case in range(weight_pairs):
            w = seeded_weights(rng, n)
            for k in range(n):
                lhs = genus_lhs(n, k, w)
                sign = -1 if k % 2 else 1
                rhs = sign * sum((genus_layer(n, k, g, w).value
                                  for g in range(k // 2 + 1)), Fraction(0))
                _case(lhs == rhs,
                      {"n": n, "k": k, "case": case, "lhs": str(lhs), "rhs": str(rhs)},
                      verbose, cases, failures)
    return _report(identity, {"n_max": n_max, "weight_pairs": weight_pairs},
                   cases, failures)


def _first_order_driver(identity, n_max, seed, random_profiles, verbose):
    rng = random.Random(seed)
    profiles = [("hermite", FamilySpec("hermite").limit_cumulants(n_max))]
    for lam in (Fraction(1, 3), Fraction(1), Fraction(2)):
        profiles.append((f"laguerre({lam})",
                         FamilySpec("laguerre", lam=lam).limit_cumulants(n_max)))
    for i in range(random_profiles):
        profiles.append((f"random-{i}", seeded_profile(rng, n_max)))
    cases, failures = [], []
    for label, prof in profiles:
        for n in range(2, n_max + 1):
            coeff = order_d_expansion(n, prof).coefficient(1)
            acc = Fraction(0)
            for r in range(1, n):
                acc += asymptotics.alpha_annular(prof, r, n - r) / (r * (n - r))
            annular = -Fraction(n, 2) * acc
            _case(coeff == annular,
                  {"profile": label, "n": n, "lhs": str(coeff), "rhs": str(annular)},
                  verbose, cases, failures)
    return _report(identity, {"n_max": n_max, "random_profiles": random_profiles},
                   cases, failures)


def _poisson_driver(identity, d, seed, case_count, verbose):
    rng = random.Random(seed)
    ds = [d] if d is not None else list(range(1, 9))
    cases, failures = [], []
    for dd in ds:
        for case in range(case_count):
            p = seeded_poly(rng, dd)
            _case(identities.compound_poisson_check(p),
                  {"d": dd, "case": case}, verbose, cases, failures)
    return _report(identity, {"d": ds if len(ds) > 1 else ds[0], "cases": case_count},
                   cases, failures)


def _mobius_driver(identity, n_max, seed, case_count, verbose):
    rng = random.Random(seed)
    cases, failures = [], []
    for n in range(1, n_max + 1):
        parts = list(enumerate_partitions(n))
        for case in range(case_count):
            f = {p: identities.seeded_rational(rng) for p in parts}
            g = {p: identities.seeded_rational(rng) for p in parts}
            _case(mobius_algebra_check(n, f, g),
                  {"n": n, "case": case}, verbose, cases, failures)
    return _report(identity, {"n_max": n_max, "cases": case_count}, cases, failures)


def _admissible_type_pairs(n):
    from .partitions import type_vectors
    for s in type_vectors(n):
        for t in type_vectors(n):
            if sum(s) + sum(t) == n + 1:
                yield PartitionType(n, s), PartitionType(n, t)


def _count_a_driver(identity, n_max, verbose):
    cases, failures = [], []
    for n in range(1, n_max + 1):
        found = {}
        for p in enumerate_noncrossing(n):
            key = (partition_type(p).counts, partition_type(kreweras(p)).counts)
            found[key] = found.get(key, 0) + 1
        for s, t in _admissible_type_pairs(n):
            formula = count_A(s, t)
            brute = found.get((s.counts, t.counts), 0)
            _case(formula == brute,
                  {"n": n, "s": list(s.counts), "t": list(t.counts),
                   "lhs": str(formula), "rhs": str(brute)},
                  verbose, cases, failures)
    return _report(identity, {"n_max": n_max}, cases, failures)


def _count_b_driver(identity, n_max, verbose):
    cases, failures = [], []
    for n in range(1, n_max + 1):
        rows = [(p.block_masks, partition_type(p).counts)
                for p in enumerate_partitions(n)]
        found = {}
        for masks_a, ta in rows:
            for masks_b, tb in rows:
                if merge_is_full(masks_a, masks_b):
                    found[(ta, tb)] = found.get((ta, tb), 0) + 1
        for s, t in _admissible_type_pairs(n):
            formula = count_B(s, t)
            brute = found.get((s.counts, t.counts), 0)
            _case(formula == brute,
                  {"n": n, "s": list(s.counts), "t": list(t.counts),
                   "lhs": str(formula), "rhs": str(brute)},
                  verbose, cases, failures)
    return _report(identity, {"n_max": n_max}, cases, failures)


def _second_order_driver(identity, n_max, seed, random_profiles, verbose):
    rng = random.Random(seed)
    profiles = [("semicircle", FamilySpec("hermite").limit_cumulants(n_max)),
                ("free-poisson(1)", FamilySpec("laguerre", lam=1).limit_cumulants(n_max))]
    for i in range(random_profiles):
        profiles.append((f"random-{i}", seeded_profile(rng, n_max)))
    cases, failures = [], []
    for label, prof in profiles:
        ok = asymptotics.second_order_functional_check(prof, n_max)
        _case(ok, {"profile": label, "order": n_max}, verbose, cases, failures)
    return _report(identity, {"order": n_max, "random_profiles": random_profiles},
                   cases, failures)


IDENTITY_DEFAULTS = {
    "thm1.1-cumulant": {"n": None, "d": None, "cases": 200},
    "thm1.1-moment": {"n": None, "d": None, "cases": 200},
    "lemma3.3": {"n": 7, "cases": 50},
    "lemma4.5": {"n": 7, "cases": 50},
    "thm4.3": {"n": 7, "cases": 50},
    "thm1.3": {"n": 8, "cases": 20},
    "lemma3.2": {"d": None, "cases": 25},
    "mobius-algebra": {"n": 5, "cases": 5},
    "count-A": {"n": 7},
    "count-B": {"n": 7},
    "lemma2.1": {"n": 8, "cases": 1},
}


def run_identity(identity, n=None, d=None, seed=0, cases=None, verbose=False) -> dict:
    """Run one named identity check and return its report dict."""
    if identity not in IDENTITY_DEFAULTS:
        known = ", ".join(sorted(IDENTITY_DEFAULTS))
        raise DomainError(f"unknown identity {identity!r}; known: {known}")
    defaults = IDENTITY_DEFAULTS[identity]
    n = defaults.get("n") if n is None else n
    d = defaults.get("d") if d is None else d
    cases = defaults.get("cases") if cases is None else cases
    if identity == "thm1.1-cumulant":
        report = _product_driver(identity, False, d, n, seed, cases, verbose)
    elif identity == "thm1.1-moment":
        report = _product_driver(identity, True, d, n, seed, cases, verbose)
    elif identity == "lemma3.3":
        report = _nc_layer_driver(identity, n, seed, cases, verbose)
    elif identity == "lemma4.5":
        report = _annular_layer_driver(identity, n, seed, cases, verbose)
    elif identity == "thm4.3":
        report = _genus_driver(identity, n, seed, cases, verbose)
    elif identity == "thm1.3":
        report = _first_order_driver(identity, n, seed, cases, verbose)
    elif identity == "lemma3.2":
        report = _poisson_driver(identity, d, seed, cases, verbose)
    elif identity == "mobius-algebra":
        report = _mobius_driver(identity, n, seed, cases, verbose)
    elif identity == "count-A":
        report = _count_a_driver(identity, n, verbose)
    elif identity == "count-B":
        report = _count_b_driver(identity, n, verbose)
    else:
        report = _second_order_driver(identity, n, seed, 0, verbose)
    report["seed"] = seed
    return report
