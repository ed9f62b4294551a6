"""Symmetric-group machinery for the genus expansion.

Permutations act on {1..n} and compose right-to-left: ``compose(a, b)``
is the map i -> a(b(i)), b applied first.  Every expression of the form
a^{-1}·g below is evaluated under this convention; it is the one that
makes the orbit partition of a^{-1}·gamma_n equal the Kreweras
complement of the orbit partition of a, which the test suite pins down.

The genus of a relative to g (for a pair generating a transitive
subgroup) comes from the cycle-count form of Euler's formula:

    #(a) + #(a^{-1} g) + #(g) = n + 2(1 - genus).

``enumerate_snc`` lists the permutations of a prescribed genus relative
to the canonical permutation gamma_zeta of a cycle type zeta; it is a
full S_n sweep with cheap pruning, intended as correctness-grade
machinery (and as the oracle for anything faster).
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from . import caps
from .errors import DimensionMismatch, DomainError
from .partitions import SetPartition, merge_is_full


class Permutation:
    """An element of S_n, stored as the image tuple (alpha(1), ..., alpha(n))."""

    __slots__ = ("n", "image")

    def __init__(self, image):
        image = tuple(image)
        n = len(image)
        if n == 0:
            raise DomainError("permutations of the empty set are not supported")
        if sorted(image) != list(range(1, n + 1)):
            raise DomainError(f"not a bijection of 1..{n}: {image}")
        self.n = n
        self.image = image

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n, cycles):
        """Build from an iterable of cycles; unlisted elements are fixed."""
        image = list(range(1, n + 1))
        seen = set()
        for cyc in cycles:
            cyc = tuple(cyc)
            for e in cyc:
                if not 1 <= e <= n:
                    raise DomainError(f"cycle element {e} outside 1..{n}")
                if e in seen:
                    raise DomainError(f"element {e} appears in two cycles")
                seen.add(e)
            for i, e in enumerate(cyc):
                image[e - 1] = cyc[(i + 1) % len(cyc)]
        return cls(image)

    @classmethod
    def from_cycle_string(cls, text, n=None):
        """Parse cycle notation like ``"(1,7,4)(2,5)(3,6)"``.

        Fixed points may be omitted when ``n`` is given; otherwise n is
        the largest element mentioned.
        """
        body = text.strip().replace(" ", "")
        if not re.fullmatch(r"(\(\d+(,\d+)*\))+", body):
            raise DomainError(f"cannot parse cycle notation {text!r}")
        cycles = [tuple(int(x) for x in grp.split(","))
                  for grp in re.findall(r"\(([\d,]+)\)", body)]
        size = max(max(c) for c in cycles)
        if n is None:
            n = size
        elif n < size:
            raise DomainError(f"cycles mention {size} but n={n}")
        return cls.from_cycles(n, cycles)

    def __call__(self, i):
        return self.image[i - 1]

    def inverse(self):
        inv = [0] * self.n
        for i, v in enumerate(self.image, start=1):
            inv[v - 1] = i
        return Permutation(inv)

    def cycles(self):
        """Cycles as tuples, each starting at its least element, by least element."""
        seen = [False] * self.n
        out = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cyc = []
            j = start
            while not seen[j - 1]:
                seen[j - 1] = True
                cyc.append(j)
                j = self.image[j - 1]
            out.append(tuple(cyc))
        return tuple(out)

    @property
    def cycle_count(self):
        return len(self.cycles())

    def cycle_type(self):
        return CycleType(tuple(sorted((len(c) for c in self.cycles()), reverse=True)))

    def orbit_partition(self) -> SetPartition:
        """The partition f(alpha) whose blocks are the cycles as sets."""
        rgs = [-1] * self.n
        nb = 0
        for start in range(1, self.n + 1):
            if rgs[start - 1] != -1:
                continue
            j = start
            while rgs[j - 1] == -1:
                rgs[j - 1] = nb
                j = self.image[j - 1]
            nb += 1
        return SetPartition(rgs)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def __str__(self):
        return "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles())

    def __repr__(self):
        return f"Permutation({self})"


@dataclass(frozen=True)
class CycleType:
    """An integer partition zeta of n, parts weakly decreasing."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts or any(p < 1 for p in parts):
            raise DomainError(f"cycle type needs positive parts, got {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainError(f"cycle type parts must be weakly decreasing: {parts}")

    @property
    def n(self):
        return sum(self.parts)

    @property
    def part_count(self):
        return len(self.parts)

    def multiplicities(self):
        """t_i = number of parts equal to i, as a dict."""
        return dict(Counter(self.parts))


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Right-to-left composition: i -> a(b(i))."""
    if a.n != b.n:
        raise DimensionMismatch(f"compose on different ground sets: {a.n} vs {b.n}")
    return Permutation(tuple(a.image[v - 1] for v in b.image))


def orbit_partition(a: Permutation) -> SetPartition:
    return a.orbit_partition()


def canonical_gamma(zeta) -> Permutation:
    """The canonical permutation (1..z1)(z1+1..z1+z2)... of type zeta."""
    if not isinstance(zeta, CycleType):
        zeta = CycleType(tuple(zeta))
    cycles = []
    start = 1
    for part in zeta.parts:
        cycles.append(tuple(range(start, start + part)))
        start += part
    return Permutation.from_cycles(zeta.n, cycles)


def gamma_pair(r: int, s: int) -> Permutation:
    """The two-cycle permutation (1,...,r)(r+1,...,r+s), any positive r, s."""
    if r < 1 or s < 1:
        raise DomainError(f"annulus sides must be positive, got ({r}, {s})")
    return Permutation.from_cycles(r + s, [tuple(range(1, r + 1)),
                                           tuple(range(r + 1, r + s + 1))])


def is_transitive_pair(a: Permutation, g: Permutation) -> bool:
    """True iff the subgroup generated by a and g acts transitively on [n]."""
    if a.n != g.n:
        raise DimensionMismatch(f"transitivity on different ground sets: {a.n} vs {g.n}")
    return _transitive(a.image, g.image)


def _transitive(img_a, img_g):
    n = len(img_a)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for i in range(n):
        for j in (img_a[i] - 1, img_g[i] - 1):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
                comps -= 1
    return comps == 1


def _cycle_count(img):
    n = len(img)
    seen = [False] * n
    count = 0
    for start in range(n):
        if seen[start]:
            continue
        count += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = img[j] - 1
    return count


def _cycle_type_counts(img):
    # counts[i-1] = number of cycles of length i; matches PartitionType.counts
    n = len(img)
    seen = [False] * n
    counts = [0] * n
    for start in range(n):
        if seen[start]:
            continue
        size = 0
        j = start
        while not seen[j]:
            seen[j] = True
            size += 1
            j = img[j] - 1
        counts[size - 1] += 1
    return tuple(counts)


def relative_genus(a: Permutation, g: Permutation) -> int:
    """Genus of a relative to g, via the Euler cycle-count formula.

    Defined only for transitive pairs; the result is a non-negative
    integer and the parity check is defensive.
    """
    if not is_transitive_pair(a, g):
        raise DomainError("relative genus needs a transitive pair")
    inv = a.inverse()
    beta = compose(inv, g)
    twice = a.n + 2 - a.cycle_count - beta.cycle_count - g.cycle_count
    if twice < 0 or twice % 2:
        raise RuntimeError(f"Euler parity violated: n={a.n}, residue {twice}")
    return twice // 2


def enumerate_snc(zeta, genus, cap=None):
    """All alpha in S_n transitive with gamma_zeta and of the given relative genus.

    Full S_n sweep in lexicographic image order, pruned by the cycle-count
    budget that the Euler formula forces.
    """
    if not isinstance(zeta, CycleType):
        zeta = CycleType(tuple(zeta))
    if genus < 0:
        raise DomainError(f"genus must be non-negative, got {genus}")
    n = zeta.n
    caps.require(n, caps.SNC_CAP if cap is None else cap, "generalized non-crossing sweep")
    gimg = canonical_gamma(zeta).image
    cg = zeta.part_count
    out = []
    for img in itertools.permutations(range(1, n + 1)):
        ca = _cycle_count(img)
        need = n + 2 - 2 * genus - cg - ca  # forced #(alpha^{-1} gamma)
        if need < 1 or need > n:
            continue
        inv = [0] * (n + 1)
        for i, v in enumerate(img, start=1):
            inv[v] = i
        beta = tuple(inv[gimg[i]] for i in range(n))
        if _cycle_count(beta) != need:
            continue
        if not _transitive(img, gimg):
            continue
        out.append(Permutation(img))
    return out


def enumerate_annular(r: int, s: int, cap=None):
    """The annular non-crossing permutations S_NC(r, s): genus 0, transitive
    relative to (1..r)(r+1..r+s)."""
    n = r + s
    caps.require(n, caps.SNC_CAP if cap is None else cap, "annular sweep")
    gimg = gamma_pair(r, s).image
    out = []
    for img in itertools.permutations(range(1, n + 1)):
        ca = _cycle_count(img)
        need = n - ca  # genus 0 with #gamma = 2
        if need < 1 or need > n:
            continue
        inv = [0] * (n + 1)
        for i, v in enumerate(img, start=1):
            inv[v] = i
        beta = tuple(inv[gimg[i]] for i in range(n))
        if _cycle_count(beta) != need:
            continue
        if not _transitive(img, gimg):
            continue
        out.append(Permutation(img))
    return out


def annular_kreweras(a: Permutation, r: int, s: int) -> Permutation:
    """Kreweras complement a^{-1}·gamma_{r,s} of an annular non-crossing a."""
    g = gamma_pair(r, s)
    if a.n != g.n:
        raise DimensionMismatch(f"permutation on {a.n} elements vs annulus ({r},{s})")
    if not is_transitive_pair(a, g) or relative_genus(a, g) != 0:
        raise DomainError(f"{a} is not annular non-crossing on the ({r},{s}) annulus")
    return compose(a.inverse(), g)


def type_count(zeta) -> int:
    """N_zeta = n! / (prod zeta_i * prod t_i!), the size of the conjugacy class."""
    if not isinstance(zeta, CycleType):
        zeta = CycleType(tuple(zeta))
    denom = 1
    for part in zeta.parts:
        denom *= part
    for t in zeta.multiplicities().values():
        denom *= factorial(t)
    return factorial(zeta.n) // denom


@lru_cache(maxsize=None)
def cycle_types(n):
    """All cycle types zeta of n, parts descending, in a fixed order."""
    out = []

    def rec(remaining, largest, acc):
        if remaining == 0:
            out.append(CycleType(acc))
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(remaining - part, part, acc + (part,))

    rec(n, n, ())
    return tuple(out)


@lru_cache(maxsize=None)
def snc_type_census(zeta_parts):
    """Census of the S_n sweep relative to gamma_zeta, grouped by genus.

    Returns {genus: {(type_of_f(alpha), type_of_f(alpha^{-1} gamma)): count}}
    where types are block-size count vectors.  One sweep serves every
    weight evaluation afterwards, since the summands the genus layers use
    depend on alpha only through these two types.
    """
    zeta = CycleType(tuple(zeta_parts))
    n = zeta.n
    caps.require(n, caps.SNC_CAP, "generalized non-crossing sweep")
    gimg = canonical_gamma(zeta).image
    cg = zeta.part_count
    census = {}
    for img in itertools.permutations(range(1, n + 1)):
        if not _transitive(img, gimg):
            continue
        ta = _cycle_type_counts(img)
        inv = [0] * (n + 1)
        for i, v in enumerate(img, start=1):
            inv[v] = i
        beta = tuple(inv[gimg[i]] for i in range(n))
        tb = _cycle_type_counts(beta)
        ca = sum(ta)
        cb = sum(tb)
        twice = n + 2 - ca - cb - cg
        if twice < 0 or twice % 2:
            raise RuntimeError(f"Euler parity violated in census: zeta={zeta_parts}")
        bucket = census.setdefault(twice // 2, Counter())
        bucket[(ta, tb)] += 1
    return census
