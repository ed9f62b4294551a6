"""Set partitions of [n] = {1, ..., n} and their lattice structure.

A partition is held canonically as its restricted-growth string (RGS):
entry ``i`` (0-based) is the index of the block containing element ``i+1``,
blocks being numbered 0, 1, 2, ... in order of their least elements.  The
RGS gives O(n) equality and lets :func:`enumerate_partitions` emit P(n)
in lexicographic order.  The block-set view is derived on demand.

Elements are 1-based throughout the public interface.  The text form
used by the CLI and by test fixtures sorts blocks by least element with
elements ascending, e.g. ``{1,3}{2}{4}``.

Besides the lattice operations (join, the Mobius values mu(0_n, pi),
the non-crossing predicate and the Kreweras complement), the module
carries the block-size "type" bookkeeping shared by the partition-sum
machinery: a type is the tuple (s_1, ..., s_n) where s_i counts blocks
of size i, and several exact counting helpers are keyed on it.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from . import caps
from .errors import DimensionMismatch, DomainError


class SetPartition:
    """A partition of {1..n}, canonically a restricted-growth string."""

    __slots__ = ("n", "rgs", "_blocks", "_masks")

    def __init__(self, rgs):
        rgs = tuple(rgs)
        if not rgs:
            raise DomainError("partitions of the empty set are not supported")
        mx = -1
        for i, b in enumerate(rgs):
            if b < 0 or b > mx + 1:
                raise DomainError(f"not a restricted-growth string: {rgs}")
            if b == mx + 1:
                mx = b
        self.n = len(rgs)
        self.rgs = rgs
        self._blocks = None
        self._masks = None

    @classmethod
    def from_blocks(cls, n, blocks):
        """Build from an iterable of blocks (iterables of 1-based elements)."""
        assign = [-1] * n
        for block in blocks:
            for e in block:
                if not 1 <= e <= n:
                    raise DomainError(f"element {e} outside 1..{n}")
                if assign[e - 1] != -1:
                    raise DomainError(f"element {e} appears in two blocks")
                assign[e - 1] = 1
        if any(a == -1 for a in assign):
            raise DomainError("blocks do not cover {1..%d}" % n)
        # relabel blocks by least element to get the RGS
        rgs = [-1] * n
        order = sorted(blocks, key=min)
        for idx, block in enumerate(order):
            for e in block:
                rgs[e - 1] = idx
        return cls(rgs)

    @classmethod
    def zero(cls, n):
        """0_n, the partition into n singletons."""
        return cls(range(n))

    @classmethod
    def one(cls, n):
        """1_n, the one-block partition."""
        return cls([0] * n)

    @classmethod
    def from_string(cls, text):
        """Parse the canonical text form, e.g. ``"{1,3}{2}{4}"``."""
        body = text.strip()
        if not re.fullmatch(r"(\{\d+(,\d+)*\})+", body):
            raise DomainError(f"cannot parse partition {text!r}")
        blocks = [tuple(int(x) for x in grp.split(","))
                  for grp in re.findall(r"\{([\d,]+)\}", body)]
        n = max(max(b) for b in blocks)
        return cls.from_blocks(n, blocks)

    @property
    def blocks(self):
        """Blocks as tuples of ascending elements, ordered by least element."""
        if self._blocks is None:
            out = [[] for _ in range(max(self.rgs) + 1)]
            for i, b in enumerate(self.rgs):
                out[b].append(i + 1)
            self._blocks = tuple(tuple(b) for b in out)
        return self._blocks

    @property
    def block_masks(self):
        """Blocks as bitmasks (bit i-1 set for element i), least-element order."""
        if self._masks is None:
            out = [0] * (max(self.rgs) + 1)
            for i, b in enumerate(self.rgs):
                out[b] |= 1 << i
            self._masks = tuple(out)
        return self._masks

    @property
    def block_count(self):
        return max(self.rgs) + 1

    def __eq__(self, other):
        return isinstance(other, SetPartition) and self.rgs == other.rgs

    def __hash__(self):
        return hash(self.rgs)

    def __str__(self):
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)

    def __repr__(self):
        return f"SetPartition({self})"


@dataclass(frozen=True)
class PartitionType:
    """Block-size profile of a partition: counts[i-1] blocks of size i."""

    n: int
    counts: tuple

    def __post_init__(self):
        counts = tuple(self.counts)
        object.__setattr__(self, "counts", counts)
        if len(counts) != self.n or any(c < 0 for c in counts):
            raise DomainError(f"bad type vector {counts} for n={self.n}")
        if sum((i + 1) * c for i, c in enumerate(counts)) != self.n:
            raise DomainError(f"type {counts} does not weigh n={self.n}")

    @property
    def block_count(self):
        return sum(self.counts)


def _iter_rgs(n):
    """All restricted-growth strings of length n, in lexicographic order."""
    a = [0] * n
    m = [0] * n  # m[i] = max(a[:i]); position 0 is pinned to 0
    while True:
        yield tuple(a)
        i = n - 1
        while i > 0 and a[i] > m[i]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        top = m[i] if m[i] >= a[i] else a[i]
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = top


def enumerate_partitions(n, cap=None):
    """Yield every partition of [n] once, lexicographic in the RGS.

    The count is the n-th Bell number; ``n`` beyond the cap is refused.
    """
    if n < 1:
        raise DomainError(f"ground-set size must be positive, got {n}")
    caps.require(n, caps.PARTITION_CAP if cap is None else cap, "partition enumeration")
    for rgs in _iter_rgs(n):
        yield SetPartition(rgs)


def _nc_block_lists(elems):
    # Recursive first-block decomposition: the block through the minimum
    # splits the rest into independent gaps.
    if not elems:
        yield ()
        return
    first = elems[0]
    rest = elems[1:]
    for k in range(len(rest) + 1):
        for members in itertools.combinations(range(len(rest)), k):
            block = (first,) + tuple(rest[i] for i in members)
            segs = []
            prev = -1
            for i in members:
                segs.append(rest[prev + 1:i])
                prev = i
            segs.append(rest[prev + 1:])
            for combo in itertools.product(*[_nc_block_lists(s) for s in segs]):
                out = (block,)
                for part in combo:
                    out += part
                yield out


def enumerate_noncrossing(n, cap=None):
    """Yield the non-crossing partitions of [n] (Catalan(n) of them).

    Generated directly by the first-block decomposition, not by filtering
    P(n); the order is the recursion's and is deterministic.
    """
    if n < 1:
        raise DomainError(f"ground-set size must be positive, got {n}")
    caps.require(n, caps.NC_CAP if cap is None else cap, "non-crossing enumeration")
    for blocks in _nc_block_lists(tuple(range(1, n + 1))):
        yield SetPartition.from_blocks(n, blocks)


def merge_components(a_masks, b_masks):
    """Connected components of the union of two block systems, as bitmasks."""
    comp = list(a_masks)
    for mask in b_masks:
        merged = mask
        rest = []
        for c in comp:
            if c & merged:
                merged |= c
            else:
                rest.append(c)
        rest.append(merged)
        comp = rest
    return comp


def merge_is_full(a_masks, b_masks):
    """True iff the join of the two block systems is the one-block partition."""
    comp = list(a_masks)
    for mask in b_masks:
        merged = mask
        rest = []
        for c in comp:
            if c & merged:
                merged |= c
            else:
                rest.append(c)
        rest.append(merged)
        comp = rest
        if len(comp) == 1:
            return True
    return len(comp) == 1


def join(a: SetPartition, b: SetPartition) -> SetPartition:
    """Supremum a v b in P(n): finest partition coarser than both."""
    if a.n != b.n:
        raise DimensionMismatch(f"join on different ground sets: {a.n} vs {b.n}")
    comp = merge_components(a.block_masks, b.block_masks)
    return _partition_from_masks(a.n, comp)


def _partition_from_masks(n, masks):
    rgs = [0] * n
    order = sorted(masks, key=lambda m: (m & -m))  # sort blocks by least element
    for idx, m in enumerate(order):
        while m:
            low = m & -m
            rgs[low.bit_length() - 1] = idx
            m ^= low
    return SetPartition(rgs)


def mobius_zero(p: SetPartition) -> int:
    """Mobius value mu(0_n, p) = (-1)^(n-|p|) prod_V (|V|-1)! on P(n)."""
    sign = -1 if (p.n - p.block_count) % 2 else 1
    prod = 1
    for block in p.blocks:
        prod *= factorial(len(block) - 1)
    return sign * prod


def is_noncrossing(p: SetPartition) -> bool:
    """True iff no i<j<k<l has {i,k} and {j,l} in two distinct blocks."""
    last = {}
    for i, b in enumerate(p.rgs):
        last[b] = i
    stack = []
    opened = set()
    for i, b in enumerate(p.rgs):
        if b not in opened:
            opened.add(b)
            stack.append(b)
        elif stack[-1] != b:
            return False
        if last[b] == i:
            if stack[-1] != b:
                return False
            stack.pop()
    return True


def kreweras(p: SetPartition) -> SetPartition:
    """Kreweras complement of a non-crossing partition.

    Lifts p to the permutation whose cycles traverse each block in
    increasing order, composes (right-to-left) with the full cycle
    (1,2,...,n), and reads off the orbits.  Satisfies
    |p| + |Kr(p)| = n + 1.
    """
    if not is_noncrossing(p):
        raise DomainError(f"Kreweras complement needs a non-crossing partition, got {p}")
    n = p.n
    alpha = list(range(1, n + 1))
    for block in p.blocks:
        for i, e in enumerate(block):
            alpha[e - 1] = block[(i + 1) % len(block)]
    inv = [0] * (n + 1)
    for i, v in enumerate(alpha, start=1):
        inv[v] = i
    # beta = alpha^{-1} . gamma_n, applying gamma_n first
    beta = [inv[i + 1] if i < n else inv[1] for i in range(1, n + 1)]
    rgs = [-1] * n
    nb = 0
    for start in range(1, n + 1):
        if rgs[start - 1] != -1:
            continue
        j = start
        while rgs[j - 1] == -1:
            rgs[j - 1] = nb
            j = beta[j - 1]
        nb += 1
    return SetPartition(rgs)


def partition_type(p: SetPartition) -> PartitionType:
    """Block-size type (s_1, ..., s_n) of the partition."""
    counts = [0] * p.n
    for block in p.blocks:
        counts[len(block) - 1] += 1
    return PartitionType(p.n, tuple(counts))


# ---------------------------------------------------------------------------
# type-level counting helpers
#
# Many sums over P(n) only see a partition through its type, so they are
# evaluated type-by-type.  The helpers below are exact integer formulas.

def type_block_count(counts) -> int:
    return sum(counts)


@lru_cache(maxsize=None)
def _types_tuple(n):
    out = []

    def rec(remaining, largest, acc):
        if remaining == 0:
            counts = [0] * n
            for part in acc:
                counts[part - 1] += 1
            out.append(tuple(counts))
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(remaining - part, part, acc + (part,))

    rec(n, n, ())
    return tuple(out)


def type_vectors(n):
    """All block-size types of partitions of n (one per integer partition)."""
    return _types_tuple(n)


def type_set_partition_count(counts) -> int:
    """Number of set partitions of [n] with the given type."""
    n = sum((i + 1) * c for i, c in enumerate(counts))
    denom = 1
    for i, c in enumerate(counts):
        if c:
            denom *= factorial(i + 1) ** c * factorial(c)
    return factorial(n) // denom


def type_mobius(counts) -> int:
    """mu(0_n, pi) for any pi of this type."""
    n = sum((i + 1) * c for i, c in enumerate(counts))
    nb = sum(counts)
    sign = -1 if (n - nb) % 2 else 1
    prod = 1
    for i, c in enumerate(counts):
        if c:
            prod *= factorial(i) ** c
    return sign * prod


def type_factorial_product(counts) -> int:
    """prod_V |V|! over the blocks of any partition of this type."""
    prod = 1
    for i, c in enumerate(counts):
        if c:
            prod *= factorial(i + 1) ** c
    return prod
