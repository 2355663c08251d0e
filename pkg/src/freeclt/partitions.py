"""Set partitions and noncrossing partitions at desk scale.

Enumeration here is deliberately simple: restricted growth strings for
all partitions, a depth-first stack construction for the noncrossing
ones, and direct enumeration of (distinguished block, pairing) choices
for profile counts.  These routines are the trusted brute-force oracle
against which the moment-cumulant recursions and the linearization
matrix are checked, so they favour transparency over speed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

#: Ground sizes above this are refused by the enumeration oracle.
DEFAULT_MAX_GROUND_SIZE = 14

FLAVORS = ("classical", "free")


class SizeLimitError(ValueError):
    """An enumeration or matrix request exceeded its configured cap."""


def _check_flavor(flavor: str) -> None:
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}, got {flavor!r}")


def _check_cap(ground_size: int, max_ground_size) -> None:
    cap = DEFAULT_MAX_GROUND_SIZE if max_ground_size is None else max_ground_size
    if ground_size > cap:
        raise SizeLimitError(
            f"ground size {ground_size} exceeds the enumeration cap {cap}"
        )


@dataclass(frozen=True)
class Partition:
    """A partition of {1, ..., size} in canonical form.

    Blocks are tuples sorted internally, and the block list is sorted by
    least element.  Enumeration constructs instances directly in this
    form; use :meth:`from_blocks` to canonicalize and validate anything
    built by hand.
    """

    size: int
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, size: int, blocks) -> "Partition":
        canonical = sorted(tuple(sorted(block)) for block in blocks)
        seen = [e for block in canonical for e in block]
        if sorted(seen) != list(range(1, size + 1)):
            raise ValueError("blocks must partition {1, ..., size} exactly")
        return cls(size, tuple(canonical))

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(b) for b in self.blocks))


def is_noncrossing(partition: Partition) -> bool:
    """True iff no indices a < b < c < d have a, c in one block and b, d
    in a different block.

    Implemented as a single left-to-right scan: blocks must open and
    close like a well-nested bracket sequence, with an element outside
    the innermost open block witnessing a crossing.
    """
    ids = [0] * partition.size
    remaining = []
    for label, block in enumerate(partition.blocks):
        remaining.append(len(block))
        for e in block:
            ids[e - 1] = label
    return _ids_noncrossing(ids, remaining)


def _ids_noncrossing(ids, remaining) -> bool:
    # ids: block label per element, 0-indexed; remaining: counts per label,
    # consumed during the scan (pass a scratch copy).
    stack = []
    opened = [False] * len(remaining)
    for label in ids:
        if not opened[label]:
            opened[label] = True
            stack.append(label)
        elif stack[-1] != label:
            return False
        remaining[label] -= 1
        if remaining[label] == 0:
            stack.pop()
    return True


def _restricted_growth_strings(k: int) -> Iterator[list[int]]:
    """Yield every restricted growth string of length k.

    The yielded list is a reused buffer: copy it before storing.
    """
    a = [0] * k
    if k == 1:
        yield a
        return
    b = [1] * k  # b[j] = 1 + max(a[:j]) for j >= 1
    while True:
        yield a
        if a[k - 1] < b[k - 1]:
            a[k - 1] += 1
            continue
        j = k - 2
        while j > 0 and a[j] == b[j]:
            j -= 1
        if j == 0:
            return
        a[j] += 1
        m = b[j] + (1 if a[j] == b[j] else 0)
        for i in range(j + 1, k):
            a[i] = 0
            b[i] = m


def _blocks_from_rgs(rgs) -> tuple[tuple[int, ...], ...]:
    nblocks = max(rgs) + 1
    blocks = [[] for _ in range(nblocks)]
    for position, label in enumerate(rgs, start=1):
        blocks[label].append(position)
    # labels appear in order of first use, so this is already canonical
    return tuple(tuple(b) for b in blocks)


def _noncrossing_block_lists(k: int) -> Iterator[list[list[int]]]:
    """Yield the blocks of every noncrossing partition of {1, ..., k}.

    Elements are placed one at a time; an element may open a new block
    or join an open block, where joining anything below the top of the
    open-block stack permanently closes the blocks above it.  Each
    noncrossing partition arises from exactly one such history.
    """
    blocks: list[list[int]] = []
    open_stack: list[int] = []  # indices into blocks

    def place(i: int) -> Iterator[list[list[int]]]:
        if i > k:
            yield blocks
            return
        blocks.append([i])
        open_stack.append(len(blocks) - 1)
        yield from place(i + 1)
        open_stack.pop()
        blocks.pop()
        for depth in range(len(open_stack) - 1, -1, -1):
            closed = open_stack[depth + 1 :]
            del open_stack[depth + 1 :]
            blocks[open_stack[depth]].append(i)
            yield from place(i + 1)
            blocks[open_stack[depth]].pop()
            open_stack.extend(closed)

    yield from place(1)


def enumerate_partitions(
    k: int, noncrossing_only: bool = False, *, max_ground_size=None
) -> Iterator[Partition]:
    """Enumerate partitions of {1, ..., k} in canonical form, each once.

    With ``noncrossing_only`` the stream is restricted to noncrossing
    partitions.  Ground sizes beyond the cap raise SizeLimitError.
    """
    if k < 1:
        raise ValueError("ground size must be at least 1")
    _check_cap(k, max_ground_size)
    if noncrossing_only:
        for blocks in _noncrossing_block_lists(k):
            yield Partition(k, tuple(tuple(b) for b in blocks))
    else:
        for rgs in _restricted_growth_strings(k):
            yield Partition(k, _blocks_from_rgs(rgs))


@lru_cache(maxsize=None)
def block_size_profiles(k: int, noncrossing_only: bool) -> tuple:
    """Multiset census of block sizes over all partitions of {1, ..., k}.

    Returns sorted ((sizes, count), ...) pairs where sizes is the sorted
    tuple of block sizes and count is how many partitions of the family
    realize it.  This is a bookkeeping device over the full enumeration,
    used by the partition-sum oracle for the moment-cumulant transforms.
    """
    if k < 1:
        raise ValueError("ground size must be at least 1")
    _check_cap(k, None)
    census: dict[tuple[int, ...], int] = {}
    if noncrossing_only:
        for blocks in _noncrossing_block_lists(k):
            sizes = tuple(sorted(len(b) for b in blocks))
            census[sizes] = census.get(sizes, 0) + 1
    else:
        for rgs in _restricted_growth_strings(k):
            counts = [0] * (max(rgs) + 1)
            for label in rgs:
                counts[label] += 1
            sizes = tuple(sorted(counts))
            census[sizes] = census.get(sizes, 0) + 1
    return tuple(sorted(census.items()))


@dataclass(frozen=True)
class BlockProfile:
    """One distinguished block of size n plus k unordered pair blocks."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("distinguished block size must be at least 1")
        if self.k < 0:
            raise ValueError("pair count must be nonnegative")

    @property
    def ground_size(self) -> int:
        return self.n + 2 * self.k


def _perfect_matchings(elements: tuple) -> Iterator[list[tuple[int, int]]]:
    if not elements:
        yield []
        return
    first = elements[0]
    for i in range(1, len(elements)):
        partner = elements[i]
        rest = elements[1:i] + elements[i + 1 :]
        for matching in _perfect_matchings(rest):
            matching.append((first, partner))
            yield matching


def count_profile(profile: BlockProfile, flavor: str, *, max_ground_size=None) -> int:
    """Brute-force count of profile partitions, by direct enumeration.

    Every choice of a distinguished n-subset together with a perfect
    matching of the complement is generated.  The free flavor counts the
    noncrossing ones; the classical flavor counts all of them and weighs
    the distinguished block by (n-1)! internal cycle orders.  When n = 2
    the distinguished pair is one of the pair blocks, and each choice of
    which pair is distinguished counts separately, which is exactly what
    the closed forms require.
    """
    _check_flavor(flavor)
    g = profile.ground_size
    _check_cap(g, max_ground_size)
    n, k = profile.n, profile.k
    elements = tuple(range(g))
    total = 0
    if flavor == "classical":
        for chosen in itertools.combinations(elements, n):
            rest = tuple(e for e in elements if e not in set(chosen))
            for _ in _perfect_matchings(rest):
                total += 1
        return total * math.factorial(n - 1)
    for chosen in itertools.combinations(elements, n):
        chosen_set = set(chosen)
        rest = tuple(e for e in elements if e not in chosen_set)
        ids = [0] * g
        for matching in _perfect_matchings(rest):
            for label, (a, b) in enumerate(matching, start=1):
                ids[a] = label
                ids[b] = label
            remaining = [n] + [2] * k
            if _ids_noncrossing(ids, remaining):
                total += 1
    return total


def kreweras_count(n: int, k: int) -> int:
    """Closed form for the noncrossing profile count: binomial(n+2k, k)."""
    BlockProfile(n, k)  # validate
    return math.comb(n + 2 * k, k)


def classical_profile_count(n: int, k: int) -> int:
    """Closed form for the weighted classical profile count:
    (n+2k)! / (n * k! * 2**k)."""
    BlockProfile(n, k)  # validate
    return math.factorial(n + 2 * k) // (n * math.factorial(k) * 2**k)
