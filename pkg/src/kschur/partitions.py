"""Partition combinatorics: conjugates, hooks, cores and k-conjugation.

Partitions are plain tuples of positive integers in weakly decreasing order.
Trailing zeros are stripped by :func:`partition`, which is the only sanctioned
way to build one from untrusted input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Partition = tuple  # tuple[int, ...], weakly decreasing, no zeros


class PartitionError(ValueError):
    """Raised for malformed partitions or violated preconditions."""


def partition(parts: Iterable[int]) -> Partition:
    """Validate ``parts`` and return the canonical tuple (trailing zeros dropped)."""
    vals = [int(p) for p in parts]
    for a, b in zip(vals, vals[1:]):
        if a < b:
            raise PartitionError(f"parts not weakly decreasing: {vals}")
    if vals and vals[-1] < 0:
        raise PartitionError(f"negative part in {vals}")
    while vals and vals[-1] == 0:
        vals.pop()
    return tuple(vals)


def parse_partition(text: str) -> Partition:
    """Parse ``"6,5,5,3,1,1"`` (CLI syntax) or a JSON array."""
    text = text.strip()
    if text.startswith("["):
        return from_json(text)
    if not text:
        return ()
    try:
        return partition(int(t) for t in text.split(","))
    except ValueError as exc:
        raise PartitionError(str(exc)) from None


def to_json(lam: Partition) -> str:
    return json.dumps(list(lam))


def from_json(text: str) -> Partition:
    data = json.loads(text)
    if not isinstance(data, list) or not all(isinstance(x, int) for x in data):
        raise PartitionError(f"expected a JSON array of integers, got {text!r}")
    return partition(data)


def size(lam: Sequence[int]) -> int:
    return sum(lam)


def length(lam: Sequence[int]) -> int:
    return sum(1 for p in lam if p > 0)


def part(lam: Sequence[int], i: int) -> int:
    """1-based part access with implicit trailing zeros."""
    return lam[i - 1] if 1 <= i <= len(lam) else 0


@lru_cache(maxsize=None)
def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= i) for i in range(1, lam[0] + 1))


def hook(lam: Partition, x: int, y: int) -> int:
    """Hook length of the box in column ``x``, row ``y`` (both 0-based)."""
    if y < 0 or x < 0 or x >= part(lam, y + 1):
        raise PartitionError(f"({x},{y}) is not a box of {lam}")
    return part(lam, y + 1) - x + part(conjugate(lam), x + 1) - y - 1


def boxes(lam: Partition) -> Iterator[tuple[int, int]]:
    for y, row in enumerate(lam):
        for x in range(row):
            yield x, y


def is_r_core(lam: Partition, r: int) -> bool:
    if r < 1:
        raise PartitionError("r must be positive")
    return all(hook(lam, x, y) != r for x, y in boxes(lam))


def n_stat(lam: Sequence[int]) -> int:
    return sum(p * (p - 1) // 2 for p in lam)


def m_stat(lam: Partition) -> int:
    return n_stat(conjugate(lam))


def dominance_leq(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff ``lam <= mu`` in dominance order (equal sizes required)."""
    if sum(lam) != sum(mu):
        raise PartitionError(f"size mismatch: |{tuple(lam)}| != |{tuple(mu)}|")
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a > b:
            return False
    return True


def partitions_of(m: int, max_part: int | None = None) -> list[Partition]:
    """All partitions of ``m`` in reverse-lexicographic (descending) order."""
    if max_part is None:
        max_part = m
    return list(_parts(m, max_part))


@lru_cache(maxsize=None)
def _parts(m: int, cap: int) -> tuple[Partition, ...]:
    if m == 0:
        return ((),)
    out = []
    for first in range(min(m, cap), 0, -1):
        for rest in _parts(m - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_kbounded(m: int, k: int) -> list[Partition]:
    if m < 0 or k < 0:
        raise PartitionError("m and k must be nonnegative")
    if m > 0 and k == 0:
        return []
    return partitions_of(m, k)


def is_kbounded(lam: Partition, k: int) -> bool:
    return not lam or lam[0] <= k


def _require_kbounded(lam: Partition, k: int) -> None:
    if not is_kbounded(lam, k):
        raise PartitionError(f"{lam} is not k-bounded for k={k}")


def contains(big: Sequence[int], small: Sequence[int]) -> bool:
    """Young-diagram containment ``small ⊂ big``."""
    if len(small) > len(big):
        return False
    return all(s <= b for s, b in zip(small, big))


# -- cores -----------------------------------------------------------------


@dataclass(frozen=True)
class CorePair:
    """A (k+1)-core together with the inner shape of its large-hook boxes."""

    core: Partition
    inner: Partition
    bound: int

    def check(self) -> None:
        k = self.bound
        if not is_r_core(self.core, k + 1):
            raise PartitionError(f"{self.core} is not a {k + 1}-core")
        if not contains(self.core, self.inner):
            raise PartitionError(f"{self.inner} not inside {self.core}")
        for x, y in boxes(self.core):
            if (x < part(self.inner, y + 1)) != (hook(self.core, x, y) > k + 1):
                raise PartitionError(
                    f"box ({x},{y}) violates the hook characterization"
                )

    @property
    def skew_rows(self) -> Partition:
        return tuple(
            part(self.core, i) - part(self.inner, i)
            for i in range(1, len(self.core) + 1)
        )


@lru_cache(maxsize=None)
def kbounded_to_core(lam: Partition, k: int) -> CorePair:
    """Build the (k+1)-core of a k-bounded partition, bottom row first.

    Each row of ``lam`` is slid right until its leftmost box has hook ≤ k
    in the shape built so far; the slide amounts form the inner shape.
    """
    lam = partition(lam)
    _require_kbounded(lam, k)
    rows: list[int] = []  # core rows from the bottom up
    shifts: list[int] = []
    for r in reversed(lam):
        s = 0
        while True:
            leg = sum(1 for below in rows if below > s)
            if r - 1 + leg + 1 <= k:
                break
            s += 1
        rows.append(s + r)
        shifts.append(s)
    pair = CorePair(
        partition(reversed(rows)), partition(reversed(shifts)), k
    )
    pair.check()
    return pair


def core_to_kbounded(gamma: Partition, k: int) -> Partition:
    gamma = partition(gamma)
    if not is_r_core(gamma, k + 1):
        raise PartitionError(f"{gamma} is not a {k + 1}-core")
    return partition(
        sum(1 for x in range(row) if hook(gamma, x, y) <= k)
        for y, row in enumerate(gamma)
    )


def omega_k(lam: Partition, k: int) -> Partition:
    """k-conjugate: rows of the conjugated core minus the conjugated inner shape."""
    pair = kbounded_to_core(partition(lam), k)
    mu_c, nu_c = conjugate(pair.core), conjugate(pair.inner)
    return partition(part(mu_c, i) - part(nu_c, i) for i in range(1, len(mu_c) + 1))


def d_k(lam: Partition, k: int) -> int:
    return size(kbounded_to_core(partition(lam), k).inner)


def max_kbounded(m: int, k: int) -> Partition:
    """The dominance-maximal k-bounded partition of m: (k, ..., k, r)."""
    if k <= 0:
        raise PartitionError("k must be positive")
    q, r = divmod(m, k)
    return partition([k] * q + ([r] if r else []))


# -- ribbons and the k-Pieri spin data -------------------------------------


@dataclass(frozen=True)
class RibbonData:
    ribbon_count: int
    common_height: int
    spins: tuple[int, ...]

    def check(self) -> None:
        c, h = self.ribbon_count, self.common_height
        if len(self.spins) != c:
            raise PartitionError("spin multiset size differs from ribbon count")
        for s in self.spins:
            if not c * (h - 1) <= s <= c * h - 1:
                raise PartitionError(f"spin {s} outside [{c * (h - 1)}, {c * h - 1}]")


def _skew_cells(big: Partition, small: Partition) -> set[tuple[int, int]]:
    return {
        (x, y)
        for y in range(len(big))
        for x in range(part(small, y + 1), big[y])
    }


def _components(cells: set[tuple[int, int]]) -> list[frozenset[tuple[int, int]]]:
    seen: set[tuple[int, int]] = set()
    comps = []
    for start in sorted(cells):
        if start in seen:
            continue
        stack, comp = [start], set()
        seen.add(start)
        while stack:
            x, y = stack.pop()
            comp.add((x, y))
            for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                if nb in cells and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        comps.append(frozenset(comp))
    return comps


def _is_ribbon(comp: frozenset[tuple[int, int]]) -> bool:
    return not any(
        {(x + 1, y), (x, y + 1), (x + 1, y + 1)} <= comp for x, y in comp
    )


def _normalized(comp: frozenset[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    x0 = min(x for x, _ in comp)
    y0 = min(y for _, y in comp)
    return frozenset((x - x0, y - y0) for x, y in comp)


def pieri_pairs(lam: Partition, k: int) -> list[tuple[Partition, RibbonData]]:
    """k-bounded μ of size |λ|-1 whose core is covered by the core of λ, with spin data.

    μ need not sit inside λ.  The skew of the two cores must be a disjoint
    union of c translated ribbons of common height h; marking one ribbon
    with N ribbons above it gives spin c(h-1) + N.
    """
    lam = partition(lam)
    _require_kbounded(lam, k)
    if not lam:
        raise PartitionError("λ must be nonempty")
    big = kbounded_to_core(lam, k).core
    out = []
    for mu in enumerate_kbounded(size(lam) - 1, k):
        small = kbounded_to_core(mu, k).core
        if not contains(big, small):
            continue
        comps = _components(_skew_cells(big, small))
        if not all(_is_ribbon(c) for c in comps):
            continue
        if len({_normalized(c) for c in comps}) != 1:
            continue
        c = len(comps)
        h = len({y for _, y in comps[0]})
        data = RibbonData(c, h, tuple(c * (h - 1) + above for above in range(c)))
        data.check()
        out.append((mu, data))
    return sorted(out)
