"""Root ideals, affine Demazure operators and the Catalan character engine.

Affine weights live in coordinates (v_1..v_n; level; delta) with
alpha_i = e_i - e_{i+1} for 1 <= i < n and alpha_0 = e_n - e_1 + delta.
The pairing with the simple coroot is v_i - v_{i+1} for i >= 1 and
level + v_n - v_1 for i = 0.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .charpoly import QTPoly, peel_dominant
from .partitions import (
    Partition,
    PartitionError,
    conjugate,
    d_k,
    omega_k,
    partition,
)

# q-exponent = DELTA_TO_Q * delta-degree.  Strings through alpha_0 lower the
# delta-degree, and higher q-powers sit deeper in the module.
DELTA_TO_Q = -1


class RootIdealError(ValueError):
    """Invalid root ideal, corner, or cyclic interval."""


# -- root ideals ------------------------------------------------------------


@dataclass(frozen=True)
class RootIdeal:
    n: int
    pairs: frozenset = field(default_factory=frozenset)

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    def to_json(self) -> dict:
        return {"n": self.n, "pairs": [list(p) for p in self.sorted_pairs()]}

    @classmethod
    def from_json(cls, data: Mapping | str) -> RootIdeal:
        if isinstance(data, str):
            data = json.loads(data)
        return validate_root_ideal([tuple(p) for p in data["pairs"]], int(data["n"]))

    def render(self) -> str:
        """Staircase picture: 'o' on the diagonal, '#' for roots in the ideal, '.' otherwise."""
        lines = []
        for i in range(1, self.n + 1):
            cells = ["  " * (i - 1) + "o "]
            cells += ["# " if (i, j) in self.pairs else ". " for j in range(i + 1, self.n + 1)]
            lines.append("".join(cells).rstrip())
        return "\n".join(lines)


def validate_root_ideal(pairs: Iterable[Sequence[int]], n: int) -> RootIdeal:
    if n < 1:
        raise RootIdealError("n must be positive")
    ps = set()
    for p in pairs:
        i, j = (int(x) for x in p)
        if not 1 <= i < j <= n:
            raise RootIdealError(f"({i},{j}) is not a positive root for n={n}")
        ps.add((i, j))
    for i, j in ps:
        if i > 1 and (i - 1, j) not in ps:
            raise RootIdealError(f"not upward closed: ({i},{j}) present, ({i - 1},{j}) missing")
        if j < n and (i, j + 1) not in ps:
            raise RootIdealError(f"not upward closed: ({i},{j}) present, ({i},{j + 1}) missing")
    return RootIdeal(n, frozenset(ps))


def full_ideal(n: int) -> RootIdeal:
    return RootIdeal(n, frozenset((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def empty_ideal(n: int) -> RootIdeal:
    return RootIdeal(n, frozenset())


def corners(psi: RootIdeal) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i, j in psi.sorted_pairs()
        if (i + 1, j) not in psi.pairs and (i, j - 1) not in psi.pairs
    ]


def remove_corner(psi: RootIdeal, pair: Sequence[int]) -> RootIdeal:
    pair = tuple(pair)
    if pair not in corners(psi):
        raise RootIdealError(f"{pair} is not a corner")
    return validate_root_ideal(psi.pairs - {pair}, psi.n)


def h_col(psi: RootIdeal, i: int) -> int:
    if not 1 <= i <= psi.n:
        raise RootIdealError(f"column {i} out of range 1..{psi.n}")
    return max([l for l, j in psi.pairs if j == i] + [0])


def h_vector(psi: RootIdeal) -> tuple[int, ...]:
    return tuple(h_col(psi, i) for i in range(1, psi.n + 1))


def is_shallow(psi: RootIdeal) -> bool:
    for i, j in psi.pairs:
        if (i, j - 1) not in psi.pairs and (i + 1, j) in psi.pairs:
            return False
    return True


def psi_of(lam: Sequence[int], k: int, n: int) -> RootIdeal:
    """The ideal with row i occupying columns j > max(i, i + k - lam_i)."""
    vals = list(lam) + [0] * (n - len(lam))
    if len(vals) > n:
        raise RootIdealError(f"{tuple(lam)} longer than n={n}")
    pairs = []
    for i in range(1, n + 1):
        o = max(i, i + k - vals[i - 1])
        pairs.extend((i, j) for j in range(o + 1, n + 1))
    try:
        return validate_root_ideal(pairs, n)
    except RootIdealError as exc:
        raise RootIdealError(f"no root ideal for {tuple(lam)}, k={k}: {exc}") from None


# -- affine weights and characters ----------------------------------------


@dataclass(frozen=True)
class AffineWeight:
    v: tuple
    level: int = 0
    delta: int = 0

    @property
    def n(self) -> int:
        return len(self.v)

    def __add__(self, other: AffineWeight) -> AffineWeight:
        if other.n != self.n:
            raise ValueError("rank mismatch")
        return AffineWeight(
            tuple(a + b for a, b in zip(self.v, other.v)),
            self.level + other.level,
            self.delta + other.delta,
        )

    def scale(self, c: int) -> AffineWeight:
        return AffineWeight(tuple(c * a for a in self.v), c * self.level, c * self.delta)

    def __str__(self) -> str:
        s = f"({','.join(map(str, self.v))}) + {self.level}p"
        return s + (f" + {self.delta}d" if self.delta else "")


def fundamental(j: int, n: int) -> AffineWeight:
    """Lambda_j = varpi_j + level one (Lambda_n and Lambda_0 differ only by e_1+..+e_n)."""
    return AffineWeight(tuple(1 if a < j else 0 for a in range(n)), 1, 0)


def _check_index(i: int, n: int) -> None:
    if not 0 <= i < n:
        raise RootIdealError(f"affine index {i} outside 0..{n - 1}")


def pairing(i: int, v: Sequence[int], level: int) -> int:
    if i:
        return v[i - 1] - v[i]
    return level + v[-1] - v[0]


def affine_reflect(i: int, w: AffineWeight) -> AffineWeight:
    n = w.n
    _check_index(i, n)
    v = list(w.v)
    if i:
        v[i - 1], v[i] = v[i], v[i - 1]
        return AffineWeight(tuple(v), w.level, w.delta)
    p = pairing(0, v, w.level)
    v[0] += p
    v[-1] -= p
    return AffineWeight(tuple(v), w.level, w.delta - p)


class AffineCharacter:
    """Finite sum of e^{(v, delta)} at a fixed level; zero multiplicities dropped."""

    __slots__ = ("n", "level", "terms")

    def __init__(self, n: int, level: int = 0, terms: Mapping | None = None):
        self.n = n
        self.level = level
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def trivial(cls, n: int) -> AffineCharacter:
        return cls(n, 0, {((0,) * n, 0): 1})

    @classmethod
    def from_weight(cls, w: AffineWeight, c: int = 1) -> AffineCharacter:
        return cls(w.n, w.level, {(w.v, w.delta): c})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AffineCharacter)
            and (self.n, self.level, self.terms) == (other.n, other.level, other.terms)
        )

    def __add__(self, other: AffineCharacter) -> AffineCharacter:
        if (self.n, self.level) != (other.n, other.level):
            raise ValueError("rank or level mismatch")
        out = defaultdict(int, self.terms)
        for key, c in other.terms.items():
            out[key] += c
        return AffineCharacter(self.n, self.level, out)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items())

    def shift(self, w: AffineWeight) -> AffineCharacter:
        """Tensor with a one-dimensional module of weight ``w``."""
        add, dd = w.v, w.delta
        return AffineCharacter(
            self.n,
            self.level + w.level,
            {
                (tuple(a + b for a, b in zip(v, add)), d + dd): c
                for (v, d), c in self.terms.items()
            },
        )

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def __repr__(self) -> str:
        return f"AffineCharacter(n={self.n}, level={self.level}, {len(self.terms)} terms)"


def demazure_op(i: int, f: AffineCharacter) -> AffineCharacter:
    """Isobaric divided difference D_i applied term by term."""
    n, level = f.n, f.level
    _check_index(i, n)
    out: dict = defaultdict(int)
    if i:
        a, b = i - 1, i
        for (v, d), c in f.terms.items():
            p = v[a] - v[b]
            if p == -1:
                continue
            if p >= 0:
                steps, sign = range(0, -p - 1, -1), 1  # mu - j*alpha, j = 0..p
            else:
                steps, sign = range(1, -p), -1  # mu + j*alpha, j = 1..-p-1
            lst = list(v)
            va, vb = v[a], v[b]
            for j in steps:
                lst[a] = va + j
                lst[b] = vb - j
                out[(tuple(lst), d)] += sign * c
    else:
        for (v, d), c in f.terms.items():
            p = level + v[-1] - v[0]
            if p == -1:
                continue
            if p >= 0:
                steps, sign = range(0, p + 1), 1  # mu - j*alpha_0
            else:
                steps, sign = range(-1, p, -1), -1  # mu + j*alpha_0 as j -> -j
            lst = list(v)
            v1, vn = v[0], v[-1]
            for j in steps:
                # mu - j*alpha_0: v_n -= j, v_1 += j, delta -= j
                lst[0] = v1 + j
                lst[-1] = vn - j
                out[(tuple(lst), d - j)] += sign * c
    return AffineCharacter(n, level, out)


def cyclic_interval(i: int, j: int, n: int, closed: bool = False) -> list[int]:
    """Indices of [i, j) (or [i, j] when ``closed``) read cyclically mod n, i first."""
    i %= n
    j %= n
    if closed:
        length = (j - i) % n + 1
        if length == n:
            raise RootIdealError(f"[{i},{j}] covers every affine index")
    else:
        length = (j - i) % n
    return [(i + a) % n for a in range(length)]


def demazure_cyclic(i: int, j: int, f: AffineCharacter, closed: bool = False) -> AffineCharacter:
    for idx in cyclic_interval(i, j, f.n, closed):
        f = demazure_op(idx, f)
    return f


def demazure_word(word: Sequence[int], f: AffineCharacter) -> AffineCharacter:
    """Apply D_{word[0]} first, then D_{word[1]}, and so on."""
    for idx in word:
        f = demazure_op(idx, f)
    return f


# -- the Catalan character -------------------------------------------------


def _pad(lam: Sequence[int], n: int) -> list[int]:
    lam = partition(lam)
    if len(lam) > n:
        raise PartitionError(f"{lam} has more than {n} parts")
    return list(lam) + [0] * (n - len(lam))


def multiplicities(lam: Sequence[int], n: int) -> list[int]:
    """m_j = lam_j - lam_{j+1} for j = 1..n (lam_{n+1} = 0)."""
    vals = _pad(lam, n) + [0]
    return [vals[j] - vals[j + 1] for j in range(n)]


def catalan_affine(psi: RootIdeal, lam: Sequence[int]) -> AffineCharacter:
    """The full affine character before the level is forgotten."""
    n = psi.n
    m = multiplicities(lam, n)
    h = h_vector(psi)
    f = AffineCharacter.trivial(n)
    for j in range(n, 0, -1):
        if m[j - 1]:
            f = f.shift(fundamental(j, n).scale(m[j - 1]))
        f = demazure_cyclic(j, h[j - 1], f)
    return f


def finite_character(f: AffineCharacter) -> dict[tuple, dict[int, int]]:
    """Forget the level and convert delta-degree to q-degree."""
    out: dict = defaultdict(lambda: defaultdict(int))
    for (v, d), c in f.terms.items():
        out[v][DELTA_TO_Q * d] += c
    return {v: {e: c for e, c in qs.items() if c} for v, qs in out.items()}


@lru_cache(maxsize=4096)
def _catalan_cached(pairs: frozenset, n: int, lam: Partition) -> tuple:
    psi = RootIdeal(n, pairs)
    fin = finite_character(catalan_affine(psi, lam))
    peeled = peel_dominant(fin, n)
    return tuple(sorted((mu, QTPoly.from_q(c)) for mu, c in peeled.items()))


def catalan_char(psi: RootIdeal, lam: Sequence[int], n: int | None = None) -> dict[Partition, QTPoly]:
    """Graded multiplicities of irreducibles in the Catalan module of (psi, lam)."""
    if n is not None and n != psi.n:
        raise RootIdealError(f"ideal rank {psi.n} differs from n={n}")
    lam = partition(lam)
    _pad(lam, psi.n)
    return dict(_catalan_cached(psi.pairs, psi.n, lam))


# -- extremal weights along the chain ---------------------------------------


def chain_weights_by_reflection(psi: RootIdeal, lam: Sequence[int]) -> list[AffineWeight]:
    """Lambda^(n+1), ..., Lambda^(1) by composing affine reflections (s_i applied first)."""
    n = psi.n
    m = multiplicities(lam, n)
    h = h_vector(psi)
    w = AffineWeight((0,) * n, 0, 0)
    out = [w]
    for i in range(n, 0, -1):
        w = w + fundamental(i, n).scale(m[i - 1])
        for idx in cyclic_interval(i, h[i - 1], n):
            w = affine_reflect(idx, w)
        out.append(w)
    return out


def chain_weights(psi: RootIdeal, lam: Sequence[int]) -> list[AffineWeight]:
    """Lambda^(n+1), ..., Lambda^(1) for a shallow ideal via the closed recurrences.

    The finite parts and levels come from the recurrences; the delta
    coordinates come from the reflection route, and the finite parts are
    checked against it.
    """
    if not is_shallow(psi):
        raise RootIdealError("chain weights need a shallow ideal")
    n = psi.n
    m = multiplicities(lam, n)
    vals = _pad(lam, n)
    big_m = vals + [0]  # m^(i) = lam_i, m^(n+1) = 0
    h = h_vector(psi)
    reflected = chain_weights_by_reflection(psi, lam)

    prev = [0] * (n + 1)  # 1-based
    out = [reflected[0]]
    for step, i in enumerate(range(n, 0, -1), start=1):
        hi, mi = h[i - 1], m[i - 1]
        cur = [0] * (n + 1)
        for j in range(1, n + 1):
            if hi > 0:
                if hi < j < i:
                    cur[j] = prev[j] + mi
                elif 1 <= j < hi:
                    cur[j] = prev[j + 1] + mi
                elif j == hi:
                    cur[j] = prev[i] + mi + big_m[i - 1]
                elif i <= j < n:
                    cur[j] = prev[j + 1]
                else:
                    cur[j] = prev[1] - big_m[i]
            else:
                if j < i:
                    cur[j] = prev[j] + mi
                elif j < n:
                    cur[j] = prev[j + 1]
                else:
                    cur[j] = prev[i] + mi
        w = AffineWeight(tuple(cur[1:]), big_m[i - 1], reflected[step].delta)
        if (w.v, w.level) != (reflected[step].v, reflected[step].level):
            raise RootIdealError(
                f"recurrence and reflection disagree at i={i}: {w} vs {reflected[step]}"
            )
        out.append(w)
        prev = cur
    return out


def chain_monotonicity_violations(psi: RootIdeal, lam: Sequence[int]) -> list[str]:
    """Check the inequality chains satisfied by the chain weights of a shallow ideal.

    Only comparisons whose indices fall inside 1..n are tested.  Returns a
    list of human-readable violations (empty when everything holds).
    """
    n = psi.n
    weights = chain_weights(psi, lam)
    m = multiplicities(lam, n) + [0]
    big_m = _pad(lam, n) + [0]
    h = h_vector(psi)

    def M(i):  # m^(i), 1-based
        return big_m[i - 1] if 1 <= i <= n else 0

    def mm(i):  # m_i, 1-based
        return m[i - 1] if 1 <= i <= n else 0

    bad = []
    for step, i in enumerate(range(n, 0, -1), start=1):
        lv = (None,) + weights[step].v  # 1-based
        hi = h[i - 1]

        def chain(seq, label):
            for a, b in zip(seq, seq[1:]):
                if a > b:
                    bad.append(f"i={i}: {label} fails ({seq})")
                    return

        if hi > 0:
            chain([lv[j] for j in range(1, hi + 1)], "rise to the peak")
            if i - 1 >= hi:
                chain([lv[j] for j in range(i - 1, hi - 1, -1)], "fall after the peak")
            if i >= 2 and lv[hi] > lv[i - 1] + M(i - 1):
                bad.append(f"i={i}: peak bound fails")
            tail = [lv[j] for j in range(i, n + 1)]
            hprev = h[i - 2] if i >= 2 else 0
            tail += [lv[j] - M(i) for j in range(1, hprev + 1)]
            if i >= 2:
                tail.append(lv[i - 1] + mm(i - 1))
            chain(tail, "cyclic tail")
        else:
            seq = [lv[j] for j in range(i, n + 1)] + [lv[j] for j in range(i - 1, 0, -1)]
            chain(seq, "extremal order")
    return bad


def socle_partition(lam: Sequence[int], k: int, n: int | None = None) -> tuple[Partition, int]:
    """Partition and degree of the top q-degree term of the k-Schur character."""
    lam = partition(lam)
    if lam and lam[0] > k:
        raise PartitionError(f"{lam} is not {k}-bounded")
    if n is None:
        n = sum(lam) + 1
    char = catalan_char(psi_of(lam, k, n), lam)
    top = max(c.max_q_degree() for c in char.values())
    carriers = [mu for mu, c in char.items() if c.max_q_degree() == top]
    if len(carriers) != 1 or not char[carriers[0]].coeff(top) == 1 or len(
        [e for e in char[carriers[0]] if e[0] == top]
    ) != 1:
        raise RootIdealError(f"top degree {top} is not carried by a single simple: {carriers}")
    return carriers[0], top


def expected_socle(lam: Sequence[int], k: int) -> tuple[Partition, int]:
    lam = partition(lam)
    return conjugate(omega_k(lam, k)), d_k(lam, k)
