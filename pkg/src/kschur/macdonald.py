"""Modified Macdonald polynomials from the fillings formula and their Schur tables.

Diagram convention: row y = 0 is the bottom row, x counts columns from the
left.  arm(u) counts boxes strictly right of u, leg(u) boxes strictly above.
A box is a descent when its entry exceeds the entry directly below it.
Two boxes attack when they share a row, or when they sit in adjacent rows
with the upper box strictly right of the lower one; reading order runs
through rows from top to bottom, left to right within a row.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from .bases import KSchurExpansion, SchurExpansion, Verdict, kschur_expand
from .charpoly import QTPoly, SymPoly, peel_dominant
from .partitions import (
    Partition,
    PartitionError,
    conjugate,
    is_kbounded,
    partition,
    partitions_of,
)


@dataclass(frozen=True)
class _Shape:
    cells: tuple  # boxes in reading order
    attacks: tuple  # index pairs (a, b), a before b in reading order
    below: tuple  # (a, b): box b directly below box a
    arm: tuple
    leg: tuple


@lru_cache(maxsize=None)
def _shape(mu: Partition) -> _Shape:
    mu = partition(mu)
    cols = conjugate(mu)
    cells = [(x, y) for y in range(len(mu) - 1, -1, -1) for x in range(mu[y])]
    index = {c: i for i, c in enumerate(cells)}
    attacks = []
    for a, (x1, y1) in enumerate(cells):
        for b, (x2, y2) in enumerate(cells):
            if b <= a:
                continue
            if y1 == y2 or (y1 == y2 + 1 and x1 > x2):
                attacks.append((a, b))
    below = [(index[(x, y)], index[(x, y - 1)]) for (x, y) in cells if y > 0]
    arm = [mu[y] - x - 1 for x, y in cells]
    leg = [cols[x] - y - 1 for x, y in cells]
    return _Shape(tuple(cells), tuple(attacks), tuple(below), tuple(arm), tuple(leg))


def filling_stats(mu: Partition, entries) -> tuple[int, int]:
    """(inv, maj) of a filling given as entries in reading order."""
    sh = _shape(partition(mu))
    inv = sum(1 for a, b in sh.attacks if entries[a] > entries[b])
    maj = 0
    for a, b in sh.below:
        if entries[a] > entries[b]:
            maj += sh.leg[a] + 1
            inv -= sh.arm[a]
    return inv, maj


@dataclass(frozen=True)
class Filling:
    shape: Partition
    entries: dict = field(hash=False)

    def check(self) -> None:
        if set(self.entries) != set(_shape(self.shape).cells):
            raise PartitionError("filling does not cover the diagram exactly")

    def stats(self) -> tuple[int, int]:
        self.check()
        sh = _shape(self.shape)
        return filling_stats(self.shape, [self.entries[c] for c in sh.cells])


def _stream(mu: Partition, contents):
    """Yield (content exponent, q-exp, t-exp) over fillings whose content is in ``contents``."""
    from sympy.utilities.iterables import multiset_permutations

    for w in contents:
        letters = [i + 1 for i, c in enumerate(w) for _ in range(c)]
        for perm in multiset_permutations(letters):
            inv, maj = filling_stats(mu, perm)
            yield w, inv, maj


def modified_macdonald(mu, n: int) -> SymPoly:
    """Full monomial expansion of the modified Macdonald polynomial in n variables."""
    mu = partition(mu)
    m = sum(mu)
    if n < m:
        raise PartitionError(f"need n >= |mu| = {m}, got {n}")
    acc: dict[tuple, dict] = defaultdict(lambda: defaultdict(int))
    for entries in itertools.product(range(1, n + 1), repeat=m):
        inv, maj = filling_stats(mu, entries)
        content = [0] * n
        for e in entries:
            content[e - 1] += 1
        acc[tuple(content)][(inv, maj)] += 1
    return SymPoly(n, {w: QTPoly(c) for w, c in acc.items()})


@lru_cache(maxsize=None)
def _macdonald_schur(mu: Partition) -> tuple:
    m = sum(mu)
    acc: dict[tuple, dict] = defaultdict(lambda: defaultdict(int))
    doms = [lam + (0,) * (m - len(lam)) for lam in partitions_of(m)]
    for w, inv, maj in _stream(mu, doms):
        acc[w][(inv, maj)] += 1
    # peel_dominant works on integer-coefficient dicts; key (q, t) pairs by index
    keys = sorted({key for d in acc.values() for key in d})
    code = {key: i for i, key in enumerate(keys)}
    flat = {w: {code[key]: c for key, c in d.items()} for w, d in acc.items()}
    peeled = peel_dominant(flat, m)
    return tuple(
        sorted((lam, QTPoly({keys[i]: c for i, c in d.items()})) for lam, d in peeled.items())
    )


def macdonald_schur(mu) -> SchurExpansion:
    """Schur expansion of the modified Macdonald polynomial (fillings with dominant content only)."""
    mu = partition(mu)
    return SchurExpansion(max(sum(mu), 1), dict(_macdonald_schur(mu)))


def n_mac(mu: Partition) -> int:
    """sum (i-1) mu_i."""
    return sum(i * p for i, p in enumerate(mu))


# Convention map from the fillings-formula variables to the graded module
# character: swap q and t, then reverse the q-degree against n_mac(mu).
# Pinned by the (2,1) and (1,1,1) tables; see the decisions log.
def convention_map(poly: QTPoly, mu: Partition) -> QTPoly:
    top = n_mac(mu)
    return poly.substitute(lambda a, b: top - b, lambda a, b: a)


@dataclass
class GHCharacter:
    m: int
    coeffs: dict

    def expansion(self) -> SchurExpansion:
        return SchurExpansion(max(self.m, 1), dict(self.coeffs))

    def regular_rep_total(self) -> int:
        return sum(c.evaluate(1, 1) * syt_count(lam) for lam, c in self.coeffs.items())

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": self.expansion().to_json()}

    def to_latex(self) -> str:
        rows = [r"\begin{tabular}{l|l}", r"$\mu$ & $K_{\mu,\lambda}(q,t)$ \\ \hline"]
        from .charpoly import format_qt

        for lam, c in sorted(self.coeffs.items()):
            label = ",".join(map(str, lam))
            rows.append(f"$({label})$ & ${format_qt(c, latex=True)}$ \\\\")
        rows.append(r"\end{tabular}")
        return "\n".join(rows)


def gh_character(lam) -> GHCharacter:
    lam = partition(lam)
    base = macdonald_schur(lam)
    return GHCharacter(sum(lam), {mu: convention_map(c, lam) for mu, c in base.coeffs.items()})


def qt_kostka(lam, mu) -> QTPoly:
    lam, mu = partition(lam), partition(mu)
    if sum(lam) != sum(mu):
        raise PartitionError("size mismatch")
    return gh_character(mu).coeffs.get(lam, QTPoly())


@lru_cache(maxsize=None)
def syt_count(lam: Partition) -> int:
    """Standard Young tableaux of shape lam, by the hook length formula."""
    lam = partition(lam)
    cols = conjugate(lam)
    prod = 1
    for y, row in enumerate(lam):
        for x in range(row):
            prod *= row - x + cols[x] - y - 1
    return factorial(sum(lam)) // prod


def refined_expansion(lam, k: int) -> KSchurExpansion:
    lam = partition(lam)
    if not is_kbounded(lam, k):
        raise PartitionError(f"{lam} is not {k}-bounded")
    return kschur_expand(gh_character(lam).expansion(), k)


def refined_positivity(lam, k: int) -> Verdict:
    lam = partition(lam)
    exp = refined_expansion(lam, k)
    witness = exp.first_negative()
    note = ""
    if not exp.ok:
        witness = {"residual": exp.residual.to_json()}
        note = "residual nonzero"
    return Verdict(
        "refined-macdonald",
        {"lambda": list(lam), "k": k},
        exp.as_schur().to_json(),
        exp.is_nonnegative(),
        witness,
        note,
    )
