"""Brute-force cross-checks that share no algorithmic path with the engines.

* Kostka–Foulkes polynomials by the charge statistic on tableaux.
* Catalan characters by expanding raising operators and straightening.
* Modified Macdonald polynomials by Gram–Schmidt in the power-sum basis.
"""

from __future__ import annotations

import math
from collections import defaultdict
from itertools import product as cartesian
from typing import Iterator, Sequence

from .charpoly import QTPoly, SymPoly, power_sum
from .partitions import Partition, PartitionError, conjugate, partition, partitions_of


# -- charge --------------------------------------------------------------


def ssyt(shape: Partition, content: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Semistandard tableaux of ``shape`` with the given content, as tuples of rows.

    Built letter by letter: the boxes holding letter i form a horizontal
    strip added to the shape filled by letters < i.
    """
    shape = partition(shape)
    content = list(content)
    if sum(shape) != sum(content):
        return

    def strips(inner: list[int], r: int, i: int):
        # add r boxes to ``inner`` (padded to len(shape)), at most one per column
        rows = len(shape)
        out = []

        def rec(y: int, left: int, acc: list[int]):
            if y == rows:
                if left == 0:
                    out.append(list(acc))
                return
            cap = shape[y] if y == 0 else min(shape[y], inner[y - 1])
            for add in range(0, min(left, cap - inner[y]) + 1):
                acc.append(inner[y] + add)
                rec(y + 1, left - add, acc)
                acc.pop()

        rec(0, r, [])
        return out

    def build(i: int, inner: list[int], rows: list[list[int]]):
        if i == len(content):
            if inner == list(shape):
                yield tuple(tuple(r) for r in rows)
            return
        for outer in strips(inner, content[i], i):
            new_rows = [r + [i + 1] * (outer[y] - inner[y]) for y, r in enumerate(rows)]
            yield from build(i + 1, outer, new_rows)

    yield from build(0, [0] * len(shape), [[] for _ in shape])


def reading_word(tab) -> list[int]:
    """Rows from bottom to top, each left to right."""
    return [v for row in reversed(tab) for v in row]


def charge(word: Sequence[int]) -> int:
    """Charge of a word whose content is a partition."""
    letters = list(word)
    used = [False] * len(letters)
    total = 0
    remaining = len(letters)
    while remaining:
        top = max(v for v, u in zip(letters, used) if not u)
        pos = len(letters)  # scanning starts just past the right end
        index = 0
        for r in range(1, top + 1):
            found = None
            # move leftwards cyclically from pos
            for step in range(1, len(letters) + 1):
                p = (pos - step) % len(letters)
                if not used[p] and letters[p] == r:
                    found = p
                    wrapped = p >= pos
                    break
            if found is None:
                raise ValueError(f"content of {word} is not a partition")
            if r > 1 and wrapped:
                index += 1
            total += index
            used[found] = True
            remaining -= 1
            pos = found
    return total


def kostka_charge(lam, mu) -> QTPoly:
    lam, mu = partition(lam), partition(mu)
    if sum(lam) != sum(mu):
        raise PartitionError("size mismatch")
    acc: dict[int, int] = defaultdict(int)
    for tab in ssyt(lam, mu):
        acc[charge(reading_word(tab))] += 1
    return QTPoly.from_q(acc)


# -- raising operators ------------------------------------------------------


def straighten_schur(gamma: Sequence[int]) -> tuple[int, tuple | None]:
    """Straighten s_gamma via gamma + rho: returns (sign, shape) or (0, None)."""
    n = len(gamma)
    shifted = [g + n - 1 - i for i, g in enumerate(gamma)]
    if len(set(shifted)) != n:
        return 0, None
    # parity of the sorting permutation by counting inversions
    inversions = sum(1 for a in range(n) for b in range(a + 1, n) if shifted[a] < shifted[b])
    ordered = sorted(shifted, reverse=True)
    shape = tuple(v - (n - 1 - i) for i, v in enumerate(ordered))
    return (-1 if inversions % 2 else 1), shape


def raising_series_catalan(psi, lam, n: int, qmax: int) -> dict:
    """Truncated expansion of prod_{(i,j) in psi} (1 - q R_ij)^{-1} s_lam.

    Returns ``{shape: QTPoly}`` with every q-degree ≤ qmax exact.  A
    straightened shape with a negative last part is zero as a symmetric
    function (the last Jacobi–Trudi row vanishes) and is dropped.
    """
    lam = partition(lam)
    if len(lam) > n:
        raise PartitionError("too many parts")
    start = tuple(lam) + (0,) * (n - len(lam))
    state: dict[tuple, dict[int, int]] = {start: {0: 1}}
    pairs = sorted(psi.pairs if hasattr(psi, "pairs") else psi)
    for i, j in pairs:
        new: dict[tuple, dict[int, int]] = defaultdict(lambda: defaultdict(int))
        for vec, series in state.items():
            for d, c in series.items():
                for a in range(0, qmax - d + 1):
                    v = list(vec)
                    v[i - 1] += a
                    v[j - 1] -= a
                    new[tuple(v)][d + a] += c
        state = new
    out: dict[tuple, dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for vec, series in state.items():
        sign, shape = straighten_schur(vec)
        if sign and shape[-1] >= 0:
            for d, c in series.items():
                out[shape][d] += sign * c
    result = {}
    for shape, series in out.items():
        poly = QTPoly.from_q(series)
        if not poly:
            continue
        result[partition(shape)] = poly
    return result


# -- Gram–Schmidt Macdonald ---------------------------------------------------


def _z(lam: Partition) -> int:
    out = 1
    for part in set(lam):
        r = lam.count(part)
        out *= part**r * math.factorial(r)
    return out


def _monomial_in_p(m: int):
    """Matrix M with m_lam = sum_mu M[lam][mu] p_mu (rational entries), via p -> m transition."""
    import sympy

    parts = partitions_of(m)
    index = {lam: i for i, lam in enumerate(parts)}
    size = len(parts)
    mat = sympy.zeros(size, size)
    for a, mu in enumerate(parts):
        # coefficient of x^lam in p_mu: assignments of the parts of mu to rows
        for assign in cartesian(range(len(mu)), repeat=len(mu)):
            row = [0] * len(mu)
            for part, target in zip(mu, assign):
                row[target] += part
            vec = tuple(sorted((r for r in row if r), reverse=True))
            if list(row[: len(vec)]) == list(vec) and all(r == 0 for r in row[len(vec):]):
                mat[a, index[vec]] += 1
    # rows: p_mu = sum_lam mat[mu, lam] m_lam  ->  m = mat^{-1} p
    return parts, mat.inv()


def gram_schmidt_macdonald(m: int, n: int) -> dict[Partition, SymPoly]:
    """Modified Macdonald polynomials of size m in n variables by orthogonalization.

    P_mu is orthogonalized against smaller monomial functions for the
    q,t-scalar product on power sums, J = c_mu P, H = J[X/(1-t)] and finally
    t^{n(mu)} H(q, 1/t).  Arithmetic happens in the fraction field Q(q, t).
    """
    import sympy

    if m > 4:
        raise ValueError("gram_schmidt_macdonald is limited to m <= 4")
    if m < 1:
        raise ValueError("m must be positive")
    field_, q, t = sympy.field("q,t", sympy.QQ)
    parts, m_in_p = _monomial_in_p(m)
    size = len(parts)
    weight = [
        _z(mu) * math.prod([(1 - q**r) / (1 - t**r) for r in mu]) for mu in parts
    ]

    def inner(u, v):
        return sum((u[i] * v[i] * weight[i] for i in range(size)), field_(0))

    monos = [
        [field_(sympy.Rational(m_in_p[a, b])) for b in range(size)] for a in range(size)
    ]
    # dominance is total for m <= 5, so reverse-lex order read backwards runs upward
    P: dict[int, list] = {}
    for a in range(size - 1, -1, -1):
        vec = list(monos[a])
        for pb in P.values():
            coef = inner(monos[a], pb) / inner(pb, pb)
            vec = [x - coef * y for x, y in zip(vec, pb)]
        P[a] = vec

    p_monomials = []
    for nu in parts:
        prod_p = SymPoly.constant(n)
        for r in nu:
            prod_p = prod_p * power_sum(n, r)
        p_monomials.append({w: c.coeff(0, 0) for w, c in prod_p.items()})

    out = {}
    for a, mu in enumerate(parts):
        cols = conjugate(mu)
        c_mu = math.prod(
            [1 - q ** (mu[y] - x - 1) * t ** (cols[x] - y) for y in range(len(mu)) for x in range(mu[y])]
        )
        h_p = [c_mu * P[a][b] / math.prod([1 - t**r for r in nu]) for b, nu in enumerate(parts)]
        acc: dict[tuple, object] = defaultdict(lambda: field_(0))
        for b in range(size):
            for w, cnt in p_monomials[b].items():
                acc[w] += h_p[b] * cnt
        n_mu = sum(i * p for i, p in enumerate(mu))
        terms = {}
        for w, value in acc.items():
            poly = _field_to_qt(value)
            # t -> 1/t, then multiply by t^{n(mu)}
            poly = poly.substitute(lambda x, y: x, lambda x, y: n_mu - y)
            if poly:
                terms[w] = poly
        out[mu] = SymPoly(n, terms)
    return out


def _field_to_qt(value) -> QTPoly:
    numer, denom = value.numer, value.denom
    if not denom.is_ground:
        raise ValueError(f"coefficient {value} is not a polynomial")
    scale = denom.LC
    terms = {}
    for mono, c in numer.terms():
        c = c / scale
        if c.denominator != 1:
            raise ValueError(f"coefficient {value} is not integral")
        terms[tuple(mono)] = int(c.numerator)
    return QTPoly(terms)
