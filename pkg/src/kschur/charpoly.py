"""Exact sparse Laurent polynomials.

``QTPoly`` holds integer Laurent polynomials in q and t; ``SymPoly`` holds
Laurent polynomials in x_1..x_n with ``QTPoly`` coefficients; affine
characters are plain dicts keyed by ``(weight, delta)`` and live in
:mod:`kschur.demazure`.  Every container is kept zero-free so equality is
structural and hashing is deterministic.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from .partitions import Partition, PartitionError, conjugate, partition

Monomial = tuple  # (q_exp, t_exp)


class QTPoly:
    """Integer Laurent polynomial in q and t."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self._terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> QTPoly:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, qe: int = 0, te: int = 0, c: int = 1) -> QTPoly:
        return cls({(qe, te): c})

    @classmethod
    def from_q(cls, coeffs: Mapping[int, int]) -> QTPoly:
        return cls({(e, 0): c for e, c in coeffs.items()})

    # -- container protocol
    def items(self) -> list[tuple[Monomial, int]]:
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[Monomial]:
        return iter(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, qe: int = 0, te: int = 0) -> int:
        return self._terms.get((qe, te), 0)

    # -- arithmetic
    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return QTPoly(out)

    __radd__ = __add__

    def __neg__(self) -> QTPoly:
        return QTPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, int] = defaultdict(int)
        for (a, b), c in self._terms.items():
            for (x, y), d in other._terms.items():
                out[(a + x, b + y)] += c * d
        return QTPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QTPoly:
        if e < 0:
            raise ValueError("negative power")
        out = QTPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = _lift(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- queries
    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def first_negative(self) -> tuple[Monomial, int] | None:
        for m, c in self.items():
            if c < 0:
                return m, c
        return None

    def is_monomial(self) -> bool:
        return len(self._terms) == 1 and next(iter(self._terms.values())) == 1

    def max_q_degree(self) -> int:
        return max(q for q, _ in self._terms)

    def min_q_degree(self) -> int:
        return min(q for q, _ in self._terms)

    def q_exponents(self) -> list[int]:
        """Multiset of q-exponents (each repeated by its coefficient); t must be absent."""
        out = []
        for (qe, te), c in self.items():
            if te != 0 or c < 0:
                raise ValueError(f"not a nonnegative q-polynomial: {self}")
            out.extend([qe] * c)
        return out

    def evaluate(self, q: int = 1, t: int = 1) -> int:
        from fractions import Fraction

        total = Fraction(0)
        for (a, b), c in self._terms.items():
            total += c * Fraction(q) ** a * Fraction(t) ** b
        if total.denominator != 1:
            raise ValueError("evaluation is not an integer")
        return int(total)

    def specialize_t(self, t: int) -> QTPoly:
        """Substitute t := 0 or t := 1 (only these keep integrality cheaply)."""
        out: dict[Monomial, int] = defaultdict(int)
        for (a, b), c in self._terms.items():
            if t == 0:
                if b == 0:
                    out[(a, 0)] += c
                elif b < 0:
                    raise ValueError("t=0 in a negative t-power")
            else:
                out[(a, 0)] += c * t**b
        return QTPoly(out)

    def specialize_q(self, q: int) -> QTPoly:
        return self.swap().specialize_t(q).swap()

    def swap(self) -> QTPoly:
        return QTPoly({(b, a): c for (a, b), c in self._terms.items()})

    def substitute(self, q_map, t_map) -> QTPoly:
        """Monomial substitution: (a, b) -> q_map(a, b), t_map(a, b) exponents."""
        return QTPoly(
            _accumulate(((q_map(a, b), t_map(a, b)), c) for (a, b), c in self._terms.items())
        )

    # -- text
    def to_json(self) -> list[dict]:
        return [{"q": a, "t": b, "c": str(c)} for (a, b), c in self.items()]

    @classmethod
    def from_json(cls, data: list[dict]) -> QTPoly:
        return cls({(int(d["q"]), int(d["t"])): int(d["c"]) for d in data})

    def __repr__(self) -> str:
        return f"QTPoly({self})"

    def __str__(self) -> str:
        return format_qt(self)


def _lift(x):
    if isinstance(x, QTPoly):
        return x
    if isinstance(x, int):
        return QTPoly.const(x)
    return NotImplemented


def _accumulate(pairs: Iterable[tuple]) -> dict:
    out: dict = defaultdict(int)
    for key, c in pairs:
        out[key] += c
    return out


def _var(name: str, e: int) -> str:
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}" if e > 0 else f"{name}^({e})"


def format_qt(p: QTPoly, latex: bool = False) -> str:
    if not p:
        return "0"
    pieces = []
    for (a, b), c in p.items():
        mono = "".join(_var(v, e) if not latex else _latex_var(v, e) for v, e in (("q", a), ("t", b)))
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{mono}"
        pieces.append(("-" if c < 0 else "+", body))
    text = pieces[0][1] if pieces[0][0] == "+" else "-" + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def _latex_var(name: str, e: int) -> str:
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{{{e}}}"


ONE = QTPoly.const(1)
ZERO = QTPoly()


# -- symmetric (Laurent) polynomials in n variables -------------------------


class SymPoly:
    """Sparse Laurent polynomial in x_1..x_n with ``QTPoly`` coefficients."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[tuple, QTPoly] | None = None):
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise ValueError(f"exponent {e} has length != {n}")
            c = _lift(c)
            if c:
                clean[tuple(e)] = c
        self._terms = clean

    @classmethod
    def variable(cls, n: int, i: int) -> SymPoly:
        e = [0] * n
        e[i - 1] = 1
        return cls(n, {tuple(e): ONE})

    @classmethod
    def constant(cls, n: int, c=1) -> SymPoly:
        return cls(n, {(0,) * n: _lift(c)})

    def items(self) -> list[tuple[tuple, QTPoly]]:
        return sorted(self._terms.items())

    def coeff(self, e) -> QTPoly:
        return self._terms.get(tuple(e), ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: SymPoly) -> None:
        if not isinstance(other, SymPoly):
            raise TypeError(f"expected SymPoly, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"variable-count mismatch: {self.n} vs {other.n}")

    def __add__(self, other: SymPoly) -> SymPoly:
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out[e] + c if e in out else c
        return SymPoly(self.n, out)

    def __neg__(self) -> SymPoly:
        return SymPoly(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: SymPoly) -> SymPoly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, QTPoly)):
            c = _lift(other)
            return SymPoly(self.n, {e: v * c for e, v in self._terms.items()})
        self._check(other)
        out: dict[tuple, QTPoly] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                out[e] = out[e] + prod if e in out else prod
        return SymPoly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> SymPoly:
        out = SymPoly.constant(self.n)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, SymPoly) and self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def permute(self, w: Iterable[int]) -> SymPoly:
        """Apply a permutation of {1..n}: variable x_i is sent to x_{w(i)}."""
        w = list(w)
        if sorted(w) != list(range(1, self.n + 1)):
            raise ValueError(f"{w} is not a permutation of 1..{self.n}")
        out = {}
        for e, c in self._terms.items():
            new = [0] * self.n
            for i, a in enumerate(e):
                new[w[i] - 1] = a
            out[tuple(new)] = c
        return SymPoly(self.n, out)

    def is_symmetric(self) -> bool:
        for i in range(self.n - 1):
            for e, c in self._terms.items():
                s = list(e)
                s[i], s[i + 1] = s[i + 1], s[i]
                if self._terms.get(tuple(s)) != c:
                    return False
        return True

    def map_coeffs(self, fn) -> SymPoly:
        return SymPoly(self.n, {e: fn(c) for e, c in self._terms.items()})

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*x^{list(e)}" for e, c in self.items()) or "0"
        return f"SymPoly(n={self.n}: {body})"


def is_symmetric(f: SymPoly) -> bool:
    return f.is_symmetric()


def permute(w: Iterable[int], f: SymPoly) -> SymPoly:
    return f.permute(w)


# -- Schur polynomials via semistandard tableaux ----------------------------


def _ssyt_contents(lam: Partition, n: int) -> Iterator[tuple[int, ...]]:
    """Content vectors of all SSYT of shape ``lam`` with entries 1..n (with repeats).

    Fills column-strict, row-weak tableaux row by row; a row is a weakly
    increasing sequence each entry strictly larger than the one above.
    """
    rows = list(lam)
    cols = conjugate(partition(lam))

    def fill(r: int, above: tuple[int, ...], content: list[int]):
        if r == len(rows):
            yield tuple(content)
            return
        length = rows[r]

        def row(pos: int, prev: int, acc: list[int]):
            if pos == length:
                yield acc
                return
            lo = max(prev, above[pos] + 1 if above else 1)
            # leave room for the boxes below in the same column
            for v in range(lo, n - (cols[pos] - 1 - r) + 1):
                acc.append(v)
                yield from row(pos + 1, v, acc)
                acc.pop()

        for filled in row(0, 1, []):
            for v in filled:
                content[v - 1] += 1
            yield from fill(r + 1, tuple(filled), content)
            for v in filled:
                content[v - 1] -= 1

    yield from fill(0, (), [0] * n)


@lru_cache(maxsize=None)
def _schur_terms(lam: Partition, n: int) -> dict:
    out: dict[tuple, int] = defaultdict(int)
    for content in _ssyt_contents(lam, n):
        out[content] += 1
    return dict(out)


def schur_monomials(lam: Partition, n: int) -> SymPoly:
    """The Schur polynomial s_λ(x_1..x_n) expanded into monomials."""
    lam = partition(lam)
    if len(lam) > n:
        raise PartitionError(f"{lam} has more than {n} parts")
    return SymPoly(n, {e: QTPoly.const(c) for e, c in _schur_terms(lam, n).items()})


@lru_cache(maxsize=None)
def kostka_number(lam: Partition, mu: Partition) -> int:
    """Number of SSYT of shape λ and partition content μ (horizontal-strip recursion)."""
    if sum(lam) != sum(mu):
        return 0
    if not mu:
        return 1
    last = mu[-1]
    rest = mu[:-1]
    total = 0
    for inner in _horizontal_strip_removals(lam, last):
        total += kostka_number(inner, rest)
    return total


def _horizontal_strip_removals(lam: Partition, r: int) -> Iterator[Partition]:
    """Partitions ν ⊂ λ with λ/ν a horizontal strip of size r."""
    lam = list(lam)
    n = len(lam)

    def rec(i: int, left: int, acc: list[int]):
        if i == n:
            if left == 0:
                yield partition(acc)
            return
        lower = lam[i + 1] if i + 1 < n else 0
        for take in range(0, min(left, lam[i] - lower) + 1):
            acc.append(lam[i] - take)
            yield from rec(i + 1, left - take, acc)
            acc.pop()

    yield from rec(0, r, [])


def power_sum(n: int, r: int = 1) -> SymPoly:
    """p_r(x_1..x_n)."""
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = r
        terms[tuple(e)] = ONE
    return SymPoly(n, terms)


def elementary(n: int, r: int) -> SymPoly:
    return SymPoly(
        n,
        {tuple(1 if i in idx else 0 for i in range(n)): ONE
         for idx in itertools.combinations(range(n), r)},
    )


def conj(lam: Partition) -> Partition:  # re-export for convenience
    return conjugate(lam)


def peel_dominant(weights: Mapping[tuple, Mapping[int, int]], n: int) -> dict[Partition, dict[int, int]]:
    """Schur coefficients of a symmetric character given as weight -> {q_exp: mult}.

    Only dominant weights are read: the coefficient of s_mu is obtained by
    descending lexicographic elimination with Kostka numbers.  The input is
    checked for Weyl-group symmetry first (each weight must carry the same
    coefficient as its dominant rearrangement).
    """
    for v, c in weights.items():
        key = tuple(sorted(v, reverse=True))
        if weights.get(key) != c:
            raise ValueError(f"character not symmetric at weight {v}")
    dom = sorted(
        (v for v in weights if all(a >= b for a, b in zip(v, v[1:])) and (not v or v[-1] >= 0)),
        reverse=True,
    )
    if any(min(v) < 0 for v in weights if v):
        raise ValueError("character has negative weights; not polynomial")
    result: dict[Partition, dict[int, int]] = {}
    for v in dom:
        mu = partition(v)
        rem = defaultdict(int, weights[v])
        for lam, coeff in result.items():
            kn = kostka_number(lam, mu)
            if kn:
                for e, c in coeff.items():
                    rem[e] -= kn * c
        rem = {e: c for e, c in rem.items() if c}
        if rem:
            result[mu] = rem
    return result
