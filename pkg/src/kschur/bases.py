"""Schur and k-Schur expansions, Kostka polynomials, products and positivity verdicts."""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Mapping

from .charpoly import (
    ONE,
    QTPoly,
    SymPoly,
    _schur_terms,
    format_qt,
    kostka_number,
    schur_monomials,
)
from .demazure import catalan_char, full_ideal, psi_of
from .partitions import Partition, PartitionError, is_kbounded, partition, partitions_of


class ResidualError(ArithmeticError):
    """A triangular solve or peel left a nonzero remainder."""

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


# -- expansion containers --------------------------------------------------


@dataclass
class SchurExpansion:
    n: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for lam, c in self.coeffs.items():
            lam = partition(lam)
            if not isinstance(c, QTPoly):
                c = QTPoly.const(c)
            if c:
                if len(lam) > self.n:
                    raise PartitionError(f"{lam} has more than n={self.n} parts")
                clean[lam] = c
        self.coeffs = clean

    def __eq__(self, other) -> bool:
        if isinstance(other, SchurExpansion):
            return self.coeffs == other.coeffs
        if isinstance(other, Mapping):
            return self == SchurExpansion(self.n, dict(other))
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def items(self) -> list[tuple[Partition, QTPoly]]:
        return sorted(self.coeffs.items())

    def get(self, lam, default=None):
        return self.coeffs.get(partition(lam), default)

    def degree(self) -> int | None:
        sizes = {sum(l) for l in self.coeffs}
        if len(sizes) > 1:
            raise ValueError(f"inhomogeneous expansion (sizes {sorted(sizes)})")
        return sizes.pop() if sizes else None

    def add(self, other: SchurExpansion, scale: QTPoly | int = 1) -> SchurExpansion:
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out.get(lam, QTPoly()) + c * scale
        return SchurExpansion(max(self.n, other.n), out)

    def is_nonnegative(self) -> bool:
        return all(c.is_nonnegative() for c in self.coeffs.values())

    def first_negative(self) -> dict | None:
        for lam, c in self.items():
            neg = c.first_negative()
            if neg:
                (qe, te), v = neg
                return {"partition": list(lam), "q": qe, "t": te, "c": str(v)}
        return None

    def to_json(self) -> list[dict]:
        return [{"partition": list(lam), "coeff": c.to_json()} for lam, c in self.items()]

    @classmethod
    def from_json(cls, data: list[dict], n: int | None = None) -> SchurExpansion:
        coeffs = {partition(d["partition"]): QTPoly.from_json(d["coeff"]) for d in data}
        if n is None:
            n = max((len(l) for l in coeffs), default=0)
        return cls(n, coeffs)

    def to_text(self, letter: str = "s") -> str:
        return format_expansion(self.items(), letter=letter)

    def to_latex(self, letter: str = r"\tilde{s}") -> str:
        return format_expansion(self.items(), letter=letter, latex=True)

    def to_monomials(self, n: int | None = None) -> SymPoly:
        n = self.n if n is None else n
        out = SymPoly(n)
        for lam, c in self.items():
            if len(lam) <= n:
                out = out + schur_monomials(lam, n) * c
        return out

    def __str__(self) -> str:
        return self.to_text()


@dataclass
class KSchurExpansion:
    k: int
    coeffs: dict = field(default_factory=dict)
    residual: SchurExpansion | None = None

    def __post_init__(self):
        self.coeffs = {partition(l): c for l, c in self.coeffs.items() if c}
        for lam in self.coeffs:
            if not is_kbounded(lam, self.k):
                raise PartitionError(f"{lam} is not {self.k}-bounded")

    @property
    def ok(self) -> bool:
        return not self.residual

    def items(self):
        return sorted(self.coeffs.items())

    def is_nonnegative(self) -> bool:
        return self.ok and all(c.is_nonnegative() for c in self.coeffs.values())

    def first_negative(self) -> dict | None:
        for lam, c in self.items():
            neg = c.first_negative()
            if neg:
                (qe, te), v = neg
                return {"partition": list(lam), "q": qe, "t": te, "c": str(v)}
        return None

    def as_schur(self) -> SchurExpansion:
        """The same data viewed as a Schur-indexed table (for JSON output)."""
        return SchurExpansion(max((len(l) for l in self.coeffs), default=0), dict(self.coeffs))

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "coeffs": self.as_schur().to_json(),
            "residual": self.residual.to_json() if self.residual else [],
        }

    def to_text(self) -> str:
        return format_expansion(self.items(), letter=f"s{self.k}")

    def __eq__(self, other) -> bool:
        if isinstance(other, KSchurExpansion):
            return (self.k, self.coeffs) == (other.k, other.coeffs) and self.ok == other.ok
        if isinstance(other, Mapping):
            return self.ok and self.coeffs == {
                partition(l): (c if isinstance(c, QTPoly) else QTPoly.const(c))
                for l, c in other.items()
            }
        return NotImplemented


def _label(lam: Partition, latex: bool) -> str:
    if latex:
        body = "".join(map(str, lam)) if all(p < 10 for p in lam) else ",".join(map(str, lam))
        return "{" + (body or r"\varnothing") + "}"
    return "[" + ",".join(map(str, lam)) + "]"


def format_expansion(items, letter: str = "s", latex: bool = False) -> str:
    """Render ``[(partition, QTPoly), ...]`` as e.g. ``s[2,1] + q s[3]``."""
    pieces: list[tuple[str, str]] = []
    for lam, c in items:
        basis = f"{letter}_{_label(lam, True)}" if latex else f"{letter}{_label(lam, False)}"
        if len(c) == 1:
            (mono, v), = c.items()
            sign = "-" if v < 0 else "+"
            mag = format_qt(QTPoly({mono: abs(v)}), latex=latex)
            body = basis if mag == "1" else f"{mag} {basis}" if not latex else f"{mag}{basis}"
        else:
            sign = "+"
            inner = format_qt(c, latex=latex)
            body = f"({inner}) {basis}" if not latex else f"({inner}){basis}"
        pieces.append((sign, body))
    if not pieces:
        return "0"
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


# -- Schur peel ------------------------------------------------------------


def schur_peel(f: SymPoly) -> SchurExpansion:
    """Write a symmetric polynomial in the Schur basis by greedy peeling.

    The lexicographically largest exponent vector is always dominance
    maximal among those present, and for a symmetric f it is a partition.
    """
    if not f.is_symmetric():
        raise ValueError("schur_peel needs a symmetric polynomial")
    n = f.n
    out: dict[Partition, QTPoly] = {}
    rem = f
    guard = 0
    while rem:
        top, c = max(rem.items())
        if any(a < b for a, b in zip(top, top[1:])) or (top and top[-1] < 0):
            raise ResidualError(f"leading exponent {top} is not a partition", rem)
        lam = partition(top)
        out[lam] = c
        rem = rem - schur_monomials(lam, n) * c
        guard += 1
        if guard > 100000:
            raise ResidualError("schur_peel did not terminate", rem)
    return SchurExpansion(n, out)


# -- characters from the engine ---------------------------------------------


def _default_n(lam: Partition) -> int:
    return sum(lam) + 1


def hl_character(lam, n: int | None = None) -> SchurExpansion:
    """Graded character of the Hall–Littlewood module (full root ideal)."""
    lam = partition(lam)
    n = _default_n(lam) if n is None else n
    return SchurExpansion(n, catalan_char(full_ideal(n), lam))


def kostka(lam, mu, n: int | None = None) -> QTPoly:
    """K_{lam,mu}(q): coefficient of s_lam in the Hall–Littlewood character of mu."""
    lam, mu = partition(lam), partition(mu)
    if sum(lam) != sum(mu):
        raise PartitionError(f"size mismatch: |{lam}| != |{mu}|")
    return hl_character(mu, n).get(lam, QTPoly())


@lru_cache(maxsize=None)
def _kschur_cached(lam: Partition, k: int, n: int) -> tuple:
    return tuple(sorted(catalan_char(psi_of(lam, k, n), lam).items()))


def kschur(lam, k: int, n: int | None = None) -> SchurExpansion:
    lam = partition(lam)
    if not is_kbounded(lam, k):
        raise PartitionError(f"{lam} is not {k}-bounded")
    n = _default_n(lam) if n is None else n
    if len(lam) > n:
        raise PartitionError(f"{lam} has more than n={n} parts")
    return SchurExpansion(n, dict(_kschur_cached(lam, k, n)))


def kschur_expand(f: SchurExpansion, k: int) -> KSchurExpansion:
    """Unitriangular solve in the k-Schur basis, smallest partitions first.

    s^(k)_mu = s_mu + (terms strictly above mu in dominance), so the
    dominance-minimal surviving Schur term always carries its final
    coefficient.  Terms that are not k-bounded at that point cannot be
    cancelled later and are moved to the residual.
    """
    f.degree()  # rejects inhomogeneous input
    rem = dict(f.coeffs)
    coeffs: dict[Partition, QTPoly] = {}
    residual: dict[Partition, QTPoly] = {}
    while rem:
        mu = min(rem)
        c = rem.pop(mu)
        if not is_kbounded(mu, k):
            residual[mu] = c
            continue
        coeffs[mu] = c
        basis = kschur(mu, k)
        lead = basis.coeffs.get(mu)
        if lead != ONE:
            raise ResidualError(f"k-Schur basis element {mu} is not unitriangular")
        for nu, b in basis.coeffs.items():
            if nu == mu:
                continue
            if nu < mu:
                raise ResidualError(f"basis element {mu} has a term {nu} below it")
            if len(nu) > f.n:
                continue
            new = rem.get(nu, QTPoly()) - c * b
            if new:
                rem[nu] = new
            else:
                rem.pop(nu, None)
    return KSchurExpansion(k, coeffs, SchurExpansion(f.n, residual))


def branch_k(lam, k: int) -> KSchurExpansion:
    """Expansion of s^(k)_lam in the (k+1)-Schur basis."""
    lam = partition(lam)
    return kschur_expand(kschur(lam, k), k + 1)


# -- Littlewood–Richardson by product peel ----------------------------------


@lru_cache(maxsize=None)
def schur_product(mu: Partition, nu: Partition) -> tuple:
    """Schur expansion of s_mu * s_nu as sorted (lam, coeff) pairs.

    The product is formed on monomials in |mu|+|nu| variables, and only its
    dominant part is peeled with Kostka numbers.
    """
    mu, nu = partition(mu), partition(nu)
    n = max(sum(mu) + sum(nu), 1)
    a = _schur_terms(mu, n) if len(mu) <= n else {}
    b = _schur_terms(nu, n) if len(nu) <= n else {}
    dom: dict[tuple, int] = defaultdict(int)
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if all(x >= y for x, y in zip(e, e[1:])):
                dom[e] += c1 * c2
    out: dict[Partition, int] = {}
    for e in sorted(dom, reverse=True):
        lam = partition(e)
        r = dom[e] - sum(c * kostka_number(l, lam) for l, c in out.items())
        if r:
            out[lam] = r
    return tuple(sorted(out.items()))


def lr_coeff(mu, nu, lam) -> int:
    mu, nu, lam = partition(mu), partition(nu), partition(lam)
    if sum(mu) + sum(nu) != sum(lam):
        raise PartitionError("size mismatch in lr_coeff")
    return dict(schur_product(mu, nu)).get(lam, 0)


@lru_cache(maxsize=None)
def skew_split(lam: Partition, m1: int) -> tuple:
    """Pairs (alpha, beta) with |alpha| = m1 and LR coefficient c^lam_{alpha beta} > 0."""
    m2 = sum(lam) - m1
    out = []
    for alpha in partitions_of(m1):
        for beta in partitions_of(m2):
            c = lr_coeff(alpha, beta, lam)
            if c:
                out.append(((alpha, beta), c))
    return tuple(out)


def multiply(f: SchurExpansion, g: SchurExpansion) -> SchurExpansion:
    out: dict[Partition, QTPoly] = defaultdict(QTPoly)
    for lam, a in f.coeffs.items():
        for mu, b in g.coeffs.items():
            ab = a * b
            for nu, c in schur_product(lam, mu):
                out[nu] = out[nu] + ab * c
    return SchurExpansion(max(f.n + g.n, 1), dict(out))


def product_expand(lam, k: int, mu, l: int) -> KSchurExpansion:
    """s^(k)_lam * s^(l)_mu expanded in the (k+l)-Schur basis."""
    lam, mu = partition(lam), partition(mu)
    prod = multiply(kschur(lam, k), kschur(mu, l))
    prod = SchurExpansion(sum(lam) + sum(mu) + 1, prod.coeffs)
    return kschur_expand(prod, k + l)


def coproduct_expand(lam, k: int, m1: int, m2: int) -> dict:
    """s^(k)_lam(X+Y) in the basis s^(k)(X) s^(k)(Y), graded piece (m1, m2).

    Returns ``{(alpha, beta): coeff}``; raises ResidualError if the solve
    leaves a nonzero remainder.
    """
    lam = partition(lam)
    if m1 + m2 != sum(lam) or m1 < 0 or m2 < 0:
        raise PartitionError("m1 + m2 must equal |lam|")
    rem: dict[tuple, QTPoly] = defaultdict(QTPoly)
    for nu, c in kschur(lam, k).coeffs.items():
        for pair, lr in skew_split(nu, m1):
            rem[pair] = rem[pair] + c * lr
    rem = {p: c for p, c in rem.items() if c}
    out: dict[tuple, QTPoly] = {}
    while rem:
        pair = min(rem)
        c = rem.pop(pair)
        alpha, beta = pair
        if not (is_kbounded(alpha, k) and is_kbounded(beta, k)):
            raise ResidualError(f"non-k-bounded term {pair} survives", {pair: c, **rem})
        out[pair] = c
        for a2, ca in kschur(alpha, k).coeffs.items():
            for b2, cb in kschur(beta, k).coeffs.items():
                if (a2, b2) == pair:
                    continue
                new = rem.get((a2, b2), QTPoly()) - c * ca * cb
                if new:
                    rem[(a2, b2)] = new
                else:
                    rem.pop((a2, b2), None)
    return out


# -- Pieri skewing ------------------------------------------------------------


def e1_skew(f: SchurExpansion) -> SchurExpansion:
    """Adjoint of multiplication by e_1: remove one box in every possible way."""
    out: dict[Partition, QTPoly] = defaultdict(QTPoly)
    for lam, c in f.coeffs.items():
        if not lam:
            continue
        for r in range(len(lam)):
            if r + 1 < len(lam) and lam[r + 1] == lam[r]:
                continue
            mu = partition(lam[:r] + (lam[r] - 1,) + lam[r + 1 :])
            out[mu] = out[mu] + c
    return SchurExpansion(f.n, dict(out))


# -- verdict reports ------------------------------------------------------------


@dataclass
class Verdict:
    claim: str
    inputs: dict
    expansion: Any
    nonnegative: bool
    witness: dict | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "claim": self.claim,
            "inputs": self.inputs,
            "expansion": self.expansion,
            "nonnegative": self.nonnegative,
            "witness": self.witness,
        }
        if self.note:
            out["note"] = self.note
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def kexp_verdict(claim: str, inputs: dict, exp: KSchurExpansion) -> Verdict:
    witness = exp.first_negative()
    note = ""
    if not exp.ok:
        witness = {"residual": exp.residual.to_json()}
        note = "residual nonzero"
    return Verdict(claim, inputs, exp.as_schur().to_json(), exp.is_nonnegative(), witness, note)


def branch_verdict(lam, k: int) -> Verdict:
    lam = partition(lam)
    return kexp_verdict(
        "branching", {"lambda": list(lam), "k": k}, branch_k(lam, k)
    )


def hl_filtration_verdict(lam, k: int) -> Verdict:
    lam = partition(lam)
    return kexp_verdict(
        "hl-filtration", {"lambda": list(lam), "k": k}, kschur_expand(hl_character(lam), k)
    )


def product_verdict(lam, k: int, mu, l: int) -> Verdict:
    lam, mu = partition(lam), partition(mu)
    return kexp_verdict(
        "product",
        {"lambda": list(lam), "k": k, "mu": list(mu), "l": l},
        product_expand(lam, k, mu, l),
    )


def coproduct_verdict(lam, k: int, m1: int, m2: int) -> Verdict:
    lam = partition(lam)
    inputs = {"lambda": list(lam), "k": k, "m1": m1, "m2": m2}
    try:
        table = coproduct_expand(lam, k, m1, m2)
    except ResidualError as exc:
        return Verdict("coproduct", inputs, [], False, {"error": str(exc)}, "residual nonzero")
    expansion = [
        {"left": list(a), "right": list(b), "coeff": c.to_json()}
        for (a, b), c in sorted(table.items())
    ]
    witness = None
    for (a, b), c in sorted(table.items()):
        neg = c.first_negative()
        if neg:
            witness = {"left": list(a), "right": list(b), "q": neg[0][0], "t": neg[0][1], "c": str(neg[1])}
            break
    return Verdict("coproduct", inputs, expansion, witness is None, witness)
