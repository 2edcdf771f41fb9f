"""Named invariant sweeps shared by the CLI and the acceptance tests.

Each suite returns a :class:`SuiteReport`; failures are collected as data
so the first counterexample can be printed instead of raised.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Callable

from .bases import (
    branch_verdict,
    coproduct_verdict,
    e1_skew,
    hl_character,
    kschur,
    kschur_expand,
    kostka,
    product_verdict,
)
from .demazure import (
    catalan_char,
    expected_socle,
    socle_partition,
    validate_root_ideal,
)
from .partitions import (
    core_to_kbounded,
    dominance_leq,
    enumerate_kbounded,
    kbounded_to_core,
    max_kbounded,
    omega_k,
    partitions_of,
    pieri_pairs,
)


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        head = f"{self.name}: {'PASS' if self.passed else 'FAIL'} ({self.checked} cases)"
        if self.failures:
            head += f"\n  first counterexample: {self.failures[0]}"
        return head

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "rows": self.rows,
        }


def _run(tasks: list, worker: Callable, jobs: int) -> list:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    return [worker(t) for t in tasks]


def _collect(name: str, tasks: list, worker: Callable, jobs: int) -> SuiteReport:
    report = SuiteReport(name)
    for task, result in zip(tasks, _run(tasks, worker, jobs)):
        report.checked += 1
        ok, detail = result
        if detail is not None:
            report.rows.append(detail)
        if not ok:
            report.failures.append({"input": _jsonable(task), "detail": detail})
    return report


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


def kbounded_cases(m_max: int, m_min: int = 1):
    for m in range(m_min, m_max + 1):
        for k in range(1, m + 1):
            for lam in enumerate_kbounded(m, k):
                yield lam, k


# -- workers (top level so they pickle) -----------------------------------------


def _involution(task):
    lam, k = task
    back = omega_k(omega_k(lam, k), k)
    core = core_to_kbounded(kbounded_to_core(lam, k).core, k)
    return back == lam and core == lam, None


def _triangularity(task):
    lam, k = task
    f = kschur(lam, k)
    top_shape, d = expected_socle(lam, k)
    problems = []
    if f.coeffs.get(lam) != 1:
        problems.append("coefficient of s_lambda is not 1")
    for nu in f.coeffs:
        if not (dominance_leq(lam, nu) and dominance_leq(nu, top_shape)):
            problems.append(f"term {list(nu)} outside the dominance window")
    top = max(c.max_q_degree() for c in f.coeffs.values())
    if top != d:
        problems.append(f"top degree {top} != d_k = {d}")
    lead = f.coeffs.get(top_shape)
    if lead is None or lead.coeff(d) != 1:
        problems.append("top term is not 1 * s_(omega)'")
    return not problems, (problems or None)


def _socle(task):
    lam, k = task
    got = socle_partition(lam, k)
    want = expected_socle(lam, k)
    return got == want, None if got == want else {"got": _jsonable(got), "want": _jsonable(want)}


def _branch(task):
    lam, k = task
    v = branch_verdict(lam, k)
    return v.nonnegative, None if v.nonnegative else v.to_json()


def _hl(task):
    lam, k = task
    exp = kschur_expand(hl_character(lam), k)
    ok = exp.is_nonnegative()
    detail = None
    if lam == max_kbounded(sum(lam), k):
        if exp.coeffs != {lam: 1}:
            ok = False
            detail = {"maximal case": exp.to_json()}
    if not ok and detail is None:
        detail = exp.to_json()
    return ok, detail


def _pieri(task):
    lam, k = task
    exp = kschur_expand(e1_skew(kschur(lam, k)), k)
    spins = {mu: sorted(d.spins) for mu, d in pieri_pairs(lam, k)}
    try:
        got = {mu: c.q_exponents() for mu, c in exp.coeffs.items()}
    except ValueError as exc:
        return False, str(exc)
    ok = exp.ok and got == spins
    detail = None if ok else {
        "spins": {str(list(m)): s for m, s in spins.items()},
        "skew": {str(list(m)): s for m, s in got.items()},
    }
    return ok, detail


def _product(task):
    lam, k, mu, l = task
    v = product_verdict(lam, k, mu, l)
    return v.nonnegative, None if v.nonnegative else v.to_json()


def _coproduct(task):
    lam, k, m1 = task
    v = coproduct_verdict(lam, k, m1, sum(lam) - m1)
    return v.nonnegative, None if v.nonnegative else v.to_json()


def _refined(task):
    from .macdonald import refined_positivity

    lam, k = task
    v = refined_positivity(lam, k)
    row = {"lambda": list(lam), "k": k, "nonnegative": v.nonnegative, "expansion": v.expansion}
    return v.nonnegative, row


def _regular(task):
    from .macdonald import gh_character

    lam = task
    total = gh_character(lam).regular_rep_total()
    m = sum(lam)
    return total == factorial(m), None if total == factorial(m) else {"total": total}


def _kostka_pair(task):
    from .oracles import kostka_charge

    lam, mu = task
    a, b = kostka(lam, mu), kostka_charge(lam, mu)
    return a == b, None if a == b else {"engine": str(a), "charge": str(b)}


def _raising(task):
    from .oracles import raising_series_catalan

    pairs, n, lam = task
    psi = validate_root_ideal(pairs, n)
    c = catalan_char(psi, lam)
    top = max(p.max_q_degree() for p in c.values())
    r = raising_series_catalan(psi, lam, n, top + 2)
    ok = r == c
    return ok, None if ok else {"engine": {str(k): str(v) for k, v in c.items()},
                                "raising": {str(k): str(v) for k, v in r.items()}}


def _gram_schmidt(task):
    from .macdonald import modified_macdonald
    from .oracles import gram_schmidt_macdonald

    m = task
    gs = gram_schmidt_macdonald(m, m)
    bad = [list(mu) for mu, f in gs.items() if f != modified_macdonald(mu, m)]
    return not bad, None if not bad else {"mismatch": bad}


# -- random root ideals ---------------------------------------------------------


def random_root_ideal(rng: random.Random, n: int):
    """Uniform-ish random ideal: row i covers columns > o(i), o weakly increasing, o(i) >= i."""
    bounds, prev = [], 0
    for i in range(1, n + 1):
        prev = rng.randint(max(i, prev), n)
        bounds.append(prev)
    pairs = [(i, j) for i in range(1, n + 1) for j in range(bounds[i - 1] + 1, n + 1)]
    return validate_root_ideal(pairs, n)


def random_catalan_cases(count: int = 50, seed: int = 2024, n_max: int = 5, m_max: int = 5):
    rng = random.Random(seed)
    cases = []
    while len(cases) < count:
        n = rng.randint(2, n_max)
        m = rng.randint(1, m_max)
        shapes = [l for l in partitions_of(m) if len(l) <= n]
        lam = rng.choice(shapes)
        psi = random_root_ideal(rng, n)
        cases.append((tuple(psi.sorted_pairs()), n, lam))
    return cases


# -- suites -----------------------------------------------------------------------


def suite_involution(m_max: int = 8, jobs: int = 1) -> SuiteReport:
    return _collect("involution", list(kbounded_cases(m_max)), _involution, jobs)


def suite_triangularity(m_max: int = 7, jobs: int = 1) -> SuiteReport:
    return _collect("triangularity", list(kbounded_cases(m_max)), _triangularity, jobs)


def suite_socle(m_max: int = 7, jobs: int = 1) -> SuiteReport:
    return _collect("socle", list(kbounded_cases(m_max)), _socle, jobs)


def suite_branch(m_max: int = 6, jobs: int = 1) -> SuiteReport:
    tasks = [(lam, k) for lam, k in kbounded_cases(m_max, 2) if k < sum(lam)]
    return _collect("branch", tasks, _branch, jobs)


def suite_hl_filtration(m_max: int = 6, jobs: int = 1) -> SuiteReport:
    return _collect("hl-filtration", list(kbounded_cases(m_max)), _hl, jobs)


def suite_pieri(m_max: int = 5, jobs: int = 1) -> SuiteReport:
    return _collect("pieri", list(kbounded_cases(m_max)), _pieri, jobs)


def muco_cases(m_max: int = 5):
    """(product cases, coproduct cases) with total size at most m_max."""
    products, coproducts = [], []
    for a in range(0, m_max + 1):
        for b in range(0, m_max + 1 - a):
            for lam in partitions_of(a):
                for mu in partitions_of(b):
                    for k in range(max(1, lam[0] if lam else 1), max(a, 1) + 1):
                        for l in range(max(1, mu[0] if mu else 1), max(b, 1) + 1):
                            products.append((lam, k, mu, l))
    for m in range(1, m_max + 1):
        for lam in partitions_of(m):
            for k in range(lam[0], m + 1):
                for m1 in range(0, m + 1):
                    coproducts.append((lam, k, m1))
    return products, coproducts


def suite_muco(m_max: int = 5, jobs: int = 1) -> SuiteReport:
    products, coproducts = muco_cases(m_max)
    rep = _collect("muco", products, _product, jobs)
    rep2 = _collect("muco", coproducts, _coproduct, jobs)
    rep.checked += rep2.checked
    rep.failures += rep2.failures
    return rep


def suite_refined_macdonald(m_max: int = 5, jobs: int = 1) -> SuiteReport:
    tasks = [
        (lam, k)
        for m in range(1, m_max + 1)
        for lam in partitions_of(m)
        for k in range(lam[0], m + 1)
    ]
    return _collect("refined-macdonald", tasks, _refined, jobs)


def suite_regular_representation(m_max: int = 6, jobs: int = 1) -> SuiteReport:
    tasks = [lam for m in range(1, m_max + 1) for lam in partitions_of(m)]
    return _collect("regular-representation", tasks, _regular, jobs)


def suite_oracle_equivalence(m_max: int = 6, jobs: int = 1) -> SuiteReport:
    pairs = [(l, mu) for m in range(1, m_max + 1) for l in partitions_of(m) for mu in partitions_of(m)]
    rep = _collect("oracle-equivalence", pairs, _kostka_pair, jobs)
    for sub in (
        _collect("oracle-equivalence", random_catalan_cases(), _raising, jobs),
        _collect("oracle-equivalence", list(range(1, min(4, m_max) + 1)), _gram_schmidt, jobs),
    ):
        rep.checked += sub.checked
        rep.failures += sub.failures
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "involution": suite_involution,
    "triangularity": suite_triangularity,
    "socle": suite_socle,
    "branch": suite_branch,
    "hl-filtration": suite_hl_filtration,
    "pieri": suite_pieri,
    "muco": suite_muco,
    "refined-macdonald": suite_refined_macdonald,
    "oracle-equivalence": suite_oracle_equivalence,
    "regular-representation": suite_regular_representation,
}
