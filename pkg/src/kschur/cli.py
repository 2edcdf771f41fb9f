"""Command-line front end.

Exit codes: 0 success, 1 a verification suite failed, 2 domain error
(bad input), 3 internal inconsistency (nonzero residual and the like).
"""

from __future__ import annotations

import argparse
import csv
import io
import random
import sys

from . import __version__
from .bases import ResidualError, SchurExpansion, kschur
from .cache import ResultCache, canonical, resolve_dir
from .demazure import (
    RootIdeal,
    RootIdealError,
    catalan_char,
    empty_ideal,
    full_ideal,
    psi_of,
    validate_root_ideal,
)
from .partitions import (
    PartitionError,
    conjugate,
    d_k,
    enumerate_kbounded,
    kbounded_to_core,
    omega_k,
    parse_partition,
)

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_INTERNAL = 0, 1, 2, 3


class DomainError(Exception):
    pass


# -- argument helpers ---------------------------------------------------------


def parse_psi(text: str, n: int) -> RootIdeal:
    text = text.strip()
    if text == "":
        return empty_ideal(n)
    if text == "full":
        return full_ideal(n)
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            i, j = (int(x) for x in chunk.split(","))
        except ValueError:
            raise DomainError(f"bad root {chunk!r}; expected i,j") from None
        pairs.append((i, j))
    return validate_root_ideal(pairs, n)


def _tuple_text(lam) -> str:
    return "(" + ",".join(map(str, lam)) + ")"


# -- payload builders (pure, cacheable) -----------------------------------------


def payload_kconj(lam, k: int) -> dict:
    pair = kbounded_to_core(lam, k)
    return {
        "lambda": list(lam),
        "k": k,
        "omega": list(omega_k(lam, k)),
        "d": d_k(lam, k),
        "core": list(pair.core),
        "inner": list(pair.inner),
    }


def payload_kschur(lam, k: int, n: int | None) -> dict:
    f = kschur(lam, k, n)
    return {"lambda": list(lam), "k": k, "n": f.n, "expansion": f.to_json()}


def payload_catalan(psi: RootIdeal, lam) -> dict:
    exp = SchurExpansion(psi.n, catalan_char(psi, lam))
    return {"lambda": list(lam), "n": psi.n, "psi": psi.to_json(), "expansion": exp.to_json()}


def payload_macdonald(lam) -> dict:
    from .macdonald import gh_character

    return {"lambda": list(lam), **gh_character(lam).to_json()}


# -- renderers -----------------------------------------------------------------------


def render(op: str, payload: dict, fmt: str) -> str:
    if fmt == "json":
        return canonical(payload)
    if op == "kconj":
        if fmt == "latex":
            return (
                rf"\lambda^{{\omega_{{{payload['k']}}}}} = {_tuple_text(payload['omega'])},\quad "
                rf"d_{{{payload['k']}}}(\lambda) = {payload['d']}"
            )
        return (
            f"omega={_tuple_text(payload['omega'])} d={payload['d']} "
            f"core={_tuple_text(payload['core'])} inner={_tuple_text(payload['inner'])}"
        )
    if op == "macdonald":
        from .macdonald import GHCharacter

        exp = SchurExpansion.from_json(payload["coeffs"], max(payload["m"], 1))
        if fmt == "latex":
            return GHCharacter(payload["m"], exp.coeffs).to_latex()
        return exp.to_text()
    exp = SchurExpansion.from_json(payload["expansion"], payload["n"])
    if fmt == "latex":
        label = "".join(map(str, payload["lambda"]))
        head = (
            rf"\tilde{{s}}^{{({payload['k']})}}_{{{label}}}"
            if op == "kschur"
            else rf"\mathrm{{gch}}\,\mathtt{{HL}}^{{\Psi}}_{{{label}}}"
        )
        return f"{head} = {exp.to_latex()}"
    return exp.to_text()


# -- cache plumbing -------------------------------------------------------------


def cached(args, op: str, inputs: dict, build):
    if args.no_cache:
        return build()
    cache = ResultCache(resolve_dir(args.cache_dir), __version__)
    hit = cache.get(op, inputs)
    if hit is not None:
        if args.verify_cache and random.random() < args.verify_rate:
            fresh = build()
            if canonical(fresh) != canonical(hit):
                raise ResidualError(f"cache entry for {op} {inputs} differs from recomputation")
        return hit
    value = build()
    cache.put(op, inputs, value)
    return value


# -- commands -------------------------------------------------------------------


def cmd_kconj(args) -> str:
    lam = parse_partition(args.partition)
    payload = cached(args, "kconj", {"lambda": list(lam), "k": args.k}, lambda: payload_kconj(lam, args.k))
    return render("kconj", payload, args.format)


def cmd_kschur(args) -> str:
    lam = parse_partition(args.partition)
    inputs = {"lambda": list(lam), "k": args.k, "n": args.n}
    payload = cached(args, "kschur", inputs, lambda: payload_kschur(lam, args.k, args.n))
    return render("kschur", payload, args.format)


def cmd_catalan(args) -> str:
    lam = parse_partition(args.partition)
    n = args.n if args.n is not None else sum(lam) + 1
    if args.psi_of is not None and args.psi is not None:
        raise DomainError("give either --psi or --psi-of, not both")
    if args.psi_of is not None:
        psi = psi_of(lam, args.psi_of, n)
    elif args.psi is not None and args.psi.startswith("psi-of:"):
        psi = psi_of(lam, int(args.psi.split(":", 1)[1]), n)
    else:
        psi = parse_psi(args.psi or "", n)
    inputs = {"lambda": list(lam), "psi": psi.to_json()}
    payload = cached(args, "catalan", inputs, lambda: payload_catalan(psi, lam))
    if args.format == "text" and args.show_ideal:
        return psi.render() + "\n" + render("catalan", payload, args.format)
    return render("catalan", payload, args.format)


def cmd_macdonald(args) -> str:
    lam = parse_partition(args.partition)
    payload = cached(args, "macdonald", {"lambda": list(lam)}, lambda: payload_macdonald(lam))
    return render("macdonald", payload, args.format)


def cmd_verify(args) -> tuple[str, int]:
    from .verify import SUITES

    suite = SUITES[args.suite]
    kwargs = {"jobs": args.jobs}
    if args.m_max is not None:
        kwargs["m_max"] = args.m_max
    report = suite(**kwargs)
    if args.format == "json":
        text = canonical(report.to_json())
    else:
        lines = [report.summary()]
        if args.suite == "refined-macdonald":
            for row in report.rows:
                exp = SchurExpansion.from_json(row["expansion"])
                lines.append(
                    f"  {_tuple_text(row['lambda'])} k={row['k']}: "
                    f"{'ok' if row['nonnegative'] else 'NEGATIVE'}  {exp.to_text(letter='s~')}"
                )
        text = "\n".join(lines)
    return text, EXIT_OK if report.passed else EXIT_FAIL


def cmd_sweep(args) -> str:
    rows = []
    for m in range(1, args.m_max + 1):
        for k in range(1, m + 1):
            if args.k is not None and k != args.k:
                continue
            for lam in enumerate_kbounded(m, k):
                f = kschur(lam, k)
                top = max(c.max_q_degree() for c in f.coeffs.values())
                socle = [list(mu) for mu, c in f.items() if c.max_q_degree() == top]
                rows.append(
                    {
                        "lambda": list(lam),
                        "k": k,
                        "omega": list(omega_k(lam, k)),
                        "d": d_k(lam, k),
                        "top_degree": top,
                        "socle": socle,
                        "terms": len(f.coeffs),
                        "expected_socle": list(conjugate(omega_k(lam, k))),
                    }
                )
    if args.format == "json":
        return canonical(rows)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["lambda", "k", "omega", "d", "top_degree", "socle", "terms"])
    for r in rows:
        writer.writerow(
            [
                " ".join(map(str, r["lambda"])),
                r["k"],
                " ".join(map(str, r["omega"])),
                r["d"],
                r["top_degree"],
                "|".join(" ".join(map(str, s)) for s in r["socle"]),
                r["terms"],
            ]
        )
    return buf.getvalue().rstrip("\n")


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .verify import SUITES

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=None, help="cache directory (KSCHUR_CACHE_DIR wins)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")
    common.add_argument("--verify-cache", action="store_true", help="recompute cache hits and compare")
    common.add_argument("--verify-rate", type=float, default=1.0, help="fraction of hits to recompute")

    p = argparse.ArgumentParser(prog="kschur", description="k-Schur and Catalan characters")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    fmt3 = ["text", "json", "latex"]

    s = sub.add_parser("kconj", parents=[common], help="k-conjugate, d_k and the (k+1)-core")
    s.add_argument("partition")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--format", choices=fmt3, default="text")
    s.set_defaults(func=cmd_kconj)

    s = sub.add_parser("kschur", parents=[common], help="Schur expansion of a k-Schur character")
    s.add_argument("partition")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--format", choices=fmt3, default="text")
    s.set_defaults(func=cmd_kschur)

    s = sub.add_parser("catalan", parents=[common], help="character for a root ideal")
    s.add_argument("partition")
    s.add_argument("--psi", default=None, help='"" (empty), "full", "i,j;i,j;..." or "psi-of:K"')
    s.add_argument("--psi-of", type=int, default=None, metavar="K")
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--show-ideal", action="store_true", help="draw the root ideal first (text only)")
    s.add_argument("--format", choices=fmt3, default="text")
    s.set_defaults(func=cmd_catalan)

    s = sub.add_parser("macdonald", parents=[common], help="bigraded Garsia-Haiman character")
    s.add_argument("partition")
    s.add_argument("--format", choices=fmt3, default="json")
    s.set_defaults(func=cmd_macdonald)

    s = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--m-max", type=int, default=None)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common], help="table of k-Schur data for all small cases")
    s.add_argument("--m-max", type=int, default=5)
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (PartitionError, RootIdealError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ResidualError, ArithmeticError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    sys.stdout.write(result + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
