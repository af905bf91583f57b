"""Command-line experiment runner.

Exit codes: 0 on success, 1 when a verification fails (identity, Weil,
Ramanujan, factorization, sandwich), 2 on usage or input-format errors.
Every report is CSV first; --json mirrors the same rows for programmatic
consumers, and scan can additionally render a figure next to the CSV.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import expsums, sieve
from .characters import enumerate_G_a, xi_eval
from .modular import primes_in, tau
from .sequences import FormatError, LengthMismatch, load_sequence

IDENTITY_TOL = 1e-9


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def _write_csv(path: str | None, header: list[str], rows: list[dict]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(row[h]) for h in header))
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_json(path: str | None, rows: list[dict]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
            fh.write("\n")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SIEVELAB_THREADS", "1")))
    except ValueError:
        return 1


def _fail(messages: list[str]) -> None:
    for msg in messages:
        print(f"FAIL: {msg}", file=sys.stderr)


# --------------------------------------------------------------------------
# verbs


def cmd_verify_identity(args) -> int:
    seq = load_sequence(args.seq, args.m, args.n, args.seed)
    report = sieve.identity_report(args.qmax, seq)
    rows = []
    failures = []
    for q in sorted(report.per_q_character):
        cs = report.per_q_character[q]
        gs = report.per_q_congruence[q]
        rel = abs(cs - gs) / max(1.0, abs(cs))
        ok = rel <= args.tol
        rows.append(
            {
                "q": q,
                "character_side": cs,
                "congruence_side": gs,
                "rel_discrepancy": rel,
                "pass": ok,
            }
        )
        if not ok:
            failures.append(f"identity at q={q}: rel discrepancy {rel:.3e}")
    header = ["q", "character_side", "congruence_side", "rel_discrepancy", "pass"]
    _write_csv(args.out, header, rows)
    _write_json(args.json, rows)
    print(
        f"identity: qmax={args.qmax} N={seq.N} M={seq.M} "
        f"total={report.character_total:.12g} "
        f"dyadic_T={report.dyadic_block_total:.12g} "
        f"max_rel={report.max_rel_discrepancy:.3e} "
        f"(q=2 included: {report.includes_q2})",
        file=sys.stderr,
    )
    _fail(failures)
    return 1 if failures else 0


def cmd_extremal(args) -> int:
    rep = sieve.bound_report(args.qmax, args.n, args.m, seed=args.seed)
    row = _scan_row(rep)
    header = list(row)
    _write_csv(args.out, header, [row])
    _write_json(args.json, [row])
    failures = _sandwich_failures([rep])
    _fail(failures)
    return 1 if failures else 0


def _scan_row(rep: sieve.SieveReport) -> dict:
    return {
        "Q": rep.Q,
        "N": rep.N,
        "M": rep.M,
        "lambda_max": rep.lambda_max,
        "trivial_envelope": rep.trivial_envelope,
        "theorem_envelope": rep.theorem_envelope,
        "ratio_trivial": rep.ratio_trivial,
        "ratio_theorem": rep.ratio_theorem,
        "regime": rep.regime,
    }


def _sandwich_failures(reports: list[sieve.SieveReport]) -> list[str]:
    out = []
    for rep in reports:
        if not rep.converged:
            out.append(f"power iteration did not converge at Q={rep.Q} N={rep.N}")
        if rep.probe_quotient > rep.lambda_max + 1e-6 * max(1.0, rep.lambda_max):
            out.append(
                f"probe quotient {rep.probe_quotient:.6g} exceeds "
                f"lambda {rep.lambda_max:.6g} at Q={rep.Q} N={rep.N}"
            )
        if rep.lambda_max > rep.trivial_envelope + 1e-9:
            out.append(
                f"lambda {rep.lambda_max:.6g} exceeds trivial envelope "
                f"{rep.trivial_envelope:.6g} at Q={rep.Q} N={rep.N}"
            )
        if not math.isfinite(rep.ratio_theorem):
            out.append(f"non-finite theorem ratio at Q={rep.Q} N={rep.N}")
    return out


def cmd_scan(args) -> int:
    qlist = [int(s) for s in args.qlist.split(",")] if args.qlist else [args.qmax]
    nlist = [int(s) for s in args.nlist.split(",")]
    if any(q < 2 for q in qlist) or any(n < 1 for n in nlist):
        raise ValueError("scan needs Q >= 2 and N >= 1")
    cells = [(q, n) for q in qlist for n in nlist]

    def work(cell):
        q, n = cell
        return sieve.bound_report(q, n, args.m, seed=args.seed)

    width = _threads()
    if width > 1:
        with ThreadPoolExecutor(max_workers=width) as pool:
            reports = list(pool.map(work, cells))  # map keeps cell order
    else:
        reports = [work(c) for c in cells]
    rows = [_scan_row(rep) for rep in reports]
    header = list(rows[0])
    _write_csv(args.out, header, rows)
    _write_json(args.json, rows)
    if args.plot:
        from .plotting import render_scan_plot

        render_scan_plot(rows, args.plot)
    failures = _sandwich_failures(reports)
    _fail(failures)
    return 1 if failures else 0


def cmd_characters(args) -> int:
    family = enumerate_G_a(args.p, args.a)
    p2 = args.p * args.p
    rows = []
    for chi in family:
        for u in range(1, p2):
            if math.gcd(u, args.p) != 1:
                continue
            v = xi_eval(chi, u)
            rows.append(
                {
                    "char_j": chi.j,
                    "unit": u,
                    "angle_num": v.angle.num,
                    "angle_den": v.angle.den,
                }
            )
    _write_csv(args.out, ["char_j", "unit", "angle_num", "angle_den"], rows)
    _write_json(args.json, rows)
    return 0


def cmd_kloosterman(args) -> int:
    rep = expsums.weil_check(args.m, args.n, args.c)
    row = {
        "c": args.c,
        "m": args.m,
        "n": args.n,
        "real": rep.value.real,
        "imag": rep.value.imag,
        "bound": rep.bound,
        "pass": rep.passed,
    }
    _write_csv(args.out, ["c", "m", "n", "real", "imag", "bound", "pass"], [row])
    _write_json(args.json, [row])
    if not rep.passed:
        _fail([f"Weil bound fails at (m,n,c)=({args.m},{args.n},{args.c})"])
        return 1
    return 0


def cmd_weil_grid(args) -> int:
    rows = []
    failures = []
    for c in range(2, args.cmax + 1):
        K = expsums.kloosterman_all(c)
        ms = np.arange(c)
        g = np.gcd.outer(np.gcd(ms, c), np.gcd(ms, c))
        bound = np.sqrt(g) * math.sqrt(c) * tau(c)
        ratio = np.abs(K) / bound
        bad = np.argwhere(np.abs(K) > bound + 1e-9)
        wm, wn = np.unravel_index(int(ratio.argmax()), ratio.shape)
        # one row per modulus: the worst (m, n) pair, plus any outright failures
        for m, n in [(int(wm), int(wn))] + [tuple(map(int, b)) for b in bad]:
            ok = abs(K[m, n]) <= bound[m, n] + 1e-9
            rows.append(
                {
                    "c": c,
                    "m": m,
                    "n": n,
                    "real": float(K[m, n].real),
                    "imag": float(K[m, n].imag),
                    "bound": float(bound[m, n]),
                    "pass": ok,
                }
            )
            if not ok:
                failures.append(f"Weil bound fails at (m,n,c)=({m},{n},{c})")
    _write_csv(args.out, ["c", "m", "n", "real", "imag", "bound", "pass"], rows)
    _write_json(args.json, rows)
    _fail(failures)
    return 1 if failures else 0


def cmd_factor_check(args) -> int:
    rng = np.random.Generator(np.random.PCG64(args.seed))
    pool = primes_in(2, args.pmax)
    if len(pool) < 3:
        raise ValueError("pmax leaves fewer than 3 primes")
    rows = []
    failures = []
    for trial in range(args.trials):
        q, q1, q2 = (int(x) for x in rng.choice(pool, size=3, replace=False))
        l, l1, l2 = (int(x) for x in rng.integers(-2 * args.pmax, 2 * args.pmax + 1, 3))
        spec = expsums.AmplitudeSpec(q=q, q1=q1, q2=q2, l=l, l1=l1, l2=l2)
        rep = expsums.factorization_check(spec)
        rows.append(
            {
                "trial": trial,
                "q": q,
                "q1": q1,
                "q2": q2,
                "l": l,
                "l1": l1,
                "l2": l2,
                "abs_diff": abs(rep.value),
                "bound": rep.bound,
                "terms_skipped": rep.terms_skipped,
                "pass": rep.passed,
            }
        )
        if not rep.passed:
            failures.append(f"factorization fails at trial {trial}: {spec}")
    header = [
        "trial", "q", "q1", "q2", "l", "l1", "l2",
        "abs_diff", "bound", "terms_skipped", "pass",
    ]
    _write_csv(args.out, header, rows)
    _write_json(args.json, rows)
    _fail(failures)
    return 1 if failures else 0


def cmd_ramanujan_grid(args) -> int:
    rows = []
    failures = []
    for q in range(1, args.qmax + 1):
        values = expsums.ramanujan_grid(q, args.lmax)
        for l in range(args.lmax + 1):
            bound = math.gcd(l, q)
            ok = abs(values[l]) <= bound + 1e-9
            rows.append(
                {"q": q, "l": l, "value": float(values[l]), "bound": bound, "pass": ok}
            )
            if not ok:
                failures.append(f"Ramanujan bound fails at (l,q)=({l},{q})")
    _write_csv(args.out, ["q", "l", "value", "bound", "pass"], rows)
    _write_json(args.json, rows)
    _fail(failures)
    return 1 if failures else 0


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sievelab",
        description="Large-sieve experiments for special characters mod p^2",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--out", help="CSV output path (default stdout)")
        p.add_argument("--json", help="JSON mirror of the CSV rows")

    p = sub.add_parser("verify-identity", help="check both sides of the exact identity")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--seq", default="random", help="ones|random|mobius|file:PATH")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=IDENTITY_TOL)
    common(p)
    p.set_defaults(func=cmd_verify_identity)

    p = sub.add_parser("extremal", help="largest eigenvalue of the sieve kernel")
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("scan", help="grid scan of extremal constants and envelopes")
    p.add_argument("--qmax", type=int, default=None)
    p.add_argument("--qlist", help="comma list of Q values (overrides --qmax)")
    p.add_argument("--nlist", required=True, help="comma list of N values")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plot", help="render a PNG figure next to the CSV")
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("characters", help="dump the value tables of a family G_a")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--dump", action="store_true", help="accepted for compatibility")
    common(p)
    p.set_defaults(func=cmd_characters)

    p = sub.add_parser("kloosterman", help="one Kloosterman sum with its Weil bound")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_kloosterman)

    p = sub.add_parser("weil-grid", help="exhaustive Weil check for all c <= cmax")
    p.add_argument("--cmax", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_weil_grid)

    p = sub.add_parser("factor-check", help="triple-Ramanujan factorization trials")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pmax", type=int, default=23)
    common(p)
    p.set_defaults(func=cmd_factor_check)

    p = sub.add_parser("ramanujan-grid", help="gcd bound for all c_q(l) on a grid")
    p.add_argument("--qmax", type=int, default=100)
    p.add_argument("--lmax", type=int, default=200)
    common(p)
    p.set_defaults(func=cmd_ramanujan_grid)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "scan" and args.qlist is None and args.qmax is None:
        parser.error("scan requires --qmax or --qlist")
    if args.verb == "verify-identity" and args.seq == "random" and args.seed is None:
        parser.error("--seq random requires --seed")
    try:
        return args.func(args)
    except (ValueError, FormatError, LengthMismatch, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
