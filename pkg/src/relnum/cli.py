"""Command-line front end: ``relnum decide|mk|scan|verify|greedy|families|identities``.

Exit codes: 0 relation number found / all checks pass, 1 certified free or a
failed check, 2 unknown at the cutoff, 64 bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd
from pathlib import Path

from .decide import (
    FREE,
    RELATION,
    UNKNOWN,
    GreedyParams,
    ZeroLambda,
    decide,
    greedy_find,
    mindeg_lower_bound,
    mk_table,
    verify_witness,
)
from .numeric import INF, ParseError, parse_lambda
from .wcf import format_seq, parse_seq

EXIT_OK, EXIT_FREE, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64
_VERDICT_EXIT = {RELATION: EXIT_OK, FREE: EXIT_FREE, UNKNOWN: EXIT_UNKNOWN}

CSV_COLUMNS = ["p", "q", "verdict", "mindeg_lo", "mindeg_hi", "witness", "method", "ms"]


class UsageError(Exception):
    pass


def _threads(value) -> int:
    if value is not None:
        return value
    env = os.environ.get("RELNUM_THREADS")
    if not env:
        return 1
    try:
        n = int(env)
    except ValueError as exc:
        raise UsageError(f"RELNUM_THREADS must be an integer, got {env!r}") from exc
    if n < 1:
        raise UsageError("RELNUM_THREADS must be >= 1")
    return n


def _lam(text: str):
    lam = parse_lambda(text)
    if not lam:
        raise ZeroLambda("lambda must be nonzero")
    return lam


def _fmt(x) -> str:
    if x is None:
        return "-"
    if x is INF:
        return "inf"
    return str(x)


def _out(text: str):
    sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# decide / mk
# ---------------------------------------------------------------------------


def cmd_decide(args) -> int:
    lam = _lam(args.lam)
    rep = decide(
        lam,
        k_max=args.max_k,
        timeout=args.timeout,
        threads=_threads(args.threads),
        eps_bits=args.eps_bits,
        precheck=not args.no_precheck,
    )
    if args.json:
        _out(json.dumps(rep.to_dict()))
    else:
        _out(f"lambda   {rep.lam}")
        _out(f"verdict  {rep.verdict}")
        if rep.witness is not None:
            _out(f"witness  ({format_seq(rep.witness)})")
        if rep.mindeg is not None:
            _out(f"mindeg   {rep.mindeg}")
        else:
            hi = "" if rep.mindeg_hi is None else f", <= {rep.mindeg_hi}"
            _out(f"mindeg   >= {rep.mindeg_lo}{hi}")
        _out(f"method   {rep.method}")
        _out(f"elapsed  {rep.elapsed:.2f}s")
        for e in rep.ladder.entries:
            val = _fmt(e.value) if e.abs_sq is None else f"|M|^2 = {_fmt(e.abs_sq)}"
            _out(f"  M_{e.k} = {val}")
    return _VERDICT_EXIT[rep.verdict]


def cmd_mk(args) -> int:
    lam = _lam(args.lam)
    ladder = mk_table(lam, args.up_to, timeout=args.timeout, threads=_threads(args.threads))
    if args.format == "json":
        _out(json.dumps({"lambda": str(lam), "ladder": ladder.to_dict()}))
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["k", "M_k", "sequence"])
        for e in ladder.entries:
            w.writerow([e.k, _fmt(e.value), format_seq(e.sequence)])
    else:
        for e in ladder.entries:
            _out(f"M_{e.k} = {_fmt(e.value)}\t({format_seq(e.sequence)})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------


def _parse_range(text: str) -> tuple[int, int]:
    try:
        a, _, b = text.partition("..")
        lo, hi = int(a), int(b or a)
    except ValueError as exc:
        raise UsageError(f"range must look like a..b, got {text!r}") from exc
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _seq_field(w) -> str:
    return "" if w is None else " ".join(str(x) for x in w)


def _scan_item(p: int, q: int, mode: str, timeout, k_max: int, params) -> dict:
    lam = Fraction(p, q)
    t0 = time.monotonic()
    if mode == "exhaustive":
        rep = decide(lam, k_max=k_max, timeout=timeout)
        verdict, w = rep.verdict, rep.witness
        lo = rep.mindeg if rep.mindeg is not None else rep.mindeg_lo
        hi = rep.mindeg if rep.mindeg is not None else rep.mindeg_hi
        if verdict == FREE:
            lo = hi = None
    else:
        gp = params or GreedyParams.default_for(lam)
        w = greedy_find(lam, gp, timeout=timeout)
        lo = mindeg_lower_bound(lam)
        if w is None:
            verdict, hi = UNKNOWN, None
        else:
            verdict, hi = RELATION, len(w)
    if w is not None and not verify_witness(lam, w, word=False).ok:
        raise AssertionError(f"witness {w} for {lam} failed verification")
    return {
        "p": p,
        "q": q,
        "verdict": verdict,
        "mindeg_lo": lo,
        "mindeg_hi": hi,
        "witness": _seq_field(w),
        "method": mode,
        "ms": int((time.monotonic() - t0) * 1000),
    }


def _load_rows(path: Path, fmt: str) -> dict:
    """Rows already on disk whose witnesses re-verify; keyed by ``(p, q)``."""
    if not path.exists() or path.stat().st_size == 0:
        return {}
    rows = []
    with path.open(encoding="utf-8") as fh:
        if fmt == "csv":
            rows = list(csv.DictReader(fh))
        else:
            rows = [json.loads(line) for line in fh if line.strip()]
    keep = {}
    for r in rows:
        p, q = int(r["p"]), int(r["q"])
        wtxt = str(r.get("witness") or "").strip()
        if wtxt:
            w = tuple(int(x) for x in wtxt.split())
            if not verify_witness(Fraction(p, q), w, word=False).ok:
                continue
        keep[(p, q)] = r
    return keep


def _rewrite(path: Path, fmt: str, rows: list):
    with path.open("w", encoding="utf-8", newline="") as fh:
        if fmt == "csv":
            w = csv.DictWriter(fh, CSV_COLUMNS, lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: ("" if r[k] is None else r[k]) for k in CSV_COLUMNS})
        else:
            for r in rows:
                fh.write(json.dumps({k: r[k] for k in CSV_COLUMNS}) + "\n")


def cmd_scan(args) -> int:
    q = args.den
    if q < 1:
        raise UsageError("--den must be >= 1")
    lo, hi = _parse_range(args.num)
    items = [(p, q) for p in range(lo, hi + 1) if p and gcd(p, q) == 1]
    params = None
    if args.mode == "greedy" and (args.greedy_n or args.greedy_w):
        params = GreedyParams(args.greedy_n or 5, args.greedy_w or q, args.max_k)
    path = Path(args.out) if args.out else None
    fmt = args.format or (("json" if path.suffix in (".json", ".jsonl") else "csv") if path else "csv")

    done = {}
    if path is not None:
        try:
            done = _load_rows(path, fmt)
            # drop rows that failed re-verification and normalise the file
            _rewrite(path, fmt, [done[k] for k in sorted(done, key=lambda pq: Fraction(*pq))])
        except OSError as exc:
            raise UsageError(f"cannot use output file {path}: {exc}") from exc
    todo = [pq for pq in items if pq not in done]

    writer = None
    fh = None
    if path is not None:
        fh = path.open("a", encoding="utf-8", newline="")
        if fmt == "csv":
            writer = csv.DictWriter(fh, CSV_COLUMNS, lineterminator="\n")
            if path.stat().st_size == 0:
                writer.writeheader()
    else:
        if fmt == "csv":
            writer = csv.DictWriter(sys.stdout, CSV_COLUMNS, lineterminator="\n")
            writer.writeheader()

    def emit(row):
        clean = {k: ("" if row[k] is None else row[k]) for k in CSV_COLUMNS}
        if fmt == "csv":
            writer.writerow(clean)
        else:
            (fh or sys.stdout).write(json.dumps({k: row[k] for k in CSV_COLUMNS}) + "\n")
        (fh or sys.stdout).flush()

    workers = _threads(args.workers)
    status = EXIT_OK
    try:
        job = [(p, q, args.mode, args.timeout_per, args.max_k, params) for p, q in todo]
        if workers > 1 and len(job) > 1:
            with ProcessPoolExecutor(workers) as ex:
                results = ex.map(_scan_item, *zip(*job))
                for row in results:
                    emit(row)
                    status = max(status, EXIT_UNKNOWN if row["verdict"] == UNKNOWN else EXIT_OK)
        else:
            for j in job:
                row = _scan_item(*j)
                emit(row)
                status = max(status, EXIT_UNKNOWN if row["verdict"] == UNKNOWN else EXIT_OK)
    finally:
        if fh is not None:
            fh.close()
    return status


# ---------------------------------------------------------------------------
# verify / greedy / families / identities
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    lam = _lam(args.lam)
    try:
        n = parse_seq(args.seq)
    except ValueError as exc:
        raise UsageError(f"cannot parse sequence {args.seq!r}") from exc
    if any(x is INF for x in n):
        raise UsageError("a witness has integer entries only")
    chk = verify_witness(lam, n, word=True)
    out = {"lambda": str(lam), "sequence": list(n), "reduced": list(chk.reduced), **chk.flags()}
    if args.word and chk.ok:
        from .witness import relation_word

        rw = relation_word(chk.reduced, lam)
        out["commutator"] = rw.commutator_text
    if args.json:
        _out(json.dumps(out))
    else:
        for k, v in out.items():
            _out(f"{k:16} {v}")
    return EXIT_OK if chk.ok else EXIT_FREE


def cmd_greedy(args) -> int:
    lam = _lam(args.lam)
    if not lam.is_real():
        raise UsageError("greedy search needs a real lambda")
    params = GreedyParams.default_for(lam)
    params = GreedyParams(
        args.greedy_n if args.greedy_n is not None else params.N,
        args.greedy_w if args.greedy_w is not None else params.W,
        args.max_k if args.max_k is not None else params.k_max,
    )
    t0 = time.monotonic()
    w = greedy_find(lam, params, timeout=args.timeout)
    ok = w is not None and verify_witness(lam, w, word=False).ok
    out = {
        "lambda": str(lam),
        "witness": None if w is None else list(w),
        "length": None if w is None else len(w),
        "verified": ok,
        "params": {"N": params.N, "W": str(params.W), "k_max": params.k_max},
        "elapsed": time.monotonic() - t0,
    }
    if args.json:
        _out(json.dumps(out))
    elif w is None:
        _out(f"no witness found for {lam} (N={params.N}, W={params.W}, k_max={params.k_max})")
    else:
        _out(f"witness  ({format_seq(w)})  length {len(w)}  verified {ok}")
    if w is None:
        return EXIT_UNKNOWN
    return EXIT_OK if ok else EXIT_FREE


def _kv(items) -> dict:
    out = {}
    for it in items or []:
        k, sep, v = it.partition("=")
        if not sep:
            raise UsageError(f"parameter must be name=value, got {it!r}")
        try:
            out[k.strip()] = int(v)
        except ValueError as exc:
            raise UsageError(f"parameter {k} must be an integer") from exc
    return out


def cmd_families(args) -> int:
    from .families import KINDS, ConditionViolated, family_generate, family_sweep

    if args.kind not in KINDS:
        raise UsageError(f"unknown family {args.kind!r}; choose from {', '.join(KINDS)}")
    if args.bound is not None:
        t0 = time.monotonic()
        count = 0
        for fw in family_sweep(args.kind, args.bound):
            count += 1
            if args.list:
                _out(f"{fw.lam}\t({format_seq(fw.sequence)})\t{fw.params}")
        summary = {"kind": args.kind, "bound": args.bound, "verified": count, "elapsed": time.monotonic() - t0}
        _out(json.dumps(summary) if args.json else f"{count} members verified in {summary['elapsed']:.1f}s")
        return EXIT_OK
    try:
        fw = family_generate(args.kind, **_kv(args.param))
    except (ConditionViolated, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        _out(json.dumps({"kind": fw.kind, "lambda": str(fw.lam), "sequence": list(fw.sequence), "params": fw.params}))
    else:
        _out(f"lambda {fw.lam}  witness ({format_seq(fw.sequence)})")
    return EXIT_OK


def cmd_identities(args) -> int:
    from .identities import run_suite

    rep = run_suite(trials=args.trials, max_len=args.max_len, coeff_bound=args.coeff_bound, seed=args.seed)
    if args.json:
        _out(json.dumps(rep))
    else:
        for name, r in rep["results"].items():
            status = "ok" if not r["failures"] else f"FAILED {len(r['failures'])} (seeds {[f['seed'] for f in r['failures'][:5]]})"
            _out(f"{name:24} {r['trials']:5} {status}")
        _out(f"elapsed {rep['elapsed']:.1f}s")
    return EXIT_OK if rep["ok"] else EXIT_FREE


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relnum", description="Relation numbers of parabolic pairs.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    d = sub.add_parser("decide", help="decide whether lambda is a relation number")
    d.add_argument("lam")
    d.add_argument("--max-k", type=_positive, default=30)
    d.add_argument("--timeout", type=float)
    d.add_argument("--threads", type=_positive)
    d.add_argument("--eps-bits", type=_positive, default=30)
    d.add_argument("--no-precheck", action="store_true", help="skip the free-region tests")
    d.add_argument("--json", action="store_true")
    d.set_defaults(fn=cmd_decide)

    m = sub.add_parser("mk", help="print the exact ladder M_1..M_K")
    m.add_argument("lam")
    m.add_argument("--up-to", type=_positive, required=True)
    m.add_argument("--timeout", type=float)
    m.add_argument("--threads", type=_positive)
    m.add_argument("--format", choices=["text", "csv", "json"], default="text")
    m.set_defaults(fn=cmd_mk)

    s = sub.add_parser("scan", help="batch over p/q, resumable")
    s.add_argument("--den", type=int, required=True)
    s.add_argument("--num", required=True, help="range a..b of numerators")
    s.add_argument("--mode", choices=["exhaustive", "greedy"], default="exhaustive")
    s.add_argument("--timeout-per", type=float, default=60.0)
    s.add_argument("--max-k", type=_positive, default=30)
    s.add_argument("--greedy-n", type=_positive)
    s.add_argument("--greedy-w", type=_positive)
    s.add_argument("--workers", type=_positive)
    s.add_argument("--out")
    s.add_argument("--format", choices=["csv", "json"])
    s.set_defaults(fn=cmd_scan)

    v = sub.add_parser("verify", help="check a witness sequence")
    v.add_argument("lam")
    v.add_argument("seq", help="comma separated, e.g. 13,-7,1")
    v.add_argument("--word", action="store_true", help="also print the relation word")
    v.add_argument("--json", action="store_true")
    v.set_defaults(fn=cmd_verify)

    g = sub.add_parser("greedy", help="windowed greedy search")
    g.add_argument("lam")
    g.add_argument("--greedy-n", type=_positive)
    g.add_argument("--greedy-w", type=_positive)
    g.add_argument("--max-k", type=_positive)
    g.add_argument("--timeout", type=float)
    g.add_argument("--json", action="store_true")
    g.set_defaults(fn=cmd_greedy)

    f = sub.add_parser("families", help="closed-form family members")
    f.add_argument("kind")
    f.add_argument("--param", action="append", metavar="NAME=VALUE")
    f.add_argument("--bound", type=_positive, help="sweep every parameter tuple in the box")
    f.add_argument("--list", action="store_true")
    f.add_argument("--json", action="store_true")
    f.set_defaults(fn=cmd_families)

    i = sub.add_parser("identities", help="randomised identity suite")
    i.add_argument("--trials", type=_positive, default=200)
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("--max-len", type=_positive, default=5)
    i.add_argument("--coeff-bound", type=_positive, default=5)
    i.add_argument("--json", action="store_true")
    i.set_defaults(fn=cmd_identities)
    return ap


# "-13,1" would otherwise be taken for an option
_NEG_SEQ = re.compile(r"^-\d+\s*,")


def main(argv=None) -> int:
    ap = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    argv = [f"({a})" if _NEG_SEQ.match(a) else a for a in argv]
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except (ParseError, ZeroLambda, UsageError) as exc:
        sys.stderr.write(f"relnum: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"relnum: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
