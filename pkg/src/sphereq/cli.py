"""Command-line front end.

Exit codes: 0 = affirmative answer (equal / conjugate / sat / valid / packable),
1 = negative answer, 2 = usage or input error, 3 = solver timeout.  ``--json``
switches every subcommand to machine-readable output.  The default solver
timeout can be set through the SPHEREQ_TIMEOUT environment variable (seconds);
an explicit --timeout wins.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import oracle, packing, report, solver, words
from .flows import words_equal

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3


class CliError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload) if args.json else text)


def parse_equation_file(text: str) -> solver.SphericalEquation:
    """Line 1 is ``rank N``; each further line is one constant word.

    Blank lines and ``#`` comments are skipped, so an identity constant must
    be spelled explicitly as e.g. ``a1 A1``.
    """
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise CliError("empty equation file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "rank" or not head[1].isdigit():
        raise CliError(f"first line must be 'rank N', got {lines[0]!r}")
    rank = int(head[1])
    constants = [words.parse_word(ln, rank) for ln in lines[1:]]
    if not constants:
        raise CliError("equation file lists no constants")
    return solver.SphericalEquation(rank, tuple(constants))


def format_equation_file(eq: solver.SphericalEquation) -> str:
    lines = [f"rank {eq.rank}"]
    lines += [words.format_word(c) for c in eq.constants]
    return "\n".join(lines) + "\n"


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _default_timeout(args) -> float | None:
    if args.timeout is not None:
        return args.timeout
    env = os.environ.get("SPHEREQ_TIMEOUT")
    if env:
        try:
            return float(env)
        except ValueError as exc:
            raise CliError(f"bad SPHEREQ_TIMEOUT value {env!r}") from exc
    return None


def _verdict_exit(v: solver.Verdict) -> int:
    if v.status == "sat":
        return EXIT_YES
    if v.status == "unsat":
        return EXIT_NO
    return EXIT_TIMEOUT


def cmd_word(args) -> int:
    u = words.parse_word(args.u, args.rank)
    w = words.parse_word(args.w, args.rank)
    equal = words_equal(u, w)
    _emit(args, {"equal": equal}, "equal" if equal else "not equal")
    return EXIT_YES if equal else EXIT_NO


def cmd_conj(args) -> int:
    u = words.parse_word(args.u, args.rank)
    w = words.parse_word(args.w, args.rank)
    verdict = solver.solve_conjugacy(
        u, w, strategy=args.strategy, timeout=_default_timeout(args), threads=args.threads
    )
    conjugate = verdict.is_sat
    _emit(
        args,
        {"conjugate": conjugate if verdict.status != "timeout" else None,
         "status": verdict.status},
        {"sat": "conjugate", "unsat": "not conjugate", "timeout": "timeout"}[verdict.status],
    )
    return _verdict_exit(verdict)


def cmd_solve(args) -> int:
    eq = parse_equation_file(_read_file(args.equation))
    inst = solver.build_instance(eq)
    verdict = solver.solve(
        inst, strategy=args.strategy, timeout=_default_timeout(args), threads=args.threads
    )
    payload = solver.verdict_to_dict(verdict)
    text = f"status: {verdict.status}"
    if verdict.certificate is not None:
        text += "\n" + "\n".join(
            f"alpha[{i + 1}] = ({', '.join(map(str, a))})"
            for i, a in enumerate(verdict.certificate.alphas)
        )
    if args.max_len is not None:
        witness = oracle.brute_force_solve(eq, args.max_len)
        payload["oracle"] = {
            "max_len": args.max_len,
            "solvable": witness is not None,
            "witness": [words.format_word(w) for w in witness.words] if witness else None,
        }
        text += f"\noracle (max_len {args.max_len}): " + (
            "witness " + "; ".join(words.format_word(w) or "<identity>" for w in witness.words)
            if witness
            else "no witness"
        )
        if verdict.status != "timeout" and witness is not None and not verdict.is_sat:
            raise CliError("oracle found a witness but the solver reported unsat")
    _emit(args, payload, text)
    return _verdict_exit(verdict)


def cmd_verify(args) -> int:
    eq = parse_equation_file(_read_file(args.equation))
    inst = solver.build_instance(eq)
    try:
        data = json.loads(_read_file(args.certificate))
        cert = solver.certificate_from_dict(data)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CliError(f"bad certificate file: {exc}") from exc
    try:
        valid = solver.verify_certificate(inst, cert)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _emit(args, {"valid": valid}, "valid" if valid else "invalid")
    return EXIT_YES if valid else EXIT_NO


def cmd_encode_packing(args) -> int:
    try:
        eq = packing.encode(args.sides)
    except packing.NotPerfectSquareError as exc:
        raise CliError(str(exc)) from exc
    text = format_equation_file(eq)
    if args.out:
        Path(args.out).write_text(text)
        _emit(args, {"written": args.out, "rank": eq.rank,
                     "constants": [words.format_word(c) for c in eq.constants]},
              f"wrote {args.out}")
    else:
        if args.json:
            print(json.dumps({"rank": eq.rank,
                              "constants": [words.format_word(c) for c in eq.constants]}))
        else:
            sys.stdout.write(text)
    return EXIT_YES


def cmd_pack(args) -> int:
    try:
        inst = packing.make_instance(args.sides)
    except (packing.NotPerfectSquareError, ValueError) as exc:
        raise CliError(str(exc)) from exc
    placement = packing.pack_brute_force(inst)
    if placement is None:
        _emit(args, {"packable": False, "placement": None}, "none")
        return EXIT_NO
    payload = {"packable": True, "placement": packing.placement_to_dict(placement)}
    text = json.dumps(packing.placement_to_dict(placement))
    if args.ascii:
        text += "\n" + packing.render_ascii(inst, placement)
    if args.figure:
        report.render_placement_figure(inst.sides, placement, args.figure)
        payload["figure"] = args.figure
    _emit(args, payload, text)
    return EXIT_YES


def cmd_bench(args) -> int:
    fixture_dir = Path(args.fixtures)
    files = sorted(fixture_dir.glob("*.eq"))
    if not files:
        raise CliError(f"no *.eq fixtures found in {fixture_dir}")
    strategies = (
        list(solver.STRATEGIES) if args.strategy == "both" else [args.strategy]
    )
    rows = []
    timeout = _default_timeout(args)
    for path in files:
        eq = parse_equation_file(_read_file(str(path)))
        inst = solver.build_instance(eq)
        for strat in strategies:
            start = time.perf_counter()
            verdict = solver.solve(inst, strategy=strat, timeout=timeout, threads=args.threads)
            millis = (time.perf_counter() - start) * 1000.0
            rows.append(report.BenchRow(path.stem, strat, verdict.status, millis))
    tsv_path, png_path = report.write_bench_report(rows, args.out)
    if args.json:
        print(json.dumps({
            "rows": [r.__dict__ for r in rows], "tsv": tsv_path, "figure": png_path,
        }))
    else:
        sys.stdout.write(report.bench_rows_to_tsv(rows))
        print(f"wrote {tsv_path} and {png_path}", file=sys.stderr)
    return EXIT_YES


def _add_solver_options(p) -> None:
    p.add_argument("--strategy", choices=solver.STRATEGIES, default="backtracking")
    p.add_argument("--timeout", type=float, default=None, help="seconds")
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphereq",
        description="Spherical quadratic equations in free metabelian groups.",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("word", help="decide whether two words are equal")
    p.add_argument("-n", "--rank", type=int, required=True)
    p.add_argument("u")
    p.add_argument("w")
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("conj", help="decide whether two words are conjugate")
    p.add_argument("-n", "--rank", type=int, required=True)
    p.add_argument("u")
    p.add_argument("w")
    _add_solver_options(p)
    p.set_defaults(func=cmd_conj)

    p = sub.add_parser("solve", help="decide an equation file")
    p.add_argument("equation")
    _add_solver_options(p)
    p.add_argument(
        "--max-len",
        type=int,
        default=None,
        help="also run the brute-force oracle up to this witness length",
    )
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a certificate file against an equation")
    p.add_argument("equation")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("encode-packing", help="encode square sides as an equation")
    p.add_argument("sides", nargs="+", type=int)
    p.add_argument("-o", "--out", default=None, help="write the equation file here")
    p.set_defaults(func=cmd_encode_packing)

    p = sub.add_parser("pack", help="solve a packing instance geometrically")
    p.add_argument("sides", nargs="+", type=int)
    p.add_argument("--ascii", action="store_true", help="render the packing as text")
    p.add_argument("--figure", default=None, help="render the packing to this PNG")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("bench", help="time every fixture, write TSV and figure")
    p.add_argument("fixtures", help="directory of *.eq files")
    p.add_argument("--out", default=".", help="output directory for bench.tsv/bench.png")
    p.add_argument("--strategy", choices=solver.STRATEGIES + ("both",), default="both")
    p.add_argument("--timeout", type=float, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (CliError, words.WordSyntaxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
