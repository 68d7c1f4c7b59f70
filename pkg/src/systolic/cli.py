"""Command line interface.

Subcommands: census, construct, verify, report, recover, selftest.
Exit codes: 0 success, 1 verification failure, 2 usage error, 3 malformed
input file.  Machine output goes to stdout or the -o path; everything else
goes to stderr.  All randomness flows from --seed (default 0), and repeated
invocations with equal flags produce byte-identical output regardless of
--threads.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import builder, census, ribbon, scanner, words

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_BADFILE = 3


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def _load_graph(path: str) -> ribbon.CubicRibbonGraph:
    with open(path, "r", encoding="ascii", newline="") as fh:
        return ribbon.deserialize(fh.read())


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _cmd_census(args) -> int:
    try:
        table = census.CensusTable.build(args.max_trace, check=args.check)
    except census.CensusMismatch as exc:
        print(f"census check failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    _write_output(table.to_csv(), args.output)
    return EXIT_OK


def _parse_plants(args) -> tuple[builder.Plant, ...]:
    plants: list[builder.Plant] = []
    for text in args.plant or []:
        word, _, mult = text.partition(":")
        plants.append(builder.Plant(word=word, multiplicity=_positive_int(mult, text)))
    for text in args.plant_trace or []:
        trace_s, _, mult = text.partition(":")
        trace = _positive_int(trace_s, text)
        if trace < 3:
            raise ValueError(f"--plant-trace {text!r}: trace must be at least 3")
        plants.append(
            builder.Plant(word=builder.word_for_trace(trace), multiplicity=_positive_int(mult, text))
        )
    return tuple(plants)


def _positive_int(text: str, context: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ValueError(f"bad integer {text!r} in {context!r}") from None
    if value < 1:
        raise ValueError(f"{context!r}: value must be positive")
    return value


def _cmd_construct(args) -> int:
    if args.size == "min":
        size = None
    else:
        try:
            size = int(args.size)
        except ValueError:
            print(f"--size must be an integer or 'min', got {args.size!r}", file=sys.stderr)
            return EXIT_USAGE
    try:
        spec = builder.SeedSpec(
            k=args.k,
            plants=_parse_plants(args),
            size=size,
            rng_seed=args.seed,
            strict_seed_trace=args.strict_seed_trace,
        )
        graph, report = builder.build(spec)
    except (builder.SeedSpecError, builder.HypothesisError, ValueError) as exc:
        print(f"construct: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write_output(ribbon.serialize(graph), args.output)
    if args.report:
        _write_output(_json_text(report.to_json_dict()), args.report)
    print(
        f"constructed {report.vertices} vertices, {report.edges} edges "
        f"({report.case1} direct joins, {report.case2} swaps)",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    graph = _load_graph(args.file)
    if not graph.is_complete():
        print("verify: graph is not 3-regular", file=sys.stderr)
        return EXIT_VERIFY
    result = scanner.certify(graph, args.k, threads=args.threads)
    if result.passed:
        print(
            f"certified: no essential cycle class below trace {args.k}; "
            f"all faces have >= {args.k} edges",
            file=sys.stderr,
        )
        return EXIT_OK
    for finding in result.findings():
        print(f"FAIL: {finding}", file=sys.stderr)
    return EXIT_VERIFY


def _cmd_report(args) -> int:
    graph = _load_graph(args.file)
    if not graph.is_complete():
        print("report: graph is not 3-regular", file=sys.stderr)
        return EXIT_VERIFY
    rep = scanner.report(graph, spectrum_max=args.spectrum_max, threads=args.threads)
    text = _json_text(rep.to_json_dict()) if args.json else rep.to_text()
    _write_output(text, args.output)
    return EXIT_OK


def _cmd_recover(args) -> int:
    try:
        mat = words.UniMat.parse(args.matrix)
    except ValueError as exc:
        print(f"recover: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(words.word_of_matrix(mat) + "\n")
    return EXIT_OK


def _selftest_census(fault: str | None) -> str | None:
    sieve = census.DivisorSieve(60 * 60 // 4)
    if fault == "sieve":
        # poison one composite entry; the cross-checks below must notice
        sieve._spf[900] = 900
    word_counts = census.count_words_by_trace(60)
    for m in range(3, 61):
        formula = census.n_by_formula(m, sieve)
        enum = census.n_by_enumeration(m, sieve)
        if not (formula == enum == word_counts[m]):
            return f"census mismatch at trace {m}: {formula} / {enum} / {word_counts[m]}"
    for n in range(1, sieve.limit + 1):
        if sieve.divisor_count(n) != census.divisor_count(n):
            return f"divisor count mismatch at {n}"
    return None


def _selftest_words() -> str | None:
    import random as _random

    rng = _random.Random(0)
    for length in range(0, 11):
        for bits in range(2**length):
            word = "".join("L" if bits >> i & 1 else "R" for i in range(length))
            if words.word_of_matrix(words.matrix_of(word)) != word:
                return f"roundtrip failed for {word!r}"
    for _ in range(500):
        word = "".join(rng.choice("LR") for _ in range(rng.randint(0, 40)))
        if words.word_of_matrix(words.matrix_of(word)) != word:
            return f"roundtrip failed for {word!r}"
    return None


def _naive_cycle_classes(g, max_len: int, max_trace: int):
    """Brute-force closed-walk classes: follow every letter sequence from
    every dart and keep the ones that come back to their start."""
    import itertools

    pair = g.pair_table()
    found: dict[tuple[int, ...], str] = {}
    for length in range(1, max_len + 1):
        for letters in itertools.product("LR", repeat=length):
            word = "".join(letters)
            if words.trace_of(word) > max_trace:
                continue
            for d0 in range(len(pair)):
                walk = [d0]
                for ch in letters[:-1]:
                    t = pair[walk[-1]]
                    walk.append(ribbon.succ(t) if ch == "L" else ribbon.pred(t))
                t = pair[walk[-1]]
                closing = ribbon.succ(t) if letters[-1] == "L" else ribbon.pred(t)
                if closing != d0:
                    continue
                canon = scanner.canonical_walk(tuple(walk), g)
                found.setdefault(canon, words.canonical(word))
    return scanner._group_classes(found)


def _selftest_scanner() -> str | None:
    for pairing in (((0, 3), (1, 4), (2, 5)), ((0, 3), (1, 5), (2, 4))):
        g = ribbon.CubicRibbonGraph(2)
        for a, b in pairing:
            g.add_edge(a, b)
        fast = scanner.low_trace_cycles(g, 8)
        if fast != _naive_cycle_classes(g, 7, 8):
            return f"pruned scan disagrees with brute force on pairing {pairing}"
        if fast != scanner.low_trace_cycles(g, 8, trace_prune=False):
            return f"prune changed scanner output on pairing {pairing}"
        total = sum(len(f) for f in ribbon.faces(g))
        if total != 6:
            return f"face lengths sum to {total}, expected 6"
    return None


def _cmd_selftest(args) -> int:
    checks = [
        ("census triple oracle to trace 60", lambda: _selftest_census(args.inject_fault)),
        ("word/matrix roundtrips", _selftest_words),
        ("scanner on the two-vertex graphs", _selftest_scanner),
    ]
    for name, fn in checks:
        failure = fn()
        if failure:
            print(f"selftest {name}: FAIL: {failure}", file=sys.stderr)
            return EXIT_VERIFY
        print(f"selftest {name}: ok", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="systolic",
        description="Construct and certify cubic ribbon graphs with a floor on the systole trace.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="count matrices by trace, as CSV")
    p.add_argument("--max-trace", type=int, required=True, metavar="M")
    p.add_argument("--check", action="store_true", help="cross-check three counting routes")
    p.add_argument("-o", "--output", metavar="PATH")
    p.set_defaults(fn=_cmd_census)

    p = sub.add_parser("construct", help="build a certified graph from a seed spec")
    p.add_argument("--k", type=int, required=True, help="trace floor")
    p.add_argument("--plant", action="append", metavar="WORD:MULT")
    p.add_argument("--plant-trace", action="append", metavar="T:MULT")
    p.add_argument("--size", default="min", metavar="N|min")
    p.add_argument("--seed", type=int, default=0, help="layout seed (default 0)")
    p.add_argument("--strict-seed-trace", action="store_true",
                   help="reject letter-power plants even when long enough")
    p.add_argument("-o", "--output", required=True, metavar="FILE.crg")
    p.add_argument("--report", metavar="FILE.json")
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("verify", help="exit 0 iff the graph certifies at floor K")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("file", metavar="FILE.crg")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("report", help="genus, girth, systole and spectrum of a graph")
    p.add_argument("file", metavar="FILE.crg")
    p.add_argument("--spectrum-max", type=int, default=None, metavar="T")
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("-o", "--output", metavar="PATH")
    p.set_defaults(fn=_cmd_report)

    p = sub.add_parser("recover", help="factor a matrix back into its word")
    p.add_argument("--matrix", required=True, metavar="a,b,c,d")
    p.set_defaults(fn=_cmd_recover)

    p = sub.add_parser("selftest", help="run the built-in oracle suites")
    p.add_argument("--inject-fault", choices=["sieve"], default=None, help=argparse.SUPPRESS)
    p.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ribbon.CrgParseError as exc:
        print(f"malformed input file: {exc}", file=sys.stderr)
        return EXIT_BADFILE
    except OSError as exc:
        print(f"cannot read or write file: {exc}", file=sys.stderr)
        return EXIT_BADFILE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
