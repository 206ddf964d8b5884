"""Command line front end: every experiment as a reproducible run with a versioned report.

Exit codes: 0 when every check passed, 1 when a check failed, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from .characters import DiagramFamily, character_decay_check, get_family, transition_measure
from .exceptions import ParameterError, PyJMFreeError
from .experiments import (
    compression_experiment,
    compression_row,
    convergence_experiment,
    factor_limit_check,
    shape_to_letters,
)
from .free_prob import (
    cumulants_to_moments,
    evaluate_free_mixed_moment,
    moments,
    moments_from_cumulants_nc,
    moments_to_cumulants,
)
from .jm_model import ROUTES, JmWord, Letter, Model, evaluate, normalize_value
from .logger import LEVEL_NAMES, Logger
from .nc_partitions import check_lemma_431, check_lemma_432, check_lemma_433, enumerate_nc, kreweras
from .options import DEFAULT_LIMITS, LoggingOptions, OutputOptions, RunConfig
from .parser import (
    format_word,
    parse_ab_word,
    parse_diagram,
    parse_family,
    parse_grid,
    parse_partition,
    parse_permutation,
    parse_rational,
    parse_shape,
    parse_word,
)
from .reporting import FORMATS, Report, jsonable, write_report

log = Logger.for_module(__name__)

FACTOR_GRID = (8, 16, 32, 64)
FACTOR_C = Fraction(1, 2)
FACTOR_BOUND = Fraction(1, 10)
KREWERAS_CHECK_SIZE = 8
DEFAULT_SEED = 0


def _config(args: argparse.Namespace, parameters: Dict[str, object]) -> RunConfig:
    return RunConfig(
        command=args.command,
        parameters={key: jsonable(value) for key, value in parameters.items()},
        seed=args.seed,
        output=OutputOptions(format=args.format, path=args.output),
        logging=LoggingOptions(level=args.log_level),
    )


def _word_record(word: JmWord, value: Fraction, route: str, **extra: object) -> Dict[str, object]:
    record: Dict[str, object] = {
        "word": format_word(word.letters),
        "n": word.n,
        "k": word.k,
        "lambda": word.diagram,
        "exact_value": value,
        "normalized_value": normalize_value(value, word.n, word.length),
        "route": route,
    }
    record.update(extra)
    return record


def cmd_moments(args: argparse.Namespace) -> Report:
    diagram = parse_diagram(args.lambda_)
    n = diagram.size
    report = Report("moments", _config(args, {"lambda": diagram, "L": args.L, "route": args.route}))
    measure_moments = moments(transition_measure(diagram), args.L)
    equal = True
    for j in range(1, args.L + 1):
        word = JmWord((Letter.X,) * j, n, n, diagram)
        value = evaluate(word, args.route)
        expected = measure_moments.order(j)
        equal = equal and value == expected
        report.add_record(**_word_record(word, value, args.route, j=j, measure_moment=expected))
    report.add_check("distribution-identity", equal, "state(X^j) equals the j-th moment of the transition measure")
    return report


def cmd_mixed(args: argparse.Namespace) -> Report:
    diagram = parse_diagram(args.lambda_)
    letters = parse_word(args.word)
    routes = [route.strip() for route in args.routes.split(",") if route.strip()]
    model = Model(args.model)
    word = JmWord(letters, diagram.size, args.k, diagram, model)
    parameters = {"word": format_word(letters), "lambda": diagram, "k": args.k, "model": model, "routes": routes}
    report = Report("mixed", _config(args, parameters))
    values = []
    for route in routes:
        value = evaluate(word, route)
        values.append(value)
        report.add_record(**_word_record(word, value, route, model=model))
    report.add_check("routes-agree", len(set(values)) <= 1, f"routes {routes}")
    return report


def _family(args: argparse.Namespace) -> DiagramFamily:
    if args.family_file:
        return parse_family(Path(args.family_file).read_text(encoding="utf-8"))
    return get_family(args.family)


def cmd_converge(args: argparse.Namespace) -> Report:
    shape = parse_shape(args.shape)
    family = _family(args)
    grid = parse_grid(args.grid)
    c = parse_rational(args.c)
    parameters = {"shape": " ".join(shape), "family": family.name, "balance": family.balance, "grid": list(grid), "c": c, "route": args.route}
    report = Report("converge", _config(args, parameters))
    result = convergence_experiment(shape, family, grid, c, args.route)
    for row in result.rows:
        word = JmWord(shape_to_letters(shape), row.n, row.k, row.diagram)
        report.add_record(
            **_word_record(
                word,
                row.exact_value,
                args.route,
                trace_p=Fraction(row.k + 1, row.n + 1),
                free_value=row.free_value,
                normalized_free_value=row.normalized_free_value,
                gap=row.gap,
            )
        )
    report.add_check("gap-shrinks", result.shrinking, "normalized gap to the free target decreases along the grid")
    return report


def cmd_kreweras(args: argparse.Namespace) -> Report:
    if args.partition is None and args.random is None:
        raise argparse.ArgumentTypeError("give a partition or --random M")
    if args.partition is not None:
        partition = parse_partition(args.partition)
    else:
        if args.seed is None:
            args.seed = DEFAULT_SEED
        rng = random.Random(args.seed)
        partition = rng.choice(enumerate_nc(args.random))
    m = partition.ground_size
    complement = kreweras(partition)
    report = Report("kreweras", _config(args, {"partition": partition, "random": args.random}))
    report.add_record(partition=partition, kreweras=complement, blocks=len(partition), complement_blocks=len(complement))
    report.add_check("block-count", len(partition) + len(complement) == m + 1, "|π| + |K(π)| = m + 1")
    report.add_check(
        "double-complement",
        kreweras(complement) == partition.rotate(-1, m),
        "K(K(π)) is π shifted by one position",
    )
    return report


def cmd_cumulants(args: argparse.Namespace) -> Report:
    diagram = parse_diagram(args.lambda_)
    report = Report("cumulants", _config(args, {"lambda": diagram, "L": args.L}))
    moment_sequence = moments(transition_measure(diagram), args.L)
    cumulant_sequence = moments_to_cumulants(moment_sequence)
    for j, (moment, cumulant) in enumerate(zip(moment_sequence, cumulant_sequence), start=1):
        report.add_record(j=j, n=diagram.size, **{"lambda": diagram}, moment=moment, cumulant=cumulant)
    report.add_check("round-trip", cumulants_to_moments(cumulant_sequence) == moment_sequence)
    report.add_check("noncrossing-sum", moments_from_cumulants_nc(cumulant_sequence, args.L) == moment_sequence)
    return report


def cmd_free_moment(args: argparse.Namespace) -> Report:
    letters = parse_ab_word(args.word)
    diagram = parse_diagram(args.lambda_)
    trace = parse_rational(args.trace)
    if not 0 < trace <= 1:
        raise ParameterError("trace", f"tr b must lie in (0, 1], got {trace}")
    report = Report("free-moment", _config(args, {"word": "".join(letters), "lambda": diagram, "trace": trace}))
    cumulant_sequence = moments_to_cumulants(moments(transition_measure(diagram), len(letters)))
    result = evaluate_free_mixed_moment(letters, cumulant_sequence, trace)
    report.add_record(
        word="".join(result.word),
        normalized_word="".join(result.normalized_word),
        n=diagram.size,
        trace_b=trace,
        raw_value=result.raw_value,
        value=result.value,
        **{"lambda": diagram},
    )
    report.add_check("normalization-invariant", result.agrees, "the word as written and its normal form give the same value")
    return report


def cmd_decay(args: argparse.Namespace) -> Report:
    sigma = parse_permutation(args.sigma)
    family = _family(args)
    grid = parse_grid(args.grid)
    parameters = {"sigma": sigma, "family": family.name, "balance": family.balance, "grid": list(grid)}
    report = Report("decay", _config(args, parameters))
    diagrams = [family.diagram(n) for n in grid]
    rows = character_decay_check(diagrams, sigma)
    for diagram, row in zip(diagrams, rows):
        report.add_record(n=row.n, trace=row.trace, scaled=row.scaled, **{"lambda": diagram})
    report.add_check(
        "bounded",
        max(row.scaled for row in rows) <= 2 * rows[0].scaled,
        "|tr ρ(σ)|·n^{|σ|/2} stays within twice its first grid value",
    )
    return report


def cmd_compress(args: argparse.Namespace) -> Report:
    c = parse_rational(args.c)
    if args.lambda_ is not None:
        diagram = parse_diagram(args.lambda_)
        parameters = {"lambda": diagram, "c": c, "L": args.L, "route": args.route}
        report = Report("compress", _config(args, parameters))
        rows = [compression_row(diagram, c, args.L, args.route)]
    else:
        family = _family(args)
        grid = parse_grid(args.grid)
        parameters = {"family": family.name, "grid": list(grid), "c": c, "L": args.L, "route": args.route}
        report = Report("compress", _config(args, parameters))
        experiment = compression_experiment(family, grid, c, args.L, args.route)
        rows = list(experiment.rows)
        report.add_check("gap-shrinks", experiment.shrinking, "normalized compression gap decreases along the grid")
    for row in rows:
        for j in range(1, args.L + 1):
            report.add_record(
                j=j,
                n=row.n,
                k=row.k,
                trace_p=row.trace,
                model_moment=row.model_moments.order(j),
                free_moment=row.free_moments.order(j),
                gap=row.gaps[j - 1],
                route=args.route,
                **{"lambda": row.diagram},
            )
    report.add_check("first-moment", all(row.model_moments.order(1) == 0 == row.free_moments.order(1) for row in rows))
    return report


def cmd_verify_lemmas(args: argparse.Namespace) -> Report:
    kmax = args.kmax
    limits = DEFAULT_LIMITS
    if not 1 <= kmax <= limits.max_lemma_k:
        raise argparse.ArgumentTypeError(f"--kmax must lie in [1, {limits.max_lemma_k}]")
    report = Report("verify-lemmas", _config(args, {"kmax": kmax}))
    crossing_kmax = min(kmax, limits.max_crossing_lemma_k)
    for check, top in ((check_lemma_431, crossing_kmax), (check_lemma_432, crossing_kmax), (check_lemma_433, kmax)):
        results = [check(k) for k in range(1, top + 1)]
        for result in results:
            report.add_record(lemma=result.name, k=result.k, holds=result.holds, checked=result.checked, min_gap=result.min_gap)
        report.add_check(results[0].name, all(results), f"k ≤ {top}")
    for m in range(1, min(kmax, KREWERAS_CHECK_SIZE) + 1):
        partitions = enumerate_nc(m)
        counts = all(len(p) + len(kreweras(p)) == m + 1 for p in partitions)
        rotation = all(kreweras(kreweras(p)) == p.rotate(-1, m) for p in partitions)
        report.add_record(lemma="kreweras", k=m, holds=counts and rotation, checked=len(partitions), min_gap=None)
        report.add_check(f"kreweras-{m}", counts and rotation)
    for touched in range(0, 4):
        for blocks in range(max(touched, 1), 5):
            factor = factor_limit_check(touched, blocks, FACTOR_GRID, FACTOR_C)
            for row in factor.rows:
                report.add_record(lemma="projection-factor", S=touched, blocks=blocks, n=row.n, k=row.k, ratio=row.ratio, deviation=float(row.deviation))
            report.add_check(
                f"projection-factor-S{touched}-blocks{blocks}",
                factor.shrinking and factor.final_deviation < FACTOR_BOUND,
                f"deviation from c^S shrinks along {list(FACTOR_GRID)} and ends below {FACTOR_BOUND}",
            )
    return report


COMMANDS: Dict[str, Callable[[argparse.Namespace], Report]] = {
    "moments": cmd_moments,
    "mixed": cmd_mixed,
    "converge": cmd_converge,
    "kreweras": cmd_kreweras,
    "cumulants": cmd_cumulants,
    "free-moment": cmd_free_moment,
    "decay": cmd_decay,
    "compress": cmd_compress,
    "verify-lemmas": cmd_verify_lemmas,
}


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json", help="Report format")
    common.add_argument("--output", default=None, help="Write the report to this file instead of stdout")
    common.add_argument("--seed", type=int, default=None, help="Seed for randomized sampling")
    common.add_argument("--log-level", choices=LEVEL_NAMES, default="error", help="Log level (logs go to stderr)")

    parser = argparse.ArgumentParser(prog="py_jmfree", description="Jucys-Murphy matrix models and asymptotic freeness")
    sub = parser.add_subparsers(dest="command", required=True)

    p_moments = sub.add_parser("moments", parents=[common], help="state(X^j) against the transition measure")
    p_moments.add_argument("--lambda", dest="lambda_", required=True, help="Young diagram, e.g. 2,1")
    p_moments.add_argument("--L", dest="L", type=_positive, required=True, help="Highest moment")
    p_moments.add_argument("--route", choices=ROUTES, default="matrix")

    p_mixed = sub.add_parser("mixed", parents=[common], help="Evaluate a word in X, PX and P by several routes")
    p_mixed.add_argument("--word", required=True, help="e.g. 'PX X PX X'")
    p_mixed.add_argument("--lambda", dest="lambda_", required=True)
    p_mixed.add_argument("--k", type=int, required=True, help="Projection cutoff, 0 ≤ k ≤ n")
    p_mixed.add_argument("--model", choices=[model.value for model in Model], default=Model.RIGHT.value)
    p_mixed.add_argument("--routes", default=",".join(ROUTES), help="Comma separated routes")

    p_converge = sub.add_parser("converge", parents=[common], help="Mixed moments against the free target along a grid")
    p_converge.add_argument("--shape", required=True, help="Word shape over a and pa, e.g. 'pa a pa a'")
    family_group = p_converge.add_mutually_exclusive_group(required=True)
    family_group.add_argument("--family", help="Built-in diagram family")
    family_group.add_argument("--family-file", help="JSON diagram family")
    p_converge.add_argument("--grid", required=True, help="e.g. 4,9,16")
    p_converge.add_argument("--c", required=True, help="Projection proportion, e.g. 1/2")
    p_converge.add_argument("--route", choices=ROUTES, default="partitions")

    p_kreweras = sub.add_parser("kreweras", parents=[common], help="Kreweras complement of a noncrossing partition")
    p_kreweras.add_argument("partition", nargs="?", default=None, help="e.g. '[[1,2],[3,4]]'")
    p_kreweras.add_argument("--random", type=_positive, default=None, help="Sample a partition of NC(M) with --seed (default 0)")

    p_cumulants = sub.add_parser("cumulants", parents=[common], help="Moments and free cumulants of a transition measure")
    p_cumulants.add_argument("--lambda", dest="lambda_", required=True)
    p_cumulants.add_argument("--L", dest="L", type=_positive, required=True)

    p_free = sub.add_parser("free-moment", parents=[common], help="Free mixed moment of a and a projection b")
    p_free.add_argument("--word", required=True, help="Word over a and b, e.g. abab")
    p_free.add_argument("--lambda", dest="lambda_", required=True, help="Diagram whose transition measure is the law of a")
    p_free.add_argument("--trace", required=True, help="tr b, e.g. 1/2")

    p_decay = sub.add_parser("decay", parents=[common], help="Scaled normalized characters along a diagram family")
    p_decay.add_argument("--sigma", required=True, help="Permutation in cycle notation, e.g. '(1 2 3)'")
    decay_source = p_decay.add_mutually_exclusive_group(required=True)
    decay_source.add_argument("--family", help="Built-in diagram family")
    decay_source.add_argument("--family-file", help="JSON diagram family")
    p_decay.add_argument("--grid", required=True, help="e.g. 4,9,16")

    p_compress = sub.add_parser("compress", parents=[common], help="Compressed moments of X against free compression")
    source = p_compress.add_mutually_exclusive_group(required=True)
    source.add_argument("--lambda", dest="lambda_", default=None)
    source.add_argument("--family", default=None)
    source.add_argument("--family-file", default=None)
    p_compress.add_argument("--grid", default=None, help="Required with --family or --family-file")
    p_compress.add_argument("--c", required=True)
    p_compress.add_argument("--L", dest="L", type=_positive, required=True)
    p_compress.add_argument("--route", choices=ROUTES, default="partitions")

    p_verify = sub.add_parser("verify-lemmas", parents=[common], help="Exhaustive combinatorial checks")
    p_verify.add_argument("--kmax", type=int, required=True)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    Logger().set_level(args.log_level)
    if args.command == "compress" and args.lambda_ is None and args.grid is None:
        print("error: --grid is required with --family or --family-file", file=sys.stderr)
        return 2
    try:
        report = COMMANDS[args.command](args)
        write_report(report, report.config.output)
    except (PyJMFreeError, argparse.ArgumentTypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for check in report.failed_checks():
        log.warn("check %s failed: %s", check.name, check.detail)
    return 0 if report.passed else 1


__all__: List[str] = ["COMMANDS", "build_parser", "main"]
