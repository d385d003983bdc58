from __future__ import annotations

import argparse
import logging
import math
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

from pydantic import ValidationError

from . import __version__
from .core.config import DEFAULT_SEED, OutputFormat, RunConfig, SieveConfig, Strategy, get_settings
from .core.digits import DigitContext
from .core.engine import SieveEngine
from .core.errors import ConsistencyError, DomainError, ResourceError, RevsieveError, VerificationError
from .core.registry import reference_table
from .core.tables import CountMethod, CountRow, CountTable
from .operations import analytic, arith, expsum, harness, squarefree
from .operations.export import (
    ARITH_FIELDS,
    COUNT_FIELDS,
    HEURISTIC_FIELDS,
    SQUAREFREE_FIELDS,
    ExportOperations,
    arith_rows,
    count_rows,
    export_rows,
    heuristic_rows,
    squarefree_rows,
)
from .utils.validators import Validator

logger = logging.getLogger("revsieve")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RESOURCE = 3
EXIT_VERIFICATION = 4

EXPSUM_ACTIONS = ("verify-lemmas", "constants")
ARITH_ACTIONS = ("records", "consistency", "sieve-error")

def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--base", type=int, default=2, help="digit base, 2 or 10")
    parent.add_argument("--n", dest="n", action="append", default=[], help="digit counts: 'a..b', 'a,b,c' or 'a'")
    parent.add_argument("--strategy", choices=[s.value for s in Strategy], default=Strategy.BITSET.value)
    parent.add_argument("--threads", type=int, default=1)
    parent.add_argument("--segment-bytes", type=int, default=2**20)
    parent.add_argument("--residue-digits", type=int, default=None)
    parent.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parent.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value)
    parent.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")
    parent.add_argument(
        "--verify-paper",
        "--verify",
        dest="verify",
        action="store_true",
        help="compare counts with the bundled tables",
    )
    parent.add_argument("--strict-ndigit-reverse", action="store_true")
    parent.add_argument("--allow-large", action="store_true", help="lift the desk-scale digit limits")
    parent.add_argument("--timing", action="store_true", help="fill the seconds column")
    parent.add_argument("-v", "--verbose", action="count", default=0)
    return parent

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="revsieve", description="Reversible prime and squarefree counts.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _common_options()
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sub.add_parser("theta", parents=[common], help="count n-digit primes whose reversal is prime")
    sub.add_parser("palindromes", parents=[common], help="count n-digit palindromic primes")

    theta_z = sub.add_parser("theta-z", parents=[common], help="count a in B_n free of primes below 2^(gamma n)")
    theta_z.add_argument("--gamma", required=True, help="exponent in (0, 1/2), e.g. 1/4")

    almost = sub.add_parser("almost-primes", parents=[common], help="count a with max(Omega(a), Omega(mirror a)) <= k")
    almost.add_argument("--k", type=int, default=8)

    sub.add_parser("squarefree", parents=[common], help="Q(n) and Q~(n) with their limit ratios")

    exp = sub.add_parser("expsum", parents=[common], help="exponential sum checks")
    exp.add_argument("action", choices=EXPSUM_ACTIONS)
    exp.add_argument("--samples", type=int, default=10_000)

    ar = sub.add_parser("arith", parents=[common], help="T, R and R~ records and reports")
    ar.add_argument("action", choices=ARITH_ACTIONS, nargs="?", default="records")
    ar.add_argument("--d-max", type=int, default=50)

    heur = sub.add_parser("heuristic", parents=[common], help="theta(n) / theta_exp(n) series")
    heur.add_argument("--n-max", type=int, default=50)
    return parser

def build_config(args: argparse.Namespace) -> RunConfig:
    try:
        n_values = Validator.parse_ranges(args.n)
        gamma = getattr(args, "gamma", None)
        gamma = None if gamma is None else str(Validator.parse_fraction(gamma))
    except ValueError as e:
        raise DomainError(str(e)) from e
    sieve = SieveConfig(
        segment_bytes=args.segment_bytes,
        threads=args.threads,
        strategy=args.strategy,
        residue_digits=args.residue_digits,
        strict_ndigit_reverse=args.strict_ndigit_reverse,
        allow_large=args.allow_large,
    )
    return RunConfig(
        subcommand=args.subcommand,
        base=args.base,
        n_values=n_values,
        seed=args.seed,
        output=args.format,
        out_path=args.out,
        verify=args.verify,
        timing=args.timing,
        sieve=sieve,
        action=getattr(args, "action", None),
        samples=getattr(args, "samples", 10_000),
        gamma=gamma,
        k=getattr(args, "k", 8),
        d_max=getattr(args, "d_max", 50),
        n_max=getattr(args, "n_max", 50),
    )

def configure_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.getLevelName(get_settings().log_level.upper())
        level = level if isinstance(level, int) else logging.WARNING
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.handlers[:] = [handler]
    logger.setLevel(level)
    logger.propagate = False

def _require_n(config: RunConfig) -> list[int]:
    if not config.n_values:
        raise DomainError(f"'{config.subcommand}' needs --n")
    return config.n_values

def _count_output(config: RunConfig, table: CountTable) -> str:
    return export_rows(count_rows(table, timing=config.timing), format=config.output, fields=COUNT_FIELDS)

def _verify(table: CountTable) -> None:
    mismatches = table.verify_against(reference_table(table.base))
    if mismatches:
        details = ", ".join(f"n={n}: {got} != {want}" for n, got, want in mismatches)
        raise VerificationError(f"Counts disagree with the bundled table: {details}", mismatches=mismatches)
    logger.info("all %d rows agree with the bundled base %d table", len(table), table.base)

def cmd_theta(config: RunConfig) -> str:
    table = SieveEngine(config.sieve).theta_table(config.base, _require_n(config), timing=config.timing)
    if config.verify:
        _verify(table)
    return _count_output(config, table)

def _simple_table(config: RunConfig, provenance: str, count: Callable[[int], int]) -> CountTable:
    table = CountTable(base=config.base, provenance=provenance)
    for n in _require_n(config):
        table.add(CountRow(n=n, count=count(n), method=CountMethod.BITSET))
    return table

def cmd_palindromes(config: RunConfig) -> str:
    engine = SieveEngine(config.sieve)
    table = _simple_table(
        config, "palindromic primes", lambda n: engine.count_palindromic_primes(DigitContext(base=config.base, n=n))
    )
    return _count_output(config, table)

def cmd_theta_z(config: RunConfig) -> str:
    if config.gamma is None:
        raise DomainError("theta-z needs --gamma")
    engine = SieveEngine(config.sieve)
    table = _simple_table(config, f"theta(n, 2^({config.gamma} n))", lambda n: engine.count_theta_z(n, config.gamma))
    return _count_output(config, table)

def cmd_almost_primes(config: RunConfig) -> str:
    engine = SieveEngine(config.sieve)
    table = _simple_table(config, f"Omega <= {config.k}", lambda n: engine.count_almost_prime_pairs(n, config.k))
    return _count_output(config, table)

def cmd_squarefree(config: RunConfig) -> str:
    rows = squarefree.squarefree_series(_require_n(config), config.sieve)
    return export_rows(squarefree_rows(rows), format=config.output, fields=SQUAREFREE_FIELDS)

def cmd_expsum(config: RunConfig) -> str:
    exporter = ExportOperations()
    if config.action == "constants":
        return exporter.to_json(
            {
                "c0": expsum.c0(),
                "eta0": expsum.eta0(),
                "c_kappa": {"1/3": expsum.c_kappa(1 / 3), "2/3": expsum.c_kappa(2 / 3), "1": expsum.c_kappa(1.0)},
                "heuristic_constant": squarefree.heuristic_constant(),
            }
        )
    reports = harness.verify_lemmas(config.samples, config.seed)
    output = exporter.to_json([{**_as_dict(r), "passed": r.passed} for r in reports])
    failed = [r.lemma for r in reports if not r.passed]
    if failed:
        _emit(config, output)
        raise ConsistencyError(f"Lemma harness violations in: {', '.join(failed)}")
    return output

def _as_dict(report: harness.LemmaReport) -> dict:
    return {
        "lemma": report.lemma,
        "samples": report.samples,
        "violations": report.violations,
        "max_ratio": report.max_ratio,
        "max_error": report.max_error,
        "worst_case_input": report.worst_case_input,
    }

def cmd_arith(config: RunConfig) -> str:
    if config.action == "consistency":
        ns = config.n_values or list(range(12, 21))
        report = arith.r_consistency_report(ns, config.d_max)
        output = ExportOperations().to_json({**report.__dict__, "passed": report.passed})
        if not report.passed:
            _emit(config, output)
            raise ConsistencyError(f"R consistency ratio {report.sup_ratio} exceeds {report.bound}")
        return output
    if config.action == "sieve-error":
        reports = arith.sieve_error_series(_require_n(config))
        rows = [
            {"n": r.n, "D": r.D, "total": r.total, "ratio": r.ratio, "log2_total": math.log2(r.total) if r.total else None}
            for r in reports
        ]
        return export_rows(rows, format=config.output, fields=["n", "D", "total", "ratio", "log2_total"])
    records = arith.record_grid(_require_n(config), arith.coprime_squarefree(config.d_max))
    return export_rows(arith_rows(records), format=config.output, fields=ARITH_FIELDS)

def cmd_heuristic(config: RunConfig) -> str:
    rows = analytic.conjecture_series(config.n_max, config.sieve)
    return export_rows(heuristic_rows(rows), format=config.output, fields=HEURISTIC_FIELDS)

COMMANDS: dict[str, Callable[[RunConfig], str]] = {
    "theta": cmd_theta,
    "palindromes": cmd_palindromes,
    "theta-z": cmd_theta_z,
    "almost-primes": cmd_almost_primes,
    "squarefree": cmd_squarefree,
    "expsum": cmd_expsum,
    "arith": cmd_arith,
    "heuristic": cmd_heuristic,
}

def _emit(config: RunConfig, output: str) -> None:
    if config.out_path is None:
        sys.stdout.write(output)
    else:
        config.out_path.write_text(output, encoding="utf-8", newline="\n")

def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = build_config(args)
        _emit(config, COMMANDS[config.subcommand](config))
    except (ValidationError, DomainError) as e:
        logger.error("configuration error: %s", e)
        return EXIT_CONFIG
    except ResourceError as e:
        logger.error("%s", e)
        return EXIT_RESOURCE
    except (VerificationError, ConsistencyError) as e:
        logger.error("%s", e)
        return EXIT_VERIFICATION
    except RevsieveError as e:
        logger.error("%s", e)
        return EXIT_CONFIG
    return EXIT_OK

if __name__ == "__main__":
    sys.exit(main())
