"""
Main entry point for mu_lab.

Exit codes: 0 on success, 1 on a usage error, 2 when a computation or file
operation fails. Results go to stdout (or --out); logs go to stderr.
"""
import argparse
import io
import json
import os
import sys
from typing import Any, Dict, List, Optional

import pandas as pd

from mu_lab import config
from mu_lab.analysis.bounds import bound_report, hayes_coeff_bound
from mu_lab.analysis.counting import mu_all_routes
from mu_lab.analysis.fourier import spectral_summary
from mu_lab.analysis.group import format_group_spec, parse_group_spec
from mu_lab.analysis.maximizer import alternating_maximize, exact_maximize
from mu_lab.core.constants import DEFAULT_ALON_CONSTANT, DEFAULT_EPSILON, DEFAULT_MAX_ITERS, DEFAULT_RESTARTS
from mu_lab.core.exceptions import GroupSpecError, MuLabError
from mu_lab.models.models import BoundInputs, ExperimentConfig, GroupSpec
from mu_lab.simulation.experiments import load_experiment_config, run_trials, summarize
from mu_lab.simulation.reports import emit_report, render_report
from mu_lab.simulation.sampler import sample_subset
from mu_lab.utils.data_loader import format_subset, load_subset_file, write_subset_file
from mu_lab.utils.logging_config import LOG_LEVEL_ENV_VAR, LOG_LEVELS, configure_logging, get_logger
from mu_lab.config import LOG_CONFIG

# Set up logging
logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2

OUTPUT_FORMATS = ('text', 'json', 'csv')


class UsageError(Exception):
    """A flag combination argparse cannot check by itself."""


def parse_group(text: str) -> GroupSpec:
    """Parse a --group value."""
    try:
        return parse_group_spec(text)
    except GroupSpecError as e:
        raise argparse.ArgumentTypeError(str(e))


def parse_seed(text: str) -> int:
    """Parse an unsigned 64-bit --seed value."""
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed: {text}")
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit value: {text}")
    return value


def positive_int(text: str) -> int:
    """Parse a strictly positive integer flag."""
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: {text}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _global_options() -> argparse.ArgumentParser:
    """Flags accepted both before and after the subcommand."""
    options = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    options.add_argument('--group', type=parse_group, help='Group spec, e.g. Z2^16 or Z(2)xZ(4)')
    options.add_argument('--seed', type=parse_seed, help='Unsigned 64-bit seed')
    options.add_argument('--format', choices=OUTPUT_FORMATS, help='Output format (default text)')
    options.add_argument('--out', help='Write output to this file instead of stdout')
    options.add_argument('--log-level', choices=list(LOG_LEVELS), help='Set the logging level')
    options.add_argument('--log-file', help='Log to this file (in addition to stderr)')
    options.add_argument('--dense-cap', type=positive_int, help='Largest group order for dense vectors')
    return options


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per subcommand."""
    common = _global_options()
    parser = argparse.ArgumentParser(prog='mu-lab', description='Sum-triple statistics on finite abelian groups',
                                     parents=[common])
    subparsers = parser.add_subparsers(dest='command', help='Command to run')

    mu_parser = subparsers.add_parser('mu', parents=[common], help='Count mu(A, B, C) by all three routes')
    mu_parser.add_argument('--A', required=True, dest='a_file', help='Subset file for A')
    mu_parser.add_argument('--B', required=True, dest='b_file', help='Subset file for B')
    mu_parser.add_argument('--C', required=True, dest='c_file', help='Subset file for C')
    mu_parser.add_argument('--multiset', action='store_true', help='Read repeated lines as multiplicities')

    spectrum_parser = subparsers.add_parser('spectrum', parents=[common],
                                            help='Largest non-principal Fourier coefficient of 1_A')
    spectrum_parser.add_argument('--A', required=True, dest='a_file', help='Subset file for A')
    spectrum_parser.add_argument('--epsilon', type=float, default=DEFAULT_EPSILON,
                                 help='Epsilon of the coefficient bound')
    spectrum_parser.add_argument('--multiset', action='store_true', help='Read repeated lines as multiplicities')

    bounds_parser = subparsers.add_parser('bounds', parents=[common], help='Evaluate the bound formulas')
    bounds_parser.add_argument('--m', type=int, required=True, help='Size of A')
    bounds_parser.add_argument('--mB', type=int, help='Size of B (default m)')
    bounds_parser.add_argument('--mC', type=int, help='Size of C (default m)')
    bounds_parser.add_argument('--epsilon', type=float, default=DEFAULT_EPSILON,
                               help='Epsilon of the coefficient bound')
    bounds_parser.add_argument('--alon-constant', type=float, default=DEFAULT_ALON_CONSTANT,
                               help='Stand-in for the unknown absolute constant')
    bounds_parser.add_argument('--h', type=float, help='Use the sharpened constant 2*sqrt(2) + h')

    for name, helptext in (('maximize', 'Lower bound on max mu(A, B, C) by alternating best responses'),
                           ('oracle', 'Exact max mu(A, B, C) by exhaustive search (budget guarded)')):
        sub = subparsers.add_parser(name, parents=[common], help=helptext)
        sub.add_argument('--A', required=True, dest='a_file', help='Subset file for A')
        sub.add_argument('--k', type=positive_int, required=True, help='Shore size')
        sub.add_argument('--multiset', action='store_true', help='Read repeated lines as multiplicities')
        if name == 'maximize':
            sub.add_argument('--restarts', type=positive_int, default=DEFAULT_RESTARTS, help='Random starts')
            sub.add_argument('--max-iters', type=positive_int, default=DEFAULT_MAX_ITERS,
                             help='Round limit per start')
        else:
            sub.add_argument('--budget', type=positive_int, help='Work budget binomial(N, k) * N')

    sample_parser = subparsers.add_parser('sample', parents=[common], help='Print a random subset file')
    sample_parser.add_argument('--m', type=positive_int, required=True, help='Subset size or number of draws')
    sample_parser.add_argument('--replacement', action='store_true', help='Sample with replacement')

    experiment_parser = subparsers.add_parser('experiment', parents=[common], help='Run Monte Carlo trials')
    experiment_parser.add_argument('--config', help='JSON experiment config file')
    size = experiment_parser.add_mutually_exclusive_group()
    size.add_argument('--m', type=positive_int, help='Subset size')
    size.add_argument('--alpha', type=float, help='Subset size as N^alpha')
    experiment_parser.add_argument('--trials', type=positive_int, default=1, help='Number of trials')
    experiment_parser.add_argument('--replacement', action='store_true', help='Sample with replacement')
    experiment_parser.add_argument('--workers', type=positive_int, help='Trial worker threads')
    experiment_parser.add_argument('--restarts', type=positive_int, default=DEFAULT_RESTARTS,
                                   help='Maximizer random starts')
    experiment_parser.add_argument('--max-iters', type=positive_int, default=DEFAULT_MAX_ITERS,
                                   help='Maximizer round limit')
    experiment_parser.add_argument('--timings', action='store_true', help='Record wall-clock phase timings')
    return parser


def _flatten(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return value


def render(payload: Dict[str, Any], fmt: str) -> str:
    """
    Render a flat result dictionary.

    Args:
        payload: Field name to value; lists become space-separated in text and csv
        fmt: 'text', 'json' or 'csv'

    Returns:
        The rendered text, newline terminated
    """
    if fmt == 'json':
        return json.dumps(payload, indent=2) + "\n"
    if fmt == 'csv':
        frame = pd.DataFrame([{k: _flatten(v) for k, v in payload.items()}])
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, float_format='%.12g', lineterminator='\n')
        return buffer.getvalue()
    lines = []
    for key, value in payload.items():
        value = _flatten(value)
        if isinstance(value, float):
            value = f"{value:.12g}"
        lines.append(f"{key}: {'' if value is None else value}")
    return "\n".join(lines) + "\n"


def write_output(text: str, out: Optional[str]) -> None:
    """Write command output to --out, or stdout."""
    if out:
        parent = os.path.dirname(os.path.abspath(out))
        os.makedirs(parent, exist_ok=True)
        with open(out, 'w', newline='') as f:
            f.write(text)
        logger.info(f"Wrote output to {out}")
    else:
        sys.stdout.write(text)


def _require_group(args: argparse.Namespace) -> GroupSpec:
    group = getattr(args, 'group', None)
    if group is None:
        raise UsageError(f"{args.command}: --group is required")
    return group


def _load(args: argparse.Namespace, path: str, group: GroupSpec):
    return load_subset_file(path, group, allow_duplicates=args.multiset)


def cmd_mu(args: argparse.Namespace) -> str:
    g = _require_group(args)
    A, B, C = (_load(args, p, g) for p in (args.a_file, args.b_file, args.c_file))
    results = mu_all_routes(A, B, C)
    payload = {route: result.count for route, result in results.items()}
    payload['fourier_residual'] = results['fourier'].residual
    return render(payload, args.format)


def cmd_spectrum(args: argparse.Namespace) -> str:
    g = _require_group(args)
    A = _load(args, args.a_file, g)
    payload = spectral_summary(A)
    payload['hayes_bound'] = hayes_coeff_bound(g.order, A.size, args.epsilon)
    return render(payload, args.format)


def cmd_bounds(args: argparse.Namespace) -> str:
    g = _require_group(args)
    inputs = BoundInputs(N=g.order, mA=args.m, mB=args.mB, mC=args.mC, epsilon=args.epsilon,
                         h=args.h, alon_constant=args.alon_constant)
    payload = {'group': format_group_spec(g), 'N': g.order, 'mA': inputs.mA, 'mB': inputs.mB, 'mC': inputs.mC}
    payload.update(bound_report(inputs).to_dict())
    return render(payload, args.format)


def cmd_maximize(args: argparse.Namespace) -> str:
    g = _require_group(args)
    A = _load(args, args.a_file, g)
    result = alternating_maximize(A, args.k, restarts=args.restarts, seed=getattr(args, 'seed', 0),
                                  max_iters=args.max_iters)
    return render(result.to_dict(), args.format)


def cmd_oracle(args: argparse.Namespace) -> str:
    g = _require_group(args)
    A = _load(args, args.a_file, g)
    result = exact_maximize(A, args.k, budget=args.budget)
    return render(result.to_dict(), args.format)


def cmd_sample(args: argparse.Namespace) -> Optional[str]:
    g = _require_group(args)
    subset = sample_subset(g, args.m, getattr(args, 'seed', 0), args.replacement)
    if args.format == 'json':
        return render(subset.to_dict(), 'json')
    if args.out:
        write_subset_file(args.out, subset)
        logger.info(f"Wrote {subset.size} draws on {g} to {args.out}")
        return None
    return format_subset(subset)


def _experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    if args.config:
        experiment = load_experiment_config(args.config)
        if hasattr(args, 'seed'):
            experiment.master_seed = args.seed
        if args.workers:
            experiment.workers = args.workers
        return experiment
    g = _require_group(args)
    if args.m is None and args.alpha is None:
        raise UsageError("experiment: give --config, or --m or --alpha")
    return ExperimentConfig(
        group=g, m=args.m, alpha=args.alpha, trials=args.trials,
        master_seed=getattr(args, 'seed', 0), replacement=args.replacement,
        restarts=args.restarts, max_iters=args.max_iters, workers=args.workers,
        output_format=args.format if args.format in ('csv', 'json') else 'csv',
        record_timings=args.timings,
    )


def cmd_experiment(args: argparse.Namespace) -> Optional[str]:
    experiment = _experiment_config(args)
    if args.format in ('csv', 'json'):
        experiment.output_format = args.format
    # The CLI writes nowhere but --out
    if experiment.output_path and not args.out:
        logger.warning(f"Not writing to output.path {experiment.output_path} from the config; "
                       f"pass --out to write the report to a file")
    experiment.output_path = args.out

    records = run_trials(experiment)
    summary = summarize(records)
    if args.out:
        emit_report(records, experiment.output_format, args.out, experiment, summary)
        # The report went to a file; the summary is the console output
        sys.stdout.write(render(summary, 'json' if args.format == 'json' else 'text'))
        return None
    return render_report(records, experiment.output_format, experiment, summary)


COMMANDS = {
    'mu': cmd_mu,
    'spectrum': cmd_spectrum,
    'bounds': cmd_bounds,
    'maximize': cmd_maximize,
    'oracle': cmd_oracle,
    'sample': cmd_sample,
    'experiment': cmd_experiment,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the application."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 after --help
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    # --log-level wins over MU_LAB_LOG_LEVEL from the environment or config/mu_lab.env
    log_level = getattr(args, 'log_level', None)
    if log_level:
        os.environ[LOG_LEVEL_ENV_VAR] = log_level
    log_file = getattr(args, 'log_file', None)
    if log_file is None and LOG_CONFIG.get('log_file'):
        log_file = os.path.join(LOG_CONFIG['log_dir'], LOG_CONFIG['log_file'])
    configure_logging(level=log_level or LOG_CONFIG['default_level'], log_file=log_file)

    if hasattr(args, 'dense_cap'):
        config.DENSE_CAP = args.dense_cap
    args.format = getattr(args, 'format', 'text')
    args.out = getattr(args, 'out', None)

    try:
        text = COMMANDS[args.command](args)
        if text is not None:
            write_output(text, args.out if args.command != 'experiment' else None)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (MuLabError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
