"""
LorentzEig - Command Line Interface
spectrum / verify / preserver {make, check, classify} with JSON or table output

Exit codes: 0 success or agreement, 1 disagreement or falsification,
2 usage, parse or validation error.
"""

import argparse
import dataclasses
import json
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from loguru import logger
from tqdm import tqdm

from src.core import LorentzEigError, LSpectrum, Mat2, Tolerance, values_match
from src.lorentz_spectrum import LorentzSpectrumSolver
from src.oracle import LorentzOracle, OracleConfig
from src.pareto_bridge import ParetoBridge
from src.preserver import (LinMapM2, PreserverAnalyzer, builtin_map, classify_preserver,
                           linmap_from_dict, restrict_to_s2)
from utils.helpers import (DEFAULT_CONFIG_PATH, colorize, configure_logging, format_number,
                           format_time, load_config, parse_matrix, random_matrices,
                           read_json_argument, round_sig, tolerance_from_config)


EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_USAGE = 2


class UsageError(LorentzEigError):
    """Inconsistent command-line arguments"""


@dataclasses.dataclass
class CliContext:
    """Settings shared by every command"""

    config: Dict
    tol: Tolerance
    json_mode: bool
    digits: int
    color: bool
    show_progress: bool

    def rounded(self, obj: Any) -> Any:
        """Round every float in a JSON-like structure to `digits` significant digits"""
        if isinstance(obj, float):
            return round_sig(obj, self.digits)
        if isinstance(obj, dict):
            return {key: self.rounded(value) for key, value in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [self.rounded(value) for value in obj]
        if isinstance(obj, np.ndarray):
            return self.rounded(obj.tolist())
        return obj

    def emit_json(self, payload: Dict) -> None:
        print(json.dumps(self.rounded(payload), ensure_ascii=False, indent=2))

    def num(self, value: float) -> str:
        return format_number(value, self.digits)

    def paint(self, text: str, color: str) -> str:
        return colorize(text, color, self.color)


def _build_context(args: argparse.Namespace) -> CliContext:
    config = load_config(args.config)
    configure_logging(config)
    tol = tolerance_from_config(config)
    if args.tol is not None:
        tol = Tolerance(eq_tol=args.tol, set_tol=max(tol.set_tol, args.tol), cone_tol=tol.cone_tol)

    output = config.get('output', {}) or {}
    verification = config.get('verification', {}) or {}
    return CliContext(
        config=config,
        tol=tol,
        json_mode=args.json,
        digits=int(output.get('significant_digits', 12)),
        color=bool(output.get('color', True)) and not args.json and sys.stdout.isatty(),
        show_progress=bool(verification.get('show_progress', True)) and sys.stderr.isatty()
    )


def _read_text(argument: str) -> str:
    if argument == '-':
        return sys.stdin.read()
    if Path(argument).is_file():
        return Path(argument).read_text(encoding='utf-8')
    return argument


def _describe_item(item: Dict) -> str:
    natures = []
    if item['interior']:
        natures.append('interior')
    if item['boundary_plus'] and item['boundary_minus']:
        natures.append('boundary +/-')
    elif item['boundary_plus']:
        natures.append('boundary +')
    elif item['boundary_minus']:
        natures.append('boundary -')
    if item['boundary_plus'] or item['boundary_minus']:
        natures.append('strict' if item['strict_boundary'] else 'non-strict')
    return ', '.join(natures)


def _matrix_line(ctx: CliContext, A: Mat2) -> str:
    return f"[[{ctx.num(A.a)}, {ctx.num(A.b)}], [{ctx.num(A.c)}, {ctx.num(A.d)}]]"


def cmd_spectrum(args: argparse.Namespace, ctx: CliContext) -> int:
    """Print the L-spectrum of one matrix with nature flags"""
    A = parse_matrix(_read_text(args.matrix))
    report = LorentzSpectrumSolver(tol=ctx.tol).describe(A)

    if ctx.json_mode:
        ctx.emit_json(report)
        return EXIT_OK

    print(f"L-spectrum of {_matrix_line(ctx, A)}")
    for item in report['spectrum']:
        glyph = ctx.paint('●', 'cyan' if item['interior'] else 'yellow')
        print(f"  {glyph} {ctx.num(item['value']):>16}  {_describe_item(item)}")
    return EXIT_OK


def verify_matrix(A: Mat2, solver: LorentzSpectrumSolver, oracle: LorentzOracle,
                  bridge: ParetoBridge) -> Dict:
    """
    Closed form, oracle and Pareto bridge on one matrix

    Agreement flags are recomputed from the three spectra.

    Returns:
        Report dictionary
    """
    tol = solver.tol
    closed: LSpectrum = solver.solve(A)
    found: LSpectrum = oracle.spectrum(A)
    pareto = bridge.spectrum(A)

    oracle_ok = closed.matches(found, tol, by_nature=True)
    pareto_ok = values_match(pareto, closed.values(), tol.set_tol)
    return {
        'matrix': A.to_dict(),
        'closed_form': closed.to_list(),
        'oracle': found.to_list(),
        'pareto': pareto,
        'agreement': {'oracle': oracle_ok, 'pareto': pareto_ok, 'all': oracle_ok and pareto_ok}
    }


def _print_spectra(ctx: CliContext, report: Dict, indent: str = "") -> None:
    print(f"{indent}Closed form  {[ctx.num(e['value']) for e in report['closed_form']]}")
    print(f"{indent}Oracle       {[ctx.num(e['value']) for e in report['oracle']]}")
    print(f"{indent}Pareto       {[ctx.num(v) for v in report['pareto']]}")


def cmd_verify(args: argparse.Namespace, ctx: CliContext) -> int:
    """Cross-check one matrix, or a seeded random batch, against oracle and Pareto bridge"""
    if (args.matrix is None) == (args.random is None):
        raise UsageError("verify needs either a matrix or --random N")
    if args.random is not None and args.random < 1:
        raise UsageError(f"--random must be >= 1, got {args.random}")

    oracle_cfg = OracleConfig.from_config(ctx.config)
    if args.grid is not None:
        oracle_cfg = dataclasses.replace(oracle_cfg, grid_points=args.grid)

    solver = LorentzSpectrumSolver(tol=ctx.tol)
    oracle = LorentzOracle(cfg=oracle_cfg, tol=ctx.tol)
    bridge = ParetoBridge(tol=ctx.tol)

    if args.matrix is not None:
        report = verify_matrix(parse_matrix(_read_text(args.matrix)), solver, oracle, bridge)
        report['tolerance'] = ctx.tol.to_dict()
        agreed = report['agreement']['all']
        if ctx.json_mode:
            ctx.emit_json(report)
        else:
            print(f"Matrix       {_matrix_line(ctx, Mat2.from_dict(report['matrix']))}")
            _print_spectra(ctx, report)
            print(ctx.paint("✅ All three agree", 'green') if agreed
                  else ctx.paint("❌ Disagreement", 'red'))
        return EXIT_OK if agreed else EXIT_DISAGREE

    seed = args.seed if args.seed is not None else int(
        (ctx.config.get('sampler', {}) or {}).get('seed', 42))
    entry_range = float((ctx.config.get('verification', {}) or {}).get('random_entry_range', 5.0))
    coords = random_matrices(np.random.default_rng(seed), args.random, entry_range)

    start = time.time()
    disagreements = []
    for index, row in enumerate(tqdm(coords, desc="Verifying", disable=not ctx.show_progress)):
        report = verify_matrix(Mat2.from_coords(row), solver, oracle, bridge)
        if not report['agreement']['all']:
            disagreements.append({'index': index, **report})
    elapsed = time.time() - start
    logger.info(f"verified {args.random} matrices in {format_time(elapsed)}, "
                f"{len(disagreements)} disagreement(s)")

    summary = {
        'seed': seed,
        'count': args.random,
        'agreed': args.random - len(disagreements),
        'disagreements': disagreements,
        'tolerance': ctx.tol.to_dict()
    }
    if ctx.json_mode:
        ctx.emit_json(summary)
    else:
        print(f"Verified {args.random} random matrices (seed {seed}) in {format_time(elapsed)}")
        if disagreements:
            print(ctx.paint(f"❌ {len(disagreements)} disagreement(s)", 'red'))
            for item in disagreements:
                print(f"  #{item['index']}: {_matrix_line(ctx, Mat2.from_dict(item['matrix']))}")
                _print_spectra(ctx, item, indent="      ")
        else:
            print(ctx.paint("✅ All matrices agree", 'green'))
    return EXIT_OK if not disagreements else EXIT_DISAGREE


def _load_map(args: argparse.Namespace, ctx: CliContext):
    if (args.map_json is None) == (args.map is None):
        raise UsageError("give either a map JSON argument or --map NAME")
    if args.map is not None:
        m = builtin_map(args.map)
    else:
        m = linmap_from_dict(read_json_argument(args.map_json))
    if getattr(args, 'space', None) == 'S2' and isinstance(m, LinMapM2):
        m = restrict_to_s2(m, ctx.tol)
    return m


def _print_coeffs(ctx: CliContext, coeffs) -> None:
    for row in np.asarray(coeffs):
        print("  [" + ", ".join(f"{ctx.num(v):>14}" for v in row) + "]")


def cmd_preserver(args: argparse.Namespace, ctx: CliContext) -> int:
    """make / check / classify"""
    analyzer = PreserverAnalyzer(args.config, tol=ctx.tol)

    if args.action == 'make':
        m = analyzer.make(args.kind, args.beta, args.space)
        form = classify_preserver(m, ctx.tol) if isinstance(m, LinMapM2) else None
        payload = {**m.to_dict(), 'space': args.space, 'kind': args.kind.upper()[:1],
                   'beta': args.beta}
        if form is not None:
            payload['alpha'] = form.alpha
        if ctx.json_mode:
            ctx.emit_json(payload)
        else:
            print(f"{payload['kind']} form, beta = {ctx.num(args.beta)} on {args.space} "
                  f"(basis {m.basis})")
            _print_coeffs(ctx, m.coeffs)
        return EXIT_OK

    m = _load_map(args, ctx)

    if args.action == 'check':
        verdict = analyzer.check(m, trials=args.trials, seed=args.seed,
                                 progress=ctx.show_progress)
        if ctx.json_mode:
            ctx.emit_json(verdict.to_dict())
        elif verdict.falsified:
            print(ctx.paint(f"❌ falsified at trial {verdict.witness_index} "
                            f"(seed {verdict.seed})", 'red'))
            print(f"  witness  {_matrix_line(ctx, verdict.witness)}  "
                  f"spectrum {[ctx.num(v) for v in verdict.witness_spectrum.values()]}")
            print(f"  image    {_matrix_line(ctx, verdict.image)}  "
                  f"spectrum {[ctx.num(v) for v in verdict.image_spectrum.values()]}")
        else:
            print(ctx.paint(f"✅ consistent over {verdict.trials_run} trials "
                            f"(seed {verdict.seed})", 'green'))
        return EXIT_DISAGREE if verdict.falsified else EXIT_OK

    report = analyzer.classify(m)
    if ctx.json_mode:
        ctx.emit_json(report)
    else:
        for step, passed in report['steps'].items():
            mark = '·' if passed is None else ('✅' if passed else '❌')
            print(f"  {mark} {step}")
        form = report['form']
        if form is None:
            print(ctx.paint(f"not a preserver (failed at {report['failed_step']})", 'red'))
        else:
            print(ctx.paint(f"{form['kind']} form, beta = {ctx.num(form['beta'])}", 'green'))
    return EXIT_OK if report['form'] is not None else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for all commands"""
    parser = argparse.ArgumentParser(
        prog='lorentz-eig',
        description="Lorentz cone spectra of 2x2 matrices and their linear preservers")
    parser.add_argument('--config', default=DEFAULT_CONFIG_PATH, help="Configuration file")
    parser.add_argument('--tol', type=float, default=None, help="Override eq_tol")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument('--json', dest='json', action='store_true', help="JSON output")
    mode.add_argument('--table', dest='json', action='store_false', help="Table output (default)")

    commands = parser.add_subparsers(dest='command', required=True)

    spectrum = commands.add_parser('spectrum', help="L-spectrum of a matrix")
    spectrum.add_argument('matrix', help="JSON object, 'a,b;c,d', a file path or '-'")
    spectrum.set_defaults(handler=cmd_spectrum)

    verify = commands.add_parser('verify', help="Cross-check closed form, oracle and Pareto bridge")
    verify.add_argument('matrix', nargs='?', default=None)
    verify.add_argument('--random', type=int, default=None, metavar='N',
                        help="Verify N seeded random matrices")
    verify.add_argument('--seed', type=int, default=None)
    verify.add_argument('--grid', type=int, default=None, help="Oracle grid points")
    verify.set_defaults(handler=cmd_verify)

    preserver = commands.add_parser('preserver', help="Build, test and recognize preservers")
    actions = preserver.add_subparsers(dest='action', required=True)

    make = actions.add_parser('make', help="Coefficient matrix of a P or Q form")
    make.add_argument('--kind', required=True, help="P or Q")
    make.add_argument('--beta', type=float, required=True)
    make.add_argument('--space', type=str.upper, choices=['M2', 'S2'], default='M2')

    for name, text in (('check', "Falsification test by sampling"),
                       ('classify', "Structural recognition")):
        sub = actions.add_parser(name, help=text)
        sub.add_argument('map_json', nargs='?', default=None,
                         help="Map JSON (inline, file path or '-')")
        sub.add_argument('--map', default=None,
                         help="Built-in map: identity, transpose, diag12, trace-shift, rotation:<theta>")
        sub.add_argument('--space', type=str.upper, choices=['M2', 'S2'], default='M2',
                         help="Restrict an M2 map to S2 first")
        if name == 'check':
            sub.add_argument('--trials', type=int, default=None)
            sub.add_argument('--seed', type=int, default=None)

    preserver.set_defaults(handler=cmd_preserver)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments and run a command

    Args:
        argv: Arguments (defaults to sys.argv[1:])

    Returns:
        Exit code
    """
    args = build_parser().parse_args(argv)
    try:
        ctx = _build_context(args)
        return args.handler(args, ctx)
    except (LorentzEigError, ValueError) as e:
        message = f"{type(e).__name__}: {e}"
        logger.debug(message)
        print(f"error: {message}", file=sys.stderr)
        if args.json:
            print(json.dumps({'error': message}, ensure_ascii=False))
        return EXIT_USAGE
