# main_enhanced.py - Command-line front end for the L-contact pipeline
import argparse
import json
import logging
import os
import sys
import time
from typing import List, Optional

import pandas as pd

from src.angular import compute_angular_tree
from src.batch_processor import run_batch
from src.config_loader import get_config
from src.errors import InvalidRepresentation, LamanError, NotLamanError, PipelineInvariantError
from src.graph_io import dumps, graph_to_dict, load_graph, read_json, write_json
from src.henneberg import HennebergSequence, random_sequence
from src.laman import brute_force_laman, validate_laman
from src.lcontact import LContactRepresentation
from src.pipeline import STAGES, run_pipeline
from src.svg_export import write_svg
from src.validator import validate_representation

EXIT_OK = 0


class Console:
    """Human status lines on stderr, only when verbose"""

    def __init__(self, verbose: bool = False):
        self.verbose = verbose

    def say(self, message: str):
        if self.verbose:
            print(message, file=sys.stderr)


def emit(data, out: Optional[str] = None):
    """Machine output: JSON to --out or stdout"""
    if out:
        write_json(out, data)
    else:
        sys.stdout.write(dumps(data))


def _load_sequence(path: Optional[str]) -> Optional[HennebergSequence]:
    if not path:
        return None
    return HennebergSequence.from_dict(read_json(path))


def cmd_generate(args, console: Console) -> int:
    """Random plane Laman graph from n-3 random Henneberg moves"""
    seed = args.seed if args.seed is not None else int(get_config().get('DEFAULT_SEED', 1))
    console.say(f"🚀 Generating n={args.n} with seed {seed}")
    sequence, g = random_sequence(args.n, seed, args.h2)
    emit(graph_to_dict(g), args.out)
    if args.sequence_out:
        write_json(args.sequence_out, sequence.to_dict())
    console.say(f"✅ Generated {g!r}")
    return EXIT_OK


def cmd_check(args, console: Console) -> int:
    """Laman verdict only"""
    g = load_graph(args.graph)
    verdict = validate_laman(g)
    result = verdict.to_dict()

    if args.oracle:
        limit = int(get_config().get('BRUTE_FORCE_LIMIT', 10))
        oracle = brute_force_laman(g.vertices, g.edges(), limit)
        result['oracle'] = oracle.to_dict()
        if bool(oracle) != bool(verdict):
            console.say(f"❌ Pebble game and subset oracle disagree on {args.graph}")
            emit(result, args.out)
            return 4

    emit(result, args.out)
    if verdict:
        console.say(f"✅ {args.graph} is a Laman graph")
        return EXIT_OK
    console.say(f"❌ Not Laman: {verdict.reason}; W = {verdict.witness}")
    return NotLamanError.exit_code


def cmd_draw(args, console: Console) -> int:
    """Full construction; a representation that fails validation is an internal error (exit 4)"""
    g = load_graph(args.graph)
    console.say(f"🚀 Drawing {g!r}")
    artifacts = run_pipeline(g, sequence=_load_sequence(args.sequence))
    emit(artifacts.representation.to_dict(), args.out)

    if args.svg:
        write_svg(args.svg, artifacts.representation)
        console.say(f"💾 SVG written to {args.svg}")

    if args.artifacts:
        for stage in STAGES:
            write_json(os.path.join(args.artifacts, f"{stage}.json"), artifacts.stage_payload(stage))
        write_json(os.path.join(args.artifacts, 'stats.json'), artifacts.stats())
        artifacts.timings_frame().to_csv(os.path.join(args.artifacts, 'timings.csv'), index=False)
        console.say(f"💾 Artifacts written to {args.artifacts}")

    if console.verbose:
        console.say("📊 Stage timings:")
        console.say(artifacts.timings_frame().to_string(index=False))

    if not artifacts.verdict:
        raise PipelineInvariantError(f"constructed representation fails clause ({artifacts.verdict.rule}): "
                                     f"{artifacts.verdict.message}")
    console.say(f"✅ Valid representation; {'; '.join(artifacts.verdict.notes)}")
    return EXIT_OK


def cmd_validate(args, console: Console) -> int:
    """Check a representation file against a graph file"""
    g = load_graph(args.graph)
    rep = LContactRepresentation.from_dict(read_json(args.representation))
    verdict = validate_representation(g, rep)
    emit(verdict.to_dict(), args.out)
    if verdict:
        console.say(f"✅ Proper L-contact representation of {args.graph}")
        return EXIT_OK
    raise InvalidRepresentation(f"clause ({verdict.rule}) violated: {verdict.message}; witness {verdict.witness}")


def cmd_stage(args, console: Console) -> int:
    """Emit one intermediate artifact"""
    g = load_graph(args.graph)
    artifacts = run_pipeline(g, sequence=_load_sequence(args.sequence), until=args.stage)
    emit(artifacts.stage_payload(args.stage), args.out)
    console.say(f"✅ Stage {args.stage} done in {sum(artifacts.timings.values()):.1f} ms")
    return EXIT_OK


def cmd_batch(args, console: Console) -> int:
    console.say(f"🚀 Batch drawing {len(args.files)} path(s) with {args.jobs or 'configured'} job(s)")
    return run_batch(args.files, args.out, args.jobs, args.svg_all, stream=sys.stderr if args.quiet else None)


def cmd_bench(args, console: Console) -> int:
    """Time angular-tree computation at growing sizes"""
    seed = args.seed if args.seed is not None else int(get_config().get('DEFAULT_SEED', 1))
    rows = []
    for n in args.sizes:
        sequence, g = random_sequence(n, seed)
        start = time.perf_counter()
        for _ in range(args.repeat):
            compute_angular_tree(g, sequence)
        ms = (time.perf_counter() - start) * 1000.0 / args.repeat
        rows.append({'n': n, 'ms': round(ms, 3)})
        console.say(f"📊 n={n}: {ms:.1f} ms")

    df = pd.DataFrame(rows)
    # time ratio against size ratio between consecutive sizes
    df['time_ratio'] = df['ms'] / df['ms'].shift(1)
    df['size_ratio'] = df['n'] / df['n'].shift(1)
    emit({'rows': json.loads(df.to_json(orient='records'))}, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='laman-lcontact',
                                     description='L-contact representations of plane Laman graphs')
    parser.add_argument('--verbose', '-v', action='store_true', help='status lines and INFO logging on stderr')
    parser.add_argument('--debug', action='store_true', help='DEBUG logging')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('generate', help='random plane Laman graph')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--seed', type=int)
    p.add_argument('--h2', type=float, default=0.5, help='probability of an H2 move')
    p.add_argument('--out')
    p.add_argument('--sequence-out', help='also write the Henneberg sequence used')
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser('check', help='Laman verdict only')
    p.add_argument('graph')
    p.add_argument('--oracle', action='store_true', help='cross-check with the subset oracle')
    p.add_argument('--out')
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser('draw', help='compute and validate an L-contact representation')
    p.add_argument('graph')
    p.add_argument('--sequence', help='Henneberg sequence JSON to use instead of decomposing')
    p.add_argument('--out')
    p.add_argument('--svg')
    p.add_argument('--artifacts', help='directory for every stage dump, stats and timings')
    p.set_defaults(handler=cmd_draw)

    p = sub.add_parser('validate', help='validate a representation against a graph')
    p.add_argument('representation')
    p.add_argument('graph')
    p.add_argument('--out')
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser('stage', help='dump one intermediate stage')
    p.add_argument('graph')
    p.add_argument('--stage', required=True, choices=STAGES)
    p.add_argument('--sequence')
    p.add_argument('--out')
    p.set_defaults(handler=cmd_stage)

    p = sub.add_parser('batch', help='draw many graph files')
    p.add_argument('files', nargs='+', help='graph files or directories of *.json')
    p.add_argument('--jobs', type=int)
    p.add_argument('--out', help='output directory')
    p.add_argument('--svg-all', action='store_true', help='write an SVG per file')
    p.add_argument('--quiet', action='store_true', help='summary report on stderr')
    p.set_defaults(handler=cmd_batch)

    p = sub.add_parser('bench', help='angular-tree timing at given sizes')
    p.add_argument('--sizes', type=int, nargs='+', default=[50, 100, 200])
    p.add_argument('--seed', type=int)
    p.add_argument('--repeat', type=int, default=3)
    p.add_argument('--out')
    p.set_defaults(handler=cmd_bench)

    return parser


def configure_logging(args):
    config = get_config()
    if args.debug:
        level = logging.DEBUG
    elif args.verbose:
        level = config.get_log_level()
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format='%(asctime)s - %(levelname)s - %(message)s',
                        stream=sys.stderr, force=True)


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point; returns the process exit code"""
    args = build_parser().parse_args(argv)
    configure_logging(args)
    console = Console(args.verbose)

    try:
        return args.handler(args, console)
    except LamanError as e:
        console.say(f"❌ {type(e).__name__}: {e.message}")
        print(json.dumps(e.to_dict()), file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        console.say("\n\nOperation cancelled by user.")
        return 130
    except Exception as e:
        logging.getLogger(__name__).exception(f"Unexpected error: {e}")
        print(json.dumps({'error': type(e).__name__, 'message': str(e), 'exit_code': 4}), file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
