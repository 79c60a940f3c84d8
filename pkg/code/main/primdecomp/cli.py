"""
Command line entry point: ``python -m primdecomp <command> ...``.

Payloads go to stdout (or --out) as byte-stable JSON, SVG or ASCII art; logs
and diagnostics go to stderr. Exit codes: 0 success, 2 invalid input,
3 budget exceeded, 1 internal invariant violation.
"""
import argparse
import contextlib
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import serialization as io
from .checker import InvariantChecker
from .config import settings, setup_logging
from .cone_geometry import grid_supports_general, localize_general
from .downset import (DownsetExpr, canonical_decomposition, global_support, local_support, localize,
                      prune_redundant)
from .errors import BudgetError, InvariantViolation, SchemaError, UnsupportedGroup, ValidationError
from .grid_module import (classify_element, divides_coprimary, face_support_report, is_coprimary_module,
                          primary_decomposition_module, realize)
from .pogroup import lattice_of
from .render import render_ascii, render_svg, save_png

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_VALIDATION = 2
EXIT_BUDGET = 3


@dataclass
class CommandResult:
    status: int
    payload: object = None
    art: str = None

    @property
    def text(self):
        if self.art is not None:
            return self.art
        if self.payload is None:
            return ''
        return io.dumps(self.payload)


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def parse_vector(text, field):
    try:
        return tuple(int(part) for part in text.split(','))
    except ValueError:
        raise SchemaError(field, f"expected comma-separated integers, got {text!r}")


def parse_box(text):
    """'LO..HI' with comma-separated corners, e.g. '-1,-1..2,2'"""
    if text is None:
        return None
    if '..' not in text:
        raise SchemaError('box', f"expected LO..HI, got {text!r}")
    lo, hi = text.split('..', 1)
    lo, hi = parse_vector(lo, 'box.lo'), parse_vector(hi, 'box.hi')
    if len(lo) != len(hi):
        raise SchemaError('box', f"corners of different ranks in {text!r}")
    return lo, hi


def _load_downset(path):
    return io.parse_downset(io.load_file(path))


def _load_module(path):
    return io.parse_module(io.load_file(path))


def _require_orthant(D, command):
    if not isinstance(D, DownsetExpr):
        raise UnsupportedGroup(f"{command} needs an orthant group, got {D.group.kind}")
    return D


def _general_box(D, box):
    if box is not None:
        return box
    margin = settings.grid_margin
    n = D.group.n
    if not D.pieces:
        return (-margin,) * n, (margin,) * n
    lo = tuple(min(p.apex[i] for p in D.pieces) - margin for i in range(n))
    hi = tuple(max(p.apex[i] for p in D.pieces) + margin for i in range(n))
    return lo, hi


def _components(D, prune):
    components = canonical_decomposition(D)
    if prune:
        components = prune_redundant(components, D)
    return components


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_faces(args):
    data = io.load_file(args.cone)
    cone = io.parse_cone(data['group'] if isinstance(data, dict) and 'group' in data else data)
    return CommandResult(EXIT_OK, io.lattice_to_json(lattice_of(cone)))


def cmd_localize(args):
    D = _load_downset(args.input)
    face = io.parse_face(args.face, D.lattice)
    if isinstance(D, DownsetExpr):
        return CommandResult(EXIT_OK, io.downset_to_json(localize(D, face)))
    pieces = localize_general(D.pieces, face, D.lattice)
    return CommandResult(EXIT_OK, io.downset_to_json(type(D)(D.group, tuple(pieces))))


def cmd_support(args):
    D = _load_downset(args.input)
    face = io.parse_face(args.face, D.lattice)
    if isinstance(D, DownsetExpr):
        region = local_support(D, face) if args.local else global_support(D, face)
        return CommandResult(EXIT_OK, io.region_to_json(region))
    lo, hi = _general_box(D, parse_box(args.box))
    supports = grid_supports_general(D.pieces, face, lo, hi, D.lattice)
    points = supports.local_support if args.local else supports.global_support
    return CommandResult(EXIT_OK, {"box": {"lo": list(lo), "hi": list(hi)},
                                   "face": io.face_ref_to_json(face, D.lattice),
                                   "points": sorted(list(p) for p in points)})


def cmd_decompose_downset(args):
    D = _require_orthant(_load_downset(args.input), 'decompose-downset')
    components = _components(D, args.prune)
    logger.info(f"Decomposed into {len(components)} components")
    return CommandResult(EXIT_OK, io.decomposition_to_json(D, components, pruned=args.prune))


def cmd_decompose_module(args):
    h = _load_module(args.module)
    decomposition = primary_decomposition_module(h)
    return CommandResult(EXIT_OK, io.module_decomposition_to_json(decomposition))


def cmd_classify(args):
    h = _load_module(args.module)
    if not h.hull:
        raise SchemaError('hull', "a module needs at least one hull downset")
    M = realize(h)
    face = io.parse_face(args.face, h.hull[0].lattice)
    if args.degree is None:
        report = face_support_report(M, face)
        payload = {
            "char_set": list(face.char_set),
            "coprimary": is_coprimary_module(M, face),
            "global_support": io.dims_to_json(report.global_support.as_module()),
            "local_support": io.dims_to_json(report.local_support.as_module()),
        }
        return CommandResult(EXIT_OK, payload)

    q = parse_vector(args.degree, 'degree')
    if args.vector is None:
        raise SchemaError('vector', "--degree needs --vector")
    v = parse_vector(args.vector, 'vector')
    element = classify_element(M, q, v, face)
    divides = divides_coprimary(M, q, v, face)
    return CommandResult(EXIT_OK, {
        "degree": list(q),
        "char_set": list(face.char_set),
        "persistent": element.persistent,
        "transient": element.transient,
        "coprimary": element.coprimary,
        "divides_coprimary_at": None if divides is None else list(divides),
    })


def cmd_check(args):
    if args.module:
        subject, name = _load_module(args.module), Path(args.module).name
    else:
        subject = _require_orthant(_load_downset(args.input), 'check')
        name = Path(args.input).name
    checker = InvariantChecker(subject, input_name=name)
    with contextlib.redirect_stdout(sys.stderr):
        summary = checker.run_complete_check()
    return CommandResult(EXIT_OK, summary)


def cmd_render(args):
    D = _require_orthant(_load_downset(args.input), 'render')
    box = parse_box(args.box)
    components = _components(D, args.prune)
    if args.out and args.out.endswith('.png'):
        save_png(D, components, args.out, box)
        return CommandResult(EXIT_OK, art='')
    if args.format == 'ascii':
        return CommandResult(EXIT_OK, art=render_ascii(D, components, box))
    return CommandResult(EXIT_OK, art=render_svg(D, components, box))


COMMANDS = {
    'faces': cmd_faces,
    'localize': cmd_localize,
    'support': cmd_support,
    'decompose-downset': cmd_decompose_downset,
    'decompose-module': cmd_decompose_module,
    'classify': cmd_classify,
    'check': cmd_check,
    'render': cmd_render,
}


def build_parser():
    parser = argparse.ArgumentParser(prog='primdecomp',
                                     description='Primary decompositions of downsets and downset-finite modules')
    parser.add_argument('-v', '--verbose', action='store_true', help='log progress at INFO level')
    sub = parser.add_subparsers(dest='command', required=True)

    faces = sub.add_parser('faces', help='face lattice of a positive cone')
    faces.add_argument('--cone', required=True)

    for name, help_text in (('localize', 'localization along a face'), ('support', 'global or local support')):
        p = sub.add_parser(name, help=help_text)
        p.add_argument('--input', required=True)
        p.add_argument('--face', required=True)
        if name == 'support':
            kind = p.add_mutually_exclusive_group()
            kind.add_argument('--local', action='store_true')
            kind.add_argument('--global', dest='local', action='store_false')
            p.set_defaults(local=False)
            p.add_argument('--box')

    decompose = sub.add_parser('decompose-downset', help='canonical primary decomposition of a downset')
    decompose.add_argument('--input', required=True)
    decompose.add_argument('--prune', action='store_true')

    module = sub.add_parser('decompose-module', help='primary decomposition of a hull-presented module')
    module.add_argument('--module', required=True)

    classify = sub.add_parser('classify', help='coprimary test of a module or one of its elements')
    classify.add_argument('--module', required=True)
    classify.add_argument('--face', required=True)
    classify.add_argument('--degree')
    classify.add_argument('--vector')

    check = sub.add_parser('check', help='full invariant suite on one input')
    source = check.add_mutually_exclusive_group(required=True)
    source.add_argument('--input')
    source.add_argument('--module')

    render = sub.add_parser('render', help='draw the decomposition of a rank-2 downset')
    render.add_argument('--input', required=True)
    render.add_argument('--box')
    render.add_argument('--prune', action='store_true')
    render.add_argument('--format', choices=('svg', 'ascii'), default='svg')

    for name, p in sub.choices.items():
        p.add_argument('--out')
        if name != 'render':
            p.add_argument('--format', choices=('json',), default='json')
    return parser


def run(argv=None):
    """Parse arguments and run one command; errors propagate"""
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


def _emit(result, out):
    if out is None:
        sys.stdout.write(result.text)
    elif not out.endswith('.png'):
        Path(out).write_text(result.text, encoding='utf-8')


def main(argv=None):
    args = build_parser().parse_args(argv)
    setup_logging(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        result = COMMANDS[args.command](args)
    except ValidationError as e:
        logger.error(f"Invalid input: {e}")
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except BudgetError as e:
        logger.error(f"Budget exceeded: {e}")
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as e:
        print(f"❌ Cannot read input: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except InvariantViolation as e:
        logger.error(f"Invariant violated: {e}")
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    _emit(result, args.out)
    return result.status


if __name__ == '__main__':
    sys.exit(main())
