"""
Main entry point for the gbc-forms command-line tool.
"""

import argparse
import sys
from typing import Any, Dict, List, Optional

import numpy as np

from .conformity.traces import facet_trace, shared_jump, trace_kind
from .forms.basis import evaluate
from .forms.counting import count_table
from .gbc.wachspress import wachspress
from .geometry.sampling import sample_facet, sample_interior
from .harness.checks import SuiteSettings
from .harness.suite import SUITE_CHOICES, format_report, run_checks, to_csv, to_json
from .harness.targets import parse_target
from .loaders.corpus import generate_corpus
from .loaders.mesh_loader import MeshLoader
from .models.basis import BasisDescriptor, Family
from .models.polytope import MeshComplex, as_point
from .reproduction.verify import span_contains, verify_reproduction
from .utils.config_manager import ConfigManager
from .utils.errors import (DegeneratePolytopeError, DescriptorError, GbcFormsError, InconsistentMeshError,
                           MeshIndexError, MeshParseError, NonManifoldError, PolytopeValidationError,
                           TopologyError, UnsupportedTargetError)
from .utils.logger import get_logger, set_verbosity

logger = get_logger("main")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4

VALIDATION_ERRORS = (DegeneratePolytopeError, PolytopeValidationError, NonManifoldError,
                     InconsistentMeshError, TopologyError, MeshIndexError)


class CommandFailed(Exception):
    """Raised by a subcommand whose checks ran but did not all pass."""


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tol', type=float, help='Check tolerance (default from settings, 1e-8)')
    common.add_argument('--seed', type=int, help='Sampling seed (default from settings, 42)')
    common.add_argument('--samples', type=int, help='Interior samples per element (default 100)')
    common.add_argument('--out', '-o', type=str, help='Write output to this file instead of stdout')
    common.add_argument('--format', choices=['json', 'csv'], help='Output format')
    common.add_argument('--config-dir', type=str, help='Directory holding settings.json')
    common.add_argument('--verbose', '-v', action='store_true', help='Debug logging')
    common.add_argument('--quiet', '-q', action='store_true', help='Warnings and errors only')

    parser = argparse.ArgumentParser(
        prog='gbc-forms',
        description='Generalized barycentric form bases: construction and verification')
    commands = parser.add_subparsers(dest='command', required=True)

    validate = commands.add_parser('validate', parents=[common], help='Validate a mesh')
    validate.add_argument('mesh', help="Mesh JSON path or 'corpus:<name>'")

    coords = commands.add_parser('coords', parents=[common], help='Wachspress coordinates at points')
    coords.add_argument('mesh')
    coords.add_argument('--element', type=int, default=0)
    coords.add_argument('--point', action='append', default=[],
                        help='Comma-separated coordinates; repeatable (default: interior samples)')

    count = commands.add_parser('count', parents=[common], help='Basis counts per element')
    count.add_argument('mesh')

    identities = commands.add_parser('verify-identities', parents=[common], help='Coordinate identity suite')
    identities.add_argument('mesh')

    repro = commands.add_parser('verify-repro', parents=[common], help='Polynomial reproduction check')
    repro.add_argument('mesh')
    repro.add_argument('--family', required=True, help='P or Pminus')
    repro.add_argument('--k', type=int, required=True, help='Form degree')
    repro.add_argument('--target', required=True, help='identity, one, position, const:.., linear:.., '
                                                       'matrix:.., koszul:.., random')
    repro.add_argument('--rot', action='store_true', help='rot flavour (2D 1-forms)')
    repro.add_argument('--element', type=int, help='Only this element (default: all)')

    conformity = commands.add_parser('verify-conformity', parents=[common], help='Trace jumps across facets')
    conformity.add_argument('mesh')
    conformity.add_argument('--family', required=True)
    conformity.add_argument('--k', type=int, required=True)
    conformity.add_argument('--rot', action='store_true')

    field = commands.add_parser('sample-field', parents=[common], help='Sample one basis function')
    field.add_argument('mesh')
    field.add_argument('--element', type=int, default=0)
    field.add_argument('--descriptor', required=True, help="e.g. 'W:0,1', 'P:0,1:rot' (global vertex ids)")
    field.add_argument('--count', type=int, default=20)
    field.add_argument('--facet', type=int, help='Sample the trace on this facet from every incident element')

    corpus = commands.add_parser('gen-corpus', parents=[common], help='Write the bundled corpus')
    corpus.add_argument('out_dir')

    suite = commands.add_parser('run-suite', parents=[common], help='Run verification suites')
    suite.add_argument('mesh')
    suite.add_argument('--suite', choices=SUITE_CHOICES, default='all')

    return parser


def effective_settings(args: argparse.Namespace) -> Dict[str, Any]:
    """Stored settings with command-line overrides applied."""
    settings = ConfigManager(args.config_dir).load_settings()
    for flag, key in (('tol', 'tolerance'), ('seed', 'seed'), ('samples', 'samples')):
        value = getattr(args, flag)
        if value is not None:
            settings[key] = value
    return settings


def load(args: argparse.Namespace, settings: Dict[str, Any]):
    document = MeshLoader().load(args.mesh)
    return document, document.build(settings['geometric_tolerance'])


def emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)


def _axes(n: int) -> List[str]:
    return ['x', 'y', 'z'][:n]


def cmd_validate(args, settings) -> str:
    document, mesh = load(args, settings)
    return to_json({
        'mesh_digest': document.digest,
        'dimension': mesh.dimension,
        'elements': len(mesh.elements),
        'facets': len(mesh.facets),
        'interior_facets': len(mesh.interior_facets),
        'valid': True,
    })


def cmd_coords(args, settings) -> str:
    _, mesh = load(args, settings)
    element = mesh.element(args.element)
    if args.point:
        try:
            points = [as_point([float(c) for c in text.split(",")], mesh.dimension) for text in args.point]
        except ValueError as e:
            raise DescriptorError(f"Bad --point value: {e}") from None
    else:
        points = sample_interior(element, settings['samples'], settings['seed'])
    axes = _axes(mesh.dimension)
    columns = ['element_id', *axes, 'vertex_id', 'lambda', *[f"grad_{a}" for a in axes]]
    rows = []
    for x in points:
        cs = wachspress(element, x)
        for local, vertex_id in enumerate(cs.vertex_ids):
            row = {'element_id': args.element, 'vertex_id': vertex_id, 'lambda': float(cs.values[local])}
            row.update({a: float(c) for a, c in zip(axes, cs.point)})
            row.update({f"grad_{a}": float(g) for a, g in zip(axes, cs.gradients[local])})
            rows.append(row)
    if args.format == 'json':
        return to_json(rows)
    return to_csv(rows, columns)


def cmd_count(args, settings) -> str:
    _, mesh = load(args, settings)
    rows = []
    for element_id, element in enumerate(mesh.elements):
        for record in count_table(element):
            rows.append(dict(record.to_dict(), element_id=element_id))
    if args.format == 'json':
        return to_json(rows)
    return to_csv(rows, ['element_id', 'n', 'k', 'family', 'constructed', 'boundary', 'polynomial', 'note'])


def cmd_verify_identities(args, settings) -> str:
    document, mesh = load(args, settings)
    report = run_checks(mesh, 'identities', SuiteSettings.from_dict(settings), document.digest)
    if not report.passed:
        raise CommandFailed(format_report(report, args.format or 'json'))
    return format_report(report, args.format or 'json')


def cmd_verify_repro(args, settings) -> str:
    _, mesh = load(args, settings)
    family = Family.parse(args.family)
    tol = settings['tolerance']
    element_ids = [args.element] if args.element is not None else range(len(mesh.elements))
    target = parse_target(args.target, mesh.dimension, family, args.k, args.rot, settings['seed'])
    results = []
    for element_id in element_ids:
        element = mesh.element(element_id)
        samples = sample_interior(element, settings['samples'], settings['seed'])
        try:
            report = verify_reproduction(element, family, args.k, target, samples, args.rot)
            result = {'method': 'coefficients', 'identity_id': report.identity_id,
                      'max_residual': report.max_residual, 'pass': report.passed(tol)}
        except UnsupportedTargetError as e:
            logger.info(f"Element {element_id}: {e}; falling back to the span oracle")
            span = span_contains(element, family, args.k, target, samples, args.rot)
            result = dict(span.to_dict(), method='span', max_residual=span.relative_residual)
            result['pass'] = span.contains(tol)
        result.update(polytope_id=element_id, tolerance=tol)
        results.append(result)
    text = to_json({'results': results, 'overall_pass': all(r['pass'] for r in results)})
    if not all(r['pass'] for r in results):
        raise CommandFailed(text)
    return text


def cmd_verify_conformity(args, settings) -> str:
    document, mesh = load(args, settings)
    family = Family.parse(args.family)
    tol = settings['tolerance']
    reports = [shared_jump(mesh, facet.facet_id, family, args.k, args.rot,
                           count=settings['facet_samples'], seed=settings['seed'], tol=tol)
               for facet in mesh.interior_facets]
    passed = all(r.passed for r in reports)
    text = to_json({'mesh_digest': document.digest, 'facets': [r.to_dict() for r in reports],
                    'overall_pass': passed})
    if not passed:
        raise CommandFailed(text)
    return text


def _field_value(mesh: MeshComplex, element_id: int, d: BasisDescriptor, x) -> np.ndarray:
    """Value of a globally indexed descriptor on one element; zero where it has no support."""
    element = mesh.element(element_id)
    if not all(element.has_vertex(g) for g in d.indices):
        components = 1 if d.k in (0, mesh.dimension) else mesh.dimension
        return np.zeros(components)
    local = d.with_indices(tuple(element.local_index(g) for g in d.indices))
    return evaluate(local, wachspress(element, x)).as_array()


def cmd_sample_field(args, settings) -> str:
    _, mesh = load(args, settings)
    d = BasisDescriptor.parse(args.descriptor)
    for g in d.indices:
        mesh.check_vertex(g)
    axes = _axes(mesh.dimension)
    rows = []
    if args.facet is None:
        element = mesh.element(args.element)
        components = 1 if d.k in (0, mesh.dimension) else mesh.dimension
        for x in sample_interior(element, args.count, settings['seed']):
            value = _field_value(mesh, args.element, d, x)
            row = {a: float(c) for a, c in zip(axes, x)}
            row.update({f"v{c}": float(v) for c, v in enumerate(value)})
            rows.append(row)
        columns = [*axes, *[f"v{c}" for c in range(components)]]
    else:
        facet = mesh.facet(args.facet)
        kind = trace_kind(mesh.dimension, d.k, d.rot)
        for x in sample_facet(facet, args.count, settings['seed']):
            for element_id in facet.element_ids:
                trace = facet_trace(_field_value(mesh, element_id, d, x), facet, kind)
                row = {'element_id': element_id, 'trace': kind}
                row.update({a: float(c) for a, c in zip(axes, x)})
                row.update({f"t{c}": float(t) for c, t in enumerate(trace)})
                rows.append(row)
        width = mesh.dimension - 1 if kind == "tangential" else 1
        columns = ['element_id', *axes, 'trace', *[f"t{c}" for c in range(width)]]
    if args.format == 'json':
        return to_json(rows)
    return to_csv(rows, columns)


def cmd_gen_corpus(args, settings) -> str:
    paths = generate_corpus(args.out_dir)
    return to_json({'files': [str(p) for p in paths]})


def cmd_run_suite(args, settings) -> str:
    document, mesh = load(args, settings)
    report = run_checks(mesh, args.suite, SuiteSettings.from_dict(settings), document.digest)
    text = format_report(report, args.format or 'json')
    if not report.passed:
        raise CommandFailed(text)
    return text


COMMANDS = {
    'validate': cmd_validate,
    'coords': cmd_coords,
    'count': cmd_count,
    'verify-identities': cmd_verify_identities,
    'verify-repro': cmd_verify_repro,
    'verify-conformity': cmd_verify_conformity,
    'sample-field': cmd_sample_field,
    'gen-corpus': cmd_gen_corpus,
    'run-suite': cmd_run_suite,
}


def diagnostic(error: BaseException) -> str:
    """One machine-parsable line: error: kind=<kind> key=value ... message="<text>"."""
    if isinstance(error, OSError):
        fields = {'kind': 'io'}
        if error.filename:
            fields['path'] = error.filename
        message = error.strerror or str(error)
    else:
        fields = {'kind': getattr(error, 'kind', 'internal')}
        if isinstance(error, MeshParseError):
            if error.field:
                fields['field'] = error.field
            if error.line is not None:
                fields['line'] = error.line
        if isinstance(error, PolytopeValidationError):
            fields['element'] = error.element_id
            if error.vertex_id is not None:
                fields['vertex'] = error.vertex_id
        message = str(error)
    parts = [f"{key}={value}" for key, value in fields.items()]
    escaped = message.replace('"', "'").replace("\n", " ")
    return f"error: {' '.join(parts)} message=\"{escaped}\""


def exit_code(error: BaseException) -> int:
    """Exit status for an error raised while running a subcommand."""
    if isinstance(error, OSError):
        return EXIT_IO
    if isinstance(error, VALIDATION_ERRORS):
        return EXIT_VALIDATION
    return EXIT_PARSE


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point."""
    args = build_parser().parse_args(argv)
    set_verbosity(args.verbose, args.quiet)
    settings = effective_settings(args)

    try:
        text = COMMANDS[args.command](args, settings)
    except CommandFailed as failed:
        logger.error(f"{args.command}: checks failed")
        try:
            emit(str(failed), args.out)
        except OSError as e:
            sys.stderr.write(diagnostic(e) + "\n")
            return EXIT_IO
        return EXIT_FAILED
    except (GbcFormsError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        sys.stderr.write(diagnostic(e) + "\n")
        return exit_code(e)
    except Exception as e:
        logger.exception(f"{args.command} crashed")
        sys.stderr.write(diagnostic(e) + "\n")
        return EXIT_PARSE

    try:
        emit(text, args.out)
    except OSError as e:
        sys.stderr.write(diagnostic(e) + "\n")
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
