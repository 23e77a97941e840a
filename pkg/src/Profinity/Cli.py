# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

"""
Command line front end. Descriptors are given as DSL text, as canonical JSON
or as the path of a file holding either.

Exit codes: 0 success (isomorphic, embeds, valid, suites pass), 1 a negative
answer (not isomorphic, not supported, invalid, failed suite), 2 an error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from pydantic import ValidationError

from Profinity.Calculus import Duality, Torsion
from Profinity.Classifier.Decomposition import decompose_infinite_product
from Profinity.Classifier.Embedding import Embeds, decide_embedding
from Profinity.Classifier.Isomorphism import (abstractly_isomorphic,
                                              topologically_isomorphic)
from Profinity.Constructor.Construction import construct
from Profinity.Constructor.Materialization import materialize
from Profinity.Constructor.Serialization import (tree_from_json,
                                                 tree_to_json, tree_to_text)
from Profinity.Core import Configuration, Schema
from Profinity.Core.Descriptors import validate
from Profinity.Core.Errors import DslError, ProfinityError
from Profinity.Core.Ordinals import OrdinalCNF
from Profinity.Dsl import Parser, Printer
from Profinity.Dsl.Lowering import lower, lower_sequence
from Profinity.Logging import DataLogger
from Profinity.Verification import Suites

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


class UsageError(ProfinityError):
    pass


def _source(argument: str) -> str:
    """The argument itself, or the contents of the file it names."""
    path = Path(argument)
    try:
        if path.is_file():
            return path.read_text(encoding='utf-8')
    except UnicodeDecodeError as error:
        raise UsageError(f'{argument} is not UTF-8 text: byte '
                         f'{error.start} cannot be decoded.')
    except OSError:
        pass

    return argument


def _json(text: str, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as error:
        raise UsageError(f'Invalid {what} JSON at line {error.lineno}, '
                         f'column {error.colno}: {error.msg}')


def _with_source(error: DslError, text: str):
    error.source = text

    return error


def read_descriptor(argument: str):
    text = _source(argument)
    if text.lstrip().startswith('{'):
        return Schema.descriptor_from_json(_json(text, 'descriptor'))

    try:
        return lower(Parser.parse(text))
    except DslError as error:
        raise _with_source(error, text)


def read_sequence(argument: str):
    """
    A torsion sequence, not yet validated, and the prime of a descriptor
    argument.
    """
    text = _source(argument)
    if text.lstrip().startswith('{'):
        data = _json(text, 'sequence')
        if isinstance(data, dict) and 'torsion_seq' in data:
            return (Schema.sequence_from_json(data['torsion_seq']),
                    data.get('prime'))
        return Schema.sequence_from_json(data), None

    try:
        return lower_sequence(Parser.parse(text))
    except DslError as error:
        raise _with_source(error, text)


def _emit(args, text, data):
    if args.format == 'json':
        print(json.dumps(data, indent=2))
    else:
        print(text)


def cmd_normalize(args):
    d = read_descriptor(args.descriptor)
    _emit(args, Printer.descriptor_text(d), Schema.descriptor_to_json(d))

    return EXIT_OK


def cmd_validate(args):
    report = validate(read_sequence(args.sequence)[0])
    data = {'valid': report.valid,
            'violations': [str(v) for v in report.violations]}
    _emit(args, report.summary(), data)

    return EXIT_OK if report.valid else EXIT_NEGATIVE


def cmd_dual(args):
    e = Duality.dual(read_descriptor(args.descriptor))
    _emit(args, Printer.discrete_text(e), Schema.discrete_to_json(e))

    return EXIT_OK


def cmd_type(args):
    kind = Torsion.torsion_type(read_descriptor(args.descriptor))
    _emit(args, str(kind), {'torsion_type': str(kind)})

    return EXIT_OK


def cmd_series(args):
    d = read_descriptor(args.descriptor)
    alpha = OrdinalCNF.parse(args.at)
    layer, remainder = Torsion.torsion_series_data(d, alpha)

    text = (f'layer {alpha}: {Printer.layer_text(layer)}\n'
            f'quotient: {Printer.descriptor_text(remainder)}')
    data = {'at': str(alpha), 'layer': Schema.layer_to_json(layer),
            'quotient': Schema.descriptor_to_json(remainder)}
    _emit(args, text, data)

    return EXIT_OK


def cmd_iso(args):
    a = read_descriptor(args.left)
    b = read_descriptor(args.right)

    decide = abstractly_isomorphic if args.abstract \
        else topologically_isomorphic
    certificate = decide(a, b)
    _emit(args, str(certificate), certificate.to_json())

    return EXIT_OK if certificate.verdict else EXIT_NEGATIVE


def cmd_embed(args):
    a = read_descriptor(args.source)
    b = read_descriptor(args.target)

    verdict = decide_embedding(a, b)
    if not isinstance(verdict, Embeds):
        _emit(args, str(verdict), {'embeds': None, 'reason': verdict.reason})
        return EXIT_NEGATIVE

    assignments = [str(x) for x in verdict.witness.take(args.take)]
    text = '\n'.join([str(verdict)] + [f'  {x}' for x in assignments])
    _emit(args, text, {'embeds': True, 'assignments': assignments})

    return EXIT_OK


def cmd_construct(args):
    seq, prime = read_sequence(args.sequence)
    tree = construct(seq, prime=prime)

    if args.emit_tree or args.format == 'json':
        print(json.dumps(tree_to_json(tree), indent=2))
    else:
        print(tree_to_text(tree))

    return EXIT_OK


def cmd_materialize(args):
    tree = tree_from_json(_json(_source(args.tree), 'tree'))
    built = materialize(tree, args.level, args.cap)

    group = built.group
    data = {'prime': group.prime, 'exponents': list(group.exponents),
            'log_order': group.log_order, 'generators': len(built.labels)}
    text = (f'{group} of order {group.prime}^{group.log_order} from '
            f'{len(built.labels)} generators')
    _emit(args, text, data)

    return EXIT_OK


def cmd_decompose(args):
    d = read_descriptor(args.descriptor)
    variant = 'cyclic tops' if args.cyclic_tops else 'standard'
    family = decompose_infinite_product(d, variant)

    factors = family.take(args.take)
    residual = family.residual(args.take)

    lines = [f'K_{n}: {Printer.descriptor_text(k)}'
             for n, k in enumerate(factors)]
    lines.append(f'rest: {Printer.descriptor_text(residual)}')
    data = {'variant': variant,
            'factors': [Schema.descriptor_to_json(k) for k in factors],
            'residual': Schema.descriptor_to_json(residual)}
    _emit(args, '\n'.join(lines), data)

    return EXIT_OK


def cmd_verify(args):
    results = Suites.run_suites(args.suite)

    rows = [r.row() for r in results]
    for r in results:
        rows.extend(f'  case {i}: {message}'
                    for i, message in r.errors.items())
    data = [{'suite': r.name, 'passed': r.passed, 'cases': r.cases,
             'failed': r.failed, 'errors': r.errors,
             'seconds': round(r.seconds, 3)} for r in results]
    _emit(args, '\n'.join(rows), data)

    if args.log_file is not None:
        DataLogger.get_logger().write_hdf5(args.log_file)

    return EXIT_OK if all(r.ok for r in results) else EXIT_NEGATIVE


def cmd_schema(args):
    schemas = Schema.json_schemas()

    if args.output is None:
        print(json.dumps(schemas, indent=2))
        return EXIT_OK

    directory = Path(args.output)
    directory.mkdir(parents=True, exist_ok=True)
    for name, schema in schemas.items():
        (directory / f'{name}.schema.json').write_text(
            json.dumps(schema, indent=2) + '\n')

    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='profinity',
        description='Symbolic calculator for countably based abelian pro-p '
                    'groups.')
    parser.add_argument('--config', help='YAML configuration file')
    parser.add_argument('--format', choices=('text', 'json'), default='text')
    parser.add_argument('-v', '--verbose', action='store_true')

    commands = parser.add_subparsers(dest='command', required=True)

    def command(name, function, help_text, *operands):
        sub = commands.add_parser(name, help=help_text)
        for operand in operands:
            sub.add_argument(operand)
        sub.set_defaults(function=function)
        return sub

    command('normalize', cmd_normalize, 'print the canonical form',
            'descriptor')
    command('validate', cmd_validate, 'check a torsion sequence', 'sequence')
    command('dual', cmd_dual, 'Pontryagin dual', 'descriptor')
    command('type', cmd_type, 'torsion type', 'descriptor')

    sub = command('series', cmd_series, 'a layer of the torsion series',
                  'descriptor')
    sub.add_argument('--at', required=True, help='ordinal, e.g. w*2+1')

    sub = command('iso', cmd_iso, 'decide isomorphism', 'left', 'right')
    mode = sub.add_mutually_exclusive_group()
    mode.add_argument('--topological', action='store_true')
    mode.add_argument('--abstract', action='store_true')

    sub = command('embed', cmd_embed, 'embed into the closure of torsion',
                  'source', 'target')
    sub.add_argument('--take', type=int, default=8,
                     help='symbolic assignments to show')

    sub = command('construct', cmd_construct, 'presentation tree',
                  'sequence')
    sub.add_argument('--emit-tree', action='store_true',
                     help='print the tree as JSON')

    sub = command('materialize', cmd_materialize,
                  'finite quotient of a tree', 'tree')
    sub.add_argument('--level', type=int)
    sub.add_argument('--cap', type=int)

    sub = command('decompose', cmd_decompose, 'infinite product splitting',
                  'descriptor')
    sub.add_argument('--take', type=int, default=3)
    sub.add_argument('--cyclic-tops', action='store_true')

    sub = command('verify', cmd_verify, 'run the oracle suites')
    sub.add_argument('--suite', action='append', default=None,
                     help=f'one of {", ".join(Suites.SUITES)} or all')
    sub.add_argument('--log-file', help='write suite signals to HDF5')

    sub = command('schema', cmd_schema, 'JSON schemas of the outputs')
    sub.add_argument('--output', help='directory for one file per schema')

    return parser


def _report(error, source=None):
    print(f'error: {error}', file=sys.stderr)
    if source is not None:
        print(error.caret(source), file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_OK if exit_.code in (0, None) else EXIT_ERROR

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s')

    if args.command == 'verify' and args.suite is None:
        args.suite = ['all']
    elif args.command == 'verify' and 'all' in args.suite:
        args.suite = 'all'

    previous = Configuration.get_config()
    try:
        if args.config is not None:
            Configuration.set_config(Configuration.load_config(args.config))

        logger.debug('running %s', args.command)
        return args.function(args)

    except DslError as error:
        _report(error, getattr(error, 'source', None))
    except ProfinityError as error:
        _report(error)
    except ValidationError as error:
        _report(f'invalid configuration: {error.error_count()} errors, '
                f'first: {error.errors()[0]["msg"]}')
    finally:
        Configuration.set_config(previous)

    return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
