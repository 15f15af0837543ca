"""
Liptrop Command Line

Load groups, metrics and functions, run the monoid operations and drive the
seeded verification suites.

Usage:
    liptrop group validate data/groups/z4.json
    liptrop group autos data/groups/klein4.json
    liptrop group iso data/groups/z4.json data/groups/klein4.json
    liptrop fn conv 'cyclic(2)' f.json g.json
    liptrop fn units 'cyclic(3)' --cone lip1plus
    liptrop verify all data/groups/z4.json --seed 7 --format json

Exit codes:
    group / fn: 0 valid or true, 1 invalid, false or a module error,
                2 unreadable or malformed input
    verify:     0 every check passed, 1 some check failed, 2 any error
"""

import argparse
import json
import logging
import sys
from typing import Any, Optional

from pipelines.utils.context_loader import ContextLoader
from pipelines.utils.property_suites import VALID_SUITES, PropertySuites
from pipelines.utils.report_writer import render_checks_text, render_json, write_report
from src.liptrop.banach_stone import decide_monoid_iso
from src.liptrop.config import VALID_FORMATS, VALID_LOG_LEVELS, LiptropConfig, RunConfig
from src.liptrop.errors import ConfigError, FormatError, LiptropError
from src.liptrop.groups import enumerate_automorphisms
from src.liptrop.lip_monoid import (
    ConeTag,
    LipContext,
    LipFn,
    classify,
    inf_conv,
    lip_regularize,
    tau,
    units_of,
)
from src.liptrop.reporting import CheckReport, CheckStatus
from src.liptrop.rn_star import RnVector, membership
from src.liptrop.schemas import format_rational, to_jsonable

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_ERROR = 2

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='Path to liptrop configuration YAML file')
    common.add_argument('--format', choices=VALID_FORMATS, help='Report format (default: text)')
    common.add_argument('--output', help="Report file; '-' or omitted for stdout")
    common.add_argument('--log-level', type=str.upper, choices=VALID_LOG_LEVELS, help='Log level on stderr')
    common.add_argument('--order-cap', type=int, help='Largest group order to accept (env LIPTROP_ORDER_CAP)')
    return common


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the group, fn and verify command families."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog='liptrop',
        description='Inf-convolution monoids of 1-Lipschitz functions on finite invariant metric groups'
    )
    commands = parser.add_subparsers(dest='command', required=True)

    group = commands.add_parser('group', help='Validate groups and decide isomorphisms')
    group_verbs = group.add_subparsers(dest='verb', required=True)
    validate = group_verbs.add_parser('validate', parents=[common], help='Check the group axioms')
    validate.add_argument('paths', nargs='+', help='Group JSON files or family strings')
    autos = group_verbs.add_parser('autos', parents=[common], help='List Aut(G)')
    autos.add_argument('path', help='Group JSON file or family string')
    iso = group_verbs.add_parser('iso', parents=[common], help='Decide G ~ H (and G* ~ H*)')
    iso.add_argument('source', help='First group')
    iso.add_argument('target', help='Second group')

    fn = commands.add_parser('fn', help='Operations on functions over a context')
    fn_verbs = fn.add_subparsers(dest='verb', required=True)
    conv = fn_verbs.add_parser('conv', parents=[common], help='Inf-convolution f + g')
    conv.add_argument('context', help='Group, metric or weights file, or family string')
    conv.add_argument('f', help='Function JSON file')
    conv.add_argument('g', help='Function JSON file')
    units = fn_verbs.add_parser('units', parents=[common], help='Unit group of a cone')
    units.add_argument('context', help='Group, metric or weights file, or family string')
    units.add_argument('--cone', default='lip1plus', help='lip10, lip1plus or lip1 (default: lip1plus)')
    for verb, summary in [
        ('tau', 'Decompose f into (f - min f, min f)'),
        ('classify', 'Cones containing f'),
        ('regularize', 'Largest 1-Lipschitz minorant delta_e + f'),
    ]:
        sub = fn_verbs.add_parser(verb, parents=[common], help=summary)
        sub.add_argument('context', help='Group, metric or weights file, or family string')
        sub.add_argument('f', help='Function JSON file')
    for sub in fn_verbs.choices.values():
        sub.add_argument('--weights', help='Weights file; replaces the context metric by the word metric')

    verify = commands.add_parser('verify', parents=[common], help='Run seeded property suites')
    verify.add_argument('suite', choices=VALID_SUITES, help='Suite to run')
    verify.add_argument('contexts', nargs='+', help='One or more contexts')
    verify.add_argument('--seed', type=int, help='Run seed (env LIPTROP_SEED)')
    verify.add_argument('--samples', type=int, help='Samples per check (default: 1000)')
    verify.add_argument('--workers', type=int, help='Worker threads for the suite fan-out')
    verify.add_argument('--weights', help='Weights file applied to every context')

    return parser


def load_run_config(args: argparse.Namespace) -> RunConfig:
    """Defaults < YAML < environment < flags."""
    config = LiptropConfig(args.config)
    return config.to_run_config(
        format=args.format,
        output=args.output,
        log_level=args.log_level,
        order_cap=args.order_cap,
        seed=getattr(args, 'seed', None),
        samples=getattr(args, 'samples', None),
        workers=getattr(args, 'workers', None),
    )


def _emit(run_config: RunConfig, document: Any, text: str) -> None:
    rendered = render_json(document) if run_config.format == 'json' else text
    write_report(rendered, run_config.output)


def _values_text(values: Any) -> str:
    return ' '.join(format_rational(v) for v in values)


def _membership_tag(f: LipFn) -> Optional[str]:
    """Membership in M^n / M^n_+; only meaningful for the discrete metric."""
    if not f.context.metric.is_discrete:
        return None
    return membership(RnVector(f.values)).value


def cmd_group(args: argparse.Namespace, run_config: RunConfig) -> int:
    loader = ContextLoader(order_cap=run_config.order_cap)

    if args.verb == 'validate':
        results = []
        for path in args.paths:
            try:
                group = loader.load_group(path)
                results.append({'path': path, 'valid': True, 'name': group.name, 'order': group.order,
                                'abelian': group.is_abelian()})
            except FormatError:
                raise
            except LiptropError as e:
                logging.warning(f"{path}: {e}")
                results.append({'path': path, 'valid': False, 'error': type(e).__name__, 'detail': str(e),
                                'witness': to_jsonable(_witness_of(e))})
        text = '\n'.join(
            f"{r['path']}: valid ({r['name']}, order {r['order']})" if r['valid']
            else f"{r['path']}: invalid {r['error']}: {r['detail']}"
            for r in results
        ) + '\n'
        _emit(run_config, {'results': results}, text)
        return EXIT_OK if all(r['valid'] for r in results) else EXIT_FALSE

    if args.verb == 'autos':
        group = loader.load_group(args.path)
        autos = enumerate_automorphisms(group, run_config.order_cap)
        document = {'group': group.name, 'count': len(autos), 'automorphisms': [list(a.mapping) for a in autos]}
        text = f"|Aut({group.name})| = {len(autos)}\n" + ''.join(f"  {list(a.mapping)}\n" for a in autos)
        _emit(run_config, document, text)
        return EXIT_OK

    source = loader.load_group(args.source)
    target = loader.load_group(args.target)
    decision = decide_monoid_iso(source, target, run_config.order_cap)
    document = {'source': source.name, 'target': target.name, **decision.to_dict()}
    text = f"{source.name} ~ {target.name}: {str(decision.verdict).lower()}"
    if decision.witness is not None:
        text += f" via {list(decision.witness.mapping)}"
    elif decision.certificate is not None:
        text += f" ({decision.certificate.value})"
    _emit(run_config, document, text + '\n')
    return EXIT_OK if decision.verdict else EXIT_FALSE


def _witness_of(error: Exception) -> Any:
    for attribute in ('triple', 'witness', 'element', 'pair', 'unreachable'):
        if hasattr(error, attribute):
            return getattr(error, attribute)
    return None


def cmd_fn(args: argparse.Namespace, run_config: RunConfig) -> int:
    loader = ContextLoader(order_cap=run_config.order_cap)
    context: LipContext = loader.load_context(args.context, args.weights)

    if args.verb == 'units':
        cone = ConeTag.parse(args.cone)
        described = units_of(context, cone)
        document = {
            'context': context.name,
            'cone': cone.value,
            'parametric': described.parametric,
            'count': described.cardinality,
            'members': [to_jsonable(f) for f in described.members],
        }
        if described.parametric:
            document['law_holds'] = all(w.holds for w in described.law_witness)
            text = f"units of {cone.value}: r + delta_x, r rational, x in {context.group.name}\n"
        else:
            text = f"units of {cone.value}: {described.cardinality}\n"
        text += ''.join(f"  {_values_text(f.values)}\n" for f in described.members)
        _emit(run_config, document, text)
        return EXIT_OK

    f = loader.load_function(args.f, context)

    if args.verb == 'conv':
        g = loader.load_function(args.g, context)
        result = inf_conv(f, g)
        document = {'context': context.name, 'values': to_jsonable(result), 'membership': _membership_tag(result)}
        _emit(run_config, document, _values_text(result.values) + '\n')
        return EXIT_OK

    if args.verb == 'tau':
        pair = tau(f)
        document = {'context': context.name, 'base': to_jsonable(pair.base), 'offset': to_jsonable(pair.offset)}
        _emit(run_config, document, f"{_values_text(pair.base.values)} ; {format_rational(pair.offset)}\n")
        return EXIT_OK

    if args.verb == 'classify':
        tags = classify(f)
        names = [tag.value for tag in ConeTag if tag in tags]
        document = {'context': context.name, 'tags': names, 'membership': _membership_tag(f)}
        _emit(run_config, document, f"tags: {' '.join(names)}\n")
        return EXIT_OK

    result = lip_regularize(f)
    document = {'context': context.name, 'values': to_jsonable(result), 'membership': _membership_tag(result)}
    _emit(run_config, document, _values_text(result.values) + '\n')
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, run_config: RunConfig) -> int:
    loader = ContextLoader(order_cap=run_config.order_cap)
    contexts = [loader.load_context(reference, args.weights) for reference in args.contexts]
    suites = PropertySuites(run_config)
    document = suites.run(args.suite, contexts)

    reports = [
        CheckReport(c['check'], CheckStatus(c['status']), c['samples'], c['witness'], c.get('detail'))
        for c in document['checks']
    ]
    text = render_checks_text(reports) + f"{document['status'].upper()}  {args.suite} (seed {document['seed']})\n"
    _emit(run_config, document, text)
    return EXIT_OK if document['status'] == 'pass' else EXIT_FALSE


COMMANDS = {
    'group': cmd_group,
    'fn': cmd_fn,
    'verify': cmd_verify,
}


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point; returns the exit code."""
    logging.basicConfig(stream=sys.stderr, format=LOG_FORMAT)
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        run_config = load_run_config(args)
    except (ConfigError, OSError) as e:
        logging.error(f"Configuration error: {e}")
        return EXIT_ERROR
    logging.getLogger().setLevel(getattr(logging, run_config.log_level.upper()))

    command = COMMANDS[args.command]
    try:
        return command(args, run_config)
    except (FormatError, ConfigError, json.JSONDecodeError) as e:
        logging.error(f"Invalid input: {e}")
        return EXIT_ERROR
    except OSError as e:
        logging.error(f"I/O error: {e}")
        return EXIT_ERROR
    except LiptropError as e:
        logging.error(f"{type(e).__name__}: {e}")
        return EXIT_ERROR if args.command == 'verify' else EXIT_FALSE


if __name__ == '__main__':
    sys.exit(main())
