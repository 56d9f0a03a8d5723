"""
Command-line interface

    weyl validate      --sig S
    weyl eval          --sig S EXPR [EXPR ...]
    weyl bracket       --sig S A B
    weyl cocycle       --sig S KIND A B [C]
    weyl pfunc         --sig S EXPR
    weyl normalize     --sig S --cocycle SPEC [--tau VEC] [--targets FILE] [EXPR ...]
    weyl probe-trivial --sig S --cocycle SPEC [--alpha-range a:b] [--k-range a:b] [--mu-max m]
    weyl selftest      [--sig S] [--samples N] [--seed S] [--families F,...]

Results go to stdout; logging and error reports go to stderr. Expressions that
start with "-" must follow a "--" separator.
"""

import argparse
import json
import logging
import sys

from config import Config
from src.algebra import Element, bracket, mul
from src.cocycles import (FunctionTable, Phi0, PhiGamma, cocycle_residuals, cyclic_residual,
                          lift_cocycle, p_functional)
from src.errors import UsageError, WeylError
from src.normalization import NormalizationSession, normalized_check
from src.parser import format_element, format_monomial, parse_expression
from src.probe import Truncation, triviality_probe
from src.selftest import FAMILIES, SelfTestRunner
from src.serialization import (cocycle_from_spec, element_to_json, function_table_to_json, load_signature,
                               parse_range, parse_vector, probe_report, read_json, scalar_to_json)

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting"""

    def error(self, message):
        raise UsageError(message)


def _emit(args, text, payload):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _signature(args):
    if not args.sig:
        raise UsageError("--sig <file> is required for this command")
    return load_signature(args.sig)


def _expressions(sig, texts):
    return [parse_expression(sig, text) for text in texts]


def _cocycle_kind(sig, args):
    if args.kind == 'phi0':
        return Phi0(sig)
    if args.kind == 'phigamma':
        return PhiGamma(sig, parse_vector(args.gamma, '--gamma'))
    if args.kind == 'lifted':
        base = Phi0(sig) if args.base == 'phi0' else PhiGamma(sig, parse_vector(args.gamma, '--gamma'))
        return lift_cocycle(sig, base)
    if not args.table:
        raise UsageError(f"cocycle {args.kind} needs --table <file>")
    return cocycle_from_spec(sig, f"{args.kind}:{args.table}")


# -- subcommands ------------------------------------------------------------

def cmd_validate(args):
    sig = _signature(args)
    data = sig.to_dict()
    text = '\n'.join([
        f"✅ valid signature",
        f"ell:        {list(sig.ell)}",
        f"generators: {data['generators']}",
        f"tau:        {data['tau']}",
    ])
    _emit(args, text, data)
    return 0


def cmd_eval(args):
    sig = _signature(args)
    value = Element.scalar(sig, 1)
    for e in _expressions(sig, args.expressions):
        value = mul(sig, value, e)
    text = format_element(sig, value)
    _emit(args, text, dict(text=text, **element_to_json(value)))
    return 0


def cmd_bracket(args):
    sig = _signature(args)
    a, b = _expressions(sig, [args.a, args.b])
    value = bracket(sig, a, b)
    text = format_element(sig, value)
    _emit(args, text, dict(text=text, **element_to_json(value)))
    return 0


def cmd_cocycle(args):
    sig = _signature(args)
    phi = _cocycle_kind(sig, args)
    if args.c is None:
        a, b = _expressions(sig, [args.a, args.b])
        value = phi(a, b)
        _emit(args, str(value), {'cocycle': phi.describe(), 'value': scalar_to_json(value)})
        return 0

    a, b, c = _expressions(sig, [args.a, args.b, args.c])
    skew, jacobi = cocycle_residuals(sig, phi, a, b, c)
    payload = {'cocycle': phi.describe(), 'skew': scalar_to_json(skew), 'jacobi': scalar_to_json(jacobi)}
    lines = [f"skew:   {skew}", f"jacobi: {jacobi}"]
    if args.kind in ('phi0', 'phigamma'):
        cyclic = cyclic_residual(sig, phi, a, b, c)
        payload['cyclic'] = scalar_to_json(cyclic)
        lines.append(f"cyclic: {cyclic}")
    _emit(args, '\n'.join(lines), payload)
    return 0


def cmd_pfunc(args):
    sig = _signature(args)
    (e,) = _expressions(sig, [args.expression])
    value = p_functional(sig, e)
    _emit(args, str(value), {'value': scalar_to_json(value)})
    return 0


def _targets(args):
    texts = list(args.expressions)
    if args.targets:
        data = read_json(args.targets)
        if not isinstance(data, list) or not all(isinstance(t, str) for t in data):
            raise UsageError(f"{args.targets}: expected a JSON list of expressions")
        texts.extend(data)
    if not texts:
        raise UsageError("normalize needs target expressions or --targets <file>")
    return texts


def cmd_normalize(args):
    sig = _signature(args)
    psi = cocycle_from_spec(sig, args.cocycle)
    tau = parse_vector(args.tau, '--tau') if args.tau else None
    session = NormalizationSession(sig, psi, tau=tau, max_depth=args.max_depth)

    rows = []
    for text in _targets(args):
        e = parse_expression(sig, text)
        value = sum((c * session.normalize(m) for m, c in e.items()), 0)
        rows.append((format_element(sig, e), value))

    lines = [f"f({name}) = {value}" for name, value in rows]
    payload = {
        'cocycle': psi.describe(),
        'values': [{'target': name, 'value': scalar_to_json(value)} for name, value in rows],
        'table': function_table_to_json(FunctionTable(session.table())),
    }

    if args.check:
        samples = sorted(session.memo)
        violations = normalized_check(sig, session.normalized_cocycle(), samples)
        payload['violations'] = [
            {'generator': v.generator, 'monomial': format_monomial(sig, v.monomial), 'value': scalar_to_json(v.value)}
            for v in violations
        ]
        if violations:
            lines.append(f"❌ {len(violations)} normalization violations")
            lines.extend(f"   phi({v.generator}, {format_monomial(sig, v.monomial)}) = {v.value}" for v in violations)
        else:
            lines.append(f"✅ normalized on {len(samples)} monomials")

    logger.debug("normalize: %d recursive evaluations", session.calls)
    _emit(args, '\n'.join(lines), payload)
    return 0


def cmd_probe(args):
    sig = _signature(args)
    psi = cocycle_from_spec(sig, args.cocycle)
    truncation = Truncation(alpha_range=parse_range(args.alpha_range, '--alpha-range'),
                            k_range=parse_range(args.k_range, '--k-range'),
                            mu_max=args.mu_max)
    probe = triviality_probe(sig, psi, truncation, max_unknowns=args.max_unknowns)
    report = probe_report(sig, probe)

    lines = [
        f"verdict:  {report['verdict']}",
        f"rank:     {report['rank']}",
        f"unknowns: {report['unknowns']}",
        f"rows:     {report['rows']}",
    ]
    if report['witness']:
        lines.append("witness:")
        lines.extend(f"  [{w['u']}, {w['v']}]: {w['equation']}" for w in report['witness'])
    _emit(args, '\n'.join(lines), report)
    return 0


def cmd_selftest(args):
    families = None
    if args.families:
        families = [name.strip() for name in args.families.split(',') if name.strip()]
        unknown = [name for name in families if name not in FAMILIES]
        if unknown:
            raise UsageError(f"unknown families: {', '.join(unknown)} (choose from {', '.join(FAMILIES)})")
    extra = load_signature(args.sig) if args.sig else None

    runner = SelfTestRunner(samples=args.samples, seed=args.seed, families=families,
                            extra_signature=extra, verbose=not args.json)
    results = runner.run()
    if args.json:
        print(json.dumps(results, indent=2, sort_keys=True))
    return 0 if results['failures'] == 0 else 4


# -- parser -------------------------------------------------------------------

def build_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument('--sig', help='signature JSON file')
    common.add_argument('--json', action='store_true', help='print JSON instead of text')
    common.add_argument('--log-level', default=None, help='logging level (default from WEYL_LOG_LEVEL)')

    parser = ArgumentParser(prog='weyl', description='Exact computations in generalized Weyl superalgebras')
    commands = parser.add_subparsers(dest='command', parser_class=ArgumentParser)
    commands.required = True

    p = commands.add_parser('validate', parents=[common], help='validate a signature and show its tau')
    p.set_defaults(handler=cmd_validate)

    p = commands.add_parser('eval', parents=[common], help='canonical form of a product of expressions')
    p.add_argument('expressions', nargs='+')
    p.set_defaults(handler=cmd_eval)

    p = commands.add_parser('bracket', parents=[common], help='super-bracket of two expressions')
    p.add_argument('a')
    p.add_argument('b')
    p.set_defaults(handler=cmd_bracket)

    p = commands.add_parser('cocycle', parents=[common], help='evaluate a cocycle, or its residuals on a triple')
    p.add_argument('kind', choices=['phi0', 'phigamma', 'lifted', 'coboundary', 'table'])
    p.add_argument('a')
    p.add_argument('b')
    p.add_argument('c', nargs='?')
    p.add_argument('--gamma', default='0', help='group element for phigamma (default 0)')
    p.add_argument('--base', choices=['phi0', 'phigamma'], default='phi0', help='base cocycle for lifted')
    p.add_argument('--table', help='JSON file for coboundary (function table) or table (pairs)')
    p.set_defaults(handler=cmd_cocycle)

    p = commands.add_parser('pfunc', parents=[common], help='the functional P on the odd factor')
    p.add_argument('expression')
    p.set_defaults(handler=cmd_pfunc)

    p = commands.add_parser('normalize', parents=[common], help='normalizing function f of a cocycle')
    p.add_argument('expressions', nargs='*')
    p.add_argument('--cocycle', required=True, help='cocycle spec, e.g. coboundary:table.json')
    p.add_argument('--tau', help='override the signature tau')
    p.add_argument('--targets', help='JSON list of target expressions')
    p.add_argument('--max-depth', type=int, default=None, help='recursion depth bound')
    p.add_argument('--check', action='store_true', help='run normalized_check on every evaluated monomial')
    p.set_defaults(handler=cmd_normalize)

    p = commands.add_parser('probe-trivial', parents=[common], help='coboundary test on a truncation')
    p.add_argument('--cocycle', required=True, help='cocycle spec, e.g. phi0')
    p.add_argument('--alpha-range', default='0:0', help='generator coefficient range a:b')
    p.add_argument('--k-range', default='0:0', help='even variable exponent range a:b')
    p.add_argument('--mu-max', type=int, default=1, help='largest even derivation power')
    p.add_argument('--max-unknowns', type=int, default=None, help='cap on unknowns')
    p.set_defaults(handler=cmd_probe)

    p = commands.add_parser('selftest', parents=[common], help='run the verification suites')
    p.add_argument('--samples', type=int, default=None, help=f'samples per suite (default {Config.SELFTEST_SAMPLES})')
    p.add_argument('--seed', type=int, default=None, help=f'random seed (default {Config.SELFTEST_SEED})')
    p.add_argument('--families', help=f"comma-separated subset of {', '.join(FAMILIES)}")
    p.set_defaults(handler=cmd_selftest)

    return parser


def _configure_logging(level):
    level = (level or Config.LOG_LEVEL).upper()
    if not isinstance(logging.getLevelName(level), int):
        raise UsageError(f"unknown log level {level}")
    logging.basicConfig(stream=sys.stderr, level=level,
                        format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger().setLevel(level)


def run_command(argv):
    """Run one command; returns the exit code"""
    try:
        args = build_parser().parse_args(argv)
        _configure_logging(args.log_level)
        return args.handler(args)
    except WeylError as e:
        print(f"❌ {e.kind} error: {e}", file=sys.stderr)
        return e.exit_code
    except SystemExit as e:
        # --help
        return e.code or 0


def main(argv=None):
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == '__main__':
    sys.exit(main())
