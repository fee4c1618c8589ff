"""
ldaapp/cli.py - The `lda` command line interface

Commands:
- basis:   Janet basis (or reduced Groebner basis) of a system file
- masters: master integrals under the file's boundary conditions
- reduce:  express one integral through the master integrals
- scheme:  finite difference scheme from a PDE file
- verify:  cross-check the Janet basis against the linear-algebra oracle
- serve:   run the JSON web API

Exit codes: 0 success, 1 usage or input error, 2 mathematical failure.
"""

import logging
import sys

import click

from . import create_app
from .config import get_config
from .errors import LdaError
from .janet import janet_basis, reduced_groebner_basis
from .oracle import verify_basis
from .parser import parse_term
from .reduction import reduce_to_masters, residue_class_basis
from .render import FORMATS, RenderContext, render
from .scheme import derive_scheme
from .system import load_pde, load_system

logger = logging.getLogger(__name__)

system_file = click.argument('path', type=click.Path(exists=True, dir_okay=False))


def output_format(f):
    f = click.option('--json', 'as_json', is_flag=True, help='Shorthand for --format json.')(f)
    return click.option('--format', 'fmt', type=click.Choice(FORMATS), default='text',
                        show_default=True, help='Output format.')(f)


def chosen_format(fmt, as_json):
    return 'json' if as_json else fmt


class ClickHandler(logging.Handler):
    """Writes records through click.echo so they follow the current stderr."""

    def emit(self, record):
        try:
            click.echo(self.format(record), err=True)
        except Exception:
            self.handleError(record)


def configure_logging(level):
    package = logging.getLogger('ldaapp')
    if not any(isinstance(h, ClickHandler) for h in package.handlers):
        handler = ClickHandler()
        handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
        package.addHandler(handler)
    package.setLevel(level)


class LdaGroup(click.Group):
    """Maps usage errors to exit code 1 and LdaError to its own exit code."""

    def main(self, args=None, prog_name=None, **extra):
        extra['standalone_mode'] = False
        try:
            rv = super().main(args, prog_name, **extra)
        except click.ClickException as e:
            e.show()
            sys.exit(1)
        except click.Abort:
            click.echo('Aborted!', err=True)
            sys.exit(1)
        except LdaError as e:
            logger.debug('%s', type(e).__name__, exc_info=True)
            click.echo(f"error: {e}", err=True)
            sys.exit(e.exit_code)
        sys.exit(rv if isinstance(rv, int) else 0)


@click.group(cls=LdaGroup)
@click.option('-v', '--verbose', is_flag=True, help='Log progress to standard error.')
@click.pass_context
def cli(ctx, verbose):
    """Linear difference algebra: Janet bases, schemes and master integrals."""
    config = get_config()
    configure_logging(logging.DEBUG if verbose else config.LOG_LEVEL)
    ctx.obj = config


@cli.command()
@system_file
@click.option('--reduced', is_flag=True, help='Print the reduced Groebner basis.')
@output_format
@click.pass_obj
def basis(config, path, reduced, fmt, as_json):
    """Compute the Janet basis of the system in PATH."""
    spec = load_system(path)
    result = janet_basis(spec.equations, spec.ranking, max_iterations=config.MAX_ITERATIONS)
    if reduced:
        result = reduced_groebner_basis(result)
    click.echo(render(result, RenderContext.of(spec), chosen_format(fmt, as_json)))


@cli.command()
@system_file
@output_format
@click.pass_obj
def masters(config, path, fmt, as_json):
    """List the master integrals of the system in PATH."""
    spec = load_system(path)
    result = janet_basis(spec.equations, spec.ranking, max_iterations=config.MAX_ITERATIONS)
    click.echo(render(residue_class_basis(result, spec.boundary), RenderContext.of(spec),
                      chosen_format(fmt, as_json)))


@cli.command()
@system_file
@click.option('--target', required=True, help='Integral to reduce, e.g. "f(k+3,n+2)".')
@click.option('--factor', is_flag=True, help='Factor the coefficients.')
@output_format
@click.pass_obj
def reduce(config, path, target, factor, fmt, as_json):
    """Reduce TARGET to master integrals of the system in PATH."""
    spec = load_system(path)
    term = parse_term(target, spec.table, spec.functions)
    result = janet_basis(spec.equations, spec.ranking, max_iterations=config.MAX_ITERATIONS)
    report = reduce_to_masters(term, result, spec.boundary, factor=factor)
    click.echo(render(report, RenderContext.of(spec), chosen_format(fmt, as_json)))


@cli.command()
@system_file
@output_format
@click.option('--system', 'show_system', is_flag=True,
              help='Also print the discretized system.')
@click.pass_obj
def scheme(config, path, fmt, as_json, show_system):
    """Derive a finite difference scheme from the PDE file PATH."""
    spec = load_pde(path)
    result = derive_scheme(spec.pde, spec.grid, spec.contour, spec.plan,
                           max_iterations=config.MAX_ITERATIONS)
    ctx = RenderContext(spec.pde.table, result.functions, result.ranking)
    fmt = chosen_format(fmt, as_json)
    if show_system:
        click.echo(render(list(result.system), ctx, fmt))
    if not result.scheme:
        logger.warning('elimination left no equation in %s alone', result.functions[-1])
    click.echo(render(list(result.scheme), ctx, fmt))


@cli.command()
@system_file
@click.option('--degree', type=click.IntRange(min=0), required=True,
              help='Degree bound D of the oracle.')
@click.pass_context
def verify(ctx, path, degree):
    """Cross-check the Janet basis of PATH against the oracle."""
    spec = load_system(path)
    result = janet_basis(spec.equations, spec.ranking, max_iterations=ctx.obj.MAX_ITERATIONS)
    report = verify_basis(list(spec.equations), result, degree)
    rctx = RenderContext.of(spec)
    for name, failures in report.checks:
        status = 'ok' if not failures else 'FAILED ' + ', '.join(_describe(f, rctx) for f in failures)
        click.echo(f"{name}: {status}")
    if not report.ok:
        ctx.exit(2)


def _describe(failure, ctx):
    if isinstance(failure, tuple):
        return render(failure, ctx)
    return str(failure)


@cli.command()
@click.option('--host', default='127.0.0.1', show_default=True)
@click.option('--port', default=5000, show_default=True, type=int)
@click.option('--env', 'config_name', default='development', show_default=True,
              type=click.Choice(['development', 'testing', 'production', 'default']))
def serve(host, port, config_name):
    """Run the JSON web API."""
    app = create_app(config_name)
    app.run(host=host, port=port, debug=app.config['DEBUG'])


def main():
    cli()


if __name__ == '__main__':
    main()
