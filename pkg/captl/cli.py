# -*- coding: utf-8 -*-
"""
    captl.cli
    ~~~~~~~~~

    The ``captl`` command.

    Exit codes: 0 on success, 1 for unreadable or invalid input, 2 for
    failures during synthesis or verification.

    :license: BSD, see LICENSE for more details.
"""
import csv
import logging
import os
import sys

import click

from captl.config import DEFAULT_EPSILON, DEFAULT_MAX_ITER, DEFAULT_RUNS, \
     DEFAULT_SEED
from captl.casestudies import GENERATORS
from captl.engine.query import check_query
from captl.exceptions import CaptlError
from captl.forms import GenOptionsForm, validate_form
from captl.mdp import parse_model
from captl.oracle import simulate
from captl.parser import parse_query, parse_requirement
from captl.stats import RunStats
from captl.synthesis import SYNTHESIZERS, chain_to_dot, partition_states, \
     product_to_dot


log = logging.getLogger(__name__)


class CaptlGroup(click.Group):
    """Maps errors to the exit codes of the command line."""

    def main(self, args=None, prog_name=None, **extra):
        extra.pop('standalone_mode', None)
        try:
            rv = super(CaptlGroup, self).main(args, prog_name,
                                              standalone_mode=False, **extra)
        except click.ClickException as e:
            e.show()
            sys.exit(1)
        except click.Abort:
            click.echo('Aborted!', err=True)
            sys.exit(1)
        except CaptlError as e:
            click.echo('error: %s' % e, err=True)
            for violation in getattr(e, 'violations', ()):
                click.echo('  %s' % violation, err=True)
            sys.exit(e.exit_code)
        except Exception:
            log.exception('internal error')
            sys.exit(2)
        sys.exit(rv if isinstance(rv, int) else 0)


def _read(path):
    with click.open_file(path, 'r', encoding='utf-8') as f:
        return f.read()


def _write(path, text):
    with click.open_file(path, 'w', encoding='utf-8') as f:
        f.write(text)


def _model_name(path):
    return os.path.splitext(os.path.basename(path))[0]


def _load(model, req):
    """Parses the requirement and the model; the model is timed as the
    ``model`` phase."""
    requirement = parse_requirement(_read(req))
    stats = RunStats(model_name=_model_name(model),
                     objectives=[o.id for o in requirement.objectives])
    with stats.phase('model'):
        mdp = parse_model(_read(model))
    stats.record_model(mdp)
    log.info('loaded %s: %d states', model, mdp.num_states)
    return mdp, requirement, stats


def _synthesize(model, req, algorithm, epsilon, max_iter):
    mdp, requirement, stats = _load(model, req)
    synthesizer = SYNTHESIZERS[algorithm](mdp, requirement, epsilon=epsilon,
                                          max_iter=max_iter, stats=stats)
    return mdp, synthesizer.run()


def _to_dot(mdp, result):
    if result.partition is not None:
        return product_to_dot(result.chain, mdp)
    return chain_to_dot(result.chain, mdp)


def create_cli():
    model_option = click.option(
        '--model', required=True, type=click.Path(exists=True, dir_okay=False),
        help='model document (JSON)')
    req_option = click.option(
        '--req', required=True, type=click.Path(exists=True, dir_okay=False),
        help='requirement document')
    algorithm_option = click.option(
        '--algorithm', type=click.Choice(sorted(SYNTHESIZERS)),
        default='persistence', show_default=True)
    epsilon_option = click.option(
        '--epsilon', type=click.FloatRange(min=0, min_open=True),
        default=DEFAULT_EPSILON, show_default=True,
        help='value iteration convergence threshold')
    max_iter_option = click.option(
        '--max-iter', 'max_iter', type=click.IntRange(min=1),
        default=DEFAULT_MAX_ITER, show_default=True)

    def synthesis_options(f):
        for option in reversed([model_option, req_option, algorithm_option,
                                epsilon_option, max_iter_option]):
            f = option(f)
        return f

    @click.group(cls=CaptlGroup)
    @click.option('-v', '--verbose', count=True,
                  help='log progress (-v) or everything (-vv)')
    def cli(verbose):
        """Protocol synthesis for context-aware probabilistic
        requirements."""
        level = {0: logging.WARNING, 1: logging.INFO}.get(verbose,
                                                           logging.DEBUG)
        logging.basicConfig(level=level, stream=sys.stderr, force=True,
                            format='%(levelname)s %(name)s: %(message)s')
        logging.captureWarnings(True)

    @cli.command()
    @synthesis_options
    @click.option('--out', type=click.Path(dir_okay=False),
                  help='where to write the protocol')
    @click.option('--dot', type=click.Path(dir_okay=False),
                  help='where to write the verified chain as DOT')
    @click.option('--stats', 'stats_path', type=click.Path(dir_okay=False),
                  help='where to write the run statistics as CSV')
    def synth(model, req, algorithm, epsilon, max_iter, out, dot, stats_path):
        """Synthesize a protocol and print its satisfaction probability."""
        mdp, result = _synthesize(model, req, algorithm, epsilon, max_iter)
        if out:
            _write(out, result.protocol.to_json())
        if dot:
            _write(dot, _to_dot(mdp, result))
        if stats_path:
            with click.open_file(stats_path, 'w') as f:
                result.stats.write_csv(f)
        click.echo('c=%.6f' % result.satisfaction_prob)

    @cli.command()
    @model_option
    @click.option('--query', required=True, help='e.g. Pmax [ F "goal" ]')
    @epsilon_option
    @max_iter_option
    def verify(model, query, epsilon, max_iter):
        """Print the optimal value of a PCTL query at the initial state."""
        mdp = parse_model(_read(model))
        vector, verdict = check_query(mdp, parse_query(query),
                                      epsilon=epsilon, max_iter=max_iter)
        click.echo('%.6f' % vector[mdp.initial])
        if verdict is not None:
            click.echo('SAT' if verdict else 'UNSAT')

    @cli.command()
    @model_option
    @req_option
    @epsilon_option
    @max_iter_option
    @click.option('--out', default='-', type=click.Path(dir_okay=False,
                                                       allow_dash=True))
    def partition(model, req, epsilon, max_iter, out):
        """Write the state partition of every explored objective as CSV."""
        mdp, requirement, _ = _load(model, req)
        blocks = partition_states(mdp, requirement, epsilon=epsilon,
                                  max_iter=max_iter)
        with click.open_file(out, 'w') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(['state', 'objective', 'block', 'x_value'])
            for state, qid, block, value in blocks.rows():
                writer.writerow([state, qid, block, '%.6f' % value])

    @cli.command('export-dot')
    @synthesis_options
    @click.option('--out', default='-', type=click.Path(dir_okay=False,
                                                       allow_dash=True))
    def export_dot(model, req, algorithm, epsilon, max_iter, out):
        """Write the product (persistence) or the protocol's induced chain
        (pctl) as DOT."""
        mdp, result = _synthesize(model, req, algorithm, epsilon, max_iter)
        _write(out, _to_dot(mdp, result))

    @cli.command('simulate')
    @synthesis_options
    @click.option('--runs', type=int, default=DEFAULT_RUNS, show_default=True)
    @click.option('--seed', type=int, default=DEFAULT_SEED, show_default=True)
    @click.option('--horizon', type=int, default=None,
                  help='steps per run [default: 10 x chain states]')
    def simulate_cmd(model, req, algorithm, epsilon, max_iter, runs, seed,
                     horizon):
        """Estimate the satisfaction probability by sampling."""
        _, result = _synthesize(model, req, algorithm, epsilon, max_iter)
        estimate = simulate(result.chain, runs=runs, horizon=horizon,
                            seed=seed, accepting=result.accepting,
                            reach=result.reach)
        click.echo('mean=%.6f' % estimate.mean)
        click.echo('stddev=%.6f' % estimate.stddev)
        click.echo('half_width=%.6f' % estimate.half_width)

    @cli.command()
    @synthesis_options
    @click.option('--out', default='-', type=click.Path(dir_okay=False,
                                                       allow_dash=True))
    def stats(model, req, algorithm, epsilon, max_iter, out):
        """Write sizes and timings of a synthesis run as CSV."""
        _, result = _synthesize(model, req, algorithm, epsilon, max_iter)
        with click.open_file(out, 'w') as f:
            result.stats.write_csv(f)

    @cli.command()
    @click.option('--case', required=True, help='robot or meda')
    @click.option('--size', default=None, help='WxH')
    @click.option('--out', default='.', type=click.Path(file_okay=False),
                  help='directory for the generated documents')
    def gen(case, size, out):
        """Generate a case-study model and requirement."""
        options = validate_form(GenOptionsForm, {'case': case, 'size': size})
        params_class, generate = GENERATORS[options['case']]
        if options['size'] is not None:
            params = params_class.from_size(options['size'])
        else:
            params = params_class()
        params = params.resolved()
        model_text, req_text = generate(params)
        if not os.path.isdir(out):
            os.makedirs(out)
        stem = os.path.join(out, '%s_%dx%d' % (options['case'], params.width,
                                               params.height))
        _write(stem + '.json', model_text)
        _write(stem + '.captl', req_text)
        click.echo(stem + '.json')
        click.echo(stem + '.captl')

    return cli


cli = create_cli()


def main():
    cli.main(prog_name='captl')


if __name__ == '__main__':
    main()
