"""Defines the run command."""

from neurochaos.cli.cli import NlCommand, CommonOptions, call
from neurochaos.cli.description import CommandDescription, Option
from neurochaos.cli.run import run
from neurochaos.gls import MAP_KINDS
from neurochaos.pipelines import ALGORITHMS


class DatasetOptions(object):
    """Options which select the dataset and the randomness."""
    opt_manifest = Option('m', 'manifest', 'the JSON dataset manifest',
                          required=True)
    opt_dataset = Option('d', 'dataset', 'the dataset id in the manifest',
                         required=True)
    opt_seed = Option('s', 'seed', 'the master seed (default: config or 0)',
                      type=int)
    opt_jobs = Option('j', 'jobs', 'number of worker processes', type=int)
    opt_no_leak = Option('', 'no-leak',
                         'fit the normalization on the training rows only',
                         action='store_true')


class ChaosOptions(object):
    """Options which configure the neurons."""
    opt_map_kind = Option('', 'map-kind', 'the neurons\' map',
                          choices=MAP_KINDS)
    opt_max_iterations = Option('', 'max-iterations',
                                'cap of the firing loop', type=int)


class Run(CommandDescription, NlCommand, CommonOptions, DatasetOptions,
          ChaosOptions):
    """Run an experiment.

    Trains and evaluates each given algorithm in the high (one 80/20
    split) or low (150 trials with N rows per class) training sample
    regime. The params default to the dataset's preset; --grid tunes
    them on the high regime training split first.

    Examples:
    nl run -m manifest.json -d iris -a ChaosNet
    nl run -m manifest.json -d haberman -a CfxKnn -a Knn --regime low
    nl run -m manifest.json -d wine -a CfxKnn --grid grid.json -o out.json

    """
    cmd = 'run'
    opt_algo = Option('a', 'algo', 'algorithm (may be given repeatedly)',
                      choices=ALGORITHMS + ('RawKnn', 'RawGnb'),
                      action='append', required=True)
    opt_regime = Option('r', 'regime', 'the training sample regime',
                        choices=('high', 'low'), default='high')
    opt_n = Option('n', 'n', 'rows per class in the low regime (default: '
                   'all of 1..9)', type=int)
    opt_q = Option('', 'q', 'initial neural activity', type=float)
    opt_b = Option('', 'b', 'discrimination threshold', type=float)
    opt_epsilon = Option('', 'epsilon', 'noise intensity', type=float)
    opt_k = Option('k', 'k', 'number of neighbors', type=int)
    opt_grid = Option('g', 'grid', 'tune the params on this JSON grid')
    opt_joint = Option('', 'joint', 'tune all params at once (default: '
                       'chaos params first)', action='store_true')
    opt_skip_nonconvergent = Option('', 'skip-nonconvergent',
                                    'score non-convergent grid points 0',
                                    action='store_true')
    opt_holdout_test = Option('', 'holdout-test',
                              'test low regime trials on the high regime '
                              'test slice', action='store_true')
    opt_export_cfx = Option('', 'export-cfx', 'write the CFX matrix of all '
                            'rows to this CSV file')
    opt_out = Option('o', 'out', 'write the JSON result document to this '
                     'file')
    opt_csv = Option('', 'csv', 'write the CSV summary to this file')
    opt_timing = Option('', 'timing', 'record wall clock seconds',
                        action='store_true')
    func = call(run.run)
