"""Defines the tune command."""

from neurochaos.cli.cli import NlCommand, CommonOptions, call
from neurochaos.cli.description import CommandDescription, Option
from neurochaos.cli.run.ui import DatasetOptions, ChaosOptions
from neurochaos.cli.tune import tune
from neurochaos.pipelines import ALGORITHMS


class Tune(CommandDescription, NlCommand, CommonOptions, DatasetOptions,
           ChaosOptions):
    """Tune hyperparameters by five-fold cross validation.

    The grid search runs on the training part of the high regime
    split. By default the chaos params (q, b, epsilon) are tuned with
    ChaosNet first and only the classifier params afterwards.
    Without --grid the full default grid is searched (slow).

    Examples:
    nl tune -m manifest.json -d iris -a ChaosNet --grid grid.json
    nl tune -m manifest.json -d iris -a CfxKnn --grid grid.json --joint

    """
    cmd = 'tune'
    opt_algo = Option('a', 'algo', 'the algorithm',
                      choices=ALGORITHMS + ('RawKnn', 'RawGnb'),
                      required=True)
    opt_grid = Option('g', 'grid', 'the JSON grid file')
    opt_joint = Option('', 'joint', 'tune all params at once',
                       action='store_true')
    opt_skip_nonconvergent = Option('', 'skip-nonconvergent',
                                    'score non-convergent grid points 0',
                                    action='store_true')
    opt_trace = Option('t', 'trace', 'write the search trace to this CSV '
                       'file')
    func = call(tune.tune)
