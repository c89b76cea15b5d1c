"""Provides functions for the "run" command."""

import logging

from neurochaos import presets
from neurochaos.chaosfex import export_csv
from neurochaos.cli.cli import illegal_options
from neurochaos.data import load_manifest, LOW_REGIME_MAX_PER_CLASS
from neurochaos.experiment import (ExperimentRunner, ExperimentListener,
                                   write_results, write_summary_csv)
from neurochaos.pipelines import pipeline, CHAOS_PARAMS, CFX_KNN, KNN
from neurochaos.tuning import load_grid


RUN_TEMPLATE = 'run/run.jinja2'

PROGRESS_STEP = 50


def logger():
    """Returns a logging.Logger object."""
    return logging.getLogger(__name__)


class ProgressListener(ExperimentListener):
    """Logs the progress of an ExperimentRunner."""

    def begin_experiment(self, dataset, algorithm, regime, n_per_class):
        what = regime
        if n_per_class is not None:
            what = "%s (n=%d)" % (regime, n_per_class)
        logger().info("%s: running %s, %s regime", dataset, algorithm, what)

    def trial_done(self, n_per_class, trial, f1):
        if (trial + 1) % PROGRESS_STEP == 0:
            logger().info("n=%d: %d trials done", n_per_class, trial + 1)

    def end_experiment(self, result):
        logger().info("%s: %s mean macro F1 %.6f", result.dataset,
                      result.algorithm, result.mean_f1)


def preset_params(algorithm, dataset_id):
    """Returns the preset params of algorithm for dataset_id.

    An empty dict is returned if there is no preset.

    """
    name = pipeline(algorithm).name
    if name == CFX_KNN:
        params = presets.knn_params(dataset_id, cfx=True)
    elif name == KNN:
        params = presets.knn_params(dataset_id)
    elif pipeline(algorithm).chaos:
        params = presets.chaos_params(dataset_id)
    else:
        params = {}
    return params or {}


def resolve_params(algorithm, dataset_id, info):
    """Returns the params of algorithm.

    Params given on the command line win over the dataset's preset.
    A ValueError is raised if a chaos param is neither given nor
    preset.

    """
    pipe = pipeline(algorithm)
    params = preset_params(algorithm, dataset_id)
    for name in pipe.params:
        if info.get(name) is not None:
            params[name] = info.get(name)
    missing = [p for p in CHAOS_PARAMS if pipe.chaos and p not in params]
    if missing:
        msg = ("no %s for %s on %s: pass --%s or --grid"
               % (', '.join(missing), pipe.name, dataset_id,
                  ' --'.join(missing)))
        raise ValueError(msg)
    return params


def _tuned_params(runner, ds, algorithm, info):
    grid = load_grid(info.grid)
    stages = runner.tune(ds, algorithm, grid, grid, staged=not info.joint,
                         skip_nonconvergent=info.skip_nonconvergent)
    best = stages[-1]
    logger().info("%s: tuned %s params %s (CV macro F1 %.6f)", ds.dataset_id,
                  best.pipeline, best.best_params, best.best_mean_f1)
    return best.best_params


def _export_cfx(runner, ds, algorithms, params, path):
    """Exports the CFX matrix of the first chaos based algorithm."""
    for algorithm in algorithms:
        if pipeline(algorithm).chaos:
            M = runner.cfx_matrix(ds, params[algorithm])
            export_csv(M, ds.y, path)
            return
    raise ValueError("--export-cfx requires a CFX based algorithm")


def run(renderer, manifest, dataset, algo, regime, settings, info):
    """Runs the experiments."""
    ds = load_manifest(manifest).load(dataset)
    runner = ExperimentRunner(settings, [ProgressListener()])
    params = {}
    for algorithm in algo:
        if info.get('grid'):
            params[algorithm] = _tuned_params(runner, ds, algorithm, info)
        else:
            params[algorithm] = resolve_params(algorithm, ds.dataset_id,
                                               info)
    if regime == 'high':
        results = run_high(runner, ds, algo, params, info)
    else:
        results = run_low(runner, ds, algo, params, info)
    if info.get('export_cfx'):
        _export_cfx(runner, ds, algo, params, info.export_cfx)
    if info.get('out'):
        write_results(results, info.out)
    if info.get('csv'):
        write_summary_csv(results, info.csv)
    renderer.render(RUN_TEMPLATE, results=results, info=info)
    return results


@illegal_options('n', 'holdout_test')
def run_high(runner, ds, algo, params, info):
    """Runs the high training sample regime.

    illegal options: --%(opt)s is only supported in the low regime.

    """
    return [runner.run_high(ds, algorithm, params[algorithm])
            for algorithm in algo]


def run_low(runner, ds, algo, params, info):
    """Runs the low training sample regime for one or all n."""
    ns = range(1, LOW_REGIME_MAX_PER_CLASS + 1)
    if info.get('n') is not None:
        ns = [info.n]
    results = []
    for algorithm in algo:
        for n in ns:
            results.append(runner.run_low(ds, algorithm, params[algorithm],
                                          n))
    return results
