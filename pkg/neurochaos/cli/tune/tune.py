"""Provides functions for the "tune" command."""

import logging

from neurochaos.data import load_manifest
from neurochaos.experiment import ExperimentRunner
from neurochaos.tuning import load_grid, default_grid, export_trace_csv


TUNE_TEMPLATE = 'tune/tune.jinja2'


def logger():
    """Returns a logging.Logger object."""
    return logging.getLogger(__name__)


def tune(renderer, manifest, dataset, algo, settings, info):
    """Tunes the params of algo and renders the winner."""
    ds = load_manifest(manifest).load(dataset)
    if info.get('grid'):
        grid = load_grid(info.grid)
    else:
        logger().warning("no --grid given, searching the full default grid")
        grid = default_grid()
    runner = ExperimentRunner(settings)
    stages = runner.tune(ds, algo, grid, grid, staged=not info.joint,
                         skip_nonconvergent=info.skip_nonconvergent)
    if info.get('trace'):
        export_trace_csv(stages, info.trace)
    renderer.render(TUNE_TEMPLATE, dataset=ds.dataset_id, stages=stages,
                    info=info)
    return stages
