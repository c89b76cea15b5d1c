"""Provides functions for the "summary" command."""

from neurochaos.experiment import read_results, summarize


SUMMARY_TEMPLATE = 'summary/summary.jinja2'


def summary(renderer, result_files):
    """Renders the [min, max] macro F1 range per algorithm."""
    results = []
    for filename in result_files:
        results.extend(read_results(filename))
    rows = summarize(results)
    if not rows:
        raise ValueError("no high regime results in %s"
                         % ', '.join(result_files))
    renderer.render(SUMMARY_TEMPLATE, rows=rows)
    return rows
