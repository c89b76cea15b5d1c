"""Provides functions for the "compare" command."""

from neurochaos import experiment
from neurochaos.experiment import read_results, baseline_of
from neurochaos.pipelines import pipeline, BASELINES


COMPARE_TEMPLATE = 'compare/compare.jinja2'


def _algorithms(results, dataset):
    return sorted(set(r.algorithm for r in results if r.dataset == dataset))


def _pick(candidates, what, dataset):
    if len(candidates) != 1:
        msg = ("cannot determine the %s algorithm for %s (candidates: %s): "
               "use --%s" % (what, dataset, ', '.join(candidates) or 'none',
                             what))
        raise ValueError(msg)
    return candidates[0]


def select(hybrid_results, baseline_results, dataset, hybrid=None,
           baseline=None):
    """Returns the pair (hybrid results, baseline results) of dataset.

    hybrid and baseline are algorithm ids; if None they are derived
    from the results (see the compare command's description).

    """
    if hybrid is None:
        algos = _algorithms(hybrid_results, dataset)
        hybrids = [a for a in algos if a in BASELINES]
        hybrid = _pick(hybrids or algos, 'hybrid', dataset)
    hybrid = pipeline(hybrid).name
    if baseline is None:
        baseline = baseline_of(hybrid)
        if baseline is None:
            algos = [a for a in _algorithms(baseline_results, dataset)
                     if a != hybrid]
            baseline = _pick(algos, 'baseline', dataset)
    baseline = pipeline(baseline).name
    h = [r for r in hybrid_results
         if r.dataset == dataset and r.algorithm == hybrid]
    b = [r for r in baseline_results
         if r.dataset == dataset and r.algorithm == baseline]
    if not h or not b:
        raise ValueError("no %s results for %s"
                         % (hybrid if not h else baseline, dataset))
    return h, b


def compare(renderer, hybrid_file, baseline_file, info):
    """Compares the results and renders the boost reports."""
    hybrid_results = read_results(hybrid_file)
    baseline_results = read_results(baseline_file)
    reports = []
    for dataset in sorted(set(r.dataset for r in hybrid_results)):
        h, b = select(hybrid_results, baseline_results, dataset,
                      info.get('hybrid'), info.get('baseline'))
        reports.append(experiment.compare(h, b))
    renderer.render(COMPARE_TEMPLATE, reports=reports, info=info)
    return reports
