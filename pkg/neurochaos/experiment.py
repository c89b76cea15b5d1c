"""Runs the high and low training sample regime experiments.

An ExperimentResult carries the macro F1 outcome of one (dataset,
algorithm, regime) combination together with everything needed to
re-run it: params, master seed, normalization mode and split sizes.
Results are stored as one JSON document per invocation; a flat CSV
summary can be written next to it.

"""

import csv
import json
import time
import logging
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from neurochaos import chaosfex
from neurochaos.chaosfex import ConstantAttribute, WHOLE, TRAIN
from neurochaos.data import (stratified_split, low_regime_sample,
                             LOW_REGIME_TRIALS, LOW_REGIME_MAX_PER_CLASS)
from neurochaos.gls import DEFAULT_MAX_ITERATIONS, SKEW_TENT
from neurochaos.metrics import confusion, macro_f1, boost, consistency
from neurochaos.pipelines import pipeline, BASELINES
from neurochaos.tuning import staged_search, grid_search
from neurochaos.util.io import atomic_open, write_file


__all__ = ['ExperimentResult', 'Settings', 'Mismatch', 'BoostReport',
           'ExperimentListener', 'ExperimentRunner', 'compare', 'summarize', 'write_results',
           'read_results', 'write_summary_csv']

SCHEMA_VERSION = 1

HIGH = 'high'
LOW = 'low'
REGIMES = (HIGH, LOW)

DROP = 'drop'
ABORT = 'abort'
CONSTANT_POLICIES = (DROP, ABORT)

TRAIN_FRACTION = 0.8

SUMMARY_COLUMNS = ('dataset', 'algo', 'regime', 'n', 'mean_f1', 'seed')


def logger():
    """Returns a logging.Logger object."""
    return logging.getLogger(__name__)


class Mismatch(ValueError):
    """Raised if two results to be compared differ in provenance."""

    def __init__(self, field, values):
        super(Mismatch, self).__init__(field, values)
        self.field = field
        self.values = values

    def __str__(self):
        return ("results differ in %s: %s"
                % (self.field, ' != '.join(repr(v) for v in self.values)))


_SettingsBase = namedtuple('Settings', ['seed', 'jobs', 'normalization',
                                        'constant_attributes', 'k',
                                        'map_kind', 'max_iterations',
                                        'holdout_test', 'timing'])


class Settings(_SettingsBase):
    """Run wide settings (from config file and command line)."""
    __slots__ = ()

    def __new__(cls, seed=0, jobs=1, normalization=WHOLE,
                constant_attributes=DROP, k=3, map_kind=SKEW_TENT,
                max_iterations=DEFAULT_MAX_ITERATIONS, holdout_test=False,
                timing=False):
        if int(seed) != seed or seed < 0:
            raise ValueError("seed must be a non-negative integer: %r" % seed)
        if int(jobs) != jobs or jobs < 1:
            raise ValueError("jobs must be a positive integer: %r" % jobs)
        if normalization not in chaosfex.NORMALIZATION_MODES:
            raise ValueError("unsupported normalization: %r" % normalization)
        if constant_attributes not in CONSTANT_POLICIES:
            raise ValueError("unsupported constant attribute policy: %r"
                             % constant_attributes)
        return super(Settings, cls).__new__(
            cls, int(seed), int(jobs), normalization, constant_attributes,
            int(k), map_kind, int(max_iterations), bool(holdout_test),
            bool(timing))

    def replace(self, **kwargs):
        fields = self._asdict()
        fields.update(kwargs)
        return Settings(**fields)


_RESULT_FIELDS = ['dataset', 'algorithm', 'regime', 'n_per_class', 'mean_f1',
                  'trial_f1', 'params', 'seed', 'normalization',
                  'holdout_test', 'train_size', 'test_size',
                  'dropped_attributes', 'wall_clock_seconds']


class ExperimentResult(namedtuple('ExperimentResult', _RESULT_FIELDS)):
    """The outcome of one experiment.

    For the low regime trial_f1 holds the macro F1 of each of the 150
    trials and mean_f1 their mean; for the high regime trial_f1 is
    empty. wall_clock_seconds is None unless timing was requested.

    """
    __slots__ = ()

    def as_dict(self):
        d = self._asdict()
        d['trial_f1'] = list(self.trial_f1)
        d['params'] = dict(self.params)
        d['dropped_attributes'] = list(self.dropped_attributes)
        if self.wall_clock_seconds is None:
            del d['wall_clock_seconds']
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d.setdefault('wall_clock_seconds', None)
        d.setdefault('dropped_attributes', [])
        missing = [f for f in _RESULT_FIELDS if f not in d]
        if missing:
            raise ValueError("result lacks %s" % ', '.join(missing))
        d['trial_f1'] = tuple(d['trial_f1'])
        d['dropped_attributes'] = tuple(d['dropped_attributes'])
        return cls(**dict((f, d[f]) for f in _RESULT_FIELDS))


def _normalize(ds, fit_rows, settings, quiet=False):
    """Returns the pair (X_norm, dropped attributes) of ds.

    fit_rows are the rows the normalization is fitted on in TRAIN
    mode. Constant attributes are dropped or abort the run depending
    on settings.constant_attributes.

    """
    X = ds.X
    dropped = []
    while True:
        try:
            params = chaosfex.normalize_fit(X, settings.normalization,
                                            fit_rows)
            break
        except ConstantAttribute as e:
            if settings.constant_attributes == ABORT:
                raise
            keep = [a for a in range(ds.n_attributes) if a not in dropped]
            dropped.extend(keep[a] for a in e.attributes)
            dropped.sort()
            log = logger().debug if quiet else logger().warning
            log("%s: dropping constant attribute(s) %s", ds.dataset_id,
                ', '.join(ds.attribute_names[a] for a in dropped))
            if len(dropped) == ds.n_attributes:
                raise ConstantAttribute(dropped)
            X = chaosfex.drop_attributes(ds.X, dropped)
    return chaosfex.normalize_apply(X, params), dropped


def _f1(pipe, F, y, train, test, params, n_classes):
    pred = pipe.classify(F[train], y[train], F[test], params, n_classes)
    return macro_f1(confusion(y[test], pred, n_classes))


def _run_trials(args):
    """Runs a batch of low regime trials and returns their F1 values."""
    ds, name, params, n, trials, settings, pool, test_rows, F = args
    pipe = pipeline(name)
    scores = []
    for trial in trials:
        split = low_regime_sample(ds, n, trial, settings.seed, pool=pool,
                                  test_rows=test_rows)
        if F is None:
            X_norm, _ = _normalize(ds, split.train, settings, quiet=True)
            F_trial = pipe.features(X_norm, params, settings.map_kind,
                                    settings.max_iterations)
        else:
            F_trial = F
        scores.append(_f1(pipe, F_trial, ds.y, split.train, split.test,
                          params, ds.n_classes))
    return scores


class ExperimentListener(object):
    """Receives the progress events of an ExperimentRunner.

    Subclasses override the events they are interested in. Any object
    with some of these methods is accepted as listener, too.

    """

    def begin_experiment(self, dataset, algorithm, regime, n_per_class):
        pass

    def trial_done(self, n_per_class, trial, f1):
        pass

    def end_experiment(self, result):
        pass


class ExperimentRunner(object):
    """Runs experiments and reports the progress.

    Every event is logged (DEBUG) and passed on to the listeners (see
    ExperimentListener).

    """

    def __init__(self, settings=None, listener=None):
        """Constructs a new ExperimentRunner object.

        Keyword arguments:
        settings -- a Settings object (default: None, that is the
                    defaults)
        listener -- list of listener objects (default: None)

        """
        super(ExperimentRunner, self).__init__()
        self.settings = settings or Settings()
        self.listener = list(listener or [])

    def _notify(self, event, *args):
        """Logs event and calls the event method of each listener.

        Listeners which lack the method are skipped.

        """
        logger().debug("%s%r", event, args)
        for listener in self.listener:
            meth = getattr(listener, event, None)
            if meth is not None:
                meth(*args)

    def _params(self, pipe, params):
        params = dict(params or {})
        if 'k' in pipe.classifier_params:
            params.setdefault('k', self.settings.k)
        pipe.check_params(params)
        params = dict((p, params[p]) for p in pipe.params)
        if pipe.chaos:
            params['map_kind'] = self.settings.map_kind
            params['max_iterations'] = self.settings.max_iterations
        return params

    def _result(self, ds, pipe, regime, n, scores, params, train_size,
                test_size, dropped, started):
        seconds = None
        if self.settings.timing:
            seconds = time.time() - started
        if regime == HIGH:
            mean = float(scores[0])
            trials = ()
        else:
            mean = float(np.mean(scores))
            trials = tuple(float(s) for s in scores)
        return ExperimentResult(ds.dataset_id, pipe.name, regime, n, mean,
                                trials, params, self.settings.seed,
                                self.settings.normalization,
                                self.settings.holdout_test, int(train_size),
                                int(test_size), tuple(dropped), seconds)

    def high_split(self, ds):
        """Returns the SplitSpec of the high regime."""
        return stratified_split(ds, TRAIN_FRACTION, self.settings.seed)

    def tuning_set(self, ds):
        """Returns the normalized training part of the high regime split.

        This is the data the hyperparameters are tuned on.

        """
        split = self.high_split(ds)
        X_norm, dropped = _normalize(ds, split.train, self.settings)
        names = [a for i, a in enumerate(ds.attribute_names)
                 if i not in dropped]
        return ds.with_matrix(X_norm, names).subset(split.train)

    def cfx_matrix(self, ds, params):
        """Returns the CFX matrix of all rows of ds (in dataset order).

        The normalization is fitted like in the high regime.

        """
        pipe = pipeline('ChaosNet')
        params = self._params(pipe, params)
        split = self.high_split(ds)
        X_norm, _ = _normalize(ds, split.train, self.settings)
        return pipe.features(X_norm, params, jobs=self.settings.jobs)

    def tune(self, ds, algorithm, chaos_grid, ml_grid=None, staged=True,
             skip_nonconvergent=False):
        """Tunes the params of algorithm on the high regime train split.

        Returns the list of SearchResult objects (see
        tuning.staged_search). With staged=False one joint grid search
        over chaos_grid is done.

        """
        train_ds = self.tuning_set(ds)
        kwargs = {'map_kind': self.settings.map_kind,
                  'max_iterations': self.settings.max_iterations,
                  'skip_nonconvergent': skip_nonconvergent,
                  'jobs': self.settings.jobs}
        if staged:
            return staged_search(train_ds, chaos_grid, ml_grid or chaos_grid,
                                 algorithm, self.settings.seed, **kwargs)
        return [grid_search(train_ds, chaos_grid, algorithm,
                            self.settings.seed, **kwargs)]

    def run_high(self, ds, algorithm, params=None):
        """Runs the high training sample regime (one 80/20 split).

        params holds the hyperparameters of algorithm; a missing k
        defaults to settings.k.

        """
        started = time.time()
        pipe = pipeline(algorithm)
        params = self._params(pipe, params)
        self._notify('begin_experiment', ds.dataset_id, pipe.name, HIGH, None)
        split = self.high_split(ds)
        X_norm, dropped = _normalize(ds, split.train, self.settings)
        F = pipe.features(X_norm, params, jobs=self.settings.jobs)
        f1 = _f1(pipe, F, ds.y, split.train, split.test, params,
                 ds.n_classes)
        result = self._result(ds, pipe, HIGH, None, [f1], params,
                              split.train.size, split.test.size, dropped,
                              started)
        self._notify('end_experiment', result)
        return result

    def run_low(self, ds, algorithm, params, n_per_class):
        """Runs 150 low training sample regime trials.

        Each trial trains on n_per_class rows per class and tests on
        all other rows (or on the high regime test slice if
        settings.holdout_test is set). In WHOLE normalization mode the
        features are computed once; in TRAIN mode per trial. k is
        capped at the number of training rows.

        """
        started = time.time()
        pipe = pipeline(algorithm)
        params = self._params(pipe, params)
        if not 1 <= n_per_class <= LOW_REGIME_MAX_PER_CLASS:
            raise ValueError("n_per_class must lie in 1..%d: %r"
                             % (LOW_REGIME_MAX_PER_CLASS, n_per_class))
        train_size = n_per_class * ds.n_classes
        if params.get('k', 0) > train_size:
            logger().debug("capping k=%d at %d training rows", params['k'],
                           train_size)
            params['k'] = train_size
        pool = test_rows = None
        if self.settings.holdout_test:
            split = self.high_split(ds)
            pool, test_rows = split.train, split.test
        self._notify('begin_experiment', ds.dataset_id, pipe.name, LOW,
                     n_per_class)
        F = None
        dropped = []
        if self.settings.normalization == WHOLE:
            X_norm, dropped = _normalize(ds, None, self.settings)
            F = pipe.features(X_norm, params, jobs=self.settings.jobs)
        trials = list(range(LOW_REGIME_TRIALS))
        n_batches = min(self.settings.jobs, LOW_REGIME_TRIALS)
        batches = [list(b) for b in np.array_split(trials, n_batches)]
        tasks = [(ds, pipe.name, params, n_per_class, [int(t) for t in b],
                  self.settings, pool, test_rows, F) for b in batches]
        if len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=len(tasks)) as executor:
                parts = executor.map(_run_trials, tasks)
                scores = self._collect(parts, batches, n_per_class)
        else:
            scores = self._collect(map(_run_trials, tasks), batches,
                                   n_per_class)
        if test_rows is not None:
            test_size = test_rows.size
        else:
            test_size = ds.n_rows - train_size
        result = self._result(ds, pipe, LOW, n_per_class, scores, params,
                              train_size, test_size, dropped, started)
        self._notify('end_experiment', result)
        return result

    def _collect(self, parts, batches, n_per_class):
        scores = []
        for batch, part in zip(batches, parts):
            for trial, f1 in zip(batch, part):
                self._notify('trial_done', n_per_class, trial, f1)
                scores.append(f1)
        return scores


BoostEntry = namedtuple('BoostEntry', ['n_per_class', 'hybrid_f1',
                                       'baseline_f1', 'boost'])

BoostReport = namedtuple('BoostReport', ['dataset', 'hybrid', 'baseline',
                                         'regime', 'entries', 'minimum',
                                         'maximum'])


_PROVENANCE = ('dataset', 'regime', 'seed', 'normalization', 'holdout_test')


def compare(hybrid, baseline):
    """Returns the BoostReport of hybrid results over baseline results.

    hybrid and baseline are ExperimentResult objects or lists of them
    (the low regime yields one result per n_per_class). The results
    are paired by n_per_class. A Mismatch is raised if a pair differs
    in dataset, regime, seed, normalization or test set, or if the
    two sides do not cover the same n_per_class values.

    """
    if isinstance(hybrid, ExperimentResult):
        hybrid = [hybrid]
    if isinstance(baseline, ExperimentResult):
        baseline = [baseline]
    if not hybrid or not baseline:
        raise ValueError("nothing to compare")
    by_n = dict((r.n_per_class, r) for r in baseline)
    ns = [r.n_per_class for r in hybrid]
    if sorted(ns, key=str) != sorted(by_n, key=str):
        raise Mismatch('n_per_class', (sorted(ns, key=str),
                                       sorted(by_n, key=str)))
    entries = []
    for h in sorted(hybrid, key=lambda r: r.n_per_class or 0):
        b = by_n[h.n_per_class]
        for field in _PROVENANCE:
            if getattr(h, field) != getattr(b, field):
                raise Mismatch(field, (getattr(h, field), getattr(b, field)))
        entries.append(BoostEntry(h.n_per_class, h.mean_f1, b.mean_f1,
                                  boost(h.mean_f1, b.mean_f1)))
    boosts = [e.boost for e in entries]
    return BoostReport(hybrid[0].dataset, hybrid[0].algorithm,
                       baseline[0].algorithm, hybrid[0].regime, entries,
                       min(boosts), max(boosts))


def baseline_of(algorithm):
    """Returns the stand-alone counterpart of a hybrid algorithm or None."""
    return BASELINES.get(pipeline(algorithm).name)


def summarize(results):
    """Returns the sorted list of (algorithm, min, max) triples.

    The range is taken over the high regime mean F1 of all datasets.

    """
    ranges = consistency(results)
    return [(algo, lo, hi) for algo, (lo, hi) in sorted(ranges.items())]


def write_results(results, path):
    """Writes results as one versioned JSON document to path."""
    doc = {'schema_version': SCHEMA_VERSION,
           'results': [r.as_dict() for r in results]}
    write_file(path, json.dumps(doc, sort_keys=True, indent=2) + '\n')


def read_results(path):
    """Reads a JSON document written by write_results."""
    with open(path, encoding='utf-8') as f:
        doc = json.load(f)
    if doc.get('schema_version') != SCHEMA_VERSION:
        raise ValueError("%s: unsupported schema_version %r"
                         % (path, doc.get('schema_version')))
    return [ExperimentResult.from_dict(d) for d in doc['results']]


def write_summary_csv(results, path):
    """Writes the flat CSV summary (one row per result) to path."""
    with atomic_open(path) as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(SUMMARY_COLUMNS)
        for r in results:
            n = '' if r.n_per_class is None else r.n_per_class
            writer.writerow([r.dataset, r.algorithm, r.regime, n,
                             repr(r.mean_f1), r.seed])
