"""Cross-validated grid search over the pipeline hyperparameters.

Grid points are scored by the mean validation macro F1 of a stratified
k-fold split; the earliest point (in declared grid order) with the
highest score wins.

"""

import csv
import json
import math
import logging
import itertools
from collections import namedtuple, OrderedDict
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from sklearn.model_selection import StratifiedKFold

from neurochaos.data import DataError
from neurochaos.gls import NonConvergence, DEFAULT_MAX_ITERATIONS, SKEW_TENT
from neurochaos.metrics import confusion, macro_f1
from neurochaos.pipelines import pipeline, CHAOS_PARAMS, CHAOSNET
from neurochaos.util.io import atomic_open


__all__ = ['Grid', 'GridError', 'TooFewRows', 'TracePoint', 'SearchResult',
           'expand_range', 'expand_grid', 'load_grid', 'default_grid',
           'kfold_indices', 'grid_search', 'staged_search', 'export_trace_csv']

# declared iteration order: q outermost, classifier params innermost
PARAM_ORDER = CHAOS_PARAMS + ('k', )

DEFAULT_FOLDS = 5


def logger():
    """Returns a logging.Logger object."""
    return logging.getLogger(__name__)


class GridError(ValueError):
    """Raised if a grid is malformed or does not fit a pipeline."""


class TooFewRows(DataError):
    """Raised if there are fewer rows than folds."""

    def __init__(self, rows, folds):
        super(TooFewRows, self).__init__(rows, folds)
        self.rows = rows
        self.folds = folds

    def __str__(self):
        return "%d rows cannot be split into %d folds" % (self.rows,
                                                          self.folds)


def _check_value(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise GridError("illegal value for %s: %r" % (name, value))
    if name in ('q', 'b'):
        ok = 0.0 < value < 1.0
    elif name == 'epsilon':
        ok = 0.0 < value <= 0.5
    else:
        ok = int(value) == value and value >= 1
    if not ok or not math.isfinite(value):
        raise GridError("illegal value for %s: %r" % (name, value))


class Grid(object):
    """Ordered value lists per hyperparameter name."""

    def __init__(self, values):
        """Constructs a new Grid object.

        values maps a parameter name (q, b, epsilon or k) to a
        non-empty sequence of values. A GridError is raised for
        unknown names, empty lists and illegal values.

        """
        super(Grid, self).__init__()
        self._values = OrderedDict()
        unknown = set(values) - set(PARAM_ORDER)
        if unknown:
            raise GridError("unknown grid parameter(s): %s"
                            % ', '.join(sorted(unknown)))
        for name in PARAM_ORDER:
            if name not in values:
                continue
            vals = list(values[name])
            if not vals:
                raise GridError("no values for %s" % name)
            for v in vals:
                _check_value(name, v)
            if name == 'k':
                vals = [int(v) for v in vals]
            else:
                vals = [float(v) for v in vals]
            self._values[name] = tuple(vals)

    def __contains__(self, name):
        return name in self._values

    def __getitem__(self, name):
        return self._values[name]

    def names(self):
        return list(self._values)

    def restrict(self, **fixed):
        """Returns a new Grid where the params in fixed have one value."""
        values = dict(self._values)
        for name, value in fixed.items():
            values[name] = [value]
        return Grid(values)

    def without(self, *names):
        """Returns a new Grid without the params names."""
        return Grid(dict((n, v) for n, v in self._values.items()
                         if n not in names))

    def size(self, pipe):
        """Returns the number of points for pipeline pipe."""
        return int(np.prod([len(self._values[n]) for n in self._needed(pipe)],
                           dtype=np.int64))

    def _needed(self, pipe):
        missing = [n for n in pipe.params if n not in self._values]
        if missing:
            msg = ("grid lacks %s required by %s"
                   % (', '.join(missing), pipe.name))
            raise GridError(msg)
        return pipe.params

    def points(self, pipe):
        """Yields the grid points of pipeline pipe as dicts.

        Only the params of pipe are varied; the iteration order is q
        (outermost), b, epsilon and then the classifier params. A
        GridError is raised if the grid lacks a param of pipe.

        """
        names = self._needed(pipe)
        for combo in itertools.product(*[self._values[n] for n in names]):
            yield dict(zip(names, combo))


def expand_range(start, stop, step):
    """Returns the values start, start + step, ... up to stop (inclusive).

    Values are rounded to 12 decimals so that decimal steps produce
    the intended decimals.

    """
    if not step > 0:
        raise GridError("step must be > 0: %r" % step)
    if stop < start:
        raise GridError("stop %r < start %r" % (stop, start))
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(n)]


def expand_grid(spec):
    """Returns the Grid described by spec.

    spec maps a parameter name either to a list of values or to a
    dict with the keys start, stop and step.

    """
    values = {}
    for name, entry in spec.items():
        if isinstance(entry, dict):
            try:
                values[name] = expand_range(entry['start'], entry['stop'],
                                            entry['step'])
            except KeyError as e:
                raise GridError("range for %s lacks %s" % (name, e))
        elif isinstance(entry, (list, tuple)):
            values[name] = entry
        else:
            values[name] = [entry]
    return Grid(values)


def load_grid(path):
    """Reads a JSON grid file and returns the Grid."""
    try:
        with open(path, encoding='utf-8') as f:
            spec = json.load(f)
    except ValueError as e:
        raise GridError("%s: invalid JSON: %s" % (path, e))
    if not isinstance(spec, dict):
        raise GridError("%s: top level must be an object" % path)
    return expand_grid(spec)


def default_grid():
    """Returns the full default grid.

    q and b range over 0.01..0.99 (step 0.01), epsilon over
    0.001..0.499 (step 0.001) and k over 1, 3, 5.

    """
    return expand_grid({'q': {'start': 0.01, 'stop': 0.99, 'step': 0.01},
                        'b': {'start': 0.01, 'stop': 0.99, 'step': 0.01},
                        'epsilon': {'start': 0.001, 'stop': 0.499,
                                    'step': 0.001},
                        'k': [1, 3, 5]})


def kfold_indices(n_rows, y, k_folds=DEFAULT_FOLDS, seed=0):
    """Returns k_folds stratified (train, validation) index pairs.

    Classes with at least k_folds rows are split by sklearn's
    StratifiedKFold. The rows of a smaller class are validated one
    per fold (leave-one-out within the class), each going to one of
    the currently smallest folds. The single row of a one-row class
    is never validated but is part of every training set, so each
    class keeps a training row in every fold.

    """
    y = np.asarray(y, dtype=np.int64)
    if y.size != n_rows:
        raise ValueError("%d labels for %d rows" % (y.size, n_rows))
    if k_folds < 2:
        raise ValueError("k_folds must be >= 2: %r" % k_folds)
    if n_rows < k_folds:
        raise TooFewRows(n_rows, k_folds)
    classes, counts = np.unique(y, return_counts=True)
    if counts[counts > 1].sum() < k_folds:
        raise TooFewRows(int(counts[counts > 1].sum()), k_folds)
    rng = np.random.default_rng(seed)
    # -1: training only
    fold = np.full(n_rows, -1, dtype=np.int64)
    large = np.flatnonzero(np.isin(y, classes[counts >= k_folds]))
    if large.size:
        skf = StratifiedKFold(n_splits=k_folds, shuffle=True,
                              random_state=int(rng.integers(2 ** 32)))
        placeholder = np.zeros((large.size, 1))
        for f, (_, val) in enumerate(skf.split(placeholder, y[large])):
            fold[large[val]] = f
    sizes = np.bincount(fold[fold >= 0], minlength=k_folds)
    for k in classes[(counts > 1) & (counts < k_folds)]:
        idx = rng.permutation(np.flatnonzero(y == k))
        targets = np.argsort(sizes, kind='stable')[:idx.size]
        fold[idx] = targets
        sizes[targets] += 1
    ret = []
    for f in range(k_folds):
        ret.append((np.flatnonzero(fold != f), np.flatnonzero(fold == f)))
    return ret


TracePoint = namedtuple('TracePoint', ['params', 'fold_f1', 'mean_f1',
                                       'converged'])

SearchResult = namedtuple('SearchResult', ['pipeline', 'best_params',
                                           'best_mean_f1', 'trace'])


def _evaluate_group(args):
    """Scores all points sharing one feature matrix.

    Returns a list of TracePoint objects in the order of points.

    """
    (name, X, y, n_classes, folds, points, map_kind, max_iterations,
     skip_nonconvergent) = args
    pipe = pipeline(name)
    try:
        F = pipe.features(X, points[0], map_kind, max_iterations)
    except NonConvergence as e:
        grid_point = dict((p, points[0][p]) for p in CHAOS_PARAMS)
        if not skip_nonconvergent:
            raise e.with_context(grid_point=grid_point)
        logger().warning("skipping non-convergent grid point: %s", e)
        return [TracePoint(p, (), 0.0, False) for p in points]
    trace = []
    for point in points:
        scores = []
        for train, val in folds:
            pred = pipe.classify(F[train], y[train], F[val], point, n_classes)
            scores.append(macro_f1(confusion(y[val], pred, n_classes)))
        mean = float(np.mean(scores))
        logger().debug("%s %s: mean F1 %.6f", name, point, mean)
        trace.append(TracePoint(point, tuple(scores), mean, True))
    return trace


def _groups(pipe, grid):
    """Splits the grid points into runs with equal chaos params."""
    if not pipe.chaos:
        return [list(grid.points(pipe))]
    groups = []
    key = None
    for point in grid.points(pipe):
        cur = tuple(point[p] for p in CHAOS_PARAMS)
        if cur != key:
            groups.append([])
            key = cur
        groups[-1].append(point)
    return groups


def grid_search(train_ds, grid, algorithm, seed=0, k_folds=DEFAULT_FOLDS,
                map_kind=SKEW_TENT, max_iterations=DEFAULT_MAX_ITERATIONS,
                skip_nonconvergent=False, jobs=1):
    """Evaluates every grid point of algorithm by k-fold cross validation.

    train_ds is a normalized LabeledDataset. Returns a SearchResult
    whose trace holds one TracePoint per grid point in declared grid
    order. The best point is the earliest one with the maximal mean
    F1. A NonConvergence carries the offending grid point, unless
    skip_nonconvergent is True; then the point scores 0.

    Keyword arguments:
    k_folds -- number of folds (default: 5)
    map_kind -- the neurons' map (default: skew_tent)
    max_iterations -- the firing loop cap (default: 100000)
    skip_nonconvergent -- score non-convergent points 0 instead of
                          raising (default: False)
    jobs -- number of worker processes (default: 1)

    """
    pipe = pipeline(algorithm)
    folds = kfold_indices(train_ds.n_rows, train_ds.y, k_folds, seed)
    groups = _groups(pipe, grid)
    logger().info("grid search %s: %d points, %d folds", pipe.name,
                  sum(len(g) for g in groups), k_folds)
    tasks = [(pipe.name, train_ds.X, train_ds.y, train_ds.n_classes, folds,
              points, map_kind, max_iterations, skip_nonconvergent)
             for points in groups]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            parts = list(executor.map(_evaluate_group, tasks))
    else:
        parts = [_evaluate_group(t) for t in tasks]
    trace = [tp for part in parts for tp in part]
    best = trace[0]
    for tp in trace[1:]:
        if tp.mean_f1 > best.mean_f1:
            best = tp
    return SearchResult(pipe.name, dict(best.params), best.mean_f1, trace)


def staged_search(train_ds, chaos_grid, ml_grid, algorithm, seed=0,
                  **kwargs):
    """Tunes the chaos params first and the classifier params afterwards.

    For a CFX pipeline the ChaosNet grid search over chaos_grid fixes
    (q, b, epsilon); then only the classifier params of algorithm are
    searched over ml_grid. For ChaosNet and the stand-alone pipelines
    this is a single grid search. Returns the list of SearchResult
    objects, one per stage; the last one holds the winner.
    **kwargs are passed to grid_search.

    """
    pipe = pipeline(algorithm)
    if not pipe.chaos:
        return [grid_search(train_ds, ml_grid, pipe.name, seed, **kwargs)]
    chaos = grid_search(train_ds, chaos_grid, CHAOSNET, seed, **kwargs)
    if pipe.name == CHAOSNET:
        return [chaos]
    fixed = dict((p, chaos.best_params[p]) for p in CHAOS_PARAMS)
    logger().info("fixed chaos params for %s: %s", pipe.name, fixed)
    values = dict((p, [v]) for p, v in fixed.items())
    for name in pipe.classifier_params:
        if name not in ml_grid:
            raise GridError("grid lacks %s required by %s"
                            % (name, pipe.name))
        values[name] = ml_grid[name]
    final = grid_search(train_ds, Grid(values), pipe.name, seed, **kwargs)
    return [chaos, final]


def export_trace_csv(results, path):
    """Writes the traces of the SearchResult objects results to path.

    One row per grid point: stage, pipeline, the params, the per-fold
    F1 values, the mean F1 and whether the point converged.

    """
    if isinstance(results, SearchResult):
        results = [results]
    names = [n for n in PARAM_ORDER
             if any(n in tp.params for r in results for tp in r.trace)]
    n_folds = max([len(tp.fold_f1) for r in results for tp in r.trace] + [0])
    header = (['stage', 'pipeline'] + names
              + ["fold%d_f1" % (i + 1) for i in range(n_folds)]
              + ['mean_f1', 'converged'])
    with atomic_open(path) as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        for stage, r in enumerate(results):
            for tp in r.trace:
                row = [stage, r.pipeline]
                row.extend(repr(tp.params[n]) if n in tp.params else ''
                           for n in names)
                folds = [repr(v) for v in tp.fold_f1]
                folds.extend([''] * (n_folds - len(folds)))
                row.extend(folds)
                row.extend([repr(tp.mean_f1), int(tp.converged)])
                writer.writerow(row)
