"""Provides the neurochaos feature transformation (ChaosFEX).

Every attribute of a normalized instance is presented to its own GLS
neuron. The four features of each neuron's trace form one block of the
CFX matrix: columns [4k..4k+3] hold (N, R, E, H) of attribute k.

"""

import logging
from collections import namedtuple
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from neurochaos.data import DataError
from neurochaos.gls import NonConvergence, fire_many, entropy_from_counts
from neurochaos.util.io import atomic_open


__all__ = ['NormalizationParams', 'ShapeMismatch', 'ConstantAttribute',
           'normalize_fit', 'normalize_apply', 'transform', 'export_csv',
           'import_csv', 'feature_names', 'drop_attributes']

WHOLE = 'whole'
TRAIN = 'train'
NORMALIZATION_MODES = (WHOLE, TRAIN)

FEATURES = ('N', 'R', 'E', 'H')
FEATURE_WIDTH = len(FEATURES)

LABEL_COLUMN = 'label'


def logger():
    """Returns a logging.Logger object."""
    return logging.getLogger(__name__)


class ShapeMismatch(DataError):
    """Raised if two matrices (or vectors) have incompatible shapes."""

    def __init__(self, expected, got, what='attributes'):
        super(ShapeMismatch, self).__init__(expected, got, what)
        self.expected = expected
        self.got = got
        self.what = what

    def __str__(self):
        return ("expected %s %s, got %s"
                % (self.expected, self.what, self.got))


class ConstantAttribute(DataError):
    """Raised if attributes have the same value in every fitted row.

    attributes is the sorted list of the offending attribute indices.

    """

    def __init__(self, attributes):
        super(ConstantAttribute, self).__init__(attributes)
        self.attributes = list(attributes)

    def __str__(self):
        return ("constant attribute(s) %s: max == min"
                % ', '.join(str(a) for a in self.attributes))


NormalizationParams = namedtuple('NormalizationParams', ['minimum', 'maximum'])


def normalize_fit(X, mode=WHOLE, train_rows=None):
    """Fits the min-max normalization of X.

    In WHOLE mode the per-attribute minimum and maximum are taken
    over all rows, in TRAIN mode over train_rows only. A
    ConstantAttribute error is raised if max == min for some
    attribute.

    """
    X = np.asarray(X, dtype=float)
    if mode not in NORMALIZATION_MODES:
        raise ValueError("unsupported normalization mode: %r" % mode)
    if mode == TRAIN:
        if train_rows is None:
            raise ValueError("train_rows required in %r mode" % TRAIN)
        X = X[np.asarray(train_rows, dtype=np.int64)]
    if X.shape[0] == 0:
        raise DataError("cannot fit a normalization on 0 rows")
    minimum = X.min(axis=0)
    maximum = X.max(axis=0)
    constant = np.flatnonzero(maximum == minimum)
    if constant.size:
        raise ConstantAttribute(constant.tolist())
    minimum.setflags(write=False)
    maximum.setflags(write=False)
    return NormalizationParams(minimum, maximum)


def normalize_apply(X, params):
    """Returns X mapped to [0, 1] by params.

    Values outside the fitted range (possible for test rows in TRAIN
    mode) are clamped.

    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != params.minimum.size:
        raise ShapeMismatch(params.minimum.size,
                            X.shape[1] if X.ndim == 2 else X.shape)
    out = (X - params.minimum) / (params.maximum - params.minimum)
    return np.clip(out, 0.0, 1.0)


def _transform_block(X_norm, config):
    rows, n_attributes = X_norm.shape
    firing, ones, energy = fire_many(X_norm, config)
    n = firing.astype(float)
    safe = np.where(firing > 0, n, 1.0)
    rate = np.where(firing > 0, ones / safe, 0.0)
    entropy = entropy_from_counts(ones, firing)
    M = np.empty((rows, n_attributes, FEATURE_WIDTH))
    M[:, :, 0] = n.reshape(rows, n_attributes)
    M[:, :, 1] = rate.reshape(rows, n_attributes)
    M[:, :, 2] = energy.reshape(rows, n_attributes)
    M[:, :, 3] = entropy.reshape(rows, n_attributes)
    return M.reshape(rows, n_attributes * FEATURE_WIDTH)


def _transform_chunk(args):
    start, X_norm, config = args
    try:
        return _transform_block(X_norm, config)
    except NonConvergence as e:
        n_attributes = X_norm.shape[1]
        raise e.with_context(row=start + e.index // n_attributes,
                             attribute=e.index % n_attributes)


def transform(X_norm, config, jobs=1):
    """Transforms a normalized matrix into its CFX matrix.

    Cell (i, k) is the stimulus of one neuron; its (N, R, E, H) go to
    row i, columns [4k..4k+3]. Row i of the result depends on nothing
    but row i of X_norm and config. A NonConvergence carrying the row
    and attribute of the offending cell is propagated.

    Keyword arguments:
    jobs -- number of worker processes; the rows are split into that
            many contiguous chunks (default: 1)

    """
    X_norm = np.asarray(X_norm, dtype=float)
    if X_norm.ndim != 2:
        raise ShapeMismatch('2', X_norm.ndim, 'dimensions')
    rows, n_attributes = X_norm.shape
    if rows == 0:
        return np.zeros((0, n_attributes * FEATURE_WIDTH))
    bounds = np.linspace(0, rows, min(max(jobs, 1), rows) + 1).astype(int)
    chunks = [(int(lo), X_norm[lo:hi], config)
              for lo, hi in zip(bounds[:-1], bounds[1:])]
    if len(chunks) == 1:
        return _transform_chunk(chunks[0])
    with ProcessPoolExecutor(max_workers=len(chunks)) as executor:
        parts = list(executor.map(_transform_chunk, chunks))
    return np.vstack(parts)


def feature_names(n_attributes):
    """Returns the column names f{k}_{N,R,E,H} of a CFX matrix."""
    return ["f%d_%s" % (k, feature)
            for k in range(n_attributes) for feature in FEATURES]


def drop_attributes(X, attributes):
    """Returns X without the attribute columns attributes.

    X is a raw or normalized attribute matrix (one column per
    attribute).

    """
    X = np.asarray(X)
    keep = np.setdiff1d(np.arange(X.shape[1]), np.asarray(attributes,
                                                          dtype=np.int64))
    return X[:, keep]


def export_csv(M, labels, path):
    """Writes the CFX matrix M and its labels to the CSV file path.

    The header is f0_N,f0_R,f0_E,f0_H,f1_N,...,label. Values are
    written with 17 significant digits, so import_csv restores M
    bit for bit. The file is replaced atomically.

    """
    M = np.asarray(M, dtype=float)
    labels = np.asarray(labels, dtype=np.int64)
    if M.ndim != 2 or M.shape[1] % FEATURE_WIDTH:
        raise ShapeMismatch("a multiple of %d" % FEATURE_WIDTH,
                            M.shape[-1], 'columns')
    if labels.shape != (M.shape[0], ):
        raise ShapeMismatch(M.shape[0], labels.size, 'labels')
    header = feature_names(M.shape[1] // FEATURE_WIDTH) + [LABEL_COLUMN]
    with atomic_open(path) as f:
        f.write(','.join(header) + '\n')
        for row, label in zip(M, labels):
            cells = ['%.17g' % v for v in row]
            cells.append('%d' % label)
            f.write(','.join(cells) + '\n')
    logger().debug("exported %d CFX rows to %s", M.shape[0], path)


def import_csv(path):
    """Reads a file written by export_csv.

    Returns the pair (M, labels). A DataError is raised if the header
    is not a CFX header.

    """
    with open(path, encoding='utf-8') as f:
        lines = [line for line in f.read().splitlines() if line.strip()]
    if not lines:
        raise DataError("%s: empty file" % path)
    header = lines.pop(0).split(',')
    width = len(header) - 1
    if (width % FEATURE_WIDTH or header[-1] != LABEL_COLUMN
            or header[:-1] != feature_names(width // FEATURE_WIDTH)):
        raise DataError("%s: not a CFX export header" % path)
    if not lines:
        return np.zeros((0, width)), np.zeros(0, dtype=np.int64)
    try:
        data = np.loadtxt(lines, delimiter=',', ndmin=2)
    except ValueError as e:
        raise DataError("%s: %s" % (path, e))
    if data.shape[1] != width + 1:
        raise ShapeMismatch(width + 1, data.shape[1], 'columns')
    return data[:, :width], data[:, width].astype(np.int64)
