"""Native classifiers for the CFX+ML pipelines.

k-nearest neighbors and Gaussian naive Bayes; both work on raw
attribute matrices as well as on CFX matrices.

"""

from collections import namedtuple

import numpy as np
from scipy.spatial.distance import cdist
from scipy.stats import norm

from neurochaos.data import DataError
from neurochaos.chaosfex import ShapeMismatch
from neurochaos.chaosnet import EmptyClass


__all__ = ['KTooLarge', 'GnbModel', 'knn_predict', 'gnb_fit', 'gnb_predict']

VAR_SMOOTHING = 1e-9


class KTooLarge(DataError):
    """Raised if k exceeds the number of training rows."""

    def __init__(self, k, rows):
        super(KTooLarge, self).__init__(k, rows)
        self.k = k
        self.rows = rows

    def __str__(self):
        return "k=%d exceeds the %d training rows" % (self.k, self.rows)


def _check_widths(train_M, test_M):
    if train_M.ndim != 2 or test_M.ndim != 2:
        raise ShapeMismatch(2, min(train_M.ndim, test_M.ndim), 'dimensions')
    if train_M.shape[1] != test_M.shape[1]:
        raise ShapeMismatch(train_M.shape[1], test_M.shape[1], 'columns')


def knn_predict(train_M, train_y, test_M, k, n_classes=None):
    """Predicts the labels of test_M by a k-nearest neighbor vote.

    Distances are Euclidean. Among equally distant training rows the
    one with the lower index is nearer; a tied vote goes to the lowest
    class id.

    Keyword arguments:
    n_classes -- number of classes (default: None, that is
                 max(train_y) + 1)

    """
    train_M = np.asarray(train_M, dtype=float)
    test_M = np.asarray(test_M, dtype=float)
    train_y = np.asarray(train_y, dtype=np.int64)
    _check_widths(train_M, test_M)
    if int(k) != k or k < 1:
        raise ValueError("k must be a positive integer: %r" % k)
    if k > train_M.shape[0]:
        raise KTooLarge(k, train_M.shape[0])
    if n_classes is None:
        n_classes = int(train_y.max()) + 1
    if test_M.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    dist = cdist(test_M, train_M, metric='euclidean')
    nearest = np.argsort(dist, axis=1, kind='stable')[:, :k]
    labels = np.empty(test_M.shape[0], dtype=np.int64)
    for i, idx in enumerate(nearest):
        votes = np.bincount(train_y[idx], minlength=n_classes)
        labels[i] = np.argmax(votes)
    return labels


GnbModel = namedtuple('GnbModel', ['priors', 'means', 'variances',
                                   'smoothing'])


def gnb_fit(train_M, train_y, n_classes=None):
    """Fits a Gaussian naive Bayes model.

    The variances are floored at 1e-9 times the largest per-feature
    variance of train_M (or at 1e-9 if all features are constant).
    An EmptyClass error is raised if a class has no rows.

    Keyword arguments:
    n_classes -- number of classes (default: None, that is
                 max(train_y) + 1)

    """
    train_M = np.asarray(train_M, dtype=float)
    train_y = np.asarray(train_y, dtype=np.int64)
    if train_M.ndim != 2 or train_y.shape != (train_M.shape[0], ):
        raise ShapeMismatch(train_M.shape[0], train_y.size, 'labels')
    if n_classes is None:
        n_classes = int(train_y.max()) + 1
    largest = float(train_M.var(axis=0).max()) if train_M.size else 0.0
    smoothing = VAR_SMOOTHING * largest if largest > 0.0 else VAR_SMOOTHING
    counts = np.bincount(train_y, minlength=n_classes)
    means = np.empty((n_classes, train_M.shape[1]))
    variances = np.empty((n_classes, train_M.shape[1]))
    for c in range(n_classes):
        rows = train_M[train_y == c]
        if rows.shape[0] == 0:
            raise EmptyClass(c)
        means[c] = rows.mean(axis=0)
        variances[c] = rows.var(axis=0)
    variances = np.maximum(variances, smoothing)
    return GnbModel(counts / counts.sum(), means, variances, smoothing)


def gnb_log_posterior(model, test_M):
    """Returns the rows x classes matrix of unnormalized log posteriors."""
    test_M = np.asarray(test_M, dtype=float)
    _check_widths(model.means, test_M)
    scale = np.sqrt(model.variances)
    # rows x classes x features
    log_density = norm.logpdf(test_M[:, None, :], loc=model.means[None],
                              scale=scale[None])
    return np.log(model.priors)[None] + log_density.sum(axis=2)


def gnb_predict(model, test_M):
    """Returns the predicted labels; ties go to the lowest class id."""
    scores = gnb_log_posterior(model, test_M)
    if scores.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return np.argmax(scores, axis=1).astype(np.int64)
