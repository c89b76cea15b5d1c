"""Classification metrics: confusion matrix, macro F1 and boost."""

from collections import namedtuple

import numpy as np

from neurochaos.data import DataError


__all__ = ['ConfusionMatrix', 'LabelOutOfRange', 'EmptyMatrix',
           'ZeroBaseline', 'confusion', 'class_report', 'macro_f1', 'boost',
           'consistency']


class LabelOutOfRange(DataError):
    """Raised if a label is not in 0..C-1."""

    def __init__(self, label, n_classes):
        super(LabelOutOfRange, self).__init__(label, n_classes)
        self.label = label
        self.n_classes = n_classes

    def __str__(self):
        return ("label %r outside of 0..%d"
                % (self.label, self.n_classes - 1))


class EmptyMatrix(DataError):
    """Raised if a confusion matrix counts no instances."""


class ZeroBaseline(ValueError):
    """Raised if a boost is requested for a zero baseline F1."""


class ConfusionMatrix(object):
    """A C x C matrix of counts.

    Entry (i, j) counts the instances of true class i that were
    predicted as class j.

    """

    def __init__(self, counts):
        super(ConfusionMatrix, self).__init__()
        counts = np.array(counts, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
            raise ValueError("confusion matrix must be square: %s"
                             % (counts.shape, ))
        if (counts < 0).any():
            raise ValueError("confusion matrix counts must be >= 0")
        counts.setflags(write=False)
        self.counts = counts

    @property
    def n_classes(self):
        return self.counts.shape[0]

    @property
    def total(self):
        return int(self.counts.sum())

    def __eq__(self, other):
        return (isinstance(other, ConfusionMatrix)
                and np.array_equal(self.counts, other.counts))

    def __repr__(self):
        return "ConfusionMatrix(%s)" % self.counts.tolist()


def confusion(y_true, y_pred, n_classes):
    """Returns the ConfusionMatrix of the label vectors."""
    y_true = np.asarray(y_true, dtype=np.int64)
    y_pred = np.asarray(y_pred, dtype=np.int64)
    if y_true.shape != y_pred.shape or y_true.ndim != 1:
        raise ValueError("label vectors differ in length: %d != %d"
                         % (y_true.size, y_pred.size))
    for y in (y_true, y_pred):
        bad = (y < 0) | (y >= n_classes)
        if bad.any():
            raise LabelOutOfRange(int(y[np.flatnonzero(bad)[0]]), n_classes)
    flat = np.bincount(y_true * n_classes + y_pred,
                       minlength=n_classes * n_classes)
    return ConfusionMatrix(flat.reshape(n_classes, n_classes))


ClassScore = namedtuple('ClassScore', ['class_id', 'precision', 'recall',
                                       'f1', 'support'])


def _ratio(num, den):
    safe = np.where(den > 0, den, 1)
    return np.where(den > 0, num / safe, 0.0)


def class_report(cm):
    """Returns one ClassScore per class.

    precision, recall and F1 are one-vs-rest; a vanishing denominator
    yields 0.

    """
    if cm.total == 0:
        raise EmptyMatrix("confusion matrix counts no instances")
    counts = cm.counts.astype(float)
    tp = np.diag(counts)
    predicted = counts.sum(axis=0)
    actual = counts.sum(axis=1)
    precision = _ratio(tp, predicted)
    recall = _ratio(tp, actual)
    f1 = _ratio(2.0 * precision * recall, precision + recall)
    return [ClassScore(k, float(precision[k]), float(recall[k]), float(f1[k]),
                       int(actual[k]))
            for k in range(cm.n_classes)]


def macro_f1(cm):
    """Returns the unweighted mean F1 over all C classes of cm.

    Classes without true or predicted instances count with F1 = 0.

    """
    scores = class_report(cm)
    return float(np.mean([s.f1 for s in scores]))


def boost(f1_hybrid, f1_baseline):
    """Returns the relative improvement of f1_hybrid over f1_baseline in %.
    """
    if f1_baseline <= 0.0:
        raise ZeroBaseline("baseline F1 must be > 0: %r" % f1_baseline)
    return (f1_hybrid - f1_baseline) / f1_baseline * 100.0


def consistency(results):
    """Returns the [min, max] high regime macro F1 per algorithm.

    results is an iterable of objects with the attributes algorithm,
    regime and mean_f1. Low regime results are ignored. The returned
    dict maps an algorithm id to the pair (min, max) across datasets.

    """
    ranges = {}
    for r in results:
        if r.regime != 'high':
            continue
        lo, hi = ranges.get(r.algorithm, (r.mean_f1, r.mean_f1))
        ranges[r.algorithm] = (min(lo, r.mean_f1), max(hi, r.mean_f1))
    return ranges
