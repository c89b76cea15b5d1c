"""The ChaosNet classifier.

Training computes one mean representation vector per class from the
CFX matrix; a test row is assigned the class whose mean vector has the
highest cosine similarity with it.

"""

import csv
from collections import namedtuple

import numpy as np

from neurochaos.data import DataError
from neurochaos.chaosfex import ShapeMismatch
from neurochaos.util.io import atomic_open


__all__ = ['MeanRepresentation', 'EmptyClass', 'train', 'cosine_similarity',
           'similarity_matrix', 'predict', 'export_means_csv',
           'import_means_csv']


class EmptyClass(DataError):
    """Raised if a class has no training rows."""

    def __init__(self, class_id):
        super(EmptyClass, self).__init__(class_id)
        self.class_id = class_id

    def __str__(self):
        return "class %d has no training rows" % self.class_id


MeanRepresentation = namedtuple('MeanRepresentation', ['class_id', 'vector'])


def train(M, y, n_classes=None):
    """Returns one MeanRepresentation per class 0..n_classes-1.

    The vector of class k is the column mean over the rows of M
    labelled k. An EmptyClass error is raised if a class has no rows.

    Keyword arguments:
    n_classes -- number of classes (default: None, that is max(y) + 1)

    """
    M = np.asarray(M, dtype=float)
    y = np.asarray(y, dtype=np.int64)
    if M.ndim != 2 or y.shape != (M.shape[0], ):
        raise ShapeMismatch(M.shape[0] if M.ndim else 0, y.size, 'labels')
    if n_classes is None:
        n_classes = int(y.max()) + 1 if y.size else 0
    means = []
    for k in range(n_classes):
        rows = M[y == k]
        if rows.shape[0] == 0:
            raise EmptyClass(k)
        vector = rows.mean(axis=0)
        vector.setflags(write=False)
        means.append(MeanRepresentation(k, vector))
    return means


def cosine_similarity(a, b):
    """Returns the cosine similarity of the vectors a and b.

    The similarity is 0 if either vector has norm 0.

    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ShapeMismatch(a.shape, b.shape, 'shape')
    norm = np.linalg.norm(a) * np.linalg.norm(b)
    if norm == 0.0:
        return 0.0
    return float(np.clip(np.dot(a, b) / norm, -1.0, 1.0))


def _mean_matrix(means):
    return np.vstack([m.vector for m in sorted(means,
                                               key=lambda m: m.class_id)])


def similarity_matrix(M, means):
    """Returns the rows x classes matrix of cosine similarities."""
    M = np.asarray(M, dtype=float)
    C = _mean_matrix(means)
    if M.ndim != 2 or M.shape[1] != C.shape[1]:
        raise ShapeMismatch(C.shape[1], M.shape[-1], 'columns')
    row_norms = np.linalg.norm(M, axis=1)
    mean_norms = np.linalg.norm(C, axis=1)
    norms = np.outer(row_norms, mean_norms)
    dots = M @ C.T
    safe = np.where(norms > 0.0, norms, 1.0)
    return np.where(norms > 0.0, np.clip(dots / safe, -1.0, 1.0), 0.0)


def predict(M, means):
    """Returns the predicted labels of the rows of M.

    Ties (equal similarity) go to the lowest class id.

    """
    S = similarity_matrix(M, means)
    if S.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    # argmax returns the first maximum
    return np.argmax(S, axis=1).astype(np.int64)


def export_means_csv(means, path):
    """Writes the mean representation vectors to the CSV file path.

    Each row holds the class_id followed by the vector.

    """
    width = len(means[0].vector) if means else 0
    with atomic_open(path) as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['class_id'] + ["v%d" % i for i in range(width)])
        for m in sorted(means, key=lambda m: m.class_id):
            writer.writerow([m.class_id] + ['%.17g' % v for v in m.vector])


def import_means_csv(path):
    """Reads a file written by export_means_csv."""
    with open(path, newline='', encoding='utf-8') as f:
        rows = list(csv.reader(f))
    if not rows or rows[0][:1] != ['class_id']:
        raise DataError("%s: not a mean representation file" % path)
    means = []
    for row in rows[1:]:
        vector = np.array([float(v) for v in row[1:]])
        vector.setflags(write=False)
        means.append(MeanRepresentation(int(row[0]), vector))
    return means
