"""Provides classes and functions to load datasets and to split them.

Datasets are read from CSV files described by a JSON manifest. Splits
are reproducible: every random draw comes from a numpy Generator whose
seed is either given or derived from a tuple of integers (see
derive_seed).

"""

import os
import re
import math
import json
import hashlib
import logging
from collections import namedtuple

import numpy as np
import pandas as pd


__all__ = ['DataError', 'ParseError', 'UnknownLabel', 'ClassTooSmall',
           'ManifestError', 'LabeledDataset', 'SplitSpec', 'load_csv',
           'load_manifest', 'stratified_split', 'low_regime_sample',
           'derive_seed', 'class_counts']

LOW_REGIME_MAX_PER_CLASS = 9
LOW_REGIME_TRIALS = 150


def logger():
    """Returns a logging.Logger object."""
    return logging.getLogger(__name__)


class DataError(ValueError):
    """Base class for all errors caused by the input data."""


class ParseError(DataError):
    """Raised if a CSV cell cannot be parsed."""

    def __init__(self, path, row, column, reason):
        super(ParseError, self).__init__(path, row, column, reason)
        self.path = path
        self.row = row
        self.column = column
        self.reason = reason

    def __str__(self):
        return ("%s: row %d, column %s: %s"
                % (self.path, self.row, self.column, self.reason))


class UnknownLabel(DataError):
    """Raised if a raw label is missing from the label map."""

    def __init__(self, label, row):
        super(UnknownLabel, self).__init__(label, row)
        self.label = label
        self.row = row

    def __str__(self):
        return "unknown label %r in row %d" % (self.label, self.row)


class ClassTooSmall(DataError):
    """Raised if a class has too few rows for the requested split."""

    def __init__(self, class_id, count, required):
        super(ClassTooSmall, self).__init__(class_id, count, required)
        self.class_id = class_id
        self.count = count
        self.required = required

    def __str__(self):
        return ("class %d has %d rows, at least %d required"
                % (self.class_id, self.count, self.required))


class ManifestError(DataError):
    """Raised if a manifest is malformed or lacks a dataset."""


def class_counts(y, n_classes):
    """Returns the number of rows per class as an int array."""
    return np.bincount(np.asarray(y, dtype=np.int64), minlength=n_classes)


class LabeledDataset(object):
    """A normalized or raw attribute matrix with integer class labels.

    X has one row per instance, y holds labels 0..n_classes-1. Both
    arrays are read-only copies; subset returns new datasets.

    """

    def __init__(self, X, y, n_classes, attribute_names=None,
                 dataset_id=''):
        """Constructs a new LabeledDataset object.

        A DataError is raised if the shapes disagree, if a label is
        out of range or if X contains NaN or inf.

        Keyword arguments:
        attribute_names -- list of attribute names (default: a0, a1, ...)
        dataset_id -- the id of the dataset (default: '')

        """
        super(LabeledDataset, self).__init__()
        X = np.array(X, dtype=float)
        y = np.array(y, dtype=np.int64)
        if X.ndim != 2:
            raise DataError("X must be a matrix, got shape %s" % (X.shape, ))
        if y.ndim != 1 or y.shape[0] != X.shape[0]:
            raise DataError("%d rows but %d labels" % (X.shape[0], y.size))
        if y.size and (y.min() < 0 or y.max() >= n_classes):
            raise DataError("labels must lie in 0..%d" % (n_classes - 1))
        if not np.isfinite(X).all():
            raise DataError("X contains NaN or inf")
        if attribute_names is None:
            attribute_names = ["a%d" % i for i in range(X.shape[1])]
        if len(attribute_names) != X.shape[1]:
            raise DataError("%d attribute names for %d attributes"
                            % (len(attribute_names), X.shape[1]))
        X.setflags(write=False)
        y.setflags(write=False)
        self.X = X
        self.y = y
        self.n_classes = int(n_classes)
        self.attribute_names = list(attribute_names)
        self.dataset_id = dataset_id

    @property
    def n_rows(self):
        return self.X.shape[0]

    @property
    def n_attributes(self):
        return self.X.shape[1]

    def class_counts(self):
        return class_counts(self.y, self.n_classes)

    def subset(self, rows):
        """Returns a new LabeledDataset consisting of rows."""
        rows = np.asarray(rows, dtype=np.int64)
        return LabeledDataset(self.X[rows], self.y[rows], self.n_classes,
                              self.attribute_names, self.dataset_id)

    def with_matrix(self, X, attribute_names=None):
        """Returns a new LabeledDataset with the same labels but matrix X."""
        return LabeledDataset(X, self.y, self.n_classes, attribute_names,
                              self.dataset_id)


SplitSpec = namedtuple('SplitSpec', ['train', 'test', 'seed'])


def _column_index(label_column, names, path):
    if isinstance(label_column, int):
        return label_column
    if names is None:
        msg = ("%s: label column %r given by name but the file has no "
               "header" % (path, label_column))
        raise ManifestError(msg)
    if label_column not in names:
        raise ManifestError("%s: no column named %r" % (path, label_column))
    return names.index(label_column)


def load_csv(path, label_column, label_map, header=True, delimiter=',',
             ignore_columns=(), dataset_id=''):
    """Loads a dataset from a CSV file.

    label_column is a column name (requires a header) or a column
    index (negative indices count from the end). label_map maps each
    raw label str to its numeric code; the codes have to be
    0..C-1. Every other column (except ignore_columns) must hold a
    real number. A ParseError is raised for unparsable cells and an
    UnknownLabel for labels missing from label_map. Row numbers in
    errors count the non-blank lines of the file, starting with 1.

    Keyword arguments:
    header -- True if the first row names the columns (default: True)
    delimiter -- the field delimiter (default: ',')
    ignore_columns -- names or indices of columns to skip, for instance
                      an id column (default: ())
    dataset_id -- id stored in the dataset (default: '')

    """
    codes = sorted(set(label_map.values()))
    if codes != list(range(len(codes))):
        raise ManifestError("label codes must be 0..C-1: %s" % codes)
    first = 2 if header else 1
    try:
        frame = pd.read_csv(path, sep=delimiter, header=0 if header else None,
                            dtype=str, keep_default_na=False,
                            skip_blank_lines=True, index_col=False,
                            encoding='utf-8')
    except OSError as e:
        raise DataError("cannot read %s: %s" % (path, e.strerror))
    except pd.errors.EmptyDataError:
        raise ParseError(path, first, '-', 'no data rows')
    except pd.errors.ParserError as e:
        m = re.search(r'line (\d+)', str(e))
        raise ParseError(path, int(m.group(1)) if m else 0, '-', str(e))
    if frame.empty:
        raise ParseError(path, first, '-', 'no data rows')
    names = None
    if header:
        names = [str(name).strip() for name in frame.columns]
    width = frame.shape[1]
    frame = frame.apply(lambda column: column.str.strip())
    missing = frame.isna().any(axis=1).to_numpy()
    if missing.any():
        i = int(np.flatnonzero(missing)[0])
        n_fields = int(frame.iloc[i].notna().sum())
        reason = "expected %d fields, got %d" % (width, n_fields)
        raise ParseError(path, i + first, '-', reason)
    label_idx = _column_index(label_column, names, path) % width
    skip = set([label_idx])
    skip.update(_column_index(c, names, path) % width
                for c in ignore_columns)
    attributes = [i for i in range(width) if i not in skip]
    cells = frame.iloc[:, attributes]
    values = cells.apply(pd.to_numeric, errors='coerce').to_numpy(
        dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        cell = cells.iat[i, j]
        raise ParseError(path, int(i) + first, attributes[j],
                         "not a number: %r" % cell)
    raw_labels = frame.iloc[:, label_idx]
    mapped = raw_labels.map(label_map)
    unknown = mapped.isna().to_numpy()
    if unknown.any():
        i = int(np.flatnonzero(unknown)[0])
        raise UnknownLabel(raw_labels.iat[i], i + first)
    if names is not None:
        attribute_names = [names[i] for i in attributes]
    else:
        attribute_names = ["a%d" % i for i in attributes]
    ds = LabeledDataset(values, mapped.to_numpy(dtype=np.int64), len(codes),
                        attribute_names, dataset_id)
    logger().debug("loaded %s: %d rows, %d attributes, class counts %s",
                   path, ds.n_rows, ds.n_attributes,
                   ds.class_counts().tolist())
    return ds


DatasetEntry = namedtuple('DatasetEntry',
                          ['dataset_id', 'path', 'label_column', 'label_map',
                           'header', 'delimiter', 'ignore_columns'])


class Manifest(object):
    """Maps dataset ids to DatasetEntry objects."""

    def __init__(self, entries, path=''):
        """Constructs a new Manifest object.

        entries is a dict which maps a dataset id to a DatasetEntry.

        Keyword arguments:
        path -- the filename the manifest was read from (default: '')

        """
        super(Manifest, self).__init__()
        self._entries = entries
        self.path = path

    def entry(self, dataset_id):
        """Returns the DatasetEntry for dataset_id.

        A ManifestError is raised if the manifest has no such dataset.

        """
        if dataset_id not in self._entries:
            msg = ("dataset %r not in manifest %s (known: %s)"
                   % (dataset_id, self.path,
                      ', '.join(sorted(self._entries))))
            raise ManifestError(msg)
        return self._entries[dataset_id]

    def load(self, dataset_id):
        """Loads and returns the LabeledDataset for dataset_id."""
        e = self.entry(dataset_id)
        return load_csv(e.path, e.label_column, e.label_map, header=e.header,
                        delimiter=e.delimiter,
                        ignore_columns=e.ignore_columns,
                        dataset_id=dataset_id)

    def __contains__(self, dataset_id):
        return dataset_id in self._entries

    def __iter__(self):
        return iter(sorted(self._entries))


def load_manifest(path):
    """Reads a JSON dataset manifest and returns a Manifest.

    The manifest maps a dataset id to an object with the keys "path"
    (relative paths are resolved against the manifest's directory),
    "label_column", and optionally "label_map", "header" (default
    true), "delimiter" (default ",") and "ignore_columns". A dataset
    whose id names a preset may omit the label_map.

    """
    from neurochaos import presets
    try:
        with open(path, encoding='utf-8') as f:
            raw = json.load(f)
    except ValueError as e:
        raise ManifestError("%s: invalid JSON: %s" % (path, e))
    except OSError as e:
        msg = "cannot read manifest %s: %s" % (path, e.strerror)
        raise ManifestError(msg)
    if not isinstance(raw, dict):
        raise ManifestError("%s: top level must be an object" % path)
    base = os.path.dirname(os.path.abspath(path))
    entries = {}
    for dataset_id, spec in raw.items():
        if 'path' not in spec or 'label_column' not in spec:
            msg = ("%s: dataset %r needs \"path\" and \"label_column\""
                   % (path, dataset_id))
            raise ManifestError(msg)
        label_map = spec.get('label_map')
        if label_map is None:
            if dataset_id not in presets.PRESETS:
                msg = "%s: dataset %r has no label_map" % (path, dataset_id)
                raise ManifestError(msg)
            label_map = presets.PRESETS[dataset_id].label_map
        label_map = dict((str(k), int(v)) for k, v in label_map.items())
        entries[dataset_id] = DatasetEntry(
            dataset_id, os.path.join(base, spec['path']),
            spec['label_column'], label_map, spec.get('header', True),
            spec.get('delimiter', ','), tuple(spec.get('ignore_columns', ())))
    return Manifest(entries, path)


def derive_seed(*parts):
    """Returns a 64-bit seed derived from integer parts.

    The seed is the first 8 bytes (big-endian) of the SHA-256 digest
    of the decimal parts joined by ':'. It depends on nothing but the
    parts, so it is the same on every platform and run.

    """
    text = ':'.join(str(int(p)) for p in parts)
    digest = hashlib.sha256(text.encode('ascii')).digest()
    return int.from_bytes(digest[:8], 'big')


def _check_seed(seed):
    if int(seed) != seed or seed < 0:
        raise ValueError("seed must be a non-negative integer: %r" % seed)
    return int(seed)


def stratified_split(ds, train_fraction=0.8, seed=0):
    """Splits ds into a stratified train and test part.

    Each class is shuffled and floor(train_fraction * count) of its
    rows (but at least one, and at least one less than all) go to the
    train part, the rest to the test part. A ClassTooSmall is raised
    if a class has fewer than 2 rows.

    """
    seed = _check_seed(seed)
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    train = []
    test = []
    for k in range(ds.n_classes):
        idx = np.flatnonzero(ds.y == k)
        if idx.size < 2:
            raise ClassTooSmall(k, idx.size, 2)
        perm = rng.permutation(idx)
        n_train = int(math.floor(train_fraction * idx.size + 1e-9))
        n_train = min(max(n_train, 1), idx.size - 1)
        train.append(perm[:n_train])
        test.append(perm[n_train:])
    return SplitSpec(np.sort(np.concatenate(train)),
                     np.sort(np.concatenate(test)), seed)


def low_regime_sample(ds, n_per_class, trial, master_seed, pool=None,
                      test_rows=None):
    """Draws the training rows of one low training sample regime trial.

    Exactly n_per_class rows per class are drawn without replacement
    with a generator seeded by derive_seed(master_seed, n_per_class,
    trial). The test part is every row not drawn. A ClassTooSmall is
    raised if a class has no more than n_per_class candidate rows.

    Keyword arguments:
    pool -- restrict the draw to these rows (default: None, all rows)
    test_rows -- use these rows as test part instead of the
                 remainder (default: None)

    """
    if not 1 <= n_per_class <= LOW_REGIME_MAX_PER_CLASS:
        raise ValueError("n_per_class must lie in 1..%d: %r"
                         % (LOW_REGIME_MAX_PER_CLASS, n_per_class))
    if not 0 <= trial < LOW_REGIME_TRIALS:
        raise ValueError("trial must lie in 0..%d: %r"
                         % (LOW_REGIME_TRIALS - 1, trial))
    seed = derive_seed(_check_seed(master_seed), n_per_class, trial)
    rng = np.random.default_rng(seed)
    candidates = np.arange(ds.n_rows)
    if pool is not None:
        candidates = np.sort(np.asarray(pool, dtype=np.int64))
    train = []
    for k in range(ds.n_classes):
        idx = candidates[ds.y[candidates] == k]
        if idx.size <= n_per_class:
            raise ClassTooSmall(k, idx.size, n_per_class + 1)
        train.append(rng.choice(idx, size=n_per_class, replace=False))
    train = np.sort(np.concatenate(train))
    if test_rows is None:
        test = np.setdiff1d(np.arange(ds.n_rows), train)
    else:
        test = np.sort(np.asarray(test_rows, dtype=np.int64))
    return SplitSpec(train, test, seed)
