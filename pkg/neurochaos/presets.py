"""Catalog of the benchmark datasets.

For each dataset the catalog knows how raw labels are recoded, the
expected shape, the reference per-class train/test counts of the high
training sample regime, and hyperparameters known to work well for
ChaosNet and for the k-NN pipelines.

"""

from collections import namedtuple


__all__ = ['Preset', 'PRESETS', 'preset', 'chaos_params', 'knn_params']


Preset = namedtuple('Preset', ['dataset_id', 'name', 'label_map',
                               'n_attributes', 'n_classes', 'n_rows',
                               'train_counts', 'test_counts', 'chaosnet',
                               'chaosnet_f1', 'knn_k', 'cfx_knn'])


def _codes(*labels):
    return dict((label, i) for i, label in enumerate(labels))


def _with_aliases(label_map, aliases):
    ret = dict(label_map)
    for alias, label in aliases.items():
        ret[alias] = label_map[label]
    return ret


def _chaos(q, b, epsilon):
    return {'q': q, 'b': b, 'epsilon': epsilon}


def _cfx_knn(k, q, b, epsilon):
    params = _chaos(q, b, epsilon)
    params['k'] = k
    return params


_IRIS_LABELS = _with_aliases(
    _codes('Iris-setosa', 'Iris-versicolor', 'Iris-virginica'),
    {'setosa': 'Iris-setosa', 'versicolor': 'Iris-versicolor',
     'virginica': 'Iris-virginica'})

_SEEDS_LABELS = _with_aliases(_codes('1', '2', '3'),
                              {'1.0': '1', '2.0': '2', '3.0': '3'})

PRESETS = dict((p.dataset_id, p) for p in [
    Preset('iris', 'Iris', _IRIS_LABELS, 4, 3, 150,
           (40, 41, 39), (10, 9, 11),
           _chaos(0.141, 0.499, 0.147), 1.000,
           5, _cfx_knn(1, 0.21, 0.969, 0.12)),
    Preset('ionosphere', 'Ionosphere', _codes('b', 'g'), 34, 2, 351,
           (98, 182), (28, 43),
           _chaos(0.680, 0.969, 0.164), 0.860,
           1, _cfx_knn(1, 0.21, 0.969, 0.11)),
    Preset('wine', 'Wine', _codes('1', '2', '3'), 13, 3, 178,
           (45, 57, 40), (14, 14, 8),
           _chaos(0.790, 0.499, 0.262), 0.976,
           5, _cfx_knn(1, 0.21, 0.969, 0.10)),
    Preset('banknote', 'Bank Note Authentication', _codes('0', '1'), 4, 2,
           1372, (614, 483), (148, 127),
           _chaos(0.080, 0.250, 0.233), 0.845,
           5, _cfx_knn(3, 0.080, 0.250, 0.233)),
    Preset('haberman', "Haberman's Survival", _codes('1', '2'), 3, 2, 306,
           (181, 63), (44, 18),
           _chaos(0.810, 0.140, 0.003), 0.560,
           1, _cfx_knn(5, 0.81, 0.14, 0.003)),
    Preset('breast_cancer', 'Breast Cancer Wisconsin', _codes('M', 'B'), 30,
           2, 569, (169, 286), (43, 71),
           _chaos(0.930, 0.490, 0.159), 0.927,
           5, _cfx_knn(1, 0.930, 0.490, 0.159)),
    Preset('statlog_heart', 'Statlog (Heart)', _codes('1', '2'), 13, 2, 270,
           (117, 99), (33, 21),
           _chaos(0.080, 0.060, 0.170), 0.738,
           5, _cfx_knn(5, 0.08, 0.06, 0.17)),
    Preset('seeds', 'Seeds', _SEEDS_LABELS, 7, 3, 210,
           (59, 56, 53), (11, 14, 17),
           _chaos(0.020, 0.070, 0.238), 0.845,
           5, _cfx_knn(1, 0.020, 0.070, 0.238)),
    Preset('fsdd', 'Free Spoken Digit Dataset',
           _codes(*[str(d) for d in range(10)]), 3005, 10, 480,
           (40, 35, 44, 42, 38, 34, 37, 44, 33, 37),
           (10, 15, 6, 8, 8, 7, 13, 6, 10, 13),
           _chaos(0.340, 0.499, 0.178), 0.897,
           1, _cfx_knn(1, 0.340, 0.499, 0.178)),
])


def preset(dataset_id):
    """Returns the Preset for dataset_id or None."""
    return PRESETS.get(dataset_id)


def chaos_params(dataset_id):
    """Returns a copy of the ChaosNet (q, b, epsilon) dict or None."""
    p = preset(dataset_id)
    if p is None:
        return None
    return dict(p.chaosnet)


def knn_params(dataset_id, cfx=False):
    """Returns the k-NN params of dataset_id or None.

    Keyword arguments:
    cfx -- if True, the params of the CFX+k-NN pipeline (k, q, b,
           epsilon) are returned (default: False, that is {'k': k})

    """
    p = preset(dataset_id)
    if p is None:
        return None
    if cfx:
        return dict(p.cfx_knn)
    return {'k': p.knn_k}
