"""Provides the classification pipelines.

A pipeline turns a normalized attribute matrix into features (the CFX
matrix for the chaos based pipelines, the matrix itself otherwise) and
classifies test rows with a model trained on train rows.

"""

from collections import namedtuple

import numpy as np

from neurochaos import chaosnet, classifiers
from neurochaos.chaosfex import transform
from neurochaos.gls import ChaosConfig, DEFAULT_MAX_ITERATIONS, SKEW_TENT


__all__ = ['Pipeline', 'pipeline', 'PIPELINES', 'CHAOS_PARAMS',
           'chaos_config']

CHAOSNET = 'ChaosNet'
KNN = 'Knn'
GNB = 'Gnb'
CFX_KNN = 'CfxKnn'
CFX_GNB = 'CfxGnb'

ALIASES = {'RawKnn': KNN, 'RawGnb': GNB}

CHAOS_PARAMS = ('q', 'b', 'epsilon')


def chaos_config(params, map_kind=SKEW_TENT,
                 max_iterations=DEFAULT_MAX_ITERATIONS):
    """Returns the ChaosConfig described by params.

    params is a dict with (at least) the keys q, b and epsilon.
    A map_kind or max_iterations entry in params takes precedence
    over the keyword arguments.

    """
    return ChaosConfig(params['q'], params['b'], params['epsilon'],
                       params.get('map_kind', map_kind),
                       params.get('max_iterations', max_iterations))


def _chaosnet(train_F, train_y, test_F, params, n_classes):
    means = chaosnet.train(train_F, train_y, n_classes)
    return chaosnet.predict(test_F, means)


def _knn(train_F, train_y, test_F, params, n_classes):
    return classifiers.knn_predict(train_F, train_y, test_F, params['k'],
                                   n_classes)


def _gnb(train_F, train_y, test_F, params, n_classes):
    model = classifiers.gnb_fit(train_F, train_y, n_classes)
    return classifiers.gnb_predict(model, test_F)


class Pipeline(namedtuple('Pipeline', ['name', 'chaos', 'classifier_params',
                                       'classifier'])):
    """A feature stage plus a classifier.

    chaos is True if the features are the CFX matrix, classifier_params
    the names of the classifier's own hyperparameters.

    """
    __slots__ = ()

    @property
    def params(self):
        """Returns the names of all hyperparameters (in grid order)."""
        if self.chaos:
            return CHAOS_PARAMS + self.classifier_params
        return self.classifier_params

    def check_params(self, params):
        """Raises a ValueError if params lacks a hyperparameter."""
        missing = [p for p in self.params if p not in params]
        if missing:
            msg = ("pipeline %s requires the parameter(s) %s"
                   % (self.name, ', '.join(missing)))
            raise ValueError(msg)

    def features(self, X_norm, params, map_kind=SKEW_TENT,
                 max_iterations=DEFAULT_MAX_ITERATIONS, jobs=1):
        """Returns the feature matrix of the normalized matrix X_norm."""
        if not self.chaos:
            return np.asarray(X_norm, dtype=float)
        config = chaos_config(params, map_kind, max_iterations)
        return transform(X_norm, config, jobs=jobs)

    def classify(self, train_F, train_y, test_F, params, n_classes):
        """Trains on (train_F, train_y) and returns labels for test_F."""
        return self.classifier(train_F, train_y, test_F, params, n_classes)


PIPELINES = dict((p.name, p) for p in [
    Pipeline(CHAOSNET, True, (), _chaosnet),
    Pipeline(CFX_KNN, True, ('k', ), _knn),
    Pipeline(CFX_GNB, True, (), _gnb),
    Pipeline(KNN, False, ('k', ), _knn),
    Pipeline(GNB, False, (), _gnb),
])

ALGORITHMS = (CHAOSNET, KNN, GNB, CFX_KNN, CFX_GNB)

# the stand-alone counterpart of each hybrid
BASELINES = {CFX_KNN: KNN, CFX_GNB: GNB}


def pipeline(name):
    """Returns the Pipeline called name (aliases are resolved).

    A ValueError is raised for an unknown name.

    """
    name = ALIASES.get(name, name)
    if name not in PIPELINES:
        raise ValueError("unknown algorithm %r (known: %s)"
                         % (name, ', '.join(ALGORITHMS)))
    return PIPELINES[name]
