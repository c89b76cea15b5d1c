import math
import unittest

import numpy as np

from neurochaos.classifiers import (knn_predict, gnb_fit, gnb_predict,
                                    gnb_log_posterior, KTooLarge)
from neurochaos.chaosfex import ShapeMismatch
from neurochaos.chaosnet import EmptyClass
from test.nltest import NlTestCase


def suite():
    return unittest.defaultTestLoader.loadTestsFromTestCase(TestClassifiers)


def brute_force_gnb(train_M, train_y, test_M, n_classes):
    train_M = np.asarray(train_M, dtype=float)
    largest = max(train_M[:, j].var() for j in range(train_M.shape[1]))
    smoothing = 1e-9 * largest if largest > 0 else 1e-9
    labels = []
    for x in test_M:
        best = None
        best_score = None
        for c in range(n_classes):
            rows = train_M[np.asarray(train_y) == c]
            score = math.log(rows.shape[0] / train_M.shape[0])
            for j, v in enumerate(x):
                mean = rows[:, j].mean()
                var = max(rows[:, j].var(), smoothing)
                score += (-0.5 * math.log(2 * math.pi * var)
                          - (v - mean) ** 2 / (2 * var))
            if best is None or score > best_score:
                best, best_score = c, score
        labels.append(best)
    return labels


class TestClassifiers(NlTestCase):
    def test_knn1(self):
        """test k=1 on a training point"""
        train = [[0.0, 0.0], [1.0, 1.0], [5.0, 5.0]]
        pred = knn_predict(train, [0, 1, 2], [[1.0, 1.0], [5.0, 5.0]], 1)
        self.assertEqual(pred.tolist(), [1, 2])

    def test_knn2(self):
        """test k=3 in 1D"""
        pred = knn_predict([[0.0], [1.0], [10.0]], [0, 0, 1], [[0.4]], 3)
        self.assertEqual(pred.tolist(), [0])

    def test_knn3(self):
        """test tied votes go to the lowest class"""
        pred = knn_predict([[0.0], [1.0]], [1, 0], [[0.4]], 2)
        self.assertEqual(pred.tolist(), [0])

    def test_knn4(self):
        """test k equal to the number of training rows"""
        rng = np.random.default_rng(29)
        train = rng.random((7, 2))
        y = [2, 1, 1, 0, 2, 1, 0]
        pred = knn_predict(train, y, rng.random((10, 2)), 7)
        self.assertEqual(pred.tolist(), [1] * 10)
        # 2 vs 2: lowest class
        pred = knn_predict(train[:4], [1, 0, 1, 0], rng.random((3, 2)), 4)
        self.assertEqual(pred.tolist(), [0] * 3)

    def test_knn5(self):
        """test errors"""
        self.assertRaises(KTooLarge, knn_predict, [[0.0]], [0], [[0.0]], 2)
        self.assertRaises(ValueError, knn_predict, [[0.0]], [0], [[0.0]], 0)
        self.assertRaises(ShapeMismatch, knn_predict, [[0.0]], [0],
                          [[0.0, 1.0]], 1)
        pred = knn_predict([[0.0]], [0], np.zeros((0, 1)), 1)
        self.assertEqual(pred.size, 0)

    def test_knn6(self):
        """test n_classes beyond the training labels"""
        pred = knn_predict([[0.0], [1.0]], [3, 3], [[0.2]], 1, n_classes=5)
        self.assertEqual(pred.tolist(), [3])

    def test_gnb1(self):
        """test well separated clusters"""
        rng = np.random.default_rng(31)
        train = np.concatenate([rng.normal(0.0, 0.1, (20, 1)),
                                rng.normal(10.0, 0.1, (20, 1))])
        y = [0] * 20 + [1] * 20
        model = gnb_fit(train, y)
        pred = gnb_predict(model, [[-1.0], [2.0], [8.0], [12.0]])
        self.assertEqual(pred.tolist(), [0, 0, 1, 1])

    def test_gnb2(self):
        """test against a brute force log density"""
        rng = np.random.default_rng(37)
        train = np.concatenate([rng.normal(0.0, 1.0, (15, 3)),
                                rng.normal(1.5, 2.0, (15, 3))])
        y = [0] * 15 + [1] * 15
        test = rng.normal(0.7, 2.0, (30, 3))
        model = gnb_fit(train, y)
        self.assertEqual(gnb_predict(model, test).tolist(),
                         brute_force_gnb(train, y, test, 2))

    def test_gnb3(self):
        """test variance smoothing"""
        train = [[1.0, 0.0], [1.0, 2.0], [1.0, 4.0], [1.0, 6.0]]
        model = gnb_fit(train, [0, 0, 1, 1])
        # largest feature variance is 5.0 (feature 1)
        self.assertAlmostEqual(model.smoothing, 5e-9, places=20)
        self.assertArrayEqual(model.variances[:, 0],
                              [model.smoothing, model.smoothing])
        self.assertArrayEqual(model.variances[:, 1], [1.0, 1.0])
        self.assertArrayEqual(model.priors, [0.5, 0.5])
        model = gnb_fit([[2.0], [2.0]], [0, 1])
        self.assertEqual(model.smoothing, 1e-9)
        scores = gnb_log_posterior(model, [[2.0]])
        self.assertTrue(np.isfinite(scores).all())
        # equal scores: lowest class
        self.assertEqual(gnb_predict(model, [[2.0]]).tolist(), [0])

    def test_gnb4(self):
        """test errors"""
        self.assertRaises(EmptyClass, gnb_fit, [[0.0], [1.0]], [0, 2])
        model = gnb_fit([[0.0], [1.0]], [0, 1])
        self.assertRaises(ShapeMismatch, gnb_predict, model, [[0.0, 1.0]])
        self.assertEqual(gnb_predict(model, np.zeros((0, 1))).size, 0)


if __name__ == '__main__':
    unittest.main()
