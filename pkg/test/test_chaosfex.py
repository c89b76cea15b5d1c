import unittest

import numpy as np

from neurochaos.chaosfex import (normalize_fit, normalize_apply, transform,
                                 export_csv, import_csv, feature_names,
                                 drop_attributes, ShapeMismatch,
                                 ConstantAttribute, WHOLE, TRAIN)
from neurochaos.data import DataError
from neurochaos.gls import ChaosConfig, NonConvergence, fire, extract_features
from test.nltest import NlTestCase, load_sklearn


def suite():
    return unittest.defaultTestLoader.loadTestsFromTestCase(TestChaosFex)


class TestChaosFex(NlTestCase):
    def test_normalize1(self):
        """test whole dataset normalization"""
        X = [[1.0, 10.0], [3.0, 20.0], [5.0, 30.0]]
        params = normalize_fit(X)
        self.assertArrayEqual(params.minimum, [1.0, 10.0])
        self.assertArrayEqual(params.maximum, [5.0, 30.0])
        norm = normalize_apply(X, params)
        self.assertArrayEqual(norm, [[0.0, 0.0], [0.5, 0.5], [1.0, 1.0]])

    def test_normalize2(self):
        """test train only normalization clamps"""
        X = np.array([[1.0], [5.0], [7.0], [-1.0]])
        params = normalize_fit(X, TRAIN, [0, 1])
        self.assertArrayEqual(params.minimum, [1.0])
        self.assertArrayEqual(params.maximum, [5.0])
        norm = normalize_apply(X, params)
        self.assertArrayEqual(norm, [[0.0], [1.0], [1.0], [0.0]])
        self.assertRaises(ValueError, normalize_fit, X, TRAIN)
        self.assertRaises(ValueError, normalize_fit, X, 'zscore')

    def test_normalize3(self):
        """test constant attributes"""
        X = [[2.0, 1.0, 4.0], [2.0, 3.0, 4.0], [2.0, 5.0, 4.0]]
        with self.assertRaises(ConstantAttribute) as cm:
            normalize_fit(X)
        self.assertEqual(cm.exception.attributes, [0, 2])
        self.assertTrue(isinstance(cm.exception, DataError))
        # constant on the train rows only
        self.assertRaises(ConstantAttribute, normalize_fit,
                          [[1.0], [1.0], [2.0]], TRAIN, [0, 1])

    def test_normalize4(self):
        """test shape mismatch"""
        params = normalize_fit([[1.0, 2.0], [3.0, 4.0]])
        self.assertRaises(ShapeMismatch, normalize_apply, [[1.0]], params)

    def test_normalize5(self):
        """test the Iris attributes span [0, 1]"""
        X, _ = load_sklearn('iris')
        norm = normalize_apply(X, normalize_fit(X, WHOLE))
        self.assertArrayEqual(norm.min(axis=0), np.zeros(4))
        self.assertArrayEqual(norm.max(axis=0), np.ones(4))

    def test_transform1(self):
        """test a single cell"""
        config = ChaosConfig(0.1, 0.5, 0.05)
        M = transform([[0.4]], config)
        self.assertEqual(M.shape, (1, 4))
        self.assertArrayAlmostEqual(M, [[2.0, 0.0, 0.2, 0.0]], atol=1e-15)

    def test_transform2(self):
        """test the column layout"""
        config = ChaosConfig(0.3, 0.5, 0.1)
        M = transform([[0.4, 0.85], [0.85, 0.3]], config)
        self.assertEqual(M.shape, (2, 8))
        for i, row in enumerate([[0.4, 0.85], [0.85, 0.3]]):
            for k, stimulus in enumerate(row):
                feat = extract_features(fire(stimulus, config), config)
                self.assertArrayAlmostEqual(M[i, 4 * k:4 * k + 4], feat)
        # (0.85) is recognized at N=2 with both states >= b
        self.assertArrayAlmostEqual(M[0, 4:8], [2.0, 1.0, 1.0, 0.0])
        # 0.3 equals q
        self.assertArrayEqual(M[1, 4:8], [0.0, 0.0, 0.0, 0.0])

    def test_transform3(self):
        """test empty input"""
        config = ChaosConfig(0.1, 0.5, 0.05)
        M = transform(np.zeros((0, 3)), config)
        self.assertEqual(M.shape, (0, 12))
        self.assertRaises(ShapeMismatch, transform, [0.1, 0.2], config)

    def test_transform4(self):
        """test worker processes yield the same matrix"""
        rng = np.random.default_rng(5)
        X = rng.random((37, 5))
        config = ChaosConfig(0.141, 0.499, 0.147)
        self.assertArrayEqual(transform(X, config, jobs=3),
                              transform(X, config))

    def test_transform5(self):
        """test non-convergence carries the cell"""
        config = ChaosConfig(0.25, 0.5, 0.01, max_iterations=500)
        X = [[0.25, 0.25], [0.25, 0.7]]
        with self.assertRaises(NonConvergence) as cm:
            transform(X, config)
        self.assertEqual(cm.exception.row, 1)
        self.assertEqual(cm.exception.attribute, 1)
        with self.assertRaises(NonConvergence) as cm:
            transform(X, config, jobs=2)
        self.assertEqual(cm.exception.row, 1)
        self.assertEqual(cm.exception.attribute, 1)

    def test_transform6(self):
        """test row independence"""
        rng = np.random.default_rng(8)
        X = rng.random((10, 3))
        config = ChaosConfig(0.5, 0.3, 0.2)
        M = transform(X, config)
        self.assertArrayEqual(transform(X[3:4], config), M[3:4])
        # the row order does not matter
        perm = rng.permutation(X.shape[0])
        permuted = transform(X[perm], config)
        restored = np.empty_like(permuted)
        restored[perm] = permuted
        self.assertEqual(restored.tobytes(), M.tobytes())
        self.assertEqual(restored.dtype, M.dtype)

    def test_feature_names(self):
        """test feature names"""
        self.assertEqual(feature_names(2),
                         ['f0_N', 'f0_R', 'f0_E', 'f0_H',
                          'f1_N', 'f1_R', 'f1_E', 'f1_H'])
        self.assertEqual(feature_names(0), [])

    def test_drop_attributes(self):
        """test dropping attribute columns"""
        X = np.arange(12.0).reshape(3, 4)
        self.assertArrayEqual(drop_attributes(X, [1, 3]), X[:, [0, 2]])
        self.assertArrayEqual(drop_attributes(X, []), X)

    def test_export1(self):
        """test export and import restore the matrix bit for bit"""
        rng = np.random.default_rng(13)
        X = rng.random((25, 3))
        config = ChaosConfig(0.141, 0.499, 0.147)
        M = transform(X, config)
        y = rng.integers(0, 3, 25)
        path = self.tmp_file('cfx.csv')
        export_csv(M, y, path)
        with open(path) as f:
            self.assertEqual(f.readline().strip(),
                             ','.join(feature_names(3) + ['label']))
        M2, y2 = import_csv(path)
        self.assertArrayEqual(M2, M)
        self.assertArrayEqual(y2, y)

    def test_export2(self):
        """test export of the Iris CFX matrix"""
        X, y = load_sklearn('iris')
        norm = normalize_apply(X, normalize_fit(X))
        M = transform(norm, ChaosConfig(0.141, 0.499, 0.147))
        path = self.tmp_file('iris_cfx.csv')
        export_csv(M, y, path)
        M2, y2 = import_csv(path)
        self.assertEqual(M2.tobytes(), M.tobytes())
        self.assertArrayEqual(y2, y)

    def test_export3(self):
        """test export errors"""
        path = self.tmp_file('bad.csv')
        self.assertRaises(ShapeMismatch, export_csv, np.zeros((2, 3)),
                          [0, 1], path)
        self.assertRaises(ShapeMismatch, export_csv, np.zeros((2, 4)),
                          [0], path)
        with open(path, 'w') as f:
            f.write('a,b,label\n1,2,0\n')
        self.assertRaises(DataError, import_csv, path)
        with open(path, 'w') as f:
            f.write('')
        self.assertRaises(DataError, import_csv, path)

    def test_export4(self):
        """test export of an empty matrix"""
        path = self.tmp_file('empty.csv')
        export_csv(np.zeros((0, 4)), np.zeros(0, dtype=int), path)
        M, y = import_csv(path)
        self.assertEqual(M.shape, (0, 4))
        self.assertEqual(y.size, 0)


if __name__ == '__main__':
    unittest.main()
