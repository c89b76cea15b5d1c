import os
import shutil
import tempfile
import unittest

import numpy as np
from sklearn import datasets


class NlTestCase(unittest.TestCase):
    """Base class for all neurochaos related test cases.

    If a fixtures_dir is passed to the constructor, its contents are
    copied to a fresh temporary directory before each test; files
    written by a test go to that directory as well.

    """

    def __init__(self, *args, **kwargs):
        dirname = os.path.dirname(__file__)
        fixtures_dir = kwargs.pop('fixtures_dir', None)
        self._fixtures_dir = None
        if fixtures_dir is not None:
            self._fixtures_dir = os.path.join(dirname, fixtures_dir)
        self._tmp_dir = None
        super(NlTestCase, self).__init__(*args, **kwargs)

    def setUp(self):
        super(NlTestCase, self).setUp()
        self._tmp_dir = tempfile.mkdtemp(prefix='nl_test')
        self._tmp_fixtures = os.path.join(self._tmp_dir, 'fixtures')
        if self._fixtures_dir is not None:
            shutil.copytree(self._fixtures_dir, self._tmp_fixtures)
        else:
            os.mkdir(self._tmp_fixtures)

    def tearDown(self):
        super(NlTestCase, self).tearDown()
        shutil.rmtree(self._tmp_dir)

    def fixture_file(self, *paths):
        path = os.path.join(self._tmp_fixtures, *paths)
        return os.path.abspath(path)

    def tmp_file(self, name):
        """Returns the path of name in the test's temporary directory."""
        return os.path.join(self._tmp_dir, name)

    def assertArrayEqual(self, x, y):
        x = np.asarray(x)
        y = np.asarray(y)
        self.assertEqual(x.shape, y.shape)
        self.assertTrue(np.array_equal(x, y), "%r != %r" % (x, y))

    def assertArrayAlmostEqual(self, x, y, atol=1e-12):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        self.assertEqual(x.shape, y.shape)
        self.assertTrue(np.allclose(x, y, rtol=0.0, atol=atol),
                        "%r != %r" % (x, y))


def load_sklearn(name):
    """Returns the (X, y) pair of a scikit-learn toy dataset."""
    loader = getattr(datasets, 'load_' + name)
    bunch = loader()
    return np.asarray(bunch.data, dtype=float), np.asarray(bunch.target)
