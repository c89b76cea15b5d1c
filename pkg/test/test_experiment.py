import os
import csv
import json
import unittest

import numpy as np

from neurochaos import presets
from neurochaos.chaosfex import ConstantAttribute, TRAIN
from neurochaos.data import LabeledDataset, load_manifest
from neurochaos.experiment import (ExperimentRunner, ExperimentListener,
                                   ExperimentResult, Settings, Mismatch,
                                   compare, summarize, baseline_of,
                                   write_results, read_results,
                                   write_summary_csv, ABORT, SCHEMA_VERSION)
from neurochaos.tuning import Grid
from test.nltest import NlTestCase, load_sklearn


def suite():
    return unittest.defaultTestLoader.loadTestsFromTestCase(TestExperiment)


def separable(rows_per_class=20, seed=0):
    rng = np.random.default_rng(seed)
    y = np.repeat([0, 1], rows_per_class)
    X = np.empty((y.size, 2))
    X[:, 0] = np.where(y == 0, rng.uniform(0.0, 2.0, y.size),
                       rng.uniform(8.0, 10.0, y.size))
    X[:, 1] = X[:, 0] + rng.uniform(0.0, 0.5, y.size)
    return LabeledDataset(X, y, 2, ['a', 'b'], 'separable')


def result(algorithm, mean_f1, n_per_class=None, regime='high', seed=0,
           dataset='toy'):
    return ExperimentResult(dataset, algorithm, regime, n_per_class, mean_f1,
                            (), {}, seed, 'whole', False, 10, 5, (), None)


class Recorder(object):
    def __init__(self):
        self.events = []

    def begin_experiment(self, dataset, algorithm, regime, n_per_class):
        self.events.append(('begin', algorithm, regime, n_per_class))

    def trial_done(self, n_per_class, trial, f1):
        self.events.append(('trial', n_per_class, trial))

    def end_experiment(self, result):
        self.events.append(('end', result.algorithm))


def median_f1(ds, algorithm, params, seeds=range(10)):
    scores = []
    for seed in seeds:
        runner = ExperimentRunner(Settings(seed=seed))
        scores.append(runner.run_high(ds, algorithm, params).mean_f1)
    return scores, float(np.median(scores))


class TestExperiment(NlTestCase):
    def test_settings1(self):
        """test settings validation"""
        settings = Settings()
        self.assertEqual(settings.seed, 0)
        self.assertEqual(settings.normalization, 'whole')
        self.assertEqual(settings.replace(seed=3).seed, 3)
        self.assertRaises(ValueError, Settings, seed=-1)
        self.assertRaises(ValueError, Settings, jobs=0)
        self.assertRaises(ValueError, Settings, normalization='zscore')
        self.assertRaises(ValueError, Settings, constant_attributes='keep')

    def test_high1(self):
        """test high regime result"""
        ds = separable()
        listener = Recorder()
        runner = ExperimentRunner(Settings(seed=5), [listener])
        res = runner.run_high(ds, 'Knn', {'k': 1})
        self.assertEqual(res.algorithm, 'Knn')
        self.assertEqual(res.regime, 'high')
        self.assertIsNone(res.n_per_class)
        self.assertEqual(res.trial_f1, ())
        self.assertEqual(res.train_size, 32)
        self.assertEqual(res.test_size, 8)
        self.assertEqual(res.seed, 5)
        self.assertEqual(res.params, {'k': 1})
        self.assertIsNone(res.wall_clock_seconds)
        self.assertEqual(res.mean_f1, 1.0)
        self.assertEqual(listener.events, [('begin', 'Knn', 'high', None),
                                           ('end', 'Knn')])

    def test_listener1(self):
        """test partial listeners"""
        class EndOnly(ExperimentListener):
            def __init__(self):
                self.results = []

            def end_experiment(self, result):
                self.results.append(result)

        end_only = EndOnly()
        runner = ExperimentRunner(Settings(seed=5), [object(), end_only,
                                                     ExperimentListener()])
        res = runner.run_high(separable(), 'Gnb')
        self.assertEqual(end_only.results, [res])
        self.assertEqual(ExperimentRunner().listener, [])

    def test_high2(self):
        """test params and aliases"""
        ds = separable()
        runner = ExperimentRunner(Settings(k=3))
        res = runner.run_high(ds, 'RawKnn')
        self.assertEqual(res.algorithm, 'Knn')
        self.assertEqual(res.params, {'k': 3})
        res = runner.run_high(ds, 'ChaosNet', {'q': 0.141, 'b': 0.499,
                                               'epsilon': 0.147})
        self.assertEqual(res.params['map_kind'], 'skew_tent')
        self.assertEqual(res.params['max_iterations'], 100000)
        self.assertRaises(ValueError, runner.run_high, ds, 'ChaosNet',
                          {'q': 0.1})
        self.assertRaises(ValueError, runner.run_high, ds, 'Svm')

    def test_high3(self):
        """test determinism and the shared split"""
        ds = separable(seed=3)
        params = {'q': 0.141, 'b': 0.499, 'epsilon': 0.147, 'k': 1}
        runner = ExperimentRunner(Settings(seed=11))
        a = runner.run_high(ds, 'CfxKnn', params)
        b = ExperimentRunner(Settings(seed=11, jobs=2)).run_high(ds, 'CfxKnn',
                                                                 params)
        self.assertEqual(a.mean_f1, b.mean_f1)
        split = runner.high_split(ds)
        self.assertArrayEqual(split.train,
                              ExperimentRunner(Settings(seed=11))
                              .high_split(ds).train)

    def test_constant1(self):
        """test constant attributes are dropped"""
        X = np.column_stack([np.full(20, 3.0), separable(10).X])
        ds = LabeledDataset(X, np.repeat([0, 1], 10), 2)
        res = ExperimentRunner().run_high(ds, 'Gnb')
        self.assertEqual(res.dropped_attributes, (0, ))
        runner = ExperimentRunner(Settings(constant_attributes=ABORT))
        self.assertRaises(ConstantAttribute, runner.run_high, ds, 'Gnb')
        ds = LabeledDataset(np.ones((6, 2)), [0, 0, 0, 1, 1, 1], 2)
        self.assertRaises(ConstantAttribute, ExperimentRunner().run_high,
                          ds, 'Gnb')

    def test_low1(self):
        """test low regime trials"""
        ds = separable()
        listener = Recorder()
        runner = ExperimentRunner(Settings(seed=1), [listener])
        res = runner.run_low(ds, 'Knn', {'k': 1}, 3)
        self.assertEqual(res.regime, 'low')
        self.assertEqual(res.n_per_class, 3)
        self.assertEqual(len(res.trial_f1), 150)
        self.assertAlmostEqual(res.mean_f1, float(np.mean(res.trial_f1)),
                               places=15)
        self.assertEqual(res.train_size, 6)
        self.assertEqual(res.test_size, 34)
        trials = [e[2] for e in listener.events if e[0] == 'trial']
        self.assertEqual(trials, list(range(150)))
        self.assertEqual(listener.events[0], ('begin', 'Knn', 'low', 3))

    def test_low2(self):
        """test worker processes yield identical trials"""
        ds = separable(seed=4)
        params = {'q': 0.141, 'b': 0.499, 'epsilon': 0.147}
        a = ExperimentRunner(Settings(seed=2)).run_low(ds, 'ChaosNet',
                                                       params, 2)
        b = ExperimentRunner(Settings(seed=2, jobs=3)).run_low(ds,
                                                               'ChaosNet',
                                                               params, 2)
        self.assertEqual(a.trial_f1, b.trial_f1)
        self.assertEqual(a, b)

    def test_low3(self):
        """test k is capped and holdout test"""
        ds = separable()
        runner = ExperimentRunner(Settings(holdout_test=True))
        res = runner.run_low(ds, 'Knn', {'k': 5}, 1)
        self.assertEqual(res.params['k'], 2)
        self.assertEqual(res.test_size, 8)
        self.assertTrue(res.holdout_test)
        self.assertRaises(ValueError, runner.run_low, ds, 'Knn', {'k': 1}, 10)

    def test_low4(self):
        """test train only normalization"""
        ds = separable()
        settings = Settings(normalization=TRAIN, seed=6)
        res = ExperimentRunner(settings).run_low(ds, 'Gnb', {}, 2)
        self.assertEqual(res.normalization, 'train')
        self.assertEqual(len(res.trial_f1), 150)

    def test_tune1(self):
        """test tuning on the high regime train split"""
        ds = separable()
        runner = ExperimentRunner(Settings(seed=0))
        grid = Grid({'q': [0.141], 'b': [0.499], 'epsilon': [0.147, 0.2],
                     'k': [1, 3]})
        stages = runner.tune(ds, 'CfxKnn', grid)
        self.assertEqual([s.pipeline for s in stages], ['ChaosNet', 'CfxKnn'])
        joint = runner.tune(ds, 'CfxKnn', grid, staged=False)
        self.assertEqual(len(joint), 1)
        self.assertEqual(len(joint[0].trace), 4)
        self.assertEqual(runner.tuning_set(ds).n_rows, 32)

    def test_cfx_matrix(self):
        """test the CFX matrix of all rows"""
        ds = separable()
        M = ExperimentRunner().cfx_matrix(ds, {'q': 0.141, 'b': 0.499,
                                               'epsilon': 0.147})
        self.assertEqual(M.shape, (40, 8))

    def test_compare1(self):
        """test boost reports"""
        report = compare(result('CfxKnn', 0.7), result('Knn', 0.7))
        self.assertEqual(report.minimum, 0.0)
        self.assertEqual(report.maximum, 0.0)
        hybrid = [result('CfxKnn', 0.6, n, 'low') for n in range(1, 10)]
        base = [result('Knn', 0.5, n, 'low') for n in range(1, 10)]
        report = compare(hybrid, base)
        self.assertEqual(len(report.entries), 9)
        self.assertAlmostEqual(report.minimum, 20.0, places=10)
        self.assertAlmostEqual(report.maximum, 20.0, places=10)
        self.assertEqual(report.hybrid, 'CfxKnn')
        self.assertEqual(report.baseline, 'Knn')

    def test_compare2(self):
        """test hand chosen means"""
        hybrid = [result('CfxGnb', 0.55, 1, 'low'),
                  result('CfxGnb', 0.9, 2, 'low')]
        base = [result('Gnb', 0.5, 2, 'low'), result('Gnb', 0.5, 1, 'low')]
        report = compare(hybrid, base)
        self.assertEqual([e.n_per_class for e in report.entries], [1, 2])
        self.assertAlmostEqual(report.minimum, 10.0, places=10)
        self.assertAlmostEqual(report.maximum, 80.0, places=10)

    def test_compare3(self):
        """test provenance mismatches"""
        with self.assertRaises(Mismatch) as cm:
            compare(result('CfxKnn', 0.6, seed=1), result('Knn', 0.5))
        self.assertEqual(cm.exception.field, 'seed')
        self.assertRaises(Mismatch, compare,
                          result('CfxKnn', 0.6, dataset='wine'),
                          result('Knn', 0.5))
        self.assertRaises(Mismatch, compare,
                          [result('CfxKnn', 0.6, 1, 'low')],
                          [result('Knn', 0.5, 2, 'low')])
        self.assertRaises(ValueError, compare, [], [result('Knn', 0.5)])

    def test_baseline_of(self):
        """test baselines"""
        self.assertEqual(baseline_of('CfxKnn'), 'Knn')
        self.assertEqual(baseline_of('CfxGnb'), 'Gnb')
        self.assertIsNone(baseline_of('ChaosNet'))

    def test_results1(self):
        """test JSON result documents"""
        ds = separable()
        runner = ExperimentRunner(Settings(seed=3))
        results = [runner.run_high(ds, 'Gnb'),
                   runner.run_low(ds, 'Knn', {'k': 1}, 1)]
        path = self.tmp_file('results.json')
        write_results(results, path)
        with open(path) as f:
            doc = json.load(f)
        self.assertEqual(doc['schema_version'], SCHEMA_VERSION)
        self.assertFalse('wall_clock_seconds' in doc['results'][0])
        self.assertEqual(read_results(path), results)
        # deterministic bytes
        other = self.tmp_file('again.json')
        write_results([ExperimentRunner(Settings(seed=3)).run_high(ds, 'Gnb'),
                       ExperimentRunner(Settings(seed=3)).run_low(
                           ds, 'Knn', {'k': 1}, 1)], other)
        with open(path, 'rb') as f, open(other, 'rb') as g:
            self.assertEqual(f.read(), g.read())

    def test_results2(self):
        """test timing and schema errors"""
        ds = separable()
        res = ExperimentRunner(Settings(timing=True)).run_high(ds, 'Gnb')
        self.assertTrue(res.wall_clock_seconds >= 0.0)
        self.assertTrue('wall_clock_seconds' in res.as_dict())
        path = self.tmp_file('results.json')
        with open(path, 'w') as f:
            json.dump({'schema_version': 99, 'results': []}, f)
        self.assertRaises(ValueError, read_results, path)

    def test_summary1(self):
        """test CSV summary and consistency"""
        results = [result('ChaosNet', 0.9), result('ChaosNet', 0.6),
                   result('Knn', 0.8), result('Knn', 0.3, 1, 'low')]
        self.assertEqual(summarize(results), [('ChaosNet', 0.6, 0.9),
                                              ('Knn', 0.8, 0.8)])
        path = self.tmp_file('summary.csv')
        write_summary_csv(results, path)
        with open(path, newline='') as f:
            rows = list(csv.reader(f))
        self.assertEqual(rows[0], ['dataset', 'algo', 'regime', 'n',
                                   'mean_f1', 'seed'])
        self.assertEqual(rows[1], ['toy', 'ChaosNet', 'high', '', '0.9', '0'])
        self.assertEqual(rows[4], ['toy', 'Knn', 'low', '1', '0.3', '0'])

    def test_iris(self):
        """test ChaosNet on Iris"""
        X, y = load_sklearn('iris')
        ds = LabeledDataset(X, y, 3, dataset_id='iris')
        scores, _ = median_f1(ds, 'ChaosNet', presets.chaos_params('iris'))
        self.assertTrue(len([s for s in scores if s >= 0.95]) >= 8,
                        scores)

    def test_wine(self):
        """test ChaosNet on Wine"""
        X, y = load_sklearn('wine')
        ds = LabeledDataset(X, y, 3, dataset_id='wine')
        scores, median = median_f1(ds, 'ChaosNet',
                                   presets.chaos_params('wine'))
        self.assertTrue(abs(median - 0.976) <= 0.06, scores)

    def _manifest(self, dataset_id):
        data_dir = os.environ.get('NL_DATA_DIR')
        path = os.path.join(data_dir or '', 'manifest.json')
        if not data_dir or not os.path.exists(path):
            raise unittest.SkipTest('NL_DATA_DIR/manifest.json not found')
        manifest = load_manifest(path)
        if dataset_id not in manifest:
            raise unittest.SkipTest("%s not in %s" % (dataset_id, path))
        return manifest.load(dataset_id)

    def test_haberman1(self):
        """test ChaosNet on Haberman's Survival"""
        ds = self._manifest('haberman')
        scores, median = median_f1(ds, 'ChaosNet',
                                   presets.chaos_params('haberman'))
        self.assertTrue(abs(median - 0.560) <= 0.12, scores)

    def test_haberman2(self):
        """test CFX features boost k-NN in the low regime"""
        ds = self._manifest('haberman')
        runner = ExperimentRunner(Settings(jobs=os.cpu_count() or 1))
        params = presets.knn_params('haberman', cfx=True)
        boosted = 0
        for n in range(1, 10):
            hybrid = runner.run_low(ds, 'CfxKnn', params, n)
            raw = runner.run_low(ds, 'RawKnn', {'k': params['k']}, n)
            if hybrid.mean_f1 > raw.mean_f1:
                boosted += 1
        self.assertTrue(boosted >= 5, boosted)


if __name__ == '__main__':
    unittest.main()
