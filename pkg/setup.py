#!/usr/bin/python

import sys
import os
from setuptools import setup, Command


class BuildDocumentation(Command):
    """Writes the pydoc html documentation to docs/html."""

    description = 'generate the html documentation'
    user_options = []

    def initialize_options(self):
        pass

    def finalize_options(self):
        pass

    def run(self):
        from pydoc import writedoc
        # pydoc writes into the current directory
        olddir = os.getcwd()
        module_dir = os.path.dirname(os.path.abspath(__file__))
        sys.path.append(module_dir)
        html_dir = os.path.join(module_dir, 'docs', 'html')
        if not os.path.exists(html_dir):
            os.makedirs(html_dir)
        os.chdir(html_dir)
        try:
            writedoc('neurochaos')
            os.replace('neurochaos.html', 'index.html')
            modules = ('gls', 'chaosfex', 'chaosnet', 'classifiers',
                       'metrics', 'data', 'tuning', 'pipelines',
                       'experiment', 'presets', 'config', 'util.io')
            for mod in modules:
                writedoc('neurochaos.' + mod)
        finally:
            os.chdir(olddir)


setup(name='neurochaos',
      version='0.1.0',
      description='Neurochaos learning: chaotic feature extraction and '
                  'ChaosNet classification',
      long_description=('neurochaos transforms tabular data with chaotic '
                        'GLS neurons (ChaosFEX), classifies with ChaosNet '
                        'or with k-NN/Gaussian naive Bayes on the chaotic '
                        'features, and reproduces the high and low '
                        'training sample regime experiments with macro '
                        'F1 evaluation.'),
      packages=[
        'neurochaos', 'neurochaos.util', 'neurochaos.cli',
        'neurochaos.cli.run', 'neurochaos.cli.tune',
        'neurochaos.cli.compare', 'neurochaos.cli.summary',
        'neurochaos.cli.presets'
      ],
      package_data={'neurochaos': ['cli/*/*.jinja2']},
      test_suite='test.suite',
      entry_points={'console_scripts': ['nl = neurochaos.cli.cli:main']},
      license='GPL',
      cmdclass={'build_doc': BuildDocumentation},
      python_requires='>=3.8',
      install_requires=[
          'numpy',
          'scipy',
          'pandas',
          'scikit-learn',
          'jinja2'
      ],
      classifiers=['Programming Language :: Python :: 3'])
