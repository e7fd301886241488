#!/usr/bin/env python

from setuptools import setup, find_packages

setup(name='multcorr',
      version='1.0.0',
      description='Numerical experiments on correlations of multiplicative functions '
                  'and the largest prime factors of consecutive integers',
      packages=find_packages(exclude=["docs"]),
      package_data={'multcorr': ['schemas/*.json']},
      python_requires='>=3.8',
      install_requires=['numpy>=1.20',
                        'scipy'],
      extras_require={'test': ['jsonschema']},

      entry_points = {
            'console_scripts': [
                'multcorr = bin.command_line_scripts:main',
                'multcorr-experiment = bin.command_line_scripts:main_experiment',
            ]
      }
     )
