r"""
setup.py

RUNNING TESTS
=============
Run tests with:

    nose2 -v

or, with coverage:

    nose2 -v --with-coverage

Full-size tests (calibrated 50-slice scenarios checked against the
reference solver and the fairness properties) run when
SLICEMARKET_LONG_TESTS is set:

    SLICEMARKET_LONG_TESTS=1 nose2 -v


RUNNING EXPERIMENTS
===================
After installing, the "slicemarket" command runs an experiment campaign:

    slicemarket --generate --seed 7 --slices 20 --load mid --out metrics.csv

or, from a source checkout:

    python run.py --scenario slicemarket/scenarios/counterexample.yaml
"""
from setuptools import setup

import slicemarket


APP_NAME = "SliceMarket"
APP_VERSION = slicemarket.__version__
PACKAGE_NAME = "slicemarket"

INSTALL_REQUIRES = ["appdirs", "psutil", "numpy>=1.17", "scipy>=1.4",
                    "pandas>=1.5", "PyYAML>=5.1"]
TESTS_REQUIRE = ["nose2", "coverage"]


SETUP_ARGS = dict(name=APP_NAME,
                  version=APP_VERSION,
                  description="Auction-based end-to-end network slice "
                  "provisioning with DRF and uniform baselines",
                  license="GNU GPLv3",
                  packages=[PACKAGE_NAME,
                            PACKAGE_NAME + ".controllers",
                            PACKAGE_NAME + ".harness",
                            PACKAGE_NAME + ".logs",
                            PACKAGE_NAME + ".mechanisms",
                            PACKAGE_NAME + ".models",
                            PACKAGE_NAME + ".models.settings",
                            PACKAGE_NAME + ".oracle",
                            PACKAGE_NAME + ".threads",
                            PACKAGE_NAME + ".utils",
                            PACKAGE_NAME + ".tests",
                            PACKAGE_NAME + ".tests.baselines",
                            PACKAGE_NAME + ".tests.controllers",
                            PACKAGE_NAME + ".tests.drp",
                            PACKAGE_NAME + ".tests.harness",
                            PACKAGE_NAME + ".tests.miscellaneous",
                            PACKAGE_NAME + ".tests.models",
                            PACKAGE_NAME + ".tests.oracle",
                            PACKAGE_NAME + ".tests.settings",
                            PACKAGE_NAME + ".tests.utility"],
                  package_data={
                      PACKAGE_NAME: ["scenarios/*.yaml"],
                      PACKAGE_NAME + ".tests": ["testdata/*.cfg"],
                  },
                  install_requires=INSTALL_REQUIRES,
                  tests_require=TESTS_REQUIRE,
                  entry_points={
                      "console_scripts": [
                          "slicemarket = slicemarket.SliceMarket:Main",
                      ],
                  },
                  scripts=["run.py"],
                  long_description="DRP auction, multi-domain and "
                  "per-domain DRF, the uniform allocation, a KKT oracle "
                  "and an experiment harness for end-to-end network "
                  "slicing.",
                  classifiers=[
                      "Development Status :: 4 - Beta",
                      "Intended Audience :: Science/Research",
                      "Intended Audience :: Developers",
                      "License :: GNU General Public License (GPL)",
                      "Operating System :: OS Independent",
                      "Programming Language :: Python :: 3",
                      "Topic :: Scientific/Engineering",
                      "Topic :: System :: Networking",
                  ])
setup(**SETUP_ARGS)
