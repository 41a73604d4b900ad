"""
This package contains tests to be run with "nose2".

Tests can be run with:
    nose2 -v
or, with coverage:
    nose2 -v --with-coverage
Coverage can be reported with:
    coverage report -m

"nose2 --with-coverage" generates a .coverage file, which is necessary to
run "coverage report -m".  It should be removed before subsequent runs to
ensure that recently deleted lines of code are not included.

Full-size tests (calibrated 50-slice scenarios checked against the
reference solver and the fairness properties) take minutes and are
skipped unless SLICEMARKET_LONG_TESTS is set.
"""
import os
import unittest

from ..settings import SETTINGS
from ..models.settings import SettingsModel
from ..threads.flags import FLAGS

LONG_TESTS = 'SLICEMARKET_LONG_TESTS' in os.environ


class SliceMarketTester(unittest.TestCase):
    """
    Lightweight class to derive from for tests requiring the
    SLICEMARKET_TESTING environment variable to be set.
    """
    def setUp(self):
        os.environ['SLICEMARKET_TESTING'] = 'True'
        FLAGS.shouldAbort = False
        FLAGS.runningExperiment = False

    def tearDown(self):
        del os.environ['SLICEMARKET_TESTING']
        FLAGS.shouldAbort = False


class SliceMarketSettingsTester(SliceMarketTester):
    """
    Base class for tests which modify the global SETTINGS singleton.
    Defaults are restored after each test.
    """
    def setUp(self):
        super(SliceMarketSettingsTester, self).setUp()
        SETTINGS.SetDefaultConfig()

    def tearDown(self):
        SETTINGS.SetDefaultConfig()
        super(SliceMarketSettingsTester, self).tearDown()

    @staticmethod
    def UpdateSettingsFromCfg(configName):
        """
        Load the named test configuration from tests/testdata/ into the
        global SETTINGS.
        """
        configPath = DataFilePath("%s.cfg" % configName)
        settings = SettingsModel(configPath=configPath)
        SETTINGS.Update(settings)


def DataFilePath(filename):
    """
    Absolute path of a file in tests/testdata/
    """
    return os.path.join(os.path.dirname(os.path.realpath(__file__)),
                        "testdata", filename)
