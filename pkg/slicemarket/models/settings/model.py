"""
Model class for the settings saved to disk in SliceMarket.cfg
"""
import os
import traceback

from ...constants import APPNAME
from ...logs import logger
from ...utils import CreateConfigPathIfNecessary
from .auction import AuctionSettingsModel
from .experiment import ExperimentSettingsModel
from .oracle import OracleSettingsModel
from .scenario import ScenarioSettingsModel
from .serialize import LoadSettings


class SettingsModel(object):
    """
    Model class for the settings saved to disk in SliceMarket.cfg
    """
    def __init__(self, configPath=None):
        super(SettingsModel, self).__init__()

        # The location on disk of SliceMarket.cfg, e.g.
        # "/home/jsmith/.local/share/SliceMarket/SliceMarket.cfg".
        # None means the default location, resolved on first use:
        self._configPath = configPath

        self.models = dict(
            auction=AuctionSettingsModel(),
            oracle=OracleSettingsModel(),
            scenario=ScenarioSettingsModel(),
            experiment=ExperimentSettingsModel())

        self.SetDefaultConfig()

        if configPath is not None:
            try:
                LoadSettings(self, configPath)
            except:
                logger.error(traceback.format_exc())

    @property
    def auction(self):
        """
        DRP auction settings
        """
        return self.models['auction']

    @property
    def oracle(self):
        """
        Optimization oracle settings
        """
        return self.models['oracle']

    @property
    def scenario(self):
        """
        Scenario generator settings
        """
        return self.models['scenario']

    @property
    def experiment(self):
        """
        Experiment campaign settings
        """
        return self.models['experiment']

    def _Section(self, key):
        for name in sorted(self.models):
            if key in self.models[name].fields:
                return self.models[name]
        raise KeyError(key)

    def __setitem__(self, key, item):
        """
        Set a config item by field name.
        """
        self._Section(key).config[key] = item

    def __getitem__(self, key):
        """
        Get a config item by field name.
        """
        return self._Section(key).config[key]

    @property
    def fields(self):
        """
        All field names, section by section
        """
        return [field for name in ("auction", "oracle", "scenario",
                                   "experiment")
                for field in self.models[name].fields]

    def Update(self, settings):
        """
        Update this instance from another
        """
        for name in self.models:
            self.models[name].config.update(settings.models[name].config)

    def SetDefaultConfig(self):
        """
        Set default values for configuration parameters
        that will appear in SliceMarket.cfg
        """
        self.auction.SetDefaults()
        self.oracle.SetDefaults()
        self.scenario.SetDefaults()
        self.experiment.SetDefaults()

    @property
    def configPath(self):
        """
        Location on disk of SliceMarket.cfg
        """
        if self._configPath is None:
            self._configPath = os.path.join(
                CreateConfigPathIfNecessary(), APPNAME + ".cfg")
        return self._configPath

    @configPath.setter
    def configPath(self, configPath):
        """
        Set location on disk of SliceMarket.cfg
        """
        self._configPath = configPath
