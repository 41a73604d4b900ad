"""
Methods for saving / loading settings between a SettingsModel instance
and the SliceMarket.cfg file.

These take the settings as an argument rather than using the global
SETTINGS singleton, because LoadSettings is called from SettingsModel's
constructor.
"""
import os
from configparser import ConfigParser

from ...constants import APPNAME
from ...logs import logger
from ...utils.exceptions import InvalidSettings
from ...utils.exceptions import OutputError

CONFIG_FILE_SECTION = APPNAME

INT_FIELDS = ["max_iters", "progress_interval", "max_iterations", "seed",
              "slices", "hops", "reference_slices", "replications",
              "worker_threads"]
FLOAT_FIELDS = ["epsilon", "step", "zeta", "tie_tolerance",
                "proximal_weight", "tolerance", "phi", "alpha_min",
                "alpha_max", "budget_dollars", "packet_length", "beta",
                "calibration_tolerance", "load_fraction", "ratio_grid_min",
                "ratio_grid_max", "ratio_grid_step"]
BOOLEAN_FIELDS = ["budget_enforcement", "certify"]
STRING_FIELDS = ["best_response", "load", "template", "mechanisms"]


def LoadSettings(settings, configPath=None):
    """
    :param settings: Object of class SettingsModel to load the settings into.
    :param configPath: Path to SliceMarket.cfg

    Sets default values for settings fields, then loads a settings file.
    Fields missing from the file keep their defaults.
    """
    settings.SetDefaultConfig()

    if configPath is None:
        configPath = settings.configPath

    if configPath is None or not os.path.exists(configPath):
        return

    logger.info("Reading settings from: " + configPath)
    configParser = ConfigParser()
    configParser.read(configPath)
    if not configParser.has_section(CONFIG_FILE_SECTION):
        logger.warning("No [%s] section in %s"
                       % (CONFIG_FILE_SECTION, configPath))
        return
    LoadTypedFields(settings, configParser, INT_FIELDS, configParser.getint)
    LoadTypedFields(settings, configParser, FLOAT_FIELDS,
                    configParser.getfloat)
    LoadTypedFields(settings, configParser, BOOLEAN_FIELDS,
                    configParser.getboolean)
    LoadTypedFields(settings, configParser, STRING_FIELDS, configParser.get)


def LoadTypedFields(settings, configParser, fields, getter):
    """
    Load the fields present in the config file with the given
    ConfigParser getter, raising InvalidSettings for unparseable values.
    """
    for field in fields:
        if configParser.has_option(CONFIG_FILE_SECTION, field):
            try:
                settings[field] = getter(CONFIG_FILE_SECTION, field)
            except ValueError:
                message = "Invalid value for %s: %s" % (
                    field, configParser.get(CONFIG_FILE_SECTION, field))
                raise InvalidSettings(message, field)


def SaveSettingsToDisk(settings, configPath=None):
    """
    Save configuration to disk.
    """
    if configPath is None:
        configPath = settings.configPath
    configParser = ConfigParser()
    configParser.add_section(CONFIG_FILE_SECTION)
    for field in settings.fields:
        configParser.set(CONFIG_FILE_SECTION, field, str(settings[field]))
    try:
        with open(configPath, 'w') as configFile:
            configParser.write(configFile)
    except (IOError, OSError) as err:
        raise OutputError("Couldn't save settings: %s" % err, configPath)
    logger.info("Saved settings to " + configPath)
