"""
The global SettingsModel instance.
"""
from slicemarket.models.settings import SettingsModel

SETTINGS = SettingsModel(configPath=None)
