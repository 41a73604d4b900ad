"""
Settings saved to disk in SliceMarket.cfg
"""
from .model import SettingsModel
