"""
Miscellaneous utility functions.
"""
import os

import appdirs
import psutil

from ..constants import APPNAME, APPAUTHOR


def CreateConfigPathIfNecessary():
    """
    Create path for saving SliceMarket.cfg if it doesn't already exist.
    """
    appdirPath = appdirs.user_data_dir(APPNAME, APPAUTHOR)
    if not os.path.exists(appdirPath):
        os.makedirs(appdirPath)
    return appdirPath


def DefaultWorkerThreadCount():
    """
    One replication worker per physical core, falling back to the
    logical count (psutil returns None for physical cores on some
    virtual machines).
    """
    count = psutil.cpu_count(logical=False) or psutil.cpu_count() or 1
    return max(1, int(count))

