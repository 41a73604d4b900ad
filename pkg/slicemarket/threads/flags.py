"""
Thread-safe flags
"""
import threading


class ThreadSafeFlags(object):
    """
    Thread-safe flags
    """
    def __init__(self):
        self._flags = dict()
        self._flags['runningExperiment'] = threading.Event()
        self._flags['shouldAbort'] = threading.Event()

    @property
    def runningExperiment(self):
        """
        Returns True while replication worker threads are active.
        """
        return self._flags['runningExperiment'].is_set()

    @runningExperiment.setter
    def runningExperiment(self, value):
        """
        Records whether replication worker threads are active.
        """
        if value:
            self._flags['runningExperiment'].set()
        else:
            self._flags['runningExperiment'].clear()

    @property
    def shouldAbort(self):
        """
        The user has requested aborting the experiment campaign,
        e.g. with Ctrl-C.  Workers finish their current replication
        and then stop.
        """
        return self._flags['shouldAbort'].is_set()

    @shouldAbort.setter
    def shouldAbort(self, shouldAbort):
        """
        Request (or withdraw a request for) aborting the campaign.
        """
        if shouldAbort:
            self._flags['shouldAbort'].set()
        else:
            self._flags['shouldAbort'].clear()


FLAGS = ThreadSafeFlags()
