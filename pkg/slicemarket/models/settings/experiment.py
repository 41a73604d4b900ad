"""
Model class for the experiment campaign settings saved in SliceMarket.cfg
"""
from ...utils import DefaultWorkerThreadCount

MECHANISMS = ("drp", "md-drf", "pd-drf", "uniform")


class ExperimentSettingsModel(object):
    """
    Model class for the experiment campaign settings
    """
    def __init__(self):
        # Saved in SliceMarket.cfg:
        self.config = dict()

        self.fields = [
            'replications',
            'mechanisms',
            'worker_threads',
            'load_fraction',
            'ratio_grid_min',
            'ratio_grid_max',
            'ratio_grid_step',
            'certify'
        ]

    @property
    def replications(self):
        """
        Number of independent replications
        """
        return self.config['replications']

    @replications.setter
    def replications(self, replications):
        self.config['replications'] = replications

    @property
    def mechanisms(self):
        """
        Comma-separated mechanism ids, or "all"
        """
        return self.config['mechanisms']

    @mechanisms.setter
    def mechanisms(self, mechanisms):
        self.config['mechanisms'] = mechanisms

    @property
    def mechanismList(self):
        """
        The selected mechanism ids in canonical order
        """
        names = [name.strip().lower()
                 for name in self.config['mechanisms'].split(",")
                 if name.strip()]
        if "all" in names:
            return list(MECHANISMS)
        return [name for name in MECHANISMS if name in names]

    @property
    def workerThreads(self):
        """
        Number of replication worker threads
        """
        return self.config['worker_threads']

    @workerThreads.setter
    def workerThreads(self, workerThreads):
        self.config['worker_threads'] = workerThreads

    @property
    def loadFraction(self):
        """
        Offered load as a fraction of the smaller capacity in delay
        comparisons
        """
        return self.config['load_fraction']

    @loadFraction.setter
    def loadFraction(self, loadFraction):
        self.config['load_fraction'] = loadFraction

    @property
    def ratioGridMin(self):
        return self.config['ratio_grid_min']

    @ratioGridMin.setter
    def ratioGridMin(self, ratioGridMin):
        self.config['ratio_grid_min'] = ratioGridMin

    @property
    def ratioGridMax(self):
        return self.config['ratio_grid_max']

    @ratioGridMax.setter
    def ratioGridMax(self, ratioGridMax):
        self.config['ratio_grid_max'] = ratioGridMax

    @property
    def ratioGridStep(self):
        return self.config['ratio_grid_step']

    @ratioGridStep.setter
    def ratioGridStep(self, ratioGridStep):
        self.config['ratio_grid_step'] = ratioGridStep

    @property
    def certify(self):
        """
        Returns True if DRP fixed points are certified by the oracle
        """
        return self.config['certify']

    @certify.setter
    def certify(self, certify):
        self.config['certify'] = certify

    def SetDefaults(self):
        """
        Set default values for configuration parameters
        that will appear in SliceMarket.cfg for fields in this model
        """
        self.config['replications'] = 1
        self.config['mechanisms'] = "all"
        self.config['worker_threads'] = DefaultWorkerThreadCount()
        self.config['load_fraction'] = 0.95
        self.config['ratio_grid_min'] = 1.0
        self.config['ratio_grid_max'] = 3.0
        self.config['ratio_grid_step'] = 0.1
        self.config['certify'] = True
