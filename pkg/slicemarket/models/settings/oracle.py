"""
Model class for the optimization oracle settings saved in SliceMarket.cfg
"""


class OracleSettingsModel(object):
    """
    Model class for the optimization oracle settings
    """
    def __init__(self):
        # Saved in SliceMarket.cfg:
        self.config = dict()

        self.fields = [
            'tolerance',
            'max_iterations'
        ]

    @property
    def tolerance(self):
        """
        Target for the KKT residuals of the reference solver
        """
        return self.config['tolerance']

    @tolerance.setter
    def tolerance(self, tolerance):
        self.config['tolerance'] = tolerance

    @property
    def maxIterations(self):
        """
        Iteration budget of the reference solver
        """
        return self.config['max_iterations']

    @maxIterations.setter
    def maxIterations(self, maxIterations):
        self.config['max_iterations'] = maxIterations

    def SetDefaults(self):
        """
        Set default values for configuration parameters
        that will appear in SliceMarket.cfg for fields in this model
        """
        self.config['tolerance'] = 1e-8
        self.config['max_iterations'] = 200000
