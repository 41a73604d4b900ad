"""
Model class for the scenario generator settings saved in SliceMarket.cfg
"""


class ScenarioSettingsModel(object):
    """
    Model class for the scenario generator settings saved in SliceMarket.cfg
    """
    def __init__(self):
        # Saved in SliceMarket.cfg:
        self.config = dict()

        self.fields = [
            'seed',
            'slices',
            'load',
            'phi',
            'template',
            'alpha_min',
            'alpha_max',
            'budget_dollars',
            'packet_length',
            'hops',
            'beta',
            'reference_slices',
            'calibration_tolerance'
        ]

    @property
    def seed(self):
        """
        Root seed of the scenario generator
        """
        return self.config['seed']

    @seed.setter
    def seed(self, seed):
        self.config['seed'] = seed

    @property
    def slices(self):
        """
        Number of slices N
        """
        return self.config['slices']

    @slices.setter
    def slices(self, slices):
        self.config['slices'] = slices

    @property
    def load(self):
        """
        Loading level: low, mid, high or custom
        """
        return self.config['load']

    @load.setter
    def load(self, load):
        self.config['load'] = load

    @property
    def phi(self):
        """
        Traffic demand scale used when load is custom
        """
        return self.config['phi']

    @phi.setter
    def phi(self, phi):
        self.config['phi'] = phi

    @property
    def template(self):
        """
        Topology template id
        """
        return self.config['template']

    @template.setter
    def template(self, template):
        self.config['template'] = template

    @property
    def alphaMin(self):
        """
        Lower end of the utility shape range
        """
        return self.config['alpha_min']

    @alphaMin.setter
    def alphaMin(self, alphaMin):
        self.config['alpha_min'] = alphaMin

    @property
    def alphaMax(self):
        """
        Upper end of the utility shape range
        """
        return self.config['alpha_max']

    @alphaMax.setter
    def alphaMax(self, alphaMax):
        self.config['alpha_max'] = alphaMax

    @property
    def budgetDollars(self):
        """
        Budget per slice and area, in dollars
        """
        return self.config['budget_dollars']

    @budgetDollars.setter
    def budgetDollars(self, budgetDollars):
        self.config['budget_dollars'] = budgetDollars

    @property
    def packetLength(self):
        """
        Average packet length in bits, for delay metrics
        """
        return self.config['packet_length']

    @packetLength.setter
    def packetLength(self, packetLength):
        self.config['packet_length'] = packetLength

    @property
    def hops(self):
        """
        Processing steps per packet, for delay metrics
        """
        return self.config['hops']

    @hops.setter
    def hops(self, hops):
        self.config['hops'] = hops

    @property
    def beta(self):
        """
        Delay-to-profit weight
        """
        return self.config['beta']

    @beta.setter
    def beta(self, beta):
        self.config['beta'] = beta

    @property
    def referenceSlices(self):
        """
        Slice count at which the calibrated phi applies unscaled
        """
        return self.config['reference_slices']

    @referenceSlices.setter
    def referenceSlices(self, referenceSlices):
        self.config['reference_slices'] = referenceSlices

    @property
    def calibrationTolerance(self):
        """
        Relative tolerance of the high-load calibration bisection
        """
        return self.config['calibration_tolerance']

    @calibrationTolerance.setter
    def calibrationTolerance(self, calibrationTolerance):
        self.config['calibration_tolerance'] = calibrationTolerance

    def SetDefaults(self):
        """
        Set default values for configuration parameters
        that will appear in SliceMarket.cfg for fields in this model
        """
        self.config['seed'] = 1
        self.config['slices'] = 50
        self.config['load'] = "high"
        self.config['phi'] = 0.0
        self.config['template'] = "metro"
        self.config['alpha_min'] = 1.0
        self.config['alpha_max'] = 2.0
        self.config['budget_dollars'] = 100.0
        self.config['packet_length'] = 12000.0
        self.config['hops'] = 3
        self.config['beta'] = 0.0
        self.config['reference_slices'] = 50
        self.config['calibration_tolerance'] = 0.01
