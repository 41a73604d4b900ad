"""
Model class for the DRP auction settings saved in SliceMarket.cfg
"""


class AuctionSettingsModel(object):
    """
    Model class for the DRP auction settings saved in SliceMarket.cfg
    """
    def __init__(self):
        # Saved in SliceMarket.cfg:
        self.config = dict()

        self.fields = [
            'epsilon',
            'step',
            'max_iters',
            'zeta',
            'budget_enforcement',
            'tie_tolerance',
            'best_response',
            'proximal_weight',
            'progress_interval'
        ]

    @property
    def epsilon(self):
        """
        Convergence threshold on the max deviation |x - x*|
        """
        return self.config['epsilon']

    @epsilon.setter
    def epsilon(self, epsilon):
        """
        Set convergence threshold
        """
        self.config['epsilon'] = epsilon

    @property
    def step(self):
        """
        Relaxation step of the allocation update
        """
        return self.config['step']

    @step.setter
    def step(self, step):
        """
        Set relaxation step
        """
        self.config['step'] = step

    @property
    def maxIters(self):
        """
        Maximum number of auction rounds
        """
        return self.config['max_iters']

    @maxIters.setter
    def maxIters(self, maxIters):
        """
        Set maximum number of auction rounds
        """
        self.config['max_iters'] = maxIters

    @property
    def zeta(self):
        """
        Budget back-off factor
        """
        return self.config['zeta']

    @zeta.setter
    def zeta(self, zeta):
        """
        Set budget back-off factor
        """
        self.config['zeta'] = zeta

    @property
    def budgetEnforcement(self):
        """
        Returns True if slice-area budgets are enforced
        """
        return self.config['budget_enforcement']

    @budgetEnforcement.setter
    def budgetEnforcement(self, budgetEnforcement):
        """
        Set this to True to enforce budgets
        """
        self.config['budget_enforcement'] = budgetEnforcement

    @property
    def tieTolerance(self):
        """
        Relative band within which paths count as equally cheap
        """
        return self.config['tie_tolerance']

    @tieTolerance.setter
    def tieTolerance(self, tieTolerance):
        self.config['tie_tolerance'] = tieTolerance

    @property
    def bestResponse(self):
        """
        "uniform" or "proximal"
        """
        return self.config['best_response']

    @bestResponse.setter
    def bestResponse(self, bestResponse):
        self.config['best_response'] = bestResponse

    @property
    def proximalWeight(self):
        """
        Weight of the proximal term, relative to the utility curvature
        """
        return self.config['proximal_weight']

    @proximalWeight.setter
    def proximalWeight(self, proximalWeight):
        self.config['proximal_weight'] = proximalWeight

    @property
    def progressInterval(self):
        """
        Rounds between progress log messages
        """
        return self.config['progress_interval']

    @progressInterval.setter
    def progressInterval(self, progressInterval):
        self.config['progress_interval'] = progressInterval

    def SetDefaults(self):
        """
        Set default values for configuration parameters
        that will appear in SliceMarket.cfg for fields in this model
        """
        self.config['epsilon'] = 1e-3
        self.config['step'] = 0.1
        self.config['max_iters'] = 5000
        self.config['zeta'] = 0.9
        self.config['budget_enforcement'] = False
        self.config['tie_tolerance'] = 1e-9
        self.config['best_response'] = "proximal"
        self.config['proximal_weight'] = 1.0
        self.config['progress_interval'] = 100
