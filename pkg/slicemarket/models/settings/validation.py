"""
Methods for validating settings.

The global SETTINGS singleton is used when no settings are passed in.
"""
from ...logs import logger
from ...utils.exceptions import InvalidSettings
from .auction import AuctionSettingsModel
from .experiment import MECHANISMS

LOADS = ("low", "mid", "high", "custom")
TEMPLATES = ("metro",)


def ValidateSettings(settings=None):
    """
    Validate a SettingsModel instance (SETTINGS by default), raising
    InvalidSettings for the first offending field.
    """
    if settings is None:
        from ...settings import SETTINGS
        settings = SETTINGS
    CheckAuctionSettings(settings)
    CheckOracleSettings(settings)
    CheckScenarioSettings(settings)
    CheckExperimentSettings(settings)
    logger.debug("Settings validation - succeeded!")


def CheckAuctionSettings(settings):
    """
    Check the [auction] fields against their admissible ranges.
    """
    auction = settings.auction
    defaults = AuctionSettingsModel()
    defaults.SetDefaults()
    if not auction.epsilon > 0:
        raise InvalidSettings(
            "The convergence threshold must be positive.", "epsilon",
            "The default is %g." % defaults.epsilon)
    if not 0 < auction.step < 1:
        raise InvalidSettings(
            "The relaxation step must lie strictly between 0 and 1.",
            "step", "The default is %g." % defaults.step)
    if auction.maxIters < 1:
        raise InvalidSettings(
            "At least one auction round is required.", "max_iters",
            "The default is %d." % defaults.maxIters)
    if not 0 < auction.zeta < 1:
        raise InvalidSettings(
            "The budget back-off factor must lie strictly between 0 and 1.",
            "zeta", "The default is %g." % defaults.zeta)
    if auction.tieTolerance < 0:
        raise InvalidSettings(
            "The tie tolerance can't be negative.", "tie_tolerance",
            "The default is %g." % defaults.tieTolerance)
    if auction.bestResponse not in ("uniform", "proximal"):
        raise InvalidSettings(
            "Unknown best response \"%s\"." % auction.bestResponse,
            "best_response", "Use \"uniform\" or \"proximal\".")
    if not auction.proximalWeight > 0:
        raise InvalidSettings(
            "The proximal weight must be positive.", "proximal_weight",
            "The default is %g." % defaults.proximalWeight)
    if auction.progressInterval < 0:
        raise InvalidSettings(
            "The progress interval can't be negative.", "progress_interval",
            "Use 0 to disable progress messages.")


def CheckOracleSettings(settings):
    """
    Check the [oracle] fields.
    """
    if not settings.oracle.tolerance > 0:
        raise InvalidSettings(
            "The oracle tolerance must be positive.", "tolerance")
    if settings.oracle.maxIterations < 1:
        raise InvalidSettings(
            "The oracle needs at least one iteration.", "max_iterations")


def CheckScenarioSettings(settings):
    """
    Check the [scenario] fields.
    """
    scenario = settings.scenario
    if scenario.load not in LOADS:
        raise InvalidSettings(
            "Unknown load level \"%s\"." % scenario.load, "load",
            "Use one of: %s." % ", ".join(LOADS))
    if scenario.load == "custom" and not scenario.phi > 0:
        raise InvalidSettings(
            "A custom load level needs a positive phi.", "phi",
            "Set phi, or use load = high, mid or low.")
    if scenario.template not in TEMPLATES:
        raise InvalidSettings(
            "Unknown topology template \"%s\"." % scenario.template,
            "template", "Use one of: %s." % ", ".join(TEMPLATES))
    if not 0 < scenario.alphaMin <= scenario.alphaMax:
        raise InvalidSettings(
            "The alpha range must satisfy 0 < alpha_min <= alpha_max.",
            "alpha_min", "e.g. alpha_min = 1.0, alpha_max = 1.5")
    if scenario.slices < 0:
        raise InvalidSettings(
            "The slice count can't be negative.", "slices")
    if scenario.referenceSlices < 1:
        raise InvalidSettings(
            "The reference slice count must be at least 1.",
            "reference_slices")
    if not scenario.budgetDollars > 0:
        raise InvalidSettings(
            "Budgets must be positive.", "budget_dollars")
    if not scenario.packetLength > 0:
        raise InvalidSettings(
            "The packet length must be positive.", "packet_length")
    if scenario.hops < 0:
        raise InvalidSettings(
            "The hop count can't be negative.", "hops")
    if scenario.beta < 0:
        raise InvalidSettings(
            "The delay weight can't be negative.", "beta")
    if not 0 < scenario.calibrationTolerance < 1:
        raise InvalidSettings(
            "The calibration tolerance must lie strictly between 0 and 1.",
            "calibration_tolerance", "The default is 0.01.")


def CheckExperimentSettings(settings):
    """
    Check the [experiment] fields.
    """
    experiment = settings.experiment
    if experiment.replications < 1:
        raise InvalidSettings(
            "At least one replication is required.", "replications")
    if experiment.workerThreads < 1:
        raise InvalidSettings(
            "At least one worker thread is required.", "worker_threads")
    names = [name.strip().lower()
             for name in experiment.mechanisms.split(",") if name.strip()]
    unknown = [name for name in names
               if name != "all" and name not in MECHANISMS]
    if not names or unknown:
        raise InvalidSettings(
            "Unknown mechanism(s): %s." % ", ".join(unknown or ["(none)"]),
            "mechanisms",
            "Use a comma-separated subset of: %s, or all."
            % ", ".join(MECHANISMS))
    if not 0 < experiment.loadFraction <= 1:
        raise InvalidSettings(
            "The load fraction must lie in (0, 1].", "load_fraction",
            "The default is 0.95.")
    if not experiment.ratioGridStep > 0 or \
            experiment.ratioGridMax < experiment.ratioGridMin:
        raise InvalidSettings(
            "The ratio grid needs a positive step and min <= max.",
            "ratio_grid_step", "The default grid is 1.0 to 3.0 by 0.1.")
