"""
SliceMarket.py

Main module for SliceMarket.

To run SliceMarket from the command-line, use "python run.py", where
run.py is in the parent directory of the directory containing
SliceMarket.py.

Exit codes: 0 on success, 2 if an auction didn't converge in some
replication, 1 on input errors or when interrupted.
"""
import argparse
import logging
import os
import sys

from . import __version__ as VERSION
from .constants import APPNAME
from .controllers.experiment import ExperimentPlan
from .controllers.experiment import RunExperiment
from .harness.metrics import EmitTables
from .harness.scenariofile import LoadScenario
from .harness.traces import AuctionTrace
from .logs import logger
from .models.settings.serialize import LoadSettings
from .models.settings.serialize import SaveSettingsToDisk
from .models.settings.validation import ValidateSettings
from .settings import SETTINGS
from .threads.flags import FLAGS
from .utils.exceptions import DomainError
from .utils.exceptions import InvalidScenario
from .utils.exceptions import InvalidSettings
from .utils.exceptions import OutputError
from .utils.exceptions import StructuralError

EXIT_SUCCESS = 0
EXIT_INPUT_ERROR = 1
EXIT_NOT_CONVERGED = 2

INPUT_ERRORS = (InvalidScenario, InvalidSettings, StructuralError,
                DomainError, OutputError)

LOG_LEVELS = {"DEBUG": logging.DEBUG, "INFO": logging.INFO,
              "WARN": logging.WARN, "WARNING": logging.WARN,
              "ERROR": logging.ERROR}

# Run parameters a scenario document's config block may set:
SCENARIO_CONFIG_FIELDS = ("epsilon", "step", "zeta")


class ArgumentParser(argparse.ArgumentParser):
    """
    Reports usage errors with exit code 1, like other input errors.
    """
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, "%s: error: %s\n" % (self.prog, message))


def ParseArgs(argv):
    """
    Parse command-line arguments.

    :param argv: sys.argv or mock arguments from unittests
    """
    parser = ArgumentParser(
        prog="slicemarket",
        description="Network slice provisioning: DRP auction, DRF "
        "baselines and the uniform allocation on generated or "
        "loaded scenarios.")
    parser.add_argument("-v", "--version", action="store_true",
                        help="Display SliceMarket version and exit")
    parser.add_argument("-l", "--loglevel", help="set logging verbosity "
                        "(DEBUG, INFO, WARN or ERROR)")
    parser.add_argument("--config", help="settings file to load")
    parser.add_argument("--save-config", dest="saveConfig",
                        help="save the effective settings to this file")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--scenario", help="YAML scenario file")
    source.add_argument("--generate", action="store_true",
                        help="generate scenarios (the default)")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--slices", type=int)
    parser.add_argument("--load", choices=["low", "mid", "high", "custom"])
    parser.add_argument("--phi", type=float,
                        help="per slice-area phi of the custom load level")
    parser.add_argument("--alpha-range", dest="alphaRange", type=float,
                        nargs=2, metavar=("LO", "HI"))
    parser.add_argument("--mechanism",
                        help="drp, md-drf, pd-drf, uniform, a "
                        "comma-separated list of these, or all")
    parser.add_argument("--epsilon", type=float)
    parser.add_argument("--step", type=float)
    parser.add_argument("--max-iters", dest="maxIters", type=int)
    parser.add_argument("--replications", type=int)
    parser.add_argument("--budget-enforcement", dest="budgetEnforcement",
                        choices=["on", "off"])
    parser.add_argument("--threads", type=int,
                        help="replication worker threads")
    parser.add_argument("--emit-trace", dest="emitTrace",
                        help="CSV file for the per-round auction trace")
    parser.add_argument("--out", default="slicemarket_metrics.csv",
                        help="metrics CSV file")
    return parser.parse_args(argv[1:])


def SetLogLevel(loglevel):
    """
    Map --loglevel onto the logger.
    """
    if not loglevel:
        return
    level = LOG_LEVELS.get(loglevel.upper())
    if level is None:
        raise InvalidSettings("Unknown log level %s" % loglevel, "loglevel",
                              "Use DEBUG, INFO, WARN or ERROR.")
    logger.SetLevel(level)


def ApplyArgs(settings, args, scenario=None):
    """
    Override settings with the scenario document's run parameters, then
    with command-line flags.
    """
    if scenario is not None:
        for field in SCENARIO_CONFIG_FIELDS:
            if field in scenario.config:
                settings[field] = float(scenario.config[field])
    overrides = [
        ("seed", args.seed), ("slices", args.slices), ("load", args.load),
        ("phi", args.phi), ("mechanisms", args.mechanism),
        ("epsilon", args.epsilon), ("step", args.step),
        ("max_iters", args.maxIters), ("replications", args.replications),
        ("worker_threads", args.threads)]
    for field, value in overrides:
        if value is not None:
            settings[field] = value
    if args.alphaRange is not None:
        settings.scenario.alphaMin, settings.scenario.alphaMax = \
            args.alphaRange
    if args.budgetEnforcement is not None:
        settings.auction.budgetEnforcement = args.budgetEnforcement == "on"


def RunCampaign(args, settings):
    """
    Load or generate scenarios, run the experiment and write the tables.

    :returns: exit code
    """
    if args.config:
        if not os.path.exists(args.config):
            raise InvalidSettings("Settings file %s doesn't exist"
                                  % args.config, "config")
        LoadSettings(settings, args.config)
    scenario = LoadScenario(args.scenario) if args.scenario else None
    ApplyArgs(settings, args, scenario)
    ValidateSettings(settings)
    if args.saveConfig:
        SaveSettingsToDisk(settings, args.saveConfig)

    trace = AuctionTrace() if args.emitTrace else None
    plan = ExperimentPlan.FromSettings(settings, scenario, trace)
    controller = RunExperiment(plan)
    if controller.aborted:
        logger.error("Experiment aborted after %d replication(s)"
                     % len(controller.results))
        return EXIT_INPUT_ERROR
    if trace is not None:
        trace.Write(args.emitTrace)
    comparison = EmitTables(controller.records, args.out, plan.ratioGrid,
                            plan.loadFraction)
    for row in comparison.summaryRows:
        logger.info("Delay improvement %s vs %s (%s load): %.4g over %d "
                    "slice-areas" % (row["mechanism_a"], row["mechanism_b"],
                                     row["load"], row["mean_ratio"],
                                     row["count"]))
    sys.stdout.write("Wrote %d metrics rows to %s\n"
                     % (len(controller.records), args.out))
    if controller.nonConverged:
        logger.warning("%d replication(s) did not converge"
                       % controller.nonConverged)
        return EXIT_NOT_CONVERGED
    return EXIT_SUCCESS


def Run(argv):
    """
    Main function for launching SliceMarket.

    :returns: exit code
    """
    args = ParseArgs(argv)
    if args.version:
        sys.stdout.write("%s %s\n" % (APPNAME, VERSION))
        return EXIT_SUCCESS
    try:
        SetLogLevel(args.loglevel)
        logger.info("%s version: v%s" % (APPNAME, VERSION))
        exitCode = RunCampaign(args, SETTINGS)
    except INPUT_ERRORS as err:
        logger.error(str(err))
        exitCode = EXIT_INPUT_ERROR
    except KeyboardInterrupt:
        FLAGS.shouldAbort = True
        logger.error("Interrupted")
        exitCode = EXIT_INPUT_ERROR
    if exitCode != EXIT_SUCCESS:
        summary = logger.ErrorSummary()
        if summary:
            sys.stderr.write("Errors:\n%s" % summary)
    return exitCode


def Main():
    """
    Console script entry point.
    """
    sys.exit(Run(sys.argv))


if __name__ == "__main__":
    sys.stderr.write(
        "Please use run.py in SliceMarket.py's parent directory instead.\n")
