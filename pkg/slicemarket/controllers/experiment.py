"""
Experiment campaigns: every replication generates (or reuses) a
scenario per load level, runs the DRP auction, certifies its fixed
point, and compares it with the payment-weighted DRF baselines and the
uniform allocation.

Replications run on worker threads fed through a queue; results are
merged under LOCKS.addRecords and sorted by replication id, so output
doesn't depend on thread scheduling.
"""
from queue import Queue
import threading
import traceback

import numpy as np

from ..harness.generator import GenerateScenario
from ..harness.generator import ScenarioConfig
from ..harness.metrics import BuildRecords
from ..harness.metrics import RatioGrid
from ..logs import logger
from ..mechanisms.baselines import MultiDomainDrf
from ..mechanisms.baselines import PerDomainDrf
from ..mechanisms.baselines import UniformAllocation
from ..mechanisms.baselines import UniformAllocationSpec
from ..mechanisms.drp import DrpConfig
from ..mechanisms.drp import RunAuction
from ..models.settings.experiment import MECHANISMS
from ..oracle.kkt import KktResidual
from ..threads.flags import FLAGS
from ..threads.locks import LOCKS


def ReplicationSeeds(seed, count):
    """
    Independent per-replication seeds derived from the campaign seed.
    """
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1)[0]) for child in children]


class ExperimentPlan(object):
    """
    What to run: mechanisms x load levels x replications.

    Either scenarioConfig (generated scenarios, one per replication and
    load level) or scenario (one fixed scenario, e.g. loaded from a file)
    must be given.
    """
    # pylint: disable=too-many-instance-attributes
    # pylint: disable=too-many-arguments
    def __init__(self, scenarioConfig=None, scenario=None, mechanisms=None,
                 loads=None, replications=1, drpConfig=None, certify=True,
                 oracleTolerance=1e-8, workerThreads=1, loadFraction=0.95,
                 ratioGrid=None, trace=None):
        if (scenarioConfig is None) == (scenario is None):
            raise ValueError("Give either a scenario config or a scenario")
        self.scenarioConfig = scenarioConfig
        self.scenario = scenario
        self.mechanisms = list(mechanisms or MECHANISMS)
        if loads is None:
            loads = [scenarioConfig.load] if scenarioConfig is not None \
                else [scenario.config.get("load", "file")]
        self.loads = list(loads)
        self.replications = max(1, int(replications))
        self.drpConfig = drpConfig if drpConfig is not None else DrpConfig()
        self.certify = certify
        self.oracleTolerance = oracleTolerance
        self.workerThreads = max(1, int(workerThreads))
        self.loadFraction = loadFraction
        self.ratioGrid = RatioGrid() if ratioGrid is None else ratioGrid
        # AuctionTrace recording the first auction of replication 0:
        self.trace = trace

    @classmethod
    def FromSettings(cls, settings, scenario=None, trace=None):
        """
        Plan from a validated SettingsModel.
        """
        experiment = settings.experiment
        scenarioConfig = None if scenario is not None \
            else ScenarioConfig.FromSettings(settings)
        return cls(scenarioConfig=scenarioConfig, scenario=scenario,
                   mechanisms=experiment.mechanismList,
                   replications=experiment.replications,
                   drpConfig=DrpConfig.FromSettings(settings),
                   certify=experiment.certify,
                   oracleTolerance=settings.oracle.tolerance,
                   workerThreads=experiment.workerThreads,
                   loadFraction=experiment.loadFraction,
                   ratioGrid=RatioGrid(experiment.ratioGridMin,
                                       experiment.ratioGridMax,
                                       experiment.ratioGridStep),
                   trace=trace)

    def Scenario(self, seed, load):
        """
        The scenario of one replication at one load level.
        """
        if self.scenario is not None:
            return self.scenario
        config = self.scenarioConfig.WithLoad(load, self.scenarioConfig.phi)
        config.seed = seed
        return GenerateScenario(config, self.drpConfig)


class ReplicationResult(object):
    """
    Records and auction reports of one replication, keyed by load level.
    """
    def __init__(self, replication, seed):
        self.replication = replication
        self.seed = seed
        self.records = []
        self.reports = dict()

    @property
    def converged(self):
        """
        True if every auction of the replication converged
        """
        return all(report.converged for report in self.reports.values())


def RunReplication(plan, replication, seed):
    """
    Run every load level of one replication.
    """
    result = ReplicationResult(replication, seed)
    for load in plan.loads:
        scenario = plan.Scenario(seed, load)
        trace = plan.trace if (replication == 0 and load == plan.loads[0]) \
            else None
        allocation, prices, bids, report = RunAuction(
            scenario, plan.drpConfig, trace=trace)
        result.reports[load] = report
        index = allocation.index
        kktResidual = None
        if plan.certify:
            certificate = KktResidual(allocation, prices,
                                      tolerance=plan.oracleTolerance)
            report.kktResidual = certificate.residual
            kktResidual = certificate.residual
        spec = UniformAllocationSpec.FromEquilibrium(index, allocation,
                                                     prices)
        uniform = UniformAllocation(index, spec)
        payments = bids.areaTotalsArray
        for mechanism in plan.mechanisms:
            if mechanism == "drp":
                records = BuildRecords(
                    mechanism, allocation, uniform, replication, seed, load,
                    report.iterations, kktResidual, report.converged)
            else:
                if mechanism == "md-drf":
                    baseline = MultiDomainDrf(index, weights=payments)
                elif mechanism == "pd-drf":
                    baseline = PerDomainDrf(index, weights=payments)
                else:
                    baseline = uniform
                records = BuildRecords(mechanism, baseline, uniform,
                                       replication, seed, load)
            result.records.extend(records)
        logger.debug("Replication %d (%s load): DRP %s after %d rounds"
                     % (replication, load,
                        "converged" if report.converged else "stopped",
                        report.iterations))
    return result


class ExperimentController(object):
    """
    Runs the replications of an ExperimentPlan on worker threads.

    Usage:

        controller = ExperimentController(plan)
        controller.Run()
        EmitTables(controller.records, "metrics.csv")
    """
    def __init__(self, plan):
        self.plan = plan
        self.seeds = ReplicationSeeds(
            plan.scenarioConfig.seed if plan.scenarioConfig is not None
            else 0, plan.replications)
        self.results = []
        self.errors = []
        self.completed = 0
        self.aborted = False
        self.replicationsQueue = None
        self.workerThreads = []

    @property
    def records(self):
        """
        Every MetricsRecord, in replication order
        """
        return [record for result in self.results
                for record in result.records]

    @property
    def nonConverged(self):
        """
        Number of replications with a non-converged auction
        """
        return sum(1 for result in self.results if not result.converged)

    def ReplicationWorker(self):
        """
        One worker per thread.  Takes replication ids from the queue
        until it gets None or an abort is requested.
        """
        while True:
            replication = self.replicationsQueue.get()
            if replication is None or FLAGS.shouldAbort:
                self.replicationsQueue.task_done()
                return
            try:
                result = RunReplication(self.plan, replication,
                                        self.seeds[replication])
                with LOCKS.addRecords:
                    self.results.append(result)
            except Exception as err:  # pylint: disable=broad-except
                logger.error(traceback.format_exc())
                with LOCKS.addRecords:
                    self.errors.append(err)
                FLAGS.shouldAbort = True
            finally:
                self.replicationsQueue.task_done()
            with LOCKS.updateProgress:
                self.completed += 1
                logger.info("Completed %d of %d replications"
                            % (self.completed, self.plan.replications))

    def Run(self):
        """
        Run every replication; re-raises the first replication error.
        """
        plan = self.plan
        FLAGS.shouldAbort = False
        FLAGS.runningExperiment = True
        self.replicationsQueue = Queue()
        for replication in range(plan.replications):
            self.replicationsQueue.put(replication)
        numThreads = min(plan.workerThreads, plan.replications)
        for _ in range(numThreads):
            self.replicationsQueue.put(None)
        logger.info("Starting %d replication(s) on %d worker thread(s)"
                    % (plan.replications, numThreads))
        self.workerThreads = []
        for i in range(numThreads):
            thread = threading.Thread(
                name="ReplicationWorkerThread-%d" % (i + 1),
                target=self.ReplicationWorker)
            thread.daemon = True
            self.workerThreads.append(thread)
            thread.start()
        try:
            self.JoinWorkers()
        except KeyboardInterrupt:
            logger.warning("Interrupted; finishing current replications")
            FLAGS.shouldAbort = True
            self.aborted = True
            self.JoinWorkers()
        finally:
            FLAGS.runningExperiment = False
        self.results.sort(key=lambda result: result.replication)
        logger.debug("Replication worker threads finished")
        if self.errors:
            raise self.errors[0]
        if FLAGS.shouldAbort:
            self.aborted = True
        return self.results

    def JoinWorkers(self):
        """
        Wait for the workers, waking up regularly so that Ctrl-C is
        delivered to the main thread.
        """
        for thread in self.workerThreads:
            while thread.is_alive():
                thread.join(0.2)


def RunExperiment(plan):
    """
    Run a plan and return its ExperimentController.
    """
    controller = ExperimentController(plan)
    controller.Run()
    return controller
