"""
Synthetic scenarios on the reference multi-domain topology: five areas
with two access points each (one of each AP type), two CRAN data
centers and one core network data center.  Areas 2-4 reach both CRANs,
area 1 only the first and area 5 only the second.

Demand data is drawn per 100 Mb/s of traffic and rescaled to Gb/s;
OPEX and budgets are in cents.
"""
import numpy as np

from ..constants import CENTS_PER_DOLLAR
from ..constants import CN
from ..constants import CRAN
from ..constants import PER_100MBPS_TO_PER_GBPS
from ..constants import RAN
from ..logs import logger
from ..mechanisms.drp import DrpConfig
from ..mechanisms.drp import RunAuction
from ..models.scenario import Scenario
from ..models.slice import DemandVector
from ..models.slice import SliceAreaSpec
from ..models.slice import SliceSpec
from ..models.topology import NodeSpec
from ..models.topology import PathSpec
from ..models.topology import TopologySpec
from ..utility import DelayParams
from ..utility import UtilityParams
from ..utils.exceptions import InvalidScenario

RESOURCES = ["cpu", "ram", "mem_bw", "comm_bw"]

# Capacities: cores, GB, Gb/s memory bandwidth, Gb/s communication
# bandwidth.
CAPACITIES = {
    "ap_type1": [16.0, 32.0, 10.0, 1.0],
    "ap_type2": [8.0, 16.0, 5.0, 1.0],
    "cran": [48.0, 384.0, 40.0, 7.0],
    "cn": [96.0, 384.0, 100.0, 14.0],
}

# OPEX ranges in cents per unit, in RESOURCES order:
OPEX_RANGES = [(1.0, 2.0), (0.5, 1.0), (0.5, 1.0), (1.0, 10.0)]

NUM_AREAS = 5
CRAN_REACH = {1: ["cran1"], 2: ["cran1", "cran2"], 3: ["cran1", "cran2"],
              4: ["cran1", "cran2"], 5: ["cran2"]}
RAN_COMM_COEFFICIENTS = [1.0, 2.0, 4.0, 6.0]
LOAD_FACTORS = {"high": 1.0, "mid": 0.5, "low": 0.25}
TEMPLATES = ("metro",)


class ScenarioConfig(object):
    """
    Everything that determines a generated scenario.

    phi is the per slice-area traffic demand scale of the custom load
    level at referenceSlices slices; other load levels are calibrated.
    Every phi is multiplied by referenceSlices / slices.
    """
    # pylint: disable=too-many-arguments
    def __init__(self, seed=1, slices=50, load="high", template="metro",
                 alphaRange=(1.0, 2.0), phi=None, budgetDollars=100.0,
                 packetLength=12000.0, hops=3, beta=0.0,
                 referenceSlices=50, calibrationTolerance=0.01):
        self.seed = seed
        self.slices = int(slices)
        self.load = load
        self.template = template
        self.alphaRange = (float(alphaRange[0]), float(alphaRange[1]))
        self.phi = phi
        self.budgetDollars = float(budgetDollars)
        self.packetLength = float(packetLength)
        self.hops = int(hops)
        self.beta = float(beta)
        self.referenceSlices = int(referenceSlices)
        self.calibrationTolerance = float(calibrationTolerance)
        self.Validate()

    def Validate(self):
        """
        Raise InvalidScenario for invalid overrides.
        """
        if self.slices < 0:
            raise InvalidScenario("The slice count can't be negative",
                                  "slices")
        if self.load not in LOAD_FACTORS and self.load != "custom":
            raise InvalidScenario("Unknown load level %r" % self.load,
                                  "load")
        if self.load == "custom" and not (self.phi and self.phi > 0):
            raise InvalidScenario("The custom load level needs phi > 0",
                                  "phi")
        if self.template not in TEMPLATES:
            raise InvalidScenario("Unknown topology template %r"
                                  % self.template, "template")
        low, high = self.alphaRange
        if not 0 < low <= high:
            raise InvalidScenario(
                "Invalid alpha range [%g, %g]" % (low, high), "alpha_range")
        if self.referenceSlices < 1:
            raise InvalidScenario("reference_slices must be at least 1",
                                  "reference_slices")
        if not self.budgetDollars > 0:
            raise InvalidScenario("Budgets must be positive",
                                  "budget_dollars")
        if not 0 < self.calibrationTolerance < 1:
            raise InvalidScenario(
                "The calibration tolerance must lie in (0, 1)",
                "calibration_tolerance")

    @classmethod
    def FromSettings(cls, settings, **overrides):
        """
        Build from the [scenario] section of a SettingsModel; keyword
        overrides replace individual fields (e.g. seed=...).
        """
        scenario = settings.scenario
        values = dict(
            seed=scenario.seed, slices=scenario.slices, load=scenario.load,
            template=scenario.template,
            alphaRange=(scenario.alphaMin, scenario.alphaMax),
            phi=scenario.phi if scenario.load == "custom" else None,
            budgetDollars=scenario.budgetDollars,
            packetLength=scenario.packetLength, hops=scenario.hops,
            beta=scenario.beta, referenceSlices=scenario.referenceSlices,
            calibrationTolerance=scenario.calibrationTolerance)
        values.update(overrides)
        return cls(**values)

    def WithLoad(self, load, phi=None):
        """
        Copy with a different load level.
        """
        return ScenarioConfig(
            self.seed, self.slices, load, self.template, self.alphaRange,
            phi, self.budgetDollars, self.packetLength, self.hops,
            self.beta, self.referenceSlices, self.calibrationTolerance)


def _Rng(seed):
    if isinstance(seed, np.random.SeedSequence):
        return np.random.default_rng(seed)
    return np.random.default_rng(np.random.SeedSequence(seed))


def MetroTopology(rng):
    """
    Reference topology with OPEX drawn from rng.
    """
    nodes = []
    nodeTypes = []
    for area in range(1, NUM_AREAS + 1):
        nodeTypes.append(("ap%d.1" % area, RAN, "ap_type1"))
        nodeTypes.append(("ap%d.2" % area, RAN, "ap_type2"))
    nodeTypes.append(("cran1", CRAN, "cran"))
    nodeTypes.append(("cran2", CRAN, "cran"))
    nodeTypes.append(("cn", CN, "cn"))
    for nodeId, domain, nodeType in nodeTypes:
        opex = [rng.uniform(low, high) for low, high in OPEX_RANGES]
        nodes.append(NodeSpec(nodeId, domain, RESOURCES,
                              CAPACITIES[nodeType], opex))
    paths = []
    for area in range(1, NUM_AREAS + 1):
        for apType in (1, 2):
            for cran in CRAN_REACH[area]:
                apId = "ap%d.%d" % (area, apType)
                paths.append(PathSpec("%s-%s" % (apId, cran), area,
                                      [apId, cran, "cn"]))
    return TopologySpec(nodes, NUM_AREAS, paths)


def _DrawDemand(rng, domain, ranCommCoefficient):
    """
    One demand vector per Gb/s, drawn per 100 Mb/s and rescaled.
    """
    cpuCoefficient = 2.0 if domain == RAN else 1.0
    commCoefficient = ranCommCoefficient if domain == RAN else 2.0
    per100Mbps = [
        cpuCoefficient * rng.uniform(0.4, 0.8),
        rng.uniform(1.0, 2.0),
        rng.uniform(10.0, 20.0) / 1000.0,
        commCoefficient * rng.uniform(50.0, 100.0) / 1000.0,
    ]
    return DemandVector(np.array(per100Mbps) * PER_100MBPS_TO_PER_GBPS)


def _DrawSlices(rng, topology, config):
    phi = config.referenceSlices / float(max(config.slices, 1))
    budget = config.budgetDollars * CENTS_PER_DOLLAR
    delay = DelayParams(config.packetLength, config.hops, config.beta)
    slices = []
    width = len(str(max(config.slices, 1)))
    for number in range(1, config.slices + 1):
        alpha = rng.uniform(*config.alphaRange)
        ranCommCoefficient = float(rng.choice(RAN_COMM_COEFFICIENTS))
        nodeDemands = dict()
        for nodeId in topology.SortedNodeIds():
            nodeDemands[nodeId] = _DrawDemand(
                rng, topology.nodes[nodeId].domain, ranCommCoefficient)
        demands = dict(((path.pathId, nodeId), nodeDemands[nodeId])
                       for path in topology.SortedPaths()
                       for nodeId in path.nodeIds)
        areas = dict((area, SliceAreaSpec(UtilityParams(phi, alpha), budget,
                                          delay))
                     for area in topology.areas)
        slices.append(SliceSpec("s%0*d" % (width, number), areas, demands))
    return slices


def GenerateScenario(config, drpConfig=None):
    """
    Build a scenario from config, calibrating phi for the high, mid and
    low load levels.

    :returns: Scenario whose config records the load and the phi scale
    """
    rng = _Rng(config.seed)
    topology = MetroTopology(rng)
    slices = _DrawSlices(rng, topology, config)
    scenario = Scenario(topology, slices)
    if config.load == "custom":
        scale = float(config.phi)
    elif not slices:
        scale = 1.0
    else:
        scale = CalibrateHighLoad(scenario, drpConfig,
                                  config.calibrationTolerance)
        scale *= LOAD_FACTORS[config.load]
    scaled = scenario.ScaledPhi(scale)
    scaled.config = dict(load=config.load, phi_scale=scale)
    logger.info("Generated scenario: seed %s, %d nodes, %d paths, %d slices, "
                "load %s (phi scale %.6g)"
                % (config.seed, len(topology.nodes), len(topology.paths),
                   len(slices), config.load, scale))
    return scaled


def EveryPathBottlenecked(scenario, prices):
    """
    True if every routing path crosses a fully booked resource.
    """
    topology = scenario.topology
    eta = prices.EtaMap()
    for path in topology.SortedPaths():
        if not any(eta.get((nodeId, resource), 0.0) >= 1.0 - 1e-12
                   for nodeId in path.nodeIds
                   for resource in topology.nodes[nodeId].resources):
            return False
    return True


def CalibrateHighLoad(scenario, drpConfig=None, tolerance=0.01,
                      maxDoublings=60):
    """
    Smallest global phi scale (within tolerance, relative) at which the
    auction's equilibrium has a bottleneck on every routing path.
    """
    drpConfig = drpConfig if drpConfig is not None else DrpConfig()

    def Bottlenecked(scale):
        _, prices, _, report = RunAuction(scenario.ScaledPhi(scale),
                                          drpConfig)
        result = EveryPathBottlenecked(scenario, prices)
        logger.debug("Calibration run: scale %.6g -> %s after %d rounds"
                     % (scale, "bottlenecked" if result else "slack",
                        report.iterations))
        return result

    low, high = 1.0, 1.0
    if Bottlenecked(1.0):
        for _ in range(maxDoublings):
            low = high / 2.0
            if not Bottlenecked(low):
                break
            high = low
        else:
            return high
    else:
        for _ in range(maxDoublings):
            low = high
            high = 2.0 * high
            if Bottlenecked(high):
                break
        else:
            raise InvalidScenario(
                "No phi scale up to %g bottlenecks every path" % high,
                "load")
    while (high - low) > tolerance * high:
        middle = 0.5 * (low + high)
        if Bottlenecked(middle):
            high = middle
        else:
            low = middle
    logger.info("Calibrated high load: phi scale %.6g" % high)
    return high
