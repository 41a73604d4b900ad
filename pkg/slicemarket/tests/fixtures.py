"""
Small hand-checkable scenarios shared by the tests.

Every path must cross one RAN, one CRAN and one CN node, so scenarios
about a single node route through "pass-through" CRAN and CN nodes with
huge capacity and negligible OPEX.  Their prices stay at PASS_THROUGH_OPEX
and add 2 * PASS_THROUGH_OPEX to every path cost.
"""
import os

from ..constants import CN
from ..constants import CRAN
from ..constants import RAN
from ..harness.scenariofile import LoadScenario
from ..models.scenario import Scenario
from ..models.slice import DemandVector
from ..models.slice import SliceAreaSpec
from ..models.slice import SliceSpec
from ..models.topology import NodeSpec
from ..models.topology import PathSpec
from ..models.topology import TopologySpec
from ..utility import UtilityParams

PASS_THROUGH_CAPACITY = 1e9
PASS_THROUGH_OPEX = 1e-9

EIGHT_RESOURCES = ["cpu", "ram", "storage", "mem_bw", "in_port",
                   "out_port", "radio", "fronthaul"]
EIGHT_DEMAND = [0.5, 2.0, 0.1, 0.75, 1.1, 0.0, 0.0, 0.0]
EIGHT_CAPACITY = [16.0, 32.0, 1.0, 10.0, 2.5, 2.5, 10.0, 10.0]


def CounterExamplePath():
    """
    The scenario file shipped with the package
    """
    return os.path.join(
        os.path.dirname(os.path.dirname(os.path.realpath(__file__))),
        "scenarios", "counterexample.yaml")


def CounterExampleScenario():
    """
    Three slices, two access points and one CRAN whose CPU is the real
    bottleneck: ap1 (8 Gb/s) serves s1, ap2 (16 Gb/s) serves s2 and s3,
    and the CRAN has 20 CPU units.
    """
    return LoadScenario(CounterExamplePath())


def PassThroughNodes():
    """
    CRAN "cran1" and CN "cn1" which never constrain anything.
    """
    return [NodeSpec("cran1", CRAN, ["cpu"], [PASS_THROUGH_CAPACITY],
                     [PASS_THROUGH_OPEX]),
            NodeSpec("cn1", CN, ["cpu"], [PASS_THROUGH_CAPACITY],
                     [PASS_THROUGH_OPEX])]


def UnitSlice(sliceId, paths, phi=20.0, alpha=1.0, budget=10000.0,
              z0=None):
    """
    A slice demanding one unit of every resource of every node of the
    given paths, active in every area they serve.
    """
    areas = dict()
    demands = dict()
    for path in paths:
        areas[path.area] = SliceAreaSpec(UtilityParams(phi, alpha, z0),
                                         budget)
        for nodeId in path.nodeIds:
            demands[(path.pathId, nodeId)] = DemandVector([1.0])
    return SliceSpec(sliceId, areas, demands)


def SingleNodeScenario(capacity=10.0, phi=20.0, alpha=1.0, slices=1,
                       opex=1.0, budget=10000.0, z0=None):
    """
    One RAN node "n1" with one resource "bw" of the given capacity and
    OPEX, one path "p1" in area 1, and identical slices s1, s2, ...
    demanding one unit per Gb/s.

    With the defaults the equilibrium is x = 10, mu = 2, w = 20.
    """
    nodes = [NodeSpec("n1", RAN, ["bw"], [capacity], [opex])] + \
        PassThroughNodes()
    path = PathSpec("p1", 1, ["n1", "cran1", "cn1"])
    topology = TopologySpec(nodes, 1, [path])
    sliceSpecs = [UnitSlice("s%d" % number, [path], phi, alpha, budget, z0)
                  for number in range(1, slices + 1)]
    return Scenario(topology, sliceSpecs)


def EmptyScenario():
    """
    The single-node topology with no slices.
    """
    return SingleNodeScenario(slices=0)


def TwoPathTopology(cranOpex=(1.0, 1.0), cranCapacity=(100.0, 100.0)):
    """
    Area 1 reaches one access point "ap" (capacity 100) and two CRAN
    nodes, so it has paths "p1" (via cran1) and "p2" (via cran2).  The
    CN is a pass-through node.
    """
    nodes = [NodeSpec("ap", RAN, ["bw"], [100.0], [1.0]),
             NodeSpec("cran1", CRAN, ["cpu"], [cranCapacity[0]],
                      [cranOpex[0]]),
             NodeSpec("cran2", CRAN, ["cpu"], [cranCapacity[1]],
                      [cranOpex[1]]),
             NodeSpec("cn1", CN, ["cpu"], [PASS_THROUGH_CAPACITY],
                      [PASS_THROUGH_OPEX])]
    paths = [PathSpec("p1", 1, ["ap", "cran1", "cn1"]),
             PathSpec("p2", 1, ["ap", "cran2", "cn1"])]
    return TopologySpec(nodes, 1, paths)


def TwoPathScenario(phi=9.0, slices=1, cranOpex=(1.0, 1.0),
                    cranCapacity=(100.0, 100.0)):
    """
    Slices s1, s2, ... on TwoPathTopology.
    """
    topology = TwoPathTopology(cranOpex, cranCapacity)
    paths = topology.pathsByArea[1]
    return Scenario(topology, [UnitSlice("s%d" % number, paths, phi)
                               for number in range(1, slices + 1)])


def EightResourceScenario():
    """
    One slice on one path whose access point "ap" has eight resources
    with capacities EIGHT_CAPACITY; the slice demands EIGHT_DEMAND there.
    """
    nodes = [NodeSpec("ap", RAN, EIGHT_RESOURCES, EIGHT_CAPACITY,
                      [1.0] * len(EIGHT_RESOURCES))] + PassThroughNodes()
    path = PathSpec("p1", 1, ["ap", "cran1", "cn1"])
    topology = TopologySpec(nodes, 1, [path])
    demands = {("p1", "ap"): DemandVector(EIGHT_DEMAND),
               ("p1", "cran1"): DemandVector([1.0]),
               ("p1", "cn1"): DemandVector([1.0])}
    sliceSpec = SliceSpec(
        "s1", {1: SliceAreaSpec(UtilityParams(20.0, 1.0), 10000.0)},
        demands)
    return Scenario(topology, [sliceSpec])
