"""
Test per-area traffic totals, per-node allocations and the capacity
feasibility check.
"""
import numpy as np

from ...models.allocation import AggregateAreaTraffic
from ...models.allocation import AllocationState
from ...models.allocation import CheckFeasibility
from ...models.allocation import NodeAllocation
from ...models.scenario import ScenarioIndex
from ...models.slice import DemandVector
from ...models.slice import SliceAreaSpec
from ...models.slice import SliceSpec
from ...utility import UtilityParams
from ...utils.exceptions import StructuralError
from ..fixtures import EIGHT_DEMAND
from ..fixtures import EightResourceScenario
from ..fixtures import TwoPathScenario
from ..fixtures import TwoPathTopology
from .. import SliceMarketTester


class AggregateAreaTrafficTester(SliceMarketTester):
    """
    Test summing per-path traffic into per-area traffic.
    """
    def test_paths_of_one_area_are_summed(self):
        """
        Traffic on two paths of one area adds up.
        """
        topology = TwoPathTopology()
        xArea = AggregateAreaTraffic({("n1", "p1"): 3.0, ("n1", "p2"): 5.0},
                                     topology)
        self.assertEqual(xArea, {("n1", 1): 8.0})

    def test_zero_traffic(self):
        """
        All-zero traffic aggregates to zero.
        """
        topology = TwoPathTopology()
        xArea = AggregateAreaTraffic({("n1", "p1"): 0.0, ("n1", "p2"): 0.0},
                                     topology)
        self.assertEqual(xArea, {("n1", 1): 0.0})

    def test_unknown_path(self):
        """
        An unknown path id is a structural error.
        """
        with self.assertRaises(StructuralError) as contextManager:
            AggregateAreaTraffic({("n1", "p9"): 1.0}, TwoPathTopology())
        self.assertEqual(contextManager.exception.key, "p9")


class NodeAllocationTester(SliceMarketTester):
    """
    Test a_{n,i,r} = sum over paths of x d.
    """
    def test_one_unit_of_traffic(self):
        """
        One Gb/s consumes exactly the demand vector.
        """
        scenario = EightResourceScenario()
        allocation = NodeAllocation({("s1", "p1"): 1.0}, scenario.slices,
                                    scenario.topology)
        self.assertEqual(allocation[("s1", "ap")].ToList(), EIGHT_DEMAND)

    def test_linear_scaling(self):
        """
        Twice the traffic consumes twice the resources.
        """
        scenario = EightResourceScenario()
        allocation = NodeAllocation({("s1", "p1"): 2.0}, scenario.slices,
                                    scenario.topology)
        np.testing.assert_allclose(
            allocation[("s1", "ap")].values,
            [1.0, 4.0, 0.2, 1.5, 2.2, 0.0, 0.0, 0.0])

    def test_two_paths_through_one_node(self):
        """
        Demands of two paths crossing one node add up.
        """
        topology = TwoPathTopology()
        demands = {("p1", "ap"): DemandVector([1.0]),
                   ("p1", "cran1"): DemandVector([1.0]),
                   ("p1", "cn1"): DemandVector([1.0]),
                   ("p2", "ap"): DemandVector([2.5]),
                   ("p2", "cran2"): DemandVector([1.0]),
                   ("p2", "cn1"): DemandVector([1.0])}
        sliceSpec = SliceSpec(
            "s1", {1: SliceAreaSpec(UtilityParams(10.0, 1.0), 100.0)},
            demands)
        allocation = NodeAllocation({("s1", "p1"): 1.0, ("s1", "p2"): 1.0},
                                    [sliceSpec], topology)
        self.assertAlmostEqual(allocation[("s1", "ap")][0], 3.5)
        self.assertAlmostEqual(allocation[("s1", "cn1")][0], 2.0)
        self.assertAlmostEqual(allocation[("s1", "cran2")][0], 1.0)

    def test_missing_demand_vector(self):
        """
        A path node without a demand vector is a structural error.
        """
        topology = TwoPathTopology()
        sliceSpec = SliceSpec(
            "s1", {1: SliceAreaSpec(UtilityParams(10.0, 1.0), 100.0)},
            {("p1", "ap"): DemandVector([1.0])})
        with self.assertRaises(StructuralError):
            NodeAllocation({("s1", "p1"): 1.0}, [sliceSpec], topology)


class FeasibilityTester(SliceMarketTester):
    """
    Test the capacity check.
    """
    def test_feasible(self):
        """
        x = 2 uses 2.2 of the 2.5 inbound port capacity.
        """
        scenario = EightResourceScenario()
        report = CheckFeasibility({("s1", "p1"): 2.0}, scenario.slices,
                                  scenario.topology)
        self.assertTrue(report.feasible)
        self.assertTrue(report)
        self.assertEqual(report.violations, [])

    def test_overloaded_port(self):
        """
        x = 3 needs 3.3 of the inbound port, which only has 2.5.
        """
        scenario = EightResourceScenario()
        report = CheckFeasibility({("s1", "p1"): 3.0}, scenario.slices,
                                  scenario.topology)
        self.assertFalse(report.feasible)
        self.assertEqual(len(report.violations), 1)
        nodeId, resource, overload = report.violations[0]
        self.assertEqual((nodeId, resource), ("ap", "in_port"))
        self.assertAlmostEqual(overload, 0.8)

    def test_empty_allocation(self):
        """
        Nothing allocated is always feasible.
        """
        scenario = EightResourceScenario()
        self.assertTrue(CheckFeasibility({}, scenario.slices,
                                         scenario.topology).feasible)

    def test_array_form_agrees(self):
        """
        AllocationState.Feasibility reports the same violation.
        """
        index = ScenarioIndex(EightResourceScenario())
        allocation = AllocationState.FromMap(index, {("s1", "p1"): 3.0})
        report = allocation.Feasibility()
        self.assertEqual([violation[:2] for violation in report.violations],
                         [("ap", "in_port")])
        self.assertAlmostEqual(report.violations[0][2], 0.8)


class AllocationStateTester(SliceMarketTester):
    """
    Test the array form of an allocation.
    """
    def test_derived_quantities(self):
        """
        Per-area totals, node allocations and loads follow from x.
        """
        index = ScenarioIndex(TwoPathScenario(slices=2))
        allocation = AllocationState.FromMap(
            index, {("s1", "p1"): 1.0, ("s1", "p2"): 2.0,
                    ("s2", "p2"): 4.0})
        self.assertEqual(allocation.xArea, {("s1", 1): 3.0, ("s2", 1): 4.0})
        self.assertEqual(allocation.xPath[("s2", "p1")], 0.0)
        nodeAlloc = allocation.nodeAlloc
        self.assertAlmostEqual(nodeAlloc[("s1", "ap")][0], 3.0)
        self.assertAlmostEqual(nodeAlloc[("s2", "cran2")][0], 4.0)
        loads = index.KeysToMap(allocation.loads)
        self.assertAlmostEqual(loads[("ap", "bw")], 7.0)
        self.assertAlmostEqual(loads[("cran1", "cpu")], 1.0)
        self.assertAlmostEqual(loads[("cran2", "cpu")], 6.0)
        utilization = index.KeysToMap(allocation.Utilization())
        self.assertAlmostEqual(utilization[("ap", "bw")], 0.07)

    def test_opex_per_unit_traffic(self):
        """
        OPEX per Gb/s: the sum of q d over the path.
        """
        index = ScenarioIndex(EightResourceScenario())
        allocation = AllocationState.FromMap(index, {("s1", "p1"): 2.0})
        self.assertAlmostEqual(allocation.OpexPerUnitTraffic(),
                               sum(EIGHT_DEMAND), places=6)
        self.assertEqual(AllocationState(index).OpexPerUnitTraffic(), 0.0)

    def test_invalid_traffic(self):
        """
        Negative traffic, wrong shapes and unknown pairs are rejected.
        """
        index = ScenarioIndex(TwoPathScenario())
        with self.assertRaises(StructuralError):
            AllocationState(index, [-1.0, 0.0])
        with self.assertRaises(StructuralError):
            AllocationState(index, [1.0])
        with self.assertRaises(StructuralError):
            AllocationState.FromMap(index, {("s9", "p1"): 1.0})

    def test_copy_is_independent(self):
        """
        Changing a copy leaves the original alone.
        """
        index = ScenarioIndex(TwoPathScenario())
        allocation = AllocationState(index, [1.0, 2.0])
        copy = allocation.Copy()
        copy.xColumns[0] = 5.0
        self.assertEqual(allocation.xColumns[0], 1.0)
