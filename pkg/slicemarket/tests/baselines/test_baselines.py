"""
Test the comparison allocators on the counter-example scenario and on
single-node scenarios.
"""
import numpy as np

from ...mechanisms.baselines import DesignatedPaths
from ...mechanisms.baselines import MultiDomainDominantShares
from ...mechanisms.baselines import MultiDomainDrf
from ...mechanisms.baselines import PerDomainDrf
from ...mechanisms.baselines import ProgressiveFill
from ...mechanisms.baselines import SharingIncentiveViolationScan
from ...mechanisms.baselines import UniformAllocation
from ...mechanisms.baselines import UniformAllocationSpec
from ...models.allocation import AllocationState
from ...models.prices import PriceTable
from ...models.scenario import ScenarioIndex
from ...utils.exceptions import StructuralError
from ..fixtures import CounterExampleScenario
from ..fixtures import EmptyScenario
from ..fixtures import SingleNodeScenario
from ..fixtures import TwoPathScenario
from .. import SliceMarketTester

# Slice-areas of the counter-example, in group order:
GROUPS = [("s1", 1), ("s2", 2), ("s3", 2)]


def AreaTraffic(allocation):
    """
    x_{n,l} of the counter-example, in group order.
    """
    xArea = allocation.xArea
    return [xArea[key] for key in GROUPS]


class ProgressiveFillTester(SliceMarketTester):
    """
    Test event-driven filling on tiny demand matrices.
    """
    def test_two_bottlenecks(self):
        """
        Both flows use key 0 (C = 10), flow 2 also key 1 (C = 4): flow 2
        stops at 4, flow 1 takes the remaining 6.
        """
        volume = ProgressiveFill(np.array([[1.0, 1.0], [0.0, 1.0]]),
                                 np.array([10.0, 4.0]),
                                 np.array([1.0, 1.0]),
                                 np.array([np.inf, np.inf]))
        np.testing.assert_allclose(volume, [6.0, 4.0])

    def test_caps(self):
        """
        A capped flow stops early and leaves room for the other.
        """
        volume = ProgressiveFill(np.array([[1.0, 1.0], [0.0, 1.0]]),
                                 np.array([10.0, 4.0]),
                                 np.array([1.0, 1.0]),
                                 np.array([1.0, np.inf]))
        np.testing.assert_allclose(volume, [1.0, 4.0])

    def test_zero_rate_stays_at_zero(self):
        """
        Zero-weight flows never grow.
        """
        volume = ProgressiveFill(np.array([[1.0, 1.0]]), np.array([10.0]),
                                 np.array([0.0, 2.0]),
                                 np.array([np.inf, np.inf]))
        np.testing.assert_allclose(volume, [0.0, 10.0])

    def test_unbounded(self):
        """
        A flow which uses nothing and has no cap grows forever.
        """
        with self.assertRaises(StructuralError):
            ProgressiveFill(np.array([[0.0]]), np.array([1.0]),
                            np.array([1.0]), np.array([np.inf]))


class DesignatedPathsTester(SliceMarketTester):
    """
    Test the choice of a single path per slice-area.
    """
    def test_largest_bottleneck_wins(self):
        """
        cran1 has 10 CPU units, cran2 100: p2 is designated.
        """
        index = ScenarioIndex(TwoPathScenario(cranCapacity=(10.0, 100.0)))
        np.testing.assert_array_equal(DesignatedPaths(index), [1])

    def test_ties_go_to_lowest_path_id(self):
        """
        Identical paths: p1 is designated.
        """
        index = ScenarioIndex(TwoPathScenario(slices=2))
        np.testing.assert_array_equal(DesignatedPaths(index), [0, 2])

    def test_no_slices(self):
        """
        No slice-areas, nothing designated.
        """
        index = ScenarioIndex(EmptyScenario())
        self.assertEqual(len(DesignatedPaths(index)), 0)


class MultiDomainDrfTester(SliceMarketTester):
    """
    Test multi-domain DRF.
    """
    def test_counter_example(self):
        """
        Equal dominant shares x1/8 = x2/16 = x3/16 until the CRAN CPU
        (20 units) saturates: x = (4, 8, 8).
        """
        allocation = MultiDomainDrf(CounterExampleScenario())
        np.testing.assert_allclose(AreaTraffic(allocation),
                                   [4.0, 8.0, 8.0])
        self.assertTrue(allocation.Feasibility().feasible)

    def test_dominant_shares(self):
        """
        Every slice's dominant resource is its access point bandwidth,
        and all dominant shares are 1/2.
        """
        scenario = CounterExampleScenario()
        index = ScenarioIndex(scenario)
        allocation = MultiDomainDrf(index)
        info = MultiDomainDominantShares(index, allocation)
        self.assertEqual(info.groupKeys, GROUPS)
        np.testing.assert_allclose(info.shares, [0.5, 0.5, 0.5])
        np.testing.assert_allclose(info.weightedShares, [0.5, 0.5, 0.5])
        self.assertEqual(info.dominantKeys, [("ap1", "comm_bw"),
                                             ("ap2", "comm_bw"),
                                             ("ap2", "comm_bw")])

    def test_weights(self):
        """
        Doubling s1's weight gives all three slices the same growth
        rate, hence 20/3 each.
        """
        weights = {("s1", 1): 2.0, ("s2", 2): 1.0, ("s3", 2): 1.0}
        allocation = MultiDomainDrf(CounterExampleScenario(),
                                    weights=weights, satiation=False)
        np.testing.assert_allclose(AreaTraffic(allocation),
                                   [20.0 / 3.0] * 3)

    def test_satiation(self):
        """
        In weighted mode flows stop where U' meets the OPEX cost:
        phi = 10 over a cost of 3 gives 10/3.
        """
        allocation = MultiDomainDrf(CounterExampleScenario(),
                                    weights=[1.0, 1.0, 1.0])
        np.testing.assert_allclose(AreaTraffic(allocation),
                                   [10.0 / 3.0] * 3)

    def test_single_slice(self):
        """
        One slice fills its node.
        """
        allocation = MultiDomainDrf(SingleNodeScenario())
        self.assertAlmostEqual(allocation.xPath[("s1", "p1")], 10.0)

    def test_bad_designated_paths(self):
        """
        Designated columns must cover each slice-area exactly once.
        """
        scenario = TwoPathScenario(slices=2)
        with self.assertRaises(StructuralError):
            MultiDomainDrf(scenario, designated=[0, 1])
        with self.assertRaises(StructuralError):
            MultiDomainDrf(scenario, weights=[1.0])

    def test_no_slices(self):
        """
        Nothing to fill.
        """
        allocation = MultiDomainDrf(EmptyScenario())
        self.assertEqual(allocation.xPath, {})


class PerDomainDrfTester(SliceMarketTester):
    """
    Test per-domain DRF.
    """
    def test_counter_example(self):
        """
        The CRAN stage gives 20/3 each; the access points don't bind.
        """
        allocation = PerDomainDrf(CounterExampleScenario())
        np.testing.assert_allclose(AreaTraffic(allocation),
                                   [20.0 / 3.0] * 3)
        self.assertTrue(allocation.Feasibility().feasible)

    def test_single_slice(self):
        """
        The pass-through stages grant plenty; the RAN node caps at 10.
        """
        allocation = PerDomainDrf(SingleNodeScenario())
        self.assertAlmostEqual(allocation.xPath[("s1", "p1")], 10.0)

    def test_no_slices(self):
        """
        Nothing to fill.
        """
        self.assertEqual(PerDomainDrf(EmptyScenario()).xPath, {})


class UniformAllocationTester(SliceMarketTester):
    """
    Test the uniform allocation and the sharing-incentive scan.
    """
    def test_equal_weights(self):
        """
        Each slice gets the CRAN CPU divided by three: 20/3.
        """
        index = ScenarioIndex(CounterExampleScenario())
        uniform = UniformAllocation(
            index, UniformAllocationSpec.EqualWeights(index))
        np.testing.assert_allclose(AreaTraffic(uniform), [20.0 / 3.0] * 3)

    def test_multi_domain_drf_violates_sharing_incentive(self):
        """
        s1 gets 4 instead of 20/3: shortfall 0.4.
        """
        index = ScenarioIndex(CounterExampleScenario())
        uniform = UniformAllocation(
            index, UniformAllocationSpec.EqualWeights(index))
        violations = SharingIncentiveViolationScan(MultiDomainDrf(index),
                                                   uniform)
        self.assertEqual(len(violations), 1)
        sliceId, area, shortfall = violations[0]
        self.assertEqual((sliceId, area), ("s1", 1))
        self.assertAlmostEqual(shortfall, 0.4)

    def test_per_domain_drf_passes(self):
        """
        Per-domain DRF matches the uniform share exactly.
        """
        index = ScenarioIndex(CounterExampleScenario())
        uniform = UniformAllocation(
            index, UniformAllocationSpec.EqualWeights(index))
        self.assertEqual(
            SharingIncentiveViolationScan(PerDomainDrf(index), uniform), [])
        self.assertEqual(SharingIncentiveViolationScan(uniform, uniform), [])

    def test_from_equilibrium(self):
        """
        At the two-slice equilibrium (x = 5 each, mu = 4) both slices pay
        the same, so each gets half the node: 5.
        """
        scenario = SingleNodeScenario(slices=2)
        index = ScenarioIndex(scenario)
        allocation = AllocationState(index, [5.0, 5.0])
        prices = PriceTable.FromNodePrices(
            {"n1": [4.0], "cran1": [1e-9], "cn1": [1e-9]}, scenario.topology)
        spec = UniformAllocationSpec.FromEquilibrium(index, allocation,
                                                     prices)
        self.assertAlmostEqual(spec.eta[index.keyIndex[("n1", "bw")]], 1.0)
        uniform = UniformAllocation(index, spec)
        np.testing.assert_allclose(uniform.xColumns, [5.0, 5.0])
        self.assertEqual(SharingIncentiveViolationScan(allocation, uniform),
                         [])

    def test_spec_shapes(self):
        """
        Mis-shaped inputs and negative weights are structural errors.
        """
        index = ScenarioIndex(SingleNodeScenario())
        with self.assertRaises(StructuralError):
            UniformAllocationSpec(index, np.ones(2), np.ones((1, 3)))
        with self.assertRaises(StructuralError):
            UniformAllocationSpec(index, np.ones(3), -np.ones((1, 3)))

    def test_no_slices(self):
        """
        No columns, nothing allocated.
        """
        index = ScenarioIndex(EmptyScenario())
        uniform = UniformAllocation(
            index, UniformAllocationSpec.EqualWeights(index))
        self.assertEqual(uniform.xPath, {})
