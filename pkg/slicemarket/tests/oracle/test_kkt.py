"""
Test KKT certificates of allocations at given prices.
"""
import numpy as np

from ...models.allocation import AllocationState
from ...models.prices import PriceTable
from ...models.scenario import ScenarioIndex
from ...oracle.kkt import KktResidual
from ..fixtures import EmptyScenario
from ..fixtures import PASS_THROUGH_OPEX
from ..fixtures import SingleNodeScenario
from ..fixtures import TwoPathScenario
from .. import SliceMarketTester


def EquilibriumPrices(scenario, nodePrice):
    """
    nodePrice at n1 less the pass-through prices, so the path costs
    exactly nodePrice.
    """
    return PriceTable.FromNodePrices(
        {"n1": [nodePrice - 2 * PASS_THROUGH_OPEX],
         "cran1": [PASS_THROUGH_OPEX], "cn1": [PASS_THROUGH_OPEX]},
        scenario.topology)


class KktResidualTester(SliceMarketTester):
    """
    Test the three residuals and the multipliers.
    """
    def test_exact_equilibrium(self):
        """
        x = 10 at a path cost of 2 satisfies every condition.
        """
        scenario = SingleNodeScenario()
        allocation = AllocationState(ScenarioIndex(scenario), [10.0])
        certificate = KktResidual(allocation,
                                  EquilibriumPrices(scenario, 2.0))
        self.assertLess(certificate.residual, 1e-9)
        self.assertTrue(certificate.passes)
        self.assertAlmostEqual(certificate.LambdaMap()[("n1", "bw")], 1.0,
                               delta=1e-8)
        self.assertEqual(certificate.LambdaMap()[("cn1", "cpu")], 0.0)
        self.assertEqual(certificate.NuMap(), {("s1", "p1"): 0.0})

    def test_perturbed_traffic(self):
        """
        One percent more traffic breaks stationarity and overloads n1.
        """
        scenario = SingleNodeScenario()
        allocation = AllocationState(ScenarioIndex(scenario), [10.1])
        certificate = KktResidual(allocation,
                                  EquilibriumPrices(scenario, 2.0))
        self.assertAlmostEqual(certificate.stationarity,
                               abs(20.0 / 10.1 - 2.0) / 2.0, places=7)
        self.assertAlmostEqual(certificate.primal, 0.1, places=7)
        self.assertFalse(certificate.passes)

    def test_priced_but_idle_resource(self):
        """
        A resource priced above OPEX but not fully booked breaks
        complementary slackness.
        """
        scenario = SingleNodeScenario(capacity=20.0)
        allocation = AllocationState(ScenarioIndex(scenario), [10.0])
        certificate = KktResidual(allocation,
                                  EquilibriumPrices(scenario, 2.0))
        self.assertLess(certificate.stationarity, 1e-9)
        # lambda / mu = 1/2, half the capacity idle:
        self.assertAlmostEqual(certificate.slackness, 0.25, places=7)
        self.assertFalse(certificate.passes)

    def test_idle_path_multiplier(self):
        """
        All traffic on the cost-3 path; the idle cost-5 path gets
        nu = 5 - U'(3) = 2.
        """
        scenario = TwoPathScenario(phi=9.0)
        index = ScenarioIndex(scenario)
        prices = PriceTable.FromNodePrices(
            {"ap": [1.0], "cran1": [2.0 - PASS_THROUGH_OPEX],
             "cran2": [4.0 - PASS_THROUGH_OPEX],
             "cn1": [PASS_THROUGH_OPEX]}, scenario.topology)
        allocation = AllocationState.FromMap(
            index, {("s1", "p1"): 3.0, ("s1", "p2"): 0.0})
        certificate = KktResidual(allocation, prices)
        self.assertLess(certificate.stationarity, 1e-9)
        self.assertAlmostEqual(certificate.NuMap()[("s1", "p2")], 2.0)
        self.assertEqual(certificate.NuMap()[("s1", "p1")], 0.0)

    def test_idle_path_cheaper_than_marginal_utility(self):
        """
        Leaving the cheap path idle is not optimal.
        """
        scenario = TwoPathScenario(phi=9.0)
        index = ScenarioIndex(scenario)
        prices = PriceTable.FromNodePrices(
            {"ap": [1.0], "cran1": [2.0], "cran2": [4.0], "cn1": [1.0]},
            scenario.topology)
        allocation = AllocationState.FromMap(
            index, {("s1", "p1"): 0.0, ("s1", "p2"): 1.5})
        certificate = KktResidual(allocation, prices)
        self.assertGreater(certificate.stationarity, 0.0)

    def test_excluded_slice_areas(self):
        """
        Slice-areas with phi = 0 don't count towards stationarity.
        """
        scenario = SingleNodeScenario(slices=2)
        allocation = AllocationState(ScenarioIndex(scenario), [10.0, 0.0])
        certificate = KktResidual(allocation,
                                  EquilibriumPrices(scenario, 2.0),
                                  phi=np.array([20.0, 0.0]))
        self.assertLess(certificate.residual, 1e-9)

    def test_no_slices(self):
        """
        Prices at OPEX with no traffic certify trivially.
        """
        index = ScenarioIndex(EmptyScenario())
        certificate = KktResidual(AllocationState(index), index.opex)
        self.assertEqual(certificate.residual, 0.0)
        self.assertEqual(certificate.NuMap(), {})
