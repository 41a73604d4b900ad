"""
Test the utility family, the delay model, net revenue and payoffs.
"""
import math

import numpy as np

from ...models.prices import PriceTable
from ...utility import Delay
from ...utility import DelayParams
from ...utility import INFINITE_DELAY
from ...utility import InverseMarginal
from ...utility import IsInfinite
from ...utility import MarginalUtility
from ...utility import NetRevenue
from ...utility import Payoff
from ...utility import UNBOUNDED_LOSS
from ...utility import UtilityAtZero
from ...utility import UtilityParams
from ...utility import UtilityValue
from ...utility import UtilityValueArray
from ...utils.exceptions import DomainError
from ...utils.exceptions import StructuralError
from ..fixtures import SingleNodeScenario
from ..fixtures import TwoPathScenario
from .. import SliceMarketTester


class MarginalUtilityTester(SliceMarketTester):
    """
    Test U'(z) = (phi/z)**alpha and its inverse.
    """
    def test_marginal_utility(self):
        """
        Closed-form values.
        """
        self.assertAlmostEqual(MarginalUtility(UtilityParams(10, 2), 10), 1.0)
        self.assertAlmostEqual(MarginalUtility(UtilityParams(10, 2), 5), 4.0)
        self.assertAlmostEqual(MarginalUtility(UtilityParams(10, 1), 20), 0.5)

    def test_inverse_marginal(self):
        """
        Inverse of the examples above.
        """
        self.assertAlmostEqual(InverseMarginal(UtilityParams(10, 2), 4), 5.0)
        self.assertAlmostEqual(InverseMarginal(UtilityParams(10, 2), 1),
                               10.0)
        self.assertAlmostEqual(InverseMarginal(UtilityParams(20, 1), 2),
                               10.0)

    def test_inverse_round_trip(self):
        """
        inverse_marginal(marginal_utility(z)) = z on a grid.
        """
        for alpha in (0.5, 1.0, 1.5, 2.0):
            params = UtilityParams(7.0, alpha)
            for z in (0.1, 1.0, 3.5, 40.0):
                self.assertAlmostEqual(
                    InverseMarginal(params, MarginalUtility(params, z)), z)

    def test_domain_errors(self):
        """
        Zero traffic or zero price is outside the domain.
        """
        params = UtilityParams(10, 1)
        with self.assertRaises(DomainError):
            MarginalUtility(params, 0.0)
        with self.assertRaises(DomainError):
            InverseMarginal(params, 0.0)
        with self.assertRaises(DomainError):
            UtilityValue(params, -1.0)
        with self.assertRaises(DomainError):
            UtilityParams(0.0, 1.0)
        with self.assertRaises(DomainError):
            UtilityParams(1.0, -1.0)


class UtilityValueTester(SliceMarketTester):
    """
    Test the utility antiderivative pinned at the reference point.
    """
    def test_reference_point(self):
        """
        U(z0) = 0, and U(2 z0) = phi ln 2 for alpha = 1.
        """
        params = UtilityParams(10, 1)
        self.assertAlmostEqual(params.z0, 0.1)
        self.assertAlmostEqual(UtilityValue(params, params.z0), 0.0)
        self.assertAlmostEqual(UtilityValue(params, 2 * params.z0),
                               10 * math.log(2))

    def test_power_branch(self):
        """
        alpha != 1: phi**alpha (z**(1-alpha) - z0**(1-alpha))/(1-alpha).
        """
        params = UtilityParams(4.0, 2.0, z0=1.0)
        self.assertAlmostEqual(UtilityValue(params, 2.0), 16.0 * 0.5)

    def test_concavity(self):
        """
        Midpoint values lie above the chord.
        """
        for alpha in (0.5, 1.0, 2.0):
            params = UtilityParams(5.0, alpha)
            for a, b in ((0.5, 2.0), (1.0, 9.0)):
                mid = UtilityValue(params, 0.5 * (a + b))
                chord = 0.5 * (UtilityValue(params, a) +
                               UtilityValue(params, b))
                self.assertGreater(mid, chord)

    def test_array_form(self):
        """
        The array form evaluates mixed alphas element-wise.
        """
        values = UtilityValueArray(np.array([10.0, 4.0]),
                                   np.array([1.0, 2.0]),
                                   np.array([0.2, 2.0]),
                                   np.array([0.1, 1.0]))
        np.testing.assert_allclose(values, [10 * math.log(2), 8.0])

    def test_utility_at_zero(self):
        """
        Unbounded loss for alpha >= 1, finite below.
        """
        self.assertIs(UtilityAtZero(UtilityParams(10, 1)), UNBOUNDED_LOSS)
        self.assertAlmostEqual(
            UtilityAtZero(UtilityParams(4.0, 0.5, z0=1.0)), -4.0)


class DelayTester(SliceMarketTester):
    """
    Test D = L/(x - phi) + h L / x and net revenue.
    """
    def test_delay(self):
        """
        L = 1, phi = 10, h = 3, x = 12: 0.5 + 0.25.
        """
        dparams = DelayParams(packetLength=1.0, hops=3)
        self.assertAlmostEqual(Delay(dparams, UtilityParams(10, 1), 12.0),
                               0.75)

    def test_no_processing_steps(self):
        """
        h = 0, x = 2 phi, L = 1: 1/phi.
        """
        dparams = DelayParams(packetLength=1.0, hops=0)
        self.assertAlmostEqual(Delay(dparams, UtilityParams(10, 1), 20.0),
                               0.1)

    def test_unstable_queue(self):
        """
        x <= phi has no finite delay.
        """
        dparams = DelayParams(packetLength=1.0, hops=3)
        delay = Delay(dparams, UtilityParams(10, 1), 10.0)
        self.assertIs(delay, INFINITE_DELAY)
        self.assertTrue(IsInfinite(delay))
        self.assertEqual(float(delay), float("inf"))
        self.assertGreater(delay, 1e300)

    def test_net_revenue(self):
        """
        beta = 0 gives the utility; beta = 1 subtracts the delay.
        """
        params = UtilityParams(10, 1)
        self.assertAlmostEqual(NetRevenue(params, DelayParams(beta=0), 12.0),
                               UtilityValue(params, 12.0))
        dparams = DelayParams(packetLength=1.0, hops=3, beta=1.0)
        self.assertAlmostEqual(NetRevenue(params, dparams, 12.0),
                               UtilityValue(params, 12.0) - 0.75)
        self.assertIs(NetRevenue(params, dparams, 8.0), UNBOUNDED_LOSS)

    def test_sentinel_arithmetic(self):
        """
        Sentinels absorb finite numbers and flip sign under negation.
        """
        self.assertIs(INFINITE_DELAY + 5.0, INFINITE_DELAY)
        self.assertIs(3.0 - INFINITE_DELAY, UNBOUNDED_LOSS)
        self.assertIs(-2.0 * INFINITE_DELAY, UNBOUNDED_LOSS)
        self.assertLess(UNBOUNDED_LOSS, -1e300)
        with self.assertRaises(DomainError):
            _ = INFINITE_DELAY + UNBOUNDED_LOSS
        with self.assertRaises(DomainError):
            _ = 0.0 * INFINITE_DELAY

    def test_invalid_delay_params(self):
        """
        Packet lengths are positive; hops and beta non-negative.
        """
        with self.assertRaises(DomainError):
            DelayParams(packetLength=0.0)
        with self.assertRaises(DomainError):
            DelayParams(hops=-1)
        with self.assertRaises(DomainError):
            DelayParams(beta=-0.5)


class PayoffTester(SliceMarketTester):
    """
    Test utility minus payment for a slice.
    """
    def test_closed_form(self):
        """
        U(x) = 20 ln x (z0 = 1), unit cost 2, x = 10: 20 ln 10 - 20.
        """
        scenario = SingleNodeScenario(phi=20.0, z0=1.0)
        prices = PriceTable.FromNodePrices(
            {"n1": [2.0], "cran1": [0.0], "cn1": [0.0]}, scenario.topology)
        payoff = Payoff(scenario.slices["s1"], {(1, "p1"): 10.0}, prices)
        self.assertAlmostEqual(payoff, 20 * math.log(10) - 20)

    def test_reference_point_at_zero_prices(self):
        """
        Traffic at the reference point and free resources: payoff 0.
        """
        scenario = SingleNodeScenario(phi=20.0, z0=1.0)
        prices = PriceTable.FromNodePrices(
            {"n1": [0.0], "cran1": [0.0], "cn1": [0.0]}, scenario.topology)
        self.assertAlmostEqual(
            Payoff(scenario.slices["s1"], {(1, "p1"): 1.0}, prices), 0.0)

    def test_zero_allocation(self):
        """
        No traffic with alpha >= 1 is an unbounded loss.
        """
        scenario = SingleNodeScenario()
        prices = PriceTable.FromNodePrices(
            {"n1": [2.0], "cran1": [0.0], "cn1": [0.0]}, scenario.topology)
        sliceSpec = scenario.slices["s1"]
        self.assertIs(Payoff(sliceSpec, {(1, "p1"): 0.0}, prices),
                      UNBOUNDED_LOSS)
        self.assertIs(Payoff(sliceSpec, {}, prices), UNBOUNDED_LOSS)

    def test_path_costs_from_demands(self):
        """
        Moving a unit from the cost-3 path to the cost-5 path keeps the
        utility and costs 2 more.
        """
        scenario = TwoPathScenario(phi=9.0)
        prices = PriceTable.FromNodePrices(
            {"ap": [1.0], "cn1": [0.0], "cran1": [2.0], "cran2": [4.0]},
            scenario.topology)
        sliceSpec = scenario.slices["s1"]
        cheap = Payoff(sliceSpec, {(1, "p1"): 2.0}, prices)
        split = Payoff(sliceSpec, {(1, "p1"): 1.0, (1, "p2"): 1.0}, prices)
        self.assertAlmostEqual(cheap - split, 2.0)

    def test_unknown_area_or_path(self):
        """
        Traffic must sit on a path the slice has demand on, in an area
        it is active in.
        """
        scenario = SingleNodeScenario()
        prices = PriceTable.FromNodePrices(
            {"n1": [2.0], "cran1": [0.0], "cn1": [0.0]}, scenario.topology)
        sliceSpec = scenario.slices["s1"]
        with self.assertRaises(StructuralError):
            Payoff(sliceSpec, {(2, "p1"): 1.0}, prices)
        with self.assertRaises(StructuralError):
            Payoff(sliceSpec, {(1, "p9"): 1.0}, prices)
