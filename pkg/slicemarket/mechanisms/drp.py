"""
The Distributed Resource Provisioning (DRP) auction.

Each round, every slice computes its desired per-path traffic from the
current prices, moves part of the way there, and bids for the resources
the new traffic needs.  Every node then raises the price of an
oversubscribed resource until the bids just cover its capacity, and
slices keep only the traffic their bids actually bought.  Rounds repeat
until no slice wants to change its allocation.

Round-synchronous: all best responses read one immutable price vector,
all node updates read the complete bid set, and every sum runs over the
fixed orders of ScenarioIndex.
"""
import time

import numpy as np

from ..constants import ACTIVE_PATH_FRACTION
from ..constants import TIE_TOLERANCE
from ..logs import logger
from ..models.allocation import AllocationState
from ..models.prices import BidMatrix
from ..models.prices import PriceTable
from ..models.scenario import Scenario
from ..models.scenario import ScenarioIndex
from ..utility import InverseMarginalArray
from ..utility import MarginalUtilityArray
from ..utils.exceptions import DomainError
from ..utils.exceptions import InvalidSettings

BEST_RESPONSES = ("uniform", "proximal")

# Bisection steps for the proximal response, in log space:
BISECTION_STEPS = 64


class DrpConfig(object):
    """
    Auction parameters: convergence threshold epsilon, relaxation step,
    round cap, budget back-off factor zeta and the best-response rule.

    epsilon bounds FixedPointDeviation, which is relative: 1e-3 asks for
    every slice-area within 0.1% of its best-response traffic.
    """
    # pylint: disable=too-many-arguments
    def __init__(self, epsilon=1e-3, step=0.1, maxIters=5000, zeta=0.9,
                 budgetEnforcement=False, tieTolerance=TIE_TOLERANCE,
                 bestResponse="proximal", proximalWeight=1.0,
                 progressInterval=100):
        self.epsilon = float(epsilon)
        self.step = float(step)
        self.maxIters = int(maxIters)
        self.zeta = float(zeta)
        self.budgetEnforcement = bool(budgetEnforcement)
        self.tieTolerance = float(tieTolerance)
        self.bestResponse = bestResponse
        self.proximalWeight = float(proximalWeight)
        self.progressInterval = int(progressInterval)
        self.Validate()

    def Validate(self):
        """
        Raise InvalidSettings for out-of-range parameters.
        """
        if not self.epsilon > 0:
            raise InvalidSettings("epsilon must be positive", "epsilon")
        if not 0 < self.step < 1:
            raise InvalidSettings("step must lie in (0, 1)", "step",
                                  "The default step is 0.1.")
        if self.maxIters < 1:
            raise InvalidSettings("max_iters must be at least 1",
                                  "max_iters")
        if not 0 < self.zeta < 1:
            raise InvalidSettings("zeta must lie in (0, 1)", "zeta",
                                  "The default back-off factor is 0.9.")
        if self.tieTolerance < 0:
            raise InvalidSettings("tie_tolerance can't be negative",
                                  "tie_tolerance")
        if self.bestResponse not in BEST_RESPONSES:
            raise InvalidSettings(
                "best_response must be one of %s" % ", ".join(BEST_RESPONSES),
                "best_response")
        if not self.proximalWeight > 0:
            raise InvalidSettings("proximal_weight must be positive",
                                  "proximal_weight")

    @classmethod
    def FromSettings(cls, settings):
        """
        Build from the [auction] section of a SettingsModel.
        """
        auction = settings.auction
        return cls(epsilon=auction.epsilon, step=auction.step,
                   maxIters=auction.maxIters, zeta=auction.zeta,
                   budgetEnforcement=auction.budgetEnforcement,
                   tieTolerance=auction.tieTolerance,
                   bestResponse=auction.bestResponse,
                   proximalWeight=auction.proximalWeight,
                   progressInterval=auction.progressInterval)


class ConvergenceReport(object):
    """
    How an auction run ended.
    """
    def __init__(self):
        self.iterations = 0
        self.deviations = []
        self.kktResidual = None
        self.terminatedBy = None
        self.budgetBackoffs = 0
        self.finalPhi = dict()
        self.wallTime = 0.0

    @property
    def converged(self):
        """
        True if the deviation threshold was met
        """
        return self.terminatedBy == "threshold"

    @property
    def finalDeviation(self):
        """
        Max deviation of the last round
        """
        return self.deviations[-1] if self.deviations else 0.0

    def __repr__(self):
        return "ConvergenceReport(iterations=%d, terminatedBy=%s, " \
            "finalDeviation=%g)" % (self.iterations, self.terminatedBy,
                                    self.finalDeviation)


def UniformBestResponseArray(index, costs, phi, alpha,
                             tieTolerance=TIE_TOLERANCE):
    """
    Put inverse_marginal(c*) on each slice-area, split uniformly over the
    paths whose cost is within tieTolerance of the cheapest one.
    """
    if index.numColumns == 0:
        return np.zeros(0)
    if np.any(costs <= 0):
        raise DomainError("Path unit costs must be positive", costs)
    cheapest = index.GroupMin(costs)
    target = InverseMarginalArray(phi, alpha, cheapest)
    tied = costs <= cheapest[index.colGroup] * (1.0 + tieTolerance)
    count = index.GroupSum(tied.astype(float))
    return np.where(tied, (target / count)[index.colGroup], 0.0)


def ProximalBestResponseArray(index, costs, phi, alpha, xCurrent,
                              weight=1.0):
    """
    Maximize each slice's payoff minus (rho/2)|x - xCurrent|^2 per area.

    rho = weight * c* / inverse_marginal(c*) is the curvature scale of the
    utility at the unregularized optimum.  Per area the solution is
    x_p = max(0, x0_p + (U'(X) - c_p)/rho) with X = sum_p x_p, and X is
    found by bisection on log X.
    """
    if index.numColumns == 0:
        return np.zeros(0)
    if np.any(costs <= 0):
        raise DomainError("Path unit costs must be positive", costs)
    cheapest = index.GroupMin(costs)
    target = InverseMarginalArray(phi, alpha, cheapest)
    rho = weight * cheapest / target
    rhoColumns = rho[index.colGroup]

    def Excess(total):
        marginal = MarginalUtilityArray(phi, alpha, total)
        columns = np.maximum(
            0.0, xCurrent + (marginal[index.colGroup] - costs) / rhoColumns)
        return index.GroupSum(columns) - total

    # Excess(hi) <= 0 since U'(hi) <= c* <= c_p; Excess(lo) >= 0 since
    # the cheapest path alone asks for more than lo.
    hi = np.maximum(target, index.GroupSum(xCurrent))
    lo = target * 1e-12
    logLo, logHi = np.log(lo), np.log(hi)
    for _ in range(BISECTION_STEPS):
        logMid = 0.5 * (logLo + logHi)
        positive = Excess(np.exp(logMid)) > 0
        logLo = np.where(positive, logMid, logLo)
        logHi = np.where(positive, logHi, logMid)
    total = np.exp(0.5 * (logLo + logHi))
    marginal = MarginalUtilityArray(phi, alpha, total)
    return np.maximum(
        0.0, xCurrent + (marginal[index.colGroup] - costs) / rhoColumns)


def RelaxedUpdate(xCurrent, xStar, step):
    """
    x_new = (1 - step) x_current + step x_star, componentwise.  Accepts
    numbers, numpy arrays or mappings with the same keys.
    """
    if not 0 < step < 1:
        raise DomainError("The relaxation step must lie in (0, 1)", step)
    if isinstance(xCurrent, dict):
        return dict((key, (1.0 - step) * xCurrent[key] + step * xStar[key])
                    for key in xCurrent)
    return (1.0 - step) * np.asarray(xCurrent, dtype=float) + \
        step * np.asarray(xStar, dtype=float)


def PriceUpdateArrays(totalBids, capacity, opex):
    """
    mu_hat = max(q, sum w / C) and eta = min(sum w / (C q), 1).
    """
    clearing = totalBids / capacity
    return np.maximum(opex, clearing), np.minimum(clearing / opex, 1.0)


def ActualTrafficArray(index, xColumns, mu, muHat):
    """
    Scale each path's traffic by the smallest mu/mu_hat over the
    resources it demands, never by more than 1.
    """
    ratio = np.minimum(1.0, mu / muHat)
    return xColumns * index.MinUsedRatio(ratio)


def BudgetAdmissionControl(phi, areaPayment, budget, zeta):
    """
    Back off the traffic demand scale of a slice-area whose payment
    exceeds its budget: phi <- zeta * phi.  Works element-wise on arrays.
    """
    if not 0 < zeta < 1:
        raise DomainError("zeta must lie in (0, 1)", zeta)
    over = np.asarray(areaPayment) > np.asarray(budget)
    result = np.where(over, zeta * np.asarray(phi, dtype=float), phi)
    if np.ndim(result) == 0:
        return float(result)
    return result


def FixedPointDeviation(index, xColumns, mu, phi, alpha):
    """
    How far traffic is from the best response to prices mu, relative to
    the traffic involved.  The larger of:

      * |X - inverse_marginal(c*)| / inverse_marginal(c*) per slice-area,
        X its total traffic and c* its cheapest path cost at mu;
      * |U'(X) - c_p| / c_p on paths carrying traffic, and
        max(0, U'(X) - c_p) / c_p on idle paths.

    Zero exactly when x is a fixed point of the auction at mu.
    """
    if index.numColumns == 0:
        return 0.0
    costs = index.PathCosts(mu)
    cheapest = index.GroupMin(costs)
    target = InverseMarginalArray(phi, alpha, cheapest)
    groupTraffic = index.GroupSum(xColumns)
    deviation = float(np.max(np.abs(groupTraffic - target) / target))
    if not np.all(groupTraffic > 0):
        # The area term is already 1 for an unserved slice-area.
        return deviation
    marginal = MarginalUtilityArray(phi, alpha, groupTraffic)[index.colGroup]
    active = xColumns > ACTIVE_PATH_FRACTION * groupTraffic[index.colGroup]
    gap = np.where(active, np.abs(marginal - costs),
                   np.maximum(0.0, marginal - costs))
    return max(deviation, float(np.max(gap / costs)))


def _SingleSliceIndex(sliceSpec, topology):
    return ScenarioIndex(Scenario(topology, [sliceSpec]))


def SliceBestResponse(sliceSpec, prices, topology,
                      tieTolerance=TIE_TOLERANCE):
    """
    Desired per-path traffic of one slice at fixed prices: per area,
    inverse_marginal of the cheapest path cost, split uniformly over the
    cheapest paths.

    :returns: mapping path id -> traffic
    """
    index = _SingleSliceIndex(sliceSpec, topology)
    mu, _ = prices.Aligned(index)
    xStar = UniformBestResponseArray(
        index, index.PathCosts(mu), index.phi, index.alpha, tieTolerance)
    return dict((index.colPathIds[j], float(xStar[j]))
                for j in range(index.numColumns))


def ProximalBestResponse(sliceSpec, prices, topology, xCurrent, weight=1.0):
    """
    Proximal variant of SliceBestResponse, anchored at xCurrent
    (mapping path id -> traffic).
    """
    index = _SingleSliceIndex(sliceSpec, topology)
    mu, _ = prices.Aligned(index)
    anchor = np.array([xCurrent.get(pathId, 0.0)
                       for pathId in index.colPathIds])
    xStar = ProximalBestResponseArray(
        index, index.PathCosts(mu), index.phi, index.alpha, anchor, weight)
    return dict((index.colPathIds[j], float(xStar[j]))
                for j in range(index.numColumns))


def ComputeBids(sliceSpec, xPath, prices, topology):
    """
    w_{n,i,r} = mu_{i,r} sum over paths p through i of x_n^p d^p_{n,i,r}

    :param xPath: mapping path id -> traffic for this slice
    :returns: mapping (node id, resource) -> payment
    """
    index = _SingleSliceIndex(sliceSpec, topology)
    mu, _ = prices.Aligned(index)
    xColumns = index.MapToColumns(dict(
        ((sliceSpec.sliceId, pathId), value)
        for pathId, value in xPath.items()))
    bids = BidMatrix(index, xColumns, mu)
    return dict((key, float(bids.w[0, k]) if index.numSlices else 0.0)
                for k, key in enumerate(index.keys))


def NodePriceUpdate(node, incomingBids):
    """
    New prices and utilization fractions of one node.

    :param incomingBids: sequence of per-slice bid vectors, one entry per
                         resource slot of the node
    :returns: (mu_hat, eta) arrays in slot order
    """
    bids = np.asarray(incomingBids, dtype=float).reshape(
        -1, node.numResources)
    if np.any(bids < 0):
        raise DomainError("Bids must be non-negative")
    return PriceUpdateArrays(bids.sum(axis=0), node.capacity.values,
                             node.opex.values)


def ActualTraffic(xPath, oldPrices, newPrices, topology, slices):
    """
    Traffic each slice actually obtains after the price update.

    :param xPath: mapping (slice id, path id) -> traffic
    :returns: mapping (slice id, path id) -> traffic
    """
    sliceIds = sorted(set(sliceId for sliceId, _ in xPath))
    if isinstance(slices, dict):
        slices = [slices[sliceId] for sliceId in sorted(slices)]
    index = ScenarioIndex(Scenario(topology, slices))
    mu, _ = oldPrices.Aligned(index)
    muHat, _ = newPrices.Aligned(index)
    if np.any(muHat <= 0):
        raise DomainError("New prices must be positive")
    xHat = ActualTrafficArray(index, index.MapToColumns(xPath), mu, muHat)
    result = index.ColumnsToMap(xHat)
    return dict((key, result[key]) for key in result if key[0] in sliceIds)


class DrpAuction(object):
    """
    One run of the auction over a scenario.

    Usage:

        auction = DrpAuction(scenario, DrpConfig(epsilon=1e-6))
        allocation, prices, bids, report = auction.Run()
    """
    def __init__(self, scenario, config=None, initialAllocation=None,
                 trace=None):
        """
        :param initialAllocation: AllocationState, per-column array or
                                  mapping (slice id, path id) -> traffic;
                                  zero by default
        :param trace: object with a Record(iteration, auction) method,
                      called after every round
        """
        self.scenario = scenario
        self.config = config if config is not None else DrpConfig()
        self.index = ScenarioIndex(scenario)
        self.trace = trace
        self.phi = self.index.phi.copy()
        self.mu = self.index.opex.copy()
        self.eta = np.zeros(self.index.numKeys)
        if initialAllocation is None:
            self.x = np.zeros(self.index.numColumns)
        elif isinstance(initialAllocation, AllocationState):
            self.x = initialAllocation.xColumns.copy()
        elif isinstance(initialAllocation, dict):
            self.x = self.index.MapToColumns(initialAllocation)
        else:
            self.x = np.asarray(initialAllocation, dtype=float).copy()
        self.report = ConvergenceReport()
        self.lastCosts = self.index.PathCosts(self.mu)
        self.lastAreaPayments = np.zeros(self.index.numGroups)

    def BestResponse(self, costs):
        """
        The round's target allocation x*.
        """
        index = self.index
        if self.config.bestResponse == "uniform":
            return UniformBestResponseArray(
                index, costs, self.phi, index.alpha,
                self.config.tieTolerance)
        return ProximalBestResponseArray(
            index, costs, self.phi, index.alpha, self.x,
            self.config.proximalWeight)

    def ApplyBudgets(self, areaPayments):
        """
        Back off phi where payments exceed budgets; returns the number of
        slice-areas backed off.
        """
        over = areaPayments > self.index.budget
        if np.any(over):
            self.phi = BudgetAdmissionControl(
                self.phi, areaPayments, self.index.budget, self.config.zeta)
            for g in np.nonzero(over)[0]:
                logger.debug(
                    "Budget back-off for slice %s area %d: payment %.6g > "
                    "budget %.6g, phi now %.6g"
                    % (self.index.groupKeys[g] + (areaPayments[g],
                                                  self.index.budget[g],
                                                  self.phi[g])))
        return int(np.sum(over))

    def Round(self):
        """
        One synchronous round.  Returns (max deviation, back-offs).
        """
        index = self.index
        costs = index.PathCosts(self.mu)
        xStar = self.BestResponse(costs)
        x = RelaxedUpdate(self.x, xStar, self.config.step)
        bids = BidMatrix(index, x, self.mu)
        backoffs = 0
        if self.config.budgetEnforcement:
            backoffs = self.ApplyBudgets(bids.areaTotalsArray)
        muHat, eta = PriceUpdateArrays(bids.keyTotals, index.capacity,
                                       index.opex)
        xHat = ActualTrafficArray(index, x, self.mu, muHat)
        deviation = FixedPointDeviation(index, xHat, muHat, self.phi,
                                        index.alpha)
        self.x, self.mu, self.eta = xHat, muHat, eta
        self.lastCosts = costs
        self.lastAreaPayments = bids.areaTotalsArray
        return deviation, backoffs

    def Run(self):
        """
        Repeat rounds until the deviation drops to epsilon (with no
        budget back-off pending) or max_iters rounds have run.

        :returns: (AllocationState, PriceTable, BidMatrix,
                   ConvergenceReport)
        """
        config = self.config
        report = self.report
        started = time.time()
        logger.debug(
            "Starting DRP auction: %d slices, %d slice-paths, epsilon=%g, "
            "step=%g, best response %s"
            % (self.index.numSlices, self.index.numColumns, config.epsilon,
               config.step, config.bestResponse))
        for iteration in range(1, config.maxIters + 1):
            deviation, backoffs = self.Round()
            report.iterations = iteration
            report.deviations.append(deviation)
            report.budgetBackoffs += backoffs
            if self.trace is not None:
                self.trace.Record(iteration, self)
            if config.progressInterval and \
                    iteration % config.progressInterval == 0:
                logger.debug("DRP round %d: max deviation %.6g"
                             % (iteration, deviation))
            if deviation <= config.epsilon and backoffs == 0:
                if config.budgetEnforcement:
                    final = BidMatrix(self.index, self.x, self.mu)
                    finalBackoffs = self.ApplyBudgets(final.areaTotalsArray)
                    if finalBackoffs:
                        report.budgetBackoffs += finalBackoffs
                        continue
                report.terminatedBy = "threshold"
                break
        else:
            report.terminatedBy = "max_iters"
        report.wallTime = time.time() - started
        report.finalPhi = self.index.GroupsToMap(self.phi)
        if report.converged:
            logger.debug("DRP auction converged after %d rounds"
                         % report.iterations)
        else:
            logger.warning(
                "DRP auction did not converge within %d rounds "
                "(last deviation %.6g)"
                % (config.maxIters, report.finalDeviation))
        return (AllocationState(self.index, self.x),
                PriceTable(self.index.keys, self.mu, self.eta),
                BidMatrix(self.index, self.x, self.mu),
                report)


def RunAuction(scenario, config=None, initialAllocation=None, trace=None):
    """
    Run the DRP auction to convergence (or max_iters).

    :returns: (AllocationState, PriceTable, BidMatrix, ConvergenceReport)
    """
    return DrpAuction(scenario, config, initialAllocation, trace).Run()
