"""
Fairness and equilibrium checks: envy-freeness, sharing incentive, and a
brute-force search for profitable unilateral deviations.
"""
import itertools

import numpy as np

from ..constants import FAIRNESS_SLACK
from ..logs import logger
from ..mechanisms.baselines import UniformAllocation
from ..mechanisms.baselines import UniformAllocationSpec
from ..models.prices import BidMatrix
from ..models.prices import PriceTable
from ..utility import UtilityValueArray
from ..utils.exceptions import DomainError
from .solver import Welfare

MAX_GRID_POINTS = 2000000


class PropertyReport(object):
    """
    Envy-freeness and sharing-incentive verdicts with their witnesses,
    and the welfare of the allocation.

    envyWitness: (area, envious slice, envied slice, path id) or None
    sharingWitness: (slice id, path id, shortfall) of the worst
                    shortfall, or None
    """
    def __init__(self, envyWitness, sharingWitness, welfare):
        self.envyWitness = envyWitness
        self.sharingWitness = sharingWitness
        self.welfare = welfare

    @property
    def envyFree(self):
        """
        True if no slice envies another
        """
        return self.envyWitness is None

    @property
    def sharingIncentive(self):
        """
        True if every paying path gets at least its uniform share
        """
        return self.sharingWitness is None

    def __repr__(self):
        return "PropertyReport(envyFree=%s, sharingIncentive=%s)" % (
            self.envyFree, self.sharingIncentive)


def _Mu(index, prices):
    if isinstance(prices, PriceTable):
        mu, _ = prices.Aligned(index)
        return mu
    return np.asarray(prices, dtype=float)


def CheckEnvyFreeness(allocation, prices, slack=FAIRNESS_SLACK):
    """
    Slice n envies slice m in area l if, on some path p carrying m's
    traffic, x_{n,l} d^p_{n,i,r} / w_{n,l} < x_{m,l} d^p_{m,i,r} / w_{m,l}
    at every node i of p and every resource r that n needs there: per
    unit of payment, m's bundle would be strictly larger everywhere.

    :returns: None if envy-free, otherwise the first witness
              (area, envious slice, envied slice, path id)
    """
    index = allocation.index
    mu = _Mu(index, prices)
    payments = BidMatrix(index, allocation.xColumns, mu).areaTotalsArray
    traffic = allocation.xAreaArray
    groupsByArea = dict()
    for g, (sliceId, area) in enumerate(index.groupKeys):
        groupsByArea.setdefault(area, []).append(g)
    columnOf = index.columnIndex
    for area in sorted(groupsByArea):
        groups = [g for g in groupsByArea[area] if payments[g] > 0]
        for envious, envied in itertools.permutations(groups, 2):
            sliceN = index.groupKeys[envious][0]
            sliceM = index.groupKeys[envied][0]
            perPaymentN = traffic[envious] / payments[envious]
            perPaymentM = traffic[envied] / payments[envied]
            for path in index.scenario.topology.pathsByArea[area]:
                columnM = columnOf[(sliceM, path.pathId)]
                if allocation.xColumns[columnM] <= 0:
                    continue
                columnN = columnOf[(sliceN, path.pathId)]
                needed = index.demand[:, columnN] > 0
                own = perPaymentN * index.demand[needed, columnN]
                other = perPaymentM * index.demand[needed, columnM]
                if np.all(own < other * (1.0 - slack)):
                    return (area, sliceN, sliceM, path.pathId)
    return None


def CheckSharingIncentive(allocation, prices, uniform=None,
                          slack=FAIRNESS_SLACK):
    """
    Compare every path's traffic with its uniform share.

    :param uniform: comparator AllocationState; by default the uniform
                    allocation built from this allocation's utilization
                    and per-path, per-node payments
    :returns: None if every path gets at least its uniform share,
              otherwise (slice id, path id, shortfall) for the largest
              relative shortfall
    """
    index = allocation.index
    if uniform is None:
        spec = UniformAllocationSpec.FromEquilibrium(
            index, allocation, _Mu(index, prices))
        uniform = UniformAllocation(index, spec)
    x = allocation.xColumns
    xUniform = uniform.xColumns
    short = x < xUniform * (1.0 - slack)
    if not np.any(short):
        return None
    shortfall = np.where(short, 1.0 - x / np.where(short, xUniform, 1.0),
                         0.0)
    j = int(np.argmax(shortfall))
    return (index.sliceIds[index.colSlice[j]], index.colPathIds[j],
            float(shortfall[j]))


def CheckProperties(allocation, prices, uniform=None, slack=FAIRNESS_SLACK):
    """
    PropertyReport for an allocation at the given prices.
    """
    report = PropertyReport(
        CheckEnvyFreeness(allocation, prices, slack),
        CheckSharingIncentive(allocation, prices, uniform, slack),
        Welfare(allocation))
    if not report.envyFree:
        logger.warning("Envy detected: %s" % (report.envyWitness,))
    if not report.sharingIncentive:
        logger.warning("Sharing incentive violated: %s"
                       % (report.sharingWitness,))
    return report


class DeviationCheckResult(object):
    """
    Outcome of BruteForceNeCheck; worst is (slice id, gain, best
    deviation as {path id: traffic}) for the most profitable deviation.
    """
    def __init__(self, passed, worst=None):
        self.passed = passed
        self.worst = worst

    def __bool__(self):
        return self.passed

    __nonzero__ = __bool__

    def __repr__(self):
        return "DeviationCheckResult(passed=%s, worst=%s)" % (
            self.passed, self.worst)


def BruteForceNeCheck(allocation, prices, step=0.01, xMax=None,
                      tolerance=1e-9, maxSlices=3, maxPaths=4):
    """
    Grid-search every slice's unilateral deviations over [0, xMax] per
    path at fixed prices.  Passes if no deviation improves a slice's
    payoff by more than tolerance (relative to the payoff's magnitude,
    at least 1).

    :param xMax: grid upper end, twice the largest allocated path
                 traffic by default
    """
    index = allocation.index
    if index.numSlices > maxSlices or index.numColumns > maxPaths:
        raise DomainError(
            "Brute-force equilibrium check is limited to %d slices and %d "
            "slice-paths" % (maxSlices, maxPaths))
    if index.numSlices == 0:
        return DeviationCheckResult(True)
    mu = _Mu(index, prices)
    costs = index.PathCosts(mu)
    x = allocation.xColumns
    if xMax is None:
        xMax = 2.0 * max(float(np.max(x)), step)
    axis = np.arange(0.0, xMax + 0.5 * step, step)
    worst = None
    passed = True
    for n, sliceId in enumerate(index.sliceIds):
        columns = np.nonzero(index.colSlice == n)[0]
        if len(axis) ** len(columns) > MAX_GRID_POINTS:
            raise DomainError("Deviation grid too large; use a coarser step")
        grid = np.array(list(itertools.product(axis, repeat=len(columns))))
        current = _SlicePayoffs(index, columns, x[columns][np.newaxis, :],
                                costs)[0]
        payoffs = _SlicePayoffs(index, columns, grid, costs)
        best = int(np.argmax(payoffs))
        gain = payoffs[best] - current
        if gain > tolerance * max(1.0, abs(current)):
            passed = False
            if worst is None or gain > worst[1]:
                worst = (sliceId, float(gain), dict(
                    (index.colPathIds[j], float(grid[best, c]))
                    for c, j in enumerate(columns)))
    return DeviationCheckResult(passed, worst)


def _SlicePayoffs(index, columns, points, costs):
    """
    Payoff of one slice at each row of points (traffic on its columns).
    Points leaving an area with alpha >= 1 empty score -inf.
    """
    groups = np.unique(index.colGroup[columns])
    total = -points.dot(costs[columns])
    for g in groups:
        inGroup = index.colGroup[columns] == g
        traffic = points[:, inGroup].sum(axis=1)
        positive = traffic > 0
        value = np.full(len(points), -np.inf)
        if np.any(positive):
            value[positive] = UtilityValueArray(
                index.phi[g], index.alpha[g], traffic[positive],
                index.z0[g])
        if index.alpha[g] < 1.0:
            value[~positive] = -index.phi[g] ** index.alpha[g] * \
                index.z0[g] ** (1.0 - index.alpha[g]) / \
                (1.0 - index.alpha[g])
        total = total + value
    return total
