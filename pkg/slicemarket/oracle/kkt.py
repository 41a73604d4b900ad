"""
KKT certificates for the welfare maximization problem.

With lambda = mu - q as capacity multipliers, an allocation is optimal
iff every path carrying traffic has U'(x_{n,l}) equal to its unit cost at
mu, no idle path is cheaper than U'(x_{n,l}), no capacity is exceeded,
and every resource with lambda > 0 is fully booked.
"""
import numpy as np

from ..constants import ACTIVE_PATH_FRACTION
from ..models.prices import PriceTable
from ..utility import MarginalUtilityArray


class KktCertificate(object):
    """
    Multipliers and the three residual norms.

    stationarity: max over paths of |U' - cost| / cost on paths carrying
                  traffic, and max(0, U' - cost) / cost on idle paths
    slackness:    max over resources of (lambda / mu) |C - load| / C
    primal:       largest overload max(0, load - C)
    """
    def __init__(self, index, lam, nu, stationarity, slackness, primal,
                 tolerance):
        self.index = index
        self.lam = lam
        self.nu = nu
        self.stationarity = float(stationarity)
        self.slackness = float(slackness)
        self.primal = float(primal)
        self.tolerance = tolerance

    @property
    def residual(self):
        """
        Largest of the three residuals
        """
        return max(self.stationarity, self.slackness, self.primal)

    @property
    def passes(self):
        """
        True if every residual is within tolerance
        """
        return self.residual <= self.tolerance

    def LambdaMap(self):
        """
        {(node id, resource): lambda}
        """
        return self.index.KeysToMap(self.lam)

    def NuMap(self):
        """
        {(slice id, path id): nu}
        """
        return self.index.ColumnsToMap(self.nu)

    def __repr__(self):
        return "KktCertificate(stationarity=%.3g, slackness=%.3g, " \
            "primal=%.3g, passes=%s)" % (self.stationarity, self.slackness,
                                         self.primal, self.passes)


def KktResidual(allocation, prices, phi=None, alpha=None, tolerance=1e-8):
    """
    Certificate of an allocation at the given prices.

    :param allocation: AllocationState
    :param prices: PriceTable, or mu in the index's key order
    :param phi: per slice-area utility scale, the scenario's phi by
                default; slice-areas with phi = 0 are excluded
    :param alpha: per slice-area shape, the scenario's alpha by default
    """
    index = allocation.index
    if isinstance(prices, PriceTable):
        mu, _ = prices.Aligned(index)
    else:
        mu = np.asarray(prices, dtype=float)
    phi = index.phi if phi is None else np.asarray(phi, dtype=float)
    alpha = index.alpha if alpha is None else np.asarray(alpha, dtype=float)
    lam = np.maximum(mu - index.opex, 0.0)
    x = allocation.xColumns
    loads = index.Loads(x)

    stationarity = 0.0
    nu = np.zeros(index.numColumns)
    if index.numColumns:
        costs = index.PathCosts(mu)
        groupTraffic = index.GroupSum(x)
        included = phi > 0
        positive = groupTraffic > 0
        marginal = np.full(index.numGroups, np.inf)
        evaluate = included & positive
        if np.any(evaluate):
            marginal[evaluate] = MarginalUtilityArray(
                phi[evaluate], alpha[evaluate], groupTraffic[evaluate])
        columnMarginal = marginal[index.colGroup]
        activeColumn = x > ACTIVE_PATH_FRACTION * \
            groupTraffic[index.colGroup]
        activeColumn &= positive[index.colGroup]
        idle = ~activeColumn
        gap = np.zeros(index.numColumns)
        finite = np.isfinite(columnMarginal)
        gap[activeColumn & finite] = np.abs(
            columnMarginal - costs)[activeColumn & finite]
        gap[idle & finite] = np.maximum(
            0.0, columnMarginal - costs)[idle & finite]
        gap[~finite] = np.inf
        gap[~included[index.colGroup]] = 0.0
        relative = gap / costs
        stationarity = float(relative.max())
        nu = np.where(idle & finite,
                      np.maximum(0.0, costs - columnMarginal), 0.0)

    slackness = 0.0
    primal = 0.0
    if index.numKeys:
        slackness = float(np.max(
            lam / mu * np.abs(index.capacity - loads) / index.capacity))
        primal = float(max(0.0, np.max(loads - index.capacity)))
    return KktCertificate(index, lam, nu, stationarity, slackness, primal,
                          tolerance)
