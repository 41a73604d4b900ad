"""
Comparison allocators: uniform allocation, multi-domain dominant
resource fairness (DRF) and per-domain DRF.

The DRF allocators forward each slice-area over a single designated
path, so a "flow" below is one (slice, area) pair and its designated
column.  Both fill progressively: flow f grows at rate w_f / delta_f
(delta_f its dominant demand fraction), so weighted dominant shares stay
equal, and a flow freezes when a resource it uses saturates or when it
reaches its cap.
"""
import numpy as np

from ..constants import CN
from ..constants import CRAN
from ..constants import FAIRNESS_SLACK
from ..constants import RAN
from ..logs import logger
from ..models.allocation import AllocationState
from ..models.prices import BidMatrix
from ..models.prices import PriceTable
from ..models.scenario import Scenario
from ..models.scenario import ScenarioIndex
from ..utility import InverseMarginalArray
from ..utils.exceptions import StructuralError

# Relative tolerance for treating a resource as saturated while filling:
SATURATION_TOLERANCE = 1e-12


def _Index(scenarioOrIndex):
    if isinstance(scenarioOrIndex, Scenario):
        return ScenarioIndex(scenarioOrIndex)
    return scenarioOrIndex


def _GroupArray(index, values, default):
    """
    Accept None, a per-group array or a mapping (slice id, area) -> value.
    """
    if values is None:
        return np.full(index.numGroups, float(default))
    if isinstance(values, dict):
        return np.array([float(values.get(key, 0.0))
                         for key in index.groupKeys])
    values = np.asarray(values, dtype=float)
    if values.shape != (index.numGroups,):
        raise StructuralError("Expected one value per slice-area")
    return values


class DominantShareInfo(object):
    """
    Per-flow weighted dominant shares of a DRF allocation.

    shares[f] is z_f = x_f * delta_f; dominantKeys[f] is the (node id,
    resource) attaining delta_f, or, per node, a mapping node id ->
    (node id, resource) for per-domain DRF.
    """
    def __init__(self, groupKeys, shares, dominantKeys, weights):
        self.groupKeys = groupKeys
        self.shares = np.asarray(shares, dtype=float)
        self.dominantKeys = dominantKeys
        self.weights = np.asarray(weights, dtype=float)

    @property
    def weightedShares(self):
        """
        z_f / w_f, zero where w_f is zero
        """
        return np.divide(self.shares, self.weights,
                         out=np.zeros(len(self.shares)),
                         where=self.weights > 0)


def DesignatedPaths(index):
    """
    One column per slice-area: the path maximizing the slice's standalone
    bottleneck volume min_{i in p} min_r C_{i,r} / d^p_{n,i,r}, ties
    broken by the lowest path id.
    """
    if index.numColumns == 0:
        return np.zeros(0, dtype=int)
    ratio = np.where(index.used,
                     index.capacity[:, np.newaxis] /
                     np.where(index.used, index.demand, 1.0),
                     np.inf)
    volume = ratio.min(axis=0)
    best = index.GroupMax(volume)
    chosen = np.zeros(index.numGroups, dtype=int)
    for g in range(index.numGroups):
        start = index.groupStarts[g]
        stop = index.groupStarts[g + 1] if g + 1 < index.numGroups \
            else index.numColumns
        candidates = np.nonzero(
            volume[start:stop] >= best[g] * (1.0 - SATURATION_TOLERANCE))[0]
        # Columns of a group are sorted by path id:
        chosen[g] = start + candidates[0]
    return chosen


def SatiationCaps(index, designated):
    """
    Volume at which each flow's marginal utility falls to the OPEX cost
    of its designated path: inverse_marginal(sum q d).
    """
    if index.numGroups == 0:
        return np.zeros(0)
    opexCost = index.PathCosts(index.opex)[designated]
    return InverseMarginalArray(index.phi, index.alpha, opexCost)


def ProgressiveFill(demand, capacity, rates, caps):
    """
    Event-driven progressive filling.

    :param demand: (keys, flows) demand per unit volume
    :param capacity: per-key capacity
    :param rates: per-flow growth rate (zero-rate flows stay at zero)
    :param caps: per-flow volume caps (np.inf for none)
    :returns: per-flow volumes
    """
    numKeys, numFlows = demand.shape
    volume = np.zeros(numFlows)
    active = rates > 0
    active &= caps > 0
    load = np.zeros(numKeys)
    while np.any(active):
        loadRate = demand[:, active].dot(rates[active])
        residual = capacity - load
        growing = loadRate > 0
        steps = [np.inf]
        if np.any(growing):
            steps.append(np.min(residual[growing] / loadRate[growing]))
        capSteps = (caps[active] - volume[active]) / rates[active]
        steps.append(np.min(capSteps))
        step = max(0.0, min(steps))
        if not np.isfinite(step):
            raise StructuralError("Progressive filling is unbounded: a "
                                  "flow has no demand and no cap")
        volume[active] += rates[active] * step
        load = demand.dot(volume)
        saturated = load >= capacity * (1.0 - SATURATION_TOLERANCE)
        touching = (demand[saturated, :] > 0).any(axis=0)
        capped = volume >= caps * (1.0 - SATURATION_TOLERANCE)
        volume = np.minimum(volume, caps)
        active &= ~(touching | capped)
    return volume


def _Flows(index, weights, designated, satiation):
    if designated is None:
        designated = DesignatedPaths(index)
    designated = np.asarray(designated, dtype=int)
    if designated.shape != (index.numGroups,) or \
            np.any(index.colGroup[designated] != np.arange(index.numGroups)):
        raise StructuralError(
            "Need exactly one designated path per slice-area")
    weighted = weights is not None
    weights = _GroupArray(index, weights, 1.0)
    if satiation is None:
        satiation = weighted
    caps = SatiationCaps(index, designated) if satiation \
        else np.full(index.numGroups, np.inf)
    return designated, weights, caps


def _ToAllocation(index, designated, volumes):
    xColumns = np.zeros(index.numColumns)
    xColumns[designated] = volumes
    return AllocationState(index, xColumns)


def MultiDomainDrf(scenario, weights=None, designated=None, satiation=None):
    """
    Weighted max-min fair dominant shares across all domains at once.

    :param weights: per slice-area weights (array or mapping), equal when
                    None
    :param designated: per slice-area designated columns, from
                       DesignatedPaths when None
    :param satiation: cap each flow at its satiation volume; defaults to
                      True in weighted mode and False ("greedy") otherwise
    """
    index = _Index(scenario)
    designated, weights, caps = _Flows(index, weights, designated, satiation)
    if index.numGroups == 0:
        return AllocationState(index)
    demand = index.demand[:, designated]
    fractions = (demand / index.capacity[:, np.newaxis]).max(axis=0)
    rates = weights / fractions
    volumes = ProgressiveFill(demand, index.capacity, rates, caps)
    logger.debug("Multi-domain DRF filled %d flows" % index.numGroups)
    return _ToAllocation(index, designated, volumes)


def MultiDomainDominantShares(index, allocation, weights=None,
                              designated=None):
    """
    DominantShareInfo of a multi-domain DRF allocation.
    """
    if designated is None:
        designated = DesignatedPaths(index)
    weights = _GroupArray(index, weights, 1.0)
    demand = index.demand[:, designated]
    normalized = demand / index.capacity[:, np.newaxis]
    fractions = normalized.max(axis=0)
    dominantKeys = [index.keys[k] for k in normalized.argmax(axis=0)]
    volumes = allocation.xColumns[designated]
    return DominantShareInfo(index.groupKeys, volumes * fractions,
                             dominantKeys, weights)


def _NodeKeyRanges(index):
    """
    (start, stop) of each node's contiguous run of resource keys.
    """
    ranges = dict()
    for k, (nodeId, _) in enumerate(index.keys):
        start, _ = ranges.get(nodeId, (k, k))
        ranges[nodeId] = (start, k + 1)
    return ranges


def PerDomainDrf(scenario, weights=None, designated=None, satiation=None):
    """
    Dominant resource fairness node by node, from the core network back
    to the access points; a flow's volume at each node is capped by what
    it was granted at the later domains.  Parameters as MultiDomainDrf.
    """
    index = _Index(scenario)
    designated, weights, caps = _Flows(index, weights, designated, satiation)
    if index.numGroups == 0:
        return AllocationState(index)
    topology = index.scenario.topology
    keyRanges = _NodeKeyRanges(index)
    flowPaths = [topology.paths[index.colPathIds[j]] for j in designated]
    caps = caps.copy()
    for domain in (CN, CRAN, RAN):
        granted = caps.copy()
        for nodeId in topology.NodesInDomain(domain):
            flows = np.array([f for f, path in enumerate(flowPaths)
                              if nodeId in path.nodeIds], dtype=int)
            if len(flows) == 0:
                continue
            start, stop = keyRanges[nodeId]
            demand = index.demand[start:stop][:, designated[flows]]
            capacity = index.capacity[start:stop]
            fractions = (demand / capacity[:, np.newaxis]).max(axis=0)
            rates = weights[flows] / fractions
            granted[flows] = ProgressiveFill(
                demand, capacity, rates, caps[flows])
        caps = np.minimum(caps, granted)
    logger.debug("Per-domain DRF filled %d flows" % index.numGroups)
    return _ToAllocation(index, designated, caps)


class UniformAllocationSpec(object):
    """
    Inputs of the uniform allocation: the utilized fraction eta per
    resource key, and payment weights w^p_{n,i} per (column, node).
    Node totals W_i are the column sums of the weights.
    """
    def __init__(self, index, eta, pathNodeWeights):
        self.index = index
        self.eta = np.asarray(eta, dtype=float)
        self.weights = np.asarray(pathNodeWeights, dtype=float)
        if self.eta.shape != (index.numKeys,) or \
                self.weights.shape != (index.numColumns, len(index.nodeIds)):
            raise StructuralError("UniformAllocationSpec shape mismatch")
        if np.any(self.weights < 0):
            raise StructuralError("Uniform allocation weights must be "
                                  "non-negative")

    @property
    def nodeTotals(self):
        """
        W_i = sum over slices and paths through i of w^p_{n,i}
        """
        return self.weights.sum(axis=0)

    @classmethod
    def FromEquilibrium(cls, index, allocation, prices):
        """
        Comparator for a DRP equilibrium: the fraction of each resource
        the equilibrium allocation uses, and its per-path, per-node
        payments at the equilibrium prices.

        :param prices: PriceTable or mu in key order
        """
        if isinstance(prices, PriceTable):
            mu, _ = prices.Aligned(index)
        else:
            mu = np.asarray(prices, dtype=float)
        eta = np.minimum(allocation.loads / index.capacity, 1.0)
        bids = BidMatrix(index, allocation.xColumns, mu)
        return cls(index, eta, bids.pathNodeArray)

    @classmethod
    def EqualWeights(cls, index, columns=None):
        """
        Standalone mode: eta = 1 and unit weight for every node on each
        given column (the designated paths by default).
        """
        if columns is None:
            columns = DesignatedPaths(index)
        weights = np.zeros((index.numColumns, len(index.nodeIds)))
        onPath = _OnPath(index)
        weights[columns] = onPath[columns]
        return cls(index, np.ones(index.numKeys), weights)


def _OnPath(index):
    """
    (column, node) indicator of the nodes each column's path visits.
    """
    onPath = np.zeros((index.numColumns, len(index.nodeIds)))
    for j in range(index.numColumns):
        onPath[j, np.unique(index.keyNode[index.used[:, j]])] = 1.0
    return onPath


def UniformAllocation(scenario, spec):
    """
    gamma^p_{n,i} = min_r eta_{i,r} C_{i,r} / d^p_{n,i,r} is what the
    slice could push through node i if it had the node to itself;
    x^p_n = min_{i in p} (w^p_{n,i} / W_i) gamma^p_{n,i}.
    """
    index = _Index(scenario)
    if index.numColumns == 0:
        return AllocationState(index)
    volume = np.where(
        index.used,
        (spec.eta * index.capacity)[:, np.newaxis] /
        np.where(index.used, index.demand, 1.0),
        np.inf)
    numNodes = len(index.nodeIds)
    gamma = np.full((index.numColumns, numNodes), np.inf)
    for i in range(numNodes):
        rows = index.keyNode == i
        gamma[:, i] = volume[rows].min(axis=0)
    totals = spec.nodeTotals
    share = np.divide(spec.weights, totals[np.newaxis, :],
                      out=np.zeros_like(spec.weights),
                      where=totals[np.newaxis, :] > 0)
    onPath = np.isfinite(gamma)
    candidates = np.where(onPath, share * np.where(onPath, gamma, 0.0),
                          np.inf)
    xColumns = candidates.min(axis=1)
    xColumns[~np.isfinite(xColumns)] = 0.0
    return AllocationState(index, xColumns)


def SharingIncentiveViolationScan(allocation, uniform,
                                  slack=FAIRNESS_SLACK):
    """
    Slice-areas receiving less than their uniform share.

    :returns: list of (slice id, area, shortfall) with
              shortfall = 1 - x / x_uniform, in slice-area order
    """
    xArea = allocation.xAreaArray
    xUniform = uniform.xAreaArray
    violations = []
    for g, key in enumerate(allocation.index.groupKeys):
        if xArea[g] < xUniform[g] * (1.0 - slack):
            violations.append(
                (key[0], key[1], float(1.0 - xArea[g] / xUniform[g])))
    return violations
