"""
A scenario bundles the topology with the slices competing for it.

ScenarioIndex flattens a scenario into numpy arrays so that the auction,
the baselines and the oracle can evaluate whole rounds at once:

  * resource keys k = (node id, resource name), sorted by node id, then
    by the node's resource slot order;
  * columns j = (slice, path), sorted by slice id, area, path id;
  * groups g = (slice, area), whose columns are contiguous;
  * the demand matrix A[k, j] = d^p_{n,i,r} for node i on path p.

Every aggregation walks these fixed orders, so results don't depend on
dict ordering or on which thread computed them.
"""
import numpy as np

from ..logs import logger
from ..utils.exceptions import InvalidScenario
from ..utils.exceptions import StructuralError


class Scenario(object):
    """
    Topology, slices and the optional run configuration found in a
    scenario document (epsilon, step, zeta, load).
    """
    def __init__(self, topology, slices, config=None):
        self.topology = topology
        self.slices = dict()
        for sliceSpec in slices:
            if sliceSpec.sliceId in self.slices:
                raise InvalidScenario(
                    "Duplicate slice id %s" % sliceSpec.sliceId, "slices")
            self.slices[sliceSpec.sliceId] = sliceSpec
        self.config = dict(config or {})
        self.Validate()

    def SortedSlices(self):
        """
        Slices in id order
        """
        return [self.slices[sliceId] for sliceId in sorted(self.slices)]

    def Validate(self):
        """
        Check demand vectors, and require positive capacity and OPEX on
        every resource which any demand vector references.
        """
        topology = self.topology
        for sliceSpec in self.SortedSlices():
            sliceSpec.Validate(topology)
            for (pathId, nodeId) in sorted(sliceSpec.demands):
                path = topology.paths.get(pathId)
                if path is None or path.area not in sliceSpec.areas:
                    continue
                node = topology.nodes[nodeId]
                values = sliceSpec.demands[(pathId, nodeId)].values
                for slot, resource in enumerate(node.resources):
                    if values[slot] <= 0:
                        continue
                    if node.capacity[slot] <= 0:
                        raise InvalidScenario(
                            "Node %s has zero capacity for %s, which slice "
                            "%s demands" % (nodeId, resource,
                                            sliceSpec.sliceId), "capacity")
                    if node.opex[slot] <= 0:
                        raise InvalidScenario(
                            "Node %s has zero OPEX for %s, which slice %s "
                            "demands" % (nodeId, resource,
                                         sliceSpec.sliceId), "opex")

    def WithSlices(self, slices):
        """
        Same topology and config, different slices.
        """
        return Scenario(self.topology, slices, self.config)

    def ScaledPhi(self, factor):
        """
        Copy of this scenario with every phi_{n,l} multiplied by factor.
        """
        slices = []
        for sliceSpec in self.SortedSlices():
            areas = dict(
                (area, spec.WithUtility(spec.utility.Scaled(factor)))
                for area, spec in sliceSpec.areas.items())
            slices.append(sliceSpec.WithAreas(areas))
        return self.WithSlices(slices)


class ScenarioIndex(object):
    """
    Array view of a Scenario.
    """
    # pylint: disable=too-many-instance-attributes
    def __init__(self, scenario):
        self.scenario = scenario
        topology = scenario.topology

        self.keys = topology.ResourceKeys()
        self.keyIndex = dict((key, k) for k, key in enumerate(self.keys))
        self.capacity = np.array(
            [topology.nodes[nodeId].capacity[
                topology.nodes[nodeId].resources.index(resource)]
             for nodeId, resource in self.keys], dtype=float)
        self.opex = np.array(
            [topology.nodes[nodeId].opex[
                topology.nodes[nodeId].resources.index(resource)]
             for nodeId, resource in self.keys], dtype=float)
        self.keyDomain = np.array(
            [topology.nodes[nodeId].domain for nodeId, _ in self.keys],
            dtype=int)
        self.nodeIds = topology.SortedNodeIds()
        nodePosition = dict(
            (nodeId, i) for i, nodeId in enumerate(self.nodeIds))
        self.keyNode = np.array(
            [nodePosition[nodeId] for nodeId, _ in self.keys], dtype=int)

        self.sliceIds = sorted(scenario.slices)
        self.groupKeys = []
        groupSlice = []
        groupStarts = []
        phi, alpha, z0, budget = [], [], [], []
        colSlice, colGroup, colArea, colPathIds = [], [], [], []
        columns = []
        for n, sliceId in enumerate(self.sliceIds):
            sliceSpec = scenario.slices[sliceId]
            for area in sorted(sliceSpec.areas):
                areaSpec = sliceSpec.areas[area]
                g = len(self.groupKeys)
                self.groupKeys.append((sliceId, area))
                groupSlice.append(n)
                groupStarts.append(len(colPathIds))
                phi.append(areaSpec.utility.phi)
                alpha.append(areaSpec.utility.alpha)
                z0.append(areaSpec.utility.z0)
                budget.append(areaSpec.budget)
                for path in topology.pathsByArea[area]:
                    colSlice.append(n)
                    colGroup.append(g)
                    colArea.append(area)
                    colPathIds.append(path.pathId)
                    columns.append((sliceSpec, path))
        self.groupSlice = np.array(groupSlice, dtype=int)
        self.groupStarts = np.array(groupStarts, dtype=int)
        self.phi = np.array(phi, dtype=float)
        self.alpha = np.array(alpha, dtype=float)
        self.z0 = np.array(z0, dtype=float)
        self.budget = np.array(budget, dtype=float)
        self.colSlice = np.array(colSlice, dtype=int)
        self.colGroup = np.array(colGroup, dtype=int)
        self.colArea = np.array(colArea, dtype=int)
        self.colPathIds = colPathIds
        self.columnIndex = dict(
            ((self.sliceIds[colSlice[j]], colPathIds[j]), j)
            for j in range(len(colPathIds)))

        self.demand = np.zeros((len(self.keys), len(colPathIds)))
        for j, (sliceSpec, path) in enumerate(columns):
            for nodeId in path.nodeIds:
                values = sliceSpec.GetDemand(path.pathId, nodeId).values
                node = topology.nodes[nodeId]
                for slot, resource in enumerate(node.resources):
                    self.demand[self.keyIndex[(nodeId, resource)], j] = \
                        values[slot]
        self.used = self.demand > 0

        self.sliceMatrix = np.zeros((len(self.sliceIds), len(colPathIds)))
        if colPathIds:
            self.sliceMatrix[self.colSlice, np.arange(len(colPathIds))] = 1.0
        logger.debug(
            "Indexed scenario: %d resource keys, %d slices, %d slice-areas, "
            "%d slice-paths" % (self.numKeys, self.numSlices,
                                self.numGroups, self.numColumns))

    @property
    def numKeys(self):
        """
        Number of (node, resource) pairs
        """
        return len(self.keys)

    @property
    def numColumns(self):
        """
        Number of (slice, path) pairs
        """
        return len(self.colPathIds)

    @property
    def numGroups(self):
        """
        Number of (slice, area) pairs
        """
        return len(self.groupKeys)

    @property
    def numSlices(self):
        """
        Number of slices
        """
        return len(self.sliceIds)

    def GroupSum(self, columnValues):
        """
        Sum per (slice, area) of per-column values.
        """
        return np.bincount(self.colGroup, weights=columnValues,
                           minlength=self.numGroups)

    def GroupMin(self, columnValues):
        """
        Minimum per (slice, area) of per-column values.
        """
        if self.numColumns == 0:
            return np.zeros(0)
        return np.minimum.reduceat(columnValues, self.groupStarts)

    def GroupMax(self, columnValues):
        """
        Maximum per (slice, area) of per-column values.
        """
        if self.numColumns == 0:
            return np.zeros(0)
        return np.maximum.reduceat(columnValues, self.groupStarts)

    def PathCosts(self, mu):
        """
        Unit cost sum_{i in p} sum_r d^p_{n,i,r} mu_{i,r} of every column.
        """
        return self.demand.T.dot(mu)

    def Loads(self, xColumns):
        """
        Total allocation sum_n a_{n,i,r} of every resource key.
        """
        return self.demand.dot(xColumns)

    def SliceAllocations(self, xColumns):
        """
        a_{n,i,r} as a (slice, key) array.
        """
        return self.sliceMatrix.dot((self.demand * xColumns).T)

    def MinUsedRatio(self, keyValues):
        """
        Per column, the minimum of keyValues over the keys the column's
        demand actually uses.
        """
        if self.numColumns == 0:
            return np.zeros(0)
        return np.where(self.used, keyValues[:, np.newaxis],
                        np.inf).min(axis=0)

    def ColumnsToMap(self, xColumns):
        """
        {(slice id, path id): value}
        """
        return dict(((self.sliceIds[self.colSlice[j]], self.colPathIds[j]),
                     float(xColumns[j]))
                    for j in range(self.numColumns))

    def GroupsToMap(self, groupValues):
        """
        {(slice id, area): value}
        """
        return dict((self.groupKeys[g], float(groupValues[g]))
                    for g in range(self.numGroups))

    def KeysToMap(self, keyValues):
        """
        {(node id, resource name): value}
        """
        return dict((self.keys[k], float(keyValues[k]))
                    for k in range(self.numKeys))

    def MapToColumns(self, xPath):
        """
        Inverse of ColumnsToMap; missing columns are zero.  Unknown
        (slice, path) keys raise StructuralError.
        """
        xColumns = np.zeros(self.numColumns)
        for key in sorted(xPath):
            if key not in self.columnIndex:
                raise StructuralError(
                    "Unknown (slice, path) pair %s" % (key,), key)
            xColumns[self.columnIndex[key]] = xPath[key]
        return xColumns
