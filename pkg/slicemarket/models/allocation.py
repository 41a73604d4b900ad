"""
Allocation bookkeeping: per-area traffic totals, per-node resource
allocations and the capacity feasibility check.

The module-level functions work on plain mappings keyed by
(slice id, path id), so they can be checked by hand; AllocationState
wraps the array form used by the mechanisms.
"""
import numpy as np

from ..constants import FEASIBILITY_TOLERANCE
from ..utils.exceptions import StructuralError
from .topology import ResourceVector


def _SliceLookup(slices):
    """
    Accept either a mapping slice id -> SliceSpec or a sequence.
    """
    if isinstance(slices, dict):
        return slices
    return dict((sliceSpec.sliceId, sliceSpec) for sliceSpec in slices)


def AggregateAreaTraffic(xPath, topology):
    """
    x_{n,l} = sum over paths p of area l of x_n^p.

    :param xPath: mapping (slice id, path id) -> traffic
    :returns: mapping (slice id, area) -> traffic
    """
    xArea = dict()
    for (sliceId, pathId) in sorted(xPath):
        path = topology.GetPath(pathId)
        key = (sliceId, path.area)
        xArea[key] = xArea.get(key, 0.0) + xPath[(sliceId, pathId)]
    return xArea


def NodeAllocation(xPath, slices, topology):
    """
    a_{n,i,r} = sum over paths p through node i of x_n^p d^p_{n,i,r}.

    :returns: mapping (slice id, node id) -> ResourceVector
    """
    slices = _SliceLookup(slices)
    totals = dict()
    for (sliceId, pathId) in sorted(xPath):
        traffic = xPath[(sliceId, pathId)]
        if traffic == 0:
            continue
        path = topology.GetPath(pathId)
        if sliceId not in slices:
            raise StructuralError("Unknown slice id %s" % sliceId, sliceId)
        sliceSpec = slices[sliceId]
        for nodeId in path.nodeIds:
            node = topology.GetNode(nodeId)
            demand = sliceSpec.GetDemand(pathId, nodeId)
            key = (sliceId, nodeId)
            if key not in totals:
                totals[key] = np.zeros(node.numResources)
            totals[key] = totals[key] + traffic * demand.values
    return dict((key, ResourceVector(
        totals[key], topology.nodes[key[1]].resources))
                for key in totals)


class FeasibilityReport(object):
    """
    Verdict of CheckFeasibility with the violated capacities.
    """
    def __init__(self, violations):
        """
        :param violations: list of (node id, resource name, overload)
        """
        self.violations = violations

    @property
    def feasible(self):
        """
        True if no capacity is exceeded beyond tolerance
        """
        return not self.violations

    def __bool__(self):
        return self.feasible

    __nonzero__ = __bool__

    def __repr__(self):
        return "FeasibilityReport(feasible=%s, violations=%s)" % (
            self.feasible, self.violations)


def CheckFeasibility(xPath, slices, topology,
                     tolerance=FEASIBILITY_TOLERANCE):
    """
    Check sum_n a_{n,i,r} <= C_{i,r} (1 + tolerance) for every node
    and resource.
    """
    allocations = NodeAllocation(xPath, slices, topology)
    loads = dict()
    for key in sorted(allocations):
        nodeId = key[1]
        vector = allocations[key]
        if nodeId in loads:
            loads[nodeId] = loads[nodeId] + vector.values
        else:
            loads[nodeId] = vector.values.copy()
    violations = []
    for nodeId in sorted(loads):
        node = topology.nodes[nodeId]
        for slot, resource in enumerate(node.resources):
            capacity = node.capacity[slot]
            load = loads[nodeId][slot]
            if load > capacity + tolerance * capacity:
                violations.append((nodeId, resource, load - capacity))
    return FeasibilityReport(violations)


class AllocationState(object):
    """
    Per-(slice, path) provisioned traffic x_n^p together with the derived
    per-area totals x_{n,l} and per-node allocations a_{n,i,r}.

    Derived quantities are recomputed from xColumns on every access.
    """
    def __init__(self, index, xColumns=None):
        self.index = index
        if xColumns is None:
            xColumns = np.zeros(index.numColumns)
        self.xColumns = np.asarray(xColumns, dtype=float).copy()
        if self.xColumns.shape != (index.numColumns,):
            raise StructuralError(
                "Expected %d per-path traffic values, got %s"
                % (index.numColumns, self.xColumns.shape))
        if np.any(self.xColumns < 0):
            raise StructuralError("Per-path traffic must be non-negative")

    @classmethod
    def FromMap(cls, index, xPath):
        """
        Build from a mapping (slice id, path id) -> traffic.
        """
        return cls(index, index.MapToColumns(xPath))

    @property
    def xPath(self):
        """
        {(slice id, path id): x_n^p}
        """
        return self.index.ColumnsToMap(self.xColumns)

    @property
    def xAreaArray(self):
        """
        x_{n,l} in group order
        """
        return self.index.GroupSum(self.xColumns)

    @property
    def xArea(self):
        """
        {(slice id, area): x_{n,l}}
        """
        return self.index.GroupsToMap(self.xAreaArray)

    @property
    def nodeAlloc(self):
        """
        {(slice id, node id): ResourceVector of a_{n,i,r}}, for nodes on
        the slice's paths.
        """
        index = self.index
        topology = index.scenario.topology
        allocations = index.SliceAllocations(self.xColumns)
        result = dict()
        for n, sliceId in enumerate(index.sliceIds):
            columns = np.nonzero(index.colSlice == n)[0]
            nodeIds = sorted(set(
                nodeId for j in columns
                for nodeId in topology.paths[index.colPathIds[j]].nodeIds))
            for nodeId in nodeIds:
                node = topology.nodes[nodeId]
                values = [allocations[n, index.keyIndex[(nodeId, resource)]]
                          for resource in node.resources]
                result[(sliceId, nodeId)] = \
                    ResourceVector(values, node.resources)
        return result

    @property
    def loads(self):
        """
        sum_n a_{n,i,r} per resource key
        """
        return self.index.Loads(self.xColumns)

    def Feasibility(self, tolerance=FEASIBILITY_TOLERANCE):
        """
        Array form of CheckFeasibility.
        """
        index = self.index
        overload = self.loads - index.capacity
        violations = []
        for k in np.nonzero(overload > tolerance * index.capacity)[0]:
            nodeId, resource = index.keys[k]
            violations.append((nodeId, resource, float(overload[k])))
        return FeasibilityReport(violations)

    def Utilization(self):
        """
        Fraction of each resource key's capacity which is allocated.
        """
        return self.loads / self.index.capacity

    def OpexPerUnitTraffic(self):
        """
        sum q_{i,r} (allocated r at i) / sum x_{n,l}; zero when nothing
        is provisioned.
        """
        total = float(np.sum(self.xColumns))
        if total <= 0:
            return 0.0
        return float(np.dot(self.index.opex, self.loads)) / total

    def Copy(self):
        """
        Independent copy
        """
        return AllocationState(self.index, self.xColumns)
