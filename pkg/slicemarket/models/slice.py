"""
Model classes for network slice instances (NSIs): per-area utility
parameters and budgets, and the per-(path, node) demand vectors.
"""
import numpy as np

from ..utility import DelayParams
from ..utils.exceptions import InvalidScenario
from ..utils.exceptions import StructuralError


class DemandVector(object):
    """
    Resource units consumed per Gb/s of slice traffic at one node of one
    path, one entry per resource slot of the node.
    """
    def __init__(self, values):
        self.values = np.array(values, dtype=float).reshape(-1)
        if np.any(self.values < 0) or not np.all(np.isfinite(self.values)):
            raise InvalidScenario(
                "Demand entries must be finite and non-negative: %s"
                % list(self.values), "demand")
        if not np.any(self.values > 0):
            raise InvalidScenario(
                "A demand vector needs at least one positive entry",
                "demand")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, index):
        return float(self.values[index])

    def __eq__(self, other):
        return isinstance(other, DemandVector) and \
            np.array_equal(self.values, other.values)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "DemandVector(%s)" % list(self.values)

    def ToList(self):
        """
        Plain list of floats
        """
        return [float(value) for value in self.values]


class SliceAreaSpec(object):
    """
    What a slice wants in one area: its utility parameters, its budget
    B_{n,l} in cents and the delay parameters used for reporting.
    """
    def __init__(self, utility, budget, delay=None):
        self.utility = utility
        self.budget = float(budget)
        self.delay = delay if delay is not None else DelayParams()
        if self.budget < 0:
            raise InvalidScenario("Budgets must be non-negative", "budget")

    def WithUtility(self, utility):
        """
        Copy with different utility parameters.
        """
        return SliceAreaSpec(utility, self.budget, self.delay)


class SliceSpec(object):
    """
    A network slice instance n.
    """
    def __init__(self, sliceId, areas, demands):
        """
        :param areas: mapping area -> SliceAreaSpec, for the areas the
                      slice is active in
        :param demands: mapping (path id, node id) -> DemandVector
        """
        self.sliceId = str(sliceId)
        self.areas = dict(areas)
        self.demands = dict(demands)

    def GetDemand(self, pathId, nodeId):
        """
        Demand vector d^p_{n,i}, raising StructuralError if missing.
        """
        try:
            return self.demands[(pathId, nodeId)]
        except KeyError:
            raise StructuralError(
                "Slice %s has no demand vector for node %s on path %s"
                % (self.sliceId, nodeId, pathId), (pathId, nodeId))

    def Validate(self, topology):
        """
        A demand vector of the right length exists for every node of
        every path in every area the slice is active in.
        """
        for area in sorted(self.areas):
            if area not in topology.pathsByArea:
                raise InvalidScenario(
                    "Slice %s is active in unknown area %s"
                    % (self.sliceId, area), "areas")
            for path in topology.pathsByArea[area]:
                for nodeId in path.nodeIds:
                    demand = self.GetDemand(path.pathId, nodeId)
                    node = topology.nodes[nodeId]
                    if len(demand) != node.numResources:
                        raise InvalidScenario(
                            "Slice %s demand at node %s on path %s has %d "
                            "entries, node has %d resources"
                            % (self.sliceId, nodeId, path.pathId,
                               len(demand), node.numResources), "demand")

    def WithAreas(self, areas):
        """
        Copy with different per-area specs (same demands).
        """
        return SliceSpec(self.sliceId, areas, self.demands)

    def __repr__(self):
        return "SliceSpec(%r, areas=%s)" % (self.sliceId, sorted(self.areas))
