"""
Model classes for the physical network: nodes with per-resource
capacities and OPEX, service areas, and the pre-computed routing paths
which cross the RAN, CRAN and CN domains in that order.
"""
import numpy as np

from ..constants import DOMAINS
from ..utils.exceptions import InvalidScenario
from ..utils.exceptions import StructuralError


class ResourceVector(object):
    """
    Non-negative per-resource quantities for one node, with one named
    slot per resource (e.g. "cpu", "ram", "mem_bw", "comm_bw").
    """
    def __init__(self, values, labels=None):
        self.values = np.array(values, dtype=float).reshape(-1)
        if np.any(self.values < 0) or not np.all(np.isfinite(self.values)):
            raise InvalidScenario(
                "Resource vector entries must be finite and non-negative: %s"
                % list(self.values), "values")
        if labels is not None and len(labels) != len(self.values):
            raise InvalidScenario(
                "%d resource labels for %d values"
                % (len(labels), len(self.values)), "labels")
        self.labels = list(labels) if labels is not None else None

    def __len__(self):
        return len(self.values)

    def __getitem__(self, index):
        return float(self.values[index])

    def __eq__(self, other):
        return isinstance(other, ResourceVector) and \
            np.array_equal(self.values, other.values)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "ResourceVector(%s)" % list(self.values)

    def ToList(self):
        """
        Plain list of floats, e.g. for YAML serialization.
        """
        return [float(value) for value in self.values]


class NodeSpec(object):
    """
    A RAN access point, CRAN data center or core network data center.
    """
    def __init__(self, nodeId, domain, resources, capacity, opex):
        """
        :param resources: resource slot names, e.g. ["cpu", "ram"]
        :param capacity: capacities C_{i,r}, one per resource slot
        :param opex: unit OPEX q_{i,r}, one per resource slot
        """
        if domain not in DOMAINS:
            raise InvalidScenario(
                "Node %s has unknown domain %r" % (nodeId, domain), "domain")
        self.nodeId = str(nodeId)
        self.domain = int(domain)
        self.resources = list(resources)
        self.capacity = capacity if isinstance(capacity, ResourceVector) \
            else ResourceVector(capacity, self.resources)
        self.opex = opex if isinstance(opex, ResourceVector) \
            else ResourceVector(opex, self.resources)
        if len(self.capacity) != len(self.resources) or \
                len(self.opex) != len(self.resources):
            raise InvalidScenario(
                "Node %s: capacity and OPEX must have one entry per "
                "resource (%d)" % (self.nodeId, len(self.resources)),
                "capacity")
        if len(set(self.resources)) != len(self.resources):
            raise InvalidScenario(
                "Node %s has duplicate resource names" % self.nodeId,
                "resources")

    @property
    def numResources(self):
        """
        M, the node's resource count
        """
        return len(self.resources)

    def __repr__(self):
        return "NodeSpec(%r, domain=%d)" % (self.nodeId, self.domain)


class PathSpec(object):
    """
    A pre-determined routing path p = {l, i, j, k} from area l through one
    RAN node, one CRAN node and one CN node.
    """
    def __init__(self, pathId, area, nodeIds):
        self.pathId = str(pathId)
        self.area = int(area)
        self.nodeIds = [str(nodeId) for nodeId in nodeIds]

    def __repr__(self):
        return "PathSpec(%r, area=%d, %s)" % (
            self.pathId, self.area, "->".join(self.nodeIds))


class TopologySpec(object):
    """
    Nodes, the number of service areas and the paths serving each area.
    """
    def __init__(self, nodes, numAreas, paths):
        """
        :param nodes: iterable of NodeSpec
        :param numAreas: A, areas are numbered 1..A
        :param paths: iterable of PathSpec
        """
        self.nodes = dict()
        for node in nodes:
            if node.nodeId in self.nodes:
                raise InvalidScenario(
                    "Duplicate node id %s" % node.nodeId, "nodes")
            self.nodes[node.nodeId] = node
        self.numAreas = int(numAreas)
        self.paths = dict()
        self.pathsByArea = dict((area, []) for area in self.areas)
        for path in paths:
            if path.pathId in self.paths:
                raise InvalidScenario(
                    "Duplicate path id %s" % path.pathId, "paths")
            if path.area not in self.pathsByArea:
                raise InvalidScenario(
                    "Path %s serves unknown area %d"
                    % (path.pathId, path.area), "paths")
            self.paths[path.pathId] = path
            self.pathsByArea[path.area].append(path)
        for area in self.areas:
            self.pathsByArea[area].sort(key=lambda path: path.pathId)
        self.Validate()

    @property
    def areas(self):
        """
        Area numbers 1..A
        """
        return list(range(1, self.numAreas + 1))

    def Validate(self):
        """
        Every area has at least one path, and every path visits one
        existing node per domain, in domain order.
        """
        for area in self.areas:
            if not self.pathsByArea[area]:
                raise InvalidScenario("Area %d has no paths" % area, "paths")
        for pathId in sorted(self.paths):
            path = self.paths[pathId]
            for nodeId in path.nodeIds:
                if nodeId not in self.nodes:
                    raise InvalidScenario(
                        "Path %s refers to unknown node %s"
                        % (pathId, nodeId), "paths")
            domains = [self.nodes[nodeId].domain for nodeId in path.nodeIds]
            if domains != list(DOMAINS):
                raise InvalidScenario(
                    "Path %s must visit exactly one RAN, CRAN and CN node "
                    "in that order, found domains %s" % (pathId, domains),
                    "paths")

    def GetNode(self, nodeId):
        """
        Look up a node, raising StructuralError for unknown ids.
        """
        try:
            return self.nodes[nodeId]
        except KeyError:
            raise StructuralError("Unknown node id %s" % nodeId, nodeId)

    def GetPath(self, pathId):
        """
        Look up a path, raising StructuralError for unknown ids.
        """
        try:
            return self.paths[pathId]
        except KeyError:
            raise StructuralError("Unknown path id %s" % pathId, pathId)

    def SortedNodeIds(self):
        """
        Node ids in the fixed order used by every aggregation.
        """
        return sorted(self.nodes)

    def SortedPaths(self):
        """
        Paths ordered by area, then path id.
        """
        return [path for area in self.areas
                for path in self.pathsByArea[area]]

    def ResourceKeys(self):
        """
        (node id, resource name) pairs in aggregation order.
        """
        return [(nodeId, resource)
                for nodeId in self.SortedNodeIds()
                for resource in self.nodes[nodeId].resources]

    def NodesInDomain(self, domain):
        """
        Sorted ids of the nodes in one domain.
        """
        return [nodeId for nodeId in self.SortedNodeIds()
                if self.nodes[nodeId].domain == domain]
