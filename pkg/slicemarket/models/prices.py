"""
Resource prices declared by nodes, and the bids slices pay for them.
"""
import numpy as np

from ..utils.exceptions import StructuralError


class PriceTable(object):
    """
    Unit price mu_{i,r} and utilization fraction eta_{i,r} for each
    (node id, resource name) key.
    """
    def __init__(self, keys, mu, eta=None):
        self.keys = list(keys)
        self.mu = np.asarray(mu, dtype=float).copy()
        if eta is None:
            eta = np.zeros(len(self.keys))
        self.eta = np.asarray(eta, dtype=float).copy()
        if self.mu.shape != (len(self.keys),) or \
                self.eta.shape != (len(self.keys),):
            raise StructuralError(
                "PriceTable needs one mu and one eta per resource key")
        self._position = dict((key, k) for k, key in enumerate(self.keys))

    @classmethod
    def Initial(cls, index):
        """
        Prices start at the OPEX floor, mu = q, with nothing allocated.
        """
        return cls(index.keys, index.opex, np.zeros(index.numKeys))

    @classmethod
    def FromNodePrices(cls, nodePrices, topology):
        """
        Build from {node id: [mu per resource slot]}.
        """
        keys, mu = [], []
        for nodeId in sorted(nodePrices):
            node = topology.GetNode(nodeId)
            values = list(nodePrices[nodeId])
            if len(values) != node.numResources:
                raise StructuralError(
                    "Node %s has %d resources, got %d prices"
                    % (nodeId, node.numResources, len(values)), nodeId)
            for resource, value in zip(node.resources, values):
                keys.append((nodeId, resource))
                mu.append(value)
        return cls(keys, mu)

    def Price(self, nodeId, resource):
        """
        mu_{i,r}, raising StructuralError if the key has no price.
        """
        try:
            return float(self.mu[self._position[(nodeId, resource)]])
        except KeyError:
            raise StructuralError(
                "No price for resource %s at node %s" % (resource, nodeId),
                (nodeId, resource))

    def NodeMu(self, nodeId):
        """
        Prices of every key of nodeId, in table order.
        """
        return np.array([self.mu[k] for k, key in enumerate(self.keys)
                         if key[0] == nodeId])

    def Aligned(self, index):
        """
        mu and eta arrays in the index's key order.
        """
        mu = np.zeros(index.numKeys)
        eta = np.zeros(index.numKeys)
        for k, key in enumerate(index.keys):
            if key not in self._position:
                raise StructuralError(
                    "No price for resource %s at node %s" % (key[1], key[0]),
                    key)
            mu[k] = self.mu[self._position[key]]
            eta[k] = self.eta[self._position[key]]
        return mu, eta

    def MuMap(self):
        """
        {(node id, resource): mu}
        """
        return dict((key, float(self.mu[k]))
                    for k, key in enumerate(self.keys))

    def EtaMap(self):
        """
        {(node id, resource): eta}
        """
        return dict((key, float(self.eta[k]))
                    for k, key in enumerate(self.keys))

    def Copy(self):
        """
        Independent copy
        """
        return PriceTable(self.keys, self.mu, self.eta)


def PathUnitCost(sliceSpec, pathId, prices):
    """
    Cost of forwarding one Gb/s of the slice's traffic over pathId:
    sum over the nodes i the slice has demand for on the path and their
    resources r of d^p_{n,i,r} mu_{i,r}.

    prices must carry every such node in the slot order of the demand
    vectors, as PriceTable.FromNodePrices builds them.
    """
    nodeIds = sorted(nodeId for (demandPath, nodeId) in sliceSpec.demands
                     if demandPath == pathId)
    if not nodeIds:
        raise StructuralError(
            "Slice %s has no demand on path %s" % (sliceSpec.sliceId, pathId),
            pathId)
    cost = 0.0
    for nodeId in nodeIds:
        demand = sliceSpec.demands[(pathId, nodeId)]
        nodePrices = prices.NodeMu(nodeId)
        if len(nodePrices) != len(demand):
            raise StructuralError(
                "Missing prices for node %s on path %s" % (nodeId, pathId),
                nodeId)
        cost += float(np.dot(demand.values, nodePrices))
    return cost


class BidMatrix(object):
    """
    Payments w_{n,i,r} = mu_{i,r} sum_{p through i} x_n^p d^p_{n,i,r},
    with the per-area totals w_{n,l} and the per-(path, node) totals
    w^p_{n,i}.
    """
    def __init__(self, index, xColumns, mu):
        self.index = index
        self.xColumns = np.asarray(xColumns, dtype=float).copy()
        self.mu = np.asarray(mu, dtype=float).copy()
        # Per (key, column) payment:
        self._keyColumn = index.demand * self.xColumns * \
            self.mu[:, np.newaxis]
        self.w = index.sliceMatrix.dot(self._keyColumn.T)

    @property
    def keyTotals(self):
        """
        sum_n w_{n,i,r} per resource key
        """
        return self._keyColumn.sum(axis=1)

    @property
    def areaTotalsArray(self):
        """
        w_{n,l} in group order
        """
        return self.index.GroupSum(self._keyColumn.sum(axis=0))

    @property
    def pathNodeArray(self):
        """
        w^p_{n,i} as a (column, node) array
        """
        index = self.index
        incidence = np.zeros((len(index.nodeIds), index.numKeys))
        incidence[index.keyNode, np.arange(index.numKeys)] = 1.0
        return incidence.dot(self._keyColumn).T

    def AsMap(self):
        """
        {(slice id, node id, resource): w_{n,i,r}}, nonzero entries only
        """
        index = self.index
        result = dict()
        for n, sliceId in enumerate(index.sliceIds):
            for k, (nodeId, resource) in enumerate(index.keys):
                if self.w[n, k] != 0:
                    result[(sliceId, nodeId, resource)] = float(self.w[n, k])
        return result

    def AreaTotals(self):
        """
        {(slice id, area): w_{n,l}}
        """
        return self.index.GroupsToMap(self.areaTotalsArray)

    def PathNodeTotals(self):
        """
        {(slice id, path id, node id): w^p_{n,i}} for nodes on each path
        """
        index = self.index
        topology = index.scenario.topology
        perNode = self.pathNodeArray
        result = dict()
        for j in range(index.numColumns):
            sliceId = index.sliceIds[index.colSlice[j]]
            pathId = index.colPathIds[j]
            for nodeId in topology.paths[pathId].nodeIds:
                position = index.nodeIds.index(nodeId)
                result[(sliceId, pathId, nodeId)] = float(perNode[j, position])
        return result
