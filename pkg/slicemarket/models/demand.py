"""
Demand inference from VM utilization.

A slice provisions its VM at a node according to an estimate d_hat of
the demand vector.  Traffic then grows until the tightest resource is
exhausted, so the observed utilization of resource r is

    u_r = (d_r / d_hat_r) * min_r' (d_hat_r' / d_r')

and the tightest resource reads u = 1.  Only the direction of d can be
recovered; the scale is pinned by min_r (d_hat_r / d_r) = 1.
"""
import numpy as np

from ..utils.exceptions import DomainError
from ..utils.exceptions import UndefinedDemand
from .slice import DemandVector


def _Values(vector):
    if isinstance(vector, DemandVector):
        return vector.values
    return np.asarray(vector, dtype=float)


def SimulateUtilization(estimate, demand):
    """
    Utilization pattern observed when a VM sized by estimate serves
    traffic whose true per-unit demand is demand.
    """
    estimate = _Values(estimate)
    demand = _Values(demand)
    if np.any((demand > 0) & (estimate <= 0)):
        raise DomainError(
            "The estimate must be positive wherever demand is positive")
    active = demand > 0
    ratio = np.zeros(len(demand))
    ratio[active] = demand[active] / estimate[active]
    return ratio / ratio.max()


def InferDemandVector(estimate, utilization):
    """
    Recover the demand vector from the estimate and the observed
    utilization fractions: d proportional to u * d_hat, scaled so that
    min over demanded resources of d_hat/d is 1.
    """
    estimate = _Values(estimate)
    utilization = np.asarray(utilization, dtype=float)
    if len(estimate) != len(utilization):
        raise DomainError(
            "Estimate has %d entries, utilization has %d"
            % (len(estimate), len(utilization)))
    if np.any(utilization < 0):
        raise DomainError("Utilization fractions must be non-negative")
    if not np.any(utilization > 0):
        raise UndefinedDemand(
            "All-zero utilization doesn't determine a demand vector")
    if np.any((utilization > 0) & (estimate <= 0)):
        raise DomainError(
            "The estimate must be positive wherever utilization is positive")
    return DemandVector(estimate * utilization / utilization.max())
