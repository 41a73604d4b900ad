"""
Reference solver for the welfare maximization problem

    maximize   sum_{n,l} U_{n,l}(x_{n,l}) - sum_p c0_p x_p
    subject to A x <= C,  x >= 0

where c0_p = sum q d is each slice-path's OPEX per unit traffic, and for
the payment-weighted variant

    maximize   sum_{n,l} w_{n,l} log x_{n,l} - sum_p c0_p x_p

under the same constraints, which is the same problem with phi = w and
alpha = 1.

The solver works independently of the auction: an augmented Lagrangian
on the capacity constraints (scaled by capacity), whose bound-constrained
subproblems are solved with scipy's L-BFGS-B, followed by an active-set
Newton polish on the KKT system.  Below a small floor the utility is
continued by its second-order Taylor expansion, so that the objective is
finite on the whole box x >= 0.
"""
import time

import numpy as np
from scipy.optimize import minimize

from ..logs import logger
from ..models.allocation import AllocationState
from ..models.scenario import Scenario
from ..models.scenario import ScenarioIndex
from ..utility import InverseMarginalArray
from ..utility import MarginalUtilityArray
from ..utility import UNBOUNDED_LOSS
from ..utility import UtilityValueArray
from ..utils.exceptions import StructuralError
from .kkt import KktResidual

# Utility floor relative to each slice-area's natural traffic scale:
FLOOR_FRACTION = 1e-9

# Paths carrying less than this fraction of their area's traffic are
# zeroed before the active-set polish:
POLISH_FRACTION = 1e-9

MAX_OUTER_ITERATIONS = 60
MAX_POLISH_STEPS = 100


def _Index(scenarioOrIndex):
    if isinstance(scenarioOrIndex, Scenario):
        return ScenarioIndex(scenarioOrIndex)
    return scenarioOrIndex


def _ColumnBottlenecks(index):
    """
    Standalone bottleneck volume min_k C_k / A[k, j] of every column.
    """
    ratio = np.where(index.used,
                     index.capacity[:, np.newaxis] /
                     np.where(index.used, index.demand, 1.0),
                     np.inf)
    return ratio.min(axis=0)


class ReferenceProblem(object):
    """
    One instance of the welfare problem over a ScenarioIndex.

    Slice-areas with phi = 0 are excluded: their paths are fixed at zero.
    """
    def __init__(self, index, phi, alpha, z0):
        self.index = index
        self.phi = np.asarray(phi, dtype=float)
        self.alpha = np.asarray(alpha, dtype=float)
        self.activeGroup = self.phi > 0
        self.activeColumn = self.activeGroup[index.colGroup]
        # Placeholder parameters keep the utility formulas finite for
        # excluded slice-areas; their terms are masked out.
        self._phi = np.where(self.activeGroup, self.phi, 1.0)
        self.z0 = np.where(self.activeGroup, np.asarray(z0, dtype=float),
                           1.0)
        self.cost0 = index.PathCosts(index.opex)
        target = InverseMarginalArray(
            self._phi, self.alpha, index.GroupMin(self.cost0)) \
            if index.numGroups else np.zeros(0)
        bottleneck = _ColumnBottlenecks(index) if index.numColumns \
            else np.zeros(0)
        scale = np.minimum(target[index.colGroup], bottleneck) \
            if index.numColumns else np.zeros(0)
        self.scale = np.where(self.activeColumn & (scale > 0), scale, 1.0)
        self.floor = FLOOR_FRACTION * np.where(
            self.activeGroup, index.GroupMax(self.scale)
            if index.numColumns else np.ones(0), 1.0)
        self.normalization = max(
            float(np.dot(self.cost0, self.scale * self.activeColumn)),
            1e-300)

    def Utility(self, groupTraffic):
        """
        Utility and marginal utility per slice-area, with the quadratic
        continuation below the floor.  Excluded slice-areas give zero.
        """
        clipped = np.maximum(groupTraffic, self.floor)
        value = UtilityValueArray(self._phi, self.alpha, clipped, self.z0)
        marginal = MarginalUtilityArray(self._phi, self.alpha, clipped)
        curvature = -self.alpha * marginal / clipped
        below = groupTraffic - clipped
        value = value + marginal * below + 0.5 * curvature * below ** 2
        marginal = marginal + curvature * below
        mask = self.activeGroup.astype(float)
        return np.atleast_1d(value) * mask, np.atleast_1d(marginal) * mask

    def Curvature(self, groupTraffic):
        """
        U'' per slice-area, at or above the floor.
        """
        clipped = np.maximum(groupTraffic, self.floor)
        marginal = MarginalUtilityArray(self._phi, self.alpha, clipped)
        return np.atleast_1d(-self.alpha * marginal / clipped) * \
            self.activeGroup

    def Objective(self, xColumns):
        """
        Welfare objective and its gradient with respect to x.
        """
        index = self.index
        value, marginal = self.Utility(index.GroupSum(xColumns))
        objective = float(value.sum() - np.dot(self.cost0, xColumns))
        gradient = (marginal[index.colGroup] - self.cost0) * \
            self.activeColumn
        return objective, gradient

    def Multipliers(self, scaledMultipliers):
        """
        Capacity multipliers lambda in currency per resource unit.
        """
        return scaledMultipliers * self.normalization / self.index.capacity

    def Prices(self, lam):
        """
        mu = q + lambda
        """
        return self.index.opex + lam


def ObjectiveGradientCheck(index, xColumns, phi=None, alpha=None,
                           relativeStep=1e-5):
    """
    Largest relative difference between the analytic gradient of the
    welfare objective and central finite differences at xColumns (all
    entries positive).
    """
    phi = index.phi if phi is None else phi
    alpha = index.alpha if alpha is None else alpha
    problem = ReferenceProblem(index, phi, alpha, index.z0)
    _, gradient = problem.Objective(xColumns)
    worst = 0.0
    for j in range(index.numColumns):
        step = relativeStep * max(abs(xColumns[j]), 1e-3)
        forward = xColumns.copy()
        forward[j] += step
        backward = xColumns.copy()
        backward[j] -= step
        difference = (problem.Objective(forward)[0] -
                      problem.Objective(backward)[0]) / (2.0 * step)
        denominator = max(abs(gradient[j]), abs(difference), 1e-12)
        worst = max(worst, abs(gradient[j] - difference) / denominator)
    return worst


def ZeroIdleColumns(problem, x):
    """
    Copy of x with paths below POLISH_FRACTION of their area's traffic
    (and paths of excluded slice-areas) set to zero, and the mask of the
    paths kept.
    """
    index = problem.index
    groupTraffic = index.GroupSum(x)
    kept = problem.activeColumn & \
        (x > POLISH_FRACTION * np.maximum(groupTraffic[index.colGroup],
                                          1e-300))
    return np.where(kept, x, 0.0), kept


class AugmentedLagrangian(object):
    """
    Method of multipliers on the scaled constraints A x / C - 1 <= 0.
    """
    def __init__(self, problem, tolerance, maxIterations):
        self.problem = problem
        self.tolerance = tolerance
        self.maxIterations = maxIterations
        self.iterations = 0
        index = problem.index
        self.scaledMultipliers = np.zeros(index.numKeys)
        self.rho = 10.0
        self.bounds = [(0.0, None) if active else (0.0, 0.0)
                       for active in problem.activeColumn]

    def _Penalized(self, scaledX):
        problem = self.problem
        index = problem.index
        x = scaledX * problem.scale
        objective, gradient = problem.Objective(x)
        violation = index.Loads(x) / index.capacity - 1.0
        shifted = np.maximum(
            0.0, self.scaledMultipliers + self.rho * violation)
        value = -objective / problem.normalization + \
            (np.dot(shifted, shifted) -
             np.dot(self.scaledMultipliers, self.scaledMultipliers)) / \
            (2.0 * self.rho)
        gradientX = -gradient / problem.normalization + \
            index.demand.T.dot(shifted / index.capacity)
        return value, gradientX * problem.scale

    def Solve(self):
        """
        :returns: (x, lambda)
        """
        problem = self.problem
        index = problem.index
        scaledX = np.where(problem.activeColumn, 0.5, 0.0)
        previousViolation = np.inf
        x = scaledX * problem.scale
        lam = problem.Multipliers(self.scaledMultipliers)
        for outer in range(MAX_OUTER_ITERATIONS):
            remaining = self.maxIterations - self.iterations
            if remaining <= 0:
                break
            result = minimize(
                self._Penalized, scaledX, jac=True, method="L-BFGS-B",
                bounds=self.bounds,
                options=dict(maxiter=int(min(remaining, 20000)),
                             ftol=1e-16, gtol=1e-14, maxcor=30))
            self.iterations += int(result.nit)
            scaledX = np.where(problem.activeColumn,
                               np.maximum(result.x, 0.0), 0.0)
            x, _ = ZeroIdleColumns(problem, scaledX * problem.scale)
            violation = index.Loads(x) / index.capacity - 1.0
            self.scaledMultipliers = np.maximum(
                0.0, self.scaledMultipliers + self.rho * violation)
            lam = problem.Multipliers(self.scaledMultipliers)
            certificate = KktResidual(
                AllocationState(index, x), problem.Prices(lam),
                problem.phi, problem.alpha, self.tolerance)
            maxViolation = float(np.max(violation, initial=0.0))
            logger.debug(
                "Oracle outer iteration %d: residual %.3g, violation %.3g, "
                "rho %.3g" % (outer + 1, certificate.residual, maxViolation,
                              self.rho))
            if certificate.passes:
                break
            if maxViolation > 0.25 * previousViolation:
                self.rho = min(self.rho * 10.0, 1e12)
            previousViolation = max(maxViolation, 0.0)
        return x, lam


def ActiveSetPolish(problem, x, lam, tolerance):
    """
    Newton steps on the KKT equations restricted to the paths carrying
    traffic and the resources which are booked or priced.  Paths below
    POLISH_FRACTION of their area's traffic start out idle at exactly
    zero.  After each step, paths or resources whose values turn negative
    leave the active sets, and idle paths cheaper than the marginal
    utility or overloaded resources rejoin them.  Returns the best
    (x, lambda, certificate) seen, starting from the cleaned-up point.
    """
    index = problem.index

    def Certify(xValues, lamValues):
        return KktResidual(AllocationState(index, xValues),
                           problem.Prices(lamValues), problem.phi,
                           problem.alpha, tolerance)

    if index.numColumns == 0:
        return (x, lam, Certify(x, lam))
    x, columns = ZeroIdleColumns(problem, x)
    lam = lam.copy()
    loads = index.Loads(x)
    keys = (lam > 0) | (loads >= index.capacity * (1.0 - 1e-7))
    lam[~keys] = 0.0
    best = (x.copy(), lam.copy(), Certify(x, lam))
    for _ in range(MAX_POLISH_STEPS):
        if best[2].residual <= 1e-3 * tolerance:
            break
        colIds = np.nonzero(columns)[0]
        keyIds = np.nonzero(keys)[0]
        if len(colIds) == 0:
            break
        groupTraffic = index.GroupSum(x)
        _, marginal = problem.Utility(groupTraffic)
        curvature = problem.Curvature(groupTraffic)
        demand = index.demand[np.ix_(keyIds, colIds)]
        groups = index.colGroup[colIds]
        costs = problem.cost0[colIds] + demand.T.dot(lam[keyIds])
        size = len(colIds) + len(keyIds)
        system = np.zeros((size, size))
        rhs = np.zeros(size)
        sameGroup = groups[:, np.newaxis] == groups[np.newaxis, :]
        rowScale = costs
        system[:len(colIds), :len(colIds)] = \
            curvature[groups][:, np.newaxis] * sameGroup / \
            rowScale[:, np.newaxis]
        system[:len(colIds), len(colIds):] = -demand.T / \
            rowScale[:, np.newaxis]
        rhs[:len(colIds)] = -(marginal[groups] - costs) / rowScale
        capacity = index.capacity[keyIds]
        system[len(colIds):, :len(colIds)] = demand / capacity[:, np.newaxis]
        rhs[len(colIds):] = (capacity - index.Loads(x)[keyIds]) / capacity
        step = np.linalg.lstsq(system, rhs, rcond=None)[0]
        x[colIds] += step[:len(colIds)]
        lam[keyIds] += step[len(colIds):]
        negativeColumns = colIds[x[colIds] < 0]
        negativeKeys = keyIds[lam[keyIds] < 0]
        if len(negativeColumns) or len(negativeKeys):
            x[negativeColumns] = 0.0
            lam[negativeKeys] = 0.0
            columns[negativeColumns] = False
            keys[negativeKeys] = False
            continue
        groupTraffic = index.GroupSum(x)
        _, marginal = problem.Utility(groupTraffic)
        allCosts = problem.cost0 + index.demand.T.dot(lam)
        columns |= problem.activeColumn & ~columns & \
            (marginal[index.colGroup] > allCosts * (1.0 + tolerance))
        keys |= index.Loads(x) > index.capacity * (1.0 + tolerance)
        certificate = Certify(x, lam)
        if certificate.residual < best[2].residual:
            best = (x.copy(), lam.copy(), certificate)
    return best


class SolverResult(object):
    """
    Outcome of a reference solve.
    """
    def __init__(self, allocation, lam, certificate, iterations, wallTime):
        self.allocation = allocation
        self.lam = lam
        self.certificate = certificate
        self.iterations = iterations
        self.wallTime = wallTime

    @property
    def prices(self):
        """
        mu = q + lambda in key order
        """
        return self.allocation.index.opex + self.lam


def _Solve(index, phi, alpha, z0, tolerance, maxIterations):
    started = time.time()
    problem = ReferenceProblem(index, phi, alpha, z0)
    if index.numColumns == 0:
        allocation = AllocationState(index)
        lam = np.zeros(index.numKeys)
        certificate = KktResidual(allocation, index.opex + lam, problem.phi,
                                  problem.alpha, tolerance)
        return SolverResult(allocation, lam, certificate, 0,
                            time.time() - started)
    solver = AugmentedLagrangian(problem, tolerance, maxIterations)
    x, lam = solver.Solve()
    x, lam, certificate = ActiveSetPolish(problem, x, lam, tolerance)
    if certificate.passes:
        logger.debug("Oracle solved in %d iterations: %r"
                     % (solver.iterations, certificate))
    else:
        logger.warning("Oracle tolerance %g not reached: %r"
                       % (tolerance, certificate))
    return SolverResult(AllocationState(index, x), lam, certificate,
                        solver.iterations, time.time() - started)


def SolveOptimalAllocation(scenario, tolerance=1e-8, maxIterations=200000):
    """
    Maximize total utility minus OPEX subject to node capacities.

    :returns: (AllocationState, KktCertificate); the certificate fails
              if the tolerance wasn't reached within the budget
    """
    result = SolveWelfare(scenario, tolerance, maxIterations)
    return result.allocation, result.certificate


def SolveWelfare(scenario, tolerance=1e-8, maxIterations=200000):
    """
    SolveOptimalAllocation returning the full SolverResult.
    """
    index = _Index(scenario)
    return _Solve(index, index.phi, index.alpha, index.z0, tolerance,
                  maxIterations)


def SolvePaymentWeighted(scenario, payments, tolerance=1e-8,
                         maxIterations=200000):
    """
    Maximize the payment-weighted sum of log traffic minus OPEX subject
    to node capacities.  Slice-areas paying nothing get no traffic.

    :param payments: per slice-area payments (array in group order or
                     mapping (slice id, area) -> payment)
    :returns: AllocationState
    """
    index = _Index(scenario)
    if isinstance(payments, dict):
        weights = np.array([float(payments.get(key, 0.0))
                            for key in index.groupKeys])
    else:
        weights = np.asarray(payments, dtype=float)
    if weights.shape != (index.numGroups,) or np.any(weights < 0):
        raise StructuralError(
            "Need one non-negative payment per slice-area")
    result = _Solve(index, weights, np.ones(index.numGroups),
                    np.ones(index.numGroups), tolerance, maxIterations)
    return result.allocation


def Welfare(allocation):
    """
    Total utility minus total OPEX of an allocation; UNBOUNDED_LOSS if
    some slice-area with alpha >= 1 gets no traffic.
    """
    index = allocation.index
    groupTraffic = allocation.xAreaArray
    opex = float(np.dot(index.opex, allocation.loads))
    if index.numGroups == 0:
        return -opex
    empty = groupTraffic <= 0
    if np.any(empty & (index.alpha >= 1.0)):
        return UNBOUNDED_LOSS
    positive = ~empty
    total = 0.0
    if np.any(positive):
        total += float(np.sum(UtilityValueArray(
            index.phi[positive], index.alpha[positive],
            groupTraffic[positive], index.z0[positive])))
    if np.any(empty):
        alpha = index.alpha[empty]
        total -= float(np.sum(
            index.phi[empty] ** alpha * index.z0[empty] ** (1.0 - alpha) /
            (1.0 - alpha)))
    return total - opex
