"""
Utility family, delay and revenue models, and the slice payoff.

A slice's marginal benefit in an area is U'(z) = (phi/z)**alpha.  Its
antiderivative is pinned to zero at the reference point z0 = phi/100 so
that utilities are finite and comparable across mechanisms.

The *Array functions take numpy arrays of phi/alpha/z (one entry per
slice-area) and are what the auction and the oracle evaluate every round;
the scalar functions wrap them for UtilityParams instances.
"""
import numpy as np

from .constants import Z0_FRACTION
from .models.prices import PathUnitCost
from .utils.exceptions import DomainError
from .utils.exceptions import StructuralError


class UtilityParams(object):
    """
    Traffic demand scale phi (Gb/s) and shape alpha of one slice in one
    area.  z0 overrides the utility reference point phi * Z0_FRACTION.
    """
    def __init__(self, phi, alpha, z0=None):
        if not phi > 0:
            raise DomainError("phi must be positive", phi)
        if not alpha > 0:
            raise DomainError("alpha must be positive", alpha)
        self.phi = float(phi)
        self.alpha = float(alpha)
        self._z0 = None if z0 is None else float(z0)

    @property
    def z0(self):
        """
        Utility reference point, U(z0) = 0
        """
        if self._z0 is not None:
            return self._z0
        return self.phi * Z0_FRACTION

    def Scaled(self, factor):
        """
        Copy with phi multiplied by factor (budget back-off, load levels).
        """
        return UtilityParams(self.phi * factor, self.alpha, self._z0)

    def __eq__(self, other):
        return isinstance(other, UtilityParams) and \
            (self.phi, self.alpha, self._z0) == \
            (other.phi, other.alpha, other._z0)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "UtilityParams(phi=%r, alpha=%r)" % (self.phi, self.alpha)


class DelayParams(object):
    """
    Average packet length L (bits), processing-step count h and the
    delay-to-profit weight beta of one slice in one area.
    """
    def __init__(self, packetLength=12000.0, hops=3, beta=0.0):
        if not packetLength > 0:
            raise DomainError("packet length must be positive", packetLength)
        if hops < 0:
            raise DomainError("hop count must be non-negative", hops)
        if beta < 0:
            raise DomainError("beta must be non-negative", beta)
        self.packetLength = float(packetLength)
        self.hops = hops
        self.beta = float(beta)

    def __eq__(self, other):
        return isinstance(other, DelayParams) and \
            (self.packetLength, self.hops, self.beta) == \
            (other.packetLength, other.hops, other.beta)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "DelayParams(packetLength=%r, hops=%r, beta=%r)" % (
            self.packetLength, self.hops, self.beta)


class InfiniteValue(object):
    """
    Explicit stand-in for an unbounded delay or an unbounded loss.

    Arithmetic with ordinary numbers absorbs into the sentinel, so a
    pole in the delay model never leaks a raw float infinity into sums.
    """
    def __init__(self, sign, name):
        self.sign = sign
        self.name = name

    def _Signed(self, factor):
        if factor > 0:
            return self
        if factor < 0:
            return -self
        raise DomainError("zero times an infinite sentinel is undefined")

    def __neg__(self):
        return UNBOUNDED_LOSS if self.sign > 0 else INFINITE_DELAY

    def __add__(self, other):
        if isinstance(other, InfiniteValue) and other.sign != self.sign:
            raise DomainError("opposite infinite sentinels don't cancel")
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, InfiniteValue):
            return INFINITE_DELAY if self.sign == other.sign \
                else UNBOUNDED_LOSS
        return self._Signed(other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, InfiniteValue):
            raise DomainError("ratio of infinite sentinels is undefined")
        return self._Signed(other)

    def __float__(self):
        return float("inf") * self.sign

    def __lt__(self, other):
        return self.sign < 0 and other is not self

    def __gt__(self, other):
        return self.sign > 0 and other is not self

    def __le__(self, other):
        return self is other or self < other

    def __ge__(self, other):
        return self is other or self > other

    def __repr__(self):
        return self.name


INFINITE_DELAY = InfiniteValue(+1, "INFINITE_DELAY")
UNBOUNDED_LOSS = InfiniteValue(-1, "UNBOUNDED_LOSS")


def IsInfinite(value):
    """
    True for either sentinel.
    """
    return isinstance(value, InfiniteValue)


def _Scalar(result):
    if np.ndim(result) == 0:
        return float(result)
    return result


def MarginalUtilityArray(phi, alpha, z):
    """
    (phi/z)**alpha, element-wise
    """
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise DomainError("marginal utility needs positive traffic", z)
    return _Scalar(np.power(np.divide(phi, z), alpha))


def InverseMarginalArray(phi, alpha, y):
    """
    phi * y**(-1/alpha), element-wise
    """
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise DomainError("inverse marginal needs a positive price", y)
    return _Scalar(np.multiply(phi, np.power(y, -1.0 / np.asarray(alpha))))


def UtilityValueArray(phi, alpha, z, z0=None):
    """
    Antiderivative of the marginal utility with U(z0) = 0, element-wise.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0):
        raise DomainError("utility needs positive traffic", z)
    phi = np.asarray(phi, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    if z0 is None:
        z0 = phi * Z0_FRACTION
    logShaped = np.isclose(alpha, 1.0, rtol=0.0, atol=1e-12)
    # Keep the power branch finite where the log branch is selected.
    oneMinusAlpha = np.where(logShaped, 1.0, 1.0 - alpha)
    powerForm = np.power(phi, alpha) * \
        (np.power(z, oneMinusAlpha) - np.power(z0, oneMinusAlpha)) / \
        oneMinusAlpha
    logForm = phi * np.log(z / z0)
    return _Scalar(np.where(logShaped, logForm, powerForm))


def MarginalUtility(params, z):
    """
    Marginal benefit U'(z) = (phi/z)**alpha, strictly decreasing in z.
    """
    return MarginalUtilityArray(params.phi, params.alpha, z)


def InverseMarginal(params, y):
    """
    Traffic at which the marginal benefit equals y.
    """
    return InverseMarginalArray(params.phi, params.alpha, y)


def UtilityValue(params, z):
    """
    Utility of z Gb/s, zero at the reference point.
    """
    return UtilityValueArray(params.phi, params.alpha, z, params.z0)


def UtilityAtZero(params):
    """
    Limit of the utility as traffic goes to zero: an unbounded loss for
    alpha >= 1, a finite value otherwise.
    """
    if params.alpha >= 1.0:
        return UNBOUNDED_LOSS
    return -params.phi ** params.alpha * \
        params.z0 ** (1.0 - params.alpha) / (1.0 - params.alpha)


def Delay(dparams, params, x):
    """
    Average end-to-end delay L/(x - phi) + h*L/x in seconds when x Gb/s
    is provisioned for phi Gb/s of offered traffic; INFINITE_DELAY when
    the queue is unstable.
    """
    if x <= params.phi:
        return INFINITE_DELAY
    return dparams.packetLength / (x - params.phi) + \
        dparams.hops * dparams.packetLength / x


def NetRevenue(params, dparams, x):
    """
    Utility minus beta times the delay.
    """
    if not x > 0:
        raise DomainError("net revenue needs positive traffic", x)
    utility = UtilityValue(params, x)
    if dparams.beta == 0:
        return utility
    return utility - dparams.beta * Delay(dparams, params, x)


def Payoff(sliceSpec, xPath, prices):
    """
    Slice payoff: total utility over the slice's areas minus its total
    payment at the given prices.

    :param xPath: mapping (area, path id) -> traffic for this slice; each
                  path costs what the slice's demand vectors on it cost.
    """
    payment = 0.0
    areaTraffic = dict((area, 0.0) for area in sliceSpec.areas)
    for area, pathId in sorted(xPath):
        if area not in areaTraffic:
            raise StructuralError("Slice %s is not active in area %s"
                                  % (sliceSpec.sliceId, area), area)
        traffic = xPath[(area, pathId)]
        areaTraffic[area] += traffic
        payment += PathUnitCost(sliceSpec, pathId, prices) * traffic
    total = 0.0
    for area in sorted(areaTraffic):
        params = sliceSpec.areas[area].utility
        if areaTraffic[area] > 0:
            total += UtilityValue(params, areaTraffic[area])
        else:
            total = UtilityAtZero(params) + total
    return total - payment
