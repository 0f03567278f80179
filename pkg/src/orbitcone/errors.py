"""Exception hierarchy shared by all modules."""


class OrbitConeError(ValueError):
    """Base class for every error raised by the package."""


# polycore
class NotExtendable(OrbitConeError):
    pass


class Unbounded(OrbitConeError):
    pass


class FanNotInsideCone(OrbitConeError):
    pass


# spherical
class NotToroidal(OrbitConeError):
    pass


class IncompleteFan(OrbitConeError):
    pass


class InfeasibleOrbit(OrbitConeError):
    pass


class RemovedFace(OrbitConeError):
    pass


class MissingRootSystem(OrbitConeError):
    pass


class InvalidDatum(OrbitConeError):
    pass


# momentnum
class BoundaryPoint(OrbitConeError):
    pass


class RankDeficient(OrbitConeError):
    pass


class ZeroVector(OrbitConeError):
    pass


class NotUnimodular(OrbitConeError):
    pass


# examples
class NonGeneric(OrbitConeError):
    pass


class IdenticallyZero(OrbitConeError):
    pass


class SumNotZero(OrbitConeError):
    pass


class DegenerateHull(OrbitConeError):
    pass
