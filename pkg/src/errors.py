class LatticeError(Exception):
    pass


class ConfigError(LatticeError):
    pass


class NumericalError(LatticeError):
    pass


class EdgeAbsent(NumericalError):
    """The requested unbroken band edge does not exist (the band has evaporated)."""


class ConvergenceFailure(NumericalError):
    pass


class TrackingLost(NumericalError):
    """Eigenvalue continuation became ambiguous; refine the gamma grid."""


class SingularSystem(NumericalError):
    pass


class EquivalenceFailure(NumericalError):
    pass
