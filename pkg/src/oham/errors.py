"""Exception and warning types shared across the solver."""


class OhamError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(OhamError):
    """A problem definition violates a structural requirement."""


class NonIntegrableReciprocal(ValidationError):
    """1/p(x) is not integrable on (0,1] (requires p_exponent < 1 under
    Dirichlet-Robin boundary conditions)."""


class ZeroMu(ValidationError):
    """The boundary-condition combination alpha*h(1) + beta*h'(1) vanishes,
    so no Green's kernel exists for this Dirichlet-Robin problem."""


class ZeroAlpha(ValidationError):
    """Neumann-Robin boundary conditions need a nonzero Robin coefficient."""


class QuadratureDivergence(ValidationError):
    """The endpoint weight exponent makes the integral diverge."""


class UnknownParameter(ValidationError):
    """A parameter name is not recognised by the requested benchmark."""


class MissingParameter(ValidationError):
    """A required benchmark parameter was not supplied."""


class DomainError(OhamError):
    """An argument lies outside the mathematical domain of an operation."""


class JetDomainError(DomainError):
    """A series recurrence hit an invalid base value (log/pow of a
    non-positive base, division by a zero base).

    Attributes:
        nodes: indices of the offending grid nodes, when known.
        order: series order at which the failure occurred, when known.
    """

    def __init__(self, message, nodes=None, order=None):
        super().__init__(message)
        self.nodes = nodes
        self.order = order


class NonFiniteComponent(OhamError):
    """A solution component evaluated to NaN or infinity."""


class InvalidDelta(OhamError):
    """The contraction ratio must lie strictly between 0 and 1."""


class NoFiniteSample(OhamError):
    """Every trial value of the convergence-control parameter diverged.

    Attributes:
        profile: the ResidualProfile of the failed search, for diagnosis.
    """

    def __init__(self, message, profile=None):
        super().__init__(message)
        self.profile = profile


class SingularSystem(OhamError):
    """The dense collocation matrix is numerically singular."""


class NoConvergence(OhamError):
    """An adaptive computation reached its depth limit before converging."""


class ParseError(OhamError):
    """A problem configuration or expression failed to parse.

    Attributes:
        line, col: 1-based source position when available.
    """

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)
        self.line = line
        self.col = col


class ValidationWarning(UserWarning):
    """A problem definition is admissible but outside the guaranteed class."""
