"""Exception hierarchy shared by all modules."""


class AnyonSimError(Exception):
    pass


class AdmissibilityError(AnyonSimError, ValueError):
    """A label triple violates the level-4 fusion rules."""


class DomainError(AnyonSimError, ValueError):
    """Arguments outside an operation's domain (bad position, mismatched rows, ...)."""


class LeakageError(AnyonSimError):
    """A branch left the logical 2-qutrit subspace."""


class ShapeError(AnyonSimError):
    """A branch did not return to the idle leaf configuration."""


class TerminationError(AnyonSimError):
    """A repeat-until-success loop exceeded its iteration cap."""


class ScriptError(AnyonSimError):
    """A protocol script failed to parse or validate.

    ``errors`` holds one message per problem found.
    """

    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
