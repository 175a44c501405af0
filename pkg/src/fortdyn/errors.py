"""Exception hierarchy shared by every fortdyn module."""


class FortDynError(Exception):
    """Base class for all library errors."""


class ValidationError(FortDynError, ValueError):
    pass


class OutOfRangeEntry(ValidationError):
    pass


class NonBijectiveGroupGenerator(ValidationError):
    pass


class EmptyGenerators(ValidationError):
    pass


class CarrierTooLargeForOracle(FortDynError):
    pass


class NotInvariant(FortDynError, ValueError):
    pass


class BadReference(FortDynError, ValueError):
    pass


class BadCardinal(FortDynError, ValueError):
    pass


class BadParameters(FortDynError, ValueError):
    pass


class InvalidStepSequence(FortDynError, ValueError):
    pass


class TooLarge(FortDynError, ValueError):
    pass


class TooManyNodes(FortDynError, ValueError):
    pass


class EmptyPoset(FortDynError, ValueError):
    pass


class NotAPartialOrder(FortDynError, ValueError):
    pass
