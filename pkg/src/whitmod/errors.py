"""Exception hierarchy shared across the engine."""


class WhitmodError(Exception):
    """Base class for all engine errors."""


class UnsupportedType(WhitmodError):
    """Requested root system is outside the supported envelope."""


class NotARoot(WhitmodError):
    pass


class MixedRootSystem(WhitmodError):
    """Operands belong to different root systems."""


class NotSimpleRoot(WhitmodError):
    pass


class NonOrthogonalSupport(WhitmodError):
    """Whittaker support contains adjacent simple roots (and g is not sl2)."""


class InvalidParams(WhitmodError):
    pass


class DimensionMismatch(WhitmodError):
    pass


class NotGraded(WhitmodError):
    """Module family has trivial centre; no z-grading is available."""


class NotInNilradical(WhitmodError):
    pass


class ReductionDivergence(WhitmodError):
    """Rewriting exceeded its step budget; indicates a confluence bug."""


class TruncationNotClosed(WhitmodError):
    """Operator image cannot be represented in the slack-extended basis."""


class UnknownLength(WhitmodError):
    """No certified composition length is available for the instance."""


class ConfigError(WhitmodError):
    """Invalid experiment configuration; message names the offending field."""
