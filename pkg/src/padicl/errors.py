"""Exception hierarchy.

Each class carries the CLI exit code it maps to, so the driver can translate
failures without inspecting messages.
"""


class PadiclError(Exception):
    exit_code = 1


class ConfigError(PadiclError):
    """Malformed or inconsistent input."""

    exit_code = 1


class HypothesisError(PadiclError):
    """A mathematical precondition failed (H1-H4, admissibility, support)."""

    exit_code = 2


class UnitRequired(HypothesisError):
    pass


class SupportError(HypothesisError):
    pass


class PoleError(HypothesisError):
    pass


class SingularElement(HypothesisError):
    pass


class AdmissibilityError(HypothesisError):
    pass


class UnsupportedCharacter(HypothesisError):
    pass


class NoAdmissiblePrime(HypothesisError):
    pass


class PrecisionError(PadiclError):
    exit_code = 3


class ResourceError(PadiclError):
    """A configured desk-scale bound was exceeded."""

    exit_code = 4
