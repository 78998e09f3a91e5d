"""Exception hierarchy.

Errors fall into three families, mirrored by the CLI exit codes:

* :class:`InputError` (exit 1) for malformed or inconsistent input,
* :class:`ObstructionError` (exit 2) for mathematical obstructions such as a
  missing normalizable integral,
* :class:`RelationViolated` (exit 3) when a checked identity does not hold.
"""


class ArtifactError(Exception):
    """Base class of every error raised by this package."""

    exit_code = 1


class InputError(ArtifactError):
    exit_code = 1


class ObstructionError(ArtifactError):
    exit_code = 2


class RelationViolated(ArtifactError):
    exit_code = 3


# exact-tensor
class LegMismatch(InputError):
    pass


class InvalidPlan(InputError):
    pass


class ShapeMismatch(InputError):
    pass


# hopf-core
class NotAGroup(InputError):
    pass


class NotNormalizable(ObstructionError):
    pass


class NotTwoSided(ObstructionError):
    pass


class VerificationFailure(RelationViolated):
    """A structure failed its axiom check; ``report`` holds the details."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


# double-reps
class RepCheckFailure(RelationViolated):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotAbelian(InputError):
    pass


class MissingRootsOfUnity(ObstructionError):
    pass


# heegaard-link
class PreconditionViolated(InputError):
    pass


class InvalidDiagram(InputError):
    pass


class InvalidBraidWord(InputError):
    pass


class NotSorted(InputError):
    pass


class NoSuchComponent(InputError):
    pass


# bracket-engine
class IncompleteColoring(InputError):
    pass


class AlgebraMismatch(InputError):
    pass


class LinkPresent(InputError):
    pass


# hennings-hkr
class NormalizationUnavailable(ObstructionError):
    pass


class NotSymmetric(InputError):
    pass
