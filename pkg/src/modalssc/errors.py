"""Exception types shared across the package.

The CLI maps these onto exit codes: validation and input problems exit
with 2, search or sampling limits exit with 3.
"""


class ModalSscError(Exception):
    """Base class for errors raised by this package."""


class SpecValidationError(ModalSscError):
    """A pattern, delta set, or network description is malformed or names an empty class."""


class NetworkFileError(SpecValidationError):
    """A network file failed to parse; message carries line-level diagnostics."""


class ConfigError(ModalSscError, ValueError):
    """An environment knob or backend selector holds an unusable value.

    Subclasses ValueError so library callers that guard backend names
    with a plain ``except ValueError`` keep working.
    """


class SearchLimitError(ModalSscError):
    """An exhaustive search was refused because the instance exceeds the configured cap."""


class SamplingError(ModalSscError):
    """Rejection sampling could not produce a realization within the attempt budget."""


class WitnessError(ModalSscError):
    """A certificate construction was invoked on an input where none exists."""
