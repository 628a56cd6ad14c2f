"""Exception hierarchy and process exit codes.

Exit code contract: 0 success, 1 usage/configuration error, 2 I/O error,
3 internal invariant violation.
"""


class MtlintError(Exception):
    """Base class for all mtlint errors."""

    exit_code = 3
    category = "internal"


class ConfigError(MtlintError):
    """Bad configuration or command usage."""

    exit_code = 1
    category = "usage"


class InputError(MtlintError):
    """Unreadable, unwritable or structurally broken input/output."""

    exit_code = 2
    category = "io"


class TableError(ConfigError):
    """A transformation table failed validation."""


class AlignmentError(InputError):
    """An alignment record could not be parsed or is out of bounds."""


class ProtocolError(MtlintError):
    """The aligner sidecar violated the wire protocol."""

    exit_code = 3
    category = "internal"


class AlignmentUnavailable(MtlintError):
    """Alignment could not be obtained for one pair (record-level, non-fatal).

    Pairs carrying this condition are excluded from coverage checking and
    counted separately; they are never flagged on missing evidence.
    """

    exit_code = 3
    category = "internal"
