"""Exception hierarchy shared by the library and the command line."""


class CsaError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InvalidInput(CsaError, ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""

    exit_code = 2


class SamplingFailure(CsaError):
    """A randomized search exhausted its retry budget.

    Recoverable: re-running with a different seed is expected to succeed.
    """

    exit_code = 3


class DecodingFailure(CsaError):
    """No codeword lies within the decoding radius of the received word."""

    exit_code = 3


class InvariantBreach(CsaError, AssertionError):
    """An internal consistency check failed (CLI exit code 4)."""

    exit_code = 4
