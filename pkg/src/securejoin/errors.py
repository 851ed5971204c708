"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: FormatError family -> 3,
ParameterError -> 4 (usage errors from the argument parser itself -> 2).
"""


class SecureJoinError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(SecureJoinError, ValueError):
    """Invalid crypto or scheme parameter (bad m/t, oversized IN list, ...)."""


class FormatError(SecureJoinError, ValueError):
    """Malformed or inconsistent serialized artifact."""


class FingerprintMismatchError(FormatError):
    """Token and table were produced under different master secret keys."""
