"""
Exceptions raised throughout nilkit.

The command line runner maps these onto exit codes, see
nilkit.launchers.cli.
"""


class NilkitError(Exception):
    pass


class StructureError(NilkitError, ValueError):
    """Variable lists, dimensions or levels do not match, or a parse failed."""
    pass


class WindowClosureError(NilkitError, ValueError):
    """
    A finite index window is missing coordinates needed by a computation.

    This is a refusal, never a failure of the identity being checked.
    """
    pass


class ConfigError(NilkitError, ValueError):
    pass


class InvariantViolation(NilkitError, AssertionError):
    """An identity that holds as a theorem failed. Always a bug."""
    pass
