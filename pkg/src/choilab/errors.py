"""Exception types. Each maps to a stable CLI exit code."""


class ChoilabError(Exception):
    exit_code = 2


class SchemaError(ChoilabError, ValueError):
    """Malformed or unrecognised input file."""

    exit_code = 2


class DimensionError(ChoilabError, ValueError):
    exit_code = 3


class VariantError(ChoilabError, ValueError):
    """An operation received a state carrying the wrong variant tag."""

    exit_code = 4


class NotHermitianError(ChoilabError, ValueError):
    exit_code = 3


class NotUnitaryError(ChoilabError, ValueError):
    exit_code = 3
