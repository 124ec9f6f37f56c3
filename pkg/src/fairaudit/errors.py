"""Exception types raised by the audit engine."""


class FairauditError(Exception):
    """Base class for all engine errors."""


class SchemaError(FairauditError):
    """Input file is missing a header or a configured column."""


class LabelError(FairauditError):
    """Label or prediction column does not yield exactly two classes."""


class EmptyDatasetError(FairauditError):
    """No usable rows remain after dropping incomplete ones."""


class RegistryError(FairauditError):
    """Unknown or duplicate metric identifier."""


class GroupError(FairauditError):
    """Invalid subgroup specification or unknown group id."""


class ClusteringError(FairauditError):
    """Invalid clustering configuration for the given data."""
