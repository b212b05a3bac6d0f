"""Exception hierarchy for the workbench."""


class PealabError(Exception):
    """Base class for all workbench errors."""


class InvalidStructure(PealabError, ValueError):
    """A structure or morphism violates a semantic requirement."""


class FormatError(PealabError, ValueError):
    """An input file or object does not match the expected schema."""


class LimitExceeded(PealabError, RuntimeError):
    """A requested size is beyond the configured enumeration cap."""


class TransferError(PealabError, RuntimeError):
    """Structure transfer along a coequalizer failed."""
