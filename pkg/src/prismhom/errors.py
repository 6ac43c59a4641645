"""Exception hierarchy shared by all prismhom modules.

The split mirrors the two failure modes the command line distinguishes:
malformed input (files, tables, diagrams) versus mathematically refused
input (axioms, cycle conditions, internal contract checks).
"""


class StructureError(ValueError):
    """Malformed input: bad table shape, unknown arc id, invalid file."""


class AxiomError(ValueError):
    """An operation required axioms that the given structure does not satisfy."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotACycleError(ValueError):
    """A chain that had to be a cycle has nonzero boundary."""

    def __init__(self, message, residue=None):
        super().__init__(message)
        self.residue = residue


class VerificationError(RuntimeError):
    """An internal consistency contract failed; indicates a bug or a corrupted complex."""
