"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Operands live in spaces of different dimensions."""


class LatticeError(ValueError):
    """A family of subspaces fails the lattice or nest axioms."""


class NotAMember(ValueError):
    """A subspace was expected to belong to a lattice but does not."""


class WitnessNotFound(RuntimeError):
    """The bounded witness search ran out of candidates.

    For finite nests this indicates a bug rather than a mathematical failure.
    """
