"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Malformed arguments: out-of-range indices, non-dominant vectors, bad shapes."""


class DomainViolation(ValueError):
    """A well-formed argument outside the domain of the operation (e.g. a weight not in W^p)."""


class NotInAddQ(DomainViolation):
    """A factor multiset that is not the class of a direct sum of the modules Q_r."""


class InternalInconsistency(RuntimeError):
    """A computed invariant contradicts a structural identity (odd twist, negative count).

    These are never expected; raising one means the combinatorics is wrong somewhere.
    """
