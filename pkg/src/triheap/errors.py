"""Exception types shared across the package."""


class HeapError(Exception):
    """Base class for all triheap errors."""


class ContractViolation(HeapError):
    """A documented precondition was violated by the caller."""


class EmptyQueueError(HeapError):
    """find-min or delete-min on an empty queue."""


class InvalidHandleError(HeapError):
    """Operation through a handle whose element was already removed."""


class LedgerError(HeapError):
    """Potential accounting went inconsistent; indicates a bug, not user error."""
