class ConsistencyError(AssertionError):
    """A computation contradicted a result the library relies on
    (for instance a decomposition that is guaranteed to exist was not found)."""
