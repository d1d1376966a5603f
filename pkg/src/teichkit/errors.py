"""Shared error taxonomy.

DomainError covers every mathematically-invalid input (wrong dimension,
degenerate configuration, value outside the model).  The CLI maps it to
exit code 3, distinct from malformed-input problems (exit code 2).
"""


class DomainError(ValueError):
    pass


class SchemaError(ValueError):
    """Structurally bad JSON payload (missing keys, wrong schema tag)."""
