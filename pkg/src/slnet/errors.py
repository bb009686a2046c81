"""Shared exception types."""


class SchemaError(ValueError):
    """A JSON document does not match the expected schema."""
