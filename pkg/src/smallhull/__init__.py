"""Linear codes with small hulls from finite-field Gauss-sum analogues."""

from smallhull.field import (
    FieldDescriptor,
    FieldElement,
    FieldError,
    FieldMismatchError,
    embed,
    make_field,
    primitive_element,
    splitting_degree,
    trace_to_prime,
)

__all__ = [
    "FieldDescriptor",
    "FieldElement",
    "FieldError",
    "FieldMismatchError",
    "embed",
    "make_field",
    "primitive_element",
    "splitting_degree",
    "trace_to_prime",
]
