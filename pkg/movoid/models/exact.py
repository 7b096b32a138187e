from fractions import Fraction
from typing import Annotated

from pydantic import BeforeValidator, PlainSerializer

# Exact rationals travel as strings such as "-3/4" or "216"
Exact = Annotated[
    Fraction,
    BeforeValidator(lambda v: v if isinstance(v, Fraction) else Fraction(v)),
    PlainSerializer(lambda v: str(v), return_type=str),
]
