"""Exact arithmetic in GF(q) backed by log/antilog/Zech tables.

Elements are integers in [0, q) whose base-p digits (low to high) are the
coefficients of the element in the power basis 1, x, ..., x^{k-1} of the chosen
modulus. This is the wire encoding used by point-set files and JSON output.
"""
import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Optional, Sequence, Tuple

import galois
import numpy as np
import structlog

from movoid.core.config import settings
from movoid.core.exceptions import FieldError, CapExceededError

logger = structlog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class Field:
    """A finite field GF(p^k) with a fixed primitive modulus."""

    p: int
    k: int
    modulus: Tuple[int, ...]  # ascending coefficients, monic, length k + 1
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    zech: np.ndarray = field(repr=False)

    def __post_init__(self):
        # Plain lists for the scalar path; numpy indexing per element is slow
        object.__setattr__(self, "_exp", self.exp.tolist())
        object.__setattr__(self, "_log", self.log.tolist())
        object.__setattr__(self, "_zech", self.zech.tolist())

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def order(self) -> int:
        return self.q

    @property
    def is_square(self) -> bool:
        return self.k % 2 == 0

    @property
    def sqrt_q(self) -> int:
        if not self.is_square:
            raise FieldError(f"GF({self.q}) has no square-root subfield")
        return self.p ** (self.k // 2)

    @property
    def generator(self) -> int:
        return int(self._exp[1 % (self.q - 1)])

    def __repr__(self) -> str:
        return f"GF({self.q})"

    # Scalar arithmetic

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        n = self.q - 1
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % n]
        if z < 0:
            return 0
        return self._exp[(la + z) % n]

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        return self._exp[(self._log[a] + (self.q - 1) // 2) % (self.q - 1)]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("division by zero")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise FieldError("division by zero")
        if a == 0:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % (self.q - 1)]

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise FieldError("division by zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def conjugate(self, a: int) -> int:
        """Return a^{sqrt(q)}; only defined when q is a square."""
        s = self.sqrt_q
        if a == 0:
            return 0
        return self._exp[(self._log[a] * s) % (self.q - 1)]

    def arith(self, op: str, a: int, b: int) -> int:
        self.check_element(a)
        self.check_element(b)
        try:
            return {"add": self.add, "sub": self.sub, "mul": self.mul, "div": self.div}[op](a, b)
        except KeyError:
            raise FieldError(f"unknown operation '{op}'") from None

    def check_element(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element encoding of GF({self.q})")
        return a

    # Vectorised arithmetic on integer arrays of encodings

    @cached_property
    def _exp_ext(self) -> np.ndarray:
        return np.concatenate([self.exp, self.exp])

    def mul_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        nonzero = (a != 0) & (b != 0)
        idx = np.where(nonzero, self.log[a] + self.log[b], 0)
        return np.where(nonzero, self._exp_ext[idx], 0)

    def add_array(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        place = 1
        for _ in range(self.k):
            out += ((a // place + b // place) % self.p) * place
            place *= self.p
        return out

    def neg_array(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        return self.neg_table[a]

    def conjugate_array(self, a: np.ndarray) -> np.ndarray:
        return self.conj_table[np.asarray(a, dtype=np.int64)]

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int64)

    @cached_property
    def inv_table(self) -> np.ndarray:
        return np.array([0] + [self.inv(a) for a in range(1, self.q)], dtype=np.int64)

    @cached_property
    def conj_table(self) -> np.ndarray:
        return np.array([self.conjugate(a) for a in range(self.q)], dtype=np.int64)


def decode_element(f: Field, n: int) -> Tuple[int, ...]:
    """
    Expand an element encoding into its coefficient digits.

    Args:
        f: The field
        n: Integer encoding in [0, q)

    Returns:
        Tuple[int, ...]: digits (d0, ..., d_{k-1}), meaning d0 + d1*x + ...

    Raises:
        FieldError: If n is out of range
    """
    f.check_element(n)
    digits = []
    for _ in range(f.k):
        n, d = divmod(n, f.p)
        digits.append(d)
    return tuple(digits)


def encode_element(f: Field, digits: Sequence[int]) -> int:
    """
    Pack coefficient digits into the integer encoding.

    Raises:
        FieldError: If the digit vector has the wrong length or a digit is out of range
    """
    if len(digits) != f.k or any(not 0 <= d < f.p for d in digits):
        raise FieldError(f"{tuple(digits)} is not a coefficient vector over GF({f.p}) of length {f.k}")
    n = 0
    for d in reversed(digits):
        n = n * f.p + d
    return n


def _modulus_override(p: int, k: int) -> Optional[Tuple[int, ...]]:
    if not settings.MODULUS_TABLE_PATH:
        return None
    with open(settings.MODULUS_TABLE_PATH) as fh:
        table = json.load(fh)
    coeffs = table.get(f"{p}^{k}")
    return tuple(int(c) % p for c in coeffs) if coeffs else None


def choose_modulus(p: int, k: int) -> Tuple[int, ...]:
    """Conway polynomial where tabulated, else the smallest primitive polynomial."""
    override = _modulus_override(p, k)
    if override is not None:
        return override
    poly = None
    if p**k <= settings.CONWAY_MAX_ORDER:
        try:
            poly = galois.conway_poly(p, k)
        except LookupError:
            logger.info("conway_polynomial_missing", p=p, k=k)
    if poly is None:
        poly = galois.primitive_poly(p, k, method="min")
    # galois lists coefficients from the leading term down
    return tuple(int(c) for c in reversed(poly.coeffs.tolist()))


def _build_tables(p: int, k: int, modulus: Tuple[int, ...]):
    q = p**k
    if len(modulus) != k + 1 or modulus[-1] != 1:
        raise FieldError(f"modulus {modulus} is not monic of degree {k}")
    exp = np.zeros(q - 1, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    digits = [1] + [0] * (k - 1)
    for i in range(q - 1):
        value = 0
        for d in reversed(digits):
            value = value * p + d
        if log[value] >= 0:
            raise FieldError(f"modulus {modulus} is not primitive over GF({p})")
        exp[i] = value
        log[value] = i
        # multiply by x and reduce: x^k = -(c0 + c1 x + ... + c_{k-1} x^{k-1})
        top = digits[-1]
        digits = [0] + digits[:-1]
        digits = [(d - top * c) % p for d, c in zip(digits, modulus[:-1])]
    if digits != [1] + [0] * (k - 1):
        raise FieldError(f"modulus {modulus} does not give a generator of order {q - 1}")
    plus_one = np.where(exp % p == p - 1, exp - (p - 1), exp + 1)
    zech = log[plus_one]
    return exp, log, zech


@lru_cache(maxsize=None)
def build_field(p: int, k: int = 1) -> Field:
    """
    Build GF(p^k) with a deterministic modulus.

    Raises:
        FieldError: If p is not prime or k < 1
        CapExceededError: If p^k exceeds MAX_FIELD_ORDER
    """
    if k < 1 or not galois.is_prime(p):
        raise FieldError(f"GF({p}^{k}) is not a valid field")
    q = p**k
    if q > settings.MAX_FIELD_ORDER:
        raise CapExceededError("field order", q, settings.MAX_FIELD_ORDER)
    modulus = choose_modulus(p, k)
    exp, log, zech = _build_tables(p, k, modulus)
    logger.debug("field_built", q=q, modulus=modulus)
    return Field(p=p, k=k, modulus=modulus, exp=exp, log=log, zech=zech)


def field_from_order(q: int) -> Field:
    """Build GF(q) from its order, which must be a prime power."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    primes, multiplicities = galois.factors(q)
    if len(primes) != 1:
        raise FieldError(f"{q} is not a prime power")
    return build_field(int(primes[0]), int(multiplicities[0]))
