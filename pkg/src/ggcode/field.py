"""Finite fields GF(p) for primes p <= 2^16 and GF(2^e) for e <= 16.

Elements are canonical integers in ``[0, q)``. For GF(2^e) the integer's bit
``i`` is the coefficient of ``x^i``; multiplication goes through log/antilog
tables built from a generator of the multiplicative group.

Reduction polynomials are written highest degree first, so ``x^2 + x + 1``
is ``(1, 1, 1)`` and ``x^3 + x + 1`` is ``(1, 0, 1, 1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, UsageError

MAX_ORDER = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _poly_mod2(a: int, b: int) -> int:
    """Remainder of GF(2)[x] polynomials encoded as ints."""
    db = b.bit_length() - 1
    while a and a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def is_irreducible_gf2(poly: int) -> bool:
    """Trial division by every polynomial of degree 1 .. deg/2."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            if _poly_mod2(poly, f) == 0:
                return False
    return True


@lru_cache(maxsize=None)
def default_poly_gf2(e: int) -> int:
    """Smallest monic irreducible of degree ``e`` (int encoding, bit i = coeff of x^i)."""
    for cand in range(1 << e, 1 << (e + 1)):
        if is_irreducible_gf2(cand):
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {e}")  # pragma: no cover


def poly_to_coeffs(poly: int) -> tuple[int, ...]:
    return tuple((poly >> i) & 1 for i in range(poly.bit_length() - 1, -1, -1))


def coeffs_to_poly(coeffs) -> int:
    val = 0
    for c in coeffs:
        c = int(c)
        if c not in (0, 1):
            raise UsageError(f"polynomial coefficients must be 0/1, got {c}")
        val = (val << 1) | c
    return val


class FieldSpec:
    """GF(q) with its arithmetic tables. Build through :func:`GF`."""

    def __init__(self, q: int, poly: tuple[int, ...] | None = None):
        q = int(q)
        if q < 2 or q > MAX_ORDER:
            raise UsageError(f"field order must lie in [2, {MAX_ORDER}], got {q}")
        if is_prime(q):
            p, e = q, 1
        elif q & (q - 1) == 0:
            p, e = 2, q.bit_length() - 1
        else:
            raise UsageError(f"q={q} is neither a prime nor a power of two")
        self.p, self.e, self.q = p, e, q
        self.poly: tuple[int, ...] | None = None
        self._exp = self._log = None
        if e > 1:
            if poly is None:
                ipoly = default_poly_gf2(e)
            else:
                ipoly = coeffs_to_poly(poly)
                if ipoly.bit_length() - 1 != e:
                    raise UsageError(f"reduction polynomial must have degree {e}")
                if not is_irreducible_gf2(ipoly):
                    raise UsageError(f"polynomial {tuple(poly)} is reducible over GF(2)")
            self.poly = poly_to_coeffs(ipoly)
            self._build_tables(ipoly)
        elif poly is not None:
            raise UsageError("a reduction polynomial only applies to GF(2^e) with e > 1")

    def _build_tables(self, ipoly: int) -> None:
        q = self.q

        def slow_mul(a: int, b: int) -> int:
            acc = 0
            while b:
                if b & 1:
                    acc ^= a
                b >>= 1
                a <<= 1
                if a & q:
                    a ^= ipoly
            return acc

        # the reduction polynomial need not be primitive, so search for a generator
        for g in range(2, q):
            exp = np.empty(2 * (q - 1), dtype=np.int64)
            x = 1
            for i in range(q - 1):
                exp[i] = x
                x = slow_mul(x, g)
                if x == 1 and i < q - 2:
                    break
            else:
                break
        else:  # pragma: no cover
            raise AssertionError("no generator found")
        exp[q - 1:] = exp[: q - 1]
        log = np.zeros(q, dtype=np.int64)
        log[exp[: q - 1]] = np.arange(q - 1)
        self.generator = g
        self._exp, self._log = exp, log
        self._exp.flags.writeable = False
        self._log.flags.writeable = False

    # identity ---------------------------------------------------------------

    def _key(self):
        return (self.q, self.poly)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.poly is None:
            return f"GF({self.q})"
        return f"GF({self.q}, poly={','.join(map(str, self.poly))})"

    @property
    def is_binary(self) -> bool:
        return self.q == 2

    def spec_string(self) -> str:
        """Text form ``q=<int>`` plus ``poly=...`` for extension fields."""
        if self.poly is None:
            return f"q={self.q}"
        return f"q={self.q} poly={','.join(map(str, self.poly))}"

    # scalar arithmetic on canonical ints -----------------------------------

    def check(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.q:
            raise UsageError(f"{a} is not a canonical element of {self!r}")
        return a

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return (a + b) % self.q

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return (-a) % self.q

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.q
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative inverse")
        if self.e == 1:
            return pow(a, -1, self.q)
        return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        if self.e == 1:
            return pow(a, k, self.q)
        if a == 0:
            return 0 if k else 1
        return int(self._exp[(self._log[a] * k) % (self.q - 1)])

    # vectorized arithmetic on int64 arrays ----------------------------------

    def add_arr(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return (np.asarray(a) + b) % self.q

    def neg_arr(self, a):
        if self.p == 2:
            return np.asarray(a)
        return (-np.asarray(a)) % self.q

    def sub_arr(self, a, b):
        return self.add_arr(a, self.neg_arr(b))

    def mul_arr(self, a, b):
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.e == 1:
            return (a * b) % self.q
        out = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv_arr(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DomainError("zero has no multiplicative inverse")
        if self.e == 1:
            return np.array([pow(int(x), -1, self.q) for x in a.ravel()], dtype=np.int64).reshape(a.shape)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, self.check(value))

    def elements(self):
        return [FieldElement(self, v) for v in range(self.q)]


@lru_cache(maxsize=None)
def _gf(q: int, poly: tuple[int, ...] | None) -> FieldSpec:
    return FieldSpec(q, poly)


def GF(q: int, poly=None) -> FieldSpec:
    """Cached field constructor; equal arguments give the same object."""
    return _gf(int(q), None if poly is None else tuple(int(c) for c in poly))


def parse_field_spec(text: str) -> FieldSpec:
    """Parse ``q=<int>`` with an optional ``poly=<c_e,...,c_0>`` token."""
    q = poly = None
    for tok in text.replace(";", " ").split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise UsageError(f"bad field spec token {tok!r}")
        if key == "q":
            q = int(val)
        elif key == "poly":
            poly = tuple(int(c) for c in val.split(","))
        else:
            raise UsageError(f"unknown field spec key {key!r}")
    if q is None:
        raise UsageError(f"field spec {text!r} lacks q=")
    return GF(q, poly)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise UsageError(f"{self.value} is not a canonical element of {self.field!r}")

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise UsageError(f"field mismatch: {self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.check(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(b)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, int(k)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}@{self.field!r}"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def neg(a: FieldElement) -> FieldElement:
    return -a
