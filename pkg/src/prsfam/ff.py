"""Arithmetic over F_p and its extensions F_{p^d}, plus the
multiplicative characters the sequence constructions evaluate.

Prime-field values are plain integers in [0, p).  Extension elements
carry coordinate tuples in the polynomial basis 1, x, ..., x^(d-1) for a
fixed monic irreducible modulus.  The modulus and the primitive root
used by the order-k character are chosen deterministically, so
independent runs agree bit for bit.

Every value is immutable and every operation is a pure function; values
can be shared freely across threads.
"""

from __future__ import annotations

import functools
from itertools import product
from typing import Iterable, Union

from .errors import DomainError, InternalError, ParameterError
from .poly import Poly, is_irreducible

__all__ = [
    "is_prime",
    "legendre",
    "primitive_root",
    "char_k",
    "FieldParams",
    "ExtElem",
]


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check (desk-scale inputs)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise ParameterError(f"p must be an odd prime >= 3, got {p}")


def legendre(a: int, p: int) -> int:
    """Quadratic residue symbol of a mod p: 0 at 0, +1 on nonzero
    squares, -1 otherwise.  Computed as a^((p-1)/2) mod p."""
    _check_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _prime_divisors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@functools.lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest positive primitive root modulo the odd prime p."""
    _check_odd_prime(p)
    divisors = _prime_divisors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in divisors):
            return g
    raise InternalError(f"no primitive root modulo {p}")


@functools.lru_cache(maxsize=None)
def _dlog_table(p: int) -> dict[int, int]:
    """Discrete logarithms base primitive_root(p), tabulated for all of
    F_p^* (desk-scale p keeps this small)."""
    g = primitive_root(p)
    table = {}
    acc = 1
    for t in range(p - 1):
        table[acc] = t
        acc = acc * g % p
    return table


def char_k(m: int, k: int, p: int) -> int:
    """Symbol index of m under the order-k multiplicative character of
    F_p: the discrete log of m (base the smallest primitive root)
    reduced mod k.  Index j stands for the root of unity e^(2*pi*i*j/k).

    Requires k | p-1 and m nonzero mod p.
    """
    _check_odd_prime(p)
    if k < 1 or (p - 1) % k != 0:
        raise ParameterError(f"character order {k} must divide p-1 = {p - 1}")
    m %= p
    if m == 0:
        raise DomainError("order-k character is undefined at 0")
    return _dlog_table(p)[m] % k


@functools.lru_cache(maxsize=None)
def _default_modulus(p: int, d: int) -> Poly:
    """Lexicographically smallest monic irreducible of degree d over
    F_p, comparing coefficient tuples highest power first."""
    if d == 1:
        return Poly((0, 1), p)
    for rest in product(range(p), repeat=d):
        # rest = (coeff of x^(d-1), ..., coeff of x^0)
        f = Poly(tuple(reversed(rest)) + (1,), p)
        if is_irreducible(f):
            return f
    raise InternalError(f"no irreducible polynomial of degree {d} over F_{p}")


class FieldParams:
    """Arithmetic context for F_{p^d}: odd prime p, degree d >= 1, and a
    monic irreducible modulus defining the extension."""

    __slots__ = ("p", "d", "modulus", "_mod_coeffs")

    def __init__(self, p: int, d: int, modulus: Poly | None = None):
        _check_odd_prime(p)
        if d < 1:
            raise ParameterError(f"extension degree must be >= 1, got {d}")
        if modulus is None:
            modulus = _default_modulus(p, d)
        else:
            if modulus.p != p:
                raise ParameterError("modulus is over the wrong prime field")
            if modulus.degree != d or not modulus.is_monic:
                raise ParameterError(
                    f"modulus must be monic of degree {d}, got {modulus}")
            if not is_irreducible(modulus):
                raise ParameterError(f"modulus {modulus} is reducible")
        self.p = p
        self.d = d
        self.modulus = modulus
        self._mod_coeffs = modulus.coeffs

    @property
    def order(self) -> int:
        return self.p**self.d

    def elem(self, value: Union[int, Iterable[int]]) -> "ExtElem":
        """Build an element from an integer (embedded constant) or a
        coordinate sequence of length <= d."""
        if isinstance(value, int):
            coords = (value % self.p,) + (0,) * (self.d - 1)
        else:
            cs = [c % self.p for c in value]
            if len(cs) > self.d:
                raise ParameterError(
                    f"too many coordinates for degree-{self.d} extension")
            coords = tuple(cs) + (0,) * (self.d - len(cs))
        return ExtElem(self, coords)

    @property
    def zero(self) -> "ExtElem":
        return self.elem(0)

    @property
    def one(self) -> "ExtElem":
        return self.elem(1)

    def gen(self) -> "ExtElem":
        """The basis element x (equals 0 when d = 1)."""
        if self.d == 1:
            return self.zero
        return self.elem((0, 1))

    def elements(self):
        """All p^d elements, ordered by coordinate tuple."""
        for coords in product(range(self.p), repeat=self.d):
            yield ExtElem(self, coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldParams):
            return NotImplemented
        return (self.p, self.d, self._mod_coeffs) == (
            other.p, other.d, other._mod_coeffs)

    def __hash__(self) -> int:
        return hash((self.p, self.d, self._mod_coeffs))

    def __repr__(self) -> str:
        return f"FieldParams(p={self.p}, d={self.d}, modulus={self.modulus})"


class ExtElem:
    """Element of F_{p^d} as a coordinate tuple in the power basis."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldParams, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    def _check_same(self, other: "ExtElem") -> None:
        if not isinstance(other, ExtElem) or self.field != other.field:
            raise ParameterError("operands belong to different fields")

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "ExtElem") -> "ExtElem":
        self._check_same(other)
        p = self.field.p
        return ExtElem(self.field, tuple(
            (a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ExtElem") -> "ExtElem":
        self._check_same(other)
        p = self.field.p
        return ExtElem(self.field, tuple(
            (a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "ExtElem":
        p = self.field.p
        return ExtElem(self.field, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other: "ExtElem") -> "ExtElem":
        self._check_same(other)
        p = self.field.p
        d = self.field.d
        prod_c = [0] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod_c[i + j] += a * b
        mod = self.field._mod_coeffs
        for i in range(2 * d - 2, d - 1, -1):
            t = prod_c[i] % p
            if t:
                prod_c[i] = 0
                off = i - d
                for j in range(d):
                    prod_c[off + j] -= t * mod[j]
        return ExtElem(self.field, tuple(c % p for c in prod_c[:d]))

    def inv(self) -> "ExtElem":
        """Multiplicative inverse via the group order."""
        if self.is_zero:
            raise DomainError("inverse of zero")
        return self ** (self.field.order - 2)

    def __truediv__(self, other: "ExtElem") -> "ExtElem":
        self._check_same(other)
        return self * other.inv()

    def __pow__(self, e: int) -> "ExtElem":
        if e < 0:
            return self.inv() ** (-e)
        acc = self.field.one
        base = self
        while e > 0:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def frobenius(self) -> "ExtElem":
        """The p-power map; applying it d times is the identity."""
        return self ** self.field.p

    def trace(self) -> int:
        """Sum of the d conjugates, landing in F_p."""
        acc = self
        conj = self
        for _ in range(self.field.d - 1):
            conj = conj.frobenius()
            acc = acc + conj
        if any(acc.coeffs[1:]):
            raise InternalError("trace escaped the base field")
        return acc.coeffs[0]

    def norm(self) -> int:
        """Product of the d conjugates, landing in F_p (0 at 0)."""
        if self.is_zero:
            return 0
        acc = self
        conj = self
        for _ in range(self.field.d - 1):
            conj = conj.frobenius()
            acc = acc * conj
        if any(acc.coeffs[1:]):
            raise InternalError("norm escaped the base field")
        return acc.coeffs[0]

    def quad_char(self) -> int:
        """Quadratic character of the extension field: the residue
        symbol of the norm."""
        return legendre(self.norm(), self.field.p)

    def degree(self) -> int:
        """Degree of the smallest subfield containing the element."""
        t = 1
        conj = self.frobenius()
        while conj != self:
            conj = conj.frobenius()
            t += 1
        return t

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtElem):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.field.p, self.field.d))

    def __repr__(self) -> str:
        return f"ExtElem{self.coeffs}"
