"""Polynomial algebra over prime fields F_p.

Polynomials are dense, immutable coefficient tuples indexed by degree
(constant term first); the zero polynomial has an empty tuple.  The
canonical form never carries trailing zero coefficients, so equality and
hashing are structural.

On top of the ring operations this module provides the deterministic
irreducibility test, enumeration and counting of monic irreducibles with
vanishing second-highest coefficient (equivalently: root trace zero),
minimal polynomials and conjugacy-class representatives of extension
elements, the coefficient scaling f |-> i^deg(f) * f(X/i), and a
square-freeness check for shifted products.

Functions taking a prime ``p`` trust the caller; primality is validated
at the field and construction layers.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from .errors import BudgetError, DomainError, InternalError, ParameterError

__all__ = [
    "Poly",
    "poly_gcd",
    "is_irreducible",
    "mobius",
    "count_trace_zero_irreducibles",
    "enumerate_trace_zero_irreducibles",
    "minimal_polynomial",
    "conjugacy_representatives",
    "scale_poly",
    "is_squarefree_product",
    "DEFAULT_ENUM_BUDGET",
]

# Cap on brute-force candidate counts (polynomials or field elements).
# Enumerations refuse loudly instead of truncating silently.
DEFAULT_ENUM_BUDGET = 10**7


class Poly:
    """Dense polynomial over F_p; ``coeffs[i]`` multiplies x^i."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs: Iterable[int], p: int):
        if p < 2:
            raise ParameterError(f"modulus p must be >= 2, got {p}")
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.p = p

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _check_same_field(self, other: "Poly") -> None:
        if self.p != other.p:
            raise ParameterError(
                f"mixed coefficient fields F_{self.p} and F_{other.p}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check_same_field(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return Poly(a, self.p)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check_same_field(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] -= c
        return Poly(a, self.p)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.p)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_same_field(other)
        if self.is_zero or other.is_zero:
            return Poly((), self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out, self.p)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check_same_field(other)
        if other.is_zero:
            raise DomainError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return Poly((), p), Poly(rem, p)
        inv_lead = pow(other.coeffs[-1], p - 2, p)
        quo = [0] * (dq + 1)
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] % p
            if c:
                q = c * inv_lead % p
                quo[i] = q
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q * b
        return Poly(quo, p), Poly(rem, p)

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.coeffs, self.p))

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)}, p={self.p})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                x = "x" if i == 1 else f"x^{i}"
                terms.append(x if c == 1 else f"{c}{x}")
        return " + ".join(terms)

    def eval(self, n: int) -> int:
        """Horner evaluation at n, reduced mod p."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * n + c) % self.p
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.p)

    def monic(self) -> "Poly":
        """Scale by the inverse of the leading coefficient."""
        if self.is_zero:
            raise DomainError("zero polynomial has no monic form")
        if self.is_monic:
            return self
        inv = pow(self.coeffs[-1], self.p - 2, self.p)
        return Poly([c * inv for c in self.coeffs], self.p)

    def shifted(self, s: int) -> "Poly":
        """Return f(x + s) via a Taylor shift."""
        s %= self.p
        if s == 0 or self.is_zero:
            return self
        # Synthetic division by (x - (-s)) applied repeatedly.
        out = list(self.coeffs)
        p = self.p
        for i in range(len(out) - 1):
            for j in range(len(out) - 2, i - 1, -1):
                out[j] = (out[j] + s * out[j + 1]) % p
        return Poly(out, p)


def _x(p: int) -> Poly:
    return Poly((0, 1), p)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    a._check_same_field(b)
    while not b.is_zero:
        a, b = b, a % b
    if a.is_zero:
        return a
    return a.monic()


def _pow_mod(base: Poly, e: int, mod: Poly) -> Poly:
    """base**e reduced mod the polynomial ``mod`` (e >= 0)."""
    result = Poly((1,), base.p)
    base = base % mod
    while e > 0:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


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


def is_irreducible(f: Poly) -> bool:
    """Deterministic irreducibility test over F_p.

    Normalizes to monic form, then checks x^(p^n) = x mod f together
    with gcd(x^(p^(n/q)) - x, f) = 1 for every prime q dividing n.
    """
    if f.degree < 1:
        raise ParameterError("irreducibility is defined for degree >= 1")
    f = f.monic()
    n = f.degree
    if n == 1:
        return True
    p = f.p
    x = _x(p)
    # powers[t] = x^(p^t) mod f
    powers = [x % f]
    for _ in range(n):
        powers.append(_pow_mod(powers[-1], p, f))
    if powers[n] != x % f:
        return False
    for q in _prime_divisors(n):
        t = n // q
        g = poly_gcd(powers[t] - x, f)
        if g.degree != 0:
            return False
    return True


def mobius(n: int) -> int:
    if n < 1:
        raise ParameterError("mobius is defined for n >= 1")
    result = 1
    f = 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            result = -result
        f += 1
    if n > 1:
        result = -result
    return result


def count_trace_zero_irreducibles(p: int, d: int) -> int:
    """Number of monic irreducible degree-d polynomials over F_p whose
    x^(d-1) coefficient vanishes.

    Counts degree-d field elements with zero trace down to F_p and
    divides by the orbit size d.  For p not dividing d this equals the
    Mobius sum (1/(dp)) * sum over t | d of mobius(t) * p^(d/t); the
    subfield-exact inclusion-exclusion below also stays correct when
    p | d, where that closed form is not even an integer.
    """
    if d < 2:
        raise ParameterError(f"extension degree must be >= 2, got {d}")
    total = 0
    for t in range(1, d + 1):
        if d % t:
            continue
        # Elements of F_{p^t} with zero trace to F_p: all of them when
        # p divides the relative degree d/t, else a fraction 1/p.
        sub = p**t if (d // t) % p == 0 else p ** (t - 1)
        total += mobius(d // t) * sub
    if total % d:
        raise InternalError(f"trace-zero count not divisible by d={d}")
    return total // d


def _iter_monic_zero_second(p: int, d: int):
    """Monic degree-d candidates with zero x^(d-1) coefficient, in
    lexicographic order of the remaining coefficients (highest power
    first, constant term last)."""
    for rest in product(range(p), repeat=d - 1):
        # rest = (coeff of x^(d-2), ..., coeff of x^0)
        coeffs = [0] * (d + 1)
        coeffs[d] = 1
        for idx, c in enumerate(rest):
            coeffs[d - 2 - idx] = c
        yield Poly(coeffs, p)


def enumerate_trace_zero_irreducibles(p: int, d: int,
                                      budget: int | None = None) -> list[Poly]:
    """All monic irreducible degree-d polynomials over F_p with zero
    x^(d-1) coefficient, ordered lexicographically by coefficient tuple
    (highest power first)."""
    if d < 2:
        raise ParameterError(f"extension degree must be >= 2, got {d}")
    budget = DEFAULT_ENUM_BUDGET if budget is None else budget
    candidates = p ** (d - 1)
    if candidates > budget:
        raise BudgetError(
            f"enumeration needs {candidates} candidates, budget is {budget}",
            estimate=candidates, budget=budget)
    return [f for f in _iter_monic_zero_second(p, d) if is_irreducible(f)]


def minimal_polynomial(beta) -> Poly:
    """Monic polynomial over F_p whose roots are the conjugate orbit
    beta, beta^p, ..., applied until the orbit closes.

    For beta generating the full extension the degree equals d; subfield
    elements yield their lower-degree minimal polynomial (the degree of
    the result tells which happened).
    """
    field = beta.field
    orbit = [beta]
    conj = beta.frobenius()
    while conj != beta:
        orbit.append(conj)
        conj = conj.frobenius()
    # Expand prod (X - r) with coefficients in the extension field.
    coeffs = [field.one]
    for r in orbit:
        nxt = [field.zero] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * r
        coeffs = nxt
    ints = []
    for c in coeffs:
        if any(c.coeffs[1:]):
            raise InternalError(
                "minimal polynomial coefficient escaped the base field")
        ints.append(c.coeffs[0])
    return Poly(ints, field.p)


def conjugacy_representatives(p: int, d: int, trace_zero_only: bool,
                              budget: int | None = None) -> list:
    """One representative per conjugate orbit of elements of degree
    exactly d, optionally restricted to trace zero.

    The representative is the lexicographically smallest coordinate
    tuple in its orbit and the list is ordered by those tuples.  These
    biject with the monic irreducible degree-d polynomials (trace-zero
    ones under the filter) via ``minimal_polynomial``.
    """
    from .ff import FieldParams  # deferred: ff builds on this module

    budget = DEFAULT_ENUM_BUDGET if budget is None else budget
    if p**d > budget:
        raise BudgetError(
            f"orbit enumeration needs {p**d} elements, budget is {budget}",
            estimate=p**d, budget=budget)
    field = FieldParams(p, d)
    seen: set[tuple[int, ...]] = set()
    reps = []
    for coords in product(range(p), repeat=d):
        if coords in seen:
            continue
        alpha = field.elem(coords)
        orbit = {coords}
        conj = alpha.frobenius()
        while conj.coeffs not in orbit:
            orbit.add(conj.coeffs)
            conj = conj.frobenius()
        seen |= orbit
        if len(orbit) != d:
            continue
        if trace_zero_only and alpha.trace() != 0:
            continue
        reps.append(alpha)
    return reps


def scale_poly(f: Poly, i: int) -> Poly:
    """Substitute x/i and rescale by i^deg(f): each coefficient of
    x^(d-j) picks up a factor i^j.  Preserves monicity and
    irreducibility; scaling by the inverse undoes it."""
    if not f.is_monic:
        raise ParameterError("scaling is defined for monic polynomials")
    p = f.p
    if i % p == 0:
        raise ParameterError("scale factor must be nonzero mod p")
    d = f.degree
    return Poly([c * pow(i, d - m, p) for m, c in enumerate(f.coeffs)], p)


def is_squarefree_product(shifted: Sequence[tuple[Poly, int]]) -> bool:
    """Whether the product of the shifted factors f_j(x + s_j) is
    square-free, decided by gcd with the derivative."""
    if not shifted:
        raise ParameterError("need at least one factor")
    p = shifted[0][0].p
    h = Poly((1,), p)
    for f, s in shifted:
        if not f.is_monic:
            raise ParameterError("factors must be monic")
        h = h * f.shifted(s)
    return poly_gcd(h, h.derivative()).degree == 0
