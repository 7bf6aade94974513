"""Exact arithmetic in GF(p^k) for odd primes p.

Elements are dense coefficient vectors ``(c0, c1, ..., c_{k-1})`` of a
polynomial in ``t`` reduced modulo a monic irreducible of degree ``k``.
Multiplication goes through discrete log tables built once at
construction time from the primitive element.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from sympy import isprime

from .errors import (
    DivisionByZeroError,
    EvenCharacteristicError,
    NonPrimeError,
    ReducibleModulusError,
    ZeroArgumentError,
)


@dataclass(frozen=True, order=True)
class FElt:
    """A field element as its coefficient tuple, low degree first."""

    coeffs: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self) -> str:
        if len(self.coeffs) == 1:
            return f"FElt({self.coeffs[0]})"
        return f"FElt({self.coeffs})"


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over GF(p)."""
    a = _poly_trim([x % p for x in a])
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * c) % p
        _poly_trim(a)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree up to k/2."""
    k = len(modulus) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _poly_rem(modulus, (*low, 1), p):
                return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``k``.

    Coefficients are compared low degree first, so ``(c0, ..., c_{k-1})``
    is scanned in ``itertools.product`` order.
    """
    for low in itertools.product(range(p), repeat=k):
        cand = (*low, 1)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError("an irreducible polynomial of every degree exists")


class FieldCtx:
    """The finite field GF(p^k), p odd.

    ``modulus`` may be given with or without its leading 1; it is ignored
    when ``k == 1``.
    """

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None):
        p, k = int(p), int(k)
        if p == 2:
            raise EvenCharacteristicError("characteristic 2 is not supported")
        if not isprime(p):
            raise NonPrimeError(f"{p} is not prime")
        if k < 1:
            raise ValueError(f"exponent must be positive, got {k}")
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            self.modulus: tuple[int, ...] = (0, 1)
        else:
            if modulus is None:
                mod = default_modulus(p, k)
            else:
                mod = tuple(int(c) % p for c in modulus)
                if len(mod) == k:
                    mod = (*mod, 1)
                if len(mod) != k + 1 or mod[-1] != 1:
                    raise ReducibleModulusError(
                        f"modulus must be monic of degree {k}: {tuple(modulus)}"
                    )
                if not is_irreducible(mod, p):
                    raise ReducibleModulusError(f"{mod} is reducible over GF({p})")
            self.modulus = mod

        self.zero = FElt((0,) * k)
        self.one = FElt((1,) + (0,) * (k - 1))
        self._elements = sorted(self.elt(i) for i in range(self.q))

        self.primitive = self._find_primitive()
        self._exp: list[FElt] = []
        x = self.one
        for _ in range(self.q - 1):
            self._exp.append(x)
            x = self._mul_raw(x, self.primitive)
        self._log = {e: i for i, e in enumerate(self._exp)}
        self.square_table = frozenset(self.mul(x, x) for x in self.nonzero())

    # -- construction helpers -------------------------------------------------

    def elt(self, x: int | Iterable[int] | FElt) -> FElt:
        """Coerce an integer (base-p digits, low first) or a sequence."""
        if isinstance(x, FElt):
            return x
        if isinstance(x, int):
            if self.k == 1:
                return FElt((x % self.p,))
            if not 0 <= x < self.q:
                raise ValueError(f"integer code {x} out of range for GF({self.q})")
            digits = []
            for _ in range(self.k):
                x, r = divmod(x, self.p)
                digits.append(r)
            return FElt(tuple(digits))
        c = [int(v) % self.p for v in x]
        if len(c) > self.k:
            c = _poly_rem(c, self.modulus, self.p)
        c += [0] * (self.k - len(c))
        return FElt(tuple(c))

    def to_int(self, x: FElt) -> int:
        return sum(c * self.p**i for i, c in enumerate(x.coeffs))

    def elements(self) -> list[FElt]:
        """All q elements in coefficient-lexicographic order."""
        return list(self._elements)

    def nonzero(self) -> list[FElt]:
        return [x for x in self._elements if not x.is_zero()]

    def gen(self) -> FElt:
        """The polynomial variable ``t`` (equals ``one`` when k == 1)."""
        if self.k == 1:
            return self.one
        return FElt((0, 1) + (0,) * (self.k - 2))

    def _mul_raw(self, a: FElt, b: FElt) -> FElt:
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        if self.k == 1:
            return FElt((prod[0] % self.p,))
        r = _poly_rem(prod, self.modulus, self.p)
        return FElt(tuple(r + [0] * (self.k - len(r))))

    def _order_raw(self, x: FElt) -> int:
        y, n = x, 1
        while y != self.one:
            y = self._mul_raw(y, x)
            n += 1
        return n

    def _find_primitive(self) -> FElt:
        for x in self._elements:
            if not x.is_zero() and self._order_raw(x) == self.q - 1:
                return x
        raise AssertionError("multiplicative group of a finite field is cyclic")

    # -- arithmetic -----------------------------------------------------------

    def add(self, a: FElt, b: FElt) -> FElt:
        p = self.p
        return FElt(tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: FElt, b: FElt) -> FElt:
        p = self.p
        return FElt(tuple((x - y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FElt) -> FElt:
        p = self.p
        return FElt(tuple(-x % p for x in a.coeffs))

    def mul(self, a: FElt, b: FElt) -> FElt:
        if a.is_zero() or b.is_zero():
            return self.zero
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: FElt) -> FElt:
        if a.is_zero():
            raise DivisionByZeroError("zero has no inverse")
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a: FElt, b: FElt) -> FElt:
        return self.mul(a, self.inv(b))

    def pow(self, a: FElt, e: int) -> FElt:
        if a.is_zero():
            if e < 0:
                raise DivisionByZeroError("zero has no inverse")
            return self.one if e == 0 else self.zero
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: FElt) -> int:
        """Discrete logarithm to the base ``primitive``."""
        if a.is_zero():
            raise ZeroArgumentError("log of zero")
        return self._log[a]

    def is_square(self, x: FElt) -> bool:
        """Euler's criterion: x^((q-1)/2) == 1."""
        if x.is_zero():
            raise ZeroArgumentError("quadratic character is undefined at 0")
        return self.pow(x, (self.q - 1) // 2) == self.one

    def chi(self, x: FElt) -> int:
        """Quadratic character as +1 / -1."""
        return 1 if self.is_square(x) else -1

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))


def field_new(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    return FieldCtx(p, k, modulus)


def parse_prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(p, k)`` with ``q == p**k``, p an odd prime."""
    from sympy import factorint

    q = int(q)
    if q < 3:
        if q == 2:
            raise EvenCharacteristicError("q = 2 has even characteristic")
        raise NonPrimeError(f"{q} is not a prime power")
    fac = factorint(q)
    if len(fac) != 1:
        if 2 in fac:
            raise EvenCharacteristicError(f"q = {q} is even")
        raise NonPrimeError(f"{q} is not a prime power")
    ((p, k),) = fac.items()
    if p == 2:
        raise EvenCharacteristicError(f"q = {q} has characteristic 2")
    return p, k


def field_of_order(q: int, modulus: Sequence[int] | None = None) -> FieldCtx:
    p, k = parse_prime_power(q)
    return FieldCtx(p, k, modulus)
