"""Exact spectra of two-eigenvalue sign matrices.

Eigenvalues live in a real quadratic field Q(sqrt D); nothing here
touches floating point except the ``__float__`` conveniences used for
display.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from numbers import Rational

import numpy as np
from sympy import factorint

from .errors import (
    DegenerateSpectrumError,
    DivisionByZeroError,
    InconsistentSpectrumError,
    NonIntegerMultiplicityError,
)
from .seidel import SeidelMatrix


@lru_cache(maxsize=None)
def squarefree_split(m: int) -> tuple[int, int]:
    """``(s, r)`` with ``m == s*s*r`` and ``r`` square-free."""
    if m < 0:
        raise ValueError("negative radicand")
    if m == 0:
        return 0, 0
    s = r = 1
    for prime, e in factorint(m).items():
        s *= prime ** (e // 2)
        if e % 2:
            r *= prime
    return s, r


class QuadVal:
    """Exact real number ``a + b*sqrt(D)`` with rational a, b and square-free D."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a=0, b=0, D: int = 1):
        a, b, D = Fraction(a), Fraction(b), int(D)
        if D < 0:
            raise ValueError("only real quadratic fields are supported")
        s, D = squarefree_split(D)
        b *= s
        if D in (0, 1):
            a += b * D
            b = Fraction(0)
        if b == 0:
            D = 1
        self.a, self.b, self.D = a, b, D

    @classmethod
    def sqrt(cls, x) -> "QuadVal":
        """Square root of a non-negative rational."""
        x = Fraction(x)
        if x < 0:
            raise ValueError("square root of a negative number")
        s, r = squarefree_split(x.numerator * x.denominator)
        return cls(0, Fraction(s, x.denominator), r)

    @staticmethod
    def _coerce(x) -> "QuadVal":
        if isinstance(x, QuadVal):
            return x
        if isinstance(x, (int, Rational)):
            return QuadVal(x)
        return NotImplemented

    @staticmethod
    def _field(x: "QuadVal", y: "QuadVal") -> int:
        if x.b == 0:
            return y.D
        if y.b == 0 or x.D == y.D:
            return x.D
        raise ValueError(f"cannot mix Q(sqrt {x.D}) and Q(sqrt {y.D})")

    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QuadVal":
        return QuadVal(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger magnitude wins
        return sa if a * a > b * b * self.D else sb

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadVal(self.a + o.a, self.b + o.b, self._field(self, o))

    __radd__ = __add__

    def __neg__(self):
        return QuadVal(-self.a, -self.b, self.D)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        D = self._field(self, o)
        return QuadVal(
            self.a * o.a + self.b * o.b * D, self.a * o.b + self.b * o.a, D
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        nrm = o.norm()
        if nrm == 0:
            raise DivisionByZeroError("division by zero")
        return self * o.conjugate() * QuadVal(1 / nrm)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.a, self.b, self.D) == (o.a, o.b, o.D)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.D)

    def __repr__(self):
        return f"QuadVal({self})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        rad = f"sqrt({self.D})"
        if self.b == 1:
            tail = rad
        elif self.b == -1:
            tail = f"-{rad}"
        else:
            tail = f"{self.b}*{rad}"
        if self.a == 0:
            return tail
        if tail.startswith("-"):
            return f"{self.a} - {tail[1:]}"
        return f"{self.a} + {tail}"

    def to_json(self) -> dict:
        return {
            "a_num": self.a.numerator,
            "a_den": self.a.denominator,
            "b_num": self.b.numerator,
            "b_den": self.b.denominator,
            "D": self.D,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QuadVal":
        return cls(
            Fraction(obj["a_num"], obj["a_den"]),
            Fraction(obj["b_num"], obj["b_den"]),
            obj["D"],
        )


# -- exact matrices over Q(sqrt D) ------------------------------------------------

_INT64_SAFE = 2**62


def _imatmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Exact integer product; drops to Python ints if int64 could overflow."""
    if x.dtype != object and y.dtype != object:
        mx = int(np.abs(x).max(initial=0))
        my = int(np.abs(y).max(initial=0))
        if mx * my * max(x.shape[1], 1) < _INT64_SAFE:
            return x.astype(np.int64) @ y.astype(np.int64)
    return np.dot(x.astype(object), y.astype(object))


def _array_gcd(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return reduce(math.gcd, (int(x) for x in arr.ravel()), 0)
    return int(np.gcd.reduce(np.abs(arr).ravel()))


def _widen(arr: np.ndarray, factor: int) -> np.ndarray:
    """``arr`` as Python ints if multiplying by ``factor`` could overflow int64."""
    if arr.dtype != object and int(np.abs(arr).max(initial=0)) * abs(factor) * 2 >= _INT64_SAFE:
        return arr.astype(object)
    return arr


def _fits(*arrays) -> bool:
    return all(a.dtype != object or int(np.abs(a).max(initial=0)) < _INT64_SAFE for a in arrays)


class QuadMatrix:
    """Square matrix ``(A + B*sqrt(D)) / den`` with integer arrays A, B."""

    __slots__ = ("A", "B", "den", "D")

    def __init__(self, A: np.ndarray, B: np.ndarray | None = None, den: int = 1, D: int = 1):
        A = np.asarray(A)
        B = np.zeros_like(A) if B is None else np.asarray(B)
        den = int(den)
        if den == 0:
            raise DivisionByZeroError("zero denominator")
        if den < 0:
            A, B, den = -A, -B, -den
        if D in (0, 1):
            A = A + B * D
            B = np.zeros_like(A)
            D = 1
        elif not B.any():
            D = 1
        g = math.gcd(den, _array_gcd(A), _array_gcd(B))
        if g > 1:
            A = A // g
            B = B // g
            den //= g
        if _fits(A, B):
            A = A.astype(np.int64)
            B = B.astype(np.int64)
        self.A, self.B, self.den, self.D = A, B, den, int(D)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @classmethod
    def identity(cls, n: int) -> "QuadMatrix":
        return cls(np.eye(n, dtype=np.int64))

    @classmethod
    def from_int(cls, M) -> "QuadMatrix":
        return cls(np.asarray(M, dtype=np.int64))

    @classmethod
    def from_seidel(cls, E: SeidelMatrix) -> "QuadMatrix":
        return cls(E.as_int())

    def is_rational(self) -> bool:
        return not self.B.any()

    def _field(self, other: "QuadMatrix") -> int:
        if self.is_rational():
            return other.D
        if other.is_rational() or self.D == other.D:
            return self.D
        raise ValueError(f"cannot mix Q(sqrt {self.D}) and Q(sqrt {other.D})")

    def __getitem__(self, ij) -> QuadVal:
        i, j = ij
        return QuadVal(
            Fraction(int(self.A[i, j]), self.den), Fraction(int(self.B[i, j]), self.den), self.D
        )

    def __add__(self, other: "QuadMatrix") -> "QuadMatrix":
        D = self._field(other)
        o, s = other.den, self.den
        return QuadMatrix(
            _widen(self.A, o) * o + _widen(other.A, s) * s,
            _widen(self.B, o) * o + _widen(other.B, s) * s,
            self.den * other.den,
            D,
        )

    def __neg__(self) -> "QuadMatrix":
        return QuadMatrix(-self.A, -self.B, self.den, self.D)

    def __sub__(self, other: "QuadMatrix") -> "QuadMatrix":
        return self + (-other)

    def __matmul__(self, other: "QuadMatrix") -> "QuadMatrix":
        D = self._field(other)
        A = _imatmul(self.A, other.A) + D * _imatmul(self.B, other.B)
        B = _imatmul(self.A, other.B) + _imatmul(self.B, other.A)
        return QuadMatrix(A, B, self.den * other.den, D)

    def scale(self, s) -> "QuadMatrix":
        s = QuadVal._coerce(s)
        t = math.lcm(s.a.denominator, s.b.denominator)
        p, r = int(s.a * t), int(s.b * t)
        if s.is_rational():
            D = self.D
        elif self.is_rational() or self.D == s.D:
            D = s.D
        else:
            raise ValueError(f"cannot mix Q(sqrt {self.D}) and Q(sqrt {s.D})")
        big = max(abs(p), abs(r) * D)
        SA, SB = _widen(self.A, big), _widen(self.B, big)
        A = p * SA + r * D * SB
        B = p * SB + r * SA
        return QuadMatrix(A, B, self.den * t, D)

    def trace(self) -> QuadVal:
        return QuadVal(
            Fraction(int(np.trace(self.A)), self.den),
            Fraction(int(np.trace(self.B)), self.den),
            self.D,
        )

    def diagonal(self) -> list[QuadVal]:
        return [self[i, i] for i in range(self.n)]

    def is_symmetric(self) -> bool:
        return np.array_equal(self.A, self.A.T) and np.array_equal(self.B, self.B.T)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadMatrix):
            return NotImplemented
        return (
            self.den == other.den
            and (self.D == other.D or (self.is_rational() and other.is_rational()))
            and np.array_equal(self.A, other.A)
            and np.array_equal(self.B, other.B)
        )

    def __repr__(self) -> str:
        return f"QuadMatrix(n={self.n}, D={self.D}, den={self.den})"


# -- spectra --------------------------------------------------------------------


@dataclass(frozen=True)
class Spectrum:
    n: int
    beta: int
    alpha: int
    lambda1: QuadVal
    lambda2: QuadVal
    m1: int
    m2: int

    @property
    def multiplicities(self) -> tuple[int, int]:
        return self.m1, self.m2

    def as_dict(self) -> dict:
        return {
            "beta": self.beta,
            "alpha": self.alpha,
            "lambda": [self.lambda1.to_json(), self.lambda2.to_json()],
            "multiplicities": [self.m1, self.m2],
        }


def quadratic_minpoly(E: SeidelMatrix) -> tuple[int, int] | None:
    """``(beta, alpha)`` with ``E^2 == beta*E + alpha*I``, or ``None``."""
    e = E.as_int()
    n = E.n
    if n < 2:
        return None
    sq = e @ e
    alpha = n - 1
    beta = int(sq[0, 1] * e[0, 1])
    if np.array_equal(sq, beta * e + alpha * np.eye(n, dtype=np.int64)):
        return beta, alpha
    return None


def rational_minpoly(M: QuadMatrix) -> tuple[Fraction, Fraction] | None:
    """``(beta, alpha)`` with ``M^2 == beta*M + alpha*I`` for a rational matrix M.

    Returns ``None`` if no such relation holds or if M is diagonal
    (then beta is not determined by an off-diagonal entry).
    """
    if not M.is_rational():
        raise ValueError("rational_minpoly expects a rational matrix")
    n = M.n
    off = np.argwhere((M.A != 0) & ~np.eye(n, dtype=bool))
    if len(off) == 0:
        return None
    i, j = (int(x) for x in off[0])
    sq = M @ M
    beta = sq[i, j].a / M[i, j].a
    alpha = sq[0, 0].a - beta * M[0, 0].a
    rhs = M.scale(beta) + QuadMatrix.identity(n).scale(alpha)
    if sq == rhs:
        return beta, alpha
    return None


def quadratic_roots(beta, alpha) -> tuple[QuadVal, QuadVal]:
    """Roots of ``x^2 - beta*x - alpha``, larger first."""
    beta, alpha = Fraction(beta), Fraction(alpha)
    disc = beta * beta + 4 * alpha
    if disc <= 0:
        raise DegenerateSpectrumError(f"discriminant {disc} is not positive")
    root = QuadVal.sqrt(disc)
    half = QuadVal(beta / 2)
    return half + root * Fraction(1, 2), half - root * Fraction(1, 2)


def eigen_data(beta: int, alpha: int, n: int) -> Spectrum:
    lam1, lam2 = quadratic_roots(beta, alpha)
    # trace zero: m1*lam1 + m2*lam2 = 0 with m1 + m2 = n
    m1 = (-lam2 * n) / (lam1 - lam2)
    if not m1.is_rational() or m1.a.denominator != 1:
        raise NonIntegerMultiplicityError(f"multiplicity {m1} is not an integer")
    m1 = int(m1.a)
    m2 = n - m1
    if m1 <= 0 or m2 <= 0:
        raise NonIntegerMultiplicityError(f"multiplicities ({m1}, {m2}) are not positive")
    return Spectrum(n, int(beta), int(alpha), lam1, lam2, m1, m2)


def spectrum(E: SeidelMatrix) -> Spectrum | None:
    """Full spectrum of E, or ``None`` if E has more than two eigenvalues."""
    mp = quadratic_minpoly(E)
    if mp is None:
        return None
    return eigen_data(mp[0], mp[1], E.n)


def projector(E: SeidelMatrix, spec: Spectrum, which: int = 1) -> QuadMatrix:
    """Orthogonal projector onto the eigenspace of ``lambda1`` (or ``lambda2``)."""
    if E.n != spec.n or quadratic_minpoly(E) != (spec.beta, spec.alpha):
        raise InconsistentSpectrumError("spectrum does not belong to this matrix")
    if which == 1:
        own, other = spec.lambda1, spec.lambda2
    elif which == 2:
        own, other = spec.lambda2, spec.lambda1
    else:
        raise ValueError("which must be 1 or 2")
    shifted = QuadMatrix.from_seidel(E) - QuadMatrix.identity(E.n).scale(other)
    return shifted.scale(1 / (own - other))


def gram(omega, c, E: SeidelMatrix) -> QuadMatrix:
    """``omega*I + c*E`` as an exact rational matrix."""
    omega, c = Fraction(omega), Fraction(c)
    return QuadMatrix.identity(E.n).scale(omega) + QuadMatrix.from_seidel(E).scale(c)


def equiangular_params(spec: Spectrum) -> tuple[int, QuadVal]:
    """Dimension and common |cosine| of the lines spanned by the projected basis."""
    return spec.m1, 1 / abs(spec.lambda2)
