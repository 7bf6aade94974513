"""Invariant sign matrices: synthesis by propagation, invariance checks, file format.

Given signed generators acting 2-transitively, a sign matrix ``E`` with
``E[g(i), g(j)] == s_i * s_j * E[i, j]`` for every generator ``g`` is
fixed by a single entry.  Propagating from ``E[0, 1]`` either fills the
whole matrix or hits a conflicting assignment, which proves that no such
matrix exists.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np

from .errors import NotTwoTransitiveError, ParseError, SizeMismatchError
from .signedrep import SignedPerm, inverse, is_two_transitive


class SeidelMatrix:
    """Symmetric matrix with zero diagonal and +-1 elsewhere."""

    __slots__ = ("_e",)

    def __init__(self, entries):
        e = np.array(entries, dtype=np.int8)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError("Seidel matrix must be square")
        n = e.shape[0]
        if np.any(np.diag(e) != 0):
            raise ValueError("diagonal must be zero")
        off = e[~np.eye(n, dtype=bool)]
        if np.any((off != 1) & (off != -1)):
            raise ValueError("off-diagonal entries must be +1 or -1")
        if not np.array_equal(e, e.T):
            raise ValueError("Seidel matrix must be symmetric")
        e.setflags(write=False)
        self._e = e

    @property
    def n(self) -> int:
        return self._e.shape[0]

    @property
    def entries(self) -> np.ndarray:
        return self._e

    def as_int(self) -> np.ndarray:
        return self._e.astype(np.int64)

    def __getitem__(self, ij) -> int:
        return int(self._e[ij])

    def __neg__(self) -> "SeidelMatrix":
        return SeidelMatrix(-self._e)

    def __eq__(self, other) -> bool:
        return isinstance(other, SeidelMatrix) and np.array_equal(self._e, other._e)

    def __hash__(self) -> int:
        return hash(self._e.tobytes())

    def __repr__(self) -> str:
        return f"SeidelMatrix(n={self.n})"

    def to_text(self) -> str:
        sym = {0: "0", 1: "+", -1: "-"}
        rows = ["".join(sym[int(x)] for x in row) for row in self._e]
        return f"{self.n}\n" + "\n".join(rows) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SeidelMatrix":
        lines = text.splitlines()
        while lines and not lines[-1].strip():
            lines.pop()
        if not lines:
            raise ParseError("empty matrix file")
        try:
            n = int(lines[0].strip())
        except ValueError as exc:
            raise ParseError(f"bad size line {lines[0]!r}") from exc
        rows = lines[1:]
        if len(rows) != n:
            raise ParseError(f"expected {n} rows, found {len(rows)}")
        val = {"0": 0, "+": 1, "-": -1}
        data = []
        for r, row in enumerate(rows):
            if len(row) != n or any(ch not in val for ch in row):
                raise ParseError(f"row {r} must be {n} characters from '0+-'")
            data.append([val[ch] for ch in row])
        try:
            return cls(np.array(data, dtype=np.int8).reshape(n, n))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


def read_seidel(fh: TextIO) -> SeidelMatrix:
    return SeidelMatrix.from_text(fh.read())


def write_seidel(E: SeidelMatrix, fh: TextIO) -> None:
    fh.write(E.to_text())


@dataclass(frozen=True)
class Contradiction:
    """Audit trail for a failed propagation.

    Propagating ``source`` (holding ``source_value``) through generator
    number ``generator`` (``inverted`` if its inverse was used) forces
    ``derived`` at ``pair``, which already holds ``existing``.
    """

    pair: tuple[int, int]
    existing: int
    derived: int
    source: tuple[int, int]
    source_value: int
    generator: int
    inverted: bool

    def as_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "existing": self.existing,
            "derived": self.derived,
            "source": list(self.source),
            "source_value": self.source_value,
            "generator": self.generator,
            "inverted": self.inverted,
        }

    def __str__(self) -> str:
        g = f"inverse of generator {self.generator}" if self.inverted else f"generator {self.generator}"
        return (
            f"entry {self.pair} already {self.existing:+d} but {g} applied to "
            f"{self.source} (= {self.source_value:+d}) forces {self.derived:+d}"
        )


@dataclass(frozen=True)
class SynthesisResult:
    matrix: SeidelMatrix | None
    certificate: Contradiction | None

    @property
    def exists(self) -> bool:
        return self.matrix is not None


def verify_invariance(E: SeidelMatrix, g: SignedPerm) -> bool:
    if E.n != g.n:
        raise SizeMismatchError(f"matrix of size {E.n}, generator of size {g.n}")
    e = E.as_int()
    p = np.array(g.perm)
    s = np.array(g.signs, dtype=np.int64)
    return bool(np.array_equal(e[np.ix_(p, p)], np.outer(s, s) * e))


def propagate(gens: Sequence[SignedPerm], n: int, seed_sign: int = 1) -> SynthesisResult:
    """Breadth-first propagation from ``E[0, 1] = seed_sign``."""
    if seed_sign not in (1, -1):
        raise ValueError("seed_sign must be +1 or -1")
    for g in gens:
        if g.n != n:
            raise SizeMismatchError(f"generator of size {g.n}, expected {n}")
    if not is_two_transitive(gens, n):
        raise NotTwoTransitiveError("generators are not 2-transitive on the index set")

    moves = []
    for t, g in enumerate(gens):
        moves.append((g.perm, g.signs, t, False))
        h = inverse(g)
        if h != g:
            moves.append((h.perm, h.signs, t, True))

    E = [[0] * n for _ in range(n)]
    E[0][1] = E[1][0] = seed_sign
    queue = deque([(0, 1)])
    while queue:
        i, j = queue.popleft()
        e = E[i][j]
        for perm, signs, t, inv in moves:
            a, b = perm[i], perm[j]
            v = signs[i] * signs[j] * e
            cur = E[a][b]
            if cur == 0:
                E[a][b] = E[b][a] = v
                queue.append((a, b))
            elif cur != v:
                return SynthesisResult(None, Contradiction((a, b), cur, v, (i, j), e, t, inv))

    if any(E[i][j] == 0 for i in range(n) for j in range(n) if i != j):
        raise NotTwoTransitiveError("propagation did not reach every pair")
    M = SeidelMatrix(E)
    for t, g in enumerate(gens):
        if not verify_invariance(M, g):
            raise AssertionError(f"propagated matrix is not invariant under generator {t}")
    return SynthesisResult(M, None)


def synthesize(gens: Sequence[SignedPerm], n: int, seed_sign: int = 1) -> SeidelMatrix | None:
    return propagate(gens, n, seed_sign).matrix
