"""Signed permutations, the quadratic-character lift, and orbit counting.

A signed permutation ``g`` sends basis vector ``e_j`` to
``g.signs[j] * e_{g.perm[j]}``.  It also permutes the 2n-element set
``Y = X x {+1, -1}`` by ``(i, s) -> (perm[i], s * signs[i])``; a symbol
``(i, s)`` is encoded as ``2*i + (s < 0)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import GroupTooLargeError, ParseError, SizeMismatchError
from .projgeom import GroupSpec, MatG, ProjBasis, act_on_point, enum_points


@dataclass(frozen=True)
class SignedPerm:
    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if len(self.signs) != n:
            raise SizeMismatchError("perm and signs differ in length")
        if sorted(self.perm) != list(range(n)):
            raise ValueError(f"not a bijection: {self.perm}")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"signs must be +1/-1: {self.signs}")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "SignedPerm":
        return cls(tuple(range(n)), (1,) * n)

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        return compose(self, other)

    def y_image(self) -> tuple[int, ...]:
        """This element as a permutation of the encoded set Y."""
        out = [0] * (2 * self.n)
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            flip = 0 if s > 0 else 1
            out[2 * i] = 2 * j + flip
            out[2 * i + 1] = 2 * j + (1 - flip)
        return tuple(out)

    def matrix(self) -> np.ndarray:
        """The n x n signed permutation matrix (columns are images of e_j)."""
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for j, (i, s) in enumerate(zip(self.perm, self.signs)):
            m[i, j] = s
        return m


def compose(a: SignedPerm, b: SignedPerm) -> SignedPerm:
    """``a`` after ``b``."""
    if a.n != b.n:
        raise SizeMismatchError(f"sizes {a.n} and {b.n} differ")
    perm = tuple(a.perm[j] for j in b.perm)
    signs = tuple(sb * a.signs[bj] for sb, bj in zip(b.signs, b.perm))
    return SignedPerm(perm, signs)


def inverse(a: SignedPerm) -> SignedPerm:
    n = a.n
    perm = [0] * n
    for i, j in enumerate(a.perm):
        perm[j] = i
    return SignedPerm(tuple(perm), tuple(a.signs[perm[j]] for j in range(n)))


def lift(basis: ProjBasis, M: MatG) -> SignedPerm:
    """Signed permutation of the lines: sign +1 iff the scalar is a square."""
    ctx = basis.ctx
    perm, signs = [], []
    for i in range(basis.n):
        j, lam = act_on_point(basis, M, i)
        perm.append(j)
        signs.append(ctx.chi(lam))
    return SignedPerm(tuple(perm), tuple(signs))


def lift_group(spec: GroupSpec, basis: ProjBasis | None = None) -> tuple[ProjBasis, list[SignedPerm]]:
    if basis is None:
        basis = enum_points(spec.ctx, spec.d)
    return basis, [lift(basis, M) for M in spec.generators]


def with_inverses(gens: Iterable[SignedPerm]) -> list[SignedPerm]:
    out: list[SignedPerm] = []
    seen = set()
    for g in gens:
        for h in (g, inverse(g)):
            if h not in seen:
                seen.add(h)
                out.append(h)
    return out


def _check_sizes(gens: Sequence[SignedPerm], n: int) -> None:
    for g in gens:
        if g.n != n:
            raise SizeMismatchError(f"generator of size {g.n}, expected {n}")


def is_two_transitive(gens: Sequence[SignedPerm], n: int) -> bool:
    """Single orbit on ordered pairs of distinct indices, grown from (0, 1)."""
    if n < 2:
        raise ValueError("two-transitivity needs n >= 2")
    _check_sizes(gens, n)
    perms = [g.perm for g in with_inverses(gens)]
    seen = {(0, 1)}
    queue = deque(seen)
    while queue:
        i, j = queue.popleft()
        for p in perms:
            pair = (p[i], p[j])
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return len(seen) == n * (n - 1)


def orbit_labels(images: Sequence[np.ndarray], size: int) -> np.ndarray:
    """Orbit label of each point of ``range(size)`` under the given maps.

    Orbits of the generated group are the connected components of the
    Schreier graph; undirected connectivity accounts for inverses.
    """
    if not images:
        return np.arange(size)
    src = np.tile(np.arange(size), len(images))
    dst = np.concatenate([np.asarray(img, dtype=np.int64) for img in images])
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(size, size))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


def _pair_images(point_images: Sequence[np.ndarray], m: int) -> list[np.ndarray]:
    return [(img[:, None] * m + img[None, :]).ravel() for img in point_images]


@dataclass(frozen=True)
class SignedOrbitReport:
    orbit_count_X2: int
    orbit_count_YxY: int
    orbit_count_delta: int
    orbit_count_delta_prime: int
    orbit_count_nabla: int
    transitive_on_Y: bool

    def as_dict(self) -> dict:
        return {
            "orbits_x2": self.orbit_count_X2,
            "orbits_yxy": self.orbit_count_YxY,
            "orbits_delta": self.orbit_count_delta,
            "orbits_delta_prime": self.orbit_count_delta_prime,
            "orbits_nabla": self.orbit_count_nabla,
            "transitive_on_y": self.transitive_on_Y,
        }


def orbits_on_signed_pairs(gens: Sequence[SignedPerm], n: int) -> SignedOrbitReport:
    _check_sizes(gens, n)
    gens = list(dict.fromkeys(gens))
    m = 2 * n

    x_imgs = [np.array(g.perm, dtype=np.int64) for g in gens]
    x_labels = orbit_labels(_pair_images(x_imgs, n), n * n).reshape(n, n)
    offdiag = ~np.eye(n, dtype=bool)
    count_x2 = len(np.unique(x_labels[offdiag]))

    y_imgs = [np.array(g.y_image(), dtype=np.int64) for g in gens]
    transitive_y = len(np.unique(orbit_labels(y_imgs, m))) == 1

    labels = orbit_labels(_pair_images(y_imgs, m), m * m).reshape(m, m)
    ys = np.arange(m)
    line = ys // 2
    delta = labels[ys, ys]
    delta_prime = labels[ys, ys ^ 1]
    nabla = labels[line[:, None] != line[None, :]]
    return SignedOrbitReport(
        orbit_count_X2=count_x2,
        orbit_count_YxY=len(np.unique(labels)),
        orbit_count_delta=len(np.unique(delta)),
        orbit_count_delta_prime=len(np.unique(delta_prime)),
        orbit_count_nabla=len(np.unique(nabla)),
        transitive_on_Y=transitive_y,
    )


def _closure_batches(gens: Sequence[SignedPerm], n: int, max_order: int):
    """Breadth-first closure on Y, yielding each new layer as a 2-D array."""
    _check_sizes(gens, n)
    m = 2 * n
    dtype = np.uint8 if m <= 256 else np.uint16
    ident = np.arange(m, dtype=dtype)
    gys = [np.array(g.y_image(), dtype=dtype) for g in gens]
    seen = {ident.tobytes()}
    frontier = ident[None, :]
    yield frontier
    while len(frontier):
        fresh = []
        for g in gys:
            for row in g[frontier]:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    if len(seen) > max_order:
                        raise GroupTooLargeError(
                            f"group closure exceeds max_order={max_order}"
                        )
                    fresh.append(row)
        frontier = np.array(fresh, dtype=dtype).reshape(len(fresh), m)
        if len(fresh):
            yield frontier


def group_closure_y(gens: Sequence[SignedPerm], n: int, max_order: int = 10**6) -> list[tuple[int, ...]]:
    """Every element of the generated group, as permutations of Y."""
    return [
        tuple(int(v) for v in row)
        for layer in _closure_batches(gens, n, max_order)
        for row in layer
    ]


def burnside_orbit_count(gens: Sequence[SignedPerm], n: int, max_order: int = 10**6) -> int:
    """Orbits on Y x Y as the mean of |Fix_Y(g)|^2 over the whole group."""
    ys = np.arange(2 * n)
    order = total = 0
    for layer in _closure_batches(gens, n, max_order):
        fixed = (layer == ys).sum(axis=1).astype(np.int64)
        total += int((fixed * fixed).sum())
        order += len(layer)
    count, rem = divmod(total, order)
    assert rem == 0, "Burnside sum must be divisible by the group order"
    return count


# -- signed generator text format -----------------------------------------------


def write_generators(gens: Sequence[SignedPerm], fh: TextIO) -> None:
    n = gens[0].n if gens else 0
    fh.write(f"{n} {len(gens)}\n")
    for g in gens:
        fh.write(" ".join(str(j) for j in g.perm) + "\n")
        fh.write(" ".join("+" if s > 0 else "-" for s in g.signs) + "\n")


def read_generators(fh: TextIO) -> tuple[int, list[SignedPerm]]:
    lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ParseError("empty generator file")
    try:
        n, g = (int(x) for x in lines[0].split())
    except ValueError as exc:
        raise ParseError(f"bad header line: {lines[0]!r}") from exc
    if len(lines) != 1 + 2 * g:
        raise ParseError(f"expected {2 * g} body lines, found {len(lines) - 1}")
    gens = []
    for t in range(g):
        perm_line, sign_line = lines[1 + 2 * t].split(), lines[2 + 2 * t].split()
        if len(perm_line) != n or len(sign_line) != n:
            raise ParseError(f"generator {t} does not have {n} entries")
        try:
            perm = tuple(int(x) for x in perm_line)
        except ValueError as exc:
            raise ParseError(f"generator {t}: non-integer image") from exc
        if any(s not in "+-" for s in sign_line):
            raise ParseError(f"generator {t}: signs must be '+' or '-'")
        signs = tuple(1 if s == "+" else -1 for s in sign_line)
        try:
            gens.append(SignedPerm(perm, signs))
        except ValueError as exc:
            raise ParseError(f"generator {t}: {exc}") from exc
    return n, gens
