"""Lines of GF(q)^d, matrix actions on them, and generator sets.

Points of the projective space are stored as canonical vectors whose
first nonzero coordinate is 1, sorted lexicographically.  Matrices act on
column vectors.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import DimensionTooSmallError, GroupTooLargeError, SingularMatrixError
from .ffield import FElt, FieldCtx

Vec = tuple[FElt, ...]

FAMILIES = ("SL", "GLplus", "GL")


@dataclass(frozen=True)
class MatG:
    entries: tuple[tuple[FElt, ...], ...]

    @property
    def d(self) -> int:
        return len(self.entries)

    def apply(self, ctx: FieldCtx, v: Sequence[FElt]) -> Vec:
        out = []
        for row in self.entries:
            acc = ctx.zero
            for a, x in zip(row, v):
                if not a.is_zero() and not x.is_zero():
                    acc = ctx.add(acc, ctx.mul(a, x))
            out.append(acc)
        return tuple(out)

    def matmul(self, ctx: FieldCtx, other: "MatG") -> "MatG":
        d = self.d
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = ctx.zero
                for t in range(d):
                    acc = ctx.add(acc, ctx.mul(self.entries[i][t], other.entries[t][j]))
                row.append(acc)
            rows.append(tuple(row))
        return MatG(tuple(rows))

    def det(self, ctx: FieldCtx) -> FElt:
        """Determinant by Gaussian elimination."""
        a = [list(r) for r in self.entries]
        d = len(a)
        det = ctx.one
        for c in range(d):
            piv = next((r for r in range(c, d) if not a[r][c].is_zero()), None)
            if piv is None:
                return ctx.zero
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                det = ctx.neg(det)
            det = ctx.mul(det, a[c][c])
            inv = ctx.inv(a[c][c])
            for r in range(c + 1, d):
                if a[r][c].is_zero():
                    continue
                f = ctx.mul(a[r][c], inv)
                a[r] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(a[r], a[c])]
        return det


def identity(ctx: FieldCtx, d: int) -> MatG:
    return MatG(
        tuple(tuple(ctx.one if i == j else ctx.zero for j in range(d)) for i in range(d))
    )


def diag(ctx: FieldCtx, values: Sequence[FElt]) -> MatG:
    d = len(values)
    return MatG(
        tuple(
            tuple(values[i] if i == j else ctx.zero for j in range(d)) for i in range(d)
        )
    )


def matrix(ctx: FieldCtx, rows: Sequence[Sequence]) -> MatG:
    """Build a matrix from nested sequences of field-coercible values."""
    return MatG(tuple(tuple(ctx.elt(x) for x in row) for row in rows))


def transvection(ctx: FieldCtx, d: int, r: int, s: int, a: FElt) -> MatG:
    """I + a*e_{rs}: adds ``a`` times row s to row r under left multiplication."""
    rows = [list(row) for row in identity(ctx, d).entries]
    rows[r][s] = a
    return MatG(tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class ProjBasis:
    ctx: FieldCtx
    d: int
    points: tuple[Vec, ...]
    index: dict = field(compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.points)

    def canonical(self, v: Sequence[FElt]) -> tuple[Vec, FElt]:
        """Return ``(w, lam)`` with ``v == lam * w`` and w canonical."""
        lam = next((x for x in v if not x.is_zero()), None)
        if lam is None:
            raise ValueError("the zero vector spans no line")
        inv = self.ctx.inv(lam)
        return tuple(self.ctx.mul(inv, x) for x in v), lam


def enum_points(ctx: FieldCtx, d: int) -> ProjBasis:
    if d < 2:
        raise DimensionTooSmallError(f"dimension must be at least 2, got {d}")
    elems = ctx.elements()
    pts = []
    for lead in range(d):
        head = (ctx.zero,) * lead + (ctx.one,)
        for tail in itertools.product(elems, repeat=d - lead - 1):
            pts.append(head + tail)
    pts.sort(key=lambda v: tuple(x.coeffs for x in v))
    pts = tuple(pts)
    return ProjBasis(ctx, d, pts, {v: i for i, v in enumerate(pts)})


def act_on_point(basis: ProjBasis, M: MatG, i: int) -> tuple[int, FElt]:
    """Index j and scalar lam with ``M v_i == lam * v_j``."""
    w = M.apply(basis.ctx, basis.points[i])
    if all(x.is_zero() for x in w):
        raise SingularMatrixError("matrix kills a point, so it is singular")
    canon, lam = basis.canonical(w)
    return basis.index[canon], lam


def det_is_square(ctx: FieldCtx, M: MatG) -> bool:
    det = M.det(ctx)
    if det.is_zero():
        raise SingularMatrixError("singular matrix")
    return ctx.is_square(det)


@dataclass(frozen=True)
class GroupSpec:
    family: str
    ctx: FieldCtx
    d: int
    generators: tuple[MatG, ...]
    label: str


def normalize_family(family: str) -> str:
    key = family.strip().lower().replace("+", "plus").replace("_", "")
    for fam in FAMILIES:
        if fam.lower() == key:
            return fam
    raise ValueError(f"unknown family {family!r}; expected one of sl, glplus, gl")


def group_generators(family: str, ctx: FieldCtx, d: int) -> GroupSpec:
    """Transvections E_rs(gamma^m), 0 <= m < k, plus one diagonal for GL+/GL.

    The powers gamma^0..gamma^{k-1} of the primitive element span GF(q)
    over GF(p), so the transvections generate SL_d(q).
    """
    family = normalize_family(family)
    if d < 2:
        raise DimensionTooSmallError(f"dimension must be at least 2, got {d}")
    gamma = ctx.primitive
    params = [ctx.pow(gamma, m) for m in range(ctx.k)]
    gens = [
        transvection(ctx, d, r, s, a)
        for r in range(d)
        for s in range(d)
        if r != s
        for a in params
    ]
    if family == "GLplus":
        gens.append(diag(ctx, [ctx.mul(gamma, gamma)] + [ctx.one] * (d - 1)))
    elif family == "GL":
        gens.append(diag(ctx, [gamma] + [ctx.one] * (d - 1)))
    name = {"SL": "SL", "GLplus": "GL+", "GL": "GL"}[family]
    return GroupSpec(family, ctx, d, tuple(gens), f"{name}_{d}({ctx.q})")


def matrix_group_order(ctx: FieldCtx, gens: Sequence[MatG], max_order: int = 10**5) -> int:
    """Brute-force closure of a matrix group; for small sanity checks only."""
    d = gens[0].d
    start = identity(ctx, d)
    seen = {start}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for h in gens:
            x = h.matmul(ctx, g)
            if x not in seen:
                seen.add(x)
                if len(seen) > max_order:
                    raise GroupTooLargeError(f"closure exceeds {max_order} elements")
                queue.append(x)
    return len(seen)
