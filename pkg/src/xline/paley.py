"""Paley conference matrices and switching-class comparison of sign matrices."""
from __future__ import annotations

import numpy as np

from .errors import SizeMismatchError, TooLargeError, WrongResidueClassError
from .ffield import FieldCtx
from .seidel import SeidelMatrix

PALEY_MATCH_MAX_N = 20


def paley_conference(ctx: FieldCtx) -> SeidelMatrix:
    """Bordered quadratic-residue matrix of order q+1; index 0 is the point at infinity."""
    q = ctx.q
    if q % 4 != 1:
        raise WrongResidueClassError(f"q = {q} is not 1 mod 4; the core would be antisymmetric")
    elems = ctx.elements()
    n = q + 1
    C = np.zeros((n, n), dtype=np.int8)
    C[0, 1:] = 1
    C[1:, 0] = 1
    for a, x in enumerate(elems, start=1):
        for b, y in enumerate(elems, start=1):
            if a != b:
                C[a, b] = ctx.chi(ctx.sub(x, y))
    return SeidelMatrix(C)


def switching_normalize(E: SeidelMatrix, vertex: int = 0) -> SeidelMatrix:
    """Switch so that every off-diagonal entry in row/column ``vertex`` is +1."""
    e = E.as_int()
    d = e[vertex].copy()
    d[vertex] = 1
    return SeidelMatrix(d[:, None] * e * d[None, :])


def _isomorphism(F: np.ndarray, G: np.ndarray) -> list[int] | None:
    """A permutation ``pi`` with ``F[i, j] == G[pi[i], pi[j]]``, by backtracking.

    Candidates are pruned by the number of -1 entries per row and by the
    multiset of those counts over the -1 neighbours.
    """
    n = F.shape[0]

    def colors(M):
        deg = (M == -1).sum(axis=1)
        return [(int(deg[i]), tuple(sorted(int(deg[j]) for j in range(n) if M[i, j] == -1)))
                for i in range(n)]

    cf, cg = colors(F), colors(G)
    if sorted(cf) != sorted(cg):
        return None
    # most constrained first: rarest color, then adjacency to already placed vertices
    freq = {}
    for c in cf:
        freq[c] = freq.get(c, 0) + 1
    order = [min(range(n), key=lambda v: (freq[cf[v]], v))]
    rest = set(range(n)) - set(order)
    while rest:
        v = min(rest, key=lambda u: (freq[cf[u]], -sum(F[u, w] == -1 for w in order), u))
        order.append(v)
        rest.remove(v)

    pi = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for w in range(n):
            if used[w] or cg[w] != cf[v]:
                continue
            if all(F[v, u] == G[w, pi[u]] for u in order[:k]):
                pi[v] = w
                used[w] = True
                if extend(k + 1):
                    return True
                used[w] = False
                pi[v] = -1
        return False

    return list(pi) if extend(0) else None


def switching_isomorphism(E: SeidelMatrix, C: SeidelMatrix) -> tuple[int, list[int]] | None:
    """Find ``(v, pi)``: E switched at vertex v maps onto C switched at 0 via pi.

    Every vertex v is tried, so a result exists iff E and C lie in
    isomorphic switching classes.
    """
    if E.n != C.n:
        raise SizeMismatchError(f"sizes {E.n} and {C.n} differ")
    if E.n > PALEY_MATCH_MAX_N:
        raise TooLargeError(f"brute-force matching is limited to n <= {PALEY_MATCH_MAX_N}")
    target = switching_normalize(C).as_int()
    for v in range(E.n):
        pi = _isomorphism(switching_normalize(E, v).as_int(), target)
        if pi is not None:
            return v, pi
    return None


def paley_match(E: SeidelMatrix, C: SeidelMatrix) -> bool:
    return switching_isomorphism(E, C) is not None
