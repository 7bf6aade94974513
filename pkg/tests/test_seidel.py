import io
import itertools

import numpy as np
import pytest

from xline.errors import NotTwoTransitiveError, ParseError, SizeMismatchError
from xline.seidel import SeidelMatrix, propagate, read_seidel, synthesize, verify_invariance, write_seidel
from xline.signedrep import SignedPerm, inverse


def all_invariant(gens, n):
    """Every sign matrix fixed by gens, by exhaustive enumeration."""
    iu = np.triu_indices(n, 1)
    found = []
    for bits in itertools.product((1, -1), repeat=len(iu[0])):
        E = np.zeros((n, n), dtype=np.int64)
        E[iu] = bits
        E = E + E.T
        ok = True
        for g in gens:
            for i in range(n):
                for j in range(i + 1, n):
                    if E[g.perm[i], g.perm[j]] != g.signs[i] * g.signs[j] * E[i, j]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            found.append(SeidelMatrix(E))
    return found


@pytest.mark.parametrize("family,d,q", [("SL", 2, 3), ("GL", 2, 3), ("SL", 2, 5), ("GLplus", 2, 5), ("GL", 2, 5)])
def test_matches_brute_force(case, family, d, q):
    _, B, gens = case(family, d, q)
    brute = all_invariant(gens, B.n)
    assert len(brute) in (0, 2)
    E = synthesize(list(gens), B.n)
    if E is None:
        assert brute == []
    else:
        assert set(brute) == {E, -E}


def test_sl25_square(seidel_of):
    E = seidel_of("SL", 2, 5)
    assert E is not None and E.n == 6
    e = E.as_int()
    assert (e @ e == 5 * np.eye(6, dtype=np.int64)).all()


@pytest.mark.parametrize("family,d,q", [("SL", 2, 7), ("SL", 3, 3), ("GL", 2, 5)])
def test_absent_with_certificate(case, family, d, q):
    _, B, gens = case(family, d, q)
    res = propagate(list(gens), B.n)
    assert not res.exists
    c = res.certificate
    assert c.existing == -c.derived
    g = gens[c.generator]
    if c.inverted:
        g = inverse(g)
    i, j = c.source
    assert tuple(sorted((g.perm[i], g.perm[j]))) == tuple(sorted(c.pair))
    assert c.derived == g.signs[i] * g.signs[j] * c.source_value
    assert set(c.as_dict()) == {"pair", "existing", "derived", "source", "source_value", "generator", "inverted"}
    assert "forces" in str(c)


def test_seed_sign_negates(case):
    _, B, gens = case("SL", 2, 13)
    assert synthesize(list(gens), B.n, -1) == -synthesize(list(gens), B.n, 1)
    with pytest.raises(ValueError):
        propagate(list(gens), B.n, 0)


def test_generator_order_irrelevant(case):
    _, B, gens = case("SL", 2, 9)
    a = synthesize(list(gens), B.n)
    b = synthesize(list(reversed(gens)), B.n)
    assert a is not None and a == b


def test_verify_invariance_examples(seidel_of, case):
    E = seidel_of("SL", 2, 5)
    _, _, gens = case("SL", 2, 5)
    assert all(verify_invariance(E, g) for g in gens)
    assert verify_invariance(E, SignedPerm.identity(6))
    # -1 on every point: s_i s_j = 1 leaves any matrix fixed
    assert verify_invariance(E, SignedPerm(tuple(range(6)), (-1,) * 6))
    J = SeidelMatrix(np.ones((3, 3), dtype=int) - np.eye(3, dtype=int))
    assert verify_invariance(J, SignedPerm((1, 0, 2), (1, 1, 1)))
    assert not verify_invariance(J, SignedPerm((1, 0, 2), (-1, 1, 1)))
    with pytest.raises(SizeMismatchError):
        verify_invariance(J, SignedPerm.identity(4))


def test_not_two_transitive():
    with pytest.raises(NotTwoTransitiveError):
        propagate([SignedPerm((1, 2, 0), (1, 1, 1))], 3)


@pytest.mark.parametrize("bad", [[[1, 1], [1, 0]], [[0, 2], [2, 0]], [[0, 1], [-1, 0]], [[0, 1, 1]]])
def test_validation(bad):
    with pytest.raises(ValueError):
        SeidelMatrix(bad)


def test_text_roundtrip(seidel_of):
    E = seidel_of("SL", 2, 9)
    text = E.to_text()
    assert text.startswith("10\n") and text.endswith("\n")
    assert len(text.splitlines()) == 11
    assert SeidelMatrix.from_text(text) == E
    buf = io.StringIO()
    write_seidel(E, buf)
    assert buf.getvalue() == text
    assert read_seidel(io.StringIO(text)) == E
    assert SeidelMatrix.from_text("2\n0+\n+0\n").as_int().tolist() == [[0, 1], [1, 0]]


@pytest.mark.parametrize("text", ["", "x\n", "2\n0+\n", "2\n0+\n-0\n", "2\n0*\n*0\n", "2\n0++\n+0\n"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        SeidelMatrix.from_text(text)
