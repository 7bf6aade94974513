import functools

import pytest

from xline.ffield import field_of_order
from xline.projgeom import group_generators
from xline.seidel import synthesize
from xline.signedrep import lift_group


@functools.lru_cache(maxsize=None)
def _case(family, d, q):
    spec = group_generators(family, field_of_order(q), d)
    basis, gens = lift_group(spec)
    return spec, basis, tuple(gens)


@functools.lru_cache(maxsize=None)
def _seidel(family, d, q, seed=1):
    _, basis, gens = _case(family, d, q)
    return synthesize(list(gens), basis.n, seed)


@pytest.fixture
def case():
    """``case(family, d, q) -> (GroupSpec, ProjBasis, lifted generators)``, cached."""
    return _case


@pytest.fixture
def seidel_of():
    return _seidel
