# tests/test_sampling.py
import numpy as np
import pytest
import sympy as sp

from utils.complex_structures import decide_invariant_trivial, is_integrable
from utils.constants import MAX_SAMPLE_DIM, VERDICT_INVARIANT_TRIVIAL
from utils.lie_algebra import structure_subspaces, validate_jacobi
from utils.linalg import matrices_equal
from utils.sampling import (
    almost_abelian_sample,
    derivation_sample,
    nilpotent_sample,
    random_samples,
    random_unimodular,
)


def test_samples_are_deterministic():
    first = random_samples(6, seed=7)
    second = random_samples(6, seed=7)
    assert [s.name for s in first] == [s.name for s in second]
    for a, b in zip(first, second):
        assert a.L.brackets == b.L.brackets
        assert a.J == b.J


def test_sample_families_rotate():
    names = [s.name for s in random_samples(10, seed=1)]
    families = ["almost_abelian", "aff_products", "twisted", "nilpotent", "derivation"]
    assert [n.split("#")[0] for n in names] == families * 2


def test_samples_are_lie_algebras():
    for sample in random_samples(10, seed=5):
        assert sample.L.dim <= MAX_SAMPLE_DIM
        assert validate_jacobi(sample.L).passed
        assert matrices_equal(sample.J * sample.J, -sp.eye(sample.L.dim))


@pytest.mark.parametrize("n", [2, 3])
def test_almost_abelian_samples_are_integrable(n):
    L, J = almost_abelian_sample(np.random.default_rng(n), n)
    assert L.dim == 2 * n
    assert is_integrable(L, J)


@pytest.mark.parametrize("dim", [2, 4, 6])
def test_random_unimodular(dim):
    P = random_unimodular(np.random.default_rng(dim), dim)
    assert P.det() == 1
    assert all(x.is_integer for x in P)


def test_base_pairs_are_transported(kodaira_algebra, kodaira_J):
    samples = random_samples(12, seed=2, base_pairs=[("kodaira", kodaira_algebra, kodaira_J)])
    base = [s for s in samples if s.name.startswith("base:kodaira")]
    assert len(base) == 2
    for s in base:
        assert is_integrable(s.L, s.J)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_nilpotent_samples(k):
    L, J = nilpotent_sample(np.random.default_rng(10 + k), k)
    assert L.dim == 2 * k + 2
    assert structure_subspaces(L).is_nilpotent
    assert is_integrable(L, J)
    # nilpotent with integrable J: sigma is closed
    assert decide_invariant_trivial(L, J).verdict == VERDICT_INVARIANT_TRIVIAL


@pytest.mark.parametrize("k", [1, 2])
def test_derivation_samples(k):
    L, J = derivation_sample(np.random.default_rng(20 + k), k)
    assert L.dim == 2 * k + 2
    assert validate_jacobi(L).passed
    assert structure_subspaces(L).is_solvable
    assert matrices_equal(J * J, -sp.eye(L.dim))
