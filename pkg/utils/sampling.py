# utils/sampling.py
"""Seeded random (L, J) samples for the theorem sweeps.

Families:
  almost_abelian  R e_2n x_B R^{2n-1} with Je_1 = e_2n and [A, J_1] = 0 (integrable)
  aff_products    products of aff(R) and R^2 blocks under a random unimodular basis change
  twisted         an almost abelian algebra with a conjugated J (usually not integrable)
  nilpotent       2-step nilpotent R^2k + R^2 with an abelian (hence integrable) J
  derivation      R t x_D n for a 2-step nilpotent n and a random derivation D
  base            caller-supplied (L, J) pairs under a random unimodular basis change
"""

import logging
from dataclasses import dataclass

import numpy as np
import sympy as sp

from utils.complex_structures import conjugate_structure
from utils.constants import (
    DEFAULT_SWEEP_SAMPLES,
    DEFAULT_SWEEP_SEED,
    MAX_SAMPLE_DIM,
    SAMPLE_ENTRY_RANGE,
)
from utils.lie_algebra import abelian, change_basis, default_labels, lie_algebra, semidirect

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Sample:
    name: str
    L: object
    J: sp.ImmutableMatrix


def _entry(rng):
    lo, hi = SAMPLE_ENTRY_RANGE
    return int(rng.integers(lo, hi + 1))


def random_unimodular(rng, dim):
    """(I + strictly lower)(I + strictly upper): integer, determinant 1."""
    lower = sp.eye(dim)
    upper = sp.eye(dim)
    for i in range(dim):
        for j in range(i):
            lower[i, j] = _entry(rng)
            upper[j, i] = _entry(rng)
    return sp.ImmutableMatrix(lower * upper)


def _standard_pairs(dim):
    """J with J e_{2k} = e_{2k+1}."""
    J = sp.zeros(dim, dim)
    for k in range(0, dim, 2):
        J[k + 1, k] = 1
        J[k, k + 1] = -1
    return J


def almost_abelian_sample(rng, n):
    """Integrable almost abelian sample of dimension 2n."""
    dim = 2 * n
    k = dim - 2
    # A commutes with J_1: complex (n-1)x(n-1) matrix in real 2x2 blocks
    A = sp.zeros(k, k)
    for r in range(n - 1):
        for c in range(n - 1):
            p, q = _entry(rng), _entry(rng)
            A[2 * r, 2 * c], A[2 * r, 2 * c + 1] = p, -q
            A[2 * r + 1, 2 * c], A[2 * r + 1, 2 * c + 1] = q, p
    B = sp.zeros(dim - 1, dim - 1)
    B[0, 0] = _entry(rng)
    for r in range(k):
        B[1 + r, 0] = _entry(rng)
    B[1:, 1:] = A
    L = semidirect(1, abelian(dim - 1), [B], labels=default_labels(dim), t_last=True)
    J = sp.zeros(dim, dim)
    J[dim - 1, 0] = 1
    J[0, dim - 1] = -1
    J[1:dim - 1, 1:dim - 1] = _standard_pairs(k)
    return L, sp.ImmutableMatrix(J)


def aff_product_sample(rng, blocks):
    """aff(R)^a x R^{2b} with J e_1 = e_2 on each block, then a basis change."""
    dim = 2 * blocks
    brackets = {}
    for b in range(blocks):
        if rng.random() < 0.6:
            brackets[(2 * b, 2 * b + 1)] = {2 * b + 1: 1}
    L = lie_algebra(dim, brackets, default_labels(dim))
    J = sp.ImmutableMatrix(_standard_pairs(dim))
    P = random_unimodular(rng, dim)
    return change_basis(L, P), conjugate_structure(J, P)


def twisted_sample(rng, n):
    L, J = almost_abelian_sample(rng, n)
    P = random_unimodular(rng, L.dim)
    return L, conjugate_structure(J, P)


def _invariant_two_forms(rng, k, count):
    """Antisymmetric 2k x 2k matrices with J^T Omega J = Omega for the standard J."""
    J = _standard_pairs(2 * k)
    forms = []
    for _ in range(count):
        M = sp.zeros(2 * k, 2 * k)
        for i in range(2 * k):
            for j in range(i):
                c = _entry(rng)
                M[i, j], M[j, i] = c, -c
        forms.append(M + J.T * M * J)
    return forms


def _two_step_brackets(forms, v_dim):
    """[e_i, e_j] = sum_c Omega_c(e_i, e_j) z_c with z_c = e_{v_dim + c}."""
    brackets = {}
    for i in range(v_dim):
        for j in range(i + 1, v_dim):
            coeffs = {v_dim + c: omega[i, j] for c, omega in enumerate(forms) if omega[i, j] != 0}
            if coeffs:
                brackets[(i, j)] = coeffs
    return brackets


def nilpotent_sample(rng, k):
    """2-step nilpotent sample of dimension 2k + 2.

    Both bracket components are J-invariant 2-forms, so [Jx, Jy] = [x, y] and J is integrable.
    """
    dim = 2 * k + 2
    brackets = _two_step_brackets(_invariant_two_forms(rng, k, 2), 2 * k)
    L = lie_algebra(dim, brackets, default_labels(dim))
    return L, sp.ImmutableMatrix(_standard_pairs(dim))


def derivation_sample(rng, k):
    """R t x_D n with n = R^2k + R z 2-step nilpotent and D = a(1 on R^2k, 2 on z) + (R^2k -> z)."""
    v = 2 * k
    n = lie_algebra(v + 1, _two_step_brackets(_invariant_two_forms(rng, k, 1), v))
    a = _entry(rng)
    D = sp.zeros(v + 1, v + 1)
    for i in range(v):
        D[i, i] = a
        D[v, i] = _entry(rng)
    D[v, v] = 2 * a
    L = semidirect(1, n, [D], labels=default_labels(v + 2), t_last=True)
    return L, sp.ImmutableMatrix(_standard_pairs(v + 2))


def random_samples(count=DEFAULT_SWEEP_SAMPLES, seed=DEFAULT_SWEEP_SEED, base_pairs=None):
    """Deterministic list of samples for a given seed.

    Args:
        count (int): Number of samples
        seed (int): Seed for numpy.random.default_rng
        base_pairs (list): Optional (name, L, J) triples to transport by basis changes

    Returns:
        list: Sample objects of dimension at most MAX_SAMPLE_DIM
    """
    rng = np.random.default_rng(seed)
    base = [(name, L, J) for name, L, J in (base_pairs or []) if L.dim <= MAX_SAMPLE_DIM]
    max_n = MAX_SAMPLE_DIM // 2
    families = ["almost_abelian", "aff_products", "twisted", "nilpotent", "derivation"] + (["base"] if base else [])
    samples = []
    for idx in range(count):
        family = families[idx % len(families)]
        if family == "almost_abelian":
            L, J = almost_abelian_sample(rng, int(rng.integers(2, max_n + 1)))
        elif family == "aff_products":
            L, J = aff_product_sample(rng, int(rng.integers(1, max_n + 1)))
        elif family == "twisted":
            L, J = twisted_sample(rng, int(rng.integers(2, min(3, max_n) + 1)))
        elif family == "nilpotent":
            L, J = nilpotent_sample(rng, int(rng.integers(1, max_n)))
        elif family == "derivation":
            L, J = derivation_sample(rng, int(rng.integers(1, max_n)))
        else:
            name, L0, J0 = base[int(rng.integers(0, len(base)))]
            P = random_unimodular(rng, L0.dim)
            L, J = change_basis(L0, P), conjugate_structure(J0, P)
            family = f"base:{name}"
        samples.append(Sample(f"{family}#{idx}", L, J))
    logger.info(f"Generated {len(samples)} samples with seed {seed}")
    return samples
