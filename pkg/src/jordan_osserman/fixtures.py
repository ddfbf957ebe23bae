"""Random operators and tensors with known answers, for tests and verification runs."""

from __future__ import annotations

import numpy as np

from .curvature import AlgebraicCurvatureTensor, constant_curvature_tensor, from_symmetric_form
from .indefinite import SignatureSpace, self_adjoint_from_symmetric
from .spectral import Eigenvalue, JordanStructure, jordan_matrix


def random_self_adjoint(space, rng, scale=1.0):
    """G^{-1} S with S a random symmetric Gaussian matrix."""
    S = scale * rng.standard_normal((space.dim, space.dim))
    return self_adjoint_from_symmetric(space, S + S.T)


def random_symmetric_form_tensor(space, rng):
    S = rng.standard_normal((space.dim, space.dim))
    return from_symmetric_form(space, S + S.T)


def well_conditioned(rng, m, max_cond=20.0, spread=0.3):
    """I + spread * Gaussian, redrawn until its condition number is below max_cond."""
    while True:
        P = np.eye(m) + spread * rng.standard_normal((m, m))
        if np.linalg.cond(P) < max_cond:
            return P


def _sip(k):
    return np.fliplr(np.eye(k))


def block_metric(ev, size, sign):
    """A metric making the real Jordan block of (ev, size) self-adjoint.

    Real blocks use sign * antidiag(1..1), of signature (floor(k/2), ceil(k/2))
    for sign=+1; non-real blocks use antidiag (x) diag(-1, 1), neutral.
    """
    if ev.is_real:
        return sign * _sip(size)
    return sign * np.kron(_sip(size), np.diag([-1.0, 1.0]))


def self_adjoint_jordan(structure, signs=None):
    """(gram, J) with J the real Jordan matrix of ``structure`` and J gram-self-adjoint."""
    J = jordan_matrix(structure)
    m = J.shape[0]
    G = np.zeros((m, m))
    i, b = 0, 0
    for ev, sizes in structure.blocks:
        for k in sizes:
            sign = 1.0 if signs is None else signs[b]
            g = block_metric(ev, k, sign)
            G[i:i + g.shape[0], i:i + g.shape[0]] = g
            i += g.shape[0]
            b += 1
    return G, J


def random_structure(rng, m, allow_complex=True, min_block=1, max_block=None):
    """A random Jordan structure of total real dimension m with well separated eigenvalues."""
    max_block = max_block or m
    pool = [float(v) for v in range(-5, 6)]
    rng.shuffle(pool)
    blocks, left = [], m
    while left:
        if allow_complex and left >= 2 and rng.random() < 0.3:
            re, im = float(rng.integers(-3, 4)), float(rng.integers(1, 3))
            if any(e.re == re and e.im == im for e, _ in blocks):
                continue
            sizes, budget = [], left // 2
            while budget and (not sizes or rng.random() < 0.4):
                k = int(rng.integers(1, min(budget, max_block) + 1))
                sizes.append(k)
                budget -= k
            blocks.append((Eigenvalue(re, im, 2 * sum(sizes)), tuple(sizes)))
            left -= 2 * sum(sizes)
        else:
            re = pool.pop()
            sizes, budget = [], left
            while budget and (not sizes or rng.random() < 0.4):
                k = int(rng.integers(min(min_block, budget), min(budget, max_block) + 1))
                sizes.append(k)
                budget -= k
            blocks.append((Eigenvalue(re, 0.0, sum(sizes)), tuple(sizes)))
            left -= sum(sizes)
    return JordanStructure(tuple(blocks))


def random_jordan_fixture(rng, structure, signs=None, max_cond=20.0):
    """Conjugate a self-adjoint Jordan matrix by a random well-conditioned P.

    Returns (space, J') with J' = P^{-1} J P and gram P^T G P, so J' is
    self-adjoint for the transported metric and similar to the Jordan matrix.
    """
    G, J = self_adjoint_jordan(structure, signs)
    m = J.shape[0]
    P = well_conditioned(rng, m, max_cond)
    space = SignatureSpace.from_gram(G).transport(P)
    return space, np.linalg.solve(P, J @ P)


def constant_holomorphic_curvature(q, c=1.0):
    """Kaehler-type tensor on Euclidean R^q (q even) with complex structure e_2k -> e_2k+1.

    Its Jacobi operator at a unit x is c on x^perp plus 3c on Jx, so the tensor is
    Osserman without having constant sectional curvature.
    """
    if q % 2 or q < 2:
        raise ValueError("needs an even dimension")
    g = np.eye(q)
    w = np.kron(np.eye(q // 2), np.array([[0.0, 1.0], [-1.0, 0.0]]))  # w[a, b] = <J e_a, e_b>
    R0 = np.einsum("ad,bc->abcd", g, g) - np.einsum("ac,bd->abcd", g, g)
    RJ = (np.einsum("ad,bc->abcd", w, w) - np.einsum("ac,bd->abcd", w, w)
          - 2 * np.einsum("ab,cd->abcd", w, w))
    return AlgebraicCurvatureTensor(SignatureSpace.standard(0, q), c * (R0 + RJ))


def constant_curvature_family(signatures, kappas=(-2, -1, 0, 1, 2)):
    for p, q in signatures:
        space = SignatureSpace.standard(p, q)
        for kappa in kappas:
            yield (p, q, kappa), constant_curvature_tensor(space, kappa)


def signatures_up_to(max_dim, strict=True):
    """All (p, q) with p < q (or every p when strict is False) and p + q <= max_dim, q >= 1."""
    return [(p, m - p) for m in range(1, max_dim + 1) for p in range(m)
            if (not strict or p < m - p)]
