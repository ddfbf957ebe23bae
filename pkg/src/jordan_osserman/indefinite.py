"""Real inner-product spaces of signature (p, q).

Vectors are plain 1-d numpy arrays of coordinates in the space's basis;
linear maps are m x m arrays acting on those coordinates.  The inner product
of u and v is ``u @ gram @ v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from .errors import NullVectorError, SignatureError

#: Default relative tolerance for rank, symmetry and degeneracy decisions.
DEFAULT_TOL = 1e-9
#: Squared norm below which a Gaussian draw is rejected before normalizing.
REJECT_THRESHOLD = 1e-6


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def _canonical_signs(basis):
    """Flip columns so the entry of largest magnitude in each is positive."""
    basis = np.array(basis, dtype=float)
    if basis.size == 0:
        return basis
    idx = np.argmax(np.abs(basis), axis=0)
    signs = np.sign(basis[idx, np.arange(basis.shape[1])])
    signs[signs == 0] = 1.0
    return basis * signs


@dataclass(frozen=True, eq=False)
class SignatureSpace:
    """R^m with a symmetric non-degenerate Gram matrix of signature (p, q).

    p counts timelike (negative) directions, q spacelike (positive) ones.
    """

    p: int
    q: int
    gram: np.ndarray

    def __post_init__(self):
        gram = _frozen(self.gram)
        object.__setattr__(self, "gram", gram)
        m = self.p + self.q
        if self.p < 0 or self.q < 0 or m < 1:
            raise SignatureError(f"invalid signature ({self.p},{self.q})")
        if gram.shape != (m, m):
            raise SignatureError(f"gram has shape {gram.shape}, expected ({m},{m})")
        if not np.array_equal(gram, gram.T):
            raise SignatureError("gram is not symmetric")
        evals = np.linalg.eigvalsh(gram)
        scale = max(np.max(np.abs(evals)), np.finfo(float).tiny)
        if np.min(np.abs(evals)) <= DEFAULT_TOL * scale:
            raise SignatureError("gram is degenerate")
        n_neg = int(np.sum(evals < 0))
        if n_neg != self.p:
            raise SignatureError(
                f"gram has {n_neg} negative eigenvalues, signature says p={self.p}"
            )

    @classmethod
    def standard(cls, p, q):
        """diag(-1,...,-1,+1,...,+1) with the p timelike coordinates first."""
        return cls(p, q, np.diag([-1.0] * p + [1.0] * q))

    @classmethod
    def from_gram(cls, gram):
        """Infer the signature from an arbitrary symmetric invertible matrix."""
        gram = np.asarray(gram, dtype=float)
        if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
            raise SignatureError("gram must be a square matrix")
        evals = np.linalg.eigvalsh(gram)
        p = int(np.sum(evals < 0))
        return cls(p, gram.shape[0] - p, gram)

    @property
    def dim(self):
        return self.p + self.q

    def check_vector(self, v):
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dim,):
            raise SignatureError(f"vector of shape {v.shape} does not live in R^{self.dim}")
        return v

    def check_matrix(self, A):
        A = np.asarray(A, dtype=float)
        if A.shape != (self.dim, self.dim):
            raise SignatureError(f"matrix of shape {A.shape}, expected ({self.dim},{self.dim})")
        return A

    def transport(self, P):
        """The space seen in new coordinates u = P^{-1} u_old: gram becomes P^T G P."""
        P = self.check_matrix(P)
        g = P.T @ self.gram @ P
        return SignatureSpace(self.p, self.q, (g + g.T) / 2)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace given by the columns of ``basis`` (m x k)."""

    basis: np.ndarray
    induced_gram: np.ndarray

    @classmethod
    def from_basis(cls, space, basis, tol=DEFAULT_TOL):
        basis = np.asarray(basis, dtype=float)
        if basis.ndim == 1:
            basis = basis[:, None]
        if basis.shape[0] != space.dim:
            raise SignatureError(f"basis vectors must have length {space.dim}")
        if basis.shape[1]:
            sv = np.linalg.svd(basis, compute_uv=False)
            if sv[-1] <= tol * max(sv[0], 1.0):
                raise SignatureError("basis vectors are linearly dependent")
        g = basis.T @ space.gram @ basis
        return cls(_frozen(basis), _frozen((g + g.T) / 2))

    @property
    def dim(self):
        return self.basis.shape[1]

    @property
    def vectors(self):
        return [self.basis[:, i] for i in range(self.dim)]

    def signature(self, tol=DEFAULT_TOL):
        """(negative, positive, zero) eigenvalue counts of the induced metric."""
        if self.dim == 0:
            return (0, 0, 0)
        evals = np.linalg.eigvalsh(self.induced_gram)
        cut = tol * max(np.max(np.abs(evals)), 1.0)
        return (int(np.sum(evals < -cut)), int(np.sum(evals > cut)),
                int(np.sum(np.abs(evals) <= cut)))


class CausalType(str, Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    NULL = "null"


def inner(space, u, v):
    """The indefinite inner product u^T G v."""
    u = space.check_vector(u)
    v = space.check_vector(v)
    return float(u @ space.gram @ v)


def causal_type(space, v, tol=DEFAULT_TOL):
    v = space.check_vector(v)
    if not np.any(v):
        raise NullVectorError("the zero vector has no causal type")
    n = inner(space, v, v)
    if n > tol:
        return CausalType.SPACELIKE
    if n < -tol:
        return CausalType.TIMELIKE
    return CausalType.NULL


def sample_unit_spacelike(space, seed, n):
    """Draw n vectors with (x, x) = 1 by rejection from standard normal coordinates.

    Draws with (v, v) <= REJECT_THRESHOLD are discarded so that nothing close
    to the null cone gets blown up by the normalization.
    """
    if space.q < 1:
        raise SignatureError(f"signature ({space.p},{space.q}) has no spacelike vectors")
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        batch = rng.standard_normal((max(2 * (n - len(out)), 8), space.dim))
        norms = np.einsum("ij,jk,ik->i", batch, space.gram, batch)
        for v, s in zip(batch, norms):
            if s > REJECT_THRESHOLD:
                out.append(v / np.sqrt(s))
                if len(out) == n:
                    break
    return out


def adjoint(space, A):
    """G^{-1} A^T G, the adjoint of A for the indefinite inner product."""
    A = space.check_matrix(A)
    return np.linalg.solve(space.gram, A.T @ space.gram)


def is_self_adjoint(space, A, tol=DEFAULT_TOL):
    """True iff G A is symmetric, up to tol relative to max(1, |G A|_max)."""
    GA = space.gram @ space.check_matrix(A)
    scale = max(1.0, np.max(np.abs(GA)))
    return bool(np.max(np.abs(GA - GA.T)) < tol * scale)


def self_adjoint_from_symmetric(space, S):
    """G^{-1} S is self-adjoint whenever S is symmetric; every self-adjoint map arises so."""
    S = space.check_matrix(S)
    return np.linalg.solve(space.gram, (S + S.T) / 2)


def split_spacelike_timelike(space):
    """Orthogonal splitting V = V+ (+) V- into maximal spacelike and timelike parts.

    The Gram matrix is the self-adjoint operator psi relating the indefinite
    product to the Euclidean one, (v, w) = (psi v, w)_e; its positive and
    negative eigenvectors span V+ and V- respectively.
    """
    evals, vecs = np.linalg.eigh(space.gram)
    scale = np.max(np.abs(evals))
    if np.min(np.abs(evals)) <= DEFAULT_TOL * scale:
        raise SignatureError("gram is degenerate")
    plus = _canonical_signs(vecs[:, evals > 0])
    minus = _canonical_signs(vecs[:, evals < 0])
    return Subspace.from_basis(space, plus), Subspace.from_basis(space, minus)


def orthogonal_complement(space, x, tol=DEFAULT_TOL):
    """x^perp = {y : (x, y) = 0} with a Euclidean-orthonormal basis.

    x must be non-null, otherwise x lies in its own complement and the
    induced metric degenerates.
    """
    x = space.check_vector(x)
    if not np.any(x):
        raise NullVectorError("zero vector")
    scale = float(x @ x) * np.max(np.abs(space.gram))
    if abs(inner(space, x, x)) <= tol * scale:
        raise NullVectorError("orthogonal complement of a null vector is degenerate")
    basis = scipy.linalg.null_space((space.gram @ x)[None, :])
    return Subspace.from_basis(space, _canonical_signs(basis))


def span_rank(vectors, tol=DEFAULT_TOL):
    """Numerical rank of the matrix whose columns are ``vectors``."""
    M = np.column_stack(vectors)
    return int(np.linalg.matrix_rank(M, tol=tol * max(1.0, np.linalg.norm(M, 2))))
