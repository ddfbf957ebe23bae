"""Algebraic curvature tensors and their Jacobi operators.

Sign convention: the constant curvature tensor is

    R(x, y, z, w) = kappa * ((x, w)(y, z) - (x, z)(y, w)),

so that at a unit spacelike x the Jacobi operator has eigenvalues kappa
(on x^perp) and 0 (on x), and sectional curvature R(x,y,y,x)/|x ^ y|^2 is kappa.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NullVectorError, SymmetryError
from .indefinite import DEFAULT_TOL, SignatureSpace, _frozen, inner, orthogonal_complement


@dataclass(frozen=True, eq=False)
class AlgebraicCurvatureTensor:
    """Dense m^4 array with entries[a, b, c, d] = R(e_a, e_b, e_c, e_d).

    Construction only checks the shape. Use :meth:`checked` (or the JSON
    loader) for arrays of unknown origin.
    """

    space: SignatureSpace
    entries: np.ndarray

    def __post_init__(self):
        entries = _frozen(self.entries)
        m = self.space.dim
        if entries.shape != (m,) * 4:
            raise ValueError(f"entries have shape {entries.shape}, expected {(m,) * 4}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def checked(cls, space, entries, tol=DEFAULT_TOL):
        R = cls(space, entries)
        report = validate_symmetries(R, tol)
        if not report.passed:
            raise SymmetryError(
                f"curvature symmetries violated (max violation {report.max_violation:.3e})",
                report,
            )
        return R

    def __call__(self, x, y, z, w):
        return float(np.einsum("abcd,a,b,c,d->", self.entries, x, y, z, w))

    def __add__(self, other):
        if not isinstance(other, AlgebraicCurvatureTensor):
            return NotImplemented
        return AlgebraicCurvatureTensor(self.space, self.entries + other.entries)

    def __sub__(self, other):
        if not isinstance(other, AlgebraicCurvatureTensor):
            return NotImplemented
        return AlgebraicCurvatureTensor(self.space, self.entries - other.entries)

    def __mul__(self, t):
        return AlgebraicCurvatureTensor(self.space, float(t) * self.entries)

    __rmul__ = __mul__


@dataclass(frozen=True)
class ValidationReport:
    pair_symmetry: float
    antisymmetry: float
    bianchi: float
    tol: float

    @property
    def max_violation(self):
        return max(self.pair_symmetry, self.antisymmetry, self.bianchi)

    @property
    def passed(self):
        return self.max_violation <= self.tol

    def to_dict(self):
        return {
            "pair_symmetry": self.pair_symmetry,
            "antisymmetry": self.antisymmetry,
            "bianchi": self.bianchi,
            "tol": self.tol,
            "passed": self.passed,
        }


def validate_symmetries(R, tol=DEFAULT_TOL):
    """Max violation of each curvature identity over all basis index tuples.

    The threshold is ``tol * max(1, max|R|)``.
    """
    E = R.entries
    pair = E - np.einsum("cdab->abcd", E)
    anti = E + np.einsum("bacd->abcd", E)
    # R(x,y,z,w) + R(y,z,x,w) + R(z,x,y,w)
    bianchi = E + np.einsum("bcad->abcd", E) + np.einsum("cabd->abcd", E)
    scale = max(1.0, float(np.max(np.abs(E))) if E.size else 0.0)

    def vmax(a):
        return float(np.max(np.abs(a))) if a.size else 0.0

    return ValidationReport(vmax(pair), vmax(anti), vmax(bianchi), tol * scale)


def _from_forms(space, phi, psi):
    """Mixed generator phi(x,w)psi(y,z) + psi(x,w)phi(y,z) - (same with z <-> w)."""
    t1 = np.einsum("ad,bc->abcd", phi, psi) + np.einsum("ad,bc->abcd", psi, phi)
    t2 = np.einsum("ac,bd->abcd", phi, psi) + np.einsum("ac,bd->abcd", psi, phi)
    return AlgebraicCurvatureTensor(space, t1 - t2)


def from_symmetric_form(space, phi):
    """R(x,y,z,w) = phi(x,w)phi(y,z) - phi(x,z)phi(y,w) for a symmetric form phi."""
    phi = space.check_matrix(phi)
    if not np.array_equal(phi, phi.T):
        raise ValueError("phi must be symmetric")
    return AlgebraicCurvatureTensor(
        space,
        np.einsum("ad,bc->abcd", phi, phi) - np.einsum("ac,bd->abcd", phi, phi),
    )


def constant_curvature_tensor(space, kappa):
    return float(kappa) * from_symmetric_form(space, np.array(space.gram))


def perturbed_constant_curvature(space, kappa, eps, u=None):
    """Constant curvature kappa plus eps times the rank-one first-order term.

    The added term is the mixed generator built from G and u u^T. Since the
    rank-one form u u^T alone generates the zero tensor, for kappa = 1 the
    result equals from_symmetric_form(G + eps u u^T) exactly.
    ``u`` defaults to the last basis vector.
    """
    m = space.dim
    if u is None:
        u = np.zeros(m)
        u[-1] = 1.0
    u = space.check_vector(u)
    return constant_curvature_tensor(space, kappa) + float(eps) * _from_forms(
        space, np.array(space.gram), np.outer(u, u)
    )


def stabilize(A, target_dim):
    """A (+) 0: A in the upper-left corner of a target_dim square zero matrix."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    k = A.shape[0]
    if A.shape != (k, k):
        raise ValueError("A must be square")
    if target_dim < k:
        raise ValueError(f"cannot stabilize a {k}x{k} matrix to dimension {target_dim}")
    out = np.zeros((target_dim, target_dim))
    out[:k, :k] = A
    return out


@dataclass(frozen=True, eq=False)
class JacobiOperator:
    base_point: np.ndarray
    matrix: np.ndarray


def jacobi_operator(R, x):
    """The map J(x) with (J(x) y, z) = R(y, x, x, z)."""
    x = R.space.check_vector(x)
    K = np.einsum("bijc,i,j->cb", R.entries, x, x)
    M = np.linalg.solve(R.space.gram, K)
    return JacobiOperator(_frozen(x), _frozen(M))


def reduced_jacobi(R, x):
    """J(x) restricted to x^perp, in the Euclidean-orthonormal basis of the complement.

    J(x) kills x and preserves x^perp, so the full operator is 0 (+) reduced.
    """
    comp = orthogonal_complement(R.space, x)
    M = jacobi_operator(R, x).matrix
    B = comp.basis
    return comp, B.T @ M @ B


def sectional_curvature(R, x, y, tol=DEFAULT_TOL):
    space = R.space
    x = space.check_vector(x)
    y = space.check_vector(y)
    den = inner(space, x, x) * inner(space, y, y) - inner(space, x, y) ** 2
    scale = float(x @ x) * float(y @ y) * np.max(np.abs(space.gram)) ** 2
    if abs(den) <= tol * scale:
        raise NullVectorError("the plane spanned by x and y is degenerate")
    return R(x, y, y, x) / den

