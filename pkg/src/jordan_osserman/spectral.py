"""Spectral and Jordan analysis of operators on indefinite inner-product spaces.

Everything stays in real arithmetic. For an eigenvalue lam the real operator

    J_lam = J - re*Id                        (lam real)
    J_lam = (J - lam)(J - conj(lam))         (lam non-real)

carries all the information; its kernel dimensions d_k = dim ker J_lam^k give
the Jordan block sizes (blocks of size >= k number d_k - d_{k-1}, halved for
non-real lam since each complex block occupies two real dimensions).

Kernels of powers are computed by a staircase: with N an orthonormal basis of
ker A^(k-1), ker A^k = ker((I - N N^T) A).  Each rank decision therefore
looks at singular values of A itself, never of a power of A.
"""

from __future__ import annotations

import warnings
from itertools import combinations
from dataclasses import dataclass, field

import numpy as np

from .errors import DecompositionError, JordanAmbiguityError, NotSelfAdjointError, PreconditionError
from .indefinite import DEFAULT_TOL, SignatureSpace, Subspace, is_self_adjoint

#: Relative eigenvalue clustering radius (times the operator 2-norm).
DEFAULT_CLUSTER_TOL = 1e-7
ORTHOGONALITY_TOL = 1e-8
DET_TOL = 1e-10


@dataclass(frozen=True, order=True)
class Eigenvalue:
    """An eigenvalue with im >= 0; a non-real one stands for the conjugate pair.

    ``multiplicity`` is the real dimension of the generalized eigenspace, so it
    is even whenever im > 0.
    """

    re: float
    im: float = 0.0
    multiplicity: int = field(default=1, compare=False)

    def __post_init__(self):
        if self.im < 0:
            raise ValueError("store conjugate pairs by their im >= 0 representative")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        if self.im > 0 and self.multiplicity % 2:
            raise ValueError("a non-real eigenvalue has even real multiplicity")

    @property
    def is_real(self):
        return self.im == 0

    @property
    def value(self):
        return complex(self.re, self.im)

    def to_dict(self):
        return {"re": self.re, "im": self.im, "multiplicity": self.multiplicity}


def as_eigenvalue(lam):
    if isinstance(lam, Eigenvalue):
        return lam
    z = complex(lam)
    if z.imag == 0:
        return Eigenvalue(z.real)
    return Eigenvalue(z.real, abs(z.imag), 2)


@dataclass(frozen=True)
class JordanStructure:
    """Eigenvalues in (re, im) order, each with descending Jordan block sizes."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple((ev, tuple(sorted(sizes, reverse=True))) for ev, sizes in self.blocks)
        blocks = tuple(sorted(blocks, key=lambda b: (b[0].re, b[0].im)))
        for ev, sizes in blocks:
            if not sizes or min(sizes) < 1:
                raise ValueError("each eigenvalue needs at least one block of size >= 1")
        object.__setattr__(self, "blocks", blocks)

    @property
    def dim(self):
        return sum(sum(sizes) * (1 if ev.is_real else 2) for ev, sizes in self.blocks)

    @property
    def eigenvalues(self):
        return [ev for ev, _ in self.blocks]

    @property
    def all_real(self):
        return all(ev.is_real for ev, _ in self.blocks)

    @property
    def max_block(self):
        return max(max(sizes) for _, sizes in self.blocks)

    @property
    def diagonalizable(self):
        """Real-diagonalizable: every eigenvalue real, every block 1 x 1."""
        return self.all_real and self.max_block == 1

    def matches(self, other, radius):
        """Same block data, eigenvalues paired up to ``radius`` in re and im.

        Pairing is by value rather than by position, since two eigenvalues
        with nearly equal real parts may sort either way under rounding.
        """
        if len(self.blocks) != len(other.blocks):
            return False
        unused = list(other.blocks)
        for a, sa in self.blocks:
            for k, (b, sb) in enumerate(unused):
                if sa == sb and abs(a.re - b.re) <= radius and abs(a.im - b.im) <= radius:
                    del unused[k]
                    break
            else:
                return False
        return True

    def to_json(self):
        return [{"re": ev.re, "im": ev.im, "sizes": list(sizes)} for ev, sizes in self.blocks]

    @classmethod
    def from_json(cls, data):
        blocks = []
        for item in data:
            sizes = tuple(int(s) for s in item["sizes"])
            im = float(item.get("im", 0.0))
            mult = sum(sizes) * (2 if im > 0 else 1)
            blocks.append((Eigenvalue(float(item["re"]), im, mult), sizes))
        return cls(tuple(blocks))


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    components: list
    orthogonality_residual: float
    min_abs_det: float

    @property
    def dims(self):
        return [sub.dim for _, sub in self.components]


def lambda_operator(J, lam):
    J = np.asarray(J, dtype=float)
    lam = as_eigenvalue(lam)
    eye = np.eye(J.shape[0])
    if lam.is_real:
        return J - lam.re * eye
    return J @ J - 2 * lam.re * J + (lam.re ** 2 + lam.im ** 2) * eye


def _threshold(J, lam, tol):
    """Singular values at most this count as zero for J_lam.

    Scaled by |J| + |lam| (squared for non-real lam), the size of rounding
    errors in J_lam, and not by |J_lam| itself, which is tiny when J is
    close to a multiple of the identity.
    """
    J = np.asarray(J, dtype=float)
    lam = as_eigenvalue(lam)
    s = np.linalg.norm(J, 2) + abs(lam.value)
    return tol * J.shape[0] * (s if lam.is_real else s * s)


def _kernel_chain(A, thresh, max_steps=None):
    """Kernel dimensions d_1, d_2, ... of powers of A, stopping once stable.

    Returns (dims, basis) with ``basis`` an orthonormal basis of the last kernel.
    """
    m = A.shape[0]
    max_steps = m if max_steps is None else max_steps
    dims = []
    N = np.zeros((m, 0))
    for _ in range(max_steps):
        M = A - N @ (N.T @ A) if N.shape[1] else A
        _, s, vt = np.linalg.svd(M)
        N = vt[s <= thresh].T
        dims.append(N.shape[1])
        if dims[-1] == m or (len(dims) > 1 and dims[-1] == dims[-2]):
            break
    return dims, N


def _chain(J, lam, tol, max_steps=None):
    return _kernel_chain(lambda_operator(J, lam), _threshold(J, lam, tol), max_steps)


def _gen_dim(J, lam, tol):
    return _chain(J, lam, tol)[0][-1]


def _components(ev, idx, t):
    """Single-linkage groups of the points ev[idx], joining pairs at distance <= t."""
    idx = sorted(idx)
    parent = {i: i for i in idx}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in combinations(idx, 2):
        if abs(ev[a] - ev[b]) <= t:
            parent[find(a)] = find(b)
    groups = {}
    for i in idx:
        groups.setdefault(find(i), set()).add(i)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def _linkage_height(ev, group):
    """Smallest t at which the group is single-linkage connected."""
    for t in sorted({abs(ev[a] - ev[b]) for a, b in combinations(group, 2)}):
        if len(_components(ev, group, t)) == 1:
            return t
    return 0.0


def eigenvalues(J, cluster_tol=DEFAULT_CLUSTER_TOL, rank_tol=DEFAULT_TOL):
    """Clustered eigenvalues of a real square matrix, conjugate pairs folded to im >= 0.

    Computed eigenvalues (LAPACK geev) closer than ``cluster_tol * |J|_2``
    always merge (single linkage). A defective eigenvalue of block size k
    splits under rounding into a ring of radius ~ eps^(1/k), usually far
    wider than that, so coarser single-linkage groups (up to
    ``|J|_2 * rank_tol^(1/m)``) are kept whole when their generalized
    eigenspace at the group mean has exactly the group's dimension, and cut
    at their largest linkage edge otherwise. Only the mean of a complete
    group is reliable, which is why the search runs top-down.
    """
    J = np.asarray(J, dtype=float)
    m = J.shape[0]
    ev = np.linalg.eigvals(J)
    scale = np.linalg.norm(J, 2)
    radius = cluster_tol * scale
    cap = max(radius, scale * rank_tol ** (1.0 / m))

    # geev returns each conjugate pair adjacent, positive imaginary part first.
    partner = np.arange(m)
    for i in range(m - 1):
        if ev[i].imag > 0:
            partner[i], partner[i + 1] = i + 1, i

    def self_conjugate(group):
        return frozenset(int(partner[k]) for k in group) == group

    def complete(group):
        mean = complex(np.mean(ev[list(group)]))
        if self_conjugate(group):
            return _gen_dim(J, mean.real, rank_tol) == len(group)
        return _gen_dim(J, as_eigenvalue(mean), rank_tol) == 2 * len(group)

    def split(group):
        if len(group) == 1:
            return [group]
        height = _linkage_height(ev, group)
        if height <= radius or complete(group):
            return [group]
        parts = _components(ev, group, np.nextafter(height, 0.0))
        return [leaf for part in parts for leaf in split(part)]

    out = []
    for top in _components(ev, range(m), cap):
        for group in split(top):
            mean = complex(np.mean(ev[list(group)]))
            if self_conjugate(group):
                out.append(Eigenvalue(mean.real, 0.0, len(group)))
            elif mean.imag > 0:
                out.append(Eigenvalue(mean.real, mean.imag, 2 * len(group)))
    return sorted(out)


def generalized_eigenspace(space, J, lam, tol=DEFAULT_TOL):
    """ker J_lam^m with a Euclidean-orthonormal basis (empty, with a warning, if lam is no eigenvalue)."""
    J = space.check_matrix(J)
    _, N = _chain(J, lam, tol)
    if N.shape[1] == 0:
        warnings.warn(f"{lam} is not an eigenvalue: generalized eigenspace is trivial", stacklevel=2)
    return Subspace.from_basis(space, N)


def _structure_from_dims(lam, dims):
    if not lam.is_real:
        if any(d % 2 for d in dims):
            raise JordanAmbiguityError(
                f"odd kernel dimension {dims} at non-real eigenvalue {lam.value}"
            )
        dims = [d // 2 for d in dims]
    counts = np.diff([0] + list(dims))
    if np.any(counts < 0) or np.any(np.diff(counts) > 0):
        raise JordanAmbiguityError(f"numerically ambiguous Jordan structure: kernel dims {dims}")
    counts = list(counts) + [0]
    sizes = []
    for k in range(1, len(counts)):
        sizes += [k] * int(counts[k - 1] - counts[k])
    return tuple(sorted(sizes, reverse=True))


def jordan_structure(space, J, tol=DEFAULT_TOL, cluster_tol=DEFAULT_CLUSTER_TOL):
    """Conjugacy invariant of J: eigenvalues with their Jordan block sizes."""
    J = space.check_matrix(J)
    blocks = []
    for lam in eigenvalues(J, cluster_tol, tol):
        dims, _ = _chain(J, lam, tol, max_steps=lam.multiplicity + 1)
        if dims[-1] != lam.multiplicity:
            raise JordanAmbiguityError(
                f"numerically ambiguous Jordan structure: generalized eigenspace of "
                f"{lam.value} has dimension {dims[-1]}, eigenvalue count says {lam.multiplicity}"
            )
        blocks.append((lam, _structure_from_dims(lam, dims)))
    return JordanStructure(tuple(blocks))


def is_diagonalizable(space, J, tol=DEFAULT_TOL, cluster_tol=DEFAULT_CLUSTER_TOL):
    return jordan_structure(space, J, tol, cluster_tol).diagonalizable


def full_decomposition(space, J, tol=DEFAULT_TOL, cluster_tol=DEFAULT_CLUSTER_TOL,
                       orth_tol=ORTHOGONALITY_TOL, det_tol=DET_TOL):
    """V as the G-orthogonal direct sum of generalized eigenspaces, each non-degenerate.

    Raises DecompositionError if the pieces fail to be orthogonal (cross
    products above ``orth_tol * |J|_2``) or a piece has |det induced gram|
    <= ``det_tol``; for self-adjoint J either failure means numerical breakdown.
    """
    J = space.check_matrix(J)
    if not is_self_adjoint(space, J, tol):
        raise NotSelfAdjointError("operator is not self-adjoint for this inner product")
    comps = [(lam, generalized_eigenspace(space, J, lam, tol))
             for lam in eigenvalues(J, cluster_tol, tol)]
    total = sum(sub.dim for _, sub in comps)
    if total != space.dim:
        raise DecompositionError(
            f"generalized eigenspaces have total dimension {total}, expected {space.dim}",
            diagnostics={"dims": [sub.dim for _, sub in comps]},
        )
    scale = np.linalg.norm(J, 2)
    residual = 0.0
    for a in range(len(comps)):
        for b in range(a + 1, len(comps)):
            cross = comps[a][1].basis.T @ space.gram @ comps[b][1].basis
            r = float(np.max(np.abs(cross)))
            residual = max(residual, r)
            if r > orth_tol * scale:
                raise DecompositionError(
                    f"generalized eigenspaces {a} and {b} are not orthogonal (residual {r:.3e})",
                    pair=(a, b),
                    diagnostics={"residual": r, "eigenvector_condition": float(np.linalg.cond(
                        np.column_stack([s.basis for _, s in comps])))},
                )
    dets = [abs(float(np.linalg.det(sub.induced_gram))) for _, sub in comps]
    for c, d in enumerate(dets):
        if d <= det_tol:
            raise DecompositionError(
                f"induced metric on generalized eigenspace {c} is degenerate (|det| {d:.3e})",
                component=c, diagnostics={"det": d},
            )
    return SpectralDecomposition(comps, residual, min(dets))


def _column_space(M, thresh):
    u, s, _ = np.linalg.svd(M, full_matrices=False)
    return u[:, s > thresh]


@dataclass(frozen=True, eq=False)
class IsotropicStratum:
    subspace: Subspace
    power: int
    max_gram_entry: float
    isotropic: bool


def isotropic_top_stratum(space, J, lam, tol=DEFAULT_TOL, iso_tol=ORTHOGONALITY_TOL):
    """J_lam^i(E_lam) for the largest i with non-zero image, and its isotropy check.

    Since J_lam^(2i) vanishes on E_lam, (J_lam^i u, J_lam^i v) = (J_lam^(2i) u, v) = 0,
    so for self-adjoint J the image is totally isotropic.
    """
    J = space.check_matrix(J)
    lam = as_eigenvalue(lam)
    A = lambda_operator(J, lam)
    thresh = _threshold(J, lam, tol)
    E = generalized_eigenspace(space, J, lam, tol).basis
    if E.shape[1] == 0:
        raise PreconditionError(f"{lam.value} is not an eigenvalue")
    W, power = E, 0
    while True:
        image = _column_space(A @ W, thresh)
        if image.shape[1] == 0:
            break
        W, power = image, power + 1
    if power == 0:
        raise PreconditionError("no stratum: J_lam vanishes on E_lam, the eigenvalue is semisimple")
    sub = Subspace.from_basis(space, W)
    g = float(np.max(np.abs(sub.induced_gram)))
    return IsotropicStratum(sub, power, g, g < iso_tol)


@dataclass(frozen=True)
class ParaComplexReport:
    eigenvalue: Eigenvalue
    square_residual: float
    dim_spacelike: int
    dim_timelike: int
    self_adjoint: bool

    @property
    def balanced(self):
        return self.dim_spacelike == self.dim_timelike

    def to_dict(self):
        return {
            "eigenvalue": self.eigenvalue.to_dict(),
            "square_residual": self.square_residual,
            "dim_spacelike": self.dim_spacelike,
            "dim_timelike": self.dim_timelike,
            "self_adjoint": self.self_adjoint,
            "balanced": self.balanced,
        }


def para_complex_check(space, J, lam, tol=DEFAULT_TOL):
    """Check that I = (J - re)/im is a square root of -Id on E_lam, and split E_lam.

    For self-adjoint J the map I is a self-adjoint complex structure, which
    sends spacelike vectors to timelike ones, so E_lam must be neutral. A
    definite E_lam (reported as unbalanced) cannot carry one.
    """
    J = space.check_matrix(J)
    lam = as_eigenvalue(lam)
    if lam.is_real:
        raise PreconditionError("para-complex check needs a non-real eigenvalue")
    A = lambda_operator(J, lam)
    E = generalized_eigenspace(space, J, lam, tol)
    if E.dim == 0:
        raise PreconditionError(f"{lam.value} is not an eigenvalue")
    if np.linalg.norm(A @ E.basis, 2) > _threshold(J, lam, tol):
        raise PreconditionError("J_lam does not vanish on E_lam: complex part is not semisimple")
    B = E.basis
    I = B.T @ (J - lam.re * np.eye(space.dim)) @ B / lam.im
    residual = float(np.max(np.abs(I @ I + np.eye(E.dim))))
    neg, pos, _ = E.signature(tol)
    return ParaComplexReport(lam, residual, pos, neg, is_self_adjoint(space, J, tol))


def jordan_matrix(structure):
    """Real Jordan form: lam*I + N blocks, and [[a, b], [-b, a]] blocks with I_2 above for a+bi."""
    pieces = []
    for ev, sizes in structure.blocks:
        for k in sizes:
            N = np.eye(k, k=1)
            if ev.is_real:
                pieces.append(ev.re * np.eye(k) + N)
            else:
                C = np.array([[ev.re, ev.im], [-ev.im, ev.re]])
                pieces.append(np.kron(np.eye(k), C) + np.kron(N, np.eye(2)))
    m = sum(p.shape[0] for p in pieces)
    out = np.zeros((m, m))
    i = 0
    for p in pieces:
        k = p.shape[0]
        out[i:i + k, i:i + k] = p
        i += k
    return out


def rank_sequence(J, lam, kmax):
    """rank(J_lam^k) for k = 1..kmax by explicit powers (a cross-check, not used internally)."""
    A = lambda_operator(J, lam)
    out, P = [], np.eye(A.shape[0])
    for _ in range(kmax):
        P = P @ A
        out.append(int(np.linalg.matrix_rank(P, tol=1e-7 * max(1.0, np.linalg.norm(P, 2)))))
    return out
