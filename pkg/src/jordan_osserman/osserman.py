"""Sampling classification of curvature tensors and the diagonalizability checks.

All tests draw unit spacelike vectors deterministically from ``seed`` and
compare each sample against the first one, so the first mismatch by sample
index is the reported witness. They can falsify constancy, never prove it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .curvature import jacobi_operator, sectional_curvature
from .errors import HypothesisViolation, JordanAmbiguityError, NullVectorError, PreconditionError
from .indefinite import DEFAULT_TOL, sample_unit_spacelike
from .spectral import DEFAULT_CLUSTER_TOL, eigenvalues, jordan_structure

log = logging.getLogger(__name__)

DEFAULT_SAMPLES = 100


class Kind(str, Enum):
    OSSERMAN = "Osserman"
    JORDAN_OSSERMAN = "JordanOsserman"
    NEITHER = "Neither"


@dataclass(frozen=True)
class Witness:
    """Two sample points whose operators disagree."""

    first_index: int
    second_index: int
    first_point: list
    second_point: list
    first: list
    second: list
    what: str

    def to_dict(self):
        return {
            "indices": [self.first_index, self.second_index],
            "points": [self.first_point, self.second_point],
            self.what: [self.first, self.second],
        }


@dataclass(frozen=True)
class OssermanVerdict:
    kind: Kind
    witness: Witness | None
    reference_structure: list | None
    reference_spectrum: list
    samples_used: int
    seed: int
    tol: float
    rank_tol: float

    @property
    def osserman(self):
        return self.kind in (Kind.OSSERMAN, Kind.JORDAN_OSSERMAN)

    @property
    def jordan_osserman(self):
        return self.kind is Kind.JORDAN_OSSERMAN

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "witness": self.witness.to_dict() if self.witness else None,
            "reference_structure": self.reference_structure,
            "reference_spectrum": self.reference_spectrum,
            "samples_used": self.samples_used,
            "seed": self.seed,
            "tolerances": {"cluster": self.tol, "rank": self.rank_tol},
            "note": "sampling test: constancy is checked on the drawn samples only",
        }


def _spectrum_json(evs):
    return [ev.to_dict() for ev in evs]


def _spectra_match(a, b, radius):
    if len(a) != len(b):
        return False
    return all(
        x.multiplicity == y.multiplicity and abs(x.re - y.re) <= radius and abs(x.im - y.im) <= radius
        for x, y in zip(a, b)
    )


def _check_sampling(R, n):
    if n < 2:
        raise ValueError("constancy tests need at least two samples")
    if R.space.q < 1:
        raise PreconditionError("no unit spacelike vectors in signature with q = 0")


@dataclass
class _Sample:
    point: np.ndarray
    matrix: np.ndarray
    scale: float
    spectrum: list
    structure: object = None


def _draw(R, n, seed, tol, rank_tol, with_structure):
    out = []
    for i, x in enumerate(sample_unit_spacelike(R.space, seed, n)):
        M = jacobi_operator(R, x).matrix
        s = _Sample(x, M, float(np.linalg.norm(M, 2)), [])
        if with_structure:
            try:
                s.structure = jordan_structure(R.space, M, rank_tol, tol)
            except JordanAmbiguityError as exc:
                raise JordanAmbiguityError(f"sample {i}: {exc}", sample_index=i) from exc
            s.spectrum = s.structure.eigenvalues
        else:
            s.spectrum = eigenvalues(M, tol, rank_tol)
        out.append(s)
    return out


def _witness(samples, i, what):
    a, b = samples[0], samples[i]
    if what == "structures":
        first, second = a.structure.to_json(), b.structure.to_json()
    else:
        first, second = _spectrum_json(a.spectrum), _spectrum_json(b.spectrum)
    return Witness(0, i, a.point.tolist(), b.point.tolist(), first, second, what)


def _first_mismatch(samples, same):
    ref = samples[0]
    for i, s in enumerate(samples[1:], start=1):
        if not same(ref, s, max(ref.scale, s.scale)):
            return i
    return None


def _classify(samples, seed, tol, rank_tol, jordan):
    def spectra_same(a, b, scale):
        return _spectra_match(a.spectrum, b.spectrum, tol * scale)

    def structures_same(a, b, scale):
        return a.structure.matches(b.structure, tol * scale)

    ref = samples[0]
    common = dict(
        reference_structure=ref.structure.to_json() if jordan else None,
        reference_spectrum=_spectrum_json(ref.spectrum),
        samples_used=len(samples), seed=seed, tol=tol, rank_tol=rank_tol,
    )
    bad_spec = _first_mismatch(samples, spectra_same)
    if bad_spec is not None:
        return OssermanVerdict(Kind.NEITHER, _witness(samples, bad_spec, "spectra"), **common)
    if not jordan:
        return OssermanVerdict(Kind.OSSERMAN, None, **common)
    bad_struct = _first_mismatch(samples, structures_same)
    if bad_struct is not None:
        return OssermanVerdict(Kind.OSSERMAN, _witness(samples, bad_struct, "structures"), **common)
    return OssermanVerdict(Kind.JORDAN_OSSERMAN, None, **common)


def spacelike_osserman_test(R, n=DEFAULT_SAMPLES, seed=0, tol=DEFAULT_CLUSTER_TOL, rank_tol=DEFAULT_TOL):
    """Osserman iff the clustered spectrum of J(x) agrees at all n samples.

    Eigenvalues at two samples are matched when within ``tol`` times the
    larger of the two operator norms, with equal multiplicities.
    """
    _check_sampling(R, n)
    samples = _draw(R, n, seed, tol, rank_tol, with_structure=False)
    return _classify(samples, seed, tol, rank_tol, jordan=False)


def spacelike_jordan_osserman_test(R, n=DEFAULT_SAMPLES, seed=0, tol=DEFAULT_CLUSTER_TOL,
                                   rank_tol=DEFAULT_TOL):
    """JordanOsserman iff the Jordan structure of J(x) agrees at all n samples.

    Falls back to Osserman (with a structure witness) when only the spectra
    agree, and to Neither when they do not.
    """
    _check_sampling(R, n)
    samples = _draw(R, n, seed, tol, rank_tol, with_structure=True)
    return _classify(samples, seed, tol, rank_tol, jordan=True)


@dataclass
class TheoremReport:
    hypothesis_met: bool
    eigenvalues_all_real: bool | None
    diagonalizable_everywhere: bool | None
    verdict: OssermanVerdict
    signature: tuple
    per_sample_details: list = field(default_factory=list)
    counterexample: int | None = None

    @property
    def passed(self):
        """Consistent with the theorem: hypothesis unmet, or both conclusions hold."""
        return not self.hypothesis_met or bool(self.eigenvalues_all_real and self.diagonalizable_everywhere)

    def to_dict(self):
        return {
            "signature": list(self.signature),
            "hypothesis_met": self.hypothesis_met,
            "eigenvalues_all_real": self.eigenvalues_all_real,
            "diagonalizable_everywhere": self.diagonalizable_everywhere,
            "passed": self.passed,
            "counterexample": self.counterexample,
            "verdict": self.verdict.to_dict(),
            "per_sample_details": self.per_sample_details,
        }


def verify_main_theorem(R, n=DEFAULT_SAMPLES, seed=0, tol=DEFAULT_CLUSTER_TOL, rank_tol=DEFAULT_TOL):
    """For p < q: if J is spacelike Jordan Osserman on the samples, check every J(x)
    has only real eigenvalues and only 1 x 1 Jordan blocks.

    For p >= q no such conclusion holds (neutral signature admits arbitrary
    Jordan forms), so the call is refused with HypothesisViolation.
    """
    p, q = R.space.p, R.space.q
    if p >= q:
        raise HypothesisViolation(f"hypothesis p<q violated: signature ({p},{q})")
    _check_sampling(R, n)
    samples = _draw(R, n, seed, tol, rank_tol, with_structure=True)
    verdict = _classify(samples, seed, tol, rank_tol, jordan=True)
    if not verdict.jordan_osserman:
        return TheoremReport(False, None, None, verdict, (p, q))
    details, counterexample = [], None
    for i, s in enumerate(samples):
        st = s.structure
        details.append({
            "index": i,
            "all_real": st.all_real,
            "diagonalizable": st.diagonalizable,
            "max_block": st.max_block,
        })
        if counterexample is None and not st.diagonalizable:
            counterexample = i
            log.warning("sample %d contradicts diagonalizability: %s", i, st.to_json())
    return TheoremReport(
        True,
        all(d["all_real"] for d in details),
        all(d["diagonalizable"] for d in details),
        verdict, (p, q), details, counterexample,
    )


@dataclass(frozen=True)
class LorentzianVerdict:
    constant: bool
    kappa_hat: float
    spread: float
    planes: int
    jordan_osserman: Kind

    @property
    def consistent(self):
        """Jordan-Osserman Lorentzian tensors must have constant sectional curvature."""
        return self.constant or self.jordan_osserman is not Kind.JORDAN_OSSERMAN

    def to_dict(self):
        return {
            "constant": self.constant,
            "kappa_hat": self.kappa_hat,
            "spread": self.spread,
            "planes": self.planes,
            "jordan_osserman_kind": self.jordan_osserman.value,
            "consistent": self.consistent,
        }


def _random_planes(space, rng, n_planes, min_det=1e-2):
    out = []
    while len(out) < n_planes:
        x, y = rng.standard_normal((2, space.dim))
        x /= np.linalg.norm(x)
        y /= np.linalg.norm(y)
        g = space.gram
        det = (x @ g @ x) * (y @ g @ y) - (x @ g @ y) ** 2
        if abs(det) > min_det:
            out.append((x, y))
    return out


def lorentzian_check(R, n_planes=100, seed=0, tol=1e-9, n_samples=DEFAULT_SAMPLES,
                     cluster_tol=DEFAULT_CLUSTER_TOL, rank_tol=DEFAULT_TOL):
    """Sectional curvature spread over random non-degenerate planes, paired with the
    Jordan-Osserman test: in signature (1, q) the latter forces the former constant."""
    if R.space.p != 1:
        raise PreconditionError(f"Lorentzian check needs p = 1, got p = {R.space.p}")
    rng = np.random.default_rng(seed)
    ks = []
    for x, y in _random_planes(R.space, rng, n_planes):
        try:
            ks.append(sectional_curvature(R, x, y))
        except NullVectorError:
            continue
    ks = np.array(ks)
    spread = float(ks.max() - ks.min())
    sjo = spacelike_jordan_osserman_test(R, n_samples, seed, cluster_tol, rank_tol)
    return LorentzianVerdict(spread < tol, float(ks.mean()), spread, len(ks), sjo.kind)


@dataclass(frozen=True)
class EquivalenceVerdict:
    osserman: OssermanVerdict
    jordan_osserman: OssermanVerdict

    @property
    def agree(self):
        return self.osserman.osserman == self.jordan_osserman.jordan_osserman

    def to_dict(self):
        return {
            "osserman": self.osserman.to_dict(),
            "jordan_osserman": self.jordan_osserman.to_dict(),
            "agree": self.agree,
        }


def riemannian_equivalence_check(R, n=DEFAULT_SAMPLES, seed=0, tol=DEFAULT_CLUSTER_TOL,
                                 rank_tol=DEFAULT_TOL):
    """For positive definite metrics, Osserman and Jordan Osserman must coincide."""
    if R.space.p != 0:
        raise PreconditionError(f"Riemannian check needs p = 0, got p = {R.space.p}")
    return EquivalenceVerdict(
        spacelike_osserman_test(R, n, seed, tol, rank_tol),
        spacelike_jordan_osserman_test(R, n, seed, tol, rank_tol),
    )
