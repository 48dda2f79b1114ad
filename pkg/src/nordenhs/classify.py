"""Classification pipeline for sampled holomorphic hypersurface data.

Estimates pointwise invariants from second-order samples, tests constancy
and h-umbilicity, and reconstructs the h-sphere center/parameters or the
hyperplane normal data.
"""

from dataclasses import dataclass

import numpy as np

from .core import NordenSpace, apply_J, metric_g, metric_gt
from .errors import (
    EmptySampleSet,
    NearZeroLambdaMu,
    NonConstantNormal,
)
from .hypersurface import (
    HSphere,
    HolomorphicHyperplane,
    containment_residual,
    h_umbilicity_deviation,
    make_hyperplane,
    tangent_rep,
)

VERDICT_SPHERE = "HSphere"
VERDICT_HYPERPLANE = "HolomorphicHyperplane"
VERDICT_NOT_UMBILICAL = "NotHUmbilical"
VERDICT_NON_CONSTANT = "NonConstantInvariants"
VERDICT_DIM_TOO_SMALL = "DimensionTooSmall"

LAMBDA_MU_THRESHOLD = 1e-10


@dataclass(frozen=True)
class SampleSet:
    space: NordenSpace
    samples: tuple
    provenance: str = ""


@dataclass(frozen=True)
class Tolerances:
    constancy: float = 1e-6
    umbilicity: float = 1e-6
    containment: float = 1e-6
    normal_spread: float = 1e-6


@dataclass(frozen=True)
class ClassificationResult:
    verdict: str
    recovered: object = None
    per_sample: tuple = ()
    containment_residual: float = float("nan")
    umbilicity_residual: float = float("nan")
    constancy_spread: float = float("nan")
    totally_geodesic: bool = False
    notes: tuple = ()


def estimate_invariants(sample, space):
    """(lambda, mu, nu, nut) from the traces of the shape operator."""
    _, _, J_rep, _ = tangent_rep(sample.tangent_basis, space)
    two_n = sample.A.shape[0]
    lam = float(np.trace(sample.A)) / two_n
    mu = -float(np.trace(sample.A @ J_rep)) / two_n
    return lam, mu, lam * lam - mu * mu, -2.0 * lam * mu


def umbilicity_check(sample_set, tol=1e-6):
    """Per-sample h-umbilicity deviations; (passed, deviations, worst_index)."""
    if len(sample_set.samples) == 0:
        raise EmptySampleSet("no samples")
    devs = []
    for smp in sample_set.samples:
        _, _, J_rep, _ = tangent_rep(smp.tangent_basis, sample_set.space)
        scale = max(1.0, float(np.max(np.abs(smp.A))))
        devs.append(h_umbilicity_deviation(smp.A, J_rep) / scale)
    devs = np.array(devs)
    worst = int(np.argmax(devs))
    return bool(devs[worst] <= tol), devs, worst


def pair_crosscheck(pairs, ambient, observed):
    """Max residual of the cross-pair compatibility relations

        nu' - nu  = mu_j mu_k - lambda_j lambda_k
        nut' - nut = lambda_j mu_k + lambda_k mu_j   (j != k).
    """
    pairs = [(float(l), float(m)) for l, m in pairs]
    if len(pairs) < 2:
        raise EmptySampleSet("need at least two (lambda, mu) pairs")
    res = 0.0
    for j in range(len(pairs)):
        for k in range(len(pairs)):
            if j == k:
                continue
            lj, mj = pairs[j]
            lk, mk = pairs[k]
            r1 = (ambient.nu - observed.nu) - (mj * mk - lj * lk)
            r2 = (ambient.nut - observed.nut) - (lj * mk + lk * mj)
            res = max(res, abs(r1), abs(r2))
    return res


def reconstruct_sphere(lam, mu, witness):
    """Center and parameters from the conserved field xi + lambda Z + mu JZ."""
    den = lam * lam + mu * mu
    if den <= LAMBDA_MU_THRESHOLD:
        raise NearZeroLambdaMu("lambda^2 + mu^2 below threshold")
    Z = np.asarray(witness.point, dtype=float)
    C = witness.frame.xi + lam * Z + mu * apply_J(Z)
    z0 = (lam * C - mu * apply_J(C)) / den
    a = (lam * lam - mu * mu) / (den * den)
    b = 2.0 * lam * mu / (den * den)
    return HSphere(
        space=NordenSpace(Z.shape[0] // 2), center=z0, a=float(a), b=float(b)
    )


def reconstruct_hyperplane(sample_set, tol=1e-6):
    """Average the (constant) normal field and the plane offsets."""
    samples = sample_set.samples
    if len(samples) == 0:
        raise EmptySampleSet("no samples")
    xi0 = samples[0].frame.xi
    xis = []
    for smp in samples:
        xi = smp.frame.xi
        if float(xi @ xi0) < 0:
            xi = -xi
        xis.append(xi)
    xis = np.stack(xis)
    xi_mean = xis.mean(axis=0)
    spread = float(np.max(np.abs(xis - xi_mean)))
    if spread > tol:
        raise NonConstantNormal(f"normal spread {spread:.3e} exceeds tol")
    nrm = metric_g(xi_mean, xi_mean)
    xi_mean = xi_mean / np.sqrt(nrm)
    ds = [metric_g(xi_mean, smp.point) for smp in samples]
    dts = [metric_gt(xi_mean, smp.point) for smp in samples]
    d_spread = max(
        float(np.max(ds) - np.min(ds)), float(np.max(dts) - np.min(dts))
    )
    if d_spread > tol * max(1.0, float(np.max(np.abs(ds + dts)))):
        raise NonConstantNormal(f"offset spread {d_spread:.3e} exceeds tol")
    return make_hyperplane(xi_mean, float(np.mean(ds)), float(np.mean(dts)))


def classify(sample_set, tolerances=None):
    """Full pipeline: dimension gate, invariant estimation, constancy and
    umbilicity tests, then sphere or hyperplane reconstruction."""
    tols = tolerances or Tolerances()
    space = sample_set.space
    if space.dim < 8:
        return ClassificationResult(
            verdict=VERDICT_DIM_TOO_SMALL,
            notes=(f"ambient dimension {space.dim} < 8",),
        )
    if len(sample_set.samples) == 0:
        raise EmptySampleSet("no samples")

    per = [estimate_invariants(s, space) for s in sample_set.samples]
    nus = np.array([p[2] for p in per])
    nuts = np.array([p[3] for p in per])
    spread = max(
        float(np.max(np.abs(nus - nus.mean()))),
        float(np.max(np.abs(nuts - nuts.mean()))),
    )
    if spread > tols.constancy:
        return ClassificationResult(
            verdict=VERDICT_NON_CONSTANT,
            per_sample=tuple(per),
            constancy_spread=spread,
        )

    ok, devs, worst = umbilicity_check(sample_set, tol=tols.umbilicity)
    umb_res = float(np.max(devs))
    if not ok:
        return ClassificationResult(
            verdict=VERDICT_NOT_UMBILICAL,
            per_sample=tuple(per),
            umbilicity_residual=umb_res,
            constancy_spread=spread,
            notes=(f"worst sample index {worst}",),
        )

    lam = float(np.mean([p[0] for p in per]))
    mu = float(np.mean([p[1] for p in per]))
    nu = float(nus.mean())
    nut = float(nuts.mean())
    geodesic = max(
        float(np.max(np.abs(s.A))) for s in sample_set.samples
    ) <= tols.umbilicity
    notes = []
    if geodesic:
        notes.append("totally geodesic (A = 0): curvatures equal ambient (0, 0)")

    if lam * lam + mu * mu > LAMBDA_MU_THRESHOLD:
        witness = sample_set.samples[int(np.argmin(devs))]
        sphere = reconstruct_sphere(lam, mu, witness)
        cres = 0.0
        for smp in sample_set.samples:
            rg, rgt = containment_residual(sphere, smp.point)
            cres = max(cres, abs(rg), abs(rgt))
        den = nu * nu + nut * nut
        if den > 0:
            notes.append(
                "curvature-route parameters: "
                f"a={nu / den:.12g}, b={-nut / den:.12g}"
            )
        return ClassificationResult(
            verdict=VERDICT_SPHERE,
            recovered=sphere,
            per_sample=tuple(per),
            containment_residual=cres,
            umbilicity_residual=umb_res,
            constancy_spread=spread,
            totally_geodesic=geodesic,
            notes=tuple(notes),
        )

    plane = reconstruct_hyperplane(sample_set, tol=tols.normal_spread)
    cres = 0.0
    for smp in sample_set.samples:
        cres = max(
            cres,
            abs(metric_g(plane.xi, smp.point) - plane.d),
            abs(metric_gt(plane.xi, smp.point) - plane.dt),
        )
    return ClassificationResult(
        verdict=VERDICT_HYPERPLANE,
        recovered=plane,
        per_sample=tuple(per),
        containment_residual=cres,
        umbilicity_residual=umb_res,
        constancy_spread=spread,
        totally_geodesic=geodesic,
        notes=tuple(notes),
    )
