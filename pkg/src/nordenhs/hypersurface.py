"""Model holomorphic hypersurfaces of the flat Norden space.

Implements the two model surfaces (h-spheres and holomorphic hyperplanes),
point sampling, normal frames, shape operators (closed form and finite
difference), second fundamental form, mean curvature, h-umbilicity and the
Codazzi residual check.
"""

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    NordenSpace,
    apply_J,
    bilinear,
    complex_scale,
    from_complex,
    metric_g,
    metric_gt,
    q_value,
    to_complex,
)
from .curvature import SpaceFormParams
from .errors import (
    BadInputNormalization,
    DegenerateBasis,
    DimensionMismatch,
    GramSchmidtFailure,
    IsotropicParameters,
    PointNotOnSurface,
    SamplingExhausted,
    StepSizeError,
    ZeroCurvatures,
)


@dataclass(frozen=True)
class HSphere:
    """Locus g(Z - z0, Z - z0) = a, gt(Z - z0, Z - z0) = b."""

    space: NordenSpace
    center: np.ndarray
    a: float
    b: float


@dataclass(frozen=True)
class HolomorphicHyperplane:
    """Locus g(xi, Z) = d, gt(xi, Z) = dt with unit normal xi."""

    space: NordenSpace
    xi: np.ndarray
    d: float
    dt: float


@dataclass(frozen=True)
class NormalFrame:
    point: np.ndarray
    xi: np.ndarray
    jxi: np.ndarray


@dataclass(frozen=True)
class SurfaceSample:
    """Second-order record: point, normal frame, tangent basis and the
    shape operator A expressed in tangent-basis coordinates."""

    point: np.ndarray
    frame: NormalFrame
    tangent_basis: tuple
    A: np.ndarray


@dataclass(frozen=True)
class MeanCurvatureData:
    H: np.ndarray
    JH: np.ndarray
    gHH: float
    gtHH: float
    traceA: float
    traceAJ: float


def make_h_sphere(center, a, b):
    center = np.asarray(center, dtype=float)
    if center.ndim != 1 or center.shape[0] % 2 != 0 or center.shape[0] < 4:
        raise DimensionMismatch("center must have even length >= 4")
    if a * a + b * b <= 1e-24:
        raise IsotropicParameters("(a, b) = (0, 0) is not an h-sphere")
    return HSphere(
        space=NordenSpace(center.shape[0] // 2), center=center, a=float(a), b=float(b)
    )


def h_sphere_from_curvatures(nu, nut, center=None, m=4):
    """Sphere with prescribed constant curvatures (nu, nut)."""
    if nu * nu + nut * nut <= 1e-24:
        raise ZeroCurvatures("zero curvatures describe a hyperplane")
    if center is None:
        center = np.zeros(2 * m)
    den = nu * nu + nut * nut
    return make_h_sphere(center, nu / den, -nut / den)


def conjugate(s):
    """Same center and a, with b negated; flips the sign of nut."""
    return HSphere(space=s.space, center=s.center, a=s.a, b=-s.b)


def theoretical_curvatures(s):
    den = s.a * s.a + s.b * s.b
    return SpaceFormParams(nu=s.a / den, nut=-s.b / den)


def lambda_mu(s):
    """The normal-frame coefficients: lambda^2 - mu^2 = a/(a^2+b^2),
    2 lambda mu = b/(a^2+b^2), branch lambda >= 0 (mu >= 0 when lambda = 0).
    """
    r2 = s.a * s.a + s.b * s.b
    r = np.sqrt(r2)
    lam = np.sqrt(max(0.0, (r + s.a) / (2.0 * r2)))
    mu_mag = np.sqrt(max(0.0, (r - s.a) / (2.0 * r2)))
    if lam < 1e-15:
        mu = mu_mag
    elif s.b >= 0:
        mu = mu_mag
    else:
        mu = -mu_mag
    return float(lam), float(mu)


def containment_residual(s, p):
    w = np.asarray(p, dtype=float) - s.center
    return metric_g(w, w) - s.a, metric_gt(w, w) - s.b


def contains(s, p, tol=1e-8):
    rg, rgt = containment_residual(s, p)
    scale = abs(s.a) + abs(s.b) + float((np.asarray(p) - s.center) @ (np.asarray(p) - s.center))
    return max(abs(rg), abs(rgt)) <= tol * max(scale, 1.0)


def project_to_sphere(s, p):
    """Rescale p - z0 by the complex factor landing exactly on the quadric."""
    w = np.asarray(p, dtype=float) - s.center
    q = q_value(w)
    if abs(q) < 1e-10 * max(float(w @ w), 1e-300):
        raise SamplingExhausted("isotropic direction cannot be projected")
    c = np.sqrt(complex(s.a, s.b) / q)
    return s.center + complex_scale(c, w)


def sample(s, count, seed):
    """Draw `count` points on the sphere by Gaussian directions rescaled
    onto the quadric.  Deterministic per seed."""
    rng = np.random.default_rng(seed)
    out = []
    attempts = 0
    bound = 100 * max(count, 1) + 100
    while len(out) < count:
        attempts += 1
        if attempts > bound:
            raise SamplingExhausted("sphere sampling rejection bound exceeded")
        w = rng.standard_normal(s.space.dim)
        q = q_value(w)
        if abs(q) < 1e-10 * float(w @ w):
            continue
        c = np.sqrt(complex(s.a, s.b) / q)
        out.append(s.center + complex_scale(c, w))
    return out


def normal_frame(s, p, tol=1e-8):
    """Canonical frame xi = -lambda Z - mu JZ, Z = p - z0."""
    p = np.asarray(p, dtype=float)
    if not contains(s, p, tol=tol):
        rg, rgt = containment_residual(s, p)
        raise PointNotOnSurface(f"residuals g: {rg:.3e}, gt: {rgt:.3e}")
    lam, mu = lambda_mu(s)
    Z = p - s.center
    xi = -lam * Z - mu * apply_J(Z)
    return NormalFrame(point=p, xi=xi, jxi=apply_J(xi))


def normalize_normal_frame(eta, jeta, tol=1e-8):
    """Rotate a pair (eta, J eta) with g(eta,eta)=1 into a frame satisfying
    g(xi,xi) = -g(Jxi,Jxi) = 1 and g(xi,Jxi) = 0."""
    eta = np.asarray(eta, dtype=float)
    jeta = np.asarray(jeta, dtype=float)
    if np.max(np.abs(jeta - apply_J(eta))) > tol * max(1.0, float(np.max(np.abs(eta)))):
        raise BadInputNormalization("second vector is not J of the first")
    if abs(metric_g(eta, eta) - 1.0) > tol or abs(metric_g(jeta, jeta) + 1.0) > tol:
        raise BadInputNormalization("eta is not g-unit")
    sinh_t = metric_gt(eta, eta)  # g(eta, J eta) = gt(eta, eta)
    t = np.arcsinh(sinh_t)
    ch = np.cosh(t)
    xi = (np.cosh(t / 2.0) * eta + np.sinh(t / 2.0) * jeta) / ch
    return xi, apply_J(xi)


def _complement_basis_complex(zeta, m, max_retries=8):
    """Complex (m-1)-basis of the bilinear-orthogonal complement of zeta,
    orthonormal for the bilinear form."""
    from .core import bilinear_orthonormalize
    from .errors import NotHDiagonalizable

    qz = bilinear(zeta, zeta)
    if abs(qz) < 1e-12 * float(np.real(np.vdot(zeta, zeta))):
        raise DegenerateBasis("isotropic normal direction")
    rng = np.random.default_rng(0xBA5E)
    for attempt in range(max_retries):
        if attempt == 0:
            cand = [np.eye(m, dtype=complex)[:, j] for j in range(m)]
        else:
            cand = [
                rng.standard_normal(m) + 1j * rng.standard_normal(m)
                for _ in range(m)
            ]
        proj = [v - (bilinear(v, zeta) / qz) * zeta for v in cand]
        # drop the direction most aligned with zeta
        drop = int(np.argmax([abs(bilinear(c, zeta)) for c in cand]))
        proj.pop(drop)
        try:
            return bilinear_orthonormalize(np.column_stack(proj))
        except NotHDiagonalizable:
            continue
    raise GramSchmidtFailure("could not build an anisotropic complement basis")


def tangent_adapted_basis(s, p, tol=1e-8):
    """Adapted basis of the tangent space at p: 2(m-1) vectors orthogonal
    to p - z0 and J(p - z0)."""
    p = np.asarray(p, dtype=float)
    if not contains(s, p, tol=tol):
        raise PointNotOnSurface("point fails the quadric equations")
    zeta = to_complex(p - s.center)
    zs = _complement_basis_complex(zeta, s.space.m)
    xs = [from_complex(z) for z in zs]
    return xs + [apply_J(x) for x in xs]


def adapted_j_rep(n):
    """Representation of J in an adapted basis (t_1..t_n, Jt_1..Jt_n)."""
    J = np.zeros((2 * n, 2 * n))
    J[n:, :n] = np.eye(n)
    J[:n, n:] = -np.eye(n)
    return J


def tangent_rep(tangent_basis, space):
    """(T, coords, J_rep, G_t) for a general tangent basis."""
    T = np.column_stack([np.asarray(t, dtype=float) for t in tangent_basis])
    G = space.metric_matrix()
    Gt = T.T @ G @ T
    if abs(np.linalg.det(Gt)) < 1e-12:
        raise DegenerateBasis("tangent basis g-degenerate")
    coords = np.linalg.solve(Gt, T.T @ G)
    J_rep = coords @ space.j_matrix() @ T
    return T, coords, J_rep, Gt


def shape_operator_closed(s):
    """(lambda, mu) presenting A = lambda I + mu J on the tangent space."""
    return lambda_mu(s)


def default_fd_step(s, p):
    return 1e-5 * (1.0 + float(np.linalg.norm(np.asarray(p) - s.center)))


def shape_operator_fd(s, p, tangent_basis, step=None):
    """Central-difference Weingarten map in tangent-basis coordinates.

    Moves along each basis direction, re-projects onto the quadric by the
    exact complex rescaling, differentiates the canonical normal field and
    projects back onto the tangent space.
    """
    p = np.asarray(p, dtype=float)
    h = default_fd_step(s, p) if step is None else float(step)
    scale = 1.0 + float(np.linalg.norm(p - s.center))
    if h <= 1e-12 * scale:
        raise StepSizeError(f"step {h:.3e} too small")
    if h > 0.05 * scale:
        raise StepSizeError(f"step {h:.3e} too large")
    T, coords, _, _ = tangent_rep(tangent_basis, s.space)
    cols = []
    for t in tangent_basis:
        t = np.asarray(t, dtype=float)
        qp = project_to_sphere(s, p + h * t)
        qm = project_to_sphere(s, p - h * t)
        dxi = (normal_frame(s, qp).xi - normal_frame(s, qm).xi) / (2.0 * h)
        cols.append(coords @ (-dxi))
    return np.column_stack(cols)


def surface_sample(s, p, fd=False, step=None, tol=1e-8):
    """Full second-order record at a point of an h-sphere."""
    p = np.asarray(p, dtype=float)
    frame = normal_frame(s, p, tol=tol)
    basis = tangent_adapted_basis(s, p, tol=tol)
    n = len(basis) // 2
    if fd:
        A = shape_operator_fd(s, p, basis, step=step)
    else:
        lam, mu = lambda_mu(s)
        A = lam * np.eye(2 * n) + mu * adapted_j_rep(n)
    return SurfaceSample(point=p, frame=frame, tangent_basis=tuple(basis), A=A)


def make_surface_samples(s, count, seed, fd=False, step=None):
    return [surface_sample(s, p, fd=fd, step=step) for p in sample(s, count, seed)]


def ambient_shape_operator(sample, space):
    """A as an operator on ambient tangent vectors."""
    T, coords, _, _ = tangent_rep(sample.tangent_basis, space)
    return T @ sample.A @ coords


def second_fundamental(sample, space):
    """sigma(x, y) = g(Ax, y) xi - gt(Ax, y) J xi for ambient tangent x, y."""
    A_amb = ambient_shape_operator(sample, space)
    xi = sample.frame.xi
    jxi = sample.frame.jxi

    def sigma(x, y):
        ax = A_amb @ np.asarray(x, dtype=float)
        return metric_g(ax, y) * xi - metric_gt(ax, y) * jxi

    return sigma


def shape_operator_wrt(sample, space, eta, tol=1e-8):
    """Shape operator with respect to an arbitrary normal vector eta:
    A_eta = g(xi, eta) A - g(Jxi, eta) (J o A)."""
    eta = np.asarray(eta, dtype=float)
    scale = max(1.0, float(np.max(np.abs(eta))))
    for t in sample.tangent_basis:
        if abs(metric_g(eta, t)) > tol * scale * max(1.0, float(np.max(np.abs(t)))):
            raise DimensionMismatch("eta is not normal to the tangent space")
    _, _, J_rep, _ = tangent_rep(sample.tangent_basis, space)
    c1 = metric_g(sample.frame.xi, eta)
    c2 = metric_g(sample.frame.jxi, eta)
    return c1 * sample.A - c2 * (J_rep @ sample.A)


def mean_curvature(sample, space):
    """Mean curvature vector and its Norden norms per the trace formulas."""
    _, _, J_rep, _ = tangent_rep(sample.tangent_basis, space)
    two_n = sample.A.shape[0]
    tr_a = float(np.trace(sample.A))
    tr_aj = float(np.trace(sample.A @ J_rep))
    H = (tr_a * sample.frame.xi - tr_aj * sample.frame.jxi) / two_n
    return MeanCurvatureData(
        H=H,
        JH=apply_J(H),
        gHH=(tr_a / two_n) ** 2 - (tr_aj / two_n) ** 2,
        gtHH=2.0 * (tr_a / two_n) * (tr_aj / two_n),
        traceA=tr_a,
        traceAJ=tr_aj,
    )


def h_umbilicity_deviation(A, J_rep):
    """Max-norm distance of A from (trA/2n) I - (tr(AoJ)/2n) J."""
    two_n = A.shape[0]
    tr_a = np.trace(A)
    tr_aj = np.trace(A @ J_rep)
    model = (tr_a / two_n) * np.eye(two_n) - (tr_aj / two_n) * J_rep
    return float(np.max(np.abs(A - model)))


def is_h_umbilical(sample, space, tol=1e-8):
    _, _, J_rep, _ = tangent_rep(sample.tangent_basis, space)
    scale = max(1.0, float(np.max(np.abs(sample.A))))
    return h_umbilicity_deviation(sample.A, J_rep) <= tol * scale


def _tangential_projection(frame):
    """Projector onto the tangent space given a canonical normal frame."""
    xi = frame.xi
    jxi = frame.jxi

    def proj(v):
        return v - metric_g(v, xi) * xi + metric_g(v, jxi) * jxi

    return proj


def codazzi_residual(s, p, step=1e-4, inner_step=None):
    """Max over tangent basis pairs of ||(grad_x A) y - (grad_y A) x||.

    The shape-operator field is estimated by finite differences of the FD
    Weingarten map; for h-spheres the analytic value is zero.  By default
    the inner Weingarten step is tied to the outer step so the truncation
    error of the A-field varies smoothly with h and the residual shows its
    second-order decrease before hitting round-off.
    """
    if inner_step is None:
        inner_step = float(step)
    p = np.asarray(p, dtype=float)
    basis = tangent_adapted_basis(s, p)
    proj_p = _tangential_projection(normal_frame(s, p))
    sample_p = surface_sample(s, p, fd=True, step=inner_step)
    A_p = ambient_shape_operator(sample_p, s.space)
    h = float(step)

    # per direction: projected points, ambient A there, tangential projectors
    data = []
    for t in basis:
        qp = project_to_sphere(s, p + h * np.asarray(t))
        qm = project_to_sphere(s, p - h * np.asarray(t))
        sp_ = surface_sample(s, qp, fd=True, step=inner_step)
        sm_ = surface_sample(s, qm, fd=True, step=inner_step)
        data.append(
            (
                ambient_shape_operator(sp_, s.space),
                ambient_shape_operator(sm_, s.space),
                _tangential_projection(sp_.frame),
                _tangential_projection(sm_.frame),
            )
        )

    def nabla_A(i, y):
        """(grad_{t_i} A) y via the extension of y by tangential projection."""
        Ap_, Am_, projp, projm = data[i]
        y = np.asarray(y, dtype=float)
        yp = projp(y)
        ym = projm(y)
        d_ay = (Ap_ @ yp - Am_ @ ym) / (2.0 * h)
        d_y = (yp - ym) / (2.0 * h)
        return proj_p(d_ay) - A_p @ proj_p(d_y)

    res = 0.0
    n2 = len(basis)
    for i in range(n2):
        for j in range(i + 1, n2):
            r = nabla_A(i, basis[j]) - nabla_A(j, basis[i])
            res = max(res, float(np.max(np.abs(r))))
    return res


# ---------------------------------------------------------------------------
# holomorphic hyperplanes
# ---------------------------------------------------------------------------

def make_hyperplane(xi, d, dt, tol=1e-9):
    xi = np.asarray(xi, dtype=float)
    if xi.ndim != 1 or xi.shape[0] % 2 != 0:
        raise DimensionMismatch("xi must have even length")
    g = metric_g(xi, xi)
    if g <= 0:
        raise DegenerateBasis("normal must have positive g-square")
    xi = xi / np.sqrt(g)
    return HolomorphicHyperplane(
        space=NordenSpace(xi.shape[0] // 2), xi=xi, d=float(d), dt=float(dt)
    )


def hyperplane_base_point(hp):
    """A point on the plane: d xi - dt J xi."""
    return hp.d * hp.xi - hp.dt * apply_J(hp.xi)


def hyperplane_tangent_basis(hp):
    """Adapted basis of the (constant) tangent space."""
    zeta = to_complex(hp.xi)
    zs = _complement_basis_complex(zeta, hp.space.m)
    xs = [from_complex(z) for z in zs]
    return xs + [apply_J(x) for x in xs]


def hyperplane_samples(hp, count, seed, spread=2.0):
    """Totally geodesic samples (A = 0) of a holomorphic hyperplane."""
    rng = np.random.default_rng(seed)
    base = hyperplane_base_point(hp)
    basis = hyperplane_tangent_basis(hp)
    n = len(basis) // 2
    frame_xi = hp.xi
    out = []
    for _ in range(count):
        coeffs = rng.uniform(-spread, spread, size=len(basis))
        p = base + sum(c * t for c, t in zip(coeffs, basis))
        frame = NormalFrame(point=p, xi=frame_xi, jxi=apply_J(frame_xi))
        out.append(
            SurfaceSample(
                point=p,
                frame=frame,
                tangent_basis=tuple(basis),
                A=np.zeros((2 * n, 2 * n)),
            )
        )
    return out
