"""Numerical invariant suites shared by the CLI and the test suite.

Each suite returns a list of Check records; a suite passes when every
check's residual is within its tolerance.
"""

from dataclasses import dataclass

import numpy as np

from .core import (
    NordenSpace,
    apply_J,
    complex_scale,
    metric_g,
    metric_gt,
    q_value,
)
from .curvature import (
    SpaceFormParams,
    TangentPlane,
    gauss_curvature_from_shape,
    pi_tensors,
    sample_totally_real_planes,
    sectional_batch_planes,
    space_form_curvature,
)
from .hypersurface import (
    adapted_j_rep,
    ambient_shape_operator,
    codazzi_residual,
    lambda_mu,
    make_h_sphere,
    mean_curvature,
    normal_frame,
    normalize_normal_frame,
    sample,
    second_fundamental,
    shape_operator_wrt,
    surface_sample,
    tangent_rep,
    theoretical_curvatures,
)


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float

    @property
    def passed(self):
        return bool(self.residual <= self.tol)


def _random_vectors(rng, count, dim, scale=2.0):
    return rng.uniform(-scale, scale, size=(count, dim))


def suite_metrics(m=4, seed=0, count=1000):
    """Algebraic identities of (g, gt, J) and complex scaling."""
    rng = np.random.default_rng(seed)
    dim = 2 * m
    U = _random_vectors(rng, count, dim)
    V = _random_vectors(rng, count, dim)
    r_anti = r_assoc = r_sym = r_square = 0.0
    for u, v in zip(U, V):
        s = max(1.0, float(u @ u), float(v @ v))
        r_anti = max(
            r_anti,
            abs(metric_g(apply_J(u), apply_J(v)) + metric_g(u, v)) / s,
        )
        r_assoc = max(
            r_assoc, abs(metric_gt(u, v) - metric_g(apply_J(u), v)) / s
        )
        r_sym = max(
            r_sym,
            abs(metric_g(u, v) - metric_g(v, u)) / s,
            abs(metric_gt(u, v) - metric_gt(v, u)) / s,
        )
        c = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        r_square = max(
            r_square,
            abs(q_value(complex_scale(c, u)) - c * c * q_value(u))
            / max(1.0, abs(c) ** 2 * float(u @ u)),
        )
    eig = np.linalg.eigvalsh(NordenSpace(m).metric_matrix())
    r_sig = float(
        np.max(np.abs(np.sort(eig) - np.concatenate([-np.ones(m), np.ones(m)])))
    )
    return [
        Check("anti_isometry g(JZ,JW)=-g(Z,W)", r_anti, 1e-12),
        Check("association gt(Z,W)=g(JZ,W)", r_assoc, 1e-12),
        Check("metric symmetry", r_sym, 1e-12),
        Check("signature (m,m)", r_sig, 0.0),
        Check("complex square law q(cu)=c^2 q(u)", r_square, 1e-12),
    ]


def suite_frame(m=4, seed=0, count=100):
    """Frame normalization yields the canonical normalization
    g(xi,xi) = 1, g(Jxi,Jxi) = -1, g(xi,Jxi) = 0; sphere frames satisfy it."""
    rng = np.random.default_rng(seed)
    sph = make_h_sphere(np.zeros(2 * m), 1.0, 0.0)
    pts = sample(sph, count, seed + 1)
    r_norm = 0.0
    sinh_targets = [0.0, 0.75, -2.0] + list(rng.uniform(-3, 3, size=10))
    for p, s_t in zip(pts, sinh_targets * (count // len(sinh_targets) + 1)):
        fr = normal_frame(sph, p)
        t = -0.5 * np.arcsinh(s_t)  # g(eta, J eta) = -sinh(2t)
        eta = np.cosh(t) * fr.xi + np.sinh(t) * fr.jxi
        xi, jxi = normalize_normal_frame(eta, apply_J(eta))
        r_norm = max(
            r_norm,
            abs(metric_g(xi, xi) - 1.0),
            abs(metric_g(jxi, jxi) + 1.0),
            abs(metric_g(xi, jxi)),
        )
    r_sphere = 0.0
    for p in pts:
        fr = normal_frame(sph, p)
        r_sphere = max(
            r_sphere,
            abs(metric_g(fr.xi, fr.xi) - 1.0),
            abs(metric_g(fr.jxi, fr.jxi) + 1.0),
            abs(metric_g(fr.xi, fr.jxi)),
        )
    return [
        Check("normalized frame satisfies the frame relations", r_norm, 1e-10),
        Check("canonical sphere frame satisfies the frame relations", r_sphere, 1e-10),
    ]


def suite_curvature(a=3.0, b=4.0, m=4, points=20, planes=50, seed=0,
                    fd=False, step=None, tol=None):
    """Sampled totally real sectional curvatures against the closed form."""
    sph = make_h_sphere(np.zeros(2 * m), a, b)
    params = theoretical_curvatures(sph)
    flat = SpaceFormParams(0.0, 0.0)
    r_k = r_kt = 0.0
    for i, p in enumerate(sample(sph, points, seed)):
        smp = surface_sample(sph, p, fd=fd, step=step)
        R = gauss_curvature_from_shape(smp.A, smp.tangent_basis, flat)
        pls = sample_totally_real_planes(
            list(smp.tangent_basis), planes, seed + 1000 + i
        )
        K, Kt = sectional_batch_planes(R, pls)
        r_k = max(r_k, float(np.max(np.abs(K - params.nu))))
        r_kt = max(r_kt, float(np.max(np.abs(Kt - params.nut))))
    tol = tol if tol is not None else (1e-5 if fd else 1e-9)
    return [
        Check(f"max |K - {params.nu:g}|", r_k, tol),
        Check(f"max |Kt - {params.nut:g}|", r_kt, tol),
    ]


def suite_gauss(a=1.0, b=0.0, m=4, seed=0, quads=1000):
    """Gauss-equation tensor from A = lambda I + mu J equals the space form
    with (lambda^2 - mu^2, -2 lambda mu); curvature symmetries hold."""
    sph = make_h_sphere(np.zeros(2 * m), a, b)
    lam, mu = lambda_mu(sph)
    p = sample(sph, 1, seed)[0]
    smp = surface_sample(sph, p)
    flat = SpaceFormParams(0.0, 0.0)
    R = gauss_curvature_from_shape(smp.A, smp.tangent_basis, flat)
    Rsf = space_form_curvature(SpaceFormParams(lam * lam - mu * mu, -2.0 * lam * mu))
    basis = list(smp.tangent_basis)
    rng = np.random.default_rng(seed)
    n2 = len(basis)
    r_eq = r_anti = r_j = 0.0
    for _ in range(quads):
        x, y, z, u = (
            sum(c * t for c, t in zip(rng.uniform(-1, 1, n2), basis))
            for _ in range(4)
        )
        v = R(x, y, z, u)
        scale = max(
            1.0,
            float(np.linalg.norm(x) * np.linalg.norm(y)
                  * np.linalg.norm(z) * np.linalg.norm(u)) ** 2,
        )
        r_eq = max(r_eq, abs(v - Rsf(x, y, z, u)) / scale)
        r_anti = max(
            r_anti,
            abs(v + R(y, x, z, u)) / scale,
            abs(v + R(x, y, u, z)) / scale,
        )
        r_j = max(r_j, abs(v + R(x, y, apply_J(z), apply_J(u))) / scale)
    return [
        Check("Gauss tensor equals space form", r_eq, 1e-9),
        Check("pair antisymmetry", r_anti, 1e-10),
        Check("R(x,y,z,u) = -R(x,y,Jz,Ju)", r_j, 1e-10),
    ]


def suite_sigma(a=3.0, b=4.0, m=4, seed=0, count=200):
    """J-compatibility of the second fundamental form."""
    sph = make_h_sphere(np.zeros(2 * m), a, b)
    p = sample(sph, 1, seed)[0]
    smp = surface_sample(sph, p)
    sigma = second_fundamental(smp, sph.space)
    basis = list(smp.tangent_basis)
    rng = np.random.default_rng(seed)
    n2 = len(basis)
    res = 0.0
    for _ in range(count):
        x = sum(c * t for c, t in zip(rng.uniform(-1, 1, n2), basis))
        y = sum(c * t for c, t in zip(rng.uniform(-1, 1, n2), basis))
        s_xy = sigma(x, y)
        scale = max(1.0, float(np.linalg.norm(x) * np.linalg.norm(y)))
        res = max(
            res,
            float(np.max(np.abs(sigma(x, apply_J(y)) - apply_J(s_xy)))) / scale,
            float(np.max(np.abs(sigma(apply_J(x), y) - apply_J(s_xy)))) / scale,
        )
    return [Check("sigma(x,Jy)=sigma(Jx,y)=J sigma(x,y)", res, 1e-10)]


def suite_ricci(a=1.0, b=0.0, m=4, seed=0):
    """Hypersurface Ricci identity with flat ambient on an h-sphere."""
    from .curvature import ricci

    sph = make_h_sphere(np.zeros(2 * m), a, b)
    p = sample(sph, 1, seed)[0]
    smp = surface_sample(sph, p)
    flat = SpaceFormParams(0.0, 0.0)
    R = gauss_curvature_from_shape(smp.A, smp.tangent_basis, flat)
    basis = list(smp.tangent_basis)
    rho = ricci(R, basis)
    A_amb = ambient_shape_operator(smp, sph.space)
    _, _, J_rep, _ = tangent_rep(smp.tangent_basis, sph.space)
    two_n = len(basis)
    tr_a = float(np.trace(smp.A))
    tr_aj = float(np.trace(smp.A @ J_rep))
    res = 0.0
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            ax = A_amb @ x
            rhs = (
                tr_a * metric_g(ax, y)
                - tr_aj * metric_g(ax, apply_J(y))
                - 2.0 * metric_g(A_amb @ ax, y)
            )
            res = max(res, abs(rho[i, j] - rhs))
    return [Check("Ricci identity (flat ambient)", res, 1e-8)]


def suite_codazzi(a=1.0, b=0.0, m=4, step=1e-4, seed=0):
    """Codazzi symmetry of the FD shape-operator field, plus order check."""
    sph = make_h_sphere(np.zeros(2 * m), a, b)
    p = sample(sph, 1, seed)[0]
    r_at = codazzi_residual(sph, p, step=step)
    # order check in the truncation-dominated regime: each step/4 refinement
    # should cut the residual at least quadratically (factor >= 4 observed
    # margin of the asymptotic 16)
    hs = (1.6e-2, 4e-3, 1e-3)
    rs = [codazzi_residual(sph, p, step=h) for h in hs]
    worst_ratio = max(
        rs[i + 1] / max(rs[i], 1e-300) for i in range(len(rs) - 1)
    )
    return [
        Check(f"Codazzi residual at h={step:g}", r_at, 1e-4),
        Check("second-order decrease (r(h/4)/r(h) <= 1/4)", worst_ratio, 0.25),
    ]


def suite_umbilic(m=4, seed=0):
    """Umbilicity witnesses for the two degenerate mean-curvature cases.

    For (a,b)=(1,0) the sphere is umbilical with respect to xi; for
    (a,b)=(0,1) the mean curvature vector is isotropic and the sphere is
    umbilical with respect to JH (the 'H or JH' alternative resolves to JH
    under the canonical frame orientation).
    """
    res = []
    sph1 = make_h_sphere(np.zeros(2 * m), 1.0, 0.0)
    p = sample(sph1, 1, seed)[0]
    smp = surface_sample(sph1, p)
    a_xi = shape_operator_wrt(smp, sph1.space, smp.frame.xi)
    two_n = a_xi.shape[0]
    dev1 = float(
        np.max(np.abs(a_xi - (np.trace(a_xi) / two_n) * np.eye(two_n)))
    )
    res.append(Check("(1,0): A_xi proportional to I", dev1, 1e-9))

    sph2 = make_h_sphere(np.zeros(2 * m), 0.0, 1.0)
    p = sample(sph2, 1, seed + 1)[0]
    smp = surface_sample(sph2, p)
    mcd = mean_curvature(smp, sph2.space)
    res.append(Check("(0,1): g(H,H) = 0", abs(mcd.gHH), 1e-12))
    devs = []
    for eta in (mcd.H, mcd.JH):
        a_eta = shape_operator_wrt(smp, sph2.space, eta)
        devs.append(
            float(
                np.max(
                    np.abs(a_eta - (np.trace(a_eta) / two_n) * np.eye(two_n))
                )
            )
        )
    res.append(Check("(0,1): A_H or A_JH proportional to I", min(devs), 1e-9))
    return res


SUITES = {
    "metrics": suite_metrics,
    "frame": suite_frame,
    "curvature": suite_curvature,
    "gauss": suite_gauss,
    "sigma": suite_sigma,
    "ricci": suite_ricci,
    "codazzi": suite_codazzi,
    "umbilic": suite_umbilic,
}


def run_suite(name, **params):
    if name == "all":
        checks = []
        for fn in SUITES.values():
            checks.extend(_call_filtered(fn, params))
        return checks
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {sorted(SUITES)} + ['all']")
    return _call_filtered(SUITES[name], params)


def _call_filtered(fn, params):
    import inspect

    sig = inspect.signature(fn)
    kwargs = {k: v for k, v in params.items() if k in sig.parameters and v is not None}
    return fn(**kwargs)
