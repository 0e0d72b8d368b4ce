"""Numerical verification suites.

Each suite runs one family of identities on seeded random inputs and
returns a :class:`SuiteReport`. The suites back both the ``cwlab verify``
command and the acceptance tests.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from math import pi

import numpy as np

from . import group, hilbert4d, master, matrices, wavelet
from .hilbert4d import CoeffVector, QuadratureSpec, basis_evaluable, basis_indices


@dataclass
class SuiteReport:
    suite: str
    cases: int
    max_residual: float
    tol: float
    passed: bool
    seed: int
    wall_time: float
    config: dict = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{verdict} {self.suite}: cases={self.cases} max_residual={self.max_residual:.3e} "
            f"tol={self.tol:.1e} time={self.wall_time:.2f}s"
        )


def _report(suite, cases, residual, tol, seed, t0, **config) -> SuiteReport:
    residual = float(residual)
    return SuiteReport(
        suite=suite,
        cases=int(cases),
        max_residual=residual,
        tol=float(tol),
        passed=bool(residual <= tol),
        seed=int(seed),
        wall_time=time.perf_counter() - t0,
        config=config,
    )


def _rel(a, b):
    return np.abs(a - b) / np.maximum(np.abs(b), 1e-300)


# random inputs

def matrices_with_radius(rng, n, N, radius):
    """Complex Gaussian ``N x N`` matrices rescaled to spectral radius exactly ``radius``."""
    X = matrices.random_complex(rng, (n, N, N))
    rho = np.max(np.abs(np.linalg.eigvals(X)), axis=-1)
    return X * (radius / rho)[:, None, None]


def convergent_2x2(rng, n, shrink=0.6):
    """``n`` products ``Zt^dag Z`` of shrunken Cartan-domain points.

    They all pass :func:`master.convergence_ok` and have operator norm below
    ``shrink^2``, which keeps the entry-wise character sums well conditioned.
    """
    X = matrices.dagger(interior_points(rng, n, shrink)) @ interior_points(rng, n, shrink)
    if not np.all(master.convergence_ok(X)):
        raise AssertionError("sampled product failed the convergence test")
    return X


def interior_points(rng, n, shrink=0.6):
    """Cartan-domain points ``shrink * Z`` with ``Z`` uniform on the domain."""
    return shrink * hilbert4d.sample_cartan(rng, n)


def random_signal(lam, max_degree, rng):
    return CoeffVector.random(lam, max_degree, rng)


# master theorems

def suite_smt(lam=None, seed=0, tol=1e-8, degree=40, n=100):
    """Classical series ``sum_p t^p trace_sum`` vs ``det(I - X)^-1`` (2x2 and 3x3)."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    res = 0.0
    X2 = convergent_2x2(rng, n)
    res = max(res, np.max(_rel(master.smt_lhs(X2, 1.0, degree), 1 / matrices.det(np.eye(2) - X2))))
    X3 = matrices_with_radius(rng, 5, 3, 0.2)
    d3 = min(degree, 18)
    res = max(res, np.max(_rel(master.smt_lhs(X3, 1.0, d3), 1 / matrices.det(np.eye(3) - X3))))
    return _report("smt", n + 5, res, tol, seed, t0, degree=degree, degree_n3=d3, shrink=0.6)


def suite_emsmt(lam=None, seed=0, tol=1e-8, degree=40, n=100):
    """2x2 extended series vs ``det(I - X)^-lam`` for ``lam`` in {2,3,4,5} (or the given one)."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    lams = [lam] if lam is not None else [2, 3, 4, 5]
    X = convergent_2x2(rng, n)
    exact_base = matrices.det(np.eye(2) - X)
    res = 0.0
    for lm in lams:
        approx = master.extended_smt_lhs_n2(X, 1.0, lm, degree)
        res = max(res, np.max(_rel(approx, exact_base ** (-lm))))
    return _report("emsmt", n * len(lams), res, tol, seed, t0, lambdas=lams, degree=degree, shrink=0.6)


def suite_msmt(lam=None, seed=0, tol=1e-6, degree=18, n=20, N=3, radius=0.4):
    """General-N extended series vs ``det(I - X)^-lam``."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    lams = [lam] if lam is not None else [2, 3, 4]
    X = matrices_with_radius(rng, n, N, radius)
    base = matrices.det(np.eye(N) - X)
    res = 0.0
    per = {}
    for lm in lams:
        r = np.max(_rel(master.msmt_lhs(X, 1.0, lm, degree), base ** (-lm)))
        per[str(lm)] = float(r)
        res = max(res, r)
    return _report("msmt", n * len(lams), res, tol, seed, t0, N=N, lambdas=lams, degree=degree,
                   radius=radius, per_lambda=per)


def suite_coef(seed=0, tol=0.0):
    """Exact agreement of the general coefficient with the N=2 and N=3 closed forms."""
    t0 = time.perf_counter()
    bad = 0
    cases = 0
    for lam in range(2, 9):
        for p in range(11):
            for s2 in range(9):
                cases += 1
                bad += master.msmt_coefficient(2, lam, p, (s2,)) != master.coef2(lam, p, s2)
    for lam in range(2, 7):
        for p in range(9):
            for s2 in range(6):
                for s3 in range(6):
                    cases += 1
                    bad += master.msmt_coefficient(3, lam, p, (s2, s3)) != master.coef3(lam, p, s2, s3)
    return _report("coef", cases, bad, tol, seed, t0, n2_grid="lam<=8,p<=10,s2<=8",
                   n3_grid="lam<=6,p<=8,s2,s3<=5")


def suite_binom(lam=None, seed=0, tol=0.0, degree=12):
    """Exact binomial identity ``F(n) = G(n)``; residual is the largest ``|F - G|``."""
    t0 = time.perf_counter()
    lams = [lam] if lam is not None else range(2, 9)
    worst = 0
    cases = 0
    for lm in lams:
        for p in range(degree + 1):
            for n in range(degree + 1):
                F, G = master.binomial_identity(lm, p, n)
                worst = max(worst, abs(F - G))
                cases += 1
    return _report("binom", cases, float(worst), tol, seed, t0, lambdas=list(lams), p_max=degree, n_max=degree)


# representation functions

def suite_wigner(lam=None, seed=0, tol=1e-10, degree=8, n=20):
    """Homomorphism ``D(XY) = D(X) D(Y)`` and agreement with solid harmonics (N=2)."""
    from .solidharm import solid_block
    from .wigner import wigner_block

    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    X = matrices.random_complex(rng, (n, 2, 2), 0.7)
    Y = matrices.random_complex(rng, (n, 2, 2), 0.7)
    res = 0.0
    for j2 in range(degree + 1):
        lhs = wigner_block(j2, X @ Y)
        rhs = wigner_block(j2, X) @ wigner_block(j2, Y)
        res = max(res, np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(lhs))))
        res = max(res, np.max(np.abs(wigner_block(j2, X) - solid_block(j2, X))))
    return _report("wigner", n * (degree + 1), res, tol, seed, t0, j2_max=degree)


def suite_solid(lam=None, seed=0, tol=1e-10, degree=6, n=10, N=3):
    """Homomorphism of solid-harmonic blocks for 3x3 arguments."""
    from .solidharm import solid_block

    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    X = matrices.random_complex(rng, (n, N, N), 0.5)
    Y = matrices.random_complex(rng, (n, N, N), 0.5)
    res = 0.0
    for p in range(degree + 1):
        lhs = solid_block(p, X @ Y)
        rhs = solid_block(p, X) @ solid_block(p, Y)
        res = max(res, np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(lhs))))
    return _report("solid", n * (degree + 1), res, tol, seed, t0, N=N, p_max=degree)


# group

def _random_pairs(rng, n):
    return [(group.random_element(rng), group.random_element(rng)) for _ in range(n)]


def suite_group(lam=4, seed=0, tol=1e-9, degree=2, n=20):
    """``U(g) U(g') = U(g g')`` pointwise, plus cocycle and constraint residuals."""
    t0 = time.perf_counter()
    lam = 4 if lam is None else lam
    rng = np.random.default_rng(seed)
    res = 0.0
    for g, gp in _random_pairs(rng, n):
        res = max(res, g.constraint_residual(), (g @ gp).constraint_residual())
        phi = random_signal(lam, degree, rng)
        Z = interior_points(rng, 10)
        lhs = hilbert4d.rep_apply(lam, g, hilbert4d.rep_apply(lam, gp, phi))(Z)
        rhs = hilbert4d.rep_apply(lam, g @ gp, phi)(Z)
        res = max(res, np.max(_rel(lhs, rhs)))
        m1 = group.multiplier(g @ gp, Z, lam)
        m2 = group.multiplier(g, Z, lam) * group.multiplier(gp, group.act_cartan(g, Z), lam)
        res = max(res, np.max(_rel(m1, m2)))
    return _report("group", n, res, tol, seed, t0, lam=lam, degree=degree, points_per_pair=10)


def suite_unitarity(lam=4, seed=0, tol=1e-6, degree=2, n=20):
    """Gram matrix of ``U(g) phi_idx`` over degree ``<= degree`` equals the identity."""
    t0 = time.perf_counter()
    lam = 4 if lam is None else lam
    rng = np.random.default_rng(seed)
    idx = basis_indices(degree)
    fs = [basis_evaluable(lam, i) for i in idx]
    res = 0.0
    for g, _ in _random_pairs(rng, n):
        G = hilbert4d.rep_gram_pullback(lam, g, fs, degree=(degree, degree))
        res = max(res, np.max(np.abs(G - np.eye(len(idx)))))
    return _report("unitarity", n, res, tol, seed, t0, lam=lam, degree=degree, basis_size=len(idx))


def suite_cayley(lam=4, seed=0, tol=1e-10, degree=None, n=100):
    """Multiplier and action intertwining between the tube and the Cartan domain.

    For ``g = upsilon(f)`` checks ``cayley(f^-1 . W) = g^-1 . cayley(W)`` and
    ``to_tube(U(g) 1) = V(f) to_tube(1)`` at seeded ``(f, W)``.
    """
    t0 = time.perf_counter()
    lam = 4 if lam is None else lam
    rng = np.random.default_rng(seed)
    res = 0.0
    one = lambda Z: np.ones(np.shape(Z)[:-2], dtype=complex)  # noqa: E731
    for _ in range(n):
        f = group.exp_element(group.random_lie_params(rng))
        g = group.upsilon(f)
        W = group.cayley_inv(interior_points(rng, 1)[0])
        a = group.cayley(group.act_tube(f.inverse(), W))
        b = group.act_cartan(g, group.cayley(W))
        res = max(res, np.max(np.abs(a - b)))
        lhs = hilbert4d.to_tube(lam, hilbert4d.rep_apply(lam, g, one))(W)
        rhs = hilbert4d.tube_rep_apply(lam, f, hilbert4d.to_tube(lam, one))(W)
        res = max(res, float(_rel(lhs, rhs)))
    return _report("cayley", n, res, tol, seed, t0, lam=lam)


# Hilbert space

def suite_ortho(lam=4, seed=0, tol=1e-6, degree=4, radial_nodes=64, angular_nodes=64):
    """Gram matrix of all basis labels of degree ``<= degree`` equals the identity."""
    t0 = time.perf_counter()
    lam = 4 if lam is None else lam
    idx = basis_indices(degree)
    spec = QuadratureSpec(radial_nodes=radial_nodes, angular_nodes=angular_nodes)
    G = hilbert4d.gram_matrix(lam, [basis_evaluable(lam, i) for i in idx], spec=spec)
    res = np.max(np.abs(G - np.eye(len(idx))))
    return _report("ortho", len(idx), res, tol, seed, t0, lam=lam, degree=degree,
                   node_counts=list(hilbert4d.node_counts(lam, degree, degree, spec)),
                   radial_nodes=radial_nodes, angular_nodes=angular_nodes)


def suite_kernel(lam=4, seed=0, tol=1e-8, degree=40, n=50):
    """Truncated kernel series vs the closed-form kernel at interior pairs."""
    t0 = time.perf_counter()
    lam = 4 if lam is None else lam
    rng = np.random.default_rng(seed)
    Z = interior_points(rng, n)
    Zp = interior_points(rng, n)
    approx = hilbert4d.bergman_series(lam, Z, Zp, degree)
    res = np.max(_rel(approx, hilbert4d.bergman_kernel(lam, Z, Zp)))
    return _report("kernel", n, res, tol, seed, t0, lam=lam, degree=degree, shrink=0.6)


def suite_isometry(lam=4, seed=0, tol=1e-6, degree=1, n_pairs=6):
    """Inner products of basis pairs agree between the Cartan domain and the tube."""
    t0 = time.perf_counter()
    lam = 4 if lam is None else lam
    rng = np.random.default_rng(seed)
    idx = basis_indices(degree)
    pairs = [tuple(rng.choice(len(idx), 2)) for _ in range(n_pairs)]
    res = 0.0
    for a, b in pairs:
        fa, fb = basis_evaluable(lam, idx[a]), basis_evaluable(lam, idx[b])
        d = (fa.degree, fb.degree)
        cart = hilbert4d.gram_matrix(lam, [fa], [fb])[0, 0]
        tube = hilbert4d.tube_gram(lam, [hilbert4d.to_tube(lam, fa)], [hilbert4d.to_tube(lam, fb)], degree=d)[0, 0]
        res = max(res, abs(cart - tube))
    return _report("isometry", n_pairs, res, tol, seed, t0, lam=lam, degree=degree,
                   pairs=[[str(idx[a]), str(idx[b])] for a, b in pairs])


def suite_converge(lam=None, seed=0, tol=0.0, degree=None, n=100_000):
    """Domain bounds for sampled ``Z`` and the series test for ``X = Zt^dag Z``; residual counts violations."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    Z = hilbert4d.sample_cartan(rng, n)
    Zt = hilbert4d.sample_cartan(rng, n)
    bad = 0
    for W in (Z, Zt):
        for ok in matrices.cartan_bounds(W).values():
            bad += int(np.count_nonzero(~ok))
    bad += int(np.count_nonzero(~master.convergence_ok(matrices.dagger(Zt) @ Z)))
    return _report("converge", n, bad, tol, seed, t0, samples=n)


def suite_radial(lam=4, seed=0, tol=1e-10, degree=3):
    """Closed-form radial integrals vs quadrature, and the summation identity, for ``j + m <= degree``."""
    t0 = time.perf_counter()
    lam = 4 if lam is None else lam
    res = 0.0
    cases = 0
    for j2 in range(2 * degree + 1):
        for m in range(degree + 1):
            if j2 + 2 * m > 2 * degree:
                continue
            for q2 in range(-j2, j2 + 1, 2):
                cases += 1
                res = max(res, abs(hilbert4d.radial_integral(lam, j2, m, q2)
                                   - hilbert4d.radial_integral_numeric(lam, j2, m, q2)))
            lhs, rhs = hilbert4d.radial_sum_identity(lam, j2, m)
            res = max(res, float(abs(lhs - rhs)))
    return _report("radial", cases, res, tol, seed, t0, lam=lam, jm_max=degree)


# wavelets

def suite_frame(lam=4, seed=0, tol=1e-10, degree=2):
    """Frame matrix over degree ``<= degree`` equals ``c_psi`` times the identity (relative)."""
    t0 = time.perf_counter()
    lam = 4 if lam is None else lam
    idx = basis_indices(degree)
    F = wavelet.frame_matrix(lam, idx)
    c = wavelet.admissibility_constant(lam)
    res = np.max(np.abs(F / c - np.eye(len(idx))))
    return _report("frame", len(idx), res, tol, seed, t0, lam=lam, degree=degree, c_psi=c)


def suite_admissibility(lam=4, seed=0, tol=3.0, n=1_000_000):
    """Closed form ``c_psi`` and the MC estimate of its defining integral; residual in standard errors."""
    t0 = time.perf_counter()
    lam = 4 if lam is None else lam
    est, err = wavelet.admissibility_mc(lam, n, seed)
    exact = 1 / hilbert4d.c_lambda(lam)
    z = abs(est - exact) / err
    closed = wavelet.admissibility_constant(lam)
    cf_err = abs(closed - 4 / 3 * pi**10) / (4 / 3 * pi**10) if lam == 4 else 0.0
    resid = z if cf_err < 1e-14 else np.inf
    return _report("admissibility", n, resid, tol, seed, t0, lam=lam, estimate=est, stderr=err,
                   exact=exact, c_psi=closed, closed_form_rel_err=cf_err)


def suite_recon(lam=4, seed=0, tol=1e-12, degree=4, n_signals=5, n_points=10):
    """Coefficient-space analysis/synthesis roundtrip, relative error at interior points."""
    t0 = time.perf_counter()
    lam = 4 if lam is None else lam
    rng = np.random.default_rng(seed)
    res = 0.0
    for _ in range(n_signals):
        phi = random_signal(lam, degree, rng)
        Z = interior_points(rng, n_points)
        out = wavelet.synthesize(lam, wavelet.analyze(lam, phi), Z)
        res = max(res, np.max(_rel(out, phi(Z))))
    return _report("recon", n_signals * n_points, res, tol, seed, t0, lam=lam, degree=degree)


def suite_recon_mc(lam=4, seed=0, tol=3.0, degree=2, n=400_000, n_points=5):
    """MC group-integral synthesis vs the coefficient path; residual in standard errors."""
    t0 = time.perf_counter()
    lam = 4 if lam is None else lam
    rng = np.random.default_rng(seed)
    phi = random_signal(lam, degree, rng)
    Z = interior_points(rng, n_points)
    Phi = wavelet.analyze(lam, phi)
    exact = wavelet.synthesize(lam, Phi, Z)
    est, err = wavelet.synthesize_mc(lam, Phi, Z, n, seed)
    # real and imaginary parts are tested separately against the per-point error
    z = np.maximum(np.abs((est - exact).real), np.abs((est - exact).imag)) / err
    return _report("recon_mc", n_points, np.max(z), tol, seed, t0, lam=lam, degree=degree, samples=n)


SUITES = {
    "smt": suite_smt,
    "emsmt": suite_emsmt,
    "msmt": suite_msmt,
    "binom": suite_binom,
    "wigner": suite_wigner,
    "solid": suite_solid,
    "group": suite_group,
    "cayley": suite_cayley,
    "ortho": suite_ortho,
    "kernel": suite_kernel,
    "frame": suite_frame,
    "recon": suite_recon,
    "converge": suite_converge,
    "isometry": suite_isometry,
}

EXTRA_SUITES = {
    "coef": suite_coef,
    "unitarity": suite_unitarity,
    "radial": suite_radial,
    "admissibility": suite_admissibility,
    "recon_mc": suite_recon_mc,
}


def run_suite(name: str, **kw) -> SuiteReport:
    fn = SUITES.get(name) or EXTRA_SUITES.get(name)
    if fn is None:
        raise KeyError(name)
    kw = {k: v for k, v in kw.items() if v is not None}
    return fn(**kw)
