"""
Built-in suite checks.

Each check receives a CheckContext and a CheckResult: ``expect`` records an
assertion, ``finding`` records a printed claim that the measurement does not
reproduce, ``record`` keeps a measured value for the report.
"""

import math
import threading
from functools import lru_cache

import numpy as np

from ..carleson import (
    CarlesonGrid,
    check_ball,
    check_bergman_tube,
    check_hardy_box,
    check_slice_box,
    functional_carleson_test,
    kernel_family,
    monomial_family,
    profile_counterexample,
    rf_inequality_check,
    submean_check,
    transfer_check,
)
from ..constants import COUNTEREXAMPLE_CEILING, COUNTEREXAMPLE_GRID_STEP
from ..covering import cover_tube, covered, disc_lattice, pack_tube
from ..geometry import (
    Region,
    boundary_scale,
    disc_area,
    disc_area_mc,
    rho,
    triangle_defect,
    tube_slice_area,
)
from ..kernels import (
    KernelSpec,
    averaged_H,
    averaged_K,
    bergman_kernel,
    hardy_kernel,
    kernel_consistency,
    kernel_lower_bound,
    kernel_norm_squared,
    kernel_series,
    sphere_average_check,
    womega_defect,
)
from ..measures import Atomic, DirectionLaw, RadialDensity, Rotational, SliceLebesgue, build_counterexample
from ..norms import NormGrid, hardy_norm
from ..quaternion import I_AXIS, embed, qconj, qnorm, same_slice, uniform_ball, uniform_sphere
from ..series import (
    SliceSeries,
    compose_intrinsic,
    eval_series,
    ext_from_slice,
    is_intrinsic,
    split,
    star_eval,
    star_inv,
    star_mul,
    symmetrize,
)
from ..volumes import (
    ball_volume,
    ball_volume_mc,
    distance_sandwich_check,
    fit_exponent,
    gamma_area_check,
    ring_area_check,
    sample_tube,
    sphere_section_check,
    tube_volume,
)
from .registry import register

J_AXIS = np.array([0.0, 1.0, 0.0])
SCALING_YS = (0.70, 0.80, 0.90, 0.95, 0.99)
COVER_YS = (0.6, 0.7, 0.8, 0.9, 0.95)
COVER_RADIUS = 0.2


def _imag(y: float, axis=I_AXIS) -> np.ndarray:
    return embed(0.0, y, np.asarray(axis, dtype=float))


def _random_series(rng: np.random.Generator, degree: int, scale: float = 1.0, decay: float = 1.0) -> SliceSeries:
    coeffs = rng.standard_normal((degree + 1, 4)) * scale * decay ** np.arange(degree + 1)[:, None]
    return SliceSeries(coeffs)


def _grid(ctx) -> CarlesonGrid:
    return CarlesonGrid.from_config(ctx.config.grids)


_COUNTEREXAMPLE_LOCK = threading.Lock()


@lru_cache(maxsize=4)
def _counterexample(r: float, eps: float, tubes: int, grid_step: float, ceiling: float):
    measure = build_counterexample(r, eps, tubes, I_AXIS, grid_step, ceiling)
    return measure, profile_counterexample(measure)


def _counterexample_for(ctx):
    """The configured counterexample measure and its profile, shared across checks."""
    c = ctx.config.counterexample
    # checks run on worker threads; one of them builds, the others wait for the cache
    with _COUNTEREXAMPLE_LOCK:
        return _counterexample(
            float(c.get("r", 0.3)),
            float(c.get("eps", 0.5)),
            int(c.get("tubes", 8)),
            float(c.get("grid_step", COUNTEREXAMPLE_GRID_STEP)),
            float(c.get("ceiling", COUNTEREXAMPLE_CEILING)),
        )


# =============================================================================
# ALGEBRA AND REPRESENTATION
# =============================================================================

@register("algebra")
def check_algebra(ctx, result) -> None:
    rng = ctx.rng()
    n_max = 64

    residue = 0.0
    for _ in range(100):
        f = _random_series(rng, 16, scale=0.2, decay=0.5)
        coeffs = f.coeffs.copy()
        coeffs[0] = [1.0, 0.0, 0.0, 0.0]
        f = SliceSeries(coeffs)
        product = star_mul(f, star_inv(f, n_max), n_max).coeffs[: n_max // 2 + 1].copy()
        product[0, 0] -= 1.0
        residue = max(residue, float(np.max(qnorm(product))))
    result.expect("inverse_residue", residue < 1e-10, residue)

    sym_error = 0.0
    for alpha in uniform_ball(rng, 100, 0.99):
        f = SliceSeries([[1.0, 0.0, 0.0, 0.0], -qconj(alpha)])
        expected = np.zeros((3, 4))
        expected[:, 0] = [1.0, -2.0 * alpha[0], float(np.sum(alpha * alpha))]
        sym_error = max(sym_error, float(np.max(np.abs(symmetrize(f).coeffs - expected))))
    result.expect("symmetrize_error", sym_error < 1e-14, sym_error)

    eval_error = 0.0
    q = uniform_ball(rng, 500, 0.5)
    for _ in range(20):
        f = _random_series(rng, 5, scale=0.5)
        g = _random_series(rng, 5, scale=0.5)
        fq = eval_series(f, q)
        keep = qnorm(fq) > 1e-3
        direct = eval_series(star_mul(f, g), q[keep])
        eval_error = max(eval_error, float(np.max(qnorm(star_eval(f, g, q[keep]) - direct))))
    result.expect("star_eval_error", eval_error < 1e-10, eval_error)


@register("representation")
def check_representation(ctx, result) -> None:
    rng = ctx.rng()
    ext_error = 0.0
    split_error = 0.0
    for _ in range(50):
        f = _random_series(rng, 8)
        J = uniform_sphere(rng, 1)[0]
        q = uniform_ball(rng, 1000, 0.9)
        extension = ext_from_slice(lambda pts: eval_series(f, pts), J)
        ext_error = max(ext_error, float(np.max(qnorm(extension(q) - eval_series(f, q)))))

        I = uniform_sphere(rng, 1)[0]
        K = np.cross(I, uniform_sphere(rng, 1)[0])
        Jp = K / np.linalg.norm(K)
        z = 0.9 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
        pair = split(f, I, Jp)
        on_slice = embed(z.real, z.imag, I)
        split_error = max(split_error, float(np.max(qnorm(pair.evaluate(z) - eval_series(f, on_slice)))))
    result.expect("extension_error", ext_error < 1e-12, ext_error)
    result.expect("split_error", split_error < 1e-12, split_error)

    inner = SliceSeries.real([0.0, 0.5, 0.2])
    q = uniform_ball(rng, 500, 0.6)
    compose_error = 0.0
    for _ in range(10):
        f = _random_series(rng, 6)
        composed = compose_intrinsic(f, inner)
        compose_error = max(compose_error, float(np.max(qnorm(composed(q) - eval_series(f, inner(q))))))
    result.expect("compose_error", compose_error < 1e-12, compose_error)

    seed = ctx.seeds(1)[0]
    real = is_intrinsic(SliceSeries.real([1.0, -0.3, 0.2]), seed=seed)
    result.expect("real_series_intrinsic", real.intrinsic, real.defect)
    qj = is_intrinsic(SliceSeries.monomial(1, [0.0, 0.0, 1.0, 0.0]), seed=seed)
    result.expect("qj_not_intrinsic", not qj.intrinsic, qj.defect)


# =============================================================================
# KERNELS
# =============================================================================

@register("kernels")
def check_kernels(ctx, result) -> None:
    rng = ctx.rng()
    q = uniform_ball(rng, 500, 0.7)
    w = uniform_ball(rng, 500, 0.7)

    series_error, bergman_error, conj_error = 0.0, 0.0, 0.0
    for qi, wi in zip(q, w):
        series_error = max(series_error, float(qnorm(kernel_series(wi, "hardy", 200)(qi) - hardy_kernel(qi, wi))))
        bergman_error = max(bergman_error,
                            float(qnorm(kernel_series(wi, "bergman", 200)(qi) - bergman_kernel(qi, wi))))
        conj_error = max(conj_error, float(qnorm(qconj(hardy_kernel(qi, wi)) - hardy_kernel(wi, qi))))
    result.expect("hardy_series_error", series_error < 1e-10, series_error)
    result.expect("bergman_series_error", bergman_error < 1e-10, bergman_error)
    result.expect("conjugate_symmetry_error", conj_error < 1e-12, conj_error)

    params = [_imag(0.5), embed(0.3, 0.6, J_AXIS), embed(-0.7, 0.2, uniform_sphere(rng, 1)[0])]
    avg_error = max(sphere_average_check(kind, p, 500) for kind in ("hardy", "bergman") for p in params)
    result.expect("sphere_average_error", avg_error < 1e-3, avg_error)

    seed = ctx.seeds(1)[0]
    defects = []
    for p in params:
        for kernel in (averaged_K, averaged_H):
            defects.append(is_intrinsic(lambda x, k=kernel, p=p: k(x, p), seed=seed).defect)
    result.expect("intrinsic_defect", max(defects) < 1e-10, max(defects))

    same_sphere = max(womega_defect(p, kind, seed=seed) for p in params for kind in ("hardy", "bergman"))
    result.expect("same_sphere_defect", same_sphere < 1e-10, same_sphere)

    forms = kernel_consistency(params[1], seed=seed)
    result.expect("bergman_series_form_error", forms["series_form"] < 1e-10, forms["series_form"])
    result.record("bergman_printed_form_error", forms["printed_form"])
    if forms["printed_form"] > 1e-8:
        result.finding("bergman_printed_form", forms["printed_form"],
                       "the printed Bergman kernel equals sum (n+1) q^n conj(w)^n")

    lower = []
    for p in (_imag(0.5), _imag(0.9), embed(0.5, 0.5, J_AXIS)):
        report = kernel_lower_bound(p, min(ctx.samples, 100_000), seed)
        lower.append(report)
        result.expect(f"box_lower_bound_{len(lower)}", report.box_min_scaled >= 0.05, report.box_min_scaled)
    worst = min(lower, key=lambda r: r.min_scaled)
    result.record("scaled_min_K", worst.min_scaled)
    if not all(r.literal_holds for r in lower):
        result.finding("K_lower_bound", {"min_scaled": worst.min_scaled, "witness": worst.witness.to_json()},
                       "|K(q)| >= 1 / (1 - |w|^2) on the whole ball")

    norm_ok = True
    for m in (0.5, 0.9, 0.99):
        p = _imag(m)
        value = kernel_norm_squared("K", p, "hardy", normalized=True)
        norm_ok &= value <= (1.0 + 1e-2) / (1.0 - m)
    result.expect("K_norm_bound", norm_ok)

    estimate = hardy_norm(KernelSpec("K", _imag(0.5)), 2.0, NormGrid(8, 256, 32, normalized=True))
    closed = kernel_norm_squared("K", _imag(0.5), "hardy", normalized=True)
    rel = abs(estimate.value ** 2 - closed) / closed
    result.expect("parseval_vs_quadrature", rel < 1e-2, rel)


# =============================================================================
# INEQUALITIES
# =============================================================================

@register("inequalities")
def check_inequalities(ctx, result) -> None:
    seeds = ctx.seeds(8)
    for p, seed in zip((0.5, 1.0, 2.0, 4.0), seeds):
        report = rf_inequality_check(p, ctx.samples, seed)
        result.expect(f"representation_p{p:g}", report.holds,
                      {"max_ratio": report.max_ratio, "violations": report.violations})

    rng = ctx.rng()
    worst = 0.0
    for k in range(1000):
        f = _random_series(rng, 6)
        alpha = uniform_ball(rng, 1, 0.5)[0]
        r = float(rng.uniform(0.1, 0.6))
        p = float(rng.choice([0.5, 1.0, 2.0, 4.0]))
        worst = max(worst, submean_check(f, p, alpha, r, n=32, seed=seeds[4] + k).ratio)
    result.expect("submean_max_ratio", worst <= 1.0, worst)

    uniform = Rotational()
    mc, sigma = uniform.mc_integrate(lambda q: q, 2.0, ctx.samples, seeds[5])
    quad = uniform.integrate(lambda q: q, 2.0)
    result.expect("disintegration_uniform", abs(mc - quad) <= 3.0 * sigma + 1e-6,
                  {"quadrature": quad, "monte_carlo": mc, "sigma": sigma})

    zonal = Rotational(RadialDensity((1.0, 1.0)), DirectionLaw(0.5, (0.0, 1.0, 0.0)))
    kernel = KernelSpec("k", _imag(0.5, J_AXIS))
    mc, sigma = zonal.mc_integrate(kernel, 2.0, ctx.samples, seeds[6])
    quad = zonal.integrate(kernel, 2.0)
    result.expect("disintegration_zonal", abs(mc - quad) <= 3.0 * sigma + 1e-3 * abs(quad),
                  {"quadrature": quad, "monte_carlo": mc, "sigma": sigma})

    family = kernel_family("K", [_imag(0.5), embed(0.2, 0.7, J_AXIS)], 2.0)
    for name, measure in (("uniform", uniform), ("zonal", zonal)):
        transfer = transfer_check(measure, family, 2.0)
        result.expect(f"transfer_{name}", transfer.holds, transfer.max_ratio)


# =============================================================================
# GEOMETRY SANDWICHES
# =============================================================================

def _alpha_grid(rng, moduli, extra_axis=True):
    axes = [I_AXIS] + ([uniform_sphere(rng, 1)[0]] if extra_axis else [])
    return [embed(m * math.cos(0.25 * math.pi), m * math.sin(0.25 * math.pi), a) for a in axes for m in moduli]


@register("distance-sandwich")
def check_distance_sandwich(ctx, result) -> None:
    rng = ctx.rng()
    seeds = ctx.seeds(64)
    c1, k = 0.0, 0
    holds = True
    for alpha in _alpha_grid(rng, (0.3, 0.6, 0.9, 0.99)):
        for r in (0.3, 0.5, 0.7):
            report = distance_sandwich_check(alpha, r, 100_000, seeds[k % 64])
            k += 1
            holds &= report.holds
            c1 = max(c1, report.c1)
    result.expect("sandwich_holds", holds)
    result.expect("C1", math.isfinite(c1), c1)

    triples = uniform_ball(rng, 3 * 100_000, 0.95).reshape(3, -1, 4)
    result.record("triangle_max_defect", float(np.max(triangle_defect(*triples))))


@register("area-sandwich")
def check_area_sandwich(ctx, result) -> None:
    rng = ctx.rng()
    seeds = ctx.seeds(32)
    worst_mc, c2, C2, k = 0.0, math.inf, 0.0, 0
    lower_ok = True
    for alpha in _alpha_grid(rng, (0.0, 0.3, 0.6, 0.8, 0.9), extra_axis=False):
        delta4 = float(boundary_scale(alpha)) ** 4
        for r in (0.3, 0.5, 0.7):
            area = disc_area(alpha, r)
            mc, _ = disc_area_mc(alpha, r, ctx.samples, seeds[k])
            k += 1
            worst_mc = max(worst_mc, abs(mc - area) / area)
            lower_ok &= area >= math.pi * r * r * delta4 * (1.0 - 1e-12)
            c2, C2 = min(c2, area / delta4), max(C2, area / delta4)
            slice_area = tube_slice_area(alpha, r)
            lower_ok &= area * (1.0 - 1e-12) <= slice_area <= 2.0 * area * (1.0 + 1e-12)
    result.expect("area_mc_relative_error", worst_mc < 1e-2, worst_mc)
    result.expect("area_lower_bound", lower_ok)
    result.record("c2", c2)
    result.record("C2", C2)


@register("volume-sandwich")
def check_volume_sandwich(ctx, result) -> None:
    seeds = ctx.seeds(4)
    r = 0.5
    center = np.zeros(4)
    origin = ball_volume(center, r)
    result.expect("ball_at_origin", abs(origin - r ** 4) < 1e-8, origin)

    alpha = _imag(0.5)
    mc = ball_volume_mc(alpha, r, ctx.samples, seeds[0])
    quad = ball_volume(alpha, r)
    result.expect("ball_mc_agreement", abs(mc.value - quad) <= 3.0 * mc.sigma + 1e-4 * quad,
                  {"quadrature": quad, "monte_carlo": mc.value, "sigma": mc.sigma})

    rows, balls, tubes, scales = [], [], [], []
    lower_ok, inside_ok = True, True
    for y in SCALING_YS:
        alpha = _imag(y)
        eta_ball, eta_tube = ball_volume(alpha, r), tube_volume(alpha, r)
        delta = float(boundary_scale(alpha))
        lower_ok &= eta_ball >= r ** 4 * delta ** 8
        inside_ok &= eta_ball <= eta_tube * (1.0 + 1e-9)
        balls.append(eta_ball)
        tubes.append(eta_tube)
        scales.append(delta)
        rows.append({"y": y, "d": 1.0 - y, "scale": delta, "eta_ball": eta_ball, "eta_tube": eta_tube})
    fit = fit_exponent(scales, balls)
    tube_fit = fit_exponent(scales, tubes)
    for row in rows:
        row["fitted_exponent"] = fit.exponent
    result.expect("ball_lower_bound", lower_ok)
    result.expect("ball_inside_tube", inside_ok)
    result.record("scaling", rows)
    result.record("ball_exponent", fit.exponent)
    result.record("tube_exponent", tube_fit.exponent)
    if not 7.5 <= fit.exponent <= 8.5:
        result.finding("ball_volume_exponent", fit.exponent, "eta(B(Iy, r)) scales like d^8")

    for name, check in (("sphere_section", sphere_section_check), ("gamma_area", gamma_area_check),
                        ("ring_area", ring_area_check)):
        worst = max((check(_imag(y), r) for y in SCALING_YS), key=lambda e: e.ratio)
        result.record(f"{name}_ratio", worst.ratio)
        if not worst.holds:
            result.finding(name, worst.to_json(), f"the printed {name.replace('_', ' ')} bound")


# =============================================================================
# COVERS, PACKINGS, LATTICES
# =============================================================================

@register("cover-pack")
def check_cover_pack(ctx, result) -> None:
    rng = ctx.rng()
    r = COVER_RADIUS
    n = ctx.cover_samples
    scales, cover_counts, pack_counts = [], [], []
    coverage_ok, disjoint_ok = True, True
    for y in COVER_YS:
        alpha = _imag(y)
        points = sample_tube(alpha, r, n, rng)
        centers = cover_tube(alpha, r)
        coverage_ok &= bool(np.all(covered(points, centers, 4.0 * r)))
        packed = pack_tube(y, r)
        hits = np.zeros(len(points), dtype=int)
        for c in packed:
            hits += rho(points, c) < r
        disjoint_ok &= bool(hits.max() <= 1)
        scales.append(float(boundary_scale(alpha)))
        cover_counts.append(len(centers))
        pack_counts.append(len(packed))
    # the net lives on a sphere of radius y; the rate is per unit sphere area
    cover_fit = fit_exponent(scales, np.asarray(cover_counts) / np.square(COVER_YS))
    raw_fit = fit_exponent(scales, cover_counts)
    pack_fit = fit_exponent(scales, pack_counts)
    result.expect("cover_complete", coverage_ok)
    result.expect("pack_disjoint", disjoint_ok)
    result.record("cover_counts", cover_counts)
    result.record("pack_counts", pack_counts)
    result.expect("cover_exponent", -4.5 <= cover_fit.exponent <= -3.5, cover_fit.exponent)
    result.record("cover_exponent_raw", raw_fit.exponent)
    result.record("pack_exponent", pack_fit.exponent)
    if not -4.5 <= pack_fit.exponent <= -3.5:
        result.finding("pack_exponent", pack_fit.exponent, "packing count grows like d^-4")


@register("disc-lattice")
def check_disc_lattice(ctx, result) -> None:
    seeds = ctx.seeds(4)
    n = max(1000, min(ctx.samples // 20, 50_000))
    for k, r in enumerate((0.5, 0.3)):
        lattice = disc_lattice(I_AXIS, r, 0.95)
        coverage = lattice.coverage(n, seeds[k])
        result.expect(f"coverage_r{r:g}", coverage == 1.0, coverage)
        n0 = lattice.overlap(n, seeds[k + 2])
        result.expect(f"n0_r{r:g}", 1 <= n0 < len(lattice), n0)
        result.record(f"lattice_size_r{r:g}", len(lattice))


# =============================================================================
# CARLESON CONDITIONS
# =============================================================================

@register("hardy-boxes")
def check_hardy_boxes(ctx, result) -> None:
    grid = _grid(ctx)

    atoms = Atomic([[x, 0.0, 0.0, 0.0] for x in (-0.9, -0.5, 0.3, 0.8, 0.95)], [0.5, 1.0, 0.25, 2.0, 0.1])
    symmetric, sliced = check_hardy_box(atoms, grid), check_slice_box(atoms, grid)
    result.expect("real_atoms_identical", symmetric.sup_ratio == sliced.sup_ratio,
                  {"hardy_box": symmetric.sup_ratio, "slice_box": sliced.sup_ratio})

    lebesgue = SliceLebesgue(I_AXIS)
    symmetric, sliced = check_hardy_box(lebesgue, grid), check_slice_box(lebesgue, grid)
    result.expect("slice_lebesgue_hardy_box", symmetric.sup_ratio <= 2.0 + 1e-9, symmetric.sup_ratio)
    result.expect("slice_lebesgue_slice_box", sliced.sup_ratio <= 1.0 + 1e-9, sliced.sup_ratio)

    rotational = check_hardy_box(Rotational(), grid)
    result.expect("rotational_hardy_box", math.isfinite(rotational.sup_ratio), rotational.sup_ratio)

    ws = [_imag(m, J_AXIS) for m in (0.9, 0.99, 0.999)]
    for p in (1.0, 2.0, 4.0):
        test = functional_carleson_test(lebesgue, p, kernel_family("K", ws, p), "hardy")
        result.expect(f"functional_K_p{p:g}", test.max_ratio <= 1.0, test.max_ratio)
    monomials = functional_carleson_test(lebesgue, 2.0, monomial_family(2.0), "hardy")
    result.record("functional_monomials", monomials.max_ratio)

    _, profile = _counterexample_for(ctx)
    result.record("counterexample_box_ratios", profile.box_ratios.tolist())
    result.expect("counterexample_box_exponent", profile.box_fit.exponent > 0, profile.box_fit.exponent)


@register("bergman-tubes")
def check_bergman_tubes(ctx, result) -> None:
    grid = _grid(ctx)
    lebesgue = SliceLebesgue(I_AXIS)
    report = check_bergman_tube(lebesgue, grid)
    slice_i = _imag(1.0)
    centers = grid.centers(lebesgue.preferred_axes(), lebesgue.preferred_centers())
    on_slice = [ratio for alpha, ratio in zip(centers, report.ratios) if same_slice(alpha, slice_i)]
    result.expect("slice_lebesgue_tube_bounded", report.sup_ratio <= 2.0 + 1e-2, report.sup_ratio)
    result.expect("witness_on_slice", max(on_slice) >= report.sup_ratio * (1.0 - 1e-9), max(on_slice))
    if report.sup_ratio > 1.0 + 1e-2:
        result.finding("slice_lebesgue_tube_ratio", report.sup_ratio, "mu(Delta(alpha, r)) <= (1 + tol) |Delta_I|")

    ws = [_imag(m, J_AXIS) for m in (0.9, 0.99, 0.999)]
    for p in (1.0, 2.0):
        test = functional_carleson_test(lebesgue, p, kernel_family("H", ws, p, "bergman"), "bergman")
        result.expect(f"functional_H_p{p:g}", test.max_ratio <= 2.0, test.max_ratio)

    measure, profile = _counterexample_for(ctx)
    scan = check_bergman_tube(measure, grid)
    result.record("counterexample_tube_sup", scan.sup_ratio)
    result.expect("tube_ratios_increasing", profile.tube_increasing, profile.tube_ratios.tolist())
    result.expect("tube_exponent", abs(profile.tube_fit.exponent + measure.eps) <= 0.15,
                  profile.tube_fit.exponent)


@register("ball-gap")
def check_ball_gap(ctx, result) -> None:
    grid = _grid(ctx)
    r = grid.ball_radius
    lebesgue = SliceLebesgue(I_AXIS)
    tube = check_bergman_tube(lebesgue, grid)
    result.expect("slice_lebesgue_tube_bounded", tube.sup_ratio <= 2.0 + 1e-2, tube.sup_ratio)

    ratios = []
    for m in grid.tube_moduli:
        if m <= 0.0:
            continue
        alpha = _imag(m)
        ratios.append(lebesgue.region_mass(Region.ball(alpha, r)) / float(boundary_scale(alpha)) ** 4)
    result.expect("slice_lebesgue_d4_lower", min(ratios) >= math.pi * r * r * (1.0 - 1e-3), min(ratios))
    ball4 = check_ball(lebesgue, 4.0, grid)
    result.record("slice_lebesgue_ball4_sup", ball4.sup_ratio)

    measure, profile = _counterexample_for(ctx)
    eps = measure.eps
    seeds = ctx.seeds(1)
    result.expect("tube_ratios_increasing", profile.tube_increasing)
    result.expect("tube_exponent", abs(profile.tube_fit.exponent + eps) <= 0.15, profile.tube_fit.exponent)
    result.record("ball_masses", profile.ball_masses.tolist())
    result.record("pack_counts", profile.pack_counts.tolist())
    result.record("ball_exponent", profile.ball_fit.exponent)
    if abs(profile.ball_fit.exponent - (8.0 - eps)) > 0.5:
        result.finding("ball_mass_exponent", profile.ball_fit.exponent,
                       "mu(B(alpha_k^j, r)) <= C d_k^(8 - eps)")

    total = measure.integrate(lambda q: np.broadcast_to([1.0, 0.0, 0.0, 0.0], q.shape), 1.0)
    result.expect("total_mass", abs(total - measure.total_mass()) <= 1e-9 * measure.total_mass(), total)

    rng = np.random.default_rng(seeds[0])
    n = max(1000, min(ctx.samples // 10, 100_000)) // measure.tubes
    overlap = 0
    for k in range(measure.tubes):
        pts = sample_tube(measure.alpha(k), measure.r, n, rng)
        for j in range(measure.tubes):
            if j != k:
                overlap += int(np.count_nonzero(Region.tube(measure.alpha(j), measure.r).contains(pts)))
    result.expect("tubes_disjoint", overlap == 0, overlap)
