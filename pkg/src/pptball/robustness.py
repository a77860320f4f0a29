"""Robustness geometry around bound entangled states.

Covers the straight-line noise family through a base state, its entanglement
threshold, the certified ball radius around each family member (two bound
modes), the branch-crossing point of the radius formula, mixture
decompositions through the separable purity ball, ball membership, and the
separable-mixing thresholds with their maximal-robustness directions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import (
    DensityMatrix,
    HilbertStructure,
    PSD_TOL,
    eig_hermitian,
    is_ppt_all_cuts,
    purity,
)
from .upb import UPBSet, omega_state
from .witness import LambdaResult, Witness, witness_value

IDENTITY_ATOL = 1e-12
CROSSING_RESIDUAL = 1e-12
RANK_TOL = 1e-12

RADIUS_MODES = ("tight", "averaged")


@dataclass(frozen=True, eq=False)
class LineFamily:
    """Mixtures x * base + (1 - x) * I/D of a base state with white noise."""

    base: DensityMatrix

    @property
    def structure(self) -> HilbertStructure:
        return self.base.structure

    def member(self, x: float) -> DensityMatrix:
        if not 0.0 <= x <= 1.0:
            raise ValueError(f"mixing parameter must lie in [0, 1], got {x!r}")
        d = self.structure.total_dim
        m = x * self.base.matrix + (1.0 - x) * np.eye(d) / d
        return DensityMatrix.from_matrix(m, self.structure)


def family_member(fam: LineFamily, x: float) -> DensityMatrix:
    return fam.member(x)


def entanglement_threshold(lambda_rho: float, dim_total: int) -> float:
    """x* = 1/(1 + D lambda); family members with x > x* stay witness-negative."""
    if lambda_rho <= 0.0:
        raise ValueError(
            "witness violation must be strictly positive; a separable base state "
            "has no entanglement threshold"
        )
    return 1.0 / (1.0 + dim_total * lambda_rho)


def entanglement_threshold_upb(
    cardinality: int, dim_total: int, lam_value: float, lambda_omega: float
) -> float:
    """Threshold for complement-state witnesses, cross-checked in both forms.

    1/(1 + D lambda_omega) must agree with 1 - lambda D / n to IDENTITY_ATOL.
    """
    general = entanglement_threshold(lambda_omega, dim_total)
    closed = 1.0 - lam_value * dim_total / cardinality
    if abs(general - closed) > IDENTITY_ATOL:
        raise RuntimeError(
            f"threshold identity violated: {general!r} vs {closed!r}"
        )
    return general


def radius_y0(
    x: float,
    *,
    lambda_rho: float,
    dim_total: int,
    pos_part_trace: float,
    p_count: int | None = None,
    max_pos_eigenvalue: float | None = None,
    mode: str = "tight",
) -> float:
    """Certified ball radius around the family member at x.

    Minimum of two branches: the purity-ball branch (1 - x)/(D - 1 - x), under
    which every perturbation direction mixes into the separable purity ball,
    and the witness branch, under which the mixture stays witness-negative for
    the worst-case direction.  The worst-case witness expectation is bounded
    by the maximum positive eigenvalue in ``tight`` mode and by
    pos_part_trace / p_count in ``averaged`` mode; the two coincide exactly
    when the positive spectrum is flat (as for product-basis witnesses), and
    ``averaged`` is only a valid bound in that case.
    """
    if mode not in RADIUS_MODES:
        raise ValueError(f"mode must be one of {RADIUS_MODES}, got {mode!r}")
    x_star = entanglement_threshold(lambda_rho, dim_total)
    if not x_star < x < 1.0:
        raise ValueError(f"x must lie strictly between x* = {x_star!r} and 1, got {x!r}")
    c = (x * (1.0 + dim_total * lambda_rho) - 1.0) / dim_total
    if mode == "tight":
        if max_pos_eigenvalue is None:
            raise ValueError("tight mode needs max_pos_eigenvalue")
        bound = max_pos_eigenvalue
    else:
        if p_count is None:
            raise ValueError("averaged mode needs p_count")
        bound = pos_part_trace / p_count
    witness_branch = c / (bound + c)
    purity_branch = (1.0 - x) / (dim_total - 1.0 - x)
    return float(min(purity_branch, witness_branch))


def radius_from_witness(
    x: float, witness: Witness, lambda_rho: float, mode: str = "tight"
) -> float:
    """radius_y0 with the spectral inputs read off a cached witness."""
    return radius_y0(
        x,
        lambda_rho=lambda_rho,
        dim_total=witness.op.dim,
        pos_part_trace=witness.pos_part_trace,
        p_count=witness.p_count,
        max_pos_eigenvalue=witness.max_pos_eigenvalue,
        mode=mode,
    )


def _purity_branch(x: float, dim_total: int) -> float:
    return (1.0 - x) / (dim_total - 1.0 - x)


def _witness_branch_upb(x: float, n: int, dim_total: int, lam: float) -> float:
    return (n * x - n + lam * dim_total) / (n * x - n + dim_total)


@dataclass(frozen=True)
class CrossingResult:
    """Where the two radius branches meet, with the tabulated closed form beside it.

    ``x0_printed`` evaluates the closed-form expression as tabulated; it does
    not match the branch-equality root and is carried for comparison only,
    never used downstream.
    """

    x0_root: float
    x0_printed: float
    branch_value: float
    residual: float


def crossing_x0(n: int, dim_total: int, lam_value: float) -> CrossingResult:
    """Unique x in (x*, 1) where the purity and witness branches are equal.

    The purity branch is strictly decreasing and the witness branch strictly
    increasing, so bisection on their difference converges to the single root.
    """
    x_star = 1.0 - lam_value * dim_total / n

    def gap(x):
        return _purity_branch(x, dim_total) - _witness_branch_upb(x, n, dim_total, lam_value)

    lo, hi = x_star, 1.0
    f_lo, f_hi = gap(lo), gap(hi)
    if not (f_lo > 0.0 > f_hi):
        raise RuntimeError(
            f"no branch crossing bracketed in ({x_star!r}, 1): "
            f"gap endpoints {f_lo!r}, {f_hi!r}"
        )
    mid = 0.5 * (lo + hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = gap(mid)
        if abs(f_mid) < CROSSING_RESIDUAL and hi - lo < 1e-14:
            break
        if f_mid > 0.0:
            lo = mid
        else:
            hi = mid
    residual = abs(gap(mid))
    if residual > CROSSING_RESIDUAL:
        raise RuntimeError(f"bisection stalled with residual {residual:.3e}")
    printed = (n * (dim_total - 2) + dim_total * (1.0 - lam_value * (dim_total - 1))) / (
        n * (dim_total - 2) * dim_total * (1.0 - lam_value)
    )
    return CrossingResult(
        x0_root=float(mid),
        x0_printed=float(printed),
        branch_value=float(_purity_branch(mid, dim_total)),
        residual=float(residual),
    )


@dataclass(frozen=True)
class MixtureDecomposition:
    """Weights of the two-stage rewrite of y sigma + (1 - y) rho_x.

    s = 1 - x(1 - y) carries the separable-ball stage t sigma + (1 - t) I/D
    with t = y/s, and 1 - s carries the base state.
    """

    s: float
    t: float


def mixture_tau(
    fam: LineFamily, sigma: DensityMatrix, x: float, y: float
) -> tuple[DensityMatrix, MixtureDecomposition]:
    """y sigma + (1 - y) rho_x together with its (s, t) decomposition.

    The rewrite tau = s {t sigma + (1 - t) I/D} + (1 - s) base is verified to
    IDENTITY_ATOL on every call.
    """
    if not 0.0 < x < 1.0:
        raise ValueError(f"x must lie in (0, 1), got {x!r}")
    if not 0.0 <= y < 1.0:
        raise ValueError(f"y must lie in [0, 1), got {y!r}")
    if sigma.structure.total_dim != fam.structure.total_dim:
        raise ValueError("sigma dimension does not match the family")
    rho_x = fam.member(x)
    tau_m = y * sigma.matrix + (1.0 - y) * rho_x.matrix
    s = 1.0 - x * (1.0 - y)
    t = y / s
    d = fam.structure.total_dim
    inner = t * sigma.matrix + (1.0 - t) * np.eye(d) / d
    recon = s * inner + (1.0 - s) * fam.base.matrix
    resid = float(np.abs(tau_m - recon).max())
    if resid > IDENTITY_ATOL:
        raise RuntimeError(f"mixture decomposition identity violated: residual {resid:.3e}")
    return DensityMatrix.from_matrix(tau_m, fam.structure), MixtureDecomposition(float(s), float(t))


def in_gurvits_ball(rho: DensityMatrix) -> bool:
    """Purity below 1/(D - 1): sufficient (not necessary) for separability."""
    if rho.structure.n_parties != 2:
        raise ValueError("the purity-ball criterion is stated for bipartite structures")
    d = rho.structure.total_dim
    return purity(rho) < 1.0 / (d - 1)


def ball_membership(tau: DensityMatrix, center: DensityMatrix) -> float:
    """Smallest mu with tau = mu rho' + (1 - mu) center for a valid state rho'.

    Computed as 1 - min eigenvalue of center^{-1/2} tau center^{-1/2}, clamped
    to [0, 1]; tau lies in the radius-r ball around center iff the result < r.
    """
    if tau.dim != center.dim:
        raise ValueError("state and center dimensions differ")
    dec = eig_hermitian(center.op)
    if float(dec.eigenvalues[0]) < RANK_TOL:
        raise ValueError(
            "center must have full rank; line-family members with x < 1 qualify"
        )
    inv_sqrt = (dec.eigenvectors / np.sqrt(dec.eigenvalues)) @ dec.eigenvectors.conj().T
    m = inv_sqrt @ tau.matrix @ inv_sqrt
    lam_min = float(np.linalg.eigvalsh(m)[0])
    return float(min(1.0, max(0.0, 1.0 - lam_min)))


def separable_mixing_threshold(
    witness: Witness, lambda_omega: float, lam_value: float
) -> float:
    """Mixing weight below which any separable admixture stays witness-negative.

    Equals the minimum overlap itself: p lambda_omega / (Tr W+ + p lambda_omega);
    the identity is re-verified numerically to IDENTITY_ATOL.
    """
    threshold = (
        witness.p_count
        * lambda_omega
        / (witness.pos_part_trace + witness.p_count * lambda_omega)
    )
    if abs(threshold - lam_value) > IDENTITY_ATOL:
        raise RuntimeError(
            f"mixing-threshold identity violated: {threshold!r} vs {lam_value!r}"
        )
    return float(threshold)


def ppt_mixing_threshold(
    witness: Witness, lambda_omega: float, sigma: DensityMatrix
) -> float:
    """Per-direction mixing threshold lambda_omega / (lambda_omega + Tr(W sigma)).

    Defined for PPT directions with nonnegative witness value; mixtures below
    the threshold stay witness-negative (and PPT, both components being PPT).
    """
    val = witness_value(witness, sigma)
    if val < -1e-10:
        raise ValueError(
            f"direction has negative witness value {val!r}; threshold undefined"
        )
    if not is_ppt_all_cuts(sigma):
        raise ValueError("direction must be PPT on every bipartition")
    return float(lambda_omega / (lambda_omega + max(val, 0.0)))


@dataclass(frozen=True)
class DirectionCheck:
    z: float
    min_pt_eigenvalue: float
    witness_value: float
    ppt_ok: bool
    witness_ok: bool


@dataclass(frozen=True, eq=False)
class MaximalRobustnessReport:
    """Per-z PPT and witness records for mixing toward a zero-witness direction.

    Failures are reported, not raised: these checks validate a proven
    guarantee, so a failure indicates a bug or a tolerance issue, and the
    full record is the useful artifact.
    """

    x: float
    checks: tuple[DirectionCheck, ...]

    @property
    def all_ok(self) -> bool:
        return all(c.ppt_ok and c.witness_ok for c in self.checks)


def minimizer_direction(lam: LambdaResult, structure: HilbertStructure) -> DensityMatrix:
    """Uniform mixture of the collected minimizing product-state projectors."""
    mats = [m.to_density(structure).matrix for m in lam.minimizers]
    return DensityMatrix.from_matrix(sum(mats) / len(mats), structure)


def verify_maximal_robustness(
    fam: LineFamily,
    sigma_dir: DensityMatrix,
    witness: Witness,
    x: float,
    z_grid,
    tol: float = PSD_TOL,
) -> MaximalRobustnessReport:
    """Check z sigma_dir + (1 - z) rho_x stays PPT and witness-negative on a z grid."""
    rho_x = fam.member(x)
    checks = []
    for z in z_grid:
        z = float(z)
        if not 0.0 <= z < 1.0:
            raise ValueError(f"grid entries must lie in [0, 1), got {z!r}")
        m = z * sigma_dir.matrix + (1.0 - z) * rho_x.matrix
        state = DensityMatrix.from_matrix(m, fam.structure)
        rep = is_ppt_all_cuts(state, tol)
        wv = witness_value(witness, state)
        checks.append(
            DirectionCheck(z, float(rep.min_eigenvalue), wv, rep.is_ppt, wv < 0.0)
        )
    return MaximalRobustnessReport(float(x), tuple(checks))


@dataclass(frozen=True, eq=False)
class RobustnessProfile:
    """Full robustness summary of one product-basis complement state.

    ``radius_samples`` rows are (x, radius in tight mode, radius in averaged
    mode); the two columns agree for flat-spectrum witnesses.
    """

    upb_name: str
    lambda_value: float
    lambda_omega: float
    x_star: float
    x0_root: float
    x0_printed: float
    radius_samples: tuple[tuple[float, float, float], ...]
    mixing_threshold: float
    bound_mode: str = "tight"

    def to_json_dict(self) -> dict:
        return {
            "upb_name": self.upb_name,
            "lambda": self.lambda_value,
            "lambda_omega": self.lambda_omega,
            "x_star": self.x_star,
            "x0_root": self.x0_root,
            "x0_printed_eq32": self.x0_printed,
            "radius_samples": [
                {"x": x, "y0_tight": tight, "y0_paper": averaged}
                for x, tight, averaged in self.radius_samples
            ],
            "mixing_threshold": self.mixing_threshold,
        }


def robustness_profile(
    upb: UPBSet, lam: LambdaResult, witness: Witness, grid_size: int = 50
) -> RobustnessProfile:
    """Assemble thresholds, crossing point, and sampled radii for one catalog set."""
    omega = omega_state(upb)
    lambda_omega = -witness_value(witness, omega)
    d, n = upb.total_dim, upb.cardinality
    if lambda_omega > 1.0 - 2.0 / d + IDENTITY_ATOL:
        raise RuntimeError(
            f"witness violation {lambda_omega!r} exceeds the 1 - 2/D ceiling"
        )
    x_star = entanglement_threshold_upb(n, d, lam.value, lambda_omega)
    crossing = crossing_x0(n, d, lam.value)
    xs = np.linspace(x_star, 1.0, grid_size + 2)[1:-1]
    samples = tuple(
        (
            float(x),
            radius_from_witness(x, witness, lambda_omega, mode="tight"),
            radius_from_witness(x, witness, lambda_omega, mode="averaged"),
        )
        for x in xs
    )
    mixing = separable_mixing_threshold(witness, lambda_omega, lam.value)
    return RobustnessProfile(
        upb_name=upb.name,
        lambda_value=lam.value,
        lambda_omega=float(lambda_omega),
        x_star=float(x_star),
        x0_root=crossing.x0_root,
        x0_printed=crossing.x0_printed,
        radius_samples=samples,
        mixing_threshold=mixing,
    )
