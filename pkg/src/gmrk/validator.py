"""Numerical certification of the algebraic claims.

Every check computes a residual as an elementwise max (infinity norm) of a
matrix identity, evaluated on *interior* states only: operator products are
always formed on the full truncated space first and projected afterwards,
because projecting the factors would cut the intermediate states that the
products pass through.
"""

from __future__ import annotations

import numpy as np

from .coupling import casimir2
from .errors import ConfigError
from .halfint import HalfInt
from .operators import (
    GellMannConfig,
    build_casimir_K,
    build_casimir_M,
    build_K,
    build_M,
    build_T_closed,
    build_T_gellmann,
    build_U,
    cartesian_family,
)
from .repspace import BasisIndex, SpaceSpec, enumerate_basis, interior_mask
from .tensormaps import (
    TensorComponentMap,
    irrep_cartesian_generators,
    little_group_pairs,
    x_vector_of,
)
from .coupling import IrrepLabel

from dataclasses import dataclass, field


@dataclass
class ResidualReport:
    """Outcome of one numerical check."""

    check_name: str
    max_abs_residual: float
    tolerance: float
    interior_margin: HalfInt
    basis_size: int
    config: dict = field(default_factory=dict)
    passed: bool = False
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        self.passed = self.max_abs_residual <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "max_abs_residual": self.max_abs_residual,
            "tolerance": self.tolerance,
            "interior_margin": str(self.interior_margin),
            "basis_size": self.basis_size,
            "config": self.config,
            "pass": self.passed,
            "details": self.details,
        }


def _config_snapshot(basis: BasisIndex, cfg: GellMannConfig | None) -> dict:
    snap = {
        "n": basis.spec.n,
        "j_max": str(basis.spec.j_max),
        "mode": basis.spec.mode,
        "m_split": basis.spec.m_split,
    }
    if cfg is not None:
        snap.update(
            {
                "sigma_re": float(np.real(cfg.sigma)),
                "sigma_im": float(np.imag(cfg.sigma)),
                "u_norm": cfg.u_norm,
                "alpha": cfg.alpha,
            }
        )
    return snap


def _signed(fam: dict, a: int, b: int, antisymmetric: bool):
    """Component (a,b) of a Cartesian family stored on ordered pairs."""
    if a == b:
        if antisymmetric:
            return None
        return fam[(a, b)]
    if (a, b) in fam:
        return fam[(a, b)]
    val = fam[(b, a)]
    return -val if antisymmetric else val


def _masked_max(mat, mask: np.ndarray) -> float:
    arr = np.asarray(mat.todense()) if hasattr(mat, "todense") else np.asarray(mat)
    sub = arr[np.ix_(mask, mask)]
    return 0.0 if sub.size == 0 else float(np.max(np.abs(sub)))


def check_MM(basis: BasisIndex, tolerance: float = 1e-12, margin=0) -> ResidualReport:
    """Rotation-family closure: [M_ab, M_cd] = i(d_ad M_bc + d_bc M_ad
    - d_ac M_bd - d_bd M_ac)."""
    tmap = TensorComponentMap(basis.spec.n)
    M = {p: op.mat for p, op in cartesian_family(build_M(basis), tmap, "adjoint").items()}
    mask = interior_mask(basis, margin)
    n = basis.spec.n
    worst = 0.0

    def m(i, j):
        if i == j:
            return 0.0 * next(iter(M.values()))
        return M[(i, j)] if i < j else -M[(j, i)]

    for (a, b) in M:
        for (c, d) in M:
            lhs = M[(a, b)] @ M[(c, d)] - M[(c, d)] @ M[(a, b)]
            rhs = 1j * (
                (a == d) * m(b, c)
                + (b == c) * m(a, d)
                - (a == c) * m(b, d)
                - (b == d) * m(a, c)
            )
            worst = max(worst, _masked_max(lhs - rhs, mask))
    return ResidualReport(
        "check_MM", worst, tolerance, HalfInt.of(margin), len(basis),
        _config_snapshot(basis, None),
    )


def check_UU(basis: BasisIndex, cfg: GellMannConfig, tolerance: float = 1e-10,
             margin=4, u_family: dict | None = None) -> ResidualReport:
    """Abelian sector: [U_mu, U_nu] = 0 (multiplication operators commute)."""
    if u_family is None:
        u_family = build_U(basis, cfg, check_x=basis.spec.mode == "coset")
    mask = interior_mask(basis, margin)
    keys = list(u_family)
    worst = 0.0
    for i, k1 in enumerate(keys):
        for k2 in keys[i + 1 :]:
            u1, u2 = u_family[k1].mat, u_family[k2].mat
            worst = max(worst, _masked_max(u1 @ u2 - u2 @ u1, mask))
    return ResidualReport(
        "check_UU", worst, tolerance, HalfInt.of(margin), len(basis),
        _config_snapshot(basis, cfg),
    )


def check_TT(basis: BasisIndex, cfg: GellMannConfig, T_family: dict | None = None,
             tolerance: float = 1e-9, margin=4) -> ResidualReport:
    """Shear closure: [T_ab, T_cd] = i(d_ac M_db + d_ad M_cb + d_bc M_da
    + d_bd M_ca), with M_ij = -M_ji."""
    tmap = cfg.tmap
    if T_family is None:
        T_family = build_T_gellmann(basis, cfg, check_x=basis.spec.mode == "coset")
    T = {p: op.mat for p, op in cartesian_family(T_family, tmap, "symmetric").items()}
    M = {p: op.mat for p, op in cartesian_family(build_M(basis), tmap, "adjoint").items()}
    mask = interior_mask(basis, margin)
    worst = 0.0

    def m(i, j):
        if i == j:
            return 0.0 * next(iter(M.values()))
        return M[(i, j)] if i < j else -M[(j, i)]

    pairs = sorted(T)
    for (a, b) in pairs:
        for (c, d) in pairs:
            lhs = T[(a, b)] @ T[(c, d)] - T[(c, d)] @ T[(a, b)]
            rhs = 1j * (
                (a == c) * m(d, b)
                + (a == d) * m(c, b)
                + (b == c) * m(d, a)
                + (b == d) * m(c, a)
            )
            worst = max(worst, _masked_max(lhs - rhs, mask))
    return ResidualReport(
        "check_TT", worst, tolerance, HalfInt.of(margin), len(basis),
        _config_snapshot(basis, cfg),
    )


def check_MT(basis: BasisIndex, cfg: GellMannConfig, T_family: dict | None = None,
             tolerance: float = 1e-10, margin=2) -> ResidualReport:
    """Tensor character of T: [M_ab, T_cd] = i(d_bc T_ad + d_bd T_ac
    - d_ac T_bd - d_ad T_bc)."""
    tmap = cfg.tmap
    if T_family is None:
        T_family = build_T_gellmann(basis, cfg, check_x=basis.spec.mode == "coset")
    T = {p: op.mat for p, op in cartesian_family(T_family, tmap, "symmetric").items()}
    M = {p: op.mat for p, op in cartesian_family(build_M(basis), tmap, "adjoint").items()}
    mask = interior_mask(basis, margin)
    worst = 0.0

    def t(i, j):
        return T[(i, j)] if i <= j else T[(j, i)]

    for (a, b) in M:
        for (c, d) in T:
            lhs = M[(a, b)] @ T[(c, d)] - T[(c, d)] @ M[(a, b)]
            rhs = 1j * (
                (b == c) * t(a, d)
                + (b == d) * t(a, c)
                - (a == c) * t(b, d)
                - (a == d) * t(b, c)
            )
            worst = max(worst, _masked_max(lhs - rhs, mask))
    return ResidualReport(
        "check_MT", worst, tolerance, HalfInt.of(margin), len(basis),
        _config_snapshot(basis, cfg),
    )


def check_jacobi_MTT(basis: BasisIndex, cfg: GellMannConfig,
                     tolerance: float = 1e-9, margin=4) -> ResidualReport:
    """Internal consistency of the chosen Cartesian structure constants:
    [M, [T, T']] = [[M, T], T'] + [T, [M, T']] on interior states."""
    tmap = cfg.tmap
    T_family = build_T_gellmann(basis, cfg, check_x=basis.spec.mode == "coset")
    T = {p: op.mat for p, op in cartesian_family(T_family, tmap, "symmetric").items()}
    M = {p: op.mat for p, op in cartesian_family(build_M(basis), tmap, "adjoint").items()}
    mask = interior_mask(basis, margin)
    worst = 0.0
    tpairs = sorted(T)
    for mp in M:
        for p1 in tpairs:
            for p2 in tpairs:
                a, b, c = M[mp], T[p1], T[p2]
                bc = b @ c - c @ b
                ab = a @ b - b @ a
                ac = a @ c - c @ a
                lhs = a @ bc - bc @ a
                rhs = ab @ c - c @ ab + b @ ac - ac @ b
                worst = max(worst, _masked_max(lhs - rhs, mask))
    return ResidualReport(
        "check_jacobi_MTT", worst, tolerance, HalfInt.of(margin), len(basis),
        _config_snapshot(basis, cfg),
    )


def check_casimir_equality(basis: BasisIndex, tolerance: float = 0.0) -> ResidualReport:
    """Left and right Casimirs agree blockwise with the exact rational value."""
    ck = build_casimir_K(basis).mat.toarray()
    cm = build_casimir_M(basis).mat.toarray()
    expected = np.zeros(len(basis))
    for J, blk in basis.blocks.items():
        expected[blk.start : blk.start + blk.size] = float(casimir2(J))
    res = max(
        float(np.max(np.abs(ck - np.diag(expected)))),
        float(np.max(np.abs(cm - np.diag(expected)))),
    )
    return ResidualReport(
        "check_casimir_equality", res, tolerance, HalfInt.of(0), len(basis),
        _config_snapshot(basis, None),
    )


def check_MK(basis: BasisIndex, tolerance: float = 1e-12) -> ResidualReport:
    """Left and right rotation families commute: [M_mu, K_nu] = 0."""
    M = build_M(basis)
    K = build_K(basis)
    worst = 0.0
    for km in M:
        for kk in K:
            a, b = M[km].mat, K[kk].mat
            d = a @ b - b @ a
            if d.nnz:
                worst = max(worst, float(np.max(np.abs(d.data))))
    return ResidualReport(
        "check_MK", worst, tolerance, HalfInt.of(0), len(basis),
        _config_snapshot(basis, None),
    )


def check_little_group_conditions(cfg: GellMannConfig,
                                  tolerance: float = 1e-12) -> ResidualReport:
    """The split L + N must be a symmetric pair ([L,N] in N, [N,N] in L)
    and the x vector must be annihilated by every L generator."""
    n = cfg.n
    tmap = cfg.tmap
    l_pairs = little_group_pairs(n, cfg.m_split)
    all_pairs = [(a, b) for a in range(n) for b in range(n) if a < b]
    n_pairs = [p for p in all_pairs if p not in l_pairs]

    gens = {}
    for (a, b) in all_pairs:
        F = np.zeros((n, n), dtype=complex)
        F[a, b] = 1j
        F[b, a] = -1j
        gens[(a, b)] = F

    def span_residual(mat, pairs):
        """Distance of mat from the span of the listed generators."""
        if not pairs:
            return float(np.max(np.abs(mat)))
        basis_vecs = np.array([gens[p].ravel() for p in pairs]).T
        v = mat.ravel()
        coef, *_ = np.linalg.lstsq(basis_vecs, v, rcond=None)
        return float(np.max(np.abs(basis_vecs @ coef - v)))

    worst = 0.0
    for p1 in l_pairs:
        for p2 in n_pairs:
            comm = gens[p1] @ gens[p2] - gens[p2] @ gens[p1]
            worst = max(worst, span_residual(comm, n_pairs))
    for p1 in n_pairs:
        for p2 in n_pairs:
            comm = gens[p1] @ gens[p2] - gens[p2] @ gens[p1]
            worst = max(worst, span_residual(comm, l_pairs))

    x_res = cfg.x_invariance_residual()
    worst = max(worst, x_res)
    report = ResidualReport(
        "check_little_group_conditions", worst, tolerance, HalfInt.of(0), 0,
        {"n": n, "m_split": cfg.m_split},
    )
    report.details["x_annihilation_residual"] = x_res
    return report


def fit_T_equivalence(basis: BasisIndex, cfg: GellMannConfig,
                      tolerance: float = 1e-10, margin=2,
                      sigma_samples=(0.0, 1.0)):
    """Fit the affine relation between the sigma of the commutator
    construction and the sigma of the closed-form construction so that the
    two T families agree on interior states.

    Returns ((a, b), report).  The closed form is linear in its sigma, so
    for each sampled commutator sigma the best closed-form sigma is an
    exact least-squares solve; the affine coefficients come from the two
    samples.  A degenerate direction (the sigma-dependent part vanishing on
    the interior) is flagged inconclusive.
    """
    if basis.spec.mode != "coset":
        raise ConfigError("T equivalence is defined on the coset space only")
    mask = interior_mask(basis, margin)
    tmap = cfg.tmap

    def family_array(fam):
        return np.stack([fam[k].mat.toarray()[np.ix_(mask, mask)] for k in sorted(fam)])

    base = GellMannConfig(cfg.n, cfg.m_split, sigma=0.0, u_norm=cfg.u_norm,
                          x_spherical=cfg.x_spherical, tmap=tmap)
    one = GellMannConfig(cfg.n, cfg.m_split, sigma=1.0, u_norm=cfg.u_norm,
                         x_spherical=cfg.x_spherical, tmap=tmap)
    C0 = family_array(build_T_closed(basis, base))
    C1 = family_array(build_T_closed(basis, one)) - C0
    norm_c1 = float(np.vdot(C1, C1).real)
    inconclusive = norm_c1 < 1e-20

    fitted = []
    worst = 0.0
    for s in sigma_samples:
        cfg_s = GellMannConfig(cfg.n, cfg.m_split, sigma=s, u_norm=cfg.u_norm,
                               x_spherical=cfg.x_spherical, tmap=tmap)
        G = family_array(build_T_gellmann(basis, cfg_s))
        if inconclusive:
            fitted.append(0.0)
            continue
        sp = float(np.vdot(C1, G - C0).real) / norm_c1
        fitted.append(sp)
        worst = max(worst, float(np.max(np.abs(C0 + sp * C1 - G))))

    if inconclusive or abs(sigma_samples[1] - sigma_samples[0]) < 1e-15:
        a, b = float("nan"), float("nan")
        inconclusive = True
    else:
        a = (fitted[1] - fitted[0]) / (sigma_samples[1] - sigma_samples[0])
        b = fitted[0] - a * sigma_samples[0]

    report = ResidualReport(
        "fit_T_equivalence", worst, tolerance, HalfInt.of(margin), len(basis),
        _config_snapshot(basis, cfg),
    )
    if inconclusive:
        report.passed = False
    report.details.update({"a": a, "b": b, "inconclusive": inconclusive})
    return (a, b), report


def validity_scan(entries, j_max, margin=4, sigma=0.0, tolerance: float = 1e-9,
                  fail_floor: float = 1e-2):
    """Run check_TT over a configuration grid and classify each entry.

    Each entry is (n, mode, m_split) or (n, mode, m_split, x_spherical);
    a None x means the canonical invariant vector for the split.  Returns
    one ResidualReport per entry, with details["classification"] set to
    "valid" (residual <= tolerance), "invalid" (>= fail_floor) or
    "inconclusive".
    """
    reports = []
    for entry in entries:
        if len(entry) == 3:
            n, mode, m_split = entry
            x = None
        else:
            n, mode, m_split, x = entry
        spec = SpaceSpec(n, HalfInt.of(j_max), mode, m_split)
        basis = enumerate_basis(spec)
        tmap = TensorComponentMap(n)
        cfg = GellMannConfig(n, m_split, sigma=sigma, x_spherical=x, tmap=tmap)
        canonical_x = x is None or np.allclose(
            np.asarray(x), x_vector_of(n, m_split, tmap), atol=1e-12
        )
        T = build_T_gellmann(basis, cfg, check_x=False)
        rep = check_TT(basis, cfg, T, tolerance=tolerance, margin=margin)
        if rep.max_abs_residual <= tolerance:
            cls = "valid"
        elif rep.max_abs_residual >= fail_floor:
            cls = "invalid"
        else:
            cls = "inconclusive"
        rep.details["classification"] = cls
        rep.details["canonical_x"] = bool(canonical_x)
        reports.append(rep)
    return reports


def default_scan_grid(n: int):
    """The standard grid: the full space plus every coset split."""
    return [(n, "full", 1)] + [(n, "coset", m) for m in range(1, n)]
