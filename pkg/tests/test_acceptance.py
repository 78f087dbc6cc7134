"""Acceptance suite: eight end-to-end criteria with pinned tolerances.

Each test prints a single PASS/FAIL line (run pytest with -s or rely on
captured output on failure).
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from gmrk import (
    GellMannConfig,
    HalfInt,
    IrrepLabel,
    SpaceSpec,
    alpha_of,
    build_casimir_K,
    build_casimir_M,
    build_K,
    build_M,
    build_T_closed,
    build_T_gellmann,
    build_U,
    casimir2,
    cg,
    check_MK,
    check_TT,
    check_UU,
    default_scan_grid,
    enumerate_basis,
    fit_T_equivalence,
    interior_mask,
    multiplicity_audit,
    validity_scan,
)
from gmrk.tensormaps import TensorComponentMap


def _report(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[{status}] {name}{suffix}")
    assert ok, f"{name}{suffix}"


def test_criterion_1_casimir_exact_values():
    """Casimir identities, exact rational arithmetic, zero tolerance."""
    vals = (
        casimir2(IrrepLabel.of(3, 2)),
        casimir2(IrrepLabel.of(3, 1)),
        casimir2(IrrepLabel.of(3, 3)),
    )
    ok = vals == (Fraction(6), Fraction(2), Fraction(12))
    _report("criterion 1: Casimir values 6, 2, 12 (exact)", ok, f"got {vals}")


def test_criterion_2_alpha_reproduction():
    """Normalization constant to exact radical identity."""
    a31 = alpha_of(3, 1)
    a42 = alpha_of(4, 2)
    ok = (a31 == 0.5 * math.sqrt(2.0 / 3.0)) and (a42 == 0.5)
    _report("criterion 2: alpha(3,1)=1/2*sqrt(2/3), alpha(4,2)=1/2", ok,
            f"got {a31!r}, {a42!r}")


def test_criterion_3_validity_on_coset():
    """Shear closure residual <= 1e-9 on both coset splits, three sigma
    values, j_max=8, margin 4, in under 60 s."""
    t0 = time.time()
    worst = 0.0
    tmap = TensorComponentMap(3)
    for m_split in (1, 2):
        basis = enumerate_basis(SpaceSpec(3, HalfInt.of(8), "coset", m_split))
        for sigma in (0.0, 1.0, 2.5):
            cfg = GellMannConfig(3, m_split, sigma=sigma, tmap=tmap)
            rep = check_TT(basis, cfg, tolerance=1e-9, margin=4)
            worst = max(worst, rep.max_abs_residual)
    elapsed = time.time() - t0
    ok = worst <= 1e-9 and elapsed < 60.0
    _report("criterion 3: coset closure residual <= 1e-9 in < 60 s", ok,
            f"worst {worst:.3e}, {elapsed:.1f} s")


def test_criterion_4_invalidity_on_full_space():
    """The identical construction fails on the full space: residual >= 1e-2
    on interior states."""
    basis = enumerate_basis(SpaceSpec(3, HalfInt.of(6), "full"))
    cfg = GellMannConfig(3, 1, sigma=0.0)
    rep = check_TT(basis, cfg, margin=4)
    ok = rep.max_abs_residual >= 1e-2
    _report("criterion 4: full-space closure residual >= 1e-2", ok,
            f"residual {rep.max_abs_residual:.3e}")


def test_criterion_5_two_construction_equivalence():
    """Commutator-route and closed-form T agree after the affine sigma fit
    (<= 1e-10); off-diagonal J-blocks agree with no fit at sigma=0."""
    tmap = TensorComponentMap(3)
    basis = enumerate_basis(SpaceSpec(3, HalfInt.of(8), "coset", 1))
    cfg = GellMannConfig(3, 1, sigma=1.0, tmap=tmap)
    (a, b), rep = fit_T_equivalence(basis, cfg)
    fit_ok = rep.passed and rep.max_abs_residual <= 1e-10 and a != 0.0

    cfg0 = GellMannConfig(3, 1, sigma=0.0, tmap=tmap)
    Tg = build_T_gellmann(basis, cfg0)
    Tc = build_T_closed(basis, cfg0)
    off_worst = 0.0
    for key in Tg:
        d = (Tg[key].mat - Tc[key].mat).toarray()
        for r, c in zip(*np.nonzero(np.abs(d) > 0)):
            if basis.states[r].J != basis.states[c].J:
                off_worst = max(off_worst, abs(d[r, c]))
    ok = fit_ok and off_worst <= 1e-10
    _report(
        "criterion 5: T constructions equivalent (affine sigma fit)", ok,
        f"fit a={a:.6f} b={b:.2e}, residual {rep.max_abs_residual:.3e}, "
        f"off-diag no-fit {off_worst:.3e}",
    )


def test_criterion_6_multiplicity_free_no_spinorial():
    """Every coset basis is multiplicity free and contains no spinorial
    label (n=3: integer j only; n=4: j1+j2 integer)."""
    ok = True
    details = []
    for n, j_max, splits in ((3, 8, (1, 2)), (4, 3, (1, 2, 3))):
        for m_split in splits:
            basis = enumerate_basis(SpaceSpec(n, HalfInt.of(j_max), "coset", m_split))
            audit = multiplicity_audit(basis)
            mult_ok = bool(audit) and all(v == 1 for v in audit.values())
            spin_ok = all(
                sum((p for p in s.J.parts), HalfInt(0)).is_integer
                for s in basis.states
            )
            ok = ok and mult_ok and spin_ok
            details.append(f"n={n} m={m_split}: mult={mult_ok} tensorial={spin_ok}")
    _report("criterion 6: coset bases multiplicity-free, no spinorial J",
            ok, "; ".join(details))


def test_criterion_7_foundation_suite():
    """CG orthogonality/symmetry for j <= 4 at 1e-12; [M,K]=0 and equal
    Casimirs exactly; [U,U]=0 at 1e-10."""
    # orthogonality and exchange symmetry, exhaustive over j1, j2 <= 4
    worst_cg = 0.0
    for tj1 in range(0, 9):
        for tj2 in range(0, 9):
            ms1 = range(-tj1, tj1 + 1, 2)
            ms2 = range(-tj2, tj2 + 1, 2)
            for tm1 in ms1:
                for tm2 in ms2:
                    total = 0.0
                    for tj in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
                        if abs(tm1 + tm2) > tj:
                            continue
                        v = float(cg(Fraction(tj1, 2), Fraction(tm1, 2),
                                     Fraction(tj2, 2), Fraction(tm2, 2),
                                     Fraction(tj, 2), Fraction(tm1 + tm2, 2)))
                        total += v * v
                        w = float(cg(Fraction(tj2, 2), Fraction(tm2, 2),
                                     Fraction(tj1, 2), Fraction(tm1, 2),
                                     Fraction(tj, 2), Fraction(tm1 + tm2, 2)))
                        phase = (-1) ** ((tj1 + tj2 - tj) // 2)
                        worst_cg = max(worst_cg, abs(v - phase * w))
                    worst_cg = max(worst_cg, abs(total - 1.0))
    cg_ok = worst_cg <= 1e-12

    basis = enumerate_basis(SpaceSpec(3, HalfInt.of(4), "full"))
    mk_ok = check_MK(basis).max_abs_residual == 0.0
    cas_ok = np.array_equal(
        build_casimir_K(basis).mat.toarray(), build_casimir_M(basis).mat.toarray()
    )
    cfg = GellMannConfig(3, 1)
    uu = check_UU(basis, cfg, tolerance=1e-10)
    ok = cg_ok and mk_ok and cas_ok and uu.passed
    _report(
        "criterion 7: foundation suite (CG, [M,K]=0, Casimirs, [U,U]=0)", ok,
        f"cg {worst_cg:.1e}, MK exact {mk_ok}, casimir {cas_ok}, "
        f"UU {uu.max_abs_residual:.1e}",
    )


def test_criterion_8_truncation_stability():
    """Raising j_max from 6 to 8 flips no classification in the scan."""
    grid = default_scan_grid(3)
    at6 = [r.details["classification"]
           for r in validity_scan(grid, HalfInt.of(6))]
    at8 = [r.details["classification"]
           for r in validity_scan(grid, HalfInt.of(8))]
    ok = at6 == at8 and at6 == ["invalid", "valid", "valid"]
    _report("criterion 8: truncation stability j_max 6 -> 8", ok,
            f"at6={at6}, at8={at8}")
