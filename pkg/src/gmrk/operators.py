"""Sparse generator matrices on a truncated basis: the rotation families
M (right action) and K (left action), the commuting multiplication
operators U, Casimirs, and the shear generators T built two ways — by the
decontraction commutator formula and by the closed-form matrix elements.

Conventions.  Spherical components follow Condon-Shortley with M_0
diagonal (eigenvalue m).  Cartesian components are anchored to the
defining rep via TensorComponentMap, under which the rotation family
satisfies [M_ab, M_cd] = i(d_ad M_bc + d_bc M_ad - d_ac M_bd - d_bd M_ac).
With that anchor the closed-form shear matrices are real, and the
commutator term of the decontraction formula carries no extra phase: the
textbook i in front of the commutator is absorbed by the same phase
convention that makes the closed form real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .coupling import IrrepLabel, casimir2, cg, cg_spin4, dim
from .errors import ConfigError, MissingComponentError, UnsupportedSpaceError
from .halfint import HalfInt
from .repspace import BasisIndex
from .tensormaps import (
    TensorComponentMap,
    alpha_of,
    irrep_cartesian_generators,
    little_group_pairs,
    spin_matrix_family,
    sym_keys,
    x_vector_of,
)

PRUNE_TOL = 1e-14

SYM_IRREP = {3: lambda: IrrepLabel.of(3, 2), 4: lambda: IrrepLabel.of(4, 1, 1)}


@dataclass
class OperatorMatrix:
    """A complex sparse matrix over an ordered basis, with its tensor tag."""

    basis: BasisIndex
    mat: sp.csr_matrix
    tensor_tag: str  # "adjoint" | "symmetric" | "scalar"
    component: object  # spherical key, cartesian pair, or None
    indexing: str = "spherical"  # "spherical" | "cartesian" | "none"

    def toarray(self) -> np.ndarray:
        return self.mat.toarray()

    def scaled(self, factor: complex) -> "OperatorMatrix":
        out = (factor * self.mat).tocsr()
        out.data[np.abs(out.data) < PRUNE_TOL] = 0.0
        out.eliminate_zeros()
        return OperatorMatrix(self.basis, out, self.tensor_tag, self.component, self.indexing)


@dataclass
class GellMannConfig:
    """Parameters of one decontraction run."""

    n: int
    m_split: int
    sigma: complex = 0.0
    u_norm: float = 1.0
    alpha: float = field(init=False)
    x_spherical: np.ndarray | None = None
    tmap: TensorComponentMap | None = None

    def __post_init__(self):
        if not 1 <= self.m_split <= self.n - 1:
            raise ConfigError(f"m_split={self.m_split} out of range for n={self.n}")
        if self.u_norm <= 0:
            raise ConfigError("u_norm must be positive")
        self.alpha = alpha_of(self.n, self.m_split)
        if self.tmap is None:
            self.tmap = TensorComponentMap(self.n)
        if self.x_spherical is None:
            self.x_spherical = x_vector_of(self.n, self.m_split, self.tmap)

    def x_invariance_residual(self) -> float:
        """Max norm of L-generator action on x in the symmetric-tensor rep."""
        gens = irrep_cartesian_generators(SYM_IRREP[self.n](), self.tmap)
        worst = 0.0
        for pair in little_group_pairs(self.n, self.m_split):
            worst = max(worst, float(np.max(np.abs(gens[pair] @ self.x_spherical))))
        return worst

    def require_invariant_x(self, tol: float = 1e-10) -> None:
        res = self.x_invariance_residual()
        if res > tol:
            raise ConfigError(
                f"x vector is not invariant under Spin({self.m_split})x"
                f"Spin({self.n - self.m_split}) (residual {res:.3e})"
            )


def _sym_cg_matrix(J: IrrepLabel, Jp: IrrepLabel, key) -> np.ndarray | None:
    """Matrix over (m', m) of the coupling C(J {2} J'; m key m')."""
    n = J.n
    if n == 3:
        j, jp = J.parts[0], Jp.parts[0]
        if jp.twice < abs(j.twice - 4) or jp.twice > j.twice + 4:
            return None
    else:
        for f in (0, 1):
            j, jp = J.parts[f], Jp.parts[f]
            if jp.twice < abs(j.twice - 2) or jp.twice > j.twice + 2:
                return None
    from .tensormaps import magnetic_labels

    rows = magnetic_labels(Jp)
    cols = magnetic_labels(J)
    out = np.zeros((len(rows), len(cols)))
    row_pos = {lab: i for i, lab in enumerate(rows)}
    for ci, m in enumerate(cols):
        if n == 3:
            mp = (m[0] + key[0],)
        else:
            mp = (m[0] + key[0], m[1] + key[1])
        ri = row_pos.get(mp)
        if ri is None:
            continue
        if n == 3:
            val = cg(J.parts[0], m[0], 2, key[0], Jp.parts[0], mp[0])
        else:
            val = cg_spin4(J, m, IrrepLabel.of(4, 1, 1), key, Jp, mp)
        out[ri, ci] = float(val)
    if not out.any():
        return None
    return out


def _k_coupling(J: IrrepLabel, Jp: IrrepLabel, cfg: GellMannConfig) -> np.ndarray | None:
    """Sum over symmetric components of x_nu * C(J {2} J'; k nu k')."""
    total = None
    for nu, key in enumerate(sym_keys(cfg.n)):
        xv = cfg.x_spherical[nu]
        if abs(xv) < 1e-15:
            continue
        blk = _sym_cg_matrix(J, Jp, key)
        if blk is None:
            continue
        term = xv * blk
        total = term if total is None else total + term
    return total


def _assemble(basis: BasisIndex, block_entries) -> sp.csr_matrix:
    """Build a csr matrix from {(Jp, J): dense block} over basis blocks."""
    size = len(basis)
    rows, cols, data = [], [], []
    for (Jp, J), blk in block_entries.items():
        bp = basis.blocks[Jp]
        b = basis.blocks[J]
        r, c = np.nonzero(np.abs(blk) >= PRUNE_TOL)
        rows.append(r + bp.start)
        cols.append(c + b.start)
        data.append(blk[r, c])
    if rows:
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
        data = np.concatenate(data).astype(complex)
    mat = sp.csr_matrix((data, (rows, cols)), shape=(size, size))
    return mat


def build_M(basis: BasisIndex) -> dict:
    """Right-action rotation generators, one spherical component each.

    Block diagonal in J and k; on the m index the matrix elements are the
    standard spherical generator elements (M_0 is diagonal with value m).
    """
    n = basis.spec.n
    out = {}
    fams = {J: spin_matrix_family(J) for J in basis.blocks}
    sample = fams[next(iter(fams))] if fams else {}
    for key in sample:
        blocks = {}
        for J, blk in basis.blocks.items():
            mm = fams[J][key]
            blocks[(J, J)] = np.kron(np.eye(blk.k_dim), mm)
        out[key] = OperatorMatrix(basis, _assemble(basis, blocks), "adjoint", key)
    return out


def build_K(basis: BasisIndex) -> dict:
    """Left-action rotation generators: same elements as M but on the k
    index.  On a coset basis the k index is frozen at the invariant vector
    and every component reduces to zero."""
    out = {}
    fams = {J: spin_matrix_family(J) for J in basis.blocks}
    sample = fams[next(iter(fams))] if fams else {}
    for key in sample:
        blocks = {}
        for J, blk in basis.blocks.items():
            km = fams[J][key]
            if basis.spec.mode == "coset":
                w = blk.invariant
                scalar = w @ km @ w
                kpart = np.array([[scalar]])
            else:
                kpart = km
            blocks[(J, J)] = np.kron(kpart, np.eye(blk.m_dim))
        out[key] = OperatorMatrix(basis, _assemble(basis, blocks), "adjoint", key)
    return out


def _casimir_matrix(basis: BasisIndex) -> sp.csr_matrix:
    diag = np.zeros(len(basis))
    for J, blk in basis.blocks.items():
        diag[blk.start : blk.start + blk.size] = float(casimir2(J))
    return sp.diags(diag).tocsr()


def build_casimir_K(basis: BasisIndex) -> OperatorMatrix:
    """Second-order Casimir of the left rotation family: C2(J) per block."""
    return OperatorMatrix(basis, _casimir_matrix(basis), "scalar", None, "none")


def build_casimir_M(basis: BasisIndex) -> OperatorMatrix:
    """Second-order Casimir of the right rotation family; equals the left
    one blockwise since both families share the irrep content."""
    return OperatorMatrix(basis, _casimir_matrix(basis), "scalar", None, "none")


def build_U(basis: BasisIndex, cfg: GellMannConfig, check_x: bool = True) -> dict:
    """Multiplication operators of the contracted Abelian sector, one per
    symmetric tensor component."""
    if cfg.n != basis.spec.n:
        raise ConfigError("config n does not match basis n")
    if check_x and basis.spec.mode == "coset":
        cfg.require_invariant_x()
    out = {}
    keys = sym_keys(cfg.n)
    kparts = {}
    for J in basis.blocks:
        for Jp in basis.blocks:
            if basis.spec.mode == "coset":
                ck = _k_coupling(J, Jp, cfg)
                if ck is None:
                    continue
                wj = basis.blocks[J].invariant
                wjp = basis.blocks[Jp].invariant
                kparts[(Jp, J)] = np.array([[wjp @ ck @ wj]])
            else:
                ck = _k_coupling(J, Jp, cfg)
                if ck is None:
                    continue
                kparts[(Jp, J)] = ck
    for ki, key in enumerate(keys):
        blocks = {}
        for (Jp, J), kpart in kparts.items():
            if np.max(np.abs(kpart)) < PRUNE_TOL:
                continue
            cm = _sym_cg_matrix(J, Jp, key)
            if cm is None:
                continue
            f = cfg.u_norm * math.sqrt(dim(J) / dim(Jp))
            blocks[(Jp, J)] = f * np.kron(kpart, cm)
        out[key] = OperatorMatrix(basis, _assemble(basis, blocks), "symmetric", key)
    return out


def build_T_gellmann(basis: BasisIndex, cfg: GellMannConfig, u_family: dict | None = None,
                     check_x: bool = True) -> dict:
    """Shear generators from the decontraction formula:
    T = alpha [C2_K, U]/|u| + sigma U/|u|, assembled by matrix products on
    the truncated space."""
    if u_family is None:
        u_family = build_U(basis, cfg, check_x=check_x)
    c2 = build_casimir_K(basis).mat
    out = {}
    for key, u in u_family.items():
        comm = c2 @ u.mat - u.mat @ c2
        t = (cfg.alpha * comm + cfg.sigma * u.mat) / cfg.u_norm
        t = t.tocsr()
        t.data[np.abs(t.data) < PRUNE_TOL] = 0.0
        t.eliminate_zeros()
        out[key] = OperatorMatrix(basis, t, "symmetric", key)
    return out


def build_T_closed(basis: BasisIndex, cfg: GellMannConfig) -> dict:
    """Shear generators from the closed-form matrix elements, defined on
    the reduced (coset) space only."""
    if basis.spec.mode != "coset":
        raise UnsupportedSpaceError(
            "closed-form shear matrix elements exist only on the coset space"
        )
    cfg.require_invariant_x()
    out = {}
    keys = sym_keys(cfg.n)
    invariant_factor = {}
    for J in basis.blocks:
        for Jp in basis.blocks:
            ck = _k_coupling(J, Jp, cfg)
            if ck is None:
                continue
            wj = basis.blocks[J].invariant
            wjp = basis.blocks[Jp].invariant
            val = wjp @ ck @ wj
            if abs(val) >= PRUNE_TOL:
                invariant_factor[(Jp, J)] = val
    for key in keys:
        blocks = {}
        for (Jp, J), kfac in invariant_factor.items():
            cm = _sym_cg_matrix(J, Jp, key)
            if cm is None:
                continue
            pref = cfg.alpha * math.sqrt(dim(J) / dim(Jp))
            dc = float(casimir2(Jp) - casimir2(J))
            blocks[(Jp, J)] = pref * (dc + cfg.sigma) * kfac * cm
        out[key] = OperatorMatrix(basis, _assemble(basis, blocks), "symmetric", key)
    return out


def cartesian_family(family: dict, tmap: TensorComponentMap, kind: str) -> dict:
    """Re-index a spherical component family by Cartesian pairs (a,b)."""
    keys = tmap.spherical_keys(kind)
    for key in keys:
        if key not in family:
            raise MissingComponentError(f"missing spherical component {key}")
    out = {}
    for pair, coeffs in tmap.cartesian_coefficients(kind).items():
        mat = None
        for c, key in zip(coeffs, keys):
            if abs(c) < 1e-15:
                continue
            term = c * family[key].mat
            mat = term if mat is None else mat + term
        if mat is None:
            mat = sp.csr_matrix(family[keys[0]].mat.shape, dtype=complex)
        mat = mat.tocsr()
        mat.data[np.abs(mat.data) < PRUNE_TOL] = 0.0
        mat.eliminate_zeros()
        sample = family[keys[0]]
        out[pair] = OperatorMatrix(sample.basis, mat, sample.tensor_tag, pair, "cartesian")
    return out


def spherical_family(family: dict, tmap: TensorComponentMap, kind: str) -> dict:
    """Inverse of cartesian_family (round trip is identity to 1e-13)."""
    pairs = tmap.cartesian_pairs(kind)
    for pair in pairs:
        if pair not in family:
            raise MissingComponentError(f"missing cartesian component {pair}")
    C = tmap.coefficient_matrix(kind)  # [pair, sph]
    G = np.linalg.pinv(C)  # [sph, pair]
    keys = tmap.spherical_keys(kind)
    out = {}
    for si, key in enumerate(keys):
        mat = None
        for pi, pair in enumerate(pairs):
            c = G[si, pi]
            if abs(c) < 1e-15:
                continue
            term = c * family[pair].mat
            mat = term if mat is None else mat + term
        mat = mat.tocsr()
        mat.data[np.abs(mat.data) < PRUNE_TOL] = 0.0
        mat.eliminate_zeros()
        sample = family[pairs[0]]
        out[key] = OperatorMatrix(sample.basis, mat, sample.tensor_tag, key, "spherical")
    return out


def to_su_n(t_family: dict) -> dict:
    """Map shear generators to their su(n) counterparts: multiply by i."""
    out = {}
    for key, op in t_family.items():
        scaled = op.scaled(1j)
        scaled.tensor_tag = "symmetric-su"
        out[key] = scaled
    return out
