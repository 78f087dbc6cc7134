"""Truncated orthonormal bases of L^2(Spin(n)) and their coset reductions.

Full mode enumerates every |J; k m> with J up to the cutoff, including the
half-integer (double cover) sector.  Coset mode keeps one k-column per
irrep: the vector annihilated by the left action of Spin(m) x Spin(n-m),
found explicitly as the null space of the left-generator matrices.  The
invariant column is recorded with the conventional label k = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coupling import IrrepLabel, dim
from .errors import ConfigError
from .halfint import HalfInt, ZERO, magnetic_range
from .tensormaps import (
    TensorComponentMap,
    irrep_cartesian_generators,
    little_group_pairs,
    magnetic_labels,
)

_NULL_TOL = 1e-10


@dataclass(frozen=True)
class BasisState:
    J: IrrepLabel
    k: tuple
    m: tuple

    def sort_key(self):
        return (
            tuple(p.twice for p in self.J.parts),
            tuple(v.twice for v in self.k),
            tuple(v.twice for v in self.m),
        )


@dataclass(frozen=True)
class SpaceSpec:
    n: int
    j_max: HalfInt
    mode: str
    m_split: int = 1

    def __post_init__(self):
        if self.n not in (3, 4):
            raise ConfigError(f"unsupported n={self.n}")
        if self.mode not in ("full", "coset"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if HalfInt.of(self.j_max).twice < 0:
            raise ConfigError("j_max must be non-negative")
        if self.mode == "coset" and not 1 <= self.m_split <= self.n - 1:
            raise ConfigError(
                f"m_split={self.m_split} out of range for n={self.n}"
            )


@dataclass
class Block:
    """Per-irrep segment of the basis: offset plus in-block index orders."""

    J: IrrepLabel
    start: int
    k_labels: list
    m_labels: list
    invariant: np.ndarray | None = None  # coset: invariant k-vector over dim(J)

    @property
    def k_dim(self) -> int:
        return len(self.k_labels)

    @property
    def m_dim(self) -> int:
        return len(self.m_labels)

    @property
    def size(self) -> int:
        return self.k_dim * self.m_dim


@dataclass
class BasisIndex:
    spec: SpaceSpec
    states: list
    blocks: dict = field(default_factory=dict)
    lookup: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.lookup:
            self.lookup = {s: i for i, s in enumerate(self.states)}

    def __len__(self) -> int:
        return len(self.states)

    def position(self, state: BasisState) -> int:
        return self.lookup[state]


def _irrep_labels(spec: SpaceSpec):
    tj_max = HalfInt.of(spec.j_max).twice
    if spec.n == 3:
        return [IrrepLabel(3, (HalfInt(t),)) for t in range(0, tj_max + 1)]
    return [
        IrrepLabel(4, (HalfInt(t1), HalfInt(t2)))
        for t1 in range(0, tj_max + 1)
        for t2 in range(0, tj_max + 1)
    ]


def invariant_k_vector(J: IrrepLabel, m_split: int, tmap: TensorComponentMap | None = None):
    """Unit vector in the k-space of irrep J annihilated by every generator
    of L = Spin(m) x Spin(n-m), or None when no such vector exists.

    Membership is decided by an explicit null-space computation, not label
    bookkeeping.  The sign is fixed by making the highest-k nonzero
    component positive.
    """
    tmap = tmap or TensorComponentMap(J.n)
    pairs = little_group_pairs(J.n, m_split)
    d = dim(J)
    if not pairs:
        raise ConfigError("little group has no generators")
    gens = irrep_cartesian_generators(J, tmap)
    stack = np.vstack([gens[p] for p in pairs])
    _, sing, vh = np.linalg.svd(stack)
    sing = np.concatenate([sing, np.zeros(d - len(sing))])
    null_dim = int(np.sum(sing < _NULL_TOL))
    if null_dim == 0:
        return None
    if null_dim > 1:
        raise ConfigError(
            f"irrep {J} carries {null_dim} invariant vectors; "
            "multiplicity-free reduction expected"
        )
    v = vh[-1].conj()
    # orient: scan from the highest magnetic label down, first nonzero > 0
    for i in range(d - 1, -1, -1):
        if abs(v[i]) > 1e-8:
            v = v * (abs(v[i]) / v[i])
            break
    if np.max(np.abs(v.imag)) > 1e-10:
        raise ConfigError(f"invariant vector of {J} is not real after phase fix")
    v = v.real
    return v / np.linalg.norm(v)


def enumerate_basis(spec: SpaceSpec) -> BasisIndex:
    """Complete, deterministically ordered basis for the given space."""
    tmap = TensorComponentMap(spec.n)
    states = []
    blocks = {}
    zero_k = tuple([ZERO] * (1 if spec.n == 3 else 2))
    for J in _irrep_labels(spec):
        m_labels = magnetic_labels(J)
        if spec.mode == "full":
            k_labels = m_labels
            invariant = None
        else:
            w = invariant_k_vector(J, spec.m_split, tmap)
            if w is None:
                continue
            k_labels = [zero_k]
            invariant = w
        block = Block(J, len(states), list(k_labels), list(m_labels), invariant)
        blocks[J] = block
        for k in k_labels:
            for m in m_labels:
                states.append(BasisState(J, tuple(k), tuple(m)))
    return BasisIndex(spec, states, blocks)


def interior_projector(index: BasisIndex, margin) -> BasisIndex:
    """Subset of states far enough from the cutoff that operator products
    shifting J by up to `margin` are unaffected by truncation."""
    margin = HalfInt.of(margin)
    if margin.twice < 0:
        raise ConfigError("margin must be non-negative")
    cut = HalfInt.of(index.spec.j_max).twice - margin.twice
    keep = [s for s in index.states if max(p.twice for p in s.J.parts) <= cut]
    blocks = {}
    pos = 0
    for J, blk in index.blocks.items():
        if max(p.twice for p in J.parts) <= cut:
            blocks[J] = Block(J, pos, blk.k_labels, blk.m_labels, blk.invariant)
            pos += blk.size
    return BasisIndex(index.spec, keep, blocks)


def interior_mask(index: BasisIndex, margin) -> np.ndarray:
    """Boolean mask over index positions selecting interior states."""
    sub = interior_projector(index, margin)
    mask = np.zeros(len(index), dtype=bool)
    for s in sub.states:
        mask[index.position(s)] = True
    return mask


def multiplicity_audit(index: BasisIndex) -> dict:
    """Number of distinct k-columns present for each irrep."""
    return {J: blk.k_dim for J, blk in index.blocks.items()}
