"""Cartesian <-> spherical component maps for the adjoint and symmetric
traceless tensor families, anchored in the defining n-dimensional rep.

The bridge between Cartesian index pairs (a,b) and spherical components mu
is fixed once here and reused everywhere: Cartesian rotation generators are
declared to be i(E_ab - E_ba) in the defining rep, and the expansion of
those matrices over the spherical generator family defines the map.  The
same spherical-vector conventions then produce the symmetric-tensor map
and the spherical components of the distinguished x vector.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .coupling import IrrepLabel, cg
from .errors import ConfigError, InvalidLabelError
from .halfint import HalfInt, magnetic_range


def magnetic_labels(J: IrrepLabel):
    """Ordered magnetic multi-indices of an irrep (lexicographic)."""
    if J.n == 3:
        return [(m,) for m in magnetic_range(J.parts[0])]
    return [
        (m1, m2)
        for m1 in magnetic_range(J.parts[0])
        for m2 in magnetic_range(J.parts[1])
    ]


def adjoint_keys(n: int):
    if n == 3:
        return [(-1,), (0,), (1,)]
    return [("L", mu) for mu in (-1, 0, 1)] + [("R", mu) for mu in (-1, 0, 1)]


def sym_keys(n: int):
    if n == 3:
        return [(mu,) for mu in range(-2, 3)]
    return [(m1, m2) for m1 in (-1, 0, 1) for m2 in (-1, 0, 1)]


def _su2_spherical(j: HalfInt) -> dict:
    """Spherical angular-momentum components on the magnetic basis of spin j.

    Elements <j m'|J_mu|j m> = sqrt(j(j+1)) * C(j m; 1 mu | j m'), so J_0 is
    diagonal with eigenvalue m.
    """
    ms = magnetic_range(j)
    d = len(ms)
    scale = math.sqrt(float(j.as_fraction() * (j.as_fraction() + 1)))
    out = {}
    for mu in (-1, 0, 1):
        mat = np.zeros((d, d), dtype=complex)
        for col, m in enumerate(ms):
            mp = m + mu
            if abs(mp.twice) > j.twice:
                continue
            row = ms.index(mp)
            mat[row, col] = scale * float(cg(j, m, 1, mu, j, mp))
        out[mu] = mat
    return out


def spin_matrix_family(J: IrrepLabel) -> dict:
    """Spherical adjoint-family matrices on the magnetic basis of irrep J.

    Normalized so that (1/2) sum_ab (M_ab)^2 equals casimir2(J):
    n=3 components are the J_mu themselves, n=4 components are sqrt(2)
    times the left/right su(2) factors.
    """
    if J.n == 3:
        fam = _su2_spherical(J.parts[0])
        return {(mu,): mat for mu, mat in fam.items()}
    left = _su2_spherical(J.parts[0])
    right = _su2_spherical(J.parts[1])
    d1 = J.parts[0].twice + 1
    d2 = J.parts[1].twice + 1
    s = math.sqrt(2.0)
    out = {}
    for mu in (-1, 0, 1):
        out[("L", mu)] = s * np.kron(left[mu], np.eye(d2))
        out[("R", mu)] = s * np.kron(np.eye(d1), right[mu])
    return out


def spherical_vector_matrix(n: int) -> np.ndarray:
    """Unitary V whose columns are the spherical basis vectors of the
    defining rep, expressed in Cartesian coordinates.

    Column order follows magnetic_labels of the defining irrep.  For n=4
    the identification runs through the quaternion map
    q(x) = x4*I + i(x1 s1 + x2 s2 + x3 s3), w = q e^{-1}, under which
    SO(4) acts as the (1/2,1/2) representation.
    """
    if n == 3:
        s = 1 / math.sqrt(2)
        # columns: e_{-1}, e_0, e_{+1}
        return np.array(
            [
                [s, 0, -s],
                [-1j * s, 0, -1j * s],
                [0, 1, 0],
            ],
            dtype=complex,
        )
    if n == 4:
        s1 = np.array([[0, 1], [1, 0]], dtype=complex)
        s2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
        s3 = np.array([[1, 0], [0, -1]], dtype=complex)
        eye = np.eye(2, dtype=complex)
        eps_inv = np.array([[0, -1], [1, 0]], dtype=complex)
        quats = [1j * s1, 1j * s2, 1j * s3, eye]
        # tensor index (alpha, beta) with alpha, beta in {+1/2, -1/2} row
        # order of the Pauli matrices; magnetic basis order is (-1/2, +1/2)
        # per factor, lexicographic.
        order = {(-1, -1): (1, 1), (-1, 1): (1, 0), (1, -1): (0, 1), (1, 1): (0, 0)}
        labels = [(-1, -1), (-1, 1), (1, -1), (1, 1)]
        V = np.zeros((4, 4), dtype=complex)
        for a in range(4):
            w = quats[a] @ eps_inv / math.sqrt(2)
            col = np.zeros(4, dtype=complex)
            for i, lab in enumerate(labels):
                al, be = order[lab]
                col[i] = w[al, be]
            V[:, a] = col
        # V maps spin basis -> Cartesian; columns above are Cartesian -> spin,
        # so transpose the construction: build matrix with columns = spin
        # basis vectors in Cartesian coordinates, i.e. the inverse (dagger).
        return V.conj().T
    raise ConfigError(f"unsupported n={n}")


def _defining_label(n: int) -> IrrepLabel:
    if n == 3:
        return IrrepLabel.of(3, 1)
    return IrrepLabel.of(4, Fraction(1, 2), Fraction(1, 2))


class TensorComponentMap:
    """Expansion coefficients relating Cartesian-indexed operator families
    to spherical-component families, for the adjoint and the symmetric
    traceless tensor character.
    """

    def __init__(self, n: int):
        if n not in (3, 4):
            raise ConfigError(f"unsupported n={n}")
        self.n = n
        self.adjoint_keys = adjoint_keys(n)
        self.sym_keys = sym_keys(n)
        self.adjoint_pairs = [(a, b) for a in range(n) for b in range(n) if a < b]
        self.sym_pairs = [(a, b) for a in range(n) for b in range(n) if a <= b]
        V = spherical_vector_matrix(n)
        self._V = V

        # Defining-rep spherical generators in Cartesian coordinates.
        defining = _defining_label(n)
        fam = spin_matrix_family(defining)
        D = {key: V @ fam[key] @ V.conj().T for key in self.adjoint_keys}

        # Cartesian anchor: M_ab := i(E_ab - E_ba) in the defining rep.
        self._c_adj = {}
        for (a, b) in self.adjoint_pairs:
            F = np.zeros((n, n), dtype=complex)
            F[a, b] = 1j
            F[b, a] = -1j
            coeffs = np.array(
                [np.trace(D[k].conj().T @ F) / np.trace(D[k].conj().T @ D[k])
                 for k in self.adjoint_keys]
            )
            recon = sum(c * D[k] for c, k in zip(coeffs, self.adjoint_keys))
            if np.max(np.abs(recon - F)) > 1e-12:
                raise ConfigError("adjoint component expansion failed")
            self._c_adj[(a, b)] = coeffs

        # Orthonormal symmetric-traceless basis tensors, built by coupling
        # two defining vectors to the symmetric tensor irrep.
        self._sym_tensors = {}
        vec_labels = magnetic_labels(defining)
        cols = [V[:, i] for i in range(n)]
        for key in self.sym_keys:
            P = np.zeros((n, n), dtype=complex)
            for ia, la in enumerate(vec_labels):
                for ib, lb in enumerate(vec_labels):
                    c = self._vector_coupling(la, lb, key)
                    if c != 0.0:
                        P += c * np.outer(cols[ia], cols[ib])
            self._sym_tensors[key] = P

        gram = np.array(
            [
                [np.sum(self._sym_tensors[p].conj() * self._sym_tensors[q])
                 for q in self.sym_keys]
                for p in self.sym_keys
            ]
        )
        if np.max(np.abs(gram - np.eye(len(self.sym_keys)))) > 1e-13:
            raise ConfigError("symmetric tensor basis is not orthonormal")

        self._c_sym = {}
        for (a, b) in self.sym_pairs:
            S = np.zeros((n, n), dtype=complex)
            S[a, b] += 1.0
            S[b, a] += 1.0
            S -= (2.0 / n) * np.eye(n) * (1.0 if a == b else 0.0)
            coeffs = np.array(
                [np.sum(self._sym_tensors[k].conj() * S) for k in self.sym_keys]
            )
            recon = sum(c * self._sym_tensors[k] for c, k in zip(coeffs, self.sym_keys))
            if np.max(np.abs(recon - S)) > 1e-12:
                raise ConfigError("symmetric component expansion failed")
            # Operator-family convention: the Cartesian shear component T_ab
            # carries half the matrix-unit anchor, so that the closed-form
            # spherical matrix elements (with the published normalization
            # constant) close onto the rotation generators with unit
            # structure constants.
            self._c_sym[(a, b)] = 0.5 * coeffs

    def _vector_coupling(self, la, lb, key) -> float:
        """CG weight coupling two defining-rep vectors to the symmetric
        tensor component `key`."""
        if self.n == 3:
            return float(cg(1, la[0], 1, lb[0], 2, key[0]))
        h = Fraction(1, 2)
        left = cg(h, Fraction(la[0].twice, 2), h, Fraction(lb[0].twice, 2), 1, key[0])
        right = cg(h, Fraction(la[1].twice, 2), h, Fraction(lb[1].twice, 2), 1, key[1])
        return float(left * right)

    # -- family re-indexing ------------------------------------------------

    def cartesian_coefficients(self, kind: str):
        """dict (a,b) -> coefficient vector over the spherical key order."""
        if kind == "adjoint":
            return self._c_adj
        if kind == "symmetric":
            return self._c_sym
        raise ConfigError(f"unknown tensor kind {kind!r}")

    def spherical_keys(self, kind: str):
        return self.adjoint_keys if kind == "adjoint" else self.sym_keys

    def cartesian_pairs(self, kind: str):
        return self.adjoint_pairs if kind == "adjoint" else self.sym_pairs

    def coefficient_matrix(self, kind: str) -> np.ndarray:
        pairs = self.cartesian_pairs(kind)
        coeffs = self.cartesian_coefficients(kind)
        return np.array([coeffs[p] for p in pairs])

    def x_spherical(self, X: np.ndarray) -> np.ndarray:
        """Spherical components of a Cartesian symmetric traceless matrix."""
        return np.array(
            [np.sum(self._sym_tensors[k].conj() * X) for k in self.sym_keys]
        )

    def sym_tensor(self, key) -> np.ndarray:
        return self._sym_tensors[key]


def irrep_cartesian_generators(J: IrrepLabel, tmap: TensorComponentMap | None = None):
    """Rotation generator matrices M_ab acting on the magnetic basis of J."""
    tmap = tmap or TensorComponentMap(J.n)
    fam = spin_matrix_family(J)
    keys = tmap.adjoint_keys
    out = {}
    for pair, coeffs in tmap.cartesian_coefficients("adjoint").items():
        out[pair] = sum(c * fam[k] for c, k in zip(coeffs, keys))
    return out


def alpha_of(n: int, m_split: int) -> float:
    """Normalization constant (1/2) sqrt(m(n-m)/n) of the decontraction."""
    if not 1 <= m_split <= n - 1:
        raise ConfigError(f"m_split={m_split} out of range for n={n}")
    return 0.5 * math.sqrt(m_split * (n - m_split) / n)


def x_vector_cartesian(n: int, m_split: int) -> np.ndarray:
    """The distinguished traceless diagonal matrix, unit Frobenius norm."""
    if not 1 <= m_split <= n - 1:
        raise ConfigError(f"m_split={m_split} out of range for n={n}")
    scale = math.sqrt(m_split * (n - m_split) / n)
    diag = [1.0 / m_split] * m_split + [-1.0 / (n - m_split)] * (n - m_split)
    return scale * np.diag(diag).astype(complex)


def x_vector_of(n: int, m_split: int, tmap: TensorComponentMap | None = None) -> np.ndarray:
    """Spherical components of the distinguished x vector."""
    tmap = tmap or TensorComponentMap(n)
    return tmap.x_spherical(x_vector_cartesian(n, m_split))


def little_group_pairs(n: int, m_split: int):
    """Cartesian plane pairs (a,b) spanning L = Spin(m) x Spin(n-m)."""
    if not 1 <= m_split <= n - 1:
        raise ConfigError(f"m_split={m_split} out of range for n={n}")
    block1 = range(0, m_split)
    block2 = range(m_split, n)
    pairs = [(a, b) for a in block1 for b in block1 if a < b]
    pairs += [(a, b) for a in block2 for b in block2 if a < b]
    return pairs
