"""Unitarity of LDOI triples and sampling of unitary class members."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ._linalg import haar_unitary, random_phases, unitarity_defect
from .embed import embed, pair_block, pair_order
from .triples import EPS_EQ, InvarianceClass, MatrixTriple

EPS_U = 1e-9


class Field(enum.Enum):
    COMPLEX = "complex"
    REAL = "real"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {"c": "complex", "r": "real"}
        value = str(value).lower()
        return cls(aliases.get(value, value))


@dataclass
class UnitarityReport:
    is_unitary: bool
    b_defect: float
    worst_pair: tuple | None
    pair_defect: float
    phase_witnesses: dict = field(default_factory=dict)
    condition_defect: float = 0.0
    realness_defect: float = 0.0
    conditions_agree: bool = True

    def to_dict(self):
        return {
            "is_unitary": self.is_unitary,
            "b_defect": self.b_defect,
            "worst_pair": list(self.worst_pair) if self.worst_pair else None,
            "pair_defect": self.pair_defect,
            "condition_defect": self.condition_defect,
            "realness_defect": self.realness_defect,
            "conditions_agree": self.conditions_agree,
            "phase_witnesses": {
                f"{i},{j}": None if w is None else [w.real, w.imag]
                for (i, j), w in self.phase_witnesses.items()
            },
        }


def phase_witness(a_ij, a_ji, c_ij, c_ji, tol=EPS_U):
    """Phase ``w`` with ``a_ji = w conj(a_ij)`` and ``c_ji = -w conj(c_ij)``.

    Read off from whichever of ``a_ij``, ``c_ij`` has the larger modulus and
    normalised onto the circle; ``None`` when both vanish.
    """
    if max(abs(a_ij), abs(c_ij)) <= tol:
        return None
    if abs(a_ij) >= abs(c_ij):
        w = a_ji / np.conj(a_ij)
    else:
        w = -c_ji / np.conj(c_ij)
    if abs(w) == 0:
        return None
    return complex(w / abs(w))


def pair_condition_defect(a_ij, a_ji, c_ij, c_ji, real=False, tol=EPS_U):
    """Largest violation of the per-pair unitarity conditions.

    Conditions: ``|a_ij|^2 + |c_ij|^2 = 1`` and a common phase ``w`` (a
    sign in the real case) with ``a_ji = w conj(a_ij)``, ``c_ji = -w conj(c_ij)``.
    The norm condition is tested first so a vanishing pair never needs a
    phase.
    """
    norm = abs(abs(a_ij) ** 2 + abs(c_ij) ** 2 - 1.0)
    w = phase_witness(a_ij, a_ji, c_ij, c_ji, tol)
    if w is None:
        return max(norm, 1.0), None
    phase = max(abs(a_ji - w * np.conj(a_ij)), abs(c_ji + w * np.conj(c_ij)))
    if real:
        phase = max(phase, abs(w.imag))
    return max(norm, phase), w


def check_unitary(t, field=Field.COMPLEX, tol=EPS_U):
    """Unitarity (orthogonality for ``field='real'``) of ``X(t)``.

    Two routes are evaluated: the entrywise conditions on ``A`` and ``C``
    and the unitarity of each 2x2 pair block. ``conditions_agree`` records
    whether they reach the same verdict.
    """
    field = Field.parse(field)
    real = field is Field.REAL
    A, B, C = t.as_tuple()
    realness = max(float(np.max(np.abs(M.imag))) for M in (A, B, C)) if real else 0.0
    Bm = B.real if real else B
    b_defect = unitarity_defect(Bm)

    worst_pair, worst_block = None, 0.0
    cond_worst = 0.0
    witnesses = {}
    for i, j in pair_order(t.dim):
        block = pair_block(A, C, i, j)
        bd = unitarity_defect(block.real if real else block)
        if worst_pair is None or bd > worst_block:
            worst_pair, worst_block = (i, j), bd
        cd, w = pair_condition_defect(A[i, j], A[j, i], C[i, j], C[j, i], real, tol)
        cond_worst = max(cond_worst, cd)
        witnesses[(i, j)] = w

    real_ok = realness <= EPS_EQ
    by_conditions = b_defect <= tol and cond_worst <= tol and real_ok
    by_blocks = b_defect <= tol and worst_block <= tol and real_ok
    return UnitarityReport(
        is_unitary=by_conditions and by_blocks,
        b_defect=b_defect,
        worst_pair=worst_pair,
        pair_defect=worst_block,
        phase_witnesses=witnesses,
        condition_defect=cond_worst,
        realness_defect=realness,
        conditions_agree=by_conditions == by_blocks,
    )


def is_unitary(t, field=Field.COMPLEX, tol=EPS_U):
    return check_unitary(t, field, tol).is_unitary


def dense_unitarity_defect(t):
    return unitarity_defect(embed(t))


def random_unitary(d, cls=InvarianceClass.LDOI, field=Field.COMPLEX, seed=None):
    """Random unitary (orthogonal) member of an invariance class.

    Drawn through the block parametrisation: a Haar ``B`` (or diagonal
    phases for LDUI) and an independent Haar 2x2 block per pair ``i<j``
    (a single phase per off-diagonal ``A`` entry for CLDUI).
    """
    cls = InvarianceClass.parse(cls)
    real = Field.parse(field) is Field.REAL
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    dtype = float if real else complex

    if cls is InvarianceClass.LDUI:
        B = np.diag(random_phases(d, rng, real)).astype(dtype)
    else:
        B = haar_unitary(d, rng, real)
    A = np.diag(np.diagonal(B)).astype(dtype)
    C = A.copy()
    for i, j in pair_order(d):
        if cls is InvarianceClass.CLDUI:
            A[i, j], A[j, i] = random_phases(2, rng, real)
            continue
        U = haar_unitary(2, rng, real)
        A[i, j], C[i, j] = U[0]
        C[j, i], A[j, i] = U[1]
    return MatrixTriple(A, B, C)


def subgroup_dim(d, cls=InvarianceClass.LDOI, field=Field.COMPLEX):
    """Real dimension of the unitary (orthogonal) subgroup of a class."""
    cls = InvarianceClass.parse(cls)
    pairs = d * (d - 1) // 2
    if Field.parse(field) is Field.REAL:
        od = d * (d - 1) // 2
        return {
            InvarianceClass.LDOI: od + pairs,
            InvarianceClass.LDUI: pairs,
            InvarianceClass.CLDUI: od,
        }[cls]
    return {
        InvarianceClass.LDOI: d * d + 4 * pairs,
        InvarianceClass.LDUI: d + 4 * pairs,
        InvarianceClass.CLDUI: d * d + 2 * pairs,
    }[cls]


subgroup_dims = subgroup_dim


def _class_coordinates(d, cls, real):
    """Real basis of the class subspace as a list of triples."""
    from .triples import subspace_basis

    basis = []
    n = d * d
    scalars = (1.0,) if real else (1.0, 1j)
    for row in subspace_basis(d, cls):
        for s in scalars:
            v = s * row.astype(complex)
            basis.append(MatrixTriple(*(v[k * n:(k + 1) * n].reshape(d, d) for k in range(3))))
    return basis


def tangent_dim(t, cls=InvarianceClass.LDOI, field=Field.COMPLEX, h=1e-6):
    """Dimension of the unitary subgroup measured at the point ``t``.

    Kernel dimension of the Jacobian of ``t -> X(t) X(t)^dagger - 1``
    restricted to the class subspace, by central differences (exact up to
    rounding since the map is quadratic).
    """
    cls = InvarianceClass.parse(cls)
    real = Field.parse(field) is Field.REAL
    basis = _class_coordinates(t.dim, cls, real)
    X0 = embed(t)

    def F(X):
        G = X @ X.conj().T
        if real:
            return G.real.ravel()
        return np.concatenate([G.real.ravel(), G.imag.ravel()])

    cols = []
    for e in basis:
        E = embed(e)
        cols.append((F(X0 + h * E) - F(X0 - h * E)) / (2 * h))
    J = np.array(cols).T
    s = np.linalg.svd(J, compute_uv=False)
    rank = int(np.count_nonzero(s > max(J.shape) * s[0] * 1e-8))
    return len(basis) - rank
