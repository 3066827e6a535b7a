"""Dual, PT and perfect unitarity for LDOI triples.

A unitary ``X`` is *dual* when its realignment is unitary too, *PT* when its
partial transpose is, and *perfect* when both hold. Realignment swaps ``A``
and ``B`` in the triple and partial transposition swaps ``B`` and ``C``, so
every test here reduces to entrywise conditions on ``(A, B, C)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ._linalg import haar_unitary, unitarity_defect
from .embed import pair_order
from .triples import MatrixTriple, partial_transpose, realign
from .unitary import EPS_U, check_unitary


@dataclass
class DualityReport:
    is_dual: bool
    is_pt: bool
    is_perfect: bool
    a_defect: float
    b_defect: float
    c_defect: float
    modulus_ab_defect: float
    modulus_ac_defect: float
    dual_phase_defect: float
    pt_modulus_defect: float
    pt_phase_defect: float
    dual_phases: dict = field(default_factory=dict)
    routes_agree: bool = True

    def to_dict(self):
        out = {k: v for k, v in self.__dict__.items() if k != "dual_phases"}
        out["dual_phases"] = {
            f"{i},{j}": None if w is None else [w.real, w.imag]
            for (i, j), w in self.dual_phases.items()
        }
        return out


def _common_phase(pairs, signs):
    """Fit one phase ``w`` to ``y = s * w * conj(x)`` for each ``(x, y)``.

    Returns the phase (or ``None`` if every ``x`` vanishes) and the largest
    residual.
    """
    best = max(pairs, key=lambda p: abs(p[0]))
    if abs(best[0]) <= EPS_U:
        # all x vanish: the relations force y = 0 too
        return None, max(abs(y) for _, y in pairs)
    k = pairs.index(best)
    w = signs[k] * best[1] / np.conj(best[0])
    w = w / abs(w) if abs(w) > 0 else 1.0
    resid = max(abs(y - s * w * np.conj(x)) for (x, y), s in zip(pairs, signs))
    return complex(w), float(resid)


def check_special(t, tol=EPS_U):
    """Dual / PT / perfect membership of ``X(t)``.

    The entrywise conditions are compared with the definitional tests
    (unitarity of ``X``, ``X^R`` and ``X^G``); ``routes_agree`` is False if
    the two ever disagree.
    """
    A, B, C = t.as_tuple()
    a_def, b_def, c_def = (unitarity_defect(M) for M in (A, B, C))
    mod_ab = mod_ac = dual_phase = 0.0
    pt_mod = pt_phase = 0.0
    phases = {}
    for i, j in pair_order(t.dim):
        a2, b2, c2 = abs(A[i, j]) ** 2, abs(B[i, j]) ** 2, abs(C[i, j]) ** 2
        mod_ab = max(mod_ab, abs(a2 - b2))
        mod_ac = max(mod_ac, abs(a2 + c2 - 1.0))
        w, r = _common_phase(
            [(A[i, j], A[j, i]), (B[i, j], B[j, i]), (C[i, j], C[j, i])], [1, 1, -1]
        )
        phases[(i, j)] = w
        dual_phase = max(dual_phase, r)

        # PT: X and X^G = (A, C, B) unitary
        pt_mod = max(pt_mod, abs(a2 + c2 - 1.0), abs(a2 + b2 - 1.0))
        _, r1 = _common_phase([(A[i, j], A[j, i]), (C[i, j], C[j, i])], [1, -1])
        _, r2 = _common_phase([(A[i, j], A[j, i]), (B[i, j], B[j, i])], [1, -1])
        pt_phase = max(pt_phase, r1, r2)

    dual_cond = max(a_def, b_def, mod_ab, mod_ac, dual_phase) <= tol
    pt_cond = max(b_def, c_def, pt_mod, pt_phase) <= tol

    base = check_unitary(t, tol=tol).is_unitary
    dual_def = base and check_unitary(realign(t), tol=tol).is_unitary
    pt_def = base and check_unitary(partial_transpose(t), tol=tol).is_unitary

    return DualityReport(
        is_dual=dual_def,
        is_pt=pt_def,
        is_perfect=dual_def and pt_def,
        a_defect=a_def,
        b_defect=b_def,
        c_defect=c_def,
        modulus_ab_defect=mod_ab,
        modulus_ac_defect=mod_ac,
        dual_phase_defect=dual_phase,
        pt_modulus_defect=pt_mod,
        pt_phase_defect=pt_phase,
        dual_phases=phases,
        routes_agree=(dual_cond == dual_def) and (pt_cond == pt_def),
    )


def is_dual(t, tol=EPS_U):
    return check_special(t, tol).is_dual


class DualFamily(enum.Enum):
    PROJECTION = "projection"
    PHASE_PROJECTION = "phase-projection"
    LDUI_PHASES = "ldui"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        value = str(value).lower().replace("_", "-")
        if value == "ldui-phases":
            value = "ldui"
        return cls(value)


def check_projection(P, tol=EPS_U):
    P = np.asarray(P, dtype=complex)
    defect = max(np.linalg.norm(P @ P - P), np.linalg.norm(P - P.conj().T))
    if defect > tol:
        raise ValueError(f"P is not an orthogonal projection (defect {defect:.3g})")
    return P


def random_projection(d, rank, seed=None, real=False):
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    Q = haar_unitary(d, rng, real)[:, :rank]
    return Q @ Q.conj().T


def _complete_c(A, omega, phases=None):
    d = A.shape[0]
    C = np.diag(np.diagonal(A)).astype(complex)
    for i, j in pair_order(d):
        a2 = abs(A[i, j]) ** 2
        if a2 > 1.0 + EPS_U:
            raise AssertionError(f"|A[{i},{j}]| > 1 cannot occur for a unitary A")
        rad = 1.0 - a2
        mod = 0.0 if rad <= EPS_U else np.sqrt(rad)
        phase = 1.0 if phases is None else phases[i, j] / abs(phases[i, j])
        C[i, j] = mod * phase
        C[j, i] = -omega * np.conj(C[i, j])
    return C


def make_dual(d, family, P=None, omega=1.0, C=None, phases=None):
    """Dual unitary triple from one of the three explicit families.

    ``projection``: ``A = B = 2P - 1``; ``phase-projection``:
    ``A = B = sqrt(omega) (2P - 1)``; ``ldui``: ``A = B = diag C`` for a
    matrix ``C`` of unimodular entries. For the projection families the
    off-diagonal ``C_ij`` (``i<j``) have modulus ``sqrt(1 - |A_ij|^2)`` and
    phase taken from ``phases`` (real positive by default).
    """
    family = DualFamily.parse(family)
    if family is DualFamily.LDUI_PHASES:
        if C is None:
            raise ValueError("the ldui family needs a phase matrix C")
        C = np.asarray(C, dtype=complex)
        if C.shape != (d, d):
            raise ValueError(f"C must be {d}x{d}")
        if np.max(np.abs(np.abs(C) - 1.0)) > EPS_U:
            raise ValueError("every entry of C must have modulus 1")
        D = np.diag(np.diagonal(C))
        return MatrixTriple(D, D, C)

    if P is None:
        raise ValueError(f"the {family.value} family needs a projection P")
    P = check_projection(P)
    if P.shape != (d, d):
        raise ValueError(f"P must be {d}x{d}")
    H = 2 * P - np.eye(d)
    if family is DualFamily.PROJECTION:
        w = 1.0
        A = H
    else:
        w = complex(omega)
        if abs(abs(w) - 1.0) > EPS_U:
            raise ValueError("omega must be a phase")
        A = np.sqrt(w) * H
    return MatrixTriple(A, A.copy(), _complete_c(A, w, phases))


@dataclass
class PerfectWitness:
    """Why a triple cannot be perfect.

    ``kind`` is ``"modulus"`` (an off-diagonal entry is not ``1/sqrt 2``),
    ``"phase"`` (the phases demanded by duality and by PT unitarity are
    negatives of each other) or ``"vacuous"`` (d = 1, nothing to certify).
    """

    kind: str
    pair: tuple | None
    detail: str
    values: dict = field(default_factory=dict)

    @property
    def certified(self):
        return self.kind in ("modulus", "phase")


def perfect_witness(t, tol=EPS_U):
    """Certificate that ``X(t)`` is not perfect.

    For each pair ``i<j`` perfection forces ``|A_ij| = |B_ij| = |C_ij| =
    1/sqrt 2``. When that holds, duality forces ``B_ji = w conj(B_ij)`` and
    ``A_ji = w conj(A_ij)`` while PT unitarity forces ``B_ji = l conj(B_ij)``
    and ``A_ji = -l conj(A_ij)``; reading ``B`` gives ``w = l`` and reading
    ``A`` gives ``w = -l``, impossible for a phase. The first failing
    requirement is returned.
    """
    d = t.dim
    if d < 2:
        return PerfectWitness("vacuous", None, "d = 1 has no off-diagonal pairs")
    A, B, C = t.as_tuple()
    target = 1 / np.sqrt(2)
    for i, j in pair_order(d):
        for name, M in (("A", A), ("B", B), ("C", C)):
            for a, b in ((i, j), (j, i)):
                m = abs(M[a, b])
                if abs(m - target) > tol:
                    return PerfectWitness(
                        "modulus",
                        (i, j),
                        f"|{name}[{a},{b}]| = {m:.6g} != 1/sqrt(2)",
                        {"entry": f"{name}[{a},{b}]", "modulus": float(m)},
                    )
    i, j = 0, 1
    # dual relation read on A, PT relation read on B
    omega = A[j, i] / np.conj(A[i, j])
    lam = B[j, i] / np.conj(B[i, j])
    return PerfectWitness(
        "phase",
        (i, j),
        "w = l (from B) and w = -l (from A, C) cannot both hold for |w| = |l| = 1",
        {
            "omega": complex(omega),
            "lambda": complex(lam),
            "omega_minus_lambda": float(abs(omega - lam)),
            "omega_plus_lambda": float(abs(omega + lam)),
        },
    )
