"""Matrix-triple coordinates for local diagonal orthogonal invariant operators.

An operator on C^d (x) C^d that commutes with every ``O (x) O`` (``O`` a
diagonal sign matrix) is fixed by three d x d matrices ``(A, B, C)`` with a
common diagonal:

    X = sum_ij A_ij |ij><ij| + sum_{i!=j} B_ij |ii><jj| + sum_{i!=j} C_ij |ij><ji|

This module holds that data model, the validity rules for the three
invariance classes, the two bilinear products on triples and the four
coordinate involutions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

EPS_EQ = 1e-10


class TripleError(ValueError):
    """Structural problem with a triple (shapes, dimensions)."""


class InvarianceClass(enum.Enum):
    LDUI = "ldui"
    CLDUI = "cldui"
    LDOI = "ldoi"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown invariance class {value!r}") from None


def _offdiag(M):
    return M - np.diag(np.diagonal(M))


@dataclass(frozen=True, eq=False)
class MatrixTriple:
    """Three d x d complex matrices ``(A, B, C)`` defining an LDOI operator.

    Shapes are checked on construction; the shared-diagonal rule is not
    (use :func:`validate`), so that malformed triples can still be
    inspected and reported on.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        mats = []
        for name in "ABC":
            M = np.array(getattr(self, name), dtype=complex)
            if M.ndim != 2 or M.shape[0] != M.shape[1]:
                raise TripleError(f"{name} must be a square matrix, got shape {M.shape}")
            if M.shape[0] < 1:
                raise TripleError(f"{name} is empty")
            M.setflags(write=False)
            object.__setattr__(self, name, M)
            mats.append(M)
        if not (mats[0].shape == mats[1].shape == mats[2].shape):
            raise TripleError(
                "dimension mismatch: A %s, B %s, C %s" % tuple(M.shape for M in mats)
            )

    @property
    def dim(self):
        return self.A.shape[0]

    @property
    def B_tilde(self):
        return _offdiag(self.B)

    @property
    def C_tilde(self):
        return _offdiag(self.C)

    def as_tuple(self):
        return self.A, self.B, self.C

    def is_real(self, tol=EPS_EQ):
        return all(np.max(np.abs(M.imag)) <= tol for M in self.as_tuple())

    def __add__(self, other):
        if not isinstance(other, MatrixTriple):
            return NotImplemented
        _check_same_dim(self, other)
        return MatrixTriple(self.A + other.A, self.B + other.B, self.C + other.C)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, scalar):
        if isinstance(scalar, MatrixTriple):
            return NotImplemented
        return MatrixTriple(scalar * self.A, scalar * self.B, scalar * self.C)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return triple_product(self, other)

    def distance(self, other):
        """Largest Frobenius distance between corresponding components."""
        _check_same_dim(self, other)
        return max(
            float(np.linalg.norm(M - N)) for M, N in zip(self.as_tuple(), other.as_tuple())
        )

    def allclose(self, other, atol=1e-12):
        return self.dim == other.dim and self.distance(other) <= atol

    def __repr__(self):
        return f"MatrixTriple(d={self.dim})"

    @classmethod
    def identity(cls, d):
        """Triple of ``1_d (x) 1_d``: ``(J, 1, 1)``."""
        return cls(np.ones((d, d)), np.eye(d), np.eye(d))

    @classmethod
    def swap(cls, d):
        """Triple of the swap gate: ``(1, 1, J)``."""
        return cls(np.eye(d), np.eye(d), np.ones((d, d)))

    @classmethod
    def from_ldui(cls, A, C):
        """LDUI operator: ``B`` is forced to ``diag A``."""
        A = np.asarray(A, dtype=complex)
        return cls(A, np.diag(np.diagonal(A)), C)

    @classmethod
    def from_cldui(cls, A, B):
        """CLDUI operator: ``C`` is forced to ``diag A``."""
        A = np.asarray(A, dtype=complex)
        return cls(A, B, np.diag(np.diagonal(A)))


def _check_same_dim(t1, t2):
    if t1.dim != t2.dim:
        raise TripleError(f"dimension mismatch: {t1.dim} vs {t2.dim}")


@dataclass
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate(t, cls=InvarianceClass.LDOI, tol=EPS_EQ):
    """Check the shared-diagonal rule and the class-specific constraint.

    Structural problems raise :class:`TripleError` when the triple is
    built, so by the time a :class:`MatrixTriple` exists only constraint
    violations remain and those are reported, not raised.
    """
    cls = InvarianceClass.parse(cls)
    violations = []
    dA, dB, dC = (np.diagonal(M) for M in t.as_tuple())
    if np.max(np.abs(dA - dB)) > tol:
        violations.append("diag(A) != diag(B)")
    if np.max(np.abs(dA - dC)) > tol:
        violations.append("diag(A) != diag(C)")
    if cls is InvarianceClass.LDUI and np.max(np.abs(t.B_tilde)) > tol:
        violations.append("B not diagonal")
    if cls is InvarianceClass.CLDUI and np.max(np.abs(t.C_tilde)) > tol:
        violations.append("C not diagonal")
    return ValidationReport(not violations, violations)


def triple_product(t1, t2):
    """Triple of the matrix product ``X(t1) X(t2)``.

    The diagonal corrections are kept in their long form; they only serve
    to restore the shared diagonal.
    """
    _check_same_dim(t1, t2)
    A1, B1, C1 = t1.as_tuple()
    A2, B2, C2 = t2.as_tuple()
    BB = B1 @ B2
    A_off = A1 * A2 + C1 * C2.T
    C_off = A1 * C2 + C1 * A2.T
    A = A_off + np.diag(np.diagonal(BB - A_off))
    C = C_off + np.diag(np.diagonal(BB - C_off))
    return MatrixTriple(A, BB, C)


def triple_compose(t1, t2):
    """Composition of the associated diagonal-orthogonal-covariant maps."""
    _check_same_dim(t1, t2)
    A1, B1, C1 = t1.as_tuple()
    A2, B2, C2 = t2.as_tuple()
    AA = A1 @ A2
    corr = np.diag(np.diagonal(AA - 2 * A1 * A2))
    return MatrixTriple(AA, B1 * B2 + C1 * C2.T + corr, B1 * C2 + C1 * B2.T + corr)


class Symmetry(enum.Enum):
    TRANSPOSE = "transpose"
    ADJOINT = "adjoint"
    REALIGN = "realign"
    PARTIAL_TRANSPOSE = "partial_transpose"


def symmetry(t, op):
    op = Symmetry(op) if not isinstance(op, Symmetry) else op
    A, B, C = t.as_tuple()
    if op is Symmetry.TRANSPOSE:
        return MatrixTriple(A, B.T, C.T)
    if op is Symmetry.ADJOINT:
        return MatrixTriple(A.conj(), B.conj().T, C.conj().T)
    if op is Symmetry.REALIGN:
        return MatrixTriple(B, A, C)
    return MatrixTriple(A, C, B)


def transpose(t):
    return symmetry(t, Symmetry.TRANSPOSE)


def adjoint(t):
    return symmetry(t, Symmetry.ADJOINT)


def realign(t):
    return symmetry(t, Symmetry.REALIGN)


def partial_transpose(t):
    return symmetry(t, Symmetry.PARTIAL_TRANSPOSE)


def times_swap(t):
    """Triple of ``X(t) S``: ``A`` and ``C`` trade places."""
    return MatrixTriple(t.C, t.B, t.A)


def subspace_basis(d, cls=InvarianceClass.LDOI):
    """Exact 0/1 basis of the vectorised class subspace.

    Each row is ``vec(A) | vec(B) | vec(C)`` of a basis triple: one shared
    diagonal unit per index ``i``, plus one unit per free off-diagonal entry.
    """
    cls = InvarianceClass.parse(cls)
    n = d * d
    rows = []

    def unit(*positions):
        v = np.zeros(3 * n, dtype=np.int64)
        for block, i, j in positions:
            v[block * n + i * d + j] = 1
        rows.append(v)

    for i in range(d):
        unit((0, i, i), (1, i, i), (2, i, i))
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            unit((0, i, j))
            if cls is not InvarianceClass.LDUI:
                unit((1, i, j))
            if cls is not InvarianceClass.CLDUI:
                unit((2, i, j))
    return np.array(rows)


def random_triple(d, rng, real=False, cls=InvarianceClass.LDOI):
    """Gaussian triple in the given class (not unitary)."""
    cls = InvarianceClass.parse(cls)

    def gauss():
        M = rng.standard_normal((d, d))
        if not real:
            M = M + 1j * rng.standard_normal((d, d))
        return M

    A, B, C = gauss(), gauss(), gauss()
    diag = np.diag(np.diagonal(A))
    if cls is InvarianceClass.LDUI:
        B = diag.copy()
    else:
        B = _offdiag(B) + diag
    if cls is InvarianceClass.CLDUI:
        C = diag.copy()
    else:
        C = _offdiag(C) + diag
    return MatrixTriple(A, B, C)
