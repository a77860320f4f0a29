"""Hermitian operator core: tensor structure, partial transposition, spectra.

Composite indices follow the row-major convention: the basis vector
|i1, ..., in> of a system with local dimensions (d1, ..., dn) sits at flat
index ((i1 * d2 + i2) * d3 + ...), which is what ``numpy.kron`` and C-ordered
``reshape`` produce.

Every value is immutable after construction and safe to share between
threads; all operations here are pure functions of their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

HERMITICITY_ATOL = 1e-12
TRACE_ATOL = 1e-10
PSD_TOL = 1e-9
DECOMPOSITION_ATOL = 1e-10


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class HilbertStructure:
    """Ordered local dimensions (d1, ..., dn) of a composite system."""

    local_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.local_dims)
        if not dims:
            raise ValueError("at least one subsystem is required")
        if any(d < 2 for d in dims):
            raise ValueError(f"local dimensions must all be >= 2, got {dims}")
        object.__setattr__(self, "local_dims", dims)

    @property
    def total_dim(self) -> int:
        out = 1
        for d in self.local_dims:
            out *= d
        return out

    @property
    def n_parties(self) -> int:
        return len(self.local_dims)


@dataclass(frozen=True, eq=False)
class Bipartition:
    """Subsystem indices whose bra/ket indices get swapped by partial transposition."""

    transposed_side: tuple[int, ...]

    def __post_init__(self):
        side = tuple(sorted(int(k) for k in self.transposed_side))
        if not side:
            raise ValueError("transposed side must be a nonempty set of subsystem indices")
        if len(set(side)) != len(side):
            raise ValueError(f"duplicate subsystem indices in {side}")
        object.__setattr__(self, "transposed_side", side)

    def validate_for(self, structure: HilbertStructure) -> None:
        n = structure.n_parties
        if any(k < 0 or k >= n for k in self.transposed_side):
            raise ValueError(
                f"subsystem indices {self.transposed_side} out of range for {n} parties"
            )
        if len(self.transposed_side) == n:
            raise ValueError("transposed side must be a proper subset of the subsystems")


def all_bipartitions(structure: HilbertStructure) -> tuple[Bipartition, ...]:
    """The 2**(n-1) - 1 distinct splits; subsystem 0 always stays untransposed."""
    n = structure.n_parties
    if n < 2:
        raise ValueError("bipartitions require at least two subsystems")
    cuts = []
    for r in range(1, n):
        for side in combinations(range(1, n), r):
            cuts.append(Bipartition(side))
    return tuple(cuts)


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """Square complex matrix equal to its conjugate transpose within HERMITICITY_ATOL."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if m.shape[0] < 1:
            raise ValueError("dimension must be at least 1")
        dev = float(np.abs(m - m.conj().T).max())
        if dev > HERMITICITY_ATOL:
            raise ValueError(f"matrix is not Hermitian: max |A - A^dag| = {dev:.3e}")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Unit-trace positive-semidefinite Hermitian operator on a composite space."""

    op: HermitianOperator
    structure: HilbertStructure

    def __post_init__(self):
        if self.op.dim != self.structure.total_dim:
            raise ValueError(
                f"operator dimension {self.op.dim} does not match "
                f"structure total dimension {self.structure.total_dim}"
            )
        if abs(self.op.trace - 1.0) > TRACE_ATOL:
            raise ValueError(f"trace must be 1, got {self.op.trace!r}")
        lo = float(np.linalg.eigvalsh(self.op.matrix)[0])
        if lo < -PSD_TOL:
            raise ValueError(f"not positive semidefinite: min eigenvalue {lo:.3e}")

    @property
    def matrix(self) -> np.ndarray:
        return self.op.matrix

    @property
    def dim(self) -> int:
        return self.op.dim

    @classmethod
    def from_matrix(cls, matrix, structure: HilbertStructure) -> "DensityMatrix":
        return cls(HermitianOperator(matrix), structure)

    @classmethod
    def maximally_mixed(cls, structure: HilbertStructure) -> "DensityMatrix":
        d = structure.total_dim
        return cls.from_matrix(np.eye(d) / d, structure)

    @classmethod
    def from_pure(cls, vector, structure: HilbertStructure) -> "DensityMatrix":
        v = np.asarray(vector, dtype=complex).reshape(-1)
        v = v / np.linalg.norm(v)
        return cls.from_matrix(np.outer(v, v.conj()), structure)


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Ascending eigenvalues with matching orthonormal eigenvector columns.

    Within a degenerate cluster the eigenvectors are an arbitrary orthonormal
    basis of that eigenspace; downstream uses (traces, projectors, extremal
    eigenvalues) do not depend on the choice.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eig_hermitian(op: HermitianOperator | np.ndarray) -> EigenDecomposition:
    """Full spectral decomposition of a Hermitian operator.

    Eigenvalues come back ascending; column k of ``eigenvectors`` belongs to
    eigenvalue k.  The reconstruction V diag(w) V^dag and the eigenvector Gram
    matrix are checked against DECOMPOSITION_ATOL before returning.
    """
    if not isinstance(op, HermitianOperator):
        op = HermitianOperator(op)
    vals, vecs = np.linalg.eigh(op.matrix)
    recon = (vecs * vals) @ vecs.conj().T
    resid = float(np.abs(recon - op.matrix).max())
    gram = float(np.abs(vecs.conj().T @ vecs - np.eye(op.dim)).max())
    if resid > DECOMPOSITION_ATOL or gram > DECOMPOSITION_ATOL:
        raise RuntimeError(
            f"eigendecomposition contract violated: residual {resid:.3e}, gram {gram:.3e}"
        )
    return EigenDecomposition(_frozen(vals), _frozen(vecs.astype(complex)))


def _partial_transpose_matrix(matrix, local_dims, transposed_side) -> np.ndarray:
    n = len(local_dims)
    t = matrix.reshape(tuple(local_dims) * 2)
    perm = list(range(2 * n))
    for k in transposed_side:
        perm[k], perm[n + k] = n + k, k
    d = matrix.shape[0]
    return np.ascontiguousarray(t.transpose(perm)).reshape(d, d)


def partial_transpose(
    rho: DensityMatrix | HermitianOperator,
    cut: Bipartition,
    structure: HilbertStructure | None = None,
) -> HermitianOperator:
    """Transpose bra/ket indices of the chosen subsystems in the product basis.

    Trace-preserving, Hermiticity-preserving, and an involution.  A bare
    Hermitian operator (e.g. a previous partial transpose) needs an explicit
    ``structure``; density matrices carry their own.
    """
    if isinstance(rho, DensityMatrix):
        structure = rho.structure
    elif structure is None:
        raise ValueError("a bare Hermitian operator needs an explicit structure")
    if rho.matrix.shape[0] != structure.total_dim:
        raise ValueError("operator dimension does not match the structure")
    cut.validate_for(structure)
    pt = _partial_transpose_matrix(rho.matrix, structure.local_dims, cut.transposed_side)
    return HermitianOperator(pt)


@dataclass(frozen=True, eq=False)
class PPTCheck:
    """Positivity report for one partial transpose."""

    transposed_side: tuple[int, ...]
    min_eigenvalue: float
    tol: float

    @property
    def is_ppt(self) -> bool:
        return self.min_eigenvalue >= -self.tol

    def __bool__(self) -> bool:
        return self.is_ppt


@dataclass(frozen=True, eq=False)
class PPTAllCuts:
    """Conjunction of PPT checks over every distinct bipartition."""

    checks: tuple[PPTCheck, ...]

    @property
    def is_ppt(self) -> bool:
        return all(c.is_ppt for c in self.checks)

    @property
    def min_eigenvalue(self) -> float:
        return min(c.min_eigenvalue for c in self.checks)

    def __bool__(self) -> bool:
        return self.is_ppt


def is_ppt(rho: DensityMatrix, cut: Bipartition | None = None, tol: float = PSD_TOL) -> PPTCheck:
    """True iff the partial transpose over ``cut`` has min eigenvalue >= -tol.

    ``cut`` defaults to transposing the last subsystem.
    """
    if cut is None:
        cut = Bipartition((rho.structure.n_parties - 1,))
    cut.validate_for(rho.structure)
    pt = _partial_transpose_matrix(rho.matrix, rho.structure.local_dims, cut.transposed_side)
    lo = float(np.linalg.eigvalsh(pt)[0])
    return PPTCheck(cut.transposed_side, lo, float(tol))


def is_ppt_all_cuts(rho: DensityMatrix, tol: float = PSD_TOL) -> PPTAllCuts:
    """PPT check across all 2**(n-1) - 1 distinct bipartitions."""
    return PPTAllCuts(tuple(is_ppt(rho, cut, tol) for cut in all_bipartitions(rho.structure)))


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2); ranges over [1/D, 1]."""
    return float(np.vdot(rho.matrix, rho.matrix).real)
