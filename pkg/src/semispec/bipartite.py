"""Tensor-product structure on H1 (x) H2: Kronecker products, partial traces,
density matrices and the compressed operator Tr_1[(rho (x) 1)^(1/2) H (rho (x) 1)^(1/2)].

Index convention (fixed everywhere): the basis vector of H1 (x) H2 with flat
index ``i = m * N + n`` is ``e_m (x) v_n``, i.e. the first factor is major.
All formulas below are stated under this convention and the Kronecker
identities in the tests pin it down.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import HermitianOperator, eig_hermitian, trace

# Dense storage only; refuse tensor products beyond this total dimension.
MAX_TENSOR_DIM = 4096

# PSD round-off floor: eigenvalues of a density matrix in [-PSD_TOL, 0) are
# clamped to zero when taking square roots.
PSD_TOL = 1e-10


@dataclass(frozen=True)
class BipartiteDims:
    """Ordered pair (M, N) fixing the factorization H1 (x) H2."""

    dim1: int
    dim2: int

    def __post_init__(self):
        if self.dim1 < 1 or self.dim2 < 1:
            raise ValueError(f"dimensions must be positive, got {self}")

    @property
    def total(self) -> int:
        return self.dim1 * self.dim2

    def check(self, op: HermitianOperator) -> None:
        if op.dim != self.total:
            raise ValueError(
                f"operator dimension {op.dim} does not match "
                f"{self.dim1} x {self.dim2} = {self.total}"
            )


@dataclass(frozen=True)
class DensityMatrix:
    """Positive semidefinite operator of unit trace (a quantum state)."""

    op: HermitianOperator

    def __post_init__(self):
        tr = trace(self.op)
        if abs(tr - 1.0) > 1e-10:
            raise ValueError(f"density matrix trace {tr!r} is not 1 within 1e-10")
        smallest = float(np.linalg.eigvalsh(self.op.mat)[0])
        if smallest < -PSD_TOL:
            raise ValueError(
                f"density matrix has negative eigenvalue {smallest:.3e} beyond -1e-10"
            )

    @property
    def dim(self) -> int:
        return self.op.dim

    @classmethod
    def pure(cls, vec) -> "DensityMatrix":
        v = np.asarray(vec, dtype=np.complex128)
        v = v / np.linalg.norm(v)
        return cls(HermitianOperator(np.outer(v, v.conj())))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(HermitianOperator(np.eye(dim) / dim))

    def sqrt(self) -> HermitianOperator:
        """Spectral square root, clamping round-off-negative eigenvalues to 0."""
        dec = eig_hermitian(self.op)
        vals = np.where(dec.eigenvalues < 0.0, 0.0, dec.eigenvalues)
        u = dec.eigenvectors
        return HermitianOperator((u * np.sqrt(vals)) @ u.conj().T)

    def entropy_term(self) -> float:
        """Tr[rho ln rho] with 0 ln 0 := 0 (a nonpositive number)."""
        vals = np.linalg.eigvalsh(self.op.mat)
        vals = np.clip(vals, 0.0, None)
        pos = vals[vals > 0.0]
        return float(np.sum(pos * np.log(pos)))


def kron(a: HermitianOperator, b: HermitianOperator, max_dim: int = MAX_TENSOR_DIM) -> HermitianOperator:
    """Kronecker product under the first-factor-major convention.

    ``(A kron B)[(m N + n), (m' N + n')] = A[m, m'] B[n, n']``.
    """
    total = a.dim * b.dim
    if total > max_dim:
        raise ValueError(f"tensor dimension {total} exceeds the cap {max_dim}")
    return HermitianOperator(np.kron(a.mat, b.mat))


def partial_trace_1(op: HermitianOperator, dims: BipartiteDims) -> HermitianOperator:
    """Trace out the first factor: result[n, n'] = sum_m H[(m,n), (m,n')]."""
    dims.check(op)
    m, n = dims.dim1, dims.dim2
    four = op.mat.reshape(m, n, m, n)
    return HermitianOperator(np.einsum("anaq->nq", four))


def partial_trace_2(op: HermitianOperator, dims: BipartiteDims) -> HermitianOperator:
    """Trace out the second factor: result[m, m'] = sum_n H[(m,n), (m',n)]."""
    dims.check(op)
    m, n = dims.dim1, dims.dim2
    four = op.mat.reshape(m, n, m, n)
    return HermitianOperator(np.einsum("anqn->aq", four))


def compress(op: HermitianOperator, rho: DensityMatrix, dims: BipartiteDims) -> HermitianOperator:
    """State-averaged reduction Tr_1[(rho (x) 1)^(1/2) H (rho (x) 1)^(1/2)].

    Returns an operator on the second factor.  For a pure state this is the
    entrywise expectation <phi|H|phi> viewed as an operator on H2.
    """
    dims.check(op)
    if rho.dim != dims.dim1:
        raise ValueError(f"state dimension {rho.dim} does not match dim1 {dims.dim1}")
    root = kron(rho.sqrt(), HermitianOperator.identity(dims.dim2), max_dim=dims.total)
    sandwiched = HermitianOperator(root.mat @ op.mat @ root.mat)
    return partial_trace_1(sandwiched, dims)


def random_hermitian(dim: int, seed: int, scale: float = 1.0) -> HermitianOperator:
    """Seeded GUE-style Hermitian matrix (complex Gaussian entries, symmetrized)."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return HermitianOperator(scale * (g + g.conj().T) / 2.0)


def random_density(dim: int, rank: int, seed: int) -> DensityMatrix:
    """Seeded random state: normalized Gram matrix of `rank` complex Gaussians.

    Reproducible bit-for-bit for a fixed seed.
    """
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must satisfy 1 <= rank <= {dim}, got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    gram = g @ g.conj().T
    return DensityMatrix(HermitianOperator(gram / np.real(np.trace(gram))))


def random_unit_vector(dim: int, seed: int) -> np.ndarray:
    """Seeded random unit vector with complex Gaussian entries."""
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


# ---------------------------------------------------------------------------
# text dump with a dims header
# ---------------------------------------------------------------------------


def format_bipartite_operator(op: HermitianOperator, dims: BipartiteDims) -> str:
    """linalg dump format preceded by a ``dims M N`` header line."""
    from .linalg import format_operator

    dims.check(op)
    return f"dims {dims.dim1} {dims.dim2}\n" + format_operator(op)


def parse_bipartite_operator(text: str) -> tuple[HermitianOperator, BipartiteDims]:
    from .linalg import parse_operator

    first, _, rest = text.partition("\n")
    head = first.split()
    if len(head) != 3 or head[0] != "dims":
        raise ValueError(f"expected 'dims M N' header, got {first!r}")
    dims = BipartiteDims(int(head[1]), int(head[2]))
    op = parse_operator(rest)
    dims.check(op)
    return op, dims
