"""Executable trace inequalities, each exposed as a nonnegative gap.

Every function returns ``RHS - LHS`` of the corresponding inequality (never a
boolean), so callers can distinguish round-off from a genuine violation and
test equality cases.  The uniform tolerance policy is: a gap counts as a
violation only below ``-1e-10 * (1 + |RHS|)``; :func:`violates` implements it.

Covered inequalities:

* scalar Jensen         f(<psi|H|psi>) <= <psi|f(H)|psi>
* partial-trace Jensen  Tr f(K_rho)    <= Tr[rho . Tr_2 f(H)]  with
  K_rho = Tr_1[(rho (x) 1)^(1/2) H (rho (x) 1)^(1/2)]
* Golden-Thompson       Tr e^(A+B)     <= Tr[e^(A/2) e^B e^(A/2)]
* sliced GT             Tr e^(-tH)     <= sum_m (e^(-tT))_mm Tr e^(-tW_m)
  for H = T (x) 1 + blockdiag(W_m)
* Gibbs principle       -ln Tr e^(-H)  <= Tr[rho H] + Tr[rho ln rho]
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .bipartite import BipartiteDims, DensityMatrix, compress, partial_trace_2
from .linalg import HermitianOperator, ScalarFunction, apply_function, eig_hermitian, trace

NONNEG_TOL = 1e-10


def violates(gap: float, rhs: float, tol: float = NONNEG_TOL) -> bool:
    """True when a gap is negative beyond the scaled tolerance."""
    return gap < -tol * (1.0 + abs(rhs))


def _expm(mat: np.ndarray) -> np.ndarray:
    """Matrix exponential of a Hermitian matrix through its spectrum."""
    vals, vecs = np.linalg.eigh(mat)
    return (vecs * np.exp(vals)) @ vecs.conj().T


# ---------------------------------------------------------------------------
# Jensen, scalar and partial-trace forms
# ---------------------------------------------------------------------------


def jensen_scalar_sides(op: HermitianOperator, psi, f: ScalarFunction) -> tuple[float, float]:
    psi = np.asarray(psi, dtype=np.complex128)
    nrm = float(np.linalg.norm(psi))
    if abs(nrm - 1.0) > 1e-10:
        raise ValueError(f"psi must be normalized; its norm is {nrm!r}")
    if not f.convex:
        raise ValueError("jensen_scalar_gap requires a convex function")
    dec = eig_hermitian(op)
    f.check_domain(dec.eigenvalues)
    weights = np.abs(dec.eigenvectors.conj().T @ psi) ** 2
    expectation = float(np.real(np.vdot(psi, op.mat @ psi)))
    lhs = float(f(expectation))
    rhs = float(np.dot(weights, f(dec.eigenvalues)))
    return lhs, rhs


def jensen_scalar_gap(op: HermitianOperator, psi, f: ScalarFunction) -> float:
    """<psi|f(H)|psi> - f(<psi|H|psi>) for a unit vector and convex f."""
    lhs, rhs = jensen_scalar_sides(op, psi, f)
    return rhs - lhs


def jensen_partial_trace_sides(
    op: HermitianOperator, rho: DensityMatrix, dims: BipartiteDims, f: ScalarFunction
) -> tuple[float, float]:
    if not f.convex:
        raise ValueError("jensen_partial_trace_gap requires a convex function")
    dims.check(op)
    compressed = compress(op, rho, dims)
    lhs = trace(apply_function(compressed, f))
    reduced = partial_trace_2(apply_function(op, f), dims)
    rhs = float(np.real(np.trace(rho.op.mat @ reduced.mat)))
    return lhs, rhs


def jensen_partial_trace_gap(
    op: HermitianOperator, rho: DensityMatrix, dims: BipartiteDims, f: ScalarFunction
) -> float:
    """Tr[rho . Tr_2 f(H)] - Tr f(K_rho); both sides are full traces (scalars)."""
    lhs, rhs = jensen_partial_trace_sides(op, rho, dims, f)
    return rhs - lhs


# ---------------------------------------------------------------------------
# Golden-Thompson, plain and sliced
# ---------------------------------------------------------------------------


def golden_thompson_sides(a: HermitianOperator, b: HermitianOperator) -> tuple[float, float]:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    lhs = float(np.real(np.trace(_expm(a.mat + b.mat))))
    ea2 = _expm(a.mat / 2.0)
    rhs = float(np.real(np.trace(ea2 @ _expm(b.mat) @ ea2)))
    return lhs, rhs


def golden_thompson_gap(a: HermitianOperator, b: HermitianOperator) -> float:
    """Tr[e^(A/2) e^B e^(A/2)] - Tr[e^(A+B)]; zero when A and B commute."""
    lhs, rhs = golden_thompson_sides(a, b)
    return rhs - lhs


def sliced_hamiltonian(t_op: HermitianOperator, blocks: Sequence[HermitianOperator]) -> HermitianOperator:
    """H = T (x) 1 + sum_m |e_m><e_m| (x) W_m on the M*N product space."""
    m = t_op.dim
    if len(blocks) != m:
        raise ValueError(f"need one block per basis vector: {len(blocks)} != {m}")
    n = blocks[0].dim
    if any(w.dim != n for w in blocks):
        raise ValueError("all blocks must share one dimension")
    h = np.kron(t_op.mat, np.eye(n, dtype=np.complex128))
    for i, w in enumerate(blocks):
        h[i * n : (i + 1) * n, i * n : (i + 1) * n] += w.mat
    return HermitianOperator(h)


def sliced_gt_sides(
    t_op: HermitianOperator, blocks: Sequence[HermitianOperator], t: float
) -> tuple[float, float]:
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    h = sliced_hamiltonian(t_op, blocks)
    lhs = float(np.real(np.trace(_expm(-t * h.mat))))
    damp = np.real(np.diagonal(_expm(-t * t_op.mat)))
    rhs = float(
        sum(damp[i] * np.real(np.trace(_expm(-t * w.mat))) for i, w in enumerate(blocks))
    )
    return lhs, rhs


def sliced_gt_gap(t_op: HermitianOperator, blocks: Sequence[HermitianOperator], t: float) -> float:
    """Blockwise Golden-Thompson gap for H = T (x) 1 + blockdiag(W).

    ``sum_m (e^(-tT))[m,m] Tr e^(-t W_m) - Tr e^(-tH)``, the discrete
    analogue of bounding a heat trace by a phase-space integral of
    transverse heat traces.  Zero when T is diagonal or all blocks agree.
    """
    lhs, rhs = sliced_gt_sides(t_op, blocks, t)
    return rhs - lhs


# ---------------------------------------------------------------------------
# Gibbs variational principle
# ---------------------------------------------------------------------------


def gibbs_sides(rho: DensityMatrix, op: HermitianOperator) -> tuple[float, float]:
    if rho.dim != op.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {op.dim}")
    energy = float(np.real(np.trace(rho.op.mat @ op.mat)))
    rhs = energy + rho.entropy_term()
    vals = np.linalg.eigvalsh(op.mat)
    # log-sum-exp keeps ln Z finite for large spectra
    shift = float(np.min(vals))
    lhs = -(float(np.log(np.sum(np.exp(-(vals - shift))))) - shift)
    return lhs, rhs


def gibbs_gap(rho: DensityMatrix, op: HermitianOperator) -> float:
    """Free-energy gap Tr[rho H] + Tr[rho ln rho] + ln Tr[e^(-H)].

    Nonnegative for every state; zero exactly at the Gibbs state
    e^(-H) / Tr e^(-H).  The entropy term uses 0 ln 0 := 0.
    """
    lhs, rhs = gibbs_sides(rho, op)
    return rhs - lhs


def gibbs_state(op: HermitianOperator, s: float = 1.0) -> DensityMatrix:
    """Normalized e^(-s H), the minimizer of the Gibbs functional at s = 1."""
    vals, vecs = np.linalg.eigh(op.mat)
    w = np.exp(-s * (vals - np.min(vals)))
    w = w / np.sum(w)
    return DensityMatrix(HermitianOperator((vecs * w) @ vecs.conj().T))
