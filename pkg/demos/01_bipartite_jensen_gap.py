"""Partial-trace Jensen gaps on a bipartite space.

For a Hermitian H on H1 (x) H2, a state rho on H1 and a convex f, the trace
of f applied to the compression K = Tr_1[(rho (x) 1)^(1/2) H (rho (x) 1)^(1/2)]
never exceeds Tr[rho . Tr_2 f(H)].  This script samples random instances,
shows the gap is nonnegative and how it closes in the equality cases, and
unpacks the two Jensen steps behind it for one instance.
"""

import numpy as np

from semispec import (
    BipartiteDims,
    DensityMatrix,
    affine,
    exp_neg,
    jensen_partial_trace_gap,
    positive_part,
    random_density,
    random_hermitian,
    square,
)

dims = BipartiteDims(4, 5)
print(f"factors: {dims.dim1} x {dims.dim2}\n")

print("random instances (gap = RHS - LHS, always >= 0):")
for seed in range(6):
    op = random_hermitian(dims.total, seed=seed)
    rho = random_density(dims.dim1, rank=(seed % 4) + 1, seed=100 + seed)
    for f, name in ((exp_neg(1.0), "exp(-x)"), (square(), "x^2"), (positive_part(), "x_+")):
        gap = jensen_partial_trace_gap(op, rho, dims, f)
        print(f"  seed {seed}  f = {name:8s}  gap = {gap:12.6f}")

print("\nequality cases:")
op = random_hermitian(dims.total, seed=11)
rho = random_density(dims.dim1, rank=2, seed=12)
print(f"  affine f:            gap = {jensen_partial_trace_gap(op, rho, dims, affine(2.0, -1.0)):.2e}")

# rank-1 state on a block-diagonal operator: the compression picks one block
n = dims.dim2
h_block = np.zeros((dims.total, dims.total), dtype=complex)
for i in range(dims.dim1):
    h_block[i * n : (i + 1) * n, i * n : (i + 1) * n] = random_hermitian(n, seed=20 + i).mat
basis_state = np.zeros(dims.dim1)
basis_state[1] = 1.0
from semispec import HermitianOperator

gap_block = jensen_partial_trace_gap(
    HermitianOperator(h_block), DensityMatrix.pure(basis_state), dims, exp_neg(1.0)
)
print(f"  block-diag, basis rho: gap = {gap_block:.2e}")

print("\nthe two Jensen steps, one instance, first three basis vectors of K:")
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from oracles import double_jensen_chain

chain = double_jensen_chain(op.mat, rho.op.mat, dims.dim1, dims.dim2, exp_neg(1.0))
for i in range(3):
    print(
        f"  f(diag K) = {chain['a'][i]:9.5f}  <=  "
        f"weighted f(expectations) = {chain['b'][i]:9.5f}  <=  "
        f"weighted expectations of f = {chain['c'][i]:9.5f}"
    )
print(f"\n  summed: LHS = {chain['lhs']:.6f}  <=  RHS = {chain['rhs']:.6f}")
