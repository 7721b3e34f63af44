# A factorization A = A_k ... A_1 of contractions is k-regular when the
# canonical isometry Z_k from the defect space of A onto the direct sum
# of the factor defect spaces is onto.  Four routes to the verdict are
# computed and must agree.
import numpy as np

from kregular import Partition, adjoint_chain, build_chain, check_k_regular, verify_partition_identity, z_matrix

S = np.array([[0, 1], [0, 0]])

# S * S = 0: defect of the product is all of C^2 (dim 2), each factor has a
# one-dimensional defect, and Z_2 is a swap.  Regular.
chain = build_chain([S, S])
rep = check_k_regular(chain)
print("S.S   dims", rep.dim_product, "vs", rep.factor_dims, "verdicts", rep.verdicts)
print("Z_2 (moduli):\n", np.abs(z_matrix(chain)).round(12))

# 0 = 0 * 0 on C: the product defect is one-dimensional but the factors
# contribute two dimensions, so Z_2 is an isometry that cannot be onto.
rep = check_k_regular(build_chain([0.0, 0.0]))
print("0.0   dims", rep.dim_product, "vs", rep.factor_dims, "verdicts", rep.verdicts)

# A random chain with isometric upper factors is always regular, and so is its adjoint.
rng = np.random.default_rng(1)
A1 = rng.standard_normal((3, 2)) * 0.3
A2, _ = np.linalg.qr(rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3)))
chain = build_chain([A1, A2])
print("isometric upper factor:", check_k_regular(chain).regular,
      "| adjoint:", check_k_regular(adjoint_chain(chain)).regular)

# Grouping factors into blocks factors Z_k through the grouped chain.
chain = build_chain([rng.standard_normal((3, 3)) / 4 for _ in range(4)])
for cuts in [(2, 4), (1, 3, 4), (1, 2, 3, 4)]:
    print("partition", cuts, "residual", f"{verify_partition_identity(chain, Partition(cuts)):.2e}")
