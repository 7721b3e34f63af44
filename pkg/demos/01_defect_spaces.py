# Defect operators measure how far a contraction is from an isometry.
# D_T = (I - T*T)^{1/2}, and its range is the defect space of T.
import numpy as np

from kregular import defect_operator, defect_space

# A scalar contraction: D_T is the number sqrt(1 - 0.36) = 0.8
print("D_T for T = 0.6:", defect_operator(np.array([[0.6]]))[0, 0].real)

# The nilpotent 2x2 shift kills e_1 and sends e_2 to e_1,
# so only e_1 contributes to the defect.
S = np.array([[0, 1], [0, 0]])
print("D_S for the 2x2 shift:\n", defect_operator(S).real)
print("defect space dimension:", defect_space(S).dim)

# Isometries have trivial defect spaces; the basis is an empty 3x0 array.
Q, _ = np.linalg.qr(np.random.default_rng(0).standard_normal((3, 3)))
ds = defect_space(Q)
print("unitary: dim", ds.dim, "basis shape", ds.basis.shape)

# The identity ||D_T h||^2 = ||h||^2 - ||T h||^2 drives everything that follows.
T = np.array([[0.3, 0.4], [0.1, -0.5]])
h = np.array([1.0, 2.0])
lhs = np.linalg.norm(defect_operator(T) @ h) ** 2
rhs = np.linalg.norm(h) ** 2 - np.linalg.norm(T @ h) ** 2
print(f"||D_T h||^2 = {lhs:.12f}   ||h||^2 - ||Th||^2 = {rhs:.12f}")
