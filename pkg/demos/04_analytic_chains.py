# Analytic factorizations are checked on a grid of the unit circle: the
# factorization Theta = Theta_k ... Theta_1 is frozen at e^{it} and tested
# as a matrix chain.  Results carry the SAMPLED label because a finite grid
# cannot certify an almost-everywhere statement.
import numpy as np

from kregular import BoundaryGrid, MatrixPolynomial, boundary_defect, build_analytic_chain, char_fn, sampled_regularity
from kregular.corpus import diag_z3c, shift_compression

# z^3 = z . z . z: every factor is inner, so every sample is regular.
case = shift_compression(3)
res = sampled_regularity(case.obj, BoundaryGrid(128))
print("z^3:", res.label, res.verdict, "failures", len(res.failures))

# The characteristic function of the 3x3 Jordan block is z^3 up to a unimodular constant.
T = case.extras["T"]
for z in (0.5, 0.3 + 0.4j, -0.7j):
    print(f"  Theta_T({z}) = {char_fn(T, z)[0, 0]:.6f}   z^3 = {z ** 3:.6f}")

# diag(z^3, c) splits as three inner diagonal factors and a constant one.
c = 0.5
case = diag_z3c(c)
print("\ndiag(z^3, 1/2):", sampled_regularity(case.obj, BoundaryGrid(64)).verdict)
print("Delta(t=1.0) =", np.diag(boundary_defect(case.obj, 1.0)).real.round(12), " sqrt(3)/2 =", np.sqrt(3) / 2)

# ((1+z)/2)^2 is regular only where both factors touch the circle.
half = MatrixPolynomial([0.5, 0.5])
res = sampled_regularity(build_analytic_chain([half, half]), BoundaryGrid(8))
print("\n((1+z)/2)^2 regular at", 8 - len(res.failures), "of 8 samples")

# Scalar contractions: the characteristic function is a Blaschke factor.
lam = 0.3
z = 0.2 + 0.1j
print(f"\nBlaschke check: {char_fn(np.array([[lam]]), z)[0, 0]:.12f} vs {(z - lam) / (1 - lam * z):.12f}")
