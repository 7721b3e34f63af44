"""Matrix-polynomial analytic functions on the unit disk.

Covers evaluation, the characteristic function of a matrix contraction,
boundary defect operators, and a sampled version of the boundary test for
k-regularity: an analytic factorization is k-regular exactly when the
frozen matrix factorization ``Theta_k(e^{it}) ... Theta_1(e^{it})`` is
k-regular for almost every ``t``.  Almost-everywhere statements cannot be
certified numerically, so the check runs on a uniform grid and every
result is labelled ``SAMPLED``.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .defect import CODOMAIN, DOMAIN, as_contraction, defect_operator, defect_space
from .errors import DimensionMismatch, InvalidMatrix, NotContraction, OutsideClosedDisk, SingularResolvent
from .factorization import InvalidChain, RegularityReport, build_chain, check_k_regular
from .matrix_core import DEFAULT_TOL, ToleranceProfile, as_matrix, operator_norm

__all__ = [
    "MatrixPolynomial",
    "AnalyticChain",
    "BoundaryGrid",
    "SampledVerdict",
    "build_analytic_chain",
    "char_fn",
    "boundary_defect",
    "pointwise_regularity",
    "sampled_regularity",
    "purely_contractive_check",
    "align_coincidence",
]

DISK_SLACK = 1e-12
SAMPLED = "SAMPLED"


class MatrixPolynomial:
    """``Theta(z) = sum_j z^j C_j`` with all ``C_j`` of the same shape."""

    def __init__(self, coeffs):
        cs = [as_matrix(c, name=f"coefficient {j}") for j, c in enumerate(coeffs)]
        if not cs:
            raise InvalidMatrix("a matrix polynomial needs at least one coefficient")
        shape = cs[0].shape
        for j, c in enumerate(cs):
            if c.shape != shape:
                raise DimensionMismatch(f"coefficient {j} has shape {c.shape}, expected {shape}")
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, M):
        return cls([M])

    @classmethod
    def monomial(cls, power, M=None):
        M = np.eye(1) if M is None else as_matrix(M)
        return cls([np.zeros_like(M)] * power + [M])

    @property
    def shape(self):
        return self.coeffs[0].shape

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, z):
        return self.eval(z)

    def eval(self, z):
        z = complex(z)
        if abs(z) > 1.0 + DISK_SLACK:
            raise OutsideClosedDisk(f"|z| = {abs(z):.15g} lies outside the closed unit disk")
        out = self.coeffs[-1].copy()
        for c in reversed(self.coeffs[:-1]):
            out = out * z + c
        return out

    def __matmul__(self, other):
        """Polynomial product ``self(z) @ other(z)``."""
        if self.shape[1] != other.shape[0]:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = [np.zeros((self.shape[0], other.shape[1]), dtype=np.complex128)
               for _ in range(self.degree + other.degree + 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a @ b
        return MatrixPolynomial(out)

    def boundary_values(self, grid):
        return [self.eval(np.exp(1j * t)) for t in grid.points]

    def sup_norm_on(self, grid):
        return max(operator_norm(V) for V in self.boundary_values(grid))

    def coefficient_distance(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        pad = lambda cs: list(cs) + [np.zeros_like(cs[0])] * (n - len(cs))
        return max(operator_norm(a - b) for a, b in zip(pad(self.coeffs), pad(other.coeffs)))

    def __repr__(self):
        return f"MatrixPolynomial(shape={self.shape}, degree={self.degree})"


@dataclass(frozen=True)
class BoundaryGrid:
    """Uniform angles ``t_j = 2 pi j / n`` on the unit circle."""

    n_samples: int = 256

    def __post_init__(self):
        if int(self.n_samples) < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples}")

    @property
    def points(self):
        return 2.0 * np.pi * np.arange(self.n_samples) / self.n_samples


@dataclass(frozen=True, eq=False)
class AnalyticChain:
    """``Theta = Theta_k ... Theta_1``; ``factors[0]`` is ``Theta_1``."""

    factors: tuple
    product: MatrixPolynomial

    @property
    def k(self):
        return len(self.factors)


def build_analytic_chain(factors: Sequence, theta: Optional[MatrixPolynomial] = None,
                         tol: ToleranceProfile = DEFAULT_TOL, grid: Optional[BoundaryGrid] = None):
    """Validate shapes and boundary contractivity of ``[Theta_1, ..., Theta_k]``.

    Contractivity is checked on ``grid`` only (maximum principle proxy).
    """
    fs = [f if isinstance(f, MatrixPolynomial) else MatrixPolynomial(f) for f in factors]
    if len(fs) < 2:
        raise InvalidChain(f"an analytic chain needs k >= 2 factors, got {len(fs)}")
    for i in range(1, len(fs)):
        if fs[i].shape[1] != fs[i - 1].shape[0]:
            raise DimensionMismatch(f"factor {i + 1} shape {fs[i].shape} does not follow {fs[i - 1].shape}")
    grid = BoundaryGrid() if grid is None else grid
    for i, f in enumerate(fs):
        for t, V in zip(grid.points, f.boundary_values(grid)):
            nrm = operator_norm(V)
            if nrm > 1.0 + tol.contraction_tol:
                raise NotContraction(f"factor {i + 1} has norm {nrm:.12g} at t={t:.6g}",
                                     index=i + 1, norm=nrm, t=float(t))
    product = fs[0]
    for f in fs[1:]:
        product = f @ product
    if theta is not None:
        gap = product.coefficient_distance(theta)
        if gap > 1e-12:
            raise DimensionMismatch(f"factor product differs from the supplied function by {gap:.3e}")
    return AnalyticChain(tuple(fs), product)


def char_fn(T, z, tol: ToleranceProfile = DEFAULT_TOL):
    """Characteristic function ``Theta_T(z): D_T -> D_{T*}`` in the defect eigenbases.

    ``Theta_T(z) = -T + z D_{T*} (I - z T*)^{-1} D_T`` restricted to the
    defect space of ``T``; returns a ``dim D_{T*} x dim D_T`` matrix.
    """
    c = as_contraction(T, tol)
    A = c.matrix
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"characteristic function needs a square operator, got {A.shape}")
    z = complex(z)
    if abs(z) >= 1.0:
        raise OutsideClosedDisk(f"|z| = {abs(z):.15g}; the characteristic function needs |z| < 1")
    B = defect_space(c, DOMAIN, tol).basis
    Bs = defect_space(c, CODOMAIN, tol).basis
    n = A.shape[0]
    R = np.eye(n) - z * A.conj().T
    if n and np.linalg.cond(R) > 1.0 / tol.rank_tol:
        raise SingularResolvent(f"I - z T* is numerically singular at z = {z}")
    M = -A + z * defect_operator(c, CODOMAIN, tol) @ np.linalg.solve(R, defect_operator(c, DOMAIN, tol))
    return Bs.conj().T @ M @ B


def boundary_defect(obj, t, side=DOMAIN, tol: ToleranceProfile = DEFAULT_TOL):
    """``(I - Theta(e^{it})* Theta(e^{it}))^{1/2}`` or its codomain counterpart."""
    p = obj.product if isinstance(obj, AnalyticChain) else obj
    return defect_operator(p.eval(np.exp(1j * t)), side, tol)


def _frozen(ac, t, tol):
    z = np.exp(1j * t)
    mats = []
    for i, f in enumerate(ac.factors):
        V = f.eval(z)
        nrm = operator_norm(V)
        if nrm > 1.0 + tol.contraction_tol:
            raise NotContraction(f"factor {i + 1} has norm {nrm:.12g} at t={t:.6g}",
                                 index=i + 1, norm=nrm, t=float(t))
        mats.append(V)
    return mats


def pointwise_regularity(ac: AnalyticChain, t, tol: ToleranceProfile = DEFAULT_TOL,
                         cross_check=True) -> RegularityReport:
    """k-regularity of the matrix factorization frozen at ``e^{it}``."""
    return check_k_regular(build_chain(_frozen(ac, t, tol), tol), cross_check=cross_check)


@dataclass
class SampledVerdict:
    verdict: bool
    failures: list
    n_samples: int
    inconsistent: list = field(default_factory=list)
    label: str = SAMPLED

    def __iter__(self):
        # allows ``verdict, failures = sampled_regularity(...)``
        return iter((self.verdict, self.failures))


def sampled_regularity(ac: AnalyticChain, grid: BoundaryGrid = BoundaryGrid(),
                       tol: ToleranceProfile = DEFAULT_TOL, cross_check=True) -> SampledVerdict:
    """Pointwise regularity at every grid angle; ``failures`` lists offending angles."""
    failures, inconsistent = [], []
    for t in grid.points:
        rep = pointwise_regularity(ac, t, tol, cross_check=cross_check)
        if not rep.regular:
            failures.append(float(t))
        if not rep.consistent:
            inconsistent.append(float(t))
    return SampledVerdict(not failures, failures, grid.n_samples, inconsistent)


def purely_contractive_check(p: MatrixPolynomial, tol: ToleranceProfile = DEFAULT_TOL) -> bool:
    """``||Theta(0) e|| < ||e||`` for all nonzero ``e``, i.e. ``||C_0|| < 1``."""
    return operator_norm(p.coeffs[0]) < 1.0 - tol.rank_tol


def _polar_unitary(M):
    U, _, Vh = np.linalg.svd(M)
    return U @ Vh


def align_coincidence(F_vals, G_vals, n_reference=1, iterations=50):
    """Fit unitaries ``(V, U)`` with ``V F(z) ≈ G(z) U`` and report the misfit.

    The alignment is fitted on the first ``n_reference`` samples and the
    returned residual is the largest ``||V F_j - G_j U||`` over all samples,
    so agreement on the remaining points is a genuine check.
    """
    F = [as_matrix(x) for x in F_vals]
    G = [as_matrix(x) for x in G_vals]
    if len(F) != len(G):
        raise ValueError("F_vals and G_vals must have equal length")
    for a, b in zip(F, G):
        if a.shape != b.shape:
            raise DimensionMismatch(f"sample shapes differ: {a.shape} vs {b.shape}")
    m, n = F[0].shape
    U = np.eye(n, dtype=np.complex128)
    V = np.eye(m, dtype=np.complex128)
    ref = list(zip(F[:n_reference], G[:n_reference]))
    if m and n:
        for _ in range(iterations):
            V = _polar_unitary(sum(g @ U @ f.conj().T for f, g in ref))
            U = _polar_unitary(sum(g.conj().T @ V @ f for f, g in ref))
    residual = max((operator_norm(V @ f - g @ U) for f, g in zip(F, G)), default=0.0)
    return V, U, residual
