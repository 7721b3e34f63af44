"""Commuting tuples of contractions and symmetric k-regularity.

For commuting ``T_1, ..., T_k`` every ordering ``sigma`` gives the same
product ``T = T_{sigma(1)} ... T_{sigma(k)}``.  The tuple is symmetric
k-regular when every such ordered factorization is k-regular.  When the
defect space of ``T`` is finite dimensional (always, for matrices) one
regular ordering already forces all of them, because the dimension
criterion does not see the order; ``use_shortcut`` exploits this.
"""

from dataclasses import dataclass, field
from itertools import permutations
from math import factorial
from typing import Sequence

import numpy as np

from .defect import DOMAIN, as_contraction, defect_space
from .errors import DimensionMismatch, InvalidPermutation, NotCommuting, NumericalBreakdown, PermutationExplosion
from .factorization import InvalidChain, build_chain, check_k_regular
from .matrix_core import DEFAULT_TOL, ToleranceProfile, operator_norm

__all__ = [
    "CommutingTuple",
    "SymmetricReport",
    "validate_tuple",
    "chain_for_permutation",
    "symmetric_k_regular",
    "MAX_K",
]

MAX_K = 8


@dataclass(frozen=True, eq=False)
class CommutingTuple:
    operators: tuple
    product: np.ndarray
    tol: ToleranceProfile

    @property
    def k(self):
        return len(self.operators)

    @property
    def n(self):
        return self.product.shape[0]

    def ordered_product(self, sigma):
        """``T_{sigma(1)} ... T_{sigma(k)}`` with 1-based ``sigma``."""
        P = np.eye(self.n, dtype=np.complex128)
        for s in sigma:
            P = P @ self.operators[s - 1].matrix
        return P


def validate_tuple(ops: Sequence, tol: ToleranceProfile = DEFAULT_TOL, seed=0) -> CommutingTuple:
    """Check that ``ops`` are pairwise commuting square contractions of one size."""
    if len(ops) < 2:
        raise InvalidChain(f"a commuting tuple needs k >= 2 operators, got {len(ops)}")
    cs = [as_contraction(T, tol, index=i + 1) for i, T in enumerate(ops)]
    n = cs[0].shape[0]
    for i, c in enumerate(cs):
        if c.shape != (n, n):
            raise DimensionMismatch(f"operator {i + 1} has shape {c.shape}, expected ({n}, {n})")
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            A, B = cs[i].matrix, cs[j].matrix
            gap = operator_norm(A @ B - B @ A)
            if gap > tol.commute_tol:
                raise NotCommuting(f"||T_{i + 1} T_{j + 1} - T_{j + 1} T_{i + 1}|| = {gap:.3e}",
                                   i=i + 1, j=j + 1, norm=gap)
    P = np.eye(n, dtype=np.complex128)
    for c in cs:
        P = P @ c.matrix
    t = CommutingTuple(tuple(cs), P, tol)
    rng = np.random.default_rng(seed)
    for _ in range(3):
        sigma = tuple(int(s) + 1 for s in rng.permutation(len(cs)))
        drift = operator_norm(t.ordered_product(sigma) - P)
        if drift > 1e-10:
            raise NumericalBreakdown(f"ordered product for {sigma} drifts by {drift:.3e}")
    return t


def _check_permutation(sigma, k):
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(1, k + 1)):
        raise InvalidPermutation(f"{sigma} is not a permutation of 1..{k}")
    return sigma


def chain_for_permutation(t: CommutingTuple, sigma):
    """Factorization chain of ``T = T_{sigma(1)} ... T_{sigma(k)}``.

    The rightmost operator acts first, so ``A_1 = T_{sigma(k)}`` and
    ``A_k = T_{sigma(1)}``.
    """
    sigma = _check_permutation(sigma, t.k)
    return build_chain([t.operators[s - 1].matrix for s in reversed(sigma)], t.tol)


@dataclass
class SymmetricReport:
    product_defect_dim: int
    per_factor_defect_dims: tuple
    per_permutation: dict = field(default_factory=dict)
    verdict: bool = False
    shortcut_used: bool = False

    @property
    def consistent(self):
        return all(r.consistent for r in self.per_permutation.values())

    @property
    def fully_enumerated(self):
        k = len(self.per_factor_defect_dims)
        return len(self.per_permutation) == factorial(k)


def symmetric_k_regular(t: CommutingTuple, use_shortcut=True, tol: ToleranceProfile = None,
                        max_k: int = MAX_K, cross_check=True) -> SymmetricReport:
    """Decide whether every ordering of the tuple gives a k-regular factorization.

    With ``use_shortcut`` the identity ordering is tried first; if it is
    regular the verdict is settled (finite-dimensional defect space).
    Otherwise all ``k!`` orderings are enumerated, which is refused above
    ``max_k`` factors.
    """
    if tol is not None and tol != t.tol:
        t = validate_tuple([c.matrix for c in t.operators], tol)
    k = t.k
    report = SymmetricReport(
        product_defect_dim=defect_space(t.product, DOMAIN, t.tol).dim,
        per_factor_defect_dims=tuple(defect_space(c, DOMAIN, t.tol).dim for c in t.operators),
    )
    identity = tuple(range(1, k + 1))
    if use_shortcut:
        rep = check_k_regular(chain_for_permutation(t, identity), cross_check=cross_check)
        report.per_permutation[identity] = rep
        if rep.regular:
            report.verdict = True
            report.shortcut_used = True
            return report
    if k > max_k:
        raise PermutationExplosion(f"{factorial(k)} orderings for k={k} exceed the cap k <= {max_k}")
    for sigma in permutations(identity):
        if sigma not in report.per_permutation:
            report.per_permutation[sigma] = check_k_regular(chain_for_permutation(t, sigma),
                                                            cross_check=cross_check)
    report.verdict = all(r.regular for r in report.per_permutation.values())
    return report
