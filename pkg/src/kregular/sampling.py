"""Random test objects: contractions, isometries, chains and commuting tuples.

All generators take a ``numpy.random.Generator`` so experiments are
reproducible from a single seed.
"""

import numpy as np

__all__ = [
    "random_unitary",
    "random_isometry",
    "random_contraction",
    "random_chain_factors",
    "random_commuting_tuple",
    "random_unit_vectors",
]


def _gaussian(rng, m, n):
    return (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) / np.sqrt(2)


def random_unitary(rng, n):
    """Haar-distributed unitary via QR with phase correction."""
    Q, R = np.linalg.qr(_gaussian(rng, n, n))
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_isometry(rng, m, n):
    """Random ``m x n`` matrix with orthonormal columns (``m >= n``)."""
    if m < n:
        raise ValueError(f"an isometry C^{n} -> C^{m} needs m >= n")
    return random_unitary(rng, m)[:, :n]


def random_contraction(rng, m, n, singular_values=None, kind="generic"):
    """Random ``m x n`` contraction ``U diag(s) V*``.

    ``kind`` selects the singular value profile when ``singular_values`` is
    not given: ``generic`` (uniform in [0, 1)), ``partial`` (each value 0 or
    1, a partial isometry) or ``mixed`` (a mixture of 0, 1 and uniform).
    """
    r = min(m, n)
    if singular_values is None:
        if kind == "generic":
            s = rng.uniform(0.0, 1.0, r)
        elif kind == "partial":
            s = rng.integers(0, 2, r).astype(float)
        elif kind == "mixed":
            cat = rng.integers(0, 3, r)
            s = np.select([cat == 0, cat == 1], [0.0, 1.0], rng.uniform(0.1, 0.9, r))
        else:
            raise ValueError(f"unknown kind {kind!r}")
    else:
        s = np.asarray(singular_values, dtype=float)
    U = random_unitary(rng, m)[:, :r]
    V = random_unitary(rng, n)[:, :r]
    return (U * s) @ V.conj().T


def random_chain_factors(rng, max_size=6, max_k=4, strategy=None):
    """Factors ``[A_1, ..., A_k]`` of a random chain with compatible shapes.

    Strategies: ``generic``, ``partial``, ``mixed``, ``isometric_tail``
    (``A_2..A_k`` isometries) and ``coisometric_head`` (``A_1*..A_{k-1}*``
    isometries).  The last two are always regular; the partial-isometry
    strategies hit both verdicts.
    """
    strategies = ["generic", "partial", "mixed", "isometric_tail", "coisometric_head"]
    if strategy is None:
        strategy = strategies[rng.integers(len(strategies))]
    k = int(rng.integers(2, max_k + 1))
    if strategy == "isometric_tail":
        dims = np.sort(rng.integers(1, max_size + 1, k + 1))
        dims[0] = rng.integers(1, max_size + 1)
        dims[1:] = np.sort(dims[1:])
        mats = [random_contraction(rng, dims[1], dims[0], kind="mixed")]
        mats += [random_isometry(rng, dims[i + 1], dims[i]) for i in range(1, k)]
        return mats
    if strategy == "coisometric_head":
        dims = np.sort(rng.integers(1, max_size + 1, k + 1))[::-1].copy()
        dims[-1] = rng.integers(1, max_size + 1)
        mats = [random_isometry(rng, dims[i], dims[i + 1]).conj().T for i in range(k - 1)]
        mats.append(random_contraction(rng, dims[k], dims[k - 1], kind="mixed"))
        return mats
    dims = rng.integers(1, max_size + 1, k + 1)
    return [random_contraction(rng, dims[i + 1], dims[i], kind=strategy) for i in range(k)]


def random_commuting_tuple(rng, n, k, style=None):
    """``k`` commuting contractions on C^n.

    ``functions``: scaled polynomials of a single random matrix.
    ``nilpotent``: polynomials without constant term in a shift-like
    nilpotent matrix, mimicking the classical counterexamples.
    ``unitary``: powers of a single random unitary (an isometry tuple).
    ``diagonal``: simultaneously unitarily diagonalizable contractions.
    """
    styles = ["functions", "nilpotent", "unitary", "diagonal"]
    if style is None:
        style = styles[rng.integers(len(styles))]
    if style == "unitary":
        U = random_unitary(rng, n)
        return [np.linalg.matrix_power(U, int(p)) for p in rng.integers(1, 4, k)]
    if style == "diagonal":
        W = random_unitary(rng, n)
        out = []
        for _ in range(k):
            d = rng.uniform(0, 1, n) * np.exp(2j * np.pi * rng.random(n))
            d = np.where(rng.random(n) < 0.4, d / np.abs(d), d)
            out.append((W * d) @ W.conj().T)
        return out
    if style == "nilpotent":
        X = np.diag(np.ones(n - 1), -1).astype(np.complex128) if n > 1 else np.zeros((1, 1), complex)
        W = random_unitary(rng, n)
        X = W @ X @ W.conj().T
        low = 1
    elif style == "functions":
        X = random_contraction(rng, n, n)
        low = 0
    else:
        raise ValueError(f"unknown style {style!r}")
    out = []
    for _ in range(k):
        coeffs = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        coeffs[:low] = 0
        P = sum(c * np.linalg.matrix_power(X, p) for p, c in enumerate(coeffs))
        nrm = np.linalg.norm(P, 2)
        out.append(P / nrm if nrm > 0 else P)
    return out


def random_unit_vectors(rng, n, count):
    """``count`` independent uniformly distributed unit vectors in C^n (columns)."""
    V = _gaussian(rng, n, count)
    return V / np.linalg.norm(V, axis=0)
