import numpy as np
import pytest

from kregular.corpus import crabb_davie, identity_chain, kaijser_varopoulos, parrott
from kregular.factorization import build_chain
from kregular.sampling import random_chain_factors


def corpus_chains():
    """Operator chains behind the commuting-tuple corpus cases."""
    cases = [kaijser_varopoulos(), crabb_davie()] + [
        parrott(*_parrott_pair(n)) for n in (2, 3, 4)
    ]
    return [identity_chain(c) for c in cases]


def _parrott_pair(n):
    if n == 2:
        return None, None
    rng = np.random.default_rng(n)
    from kregular.sampling import random_unitary
    return random_unitary(rng, n), random_unitary(rng, n)


def random_chains(count=100, seed=2024, max_size=6, max_k=4):
    rng = np.random.default_rng(seed)
    return [build_chain(random_chain_factors(rng, max_size, max_k)) for _ in range(count)]


@pytest.fixture(scope="session")
def chain_population():
    return corpus_chains() + random_chains()


# criterion number -> (passed, note); filled by test_acceptance.py
RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, note = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {note}")
