import pytest

from mckay import verify

D_TRIPLES = [(p, 2, 2) for p in range(2, 9)]
E_TRIPLES = [(3, 3, 2), (4, 3, 2), (5, 3, 2)]
DE_TRIPLES = D_TRIPLES + E_TRIPLES
A_TRIPLES = [(m,) for m in range(3, 10)]


@pytest.fixture(scope="session")
def ctx_factory():
    """Contexts are expensive; build_context is memoized so every test shares
    one instance per type."""
    return verify.build_context


@pytest.fixture(scope="session")
def e8(ctx_factory):
    return ctx_factory((5, 3, 2))


@pytest.fixture(scope="session")
def e6(ctx_factory):
    return ctx_factory((3, 3, 2))
