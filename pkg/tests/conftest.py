import pytest

from bugdebt import classify_debt, generate, SynthSpec


@pytest.fixture(scope="session")
def small_corpus():
    """One mid-size generated corpus shared by read-only tests."""
    spec = SynthSpec(seed=11, n_products=6, bugs_per_product=(40, 90))
    snapshot, truth = generate(spec)
    return spec, snapshot, truth


@pytest.fixture(scope="session")
def small_marks(small_corpus):
    _, snapshot, _ = small_corpus
    return classify_debt(snapshot)
