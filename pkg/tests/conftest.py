import pytest

from macroforge.io.config import load_config
from macroforge.model.initialisation import init_model


# 31 firms and about 800 households: fast enough to run full quarters in every test
SMALL_SCALE = 10000


@pytest.fixture(scope='session')
def fixture_inputs():
    return load_config('austria2010q1_synthetic')


@pytest.fixture(scope='session')
def small_inputs(fixture_inputs):
    params, ic = fixture_inputs
    return params.model_copy(update={'scale': SMALL_SCALE}), ic


@pytest.fixture
def make_model(small_inputs):
    """Factory of fresh small-scale fixture models."""
    params, ic = small_inputs

    def _make(T=4, seed=42):
        return init_model(params, ic, T, seed=seed)

    return _make


@pytest.fixture
def small_model(make_model):
    return make_model()
