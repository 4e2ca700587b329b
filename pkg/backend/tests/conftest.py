import json

import pytest

from app.core.config import get_settings
from app.main import create_registry
from app.modules.discrete.repository.discrete_repo import DiscreteRepo
from app.modules.fields.repository.field_repo import FieldRepo
from app.modules.interp.repository.interp_repo import InterpRepo
from app.modules.norms.repository.norm_repo import NormRepo
from app.modules.quadrature.repository.quadrature_repo import QuadratureRepo
from app.modules.scenarios.repository.runner_repo import ScenarioRunner
from app.modules.studies.repository.study_repo import StudyRepo
from app.modules.weights.repository.weight_repo import WeightRepo


@pytest.fixture(scope="session")
def settings():
    return get_settings()


@pytest.fixture(scope="session")
def weight_repo(settings):
    return WeightRepo(settings)


@pytest.fixture(scope="session")
def field_repo(settings):
    return FieldRepo(settings)


@pytest.fixture(scope="session")
def quadrature_repo(settings):
    return QuadratureRepo(settings)


@pytest.fixture(scope="session")
def norm_repo(settings, quadrature_repo, weight_repo):
    return NormRepo(settings, quadrature_repo, weight_repo)


@pytest.fixture(scope="session")
def interp_repo(settings, norm_repo):
    return InterpRepo(settings, norm_repo)


@pytest.fixture(scope="session")
def discrete_repo(settings):
    return DiscreteRepo(settings)


@pytest.fixture(scope="session")
def study_repo(settings, norm_repo, field_repo):
    return StudyRepo(settings, norm_repo, field_repo)


@pytest.fixture(scope="session")
def registry():
    return create_registry()


@pytest.fixture
def runner(registry, settings):
    return ScenarioRunner(registry, settings)


@pytest.fixture
def bump_1d(field_repo):
    return field_repo.make_bump(0.0, 1.0, dim=1)


@pytest.fixture
def write_config(tmp_path):
    """Write a scenario config into tmp_path and return its path"""

    def _write(scenarios, seed=None, raw=None):
        path = tmp_path / "config.json"
        if raw is not None:
            path.write_text(raw, encoding="utf-8")
        else:
            body = {"scenarios": scenarios}
            if seed is not None:
                body["seed"] = seed
            path.write_text(json.dumps(body), encoding="utf-8")
        return str(path)

    return _write
