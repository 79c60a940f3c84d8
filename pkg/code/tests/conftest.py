from pathlib import Path

import pytest
from hypothesis import settings as hypothesis_settings

from primdecomp import instances
from primdecomp.pogroup import lattice_of

hypothesis_settings.register_profile('default', deadline=None, max_examples=60)
hypothesis_settings.load_profile('default')

REPO_ROOT = Path(__file__).resolve().parents[2]
EXAMPLES = REPO_ROOT / 'data' / 'examples'
GOLDEN = Path(__file__).resolve().parent / 'golden'


@pytest.fixture
def e1():
    return instances.e1()


@pytest.fixture
def e2():
    return instances.e2()


@pytest.fixture
def plane():
    """Face lattice of Z^2 with faces 0, x, y, xy"""
    return lattice_of(instances.orthant(2))


@pytest.fixture
def faces(plane):
    trivial, x, y, full = plane.faces
    return {'0': trivial, 'x': x, 'y': y, 'xy': full}


@pytest.fixture
def two_ray():
    return lattice_of(instances.two_ray_cone())


@pytest.fixture
def examples_dir():
    return EXAMPLES


@pytest.fixture
def golden_dir():
    return GOLDEN


@pytest.fixture
def session_dirs(tmp_path, monkeypatch):
    """Run with the session log/output/plot folders inside a temporary directory"""
    monkeypatch.chdir(tmp_path)
    return tmp_path
