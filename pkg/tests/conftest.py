import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from equicohom.bundle import fixture_names, fixture_path, load_bundle  # noqa: E402

FIXTURES = fixture_names()


@functools.lru_cache(maxsize=None)
def bundle(name: str):
    return load_bundle(fixture_path(name))


@functools.lru_cache(maxsize=None)
def complex_of(name: str):
    return bundle(name).complex()


def hypotheses_hold(name: str) -> bool:
    return not bundle(name).hypotheses()


@pytest.fixture(params=FIXTURES)
def fixture_name(request):
    return request.param
