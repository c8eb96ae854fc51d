from functools import lru_cache

import pytest

from quasihopf.double import build_double
from quasihopf.gallery import example

GALLERY = [
    "group:Z2",
    "group:Z3",
    "group:Z4",
    "group:S3",
    "sweedler",
    "dual-omega:Z2:1",
    "dual-omega:Z3:1",
]
SMALL = ["group:Z2", "sweedler", "dual-omega:Z2:1"]


@lru_cache(maxsize=None)
def algebra(name):
    return example(name)


@lru_cache(maxsize=None)
def double(name):
    return build_double(algebra(name))


@pytest.fixture
def get_algebra():
    return algebra


@pytest.fixture
def get_double():
    return double
