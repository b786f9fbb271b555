from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import pytest

from tauex.algebra import load_algebra
from tauex.indecs import build_universe

CERTIFIED = ("a2", "a3", "loop2", "nak3")
ALL_F2 = CERTIFIED + ("kron",)


def fixture_doc(name: str) -> dict:
    text = (resources.files("tauex") / "fixtures" / f"{name}.json").read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def algebra(name: str):
    return load_algebra(fixture_doc(name))


@lru_cache(maxsize=None)
def universe(name: str):
    return build_universe(algebra(name))


@pytest.fixture
def a2():
    return algebra("a2")


@pytest.fixture
def loop2():
    return algebra("loop2")
