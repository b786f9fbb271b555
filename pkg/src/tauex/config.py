"""Search budgets shared by the enumeration and decision procedures."""
from __future__ import annotations

import contextlib
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Settings:
    hom_budget: int = 1 << 20        # exhaustive End/Hom enumeration cap (field elements ** dim)
    max_subspaces: int = 1 << 16     # submodule / subspace enumeration cap
    search_volume: int = 1 << 20     # candidate representations per enumeration
    random_trials: int = 48          # seeded random trials before exhaustive fallback
    seed: int = 20240601
    jobs: int = 1


_current = Settings()


def current() -> Settings:
    return _current


@contextlib.contextmanager
def override(**changes):
    global _current
    previous = _current
    _current = replace(previous, **{k: v for k, v in changes.items() if v is not None})
    try:
        yield _current
    finally:
        _current = previous
