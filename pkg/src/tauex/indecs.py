"""Enumeration of indecomposable modules and the module universes built from it.

Over a finite field every representation with dimension vector ``d`` is
reached by running through all generator matrices.  The first generator
whose two ends are distinct vertices with nonzero dimension is put in rank
normal form ``[[I_r, 0], [0, 0]]`` (base change at its two vertices can
always achieve this), which cuts the search by a large factor without
missing any isomorphism class.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import config
from .algebra import BasedAlgebra
from .errors import InputError, ResourceError, UniverseError
from .linalg import Matrix
from .modules import (
    Module,
    are_isomorphic,
    beta,
    end_basis,
    injective_module,
    is_indecomposable,
    projective_module,
    radical_space,
    simple_module,
    split,
)


def dimension_vectors(bound: Sequence[int]):
    """Nonzero dimension vectors below ``bound``, by total dimension then lexicographically."""
    vecs = [d for d in itertools.product(*(range(b + 1) for b in bound)) if any(d)]
    vecs.sort(key=lambda d: (sum(d), d))
    return vecs


def _signature(M: Module) -> tuple:
    return (M.dims, len(end_basis(M)), tuple(m.rank() for m in M.mats),
            tuple(len(x) for x in radical_space(M)))


class _Dedup:
    def __init__(self):
        self.buckets: dict = {}
        self.found: list[Module] = []

    def add(self, M: Module) -> bool:
        bucket = self.buckets.setdefault(_signature(M), [])
        for N in bucket:
            if are_isomorphic(M, N):
                return False
        bucket.append(M)
        self.found.append(M)
        return True


def _search_plan(A: BasedAlgebra, dims: Sequence[int]):
    """Which generator to normalise, and the number of candidates."""
    q = A.field.order
    pivot = None
    for g in range(len(A.generators)):
        s, t = A.gen_ends(g)
        if s != t and dims[s] and dims[t]:
            pivot = g
            break
    free = 0
    for g in range(len(A.generators)):
        if g == pivot:
            continue
        s, t = A.gen_ends(g)
        free += dims[s] * dims[t]
    ranks = 1
    if pivot is not None:
        s, t = A.gen_ends(pivot)
        ranks = min(dims[s], dims[t]) + 1
    return pivot, free, ranks * q ** free


def _normal_form(f, r, nrows, ncols):
    return Matrix._raw(f, [[f.one if i == j and i < r else f.zero for j in range(ncols)]
                           for i in range(nrows)], ncols)


def indecomposables_with_dims(A: BasedAlgebra, dims: Sequence[int]) -> list[Module]:
    """All indecomposables of dimension vector ``dims`` up to isomorphism, first-found order."""
    f = A.field
    if not f.is_finite:
        raise ResourceError("indecomposable enumeration needs a finite field")
    dims = tuple(dims)
    pivot, free, volume = _search_plan(A, dims)
    cap = config.current().search_volume
    if volume > cap:
        raise ResourceError(f"search volume {volume} for dimension vector {list(dims)} exceeds cap {cap}",
                            required=volume, detail={"dim_vector": list(dims)})
    shapes = [(A.gen_ends(g)[1], A.gen_ends(g)[0]) for g in range(len(A.generators))]
    others = [g for g in range(len(A.generators)) if g != pivot]
    elems = list(f.elements())
    if pivot is None:
        pivots = [None]
    else:
        t, s = shapes[pivot]
        pivots = [_normal_form(f, r, dims[t], dims[s]) for r in range(min(dims[s], dims[t]) + 1)]
    dedup = _Dedup()
    for pm in pivots:
        for values in itertools.product(elems, repeat=free):
            mats = [None] * len(A.generators)
            if pivot is not None:
                mats[pivot] = pm
            pos = 0
            for g in others:
                t, s = shapes[g]
                nr, nc = dims[t], dims[s]
                mats[g] = Matrix._raw(f, [values[pos + i * nc: pos + (i + 1) * nc] for i in range(nr)], nc)
                pos += nr * nc
            M = Module(A, dims, mats, check=False)
            if M.relation_failures():
                continue
            if is_indecomposable(M):
                dedup.add(M)
    return dedup.found


def _canonical_key(M: Module):
    return (M.dims, tuple(x for m in M.mats for x in m.flat()))


def _shard(args):
    A, dims, settings = args
    with config.override(**settings):
        return [[m.rows for m in M.mats] for M in indecomposables_with_dims(A, dims)]


def enumerate_indecomposables(A: BasedAlgebra, bound: Sequence[int], jobs: int | None = None) -> list[Module]:
    """Isomorphism classes of indecomposables with every ``dim e_i M <= bound[i]``."""
    bound = tuple(int(b) for b in bound)
    if len(bound) != A.n or any(b < 0 for b in bound):
        raise InputError(f"bound {list(bound)} does not fit {A.n} vertices")
    if not A.field.is_finite:
        raise ResourceError("indecomposable enumeration needs a finite field")
    vecs = dimension_vectors(bound)
    cap = config.current().search_volume
    for d in vecs:
        _, _, volume = _search_plan(A, d)
        if volume > cap:
            raise ResourceError(f"search volume {volume} for dimension vector {list(d)} exceeds cap {cap}",
                                required=volume, detail={"dim_vector": list(d)})
    jobs = jobs or config.current().jobs
    per_dims: list[list[Module]] = []
    if jobs > 1 and len(vecs) > 1:
        s = config.current()
        settings = dict(hom_budget=s.hom_budget, max_subspaces=s.max_subspaces,
                        search_volume=s.search_volume, random_trials=s.random_trials, seed=s.seed)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_shard, [(A, d, settings) for d in vecs]))
        for d, mats in zip(vecs, results):
            per_dims.append([Module(A, d, [Matrix._raw(A.field, rows, d[A.gen_ends(g)[0]])
                                           for g, rows in enumerate(ms)], check=False) for ms in mats])
    else:
        per_dims = [indecomposables_with_dims(A, d) for d in vecs]
    # merging re-deduplicates, so shards may overlap without harm
    dedup = _Dedup()
    for mods in per_dims:
        for M in mods:
            dedup.add(M)
    return sorted(dedup.found, key=_canonical_key)


@dataclass(eq=False)
class Universe:
    """A list of pairwise non-isomorphic indecomposables, with completeness flag."""

    algebra: BasedAlgebra
    modules: list
    bound: tuple | None
    certified: bool
    _index: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        for k, M in enumerate(self.modules):
            self._index.setdefault(M.dims, []).append(k)

    def __len__(self):
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)

    def __getitem__(self, k):
        return self.modules[k]

    def index_of(self, M: Module) -> int | None:
        """Position of the member isomorphic to ``M``, or ``None``."""
        if M.algebra is not self.algebra:
            raise InputError("module is over a different algebra than the universe")
        for k in self._index.get(M.dims, []):
            if are_isomorphic(self.modules[k], M):
                return k
        return None

    def require(self, M: Module) -> int:
        k = self.index_of(M)
        if k is None:
            raise UniverseError(f"module with dimension vector {list(M.dims)} is not in the universe")
        return k

    def require_certified(self, what: str):
        if not self.certified:
            raise UniverseError(f"{what} needs a certified universe")


def probe_universe(A: BasedAlgebra, rounds: int = 3) -> Universe:
    """Projectives, injectives, simples, closed a few rounds under tau and beta (uncertified)."""
    from .ar import tau

    found: list[Module] = []

    def add(M):
        for S, _, _ in split(M):
            if not any(S.dims == N.dims and are_isomorphic(S, N) for N in found):
                found.append(S)
                fresh.append(S)

    fresh: list[Module] = []
    for i in range(A.n):
        add(projective_module(A, i))
        add(injective_module(A, i))
        add(simple_module(A, i))
    for _ in range(rounds):
        todo, fresh = fresh, []
        for M in todo:
            add(tau(M))
            add(beta(M))
        if not fresh:
            break
    found.sort(key=_canonical_key)
    return Universe(A, found, None, False)


def build_universe(A: BasedAlgebra, bound: Sequence[int] | None = None, jobs: int | None = None) -> Universe:
    """The universe for ``A``: enumerated over finite fields, probed over QQ.

    A declared ``universe`` entry of the input gives the default bound and
    the completeness flag.  Enumerating with a larger bound keeps a
    declared certification; a smaller one drops it.
    """
    declared = (A.presentation.universe if A.presentation is not None else None) or {}
    if not A.field.is_finite:
        return probe_universe(A)
    dbound = declared.get("bound")
    if bound is None:
        bound = dbound
    if bound is None:
        raise InputError("no dimension bound given and none declared by the input")
    bound = tuple(int(b) for b in bound)
    certified = bool(declared.get("certified")) and dbound is not None and \
        len(dbound) == len(bound) and all(b >= c for b, c in zip(bound, dbound))
    return Universe(A, enumerate_indecomposables(A, bound, jobs), bound, certified)
