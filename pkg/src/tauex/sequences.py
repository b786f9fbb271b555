"""Checkers, enumerators and completion for tau-exceptional sequences.

The recursion runs through a chain of *levels*.  A level is a module
category ``mod R`` (the root is ``mod A``; every other level is the reduced
algebra of ``J(Y)`` for a relatively tau-rigid ``Y`` of its parent), whose
universe members remember which ambient universe member they came from.
Sequence entries are therefore always compared in the ambient category.

Three flavors are supported: ``plain`` (modules), ``signed``
(:class:`~tauex.ar.TaggedModule` entries, shifts allowed on relative
projectives) and ``brick`` (entries are ``beta`` of a plain sequence).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .ar import TaggedModule, is_projective, is_tau_rigid, tau, untag
from .errors import InputError, InvariantViolation, UniverseError
from .indecs import Universe
from .modules import Module, are_isomorphic, beta, direct_sum, hom_dim
from .wide import WideContext, reduced_universe, wide_context

FLAVORS = ("plain", "signed", "brick")


class Level:
    """One module category in the reduction chain."""

    def __init__(self, universe: Universe, ambient: Sequence[int], root: "Level | None" = None,
                 allow_slice: bool = False):
        self.universe = universe
        self.ambient = tuple(ambient)
        self.root = root or self
        self.allow_slice = allow_slice
        self.position = {a: k for k, a in enumerate(self.ambient)}
        self._children: dict = {}
        self._rigid: dict = {}
        self._proj: dict = {}
        if root is None:
            self._beta: dict = {}

    @classmethod
    def from_universe(cls, universe: Universe, allow_slice: bool = False) -> "Level":
        if not universe.certified and not allow_slice:
            raise UniverseError("sequence computations need a certified universe")
        return cls(universe, range(len(universe)), None, allow_slice)

    @property
    def n(self) -> int:
        return self.universe.algebra.n

    @property
    def members(self) -> frozenset:
        return frozenset(self.ambient)

    def module(self, k: int) -> Module:
        return self.universe[k]

    def ambient_module(self, k: int) -> Module:
        return self.root.universe[self.ambient[k]]

    def tau_rigid(self, k: int) -> bool:
        if k not in self._rigid:
            self._rigid[k] = is_tau_rigid(self.module(k))
        return self._rigid[k]

    def projective(self, k: int) -> bool:
        if k not in self._proj:
            self._proj[k] = is_projective(self.module(k))
        return self._proj[k]

    def rigid_members(self) -> list[int]:
        return [k for k in range(len(self.universe)) if self.tau_rigid(k)]

    def child(self, ks: Sequence[int] | int) -> "Level":
        """The level of ``J(Y)`` for ``Y`` the sum of the given (compatible, rigid) members."""
        key = (ks,) if isinstance(ks, int) else tuple(sorted(ks))
        if key not in self._children:
            mods = [self.module(k) for k in key]
            Y = mods[0] if len(mods) == 1 else direct_sum(mods, self.universe.algebra)
            W = wide_context(Y, self.universe, allow_slice=self.allow_slice)
            sub = reduced_universe(W)
            lvl = Level(sub, [self.ambient[k] for k in W.members], self.root, self.allow_slice)
            lvl.context = W
            self._children[key] = lvl
        return self._children[key]

    def beta_of(self, a: int) -> Module:
        """``beta`` of the ambient member ``a`` (computed in the ambient category)."""
        cache = self.root._beta
        if a not in cache:
            cache[a] = beta(self.root.universe[a])
        return cache[a]

    def locate(self, M: Module) -> int | None:
        a = self.root.universe.index_of(M)
        if a is None:
            return None
        return self.position.get(a)


@dataclass
class SequenceReport:
    flavor: str
    sequence: list
    valid: bool
    complete: bool = False
    contexts: list = dc_field(default_factory=list)
    counterexample: dict | None = None

    def __bool__(self):
        return self.valid


def _normalise(seq, flavor):
    if flavor not in FLAVORS:
        raise InputError(f"unknown flavor {flavor!r}")
    out = []
    for X in seq:
        if flavor == "signed":
            out.append(X if isinstance(X, TaggedModule) else TaggedModule(X, False))
        else:
            if isinstance(X, TaggedModule):
                if X.shifted:
                    raise InputError(f"shifted entries are only allowed in signed sequences")
                X = X.module
            out.append(X)
    return out


def _run(level: Level, seq: Sequence, flavor: str) -> tuple[SequenceReport, Level, list]:
    """Check ``seq`` from the right starting at ``level``; also return the final level and lifts."""
    seq = _normalise(seq, flavor)
    report = SequenceReport(flavor, list(seq), True)
    lifts: list = [None] * len(seq)
    lvl = level
    for pos in range(len(seq) - 1, -1, -1):
        X = seq[pos]
        M = untag(X)
        report.contexts.insert(0, {"position": pos, "rank": lvl.n, "reduced_dim": lvl.universe.algebra.dim})
        if M.algebra is not level.root.universe.algebra:
            raise InputError("sequence entry lives over a different algebra")
        if flavor == "brick":
            hits = [k for k in lvl.rigid_members()
                    if lvl.beta_of(lvl.ambient[k]).dims == M.dims and are_isomorphic(lvl.beta_of(lvl.ambient[k]), M)]
            if len(hits) > 1:
                raise InvariantViolation(f"position {pos}: {len(hits)} tau-rigid lifts share one brick")
            if not hits:
                report.valid = False
                report.counterexample = {"position": pos,
                                         "condition": "no relatively tau-rigid module has this brick as beta"}
                return report, lvl, lifts
            k = hits[0]
        else:
            k = lvl.locate(M)
            if k is None:
                report.valid = False
                report.counterexample = {"position": pos,
                                         "condition": "not an indecomposable of the current tau-perpendicular category"}
                return report, lvl, lifts
            if flavor == "signed" and X.shifted:
                if not lvl.projective(k):
                    report.valid = False
                    report.counterexample = {"position": pos,
                                             "condition": "shifted entry is not relatively projective"}
                    return report, lvl, lifts
            elif not lvl.tau_rigid(k):
                report.valid = False
                report.counterexample = {"position": pos, "condition": "not relatively tau-rigid"}
                return report, lvl, lifts
        lifts[pos] = lvl.ambient[k]
        lvl = lvl.child(k)
    report.complete = len(seq) == level.n
    return report, lvl, lifts


def check_sequence(seq: Sequence, universe: Universe | Level, flavor: str = "plain") -> SequenceReport:
    level = universe if isinstance(universe, Level) else Level.from_universe(universe)
    return _run(level, seq, flavor)[0]


def is_tau_exceptional(seq: Sequence[Module], universe) -> SequenceReport:
    return check_sequence(seq, universe, "plain")


def is_signed_tau_exceptional(seq: Sequence[TaggedModule], universe) -> SequenceReport:
    return check_sequence(seq, universe, "signed")


def is_brick_tau_exceptional(seq: Sequence[Module], universe) -> SequenceReport:
    return check_sequence(seq, universe, "brick")


# ---------------------------------------------------------------------------
# enumeration


def _index_sequences(level: Level, signed: bool, skip_incomplete: bool):
    """Complete sequences as tuples of ``(ambient index, shifted)``, first entry first."""
    if level.n == 0:
        return [()]
    out = []
    for k in level.rigid_members():
        try:
            sub = level.child(k)
        except UniverseError:
            if skip_incomplete:
                continue
            raise
        tails = [(level.ambient[k], False)]
        if signed and level.projective(k):
            tails.append((level.ambient[k], True))
        for head in _index_sequences(sub, signed, skip_incomplete):
            for t in tails:
                out.append(head + (t,))
    return out


def _brick_representative(level: Level, a: int) -> Module:
    B = level.beta_of(a)
    k = level.root.universe.index_of(B)
    return B if k is None else level.root.universe[k]


def enumerate_complete(universe: Universe | Level, flavor: str = "plain", allow_slice: bool = False) -> list:
    """Every complete sequence of the flavor, in canonical order.

    Canonical order sorts by the ambient universe positions of the entries
    (first entry first), unshifted before shifted.  With ``allow_slice`` an
    uncertified universe is accepted and branches whose reduction cannot be
    built from it are skipped, so the output is only the part of the set
    visible inside the slice.
    """
    if flavor not in FLAVORS:
        raise InputError(f"unknown flavor {flavor!r}")
    level = universe if isinstance(universe, Level) else Level.from_universe(universe, allow_slice)
    idx = sorted(_index_sequences(level, flavor == "signed", level.allow_slice))
    U = level.root.universe
    if flavor == "plain":
        return [[U[a] for a, _ in s] for s in idx]
    if flavor == "signed":
        return [[TaggedModule(U[a], sh) for a, sh in s] for s in idx]
    return [[_brick_representative(level, a) for a, _ in s] for s in idx]


def complete_sequence(partial: Sequence, universe: Universe | Level, flavor: str = "plain") -> list:
    """Extend a valid sequence on the left to a complete one.

    At each step the lowest-index relative projective of the current
    category is prepended (unshifted); the choice is ours, any relative
    projective would do.
    """
    level = universe if isinstance(universe, Level) else Level.from_universe(universe)
    report, lvl, _ = _run(level, partial, flavor)
    if not report.valid:
        raise InputError(f"cannot complete an invalid sequence: {report.counterexample}")
    seq = _normalise(partial, flavor)
    U = level.root.universe
    while lvl.n:
        k = next(k for k in range(len(lvl.universe)) if lvl.projective(k))
        a = lvl.ambient[k]
        if flavor == "signed":
            entry = TaggedModule(U[a], False)
        elif flavor == "brick":
            entry = _brick_representative(level, a)
        else:
            entry = U[a]
        seq.insert(0, entry)
        lvl = lvl.child(k)
    return seq


# ---------------------------------------------------------------------------
# tau-perpendicular subcategories


def basic_rigid_sets(level: Level) -> list[tuple[int, ...]]:
    """Member sets whose direct sum is tau-rigid (including the empty set)."""
    rig = level.rigid_members()
    ok = {}
    for a in rig:
        for b in rig:
            if a != b:
                ok[(a, b)] = hom_dim(level.module(a), tau(level.module(b))) == 0
    out = [()]
    for r in range(1, level.n + 1):
        for combo in itertools.combinations(rig, r):
            if all(ok[(a, b)] for a in combo for b in combo if a != b):
                out.append(combo)
    return out


def perpendicular_levels(level: Level) -> dict:
    """Every tau-perpendicular subcategory reachable by nested reduction, keyed by member set."""
    found = {level.members: level}
    todo = [level]
    while todo:
        lvl = todo.pop()
        for combo in basic_rigid_sets(lvl):
            if not combo:
                continue
            sub = lvl.child(combo)
            if sub.members not in found:
                found[sub.members] = sub
                todo.append(sub)
    return found
