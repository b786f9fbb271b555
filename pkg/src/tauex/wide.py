"""King semistability and tau-perpendicular categories with their reduced algebras.

``J(X)`` is cut out of a module universe by the two Hom conditions.  Its
relative projectives ``P_1, ..., P_m`` are the members with no self
extensions against the whole context, and ``Hom(P_W, -)`` with
``P_W = P_1 + ... + P_m`` identifies ``J(X)`` with modules over
``End(P_W)^op``.  That algebra is written as a :class:`BasedAlgebra` whose
basis is a union of bases of the spaces ``Hom(P_s, P_t)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .algebra import BasedAlgebra
from .ar import ext1_dim, is_tau_rigid, tau
from .errors import InputError, InvariantViolation, ResourceError, UniverseError
from .indecs import Universe
from .linalg import Coordinates, Matrix
from .modules import (
    Module,
    ModuleMorphism,
    end_basis,
    end_radical,
    hom_basis,
    hom_dim,
    is_in_gen,
    rk,
    submodule_spaces,
    space_dims,
    zero_module,
)


def is_theta_semistable(theta: Sequence, M: Module, negate: bool = False) -> bool:
    """``theta . dim M = 0`` and ``theta . dim M' <= 0`` for every submodule ``M'``.

    With ``negate`` the opposite convention is used on ``-theta``
    (``>= 0`` on submodules); both conventions give the same answer.
    """
    if len(theta) != M.algebra.n:
        raise InputError(f"theta has length {len(theta)}, expected {M.algebra.n}")
    if not M.field.is_finite:
        raise ResourceError("semistability is only decided over finite fields")
    th = [Fraction(t) for t in theta]
    if negate:
        th = [-t for t in th]

    def pair(d):
        return sum(t * x for t, x in zip(th, d))

    if pair(M.dims) != 0:
        return False
    for U in submodule_spaces(M):
        value = pair(space_dims(U))
        if (value < 0) if negate else (value > 0):
            return False
    return True


def in_tau_perp(X: Module, M: Module) -> bool:
    """``Hom(X, M) = 0 = Hom(M, tau X)``."""
    if M.dim == 0:
        return True
    return hom_dim(X, M) == 0 and hom_dim(M, tau(X)) == 0


def _flat_coords(basis: Sequence[ModuleMorphism], length: int, field):
    return Coordinates(field, [phi.flat() for phi in basis], length)


@dataclass(eq=False)
class WideContext:
    """``J(X)`` inside a universe, with its reduced algebra and transport data."""

    X: Module
    universe: Universe
    members: tuple[int, ...]  # universe indices in J(X)
    projectives: tuple[int, ...]  # universe indices of the relative projectives
    reduced: BasedAlgebra
    slice_only: bool
    _proj_basis: list = dc_field(default_factory=list, repr=False)  # per (s, t): basis of Hom(P_s, P_t)
    _cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def algebra(self) -> BasedAlgebra:
        return self.universe.algebra

    @property
    def n(self) -> int:
        return self.reduced.n

    def member_modules(self) -> list[Module]:
        return [self.universe[k] for k in self.members]

    def projective_modules(self) -> list[Module]:
        return [self.universe[k] for k in self.projectives]

    def contains(self, M: Module) -> bool:
        return in_tau_perp(self.X, M)

    # -- transport ---------------------------------------------------------
    def _hom_from_projectives(self, M: Module):
        key = ("homs", M.key())
        if key not in self._cache:
            bases = [hom_basis(P, M) for P in self.projective_modules()]
            coords = [_flat_coords(b, sum(P.dims[v] * M.dims[v] for v in range(len(P.dims))), M.field)
                      for b, P in zip(bases, self.projective_modules())]
            self._cache[key] = (bases, coords)
        return self._cache[key]

    def transport(self, M: Module, check: bool = True) -> Module:
        """``Hom(P_W, M)`` as a module over the reduced algebra."""
        if check and not self.contains(M):
            raise InputError("module is not in the tau-perpendicular category")
        R = self.reduced
        f = M.field
        bases, coords = self._hom_from_projectives(M)
        mats = []
        for b in R.generators:
            s, t = R.target[b], R.source[b]  # the basis morphism goes P_s -> P_t
            phi = self._element(b)
            cols = [coords[s].coords((h @ phi).flat()) for h in bases[t]]
            mats.append(Matrix.from_columns(f, cols, len(bases[s])))
        return Module(R, [len(x) for x in bases], mats, check=check)

    def transport_morphism(self, psi: ModuleMorphism) -> ModuleMorphism:
        """``Hom(P_W, psi)``: post-composition with ``psi``."""
        src = self.transport(psi.source, check=False)
        tgt = self.transport(psi.target, check=False)
        bs, _ = self._hom_from_projectives(psi.source)
        _, ct = self._hom_from_projectives(psi.target)
        blocks = []
        for j in range(self.n):
            cols = [ct[j].coords((psi @ h).flat()) for h in bs[j]]
            blocks.append(Matrix.from_columns(psi.field, cols, tgt.dims[j]))
        return ModuleMorphism(src, tgt, blocks, check=True)

    def _element(self, b: int) -> ModuleMorphism:
        return self._cache["elements"][b]


def _reduced_algebra(field, projectives: Sequence[Module], name: str):
    """``End(P_1 + ... + P_m)^op`` on a basis of the spaces ``Hom(P_s, P_t)``.

    The basis morphism ``phi: P_s -> P_t`` is an element with source ``t`` and
    target ``s``; the product ``x * y`` is the composite ``phi_y o phi_x``.
    """
    m = len(projectives)
    elements: list[ModuleMorphism] = []
    source, target, labels = [], [], []
    span: dict = {}
    idempotents = []
    for s, Ps in enumerate(projectives):
        for t, Pt in enumerate(projectives):
            if s == t:
                rad = end_radical(Ps)
                if len(rad) + 1 != len(end_basis(Ps)):
                    raise InvariantViolation("relative projective has a non-split residue field; "
                                             "the reduced algebra would not be elementary")
                idempotents.append(len(elements))
                basis = [ModuleMorphism.identity(Ps)] + list(rad)
            else:
                basis = hom_basis(Ps, Pt)
            first = len(elements)
            for k, phi in enumerate(basis):
                elements.append(phi)
                source.append(t)
                target.append(s)
                labels.append(f"e{s}" if s == t and k == 0 else f"h{s}{t}_{k}")
            span[(s, t)] = (first, basis, _flat_coords(basis, sum(
                Ps.dims[v] * Pt.dims[v] for v in range(len(Ps.dims))), field))
    table = {}
    for x, phx in enumerate(elements):
        for y, phy in enumerate(elements):
            # x: P_s -> P_t, y: P_t -> P_u
            if target[y] != source[x]:
                continue
            s, u = target[x], source[y]
            first, _, coords = span[(s, u)]
            c = coords.coords((phy @ phx).flat())
            prod = {first + k: v for k, v in enumerate(c) if v}
            if prod:
                table[(x, y)] = prod
    idem = set(idempotents)
    generators = tuple(b for b in range(len(elements)) if b not in idem)
    gpos = {b: g for g, b in enumerate(generators)}
    words = tuple(() if b in idem else (gpos[b],) for b in range(len(elements)))
    R = BasedAlgebra(field=field, n=m, labels=tuple(labels), source=tuple(source), target=tuple(target),
                     idempotents=tuple(idempotents), generators=generators, words=words, table=table,
                     name=name, vertex_labels=tuple(str(k) for k in range(m)))
    return R, elements


def wide_context(X: Module | None, universe: Universe, allow_slice: bool = False) -> WideContext:
    """``J(X)`` for a basic tau-rigid ``X`` (``None`` or zero means the whole category)."""
    A = universe.algebra
    if X is None:
        X = zero_module(A)
    if X.algebra is not A:
        raise InputError("generator and universe live over different algebras")
    if not universe.certified and not allow_slice:
        raise UniverseError("tau-perpendicular reduction needs a certified universe")
    if X.dim and not is_tau_rigid(X):
        raise InputError("J(X) is only formed for tau-rigid X")
    members = tuple(k for k, M in enumerate(universe) if in_tau_perp(X, M))
    projs = tuple(k for k in members if all(ext1_dim(universe[k], universe[j]) == 0 for j in members))
    expected = A.n - rk(X)
    if len(projs) != expected:
        raise UniverseError(f"found {len(projs)} relative projectives in J(X), expected {expected}; "
                            "the universe is incomplete")
    R, elements = _reduced_algebra(A.field, [universe[k] for k in projs], f"{A.name}/J")
    W = WideContext(X, universe, members, projs, R, not universe.certified)
    W._cache["elements"] = elements
    return W


def reduced_universe(W: WideContext) -> Universe:
    """The members of ``W`` transported to the reduced algebra, in the same order."""
    mods = [W.transport(W.universe[k], check=False) for k in W.members]
    return Universe(W.reduced, mods, None, W.universe.certified)


def tau_rigid_in_by_ext(W: WideContext, M: Module) -> bool:
    """Cross-check: ``Ext^1(M, N) = 0`` for every context member ``N`` in ``Gen M``."""
    for N in W.member_modules():
        if is_in_gen(N, M) and ext1_dim(M, N):
            return False
    return True


def is_tau_rigid_in(W: WideContext, M: Module, cross_check: bool = False) -> bool:
    """Relative tau-rigidity, decided over the reduced algebra."""
    if not W.contains(M):
        raise InputError("module is not in the tau-perpendicular category")
    primary = is_tau_rigid(W.transport(M, check=False))
    if cross_check:
        other = tau_rigid_in_by_ext(W, M)
        if other != primary and not W.slice_only:
            raise InvariantViolation("relative tau-rigidity oracles disagree")
    return primary
