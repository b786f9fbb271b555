"""Projective presentations, the Nakayama functor, tau, g-vectors and Ext.

Maps between sums of indecomposable projectives are stored as matrices of
algebra elements: a map ``P(j_1) + ... + P(j_m) -> P(i_1) + ... + P(i_p)``
is given by ``x[l][k]`` in ``e_{j_l} A e_{i_k}`` and sends ``y`` in
``P(j_l)`` to ``y * x[l][k]`` in ``P(i_k)``.  Every homomorphism between
such sums has this shape, and the Nakayama functor acts on it entrywise by
dualising left multiplication.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import BasedAlgebra
from .errors import InputError, InvariantViolation
from .linalg import Matrix
from .modules import (
    Module,
    ModuleMorphism,
    direct_sum,
    hom_basis,
    hom_dim,
    injective_module,
    is_brick,
    kernel,
    projective_module,
    radical_space,
    submodule,
    top_vectors,
    zero_module,
)


@dataclass(frozen=True)
class TaggedModule:
    """An object of ``mod A`` or of its shifted copy ``mod A[1]``."""

    module: Module
    shifted: bool = False

    @property
    def underlying(self) -> Module:
        return self.module

    def to_json(self) -> dict:
        out = self.module.to_json()
        out["shifted"] = self.shifted
        return out

    def __repr__(self):
        return f"{self.module!r}{'[1]' if self.shifted else ''}"


def untag(X) -> Module:
    return X.module if isinstance(X, TaggedModule) else X


def dim_vector(X) -> tuple[int, ...]:
    """Dimension vector; a shifted object carries the negated vector."""
    if isinstance(X, TaggedModule):
        d = X.module.dims
        return tuple(-x for x in d) if X.shifted else d
    return X.dims


@dataclass(frozen=True)
class ProjectiveMap:
    """A homomorphism between direct sums of indecomposable projectives."""

    algebra: BasedAlgebra
    sources: tuple[int, ...]  # j_l
    targets: tuple[int, ...]  # i_k
    entries: tuple  # entries[l][k]: dict basis index -> coeff, inside e_{j_l} A e_{i_k}

    def __post_init__(self):
        A = self.algebra
        if len(self.entries) != len(self.sources) or any(len(r) != len(self.targets) for r in self.entries):
            raise InputError("projective map entries do not match its source and target")
        for l, j in enumerate(self.sources):
            for k, i in enumerate(self.targets):
                for b in self.entries[l][k]:
                    if A.source[b] != i or A.target[b] != j:
                        raise InputError("projective map entry is not in e_j A e_i")

    def source_module(self) -> Module:
        return direct_sum([projective_module(self.algebra, j) for j in self.sources], self.algebra)

    def target_module(self) -> Module:
        return direct_sum([projective_module(self.algebra, i) for i in self.targets], self.algebra)

    def is_zero(self) -> bool:
        return not any(row_k for row in self.entries for row_k in row)

    def to_morphism(self) -> ModuleMorphism:
        A = self.algebra
        f = A.field
        src, tgt = self.source_module(), self.target_module()
        blocks = []
        for v in range(A.n):
            cols = []
            for l, j in enumerate(self.sources):
                for y in projective_module(A, j)._cache["projective_basis"][v]:
                    col = []
                    for k, i in enumerate(self.targets):
                        img = {}
                        for b, c in self.entries[l][k].items():
                            for r, d in A.mul_basis(y, b).items():
                                img[r] = f.add(img.get(r, f.zero), f.mul(c, d))
                        col.extend(img.get(r, f.zero)
                                   for r in projective_module(A, i)._cache["projective_basis"][v])
                    cols.append(col)
            blocks.append(Matrix.from_columns(f, cols, tgt.dims[v]))
        return ModuleMorphism(src, tgt, blocks, check=False)


def projective_map_from_morphism(phi: ModuleMorphism, sources: Sequence[int], targets: Sequence[int]) -> ProjectiveMap:
    """Read off the element matrix of ``phi`` between the given sums of projectives."""
    A = phi.source.algebra
    if phi.source.key() != direct_sum([projective_module(A, j) for j in sources], A).key() or \
            phi.target.key() != direct_sum([projective_module(A, i) for i in targets], A).key():
        raise InputError("morphism is not between the stated sums of indecomposable projectives")
    # e_{j_l} in the source sits at vertex j_l; its position among that vertex's basis
    seen = [0] * A.n
    entries = []
    for j in sources:
        basis_j = projective_module(A, j)._cache["projective_basis"][j]
        pos = seen[j] + basis_j.index(A.idempotents[j])
        seen[j] += len(basis_j)
        img = phi.blocks[j].column(pos)
        row, offset = [], 0
        for i in targets:
            basis_i = projective_module(A, i)._cache["projective_basis"][j]
            row.append({b: c for b, c in zip(basis_i, img[offset:offset + len(basis_i)]) if c})
            offset += len(basis_i)
        entries.append(tuple(row))
        for v in range(A.n):
            if v != j:
                seen[v] += len(projective_module(A, j)._cache["projective_basis"][v])
    return ProjectiveMap(A, tuple(sources), tuple(targets), tuple(entries))


def nakayama_of_projective_map(fmap) -> ModuleMorphism:
    """``nu(f)``: the induced map between the corresponding sums of injectives.

    ``nu`` sends right multiplication by ``x`` to ``h -> (z -> h(x * z))``.
    """
    if isinstance(fmap, ModuleMorphism):
        raise InputError("pass a ProjectiveMap (see projective_map_from_morphism)")
    if not isinstance(fmap, ProjectiveMap):
        raise InputError("Nakayama functor is only applied to maps between projectives")
    A = fmap.algebra
    f = A.field
    src = direct_sum([injective_module(A, j) for j in fmap.sources], A)
    tgt = direct_sum([injective_module(A, i) for i in fmap.targets], A)
    blocks = []
    for v in range(A.n):
        cols = []
        for l, j in enumerate(fmap.sources):
            for b in injective_module(A, j)._cache["injective_basis"][v]:
                col = []
                for k, i in enumerate(fmap.targets):
                    for c in injective_module(A, i)._cache["injective_basis"][v]:
                        val = f.zero
                        for x, coeff in fmap.entries[l][k].items():
                            d = A.mul_basis(x, c).get(b)
                            if d:
                                val = f.add(val, f.mul(coeff, d))
                        col.append(val)
                cols.append(col)
        blocks.append(Matrix.from_columns(f, cols, tgt.dims[v]))
    return ModuleMorphism(src, tgt, blocks, check=False)


@dataclass(frozen=True)
class ProjectivePresentation:
    """``P1 --f--> P0 --pi--> M -> 0`` with ``P0 = sum P(i_k)`` and ``P1 = sum P(j_l)``."""

    module: Module
    f: ProjectiveMap
    cover: ModuleMorphism  # P0 -> M
    syzygy: Module
    syzygy_inclusion: ModuleMorphism  # syzygy -> P0

    @property
    def p(self) -> tuple[int, ...]:
        return _counts(self.f.targets, self.module.algebra.n)

    @property
    def m(self) -> tuple[int, ...]:
        return _counts(self.f.sources, self.module.algebra.n)


def _counts(idx, n):
    out = [0] * n
    for i in idx:
        out[i] += 1
    return tuple(out)


def _cover(M: Module):
    """Projective cover ``sum P(i_k) -> M`` built from a basis of the top."""
    A = M.algebra
    f = M.field
    tops = top_vectors(M)
    P0 = direct_sum([projective_module(A, i) for i, _ in tops], A)
    blocks = []
    for v in range(A.n):
        cols = []
        for i, vec in tops:
            for b in projective_module(A, i)._cache["projective_basis"][v]:
                cols.append(M.basis_action(b).apply(vec))
        blocks.append(Matrix.from_columns(f, cols, M.dims[v]))
    return tops, P0, ModuleMorphism(P0, M, blocks, check=False)


def _split_by_summands(A, targets, v, vec):
    """Cut a vector of ``(sum P(i_k))`` at vertex ``v`` into element dicts per summand."""
    out, offset = [], 0
    for i in targets:
        basis = projective_module(A, i)._cache["projective_basis"][v]
        out.append({b: c for b, c in zip(basis, vec[offset:offset + len(basis)]) if c})
        offset += len(basis)
    return tuple(out)


def minimal_presentation(M: Module) -> ProjectivePresentation:
    if "presentation" in M._cache:
        return M._cache["presentation"]
    A = M.algebra
    tops, P0, pi = _cover(M)
    if P0.dim < M.dim or pi.rank() != M.dim:
        raise InvariantViolation("projective cover is not surjective")
    targets = tuple(i for i, _ in tops)
    omega, incl = kernel(pi)
    entries, sources = [], []
    for j, w in top_vectors(omega):
        full = incl.blocks[j].apply(w)
        sources.append(j)
        entries.append(_split_by_summands(A, targets, j, full))
    fmap = ProjectiveMap(A, tuple(sources), targets, tuple(entries))
    idem = set(A.idempotents)
    if any(b in idem for row in entries for e in row for b in e):
        raise InvariantViolation("presentation map is not radical; cover was not minimal")
    pres = ProjectivePresentation(M, fmap, pi, omega, incl)
    M._cache["presentation"] = pres
    return pres


def syzygy(M: Module) -> Module:
    return minimal_presentation(M).syzygy


def is_projective(M: Module) -> bool:
    return syzygy(M).dim == 0


def g_vector(M: Module) -> tuple[int, ...]:
    pres = minimal_presentation(M)
    return tuple(a - b for a, b in zip(pres.p, pres.m))


def tau(M: Module) -> Module:
    """``ker(nu f)`` for the minimal presentation ``f`` of ``M``."""
    if "tau" not in M._cache:
        pres = minimal_presentation(M)
        if not pres.f.sources:
            M._cache["tau"] = zero_module(M.algebra)
        else:
            M._cache["tau"] = kernel(nakayama_of_projective_map(pres.f))[0]
    return M._cache["tau"]


def is_tau_rigid(M: Module) -> bool:
    if "tau_rigid" not in M._cache:
        M._cache["tau_rigid"] = hom_dim(M, tau(M)) == 0
    return M._cache["tau_rigid"]


def ext1_dim(M: Module, N: Module) -> int:
    """``dim Ext^1(M, N)`` from ``0 -> Hom(M,N) -> Hom(P0,N) -> Hom(Omega M,N) -> Ext^1 -> 0``."""
    pres = minimal_presentation(M)
    hom_p0 = sum(N.dims[i] for i in pres.f.targets)
    return hom_dim(pres.syzygy, N) - hom_p0 + hom_dim(M, N)


def ext_dim(M: Module, N: Module, k: int = 1) -> int:
    if k < 1:
        raise InputError("Ext degree must be at least 1")
    X = M
    for _ in range(k - 1):
        X = syzygy(X)
        if X.dim == 0:
            return 0
    return ext1_dim(X, N)


def ext1_cocycles(M: Module, N: Module) -> list[ModuleMorphism]:
    """Maps ``Omega M -> N`` whose classes form a basis of ``Ext^1(M, N)``."""
    pres = minimal_presentation(M)
    omega, incl = pres.syzygy, pres.syzygy_inclusion
    if omega.dim == 0:
        return []
    f = M.field
    restricted = [phi @ incl for phi in hom_basis(pres.cover.source, N)]
    coc = hom_basis(omega, N)
    length = len(coc[0].flat()) if coc else 0
    from .linalg import rref_rows

    rows = [list(r.flat()) for r in restricted]
    _, piv = rref_rows(f, rows, length)
    chosen = []
    for phi in coc:
        trial = rows + [list(phi.flat())]
        _, p2 = rref_rows(f, trial, length)
        if len(p2) > len(piv):
            rows, piv = trial, p2
            chosen.append(phi)
    return chosen


@dataclass(frozen=True)
class ExceptionalCheck:
    ok: bool
    failure: str | None = None

    def __bool__(self):
        return self.ok


def is_classical_exceptional(seq: Sequence[Module], max_degree: int = 1) -> ExceptionalCheck:
    """Bricks with ``Hom(X_j, X_i) = 0`` for ``i < j`` and ``Ext^m(X_j, X_i) = 0`` for ``i <= j``.

    The Ext condition is only checked up to ``max_degree``.
    """
    if max_degree < 1:
        raise InputError("max_degree must be at least 1")
    for i, X in enumerate(seq):
        if not is_brick(X):
            return ExceptionalCheck(False, f"position {i}: endomorphism ring is not a division ring")
    for j, Xj in enumerate(seq):
        for i in range(j + 1):
            Xi = seq[i]
            if i < j and hom_dim(Xj, Xi):
                return ExceptionalCheck(False, f"Hom(X_{j}, X_{i}) != 0")
            for m in range(1, max_degree + 1):
                if ext_dim(Xj, Xi, m):
                    return ExceptionalCheck(False, f"Ext^{m}(X_{j}, X_{i}) != 0")
    return ExceptionalCheck(True)
