"""Modules over a :class:`~tauex.algebra.BasedAlgebra` and their morphisms.

A module is stored vertex by vertex: ``dims[v] = dim e_v M`` and one block
matrix per algebra generator ``g: s -> t`` of shape ``dims[t] x dims[s]``.
Vectors of the total space list the vertex blocks in vertex order.
Morphisms are tuples of per-vertex blocks, so every linear problem splits
along the vertex grading.

Subspaces that are stable under the idempotents ("graded subspaces") are
tuples, one entry per vertex, of reduced echelon rows.  That form is
canonical, so submodules compare by plain equality.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterable, Sequence

from . import config
from .algebra import BasedAlgebra
from .errors import AlgebraMismatchError, InputError, InvariantViolation, ResourceError
from .linalg import Coordinates, Matrix, kernel_rows, matmul_rows, rref_rows, span_rref

Graded = tuple  # tuple over vertices of tuple-of-rows


class Module:
    """A finite-dimensional left module, given by generator actions."""

    def __init__(self, algebra: BasedAlgebra, dims: Sequence[int], mats: Sequence, check: bool = True):
        self.algebra = algebra
        self.field = algebra.field
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.n or any(d < 0 for d in self.dims):
            raise InputError(f"dimension vector {dims} does not fit {algebra.n} vertices")
        if len(mats) != len(algebra.generators):
            raise InputError(f"expected {len(algebra.generators)} generator matrices, got {len(mats)}")
        fixed = []
        for g, m in enumerate(mats):
            s, t = algebra.gen_ends(g)
            if not isinstance(m, Matrix):
                m = Matrix(self.field, m, ncols=self.dims[s])
            if m.shape != (self.dims[t], self.dims[s]):
                raise InputError(
                    f"generator {algebra.labels[algebra.generators[g]]} needs a "
                    f"{self.dims[t]}x{self.dims[s]} matrix, got {m.shape[0]}x{m.shape[1]}")
            fixed.append(m)
        self.mats = tuple(fixed)
        self.dim = sum(self.dims)
        offs = [0]
        for d in self.dims:
            offs.append(offs[-1] + d)
        self.offsets = tuple(offs)
        self._cache = {}
        if check:
            bad = self.relation_failures()
            if bad:
                raise InputError(f"action matrices violate the algebra relations at {bad[0]}")

    # -- basic structure ---------------------------------------------------
    @property
    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    def is_zero(self) -> bool:
        return self.dim == 0

    def basis_action(self, b: int) -> Matrix:
        """Block of basis element ``b`` from vertex ``source(b)`` to ``target(b)``."""
        acts = self._cache.setdefault("acts", {})
        if b not in acts:
            A = self.algebra
            s = A.source[b]
            m = Matrix.identity(self.field, self.dims[s])
            for g in A.words[b]:
                m = self.mats[g] @ m
            acts[b] = m
        return acts[b]

    def relation_failures(self) -> list[str]:
        A = self.algebra
        f = self.field
        bad = []
        for i, j, prod in A.module_checks():
            lhs = self.basis_action(i) @ self.basis_action(j)
            rhs = Matrix.zeros(f, self.dims[A.target[i]], self.dims[A.source[j]])
            for k, c in prod.items():
                rhs = rhs + self.basis_action(k).scale(c)
            if lhs != rhs:
                bad.append(f"{A.labels[i]}*{A.labels[j]}")
        return bad

    def key(self) -> tuple:
        return (self.dims, tuple(m.rows for m in self.mats))

    def to_json(self) -> dict:
        fmt = self.field.fmt
        return {
            "dim_vector": list(self.dims),
            "matrices": [[[fmt(x) for x in row] for row in m.rows] for m in self.mats],
        }

    def __repr__(self):
        return f"Module(dims={self.dims})"

    def full_vector(self, v: int, block: Sequence) -> tuple:
        f = self.field
        out = [f.zero] * self.dim
        out[self.offsets[v]:self.offsets[v + 1]] = list(block)
        return tuple(out)


def module_from_json(A: BasedAlgebra, doc: dict) -> Module:
    dims = doc["dim_vector"]
    mats = []
    for g, rows in enumerate(doc["matrices"]):
        s, _ = A.gen_ends(g)
        mats.append(Matrix(A.field, rows, ncols=dims[s]))
    return Module(A, dims, mats)


def representation(A: BasedAlgebra, dims: Sequence[int], arrows: dict | None = None) -> Module:
    """Build a module of a path algebra from ``{arrow name: matrix rows}``; omitted arrows act by 0."""
    arrows = dict(arrows or {})
    if A.presentation is None:
        raise InputError("representation() needs an algebra built from a quiver")
    names = [a[0] for a in A.presentation.arrows]
    unknown = set(arrows) - set(names)
    if unknown:
        raise InputError(f"unknown arrows {sorted(unknown)}")
    mats = []
    for g, name in enumerate(names):
        s, t = A.gen_ends(g)
        if name in arrows:
            mats.append(Matrix(A.field, arrows[name], ncols=dims[s]))
        else:
            mats.append(Matrix.zeros(A.field, dims[t], dims[s]))
    return Module(A, dims, mats)


def zero_module(A: BasedAlgebra) -> Module:
    return Module(A, [0] * A.n, [Matrix.zeros(A.field, 0, 0) for _ in A.generators], check=False)


def simple_module(A: BasedAlgebra, i: int) -> Module:
    dims = [1 if v == i else 0 for v in range(A.n)]
    mats = []
    for g in range(len(A.generators)):
        s, t = A.gen_ends(g)
        mats.append(Matrix.zeros(A.field, dims[t], dims[s]))
    return Module(A, dims, mats, check=False)


def projective_module(A: BasedAlgebra, i: int) -> Module:
    """``P(i) = A e_i``, with basis the basis elements whose source is ``i``."""
    cache = A._cache.setdefault("projectives", {})
    if i in cache:
        return cache[i]
    f = A.field
    at = [[b for b in range(A.dim) if A.source[b] == i and A.target[b] == v] for v in range(A.n)]
    pos = {b: k for v in range(A.n) for k, b in enumerate(at[v])}
    mats = []
    for g, gb in enumerate(A.generators):
        s, t = A.gen_ends(g)
        rows = [[f.zero] * len(at[s]) for _ in at[t]]
        for c, b in enumerate(at[s]):
            for k, x in A.mul_basis(gb, b).items():
                rows[pos[k]][c] = f.add(rows[pos[k]][c], x)
        mats.append(Matrix._raw(f, rows, len(at[s])))
    M = Module(A, [len(x) for x in at], mats, check=False)
    M._cache["projective_basis"] = at
    cache[i] = M
    return M


def injective_module(A: BasedAlgebra, i: int) -> Module:
    """``I(i) = D(e_i A)``; the dual basis vector of ``b`` sits at vertex ``source(b)``."""
    cache = A._cache.setdefault("injectives", {})
    if i in cache:
        return cache[i]
    f = A.field
    at = [[b for b in range(A.dim) if A.target[b] == i and A.source[b] == v] for v in range(A.n)]
    pos = {b: k for v in range(A.n) for k, b in enumerate(at[v])}
    mats = []
    for g, gb in enumerate(A.generators):
        s, t = A.gen_ends(g)
        rows = [[f.zero] * len(at[s]) for _ in at[t]]
        # (g . b*)(x) = b*(x * g) for x with source t
        for x in at[t]:
            for k, c in A.mul_basis(x, gb).items():
                if k in pos and A.source[k] == s:
                    rows[pos[x]][pos[k]] = f.add(rows[pos[x]][pos[k]], c)
        mats.append(Matrix._raw(f, rows, len(at[s])))
    M = Module(A, [len(x) for x in at], mats, check=False)
    M._cache["injective_basis"] = at
    cache[i] = M
    return M


def direct_sum(modules: Sequence[Module], algebra: BasedAlgebra | None = None) -> Module:
    """Direct sum; within each vertex the summands' blocks are concatenated in order."""
    if not modules:
        if algebra is None:
            raise InputError("direct sum of nothing needs an algebra")
        return zero_module(algebra)
    A = modules[0].algebra
    for M in modules:
        _same_algebra(A, M.algebra)
    f = A.field
    dims = [sum(M.dims[v] for M in modules) for v in range(A.n)]
    mats = []
    for g in range(len(A.generators)):
        s, t = A.gen_ends(g)
        rows = [[f.zero] * dims[s] for _ in range(dims[t])]
        r0 = c0 = 0
        for M in modules:
            m = M.mats[g]
            for r in range(m.nrows):
                rows[r0 + r][c0:c0 + m.ncols] = list(m.rows[r])
            r0 += M.dims[t]
            c0 += M.dims[s]
        mats.append(Matrix._raw(f, rows, dims[s]))
    return Module(A, dims, mats, check=False)


def summand_maps(modules: Sequence[Module]) -> tuple[list, list]:
    """Canonical inclusions and projections for :func:`direct_sum` of ``modules``."""
    total = direct_sum(modules)
    f = total.field
    incl, proj = [], []
    start = [0] * total.algebra.n
    for M in modules:
        iblocks, pblocks = [], []
        for v in range(total.algebra.n):
            d, D = M.dims[v], total.dims[v]
            rows = [[f.one if r == start[v] + c else f.zero for c in range(d)] for r in range(D)]
            inc = Matrix._raw(f, rows, d)
            iblocks.append(inc)
            pblocks.append(inc.T())
            start[v] += d
        incl.append(ModuleMorphism(M, total, iblocks, check=False))
        proj.append(ModuleMorphism(total, M, pblocks, check=False))
    return incl, proj


def _same_algebra(A, B):
    if A is not B:
        raise AlgebraMismatchError("modules live over different algebras")


# ---------------------------------------------------------------------------
# morphisms


class ModuleMorphism:
    """A module homomorphism stored as per-vertex blocks ``target.dims[v] x source.dims[v]``."""

    def __init__(self, source: Module, target: Module, blocks: Sequence[Matrix], check: bool = True):
        _same_algebra(source.algebra, target.algebra)
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)
        f = source.field
        if len(self.blocks) != source.algebra.n:
            raise InputError("one block per vertex is required")
        for v, b in enumerate(self.blocks):
            if b.shape != (target.dims[v], source.dims[v]):
                raise InputError("morphism block has the wrong shape")
        if check and not self.intertwines():
            raise InputError("matrix does not intertwine the generator actions")

    @property
    def field(self):
        return self.source.field

    @classmethod
    def identity(cls, M: Module) -> "ModuleMorphism":
        return cls(M, M, [Matrix.identity(M.field, d) for d in M.dims], check=False)

    @classmethod
    def zero(cls, M: Module, N: Module) -> "ModuleMorphism":
        return cls(M, N, [Matrix.zeros(M.field, N.dims[v], M.dims[v]) for v in range(M.algebra.n)],
                   check=False)

    def intertwines(self) -> bool:
        A = self.source.algebra
        for g in range(len(A.generators)):
            s, t = A.gen_ends(g)
            if self.target.mats[g] @ self.blocks[s] != self.blocks[t] @ self.source.mats[g]:
                return False
        return True

    def __matmul__(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """Composition ``self o other``."""
        if other.target is not self.source and other.target.key() != self.source.key():
            raise InputError("morphisms are not composable")
        return ModuleMorphism(other.source, self.target,
                              [a @ b for a, b in zip(self.blocks, other.blocks)], check=False)

    def __add__(self, other):
        return ModuleMorphism(self.source, self.target,
                              [a + b for a, b in zip(self.blocks, other.blocks)], check=False)

    def __sub__(self, other):
        return ModuleMorphism(self.source, self.target,
                              [a - b for a, b in zip(self.blocks, other.blocks)], check=False)

    def scale(self, c) -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target, [b.scale(c) for b in self.blocks], check=False)

    def flat(self) -> tuple:
        return tuple(x for b in self.blocks for x in b.flat())

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def rank(self) -> int:
        return sum(b.rank() for b in self.blocks)

    def is_invertible(self) -> bool:
        return self.source.dims == self.target.dims and self.rank() == self.source.dim

    def image(self) -> Graded:
        f = self.field
        return tuple(span_rref(f, b.columns(), b.nrows) if b.ncols else () for b in self.blocks)

    def kernel(self) -> Graded:
        f = self.field
        out = []
        for b in self.blocks:
            out.append(span_rref(f, kernel_rows(f, b.rows, b.ncols), b.ncols) if b.ncols else ())
        return tuple(out)

    def power(self, k: int) -> "ModuleMorphism":
        return ModuleMorphism(self.source, self.target, [b.power(k) for b in self.blocks], check=False)

    def __repr__(self):
        return f"ModuleMorphism({self.source.dims} -> {self.target.dims}, rank={self.rank()})"


def combination(basis: Sequence[ModuleMorphism], coeffs: Sequence, source=None, target=None):
    f = (basis[0].field if basis else source.field)
    if not basis:
        return ModuleMorphism.zero(source, target)
    blocks = []
    for v in range(len(basis[0].blocks)):
        acc = None
        for c, phi in zip(coeffs, basis):
            if not c:
                continue
            term = phi.blocks[v].scale(c)
            acc = term if acc is None else acc + term
        if acc is None:
            acc = Matrix.zeros(f, basis[0].blocks[v].nrows, basis[0].blocks[v].ncols)
        blocks.append(acc)
    return ModuleMorphism(basis[0].source, basis[0].target, blocks, check=False)


# ---------------------------------------------------------------------------
# Hom spaces


def _hom_system(M: Module, N: Module):
    A = M.algebra
    f = M.field
    offs = [0]
    for v in range(A.n):
        offs.append(offs[-1] + N.dims[v] * M.dims[v])
    nunk = offs[-1]
    rows = []
    for g in range(len(A.generators)):
        s, t = A.gen_ends(g)
        Mg, Ng = M.mats[g].rows, N.mats[g].rows
        ds_m, dt_m = M.dims[s], M.dims[t]
        dt_n, ds_n = N.dims[t], N.dims[s]
        for r in range(dt_n):
            for c in range(ds_m):
                row = [0] * nunk
                # N_g phi_s
                for k in range(ds_n):
                    x = Ng[r][k]
                    if x:
                        idx = offs[s] + k * ds_m + c
                        row[idx] = row[idx] + x
                # - phi_t M_g
                for k in range(dt_m):
                    x = Mg[k][c]
                    if x:
                        idx = offs[t] + r * dt_m + k
                        row[idx] = row[idx] - x
                if any(row):
                    rows.append(row)
    if f.kind == "prime":
        p = f.p
        rows = [[x % p for x in row] for row in rows]
    return rows, nunk, offs


def hom_basis(M: Module, N: Module) -> list[ModuleMorphism]:
    """A basis of ``Hom(M, N)`` from the intertwining equations."""
    _same_algebra(M.algebra, N.algebra)
    A = M.algebra
    f = M.field
    rows, nunk, offs = _hom_system(M, N)
    if nunk == 0:
        return []
    basis = []
    for vec in kernel_rows(f, rows, nunk):
        blocks = []
        for v in range(A.n):
            seg = vec[offs[v]:offs[v + 1]]
            dm, dn = M.dims[v], N.dims[v]
            blocks.append(Matrix._raw(f, [seg[r * dm:(r + 1) * dm] for r in range(dn)], dm))
        basis.append(ModuleMorphism(M, N, blocks, check=False))
    return basis


def hom_dim(M: Module, N: Module) -> int:
    _same_algebra(M.algebra, N.algebra)
    rows, nunk, _ = _hom_system(M, N)
    if nunk == 0:
        return 0
    return nunk - len(rref_rows(M.field, rows, nunk)[1])


def end_basis(M: Module) -> list[ModuleMorphism]:
    if "end" not in M._cache:
        M._cache["end"] = hom_basis(M, M)
    return M._cache["end"]


# ---------------------------------------------------------------------------
# graded subspaces, submodules and quotients


def zero_space(M: Module) -> Graded:
    return tuple(() for _ in M.dims)


def whole_space(M: Module) -> Graded:
    f = M.field
    return tuple(tuple(tuple(f.one if i == j else f.zero for j in range(d)) for i in range(d))
                 for d in M.dims)


def space_dims(U: Graded) -> tuple[int, ...]:
    return tuple(len(x) for x in U)


def space_sum(M: Module, *spaces: Graded) -> Graded:
    f = M.field
    return tuple(span_rref(f, [r for U in spaces for r in U[v]], M.dims[v]) for v in range(len(M.dims)))


def space_intersection(M: Module, U: Graded, W: Graded) -> Graded:
    f = M.field
    out = []
    for v, d in enumerate(M.dims):
        a, b = list(U[v]), list(W[v])
        if not a or not b:
            out.append(())
            continue
        # x in U cap W  <=>  sum(s_i a_i) = sum(t_j b_j)
        cols = a + [tuple(f.neg(x) for x in r) for r in b]
        system = [list(row) for row in zip(*cols)]
        sols = kernel_rows(f, system, len(cols))
        vecs = []
        for s in sols:
            vec = [f.zero] * d
            for c, r in zip(s[:len(a)], a):
                if c:
                    vec = [f.add(x, f.mul(c, y)) for x, y in zip(vec, r)]
            vecs.append(vec)
        out.append(span_rref(f, vecs, d))
    return tuple(out)


def generated_submodule(M: Module, vectors: Iterable[tuple[int, Sequence]]) -> Graded:
    """Submodule generated by homogeneous vectors given as ``(vertex, block)`` pairs."""
    A = M.algebra
    gens = [[] for _ in M.dims]
    for v, vec in vectors:
        for b in range(A.dim):
            if A.source[b] == v:
                gens[A.target[b]].append(M.basis_action(b).apply(vec))
    f = M.field
    return tuple(span_rref(f, gens[v], M.dims[v]) for v in range(A.n))


def radical_space(M: Module) -> Graded:
    """``rad(A) M``: the sum of the images of the non-idempotent generators."""
    if "rad" in M._cache:
        return M._cache["rad"]
    A = M.algebra
    f = M.field
    cols = [[] for _ in M.dims]
    for g in range(len(A.generators)):
        _, t = A.gen_ends(g)
        cols[t].extend(M.mats[g].columns())
    out = tuple(span_rref(f, cols[v], M.dims[v]) for v in range(A.n))
    M._cache["rad"] = out
    return out


def is_submodule_space(M: Module, U: Graded) -> bool:
    A = M.algebra
    f = M.field
    for g in range(len(A.generators)):
        s, t = A.gen_ends(g)
        for vec in U[s]:
            img = M.mats[g].apply(vec)
            if len(span_rref(f, list(U[t]) + [img], M.dims[t])) != len(U[t]):
                return False
    return True


def submodule(M: Module, U: Graded) -> tuple[Module, ModuleMorphism]:
    """The submodule on the graded subspace ``U`` with the rows of ``U`` as basis."""
    A = M.algebra
    f = M.field
    coords = [Coordinates(f, U[v], M.dims[v]) for v in range(A.n)]
    mats = []
    for g in range(len(A.generators)):
        s, t = A.gen_ends(g)
        cols = [coords[t].coords(M.mats[g].apply(vec)) for vec in U[s]]
        mats.append(Matrix.from_columns(f, cols, len(U[t])))
    sub = Module(A, [len(x) for x in U], mats, check=False)
    incl = ModuleMorphism(sub, M, [Matrix.from_columns(f, list(U[v]), M.dims[v]) for v in range(A.n)],
                          check=False)
    return sub, incl


def _complement(f, rows: Sequence[Sequence], d: int) -> list[tuple]:
    """Standard basis vectors completing the span of ``rows`` (pivot-free positions)."""
    _, pivots = rref_rows(f, list(rows), d)
    pivset = set(pivots)
    return [tuple(f.one if j == i else f.zero for j in range(d)) for i in range(d) if i not in pivset]


def quotient(M: Module, U: Graded) -> tuple[Module, ModuleMorphism]:
    """``M / U`` with basis the standard vectors off the pivots of ``U``."""
    A = M.algebra
    f = M.field
    comps, projs = [], []
    for v in range(A.n):
        comp = _complement(f, U[v], M.dims[v])
        comps.append(comp)
        full = list(U[v]) + comp
        if full:
            B = Matrix.from_columns(f, full, M.dims[v]).inverse()
            projs.append(B.block(len(U[v]), M.dims[v], 0, M.dims[v]))
        else:
            projs.append(Matrix.zeros(f, 0, 0))
    mats = []
    for g in range(len(A.generators)):
        s, t = A.gen_ends(g)
        cols = [projs[t].apply(M.mats[g].apply(c)) for c in comps[s]]
        mats.append(Matrix.from_columns(f, cols, len(comps[t])))
    Q = Module(A, [len(c) for c in comps], mats, check=False)
    return Q, ModuleMorphism(M, Q, projs, check=False)


def cokernel(phi: ModuleMorphism) -> tuple[Module, ModuleMorphism]:
    return quotient(phi.target, phi.image())


def kernel(phi: ModuleMorphism) -> tuple[Module, ModuleMorphism]:
    return submodule(phi.source, phi.kernel())


def top_vectors(M: Module) -> list[tuple[int, tuple]]:
    """Homogeneous vectors whose classes form a basis of ``M / rad M`` (deterministic choice)."""
    rad = radical_space(M)
    out = []
    for v in range(M.algebra.n):
        for c in _complement(M.field, rad[v], M.dims[v]):
            out.append((v, c))
    return out


def _projective_points(f, d: int):
    """Nonzero vectors of ``f^d`` with leading nonzero entry 1."""
    elems = list(f.elements())
    for lead in range(d):
        for rest in itertools.product(elems, repeat=d - lead - 1):
            yield tuple([f.zero] * lead + [f.one] + list(rest))


def submodule_spaces(M: Module, cap: int | None = None) -> list[Graded]:
    """Every submodule of ``M`` once, as the lattice closure of cyclic submodules under sums."""
    f = M.field
    if not f.is_finite:
        raise ResourceError("submodule enumeration needs a finite field")
    if "subs" in M._cache:
        return M._cache["subs"]
    cap = cap or config.current().max_subspaces
    cyclic = []
    seen_cyclic = set()
    for v, d in enumerate(M.dims):
        for vec in _projective_points(f, d):
            C = generated_submodule(M, [(v, vec)])
            if C not in seen_cyclic:
                seen_cyclic.add(C)
                cyclic.append(C)
    zero = zero_space(M)
    found = {zero: None}
    order = [zero]
    frontier = [zero]
    while frontier:
        nxt = []
        for U in frontier:
            for C in cyclic:
                W = space_sum(M, U, C)
                if W not in found:
                    found[W] = None
                    order.append(W)
                    nxt.append(W)
                    if len(order) > cap:
                        raise ResourceError(f"more than {cap} submodules", required=len(order))
        frontier = nxt
    order.sort(key=lambda U: (sum(space_dims(U)), U))
    M._cache["subs"] = order
    return order


def submodules(M: Module, cap: int | None = None) -> list[tuple[Module, ModuleMorphism]]:
    return [submodule(M, U) for U in submodule_spaces(M, cap)]


def sum_of_images(M: Module, maps: Iterable[ModuleMorphism]) -> Graded:
    f = M.field
    cols = [[] for _ in M.dims]
    for phi in maps:
        for v, b in enumerate(phi.blocks):
            cols[v].extend(b.columns())
    return tuple(span_rref(f, cols[v], M.dims[v]) for v in range(M.algebra.n))


def is_in_gen(M: Module, X: Module) -> bool:
    """``M`` is a quotient of some ``X^r``: the trace of ``X`` in ``M`` is all of ``M``."""
    _same_algebra(M.algebra, X.algebra)
    if M.dim == 0:
        return True
    return space_dims(sum_of_images(M, hom_basis(X, M))) == M.dims


# ---------------------------------------------------------------------------
# endomorphism analysis: Fitting splitting, locality, radical


def _rng(tag: str) -> random.Random:
    return random.Random(f"{config.current().seed}:{tag}")


def _fitting(phi: ModuleMorphism):
    """'nil', 'inv', or the pair (ker phi^N, im phi^N) when phi splits the module."""
    M = phi.source
    big = phi.power(max(1, M.dim))
    r = big.rank()
    if r == 0:
        return "nil"
    if r == M.dim:
        return "inv"
    return big.kernel(), big.image()


def _shift_values(f):
    if f.is_finite:
        return [x for x in f.elements() if x][:16]
    return [Fraction(x) for x in (1, -1, 2, -2, 3)]


def _candidates(M: Module, basis: Sequence[ModuleMorphism]):
    f = M.field
    ident = ModuleMorphism.identity(M)
    shifts = _shift_values(f)
    for phi in basis:
        yield phi
    for phi in basis:
        for lam in shifts:
            yield phi - ident.scale(lam)
    rng = _rng(f"split:{M.key()}")
    for _ in range(config.current().random_trials):
        coeffs = [f.random(rng) for _ in basis]
        phi = combination(basis, coeffs)
        yield phi
        yield phi - ident.scale(shifts[rng.randrange(len(shifts))])


def _trace(phi: ModuleMorphism):
    f = phi.field
    t = f.zero
    for b in phi.blocks:
        for i in range(b.nrows):
            t = f.add(t, b.rows[i][i])
    return t


def _exhaustive(basis, budget):
    f = basis[0].field
    total = f.order ** len(basis)
    if total > budget:
        raise ResourceError(f"exhaustive search over {total} elements exceeds budget {budget}",
                            required=total)
    elems = list(f.elements())
    for coeffs in itertools.product(elems, repeat=len(basis)):
        yield coeffs, combination(basis, coeffs)


def _find_split(M: Module):
    """A Fitting splitting ``(K, I)`` of ``M``, or ``None`` once ``End(M)`` is certified local."""
    if "split_witness" in M._cache:
        return M._cache["split_witness"]
    basis = end_basis(M)
    result = None
    if len(basis) > 1:
        for phi in _candidates(M, basis):
            kind = _fitting(phi)
            if not isinstance(kind, str):
                result = kind
                break
        else:
            result = _certify_local(M, basis)
    M._cache["split_witness"] = result
    return result


def _certify_local(M: Module, basis):
    f = M.field
    if f.is_finite:
        for _, phi in _exhaustive(basis, config.current().hom_budget):
            kind = _fitting(phi)
            if not isinstance(kind, str):
                return kind
        return None
    # characteristic zero: Dickson's trace-form radical
    gram = [[_trace(a @ b) for b in basis] for a in basis]
    rank = len(rref_rows(f, gram, len(basis))[1])
    if rank == 1:
        return None
    raise ResourceError("cannot certify indecomposability over QQ: End/rad has dimension "
                        f"{rank} and no splitting endomorphism was found")


def is_indecomposable(M: Module) -> bool:
    return M.dim > 0 and _find_split(M) is None


def split(M: Module) -> list[tuple[Module, ModuleMorphism, ModuleMorphism]]:
    """Krull-Schmidt splitting: ``(summand, inclusion, projection)`` triples.

    The inclusions and projections satisfy ``proj_a o incl_b = delta_ab`` and
    ``sum incl_a o proj_a = id``.
    """
    if "split" in M._cache:
        return M._cache["split"]
    if M.dim == 0:
        return []
    witness = _find_split(M)
    if witness is None:
        out = [(M, ModuleMorphism.identity(M), ModuleMorphism.identity(M))]
    else:
        f = M.field
        K, I = witness
        MK, iK = submodule(M, K)
        MI, iI = submodule(M, I)
        pK, pI = [], []
        for v in range(M.algebra.n):
            full = list(K[v]) + list(I[v])
            if full:
                inv = Matrix.from_columns(f, full, M.dims[v]).inverse()
                pK.append(inv.block(0, len(K[v]), 0, M.dims[v]))
                pI.append(inv.block(len(K[v]), M.dims[v], 0, M.dims[v]))
            else:
                pK.append(Matrix.zeros(f, 0, 0))
                pI.append(Matrix.zeros(f, 0, 0))
        projK = ModuleMorphism(M, MK, pK, check=False)
        projI = ModuleMorphism(M, MI, pI, check=False)
        out = []
        for sub, inc, pr in ((MK, iK, projK), (MI, iI, projI)):
            for S, i2, p2 in split(sub):
                out.append((S, inc @ i2, p2 @ pr))
    M._cache["split"] = out
    return out


def decompose(M: Module) -> list[tuple[Module, int]]:
    """Indecomposable summands up to isomorphism, with multiplicities."""
    groups: list[list] = []
    for S, _, _ in split(M):
        for grp in groups:
            if are_isomorphic(grp[0], S):
                grp[1] += 1
                break
        else:
            groups.append([S, 1])
    return [(S, m) for S, m in groups]


def rk(M: Module) -> int:
    return len(split(M))


def is_basic(M: Module) -> bool:
    return all(m == 1 for _, m in decompose(M))


def _nilpotent(phi: ModuleMorphism) -> bool:
    return phi.power(max(1, phi.source.dim)).is_zero()


def _span_morphisms(maps: Sequence[ModuleMorphism], M: Module, N: Module) -> list[ModuleMorphism]:
    if not maps:
        return []
    f = M.field
    length = len(maps[0].flat())
    rows, _ = rref_rows(f, [list(m.flat()) for m in maps], length)
    out = []
    for vec in rows:
        blocks, pos = [], 0
        for v in range(M.algebra.n):
            dm, dn = M.dims[v], N.dims[v]
            seg = vec[pos:pos + dm * dn]
            blocks.append(Matrix._raw(f, [seg[r * dm:(r + 1) * dm] for r in range(dn)], dm))
            pos += dm * dn
        out.append(ModuleMorphism(M, N, blocks, check=False))
    return out


def _local_radical(M: Module) -> list[ModuleMorphism]:
    basis = end_basis(M)
    f = M.field
    if len(basis) <= 1:
        return []
    ident = ModuleMorphism.identity(M)
    shifted = []
    for phi in basis:
        if f.is_finite:
            lams = [lam for lam in f.elements() if _nilpotent(phi - ident.scale(lam))]
        else:
            lam = _trace(phi) / M.dim
            lams = [lam] if _nilpotent(phi - ident.scale(lam)) else []
        if not lams:
            break
        shifted.append(phi - ident.scale(lams[0]))
    else:
        rad = _span_morphisms(shifted, M, M)
        if len(rad) != len(basis) - 1:
            raise InvariantViolation("split-local radical has the wrong dimension")
        return rad
    # residue field larger than the ground field
    if f.is_finite:
        nil = [phi for _, phi in _exhaustive(basis, config.current().hom_budget) if _nilpotent(phi)]
        return _span_morphisms(nil, M, M)
    gram = [[_trace(a @ b) for b in basis] for a in basis]
    coeffs = kernel_rows(f, gram, len(basis))
    return _span_morphisms([combination(basis, c) for c in coeffs], M, M)


def find_isomorphism(M: Module, N: Module) -> ModuleMorphism | None:
    """An invertible morphism ``M -> N`` or ``None``; exact on finite fields within budget."""
    _same_algebra(M.algebra, N.algebra)
    if M.dims != N.dims:
        return None
    if M.dim == 0:
        return ModuleMorphism.zero(M, N)
    if M.key() == N.key():
        return ModuleMorphism(M, N, ModuleMorphism.identity(M).blocks, check=False)
    basis = hom_basis(M, N)
    if not basis:
        return None
    h = len(basis)
    if h != len(end_basis(M)) or h != len(end_basis(N)):
        return None
    for phi in basis:
        if phi.is_invertible():
            return phi
    f = M.field
    rng = _rng(f"iso:{M.key()}:{N.key()}")
    for _ in range(config.current().random_trials):
        phi = combination(basis, [f.random(rng) for _ in basis])
        if phi.is_invertible():
            return phi
    budget = config.current().hom_budget
    if f.is_finite:
        for _, phi in _exhaustive(basis, budget):
            if phi.is_invertible():
                return phi
        return None
    # det(sum t_i phi_i) has degree <= dim M; a grid with dim M + 1 values per axis decides it
    side = M.dim + 1
    if side ** h > budget:
        raise ResourceError(f"isomorphism grid {side}^{h} exceeds budget {budget}", required=side ** h)
    for coeffs in itertools.product(range(side), repeat=h):
        phi = combination(basis, [Fraction(c) for c in coeffs])
        if phi.is_invertible():
            return phi
    return None


def are_isomorphic(M: Module, N: Module) -> bool:
    return find_isomorphism(M, N) is not None


def end_radical(M: Module) -> list[ModuleMorphism]:
    """Basis of the Jacobson radical of ``End(M)``."""
    if "end_rad" in M._cache:
        return M._cache["end_rad"]
    pieces = split(M)
    if len(pieces) <= 1:
        out = _local_radical(M)
    else:
        maps = []
        for a, (Sa, ia, pa) in enumerate(pieces):
            for b, (Sb, ib, pb) in enumerate(pieces):
                iso = find_isomorphism(Sb, Sa)
                if iso is None:
                    local = hom_basis(Sb, Sa)
                else:
                    local = [iso @ r for r in _local_radical(Sb)]
                maps.extend(ia @ phi @ pb for phi in local)
        out = _span_morphisms(maps, M, M)
    M._cache["end_rad"] = out
    return out


def is_brick(M: Module) -> bool:
    if M.dim == 0:
        return False
    if len(end_basis(M)) == 1:
        return True
    return is_indecomposable(M) and not end_radical(M)


def beta(M: Module) -> Module:
    """``M / rad_End(M) M``: the quotient by the images of all radical endomorphisms."""
    if not is_indecomposable(M):
        raise InputError("beta is defined on indecomposable modules only")
    if "beta" not in M._cache:
        U = sum_of_images(M, end_radical(M))
        M._cache["beta"] = quotient(M, U)[0]
    return M._cache["beta"]
