"""Slow, independent reference computations used only by the tests.

Nothing here reuses the package's Hom solver, Fitting search or
rank-normal-form reduction: everything is plain enumeration over F_q.
"""
from __future__ import annotations

import itertools

from tauex.linalg import Matrix, enumerate_subspaces, rref_rows
from tauex.modules import Module


def all_matrices(f, nrows, ncols):
    for vals in itertools.product(list(f.elements()), repeat=nrows * ncols):
        yield Matrix._raw(f, [vals[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)


def brute_homs(M: Module, N: Module):
    """Every intertwiner M -> N as a tuple of vertex blocks."""
    A = M.algebra
    f = M.field
    spaces = [list(all_matrices(f, N.dims[v], M.dims[v])) for v in range(A.n)]
    for blocks in itertools.product(*spaces):
        ok = True
        for g in range(len(A.generators)):
            s, t = A.gen_ends(g)
            if N.mats[g] @ blocks[s] != blocks[t] @ M.mats[g]:
                ok = False
                break
        if ok:
            yield blocks


def is_idempotent(blocks):
    return all(b @ b == b for b in blocks)


def brute_indecomposable(M: Module) -> bool:
    if M.dim == 0:
        return False
    ids = [Matrix.identity(M.field, d) for d in M.dims]
    zeros = [Matrix.zeros(M.field, d, d) for d in M.dims]
    for e in brute_homs(M, M):
        if is_idempotent(e) and list(e) != ids and list(e) != zeros:
            return False
    return True


def brute_isomorphic(M: Module, N: Module) -> bool:
    if M.dims != N.dims:
        return False
    for blocks in brute_homs(M, N):
        if all(b.rank() == b.nrows for b in blocks):
            return True
    return False


def brute_indecomposables(A, bound):
    """Isomorphism classes of indecomposables by exhausting every generator matrix."""
    f = A.field
    found = []
    for dims in itertools.product(*(range(b + 1) for b in bound)):
        if not any(dims):
            continue
        choices = []
        for g in range(len(A.generators)):
            s, t = A.gen_ends(g)
            choices.append(list(all_matrices(f, dims[t], dims[s])))
        for mats in itertools.product(*choices):
            M = Module(A, dims, mats, check=False)
            if M.relation_failures() or not brute_indecomposable(M):
                continue
            if not any(brute_isomorphic(M, N) for N in found):
                found.append(M)
    return found


def _total(M, rows_by_vertex):
    vecs = []
    for v, rows in enumerate(rows_by_vertex):
        for r in rows:
            vecs.append(M.full_vector(v, r))
    return tuple(tuple(r) for r in rref_rows(M.field, vecs, M.dim)[0])


def brute_submodules(M: Module):
    """Submodules as total-space echelon forms: all subspaces, filtered."""
    f = M.field
    out = set()
    for S in enumerate_subspaces(M.dim, f):
        rows = [list(r) for r in S.rows]
        # graded: each row's vertex components lie in the subspace
        pieces = []
        for r in rows:
            for v in range(M.algebra.n):
                part = [f.zero] * M.dim
                part[M.offsets[v]:M.offsets[v + 1]] = r[M.offsets[v]:M.offsets[v + 1]]
                pieces.append(part)
        if len(rref_rows(f, rows + pieces, M.dim)[0]) != len(rows):
            continue
        images = []
        for r in rows:
            for g in range(len(M.algebra.generators)):
                s, t = M.algebra.gen_ends(g)
                img = M.mats[g].apply(r[M.offsets[s]:M.offsets[s + 1]])
                images.append(list(M.full_vector(t, img)))
        if len(rref_rows(f, rows + images, M.dim)[0]) == len(rows):
            out.add(tuple(tuple(r) for r in S.rows))
    return out


def graded_to_total(M, U):
    return _total(M, U)
