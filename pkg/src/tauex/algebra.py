"""Finite-dimensional elementary algebras given by a quiver with relations.

Conventions
-----------
A path is written in traversal order: ``["a", "b"]`` means *a first, then b*.
In the algebra this path is the product ``b * a`` (composition order), so a
left module represents it by ``M_b @ M_a``.  With this choice ``P(i) = A e_i``
is spanned by the paths starting at ``i`` and ``dim e_i M`` is
``dim Hom(P(i), M)``.

Every basis element of a :class:`BasedAlgebra` is homogeneous: it lies in
``e_t A e_s`` for a single source ``s`` and target ``t``.  Basis elements
that are not vertex idempotents span the Jacobson radical.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

from .errors import (
    AdmissibilityError,
    DimensionNotCertifiedError,
    InputError,
    InvariantViolation,
    NonParallelRelationError,
    ResourceError,
    SchemaError,
)
from .linalg import field_from_json, rref_rows

MAX_PATHS = 20000


@dataclass(frozen=True)
class QuiverPresentation:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, int, int], ...]  # (name, source index, target index)
    relations: tuple[tuple[tuple[Any, tuple[int, ...]], ...], ...]  # ((coeff, arrow indices), ...)
    nilpotency_bound: int
    field: Any
    name: str = "algebra"
    universe: dict | None = None

    @property
    def n(self) -> int:
        return len(self.vertices)

    def path_ends(self, path: Sequence[int]) -> tuple[int, int]:
        return self.arrows[path[0]][1], self.arrows[path[-1]][2]


def _require(cond, message, exc=SchemaError):
    if not cond:
        raise exc(message)


def parse_quiver_input(document) -> QuiverPresentation:
    """Validate a quiver-with-relations document (JSON text, bytes or a dict)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    _require(isinstance(document, dict), "top level must be an object")
    for key in ("field", "vertices", "arrows", "relations"):
        _require(key in document, f"missing required key {key!r}")
    allowed = {"field", "vertices", "arrows", "relations", "nilpotency_bound", "name", "universe"}
    extra = set(document) - allowed
    _require(not extra, f"unknown keys {sorted(extra)}")

    try:
        field = field_from_json(document["field"])
    except InputError as exc:
        raise SchemaError(str(exc)) from exc

    vertices = document["vertices"]
    _require(isinstance(vertices, list) and all(isinstance(v, str) for v in vertices),
             "'vertices' must be a list of strings")
    _require(len(set(vertices)) == len(vertices), "duplicate vertex labels")
    vindex = {v: i for i, v in enumerate(vertices)}

    arrows = []
    names = {}
    _require(isinstance(document["arrows"], list), "'arrows' must be a list")
    for a in document["arrows"]:
        _require(isinstance(a, dict) and {"name", "from", "to"} <= set(a),
                 "each arrow needs 'name', 'from', 'to'")
        _require(isinstance(a["name"], str), "arrow name must be a string")
        _require(a["name"] not in names, f"duplicate arrow name {a['name']!r}")
        _require(a["from"] in vindex and a["to"] in vindex,
                 f"arrow {a['name']!r} has an undeclared endpoint")
        names[a["name"]] = len(arrows)
        arrows.append((a["name"], vindex[a["from"]], vindex[a["to"]]))

    relations = []
    _require(isinstance(document["relations"], list), "'relations' must be a list")
    for rel in document["relations"]:
        _require(isinstance(rel, list) and rel, "each relation must be a non-empty list of terms")
        terms = []
        ends = None
        for term in rel:
            _require(isinstance(term, dict) and {"coeff", "path"} <= set(term),
                     "relation terms need 'coeff' and 'path'")
            coeff = term["coeff"]
            _require(isinstance(coeff, (str, int)), "coefficient must be a string")
            path = term["path"]
            _require(isinstance(path, list) and all(isinstance(x, str) for x in path),
                     "path must be a list of arrow names")
            _require(all(x in names for x in path), f"unknown arrow in path {path}")
            if len(path) < 2:
                raise AdmissibilityError(f"relation term {path} has length {len(path)} < 2")
            idx = tuple(names[x] for x in path)
            for u, v in zip(idx, idx[1:]):
                _require(arrows[u][2] == arrows[v][1], f"path {path} is not composable")
            term_ends = (arrows[idx[0]][1], arrows[idx[-1]][2])
            if ends is None:
                ends = term_ends
            elif ends != term_ends:
                raise NonParallelRelationError(f"relation terms are not parallel: {rel}")
            terms.append((field(str(coeff)), idx))
        relations.append(tuple(terms))

    bound = document.get("nilpotency_bound")
    if bound is None:
        bound = max(1, 10 * len(arrows))
    _require(isinstance(bound, int) and bound >= 1, "'nilpotency_bound' must be a positive int")

    universe = document.get("universe")
    if universe is not None:
        _require(isinstance(universe, dict) and "bound" in universe,
                 "'universe' must be an object with a 'bound'")
    return QuiverPresentation(
        vertices=tuple(vertices),
        arrows=tuple(arrows),
        relations=tuple(relations),
        nilpotency_bound=bound,
        field=field,
        name=str(document.get("name", "algebra")),
        universe=universe,
    )


@dataclass(eq=False)
class BasedAlgebra:
    """A basic algebra with a homogeneous basis and sparse structure constants.

    ``table[(i, j)]`` is the product ``b_i * b_j`` (``b_i`` after ``b_j``) as a
    dict ``{k: coeff}``; missing keys mean zero.  ``words[b]`` lists the
    generator positions whose action, applied left to right, gives ``b``.
    """

    field: Any
    n: int
    labels: tuple[str, ...]
    source: tuple[int, ...]
    target: tuple[int, ...]
    idempotents: tuple[int, ...]
    generators: tuple[int, ...]
    words: tuple[tuple[int, ...], ...]
    table: dict
    name: str = "algebra"
    vertex_labels: tuple[str, ...] = ()
    presentation: QuiverPresentation | None = None
    _cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def radical(self) -> tuple[int, ...]:
        idem = set(self.idempotents)
        return tuple(b for b in range(self.dim) if b not in idem)

    def gen_ends(self, g: int) -> tuple[int, int]:
        b = self.generators[g]
        return self.source[b], self.target[b]

    def basis_vector(self, k: int) -> tuple:
        f = self.field
        return tuple(f.one if i == k else f.zero for i in range(self.dim))

    def unit(self) -> tuple:
        f = self.field
        idem = set(self.idempotents)
        return tuple(f.one if i in idem else f.zero for i in range(self.dim))

    def mul_basis(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        f = self.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = f.mul(xi, yj)
                for k, v in self.mul_basis(i, j).items():
                    out[k] = f.add(out[k], f.mul(c, v))
        return tuple(out)

    def module_checks(self) -> list:
        """Basis pairs whose product is not literally the concatenated word.

        A module given by generator matrices is a genuine module iff the
        structure-constant identity holds on exactly these pairs.
        """
        if "checks" in self._cache:
            return self._cache["checks"]
        idem = set(self.idempotents)
        index_of_word = {w: b for b, w in enumerate(self.words) if b not in idem}
        checks = []
        for i in range(self.dim):
            if i in idem:
                continue
            for j in range(self.dim):
                if j in idem or self.source[i] != self.target[j]:
                    continue
                prod = self.mul_basis(i, j)
                k = index_of_word.get(self.words[j] + self.words[i])
                if k is not None and prod == {k: self.field.one}:
                    continue
                checks.append((i, j, prod))
        self._cache["checks"] = checks
        return checks

    def __repr__(self):
        return f"BasedAlgebra({self.name!r}, n={self.n}, dim={self.dim}, field={self.field!r})"


def _path_label(q: QuiverPresentation, src: int, path: tuple[int, ...]) -> str:
    if not path:
        return f"e{q.vertices[src]}"
    return "".join(q.arrows[a][0] for a in path) if all(len(q.arrows[a][0]) == 1 for a in path) \
        else "*".join(q.arrows[a][0] for a in path)


def build_path_algebra(q: QuiverPresentation) -> BasedAlgebra:
    """Bounded linear reduction of ``KQ / (I + R^L)`` with ``L`` the nilpotency bound.

    Raises :class:`DimensionNotCertifiedError` unless every path of length ``L``
    already lies in the relation ideal modulo longer paths.
    """
    f = q.field
    L = q.nilpotency_bound
    out_arrows = [[] for _ in q.vertices]
    for a, (_, s, _t) in enumerate(q.arrows):
        out_arrows[s].append(a)

    # all paths of length <= L, as (source, arrows)
    by_length = [[(v, ()) for v in range(q.n)]]
    for _ in range(L):
        nxt = []
        for src, path in by_length[-1]:
            end = src if not path else q.arrows[path[-1]][2]
            for a in out_arrows[end]:
                nxt.append((src, path + (a,)))
        by_length.append(nxt)
        if sum(len(x) for x in by_length) > MAX_PATHS:
            raise ResourceError(f"more than {MAX_PATHS} paths below the nilpotency bound",
                                required=sum(len(x) for x in by_length))
    # longest first so that ideal rows pivot on long paths
    columns = [p for length in range(L, -1, -1) for p in by_length[length]]
    col_index = {p: c for c, p in enumerate(columns)}

    def end_of(src, path):
        return src if not path else q.arrows[path[-1]][2]

    rows = []
    for rel in q.relations:
        rs, rt = q.path_ends(rel[0][1])
        minlen = min(len(p) for _, p in rel)
        # prefix paths ending at rs, suffix paths starting at rt
        prefixes = [p for length in range(L - minlen + 1) for p in by_length[length]
                    if end_of(*p) == rs]
        suffixes = [p for length in range(L - minlen + 1) for p in by_length[length] if p[0] == rt]
        for psrc, ppath in prefixes:
            for _ssrc, spath in suffixes:
                if len(ppath) + len(spath) + minlen > L:
                    continue
                row = [f.zero] * len(columns)
                for coeff, rpath in rel:
                    full = ppath + rpath + spath
                    if len(full) > L:
                        continue
                    c = col_index[(psrc, full)]
                    row[c] = f.add(row[c], coeff)
                if any(row):
                    rows.append(row)
    reduced, pivots = rref_rows(f, rows, len(columns))
    pivset = set(pivots)
    for p in by_length[L]:
        if col_index[p] not in pivset:
            raise DimensionNotCertifiedError(
                f"path {_path_label(q, *p)} of length {L} does not vanish; "
                "raise nilpotency_bound or add relations"
            )

    basis_paths = [p for length in range(L + 1) for p in by_length[length] if col_index[p] not in pivset]
    basis_index = {p: b for b, p in enumerate(basis_paths)}
    pivot_row = {pc: r for r, pc in enumerate(pivots)}

    def normal_form(src, path) -> dict:
        if len(path) > L:
            return {}
        p = (src, path)
        if p in basis_index:
            return {basis_index[p]: f.one}
        c = col_index[p]
        if c not in pivot_row:
            return {}
        row = reduced[pivot_row[c]]
        out = {}
        for b, bp in enumerate(basis_paths):
            x = row[col_index[bp]]
            if x:
                out[b] = f.neg(x)
        return out

    dim = len(basis_paths)
    source = tuple(s for s, _ in basis_paths)
    target = tuple(end_of(s, p) for s, p in basis_paths)
    table = {}
    for i, (si, pi) in enumerate(basis_paths):
        for j, (sj, pj) in enumerate(basis_paths):
            if target[j] != si:
                continue
            prod = normal_form(sj, pj + pi)
            if prod:
                table[(i, j)] = prod
    idempotents = tuple(basis_index[(v, ())] for v in range(q.n))
    arrow_basis = []
    for a in range(len(q.arrows)):
        p = (q.arrows[a][1], (a,))
        if p not in basis_index:
            raise InvariantViolation(f"arrow {q.arrows[a][0]} vanished in the quotient")
        arrow_basis.append(basis_index[p])
    return BasedAlgebra(
        field=f,
        n=q.n,
        labels=tuple(_path_label(q, s, p) for s, p in basis_paths),
        source=source,
        target=target,
        idempotents=idempotents,
        generators=tuple(arrow_basis),
        words=tuple(p for _, p in basis_paths),
        table=table,
        name=q.name,
        vertex_labels=q.vertices,
        presentation=q,
    )


def load_algebra(document) -> BasedAlgebra:
    return build_path_algebra(parse_quiver_input(document))


def validate_algebra(A: BasedAlgebra) -> dict:
    """Check the algebra axioms exactly; raise :class:`InvariantViolation` on failure.

    Returns a small summary dict used by the ``validate`` command.
    """
    f = A.field
    dim = A.dim
    basis = [A.basis_vector(k) for k in range(dim)]
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                lhs = A.multiply(A.multiply(basis[i], basis[j]), basis[k])
                rhs = A.multiply(basis[i], A.multiply(basis[j], basis[k]))
                if lhs != rhs:
                    raise InvariantViolation(
                        f"associativity fails on ({A.labels[i]}, {A.labels[j]}, {A.labels[k]})")
    one = A.unit()
    for i in range(dim):
        if A.multiply(one, basis[i]) != basis[i] or A.multiply(basis[i], one) != basis[i]:
            raise InvariantViolation(f"unit fails on {A.labels[i]}")
        if A.source[i] >= A.n or A.target[i] >= A.n:
            raise InvariantViolation("basis element with an out-of-range vertex")
    for a, ea in enumerate(A.idempotents):
        for b, eb in enumerate(A.idempotents):
            prod = A.multiply(basis[ea], basis[eb])
            expected = basis[ea] if a == b else tuple([f.zero] * dim)
            if prod != expected:
                raise InvariantViolation("vertex idempotents are not orthogonal idempotents")
    rad = A.radical
    radset = set(rad)
    for r in rad:
        for b in range(dim):
            for prod in (A.mul_basis(r, b), A.mul_basis(b, r)):
                if any(k not in radset for k in prod):
                    raise InvariantViolation("radical span is not a two-sided ideal")
    # nilpotency: powers of the radical span shrink to zero
    power = [basis[r] for r in rad]
    steps = 0
    while power:
        rows, _ = rref_rows(f, [[x for x in v] for v in power], dim)
        if not rows:
            break
        steps += 1
        if steps > dim + 1:
            raise InvariantViolation("radical is not nilpotent")
        power = [A.multiply(tuple(v), basis[r]) for v in rows for r in rad]
        power = [v for v in power if any(v)]
    # elementary: A / rad has one basis vector per vertex
    if dim - len(rad) != A.n:
        raise InvariantViolation("A/rad(A) does not have dimension n; algebra is not elementary")
    return {"dim": dim, "n": A.n, "radical_dim": len(rad), "loewy_length": steps + 1}


def indecomposable_projectives(A: BasedAlgebra) -> list:
    from .modules import projective_module

    return [projective_module(A, i) for i in range(A.n)]


def indecomposable_injectives(A: BasedAlgebra) -> list:
    from .modules import injective_module

    return [injective_module(A, i) for i in range(A.n)]
