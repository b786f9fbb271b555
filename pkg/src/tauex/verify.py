"""Statement checkers: each suite returns a :class:`StatementResult`.

Suites quantify over a module universe.  Global uniqueness suites need a
certified universe and report ``skipped`` otherwise; semistability suites
need a finite field.  A failing suite carries a JSON counterexample that
:func:`replay` re-checks from scratch.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import BasedAlgebra
from .ar import TaggedModule, dim_vector, g_vector, is_tau_rigid, tau, untag
from .errors import InputError
from .indecs import Universe
from .linalg import QQ, rank_rows
from .modules import are_isomorphic, hom_dim, is_in_gen, module_from_json
from .sequences import FLAVORS, Level, _run, basic_rigid_sets, enumerate_complete, perpendicular_levels
from .wide import in_tau_perp, is_theta_semistable

STATEMENTS = ("nohom", "interp", "equiv", "linindep", "main", "cor-main", "cor-wide")


@dataclass
class StatementResult:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    counterexample: dict | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "counterexample": self.counterexample}


def _entry_json(X) -> dict:
    if isinstance(X, TaggedModule):
        return X.to_json()
    out = X.to_json()
    out["shifted"] = False
    return out


def _seq_json(seq) -> list:
    return [_entry_json(X) for X in seq]


# ---------------------------------------------------------------------------
# sequence-level checks


def verify_linear_independence(seq: Sequence) -> dict:
    """Rank over QQ of the (signed) dimension vectors."""
    vecs = [[Fraction(x) for x in dim_vector(X)] for X in seq]
    n = len(vecs[0]) if vecs else 0
    r = rank_rows(QQ, vecs, n) if vecs else 0
    return {"rank": r, "length": len(vecs), "pass": r == len(vecs)}


def _same(X, Y) -> bool:
    a, b = untag(X), untag(Y)
    return a.dims == b.dims and are_isomorphic(a, b)


def verify_one_place_uniqueness(all_complete: Sequence[Sequence]) -> dict:
    """No two sequences in the list differ in exactly one position (signed entries compared by ``|U|``)."""
    pairs = 0
    for i in range(len(all_complete)):
        for j in range(i + 1, len(all_complete)):
            s, t = all_complete[i], all_complete[j]
            if len(s) != len(t):
                continue
            pairs += 1
            diff = [k for k in range(len(s)) if not _same(s[k], t[k])]
            if len(diff) == 1:
                return {"pass": False, "pairs": pairs,
                        "counterexample": {"first": _seq_json(s), "second": _seq_json(t), "position": diff[0]}}
    return {"pass": True, "pairs": pairs, "counterexample": None}


def hosting_subcategories(prefix: Sequence, levels: dict, flavor: str) -> list[frozenset]:
    """Member sets of the categories in which ``prefix`` is a complete sequence of the flavor."""
    hosts = []
    for key, lvl in levels.items():
        if lvl.n != len(prefix):
            continue
        report = _run(lvl, prefix, flavor)[0]
        if report.valid and report.complete:
            hosts.append(key)
    return hosts


def verify_unique_wide(all_complete: Sequence[Sequence], universe: Universe | Level, flavor: str = "plain") -> dict:
    """Each prefix of each complete sequence is complete in exactly one tau-perpendicular category."""
    level = universe if isinstance(universe, Level) else Level.from_universe(universe)
    levels = perpendicular_levels(level)
    checked = 0
    for seq in all_complete:
        for j in range(1, len(seq) + 1):
            hosts = hosting_subcategories(seq[:j], levels, flavor)
            checked += 1
            if len(hosts) != 1:
                return {"pass": False, "checked": checked, "subcategories": len(levels),
                        "counterexample": {"sequence": _seq_json(seq), "prefix_length": j,
                                           "hosts": [sorted(h) for h in hosts]}}
    return {"pass": True, "checked": checked, "subcategories": len(levels), "counterexample": None}


# ---------------------------------------------------------------------------
# suites over a universe


def _rigid(universe: Universe):
    return [X for X in universe if is_tau_rigid(X)]


def _rigid_sums(universe: Universe):
    """Indecomposable tau-rigid members, plus all basic tau-rigid sums on certified universes."""
    from .modules import direct_sum

    out = [(X, (k,)) for k, X in enumerate(universe) if is_tau_rigid(X)]
    if universe.certified:
        lvl = Level.from_universe(universe)
        for combo in basic_rigid_sets(lvl):
            if len(combo) > 1:
                out.append((direct_sum([universe[k] for k in combo]), combo))
    return out


def suite_interp(universe: Universe) -> StatementResult:
    for X in universe:
        g = g_vector(X)
        tX = tau(X)
        for L in universe:
            lhs = sum(a * b for a, b in zip(g, L.dims))
            rhs = hom_dim(X, L) - hom_dim(L, tX)
            if lhs != rhs:
                return StatementResult("interp", "fail", {"X": X.to_json(), "L": L.to_json(),
                                                          "pairing": lhs, "hom_difference": rhs})
    return StatementResult("interp", "pass")


def suite_nohom(universe: Universe) -> StatementResult:
    for X, _ in _rigid_sums(universe):
        tX = tau(X)
        for M in universe:
            if is_in_gen(M, X) and hom_dim(M, tX):
                return StatementResult("nohom", "fail", {"X": X.to_json(), "M": M.to_json()})
    return StatementResult("nohom", "pass")


def suite_equiv(universe: Universe, negate: bool = False) -> StatementResult:
    if not universe.algebra.field.is_finite:
        return StatementResult("equiv", "skipped", detail="semistability needs a finite field")
    for X in _rigid(universe):
        g = g_vector(X)
        for M in universe:
            if is_theta_semistable(g, M, negate) != in_tau_perp(X, M):
                return StatementResult("equiv", "fail", {"X": X.to_json(), "M": M.to_json(),
                                                         "negate_theta": negate})
    return StatementResult("equiv", "pass")


def all_sequences(universe: Universe) -> dict:
    """Complete sequences of every flavor (only those visible in the slice if uncertified)."""
    level = Level.from_universe(universe, allow_slice=not universe.certified)
    return {fl: enumerate_complete(level, fl) for fl in FLAVORS}


def suite_linindep(seqs: dict) -> StatementResult:
    for fl, lst in seqs.items():
        for s in lst:
            if not verify_linear_independence(s)["pass"]:
                return StatementResult("linindep", "fail", {"flavor": fl, "sequence": _seq_json(s)})
    return StatementResult("linindep", "pass")


def _skipped(name):
    return StatementResult(name, "skipped", detail="universe not certified")


def suite_main(universe: Universe, seqs: dict) -> StatementResult:
    if not universe.certified:
        return _skipped("main")
    r = verify_one_place_uniqueness(seqs["plain"])
    return StatementResult("main", "pass" if r["pass"] else "fail", r["counterexample"])


def suite_cor_main(universe: Universe, seqs: dict) -> StatementResult:
    if not universe.certified:
        return _skipped("cor-main")
    for fl in ("signed", "brick"):
        r = verify_one_place_uniqueness(seqs[fl])
        if not r["pass"]:
            ce = dict(r["counterexample"])
            ce["flavor"] = fl
            return StatementResult("cor-main", "fail", ce)
    return StatementResult("cor-main", "pass")


def suite_cor_wide(universe: Universe, seqs: dict) -> StatementResult:
    if not universe.certified:
        return _skipped("cor-wide")
    level = Level.from_universe(universe)
    for fl in FLAVORS:
        r = verify_unique_wide(seqs[fl], level, fl)
        if not r["pass"]:
            ce = dict(r["counterexample"])
            ce["flavor"] = fl
            return StatementResult("cor-wide", "fail", ce)
    return StatementResult("cor-wide", "pass")


def verify_statements(universe: Universe, statements: Sequence[str] = STATEMENTS, negate: bool = False,
                      seqs: dict | None = None) -> tuple[list[StatementResult], dict]:
    """Run the requested suites in the canonical statement order."""
    unknown = set(statements) - set(STATEMENTS)
    if unknown:
        raise InputError(f"unknown statements {sorted(unknown)}")
    needs_seqs = {"linindep", "main", "cor-main", "cor-wide"} & set(statements)
    if seqs is None:
        seqs = all_sequences(universe) if needs_seqs else {}
    results = []
    for name in STATEMENTS:
        if name not in statements:
            continue
        if name == "interp":
            results.append(suite_interp(universe))
        elif name == "nohom":
            results.append(suite_nohom(universe))
        elif name == "equiv":
            results.append(suite_equiv(universe, negate))
        elif name == "linindep":
            results.append(suite_linindep(seqs))
        elif name == "main":
            results.append(suite_main(universe, seqs))
        elif name == "cor-main":
            results.append(suite_cor_main(universe, seqs))
        else:
            results.append(suite_cor_wide(universe, seqs))
    return results, seqs


# ---------------------------------------------------------------------------
# counterexample replay


def _entry(A, doc):
    M = module_from_json(A, doc)
    return TaggedModule(M, True) if doc.get("shifted") else M


def replay(name: str, counterexample: dict, algebra: BasedAlgebra, universe: Universe | None = None) -> bool:
    """True when the recorded counterexample still violates the statement."""
    A = algebra
    ce = counterexample
    if name == "interp":
        X, L = module_from_json(A, ce["X"]), module_from_json(A, ce["L"])
        return sum(a * b for a, b in zip(g_vector(X), L.dims)) != hom_dim(X, L) - hom_dim(L, tau(X))
    if name == "nohom":
        X, M = module_from_json(A, ce["X"]), module_from_json(A, ce["M"])
        return is_tau_rigid(X) and is_in_gen(M, X) and hom_dim(M, tau(X)) != 0
    if name == "equiv":
        X, M = module_from_json(A, ce["X"]), module_from_json(A, ce["M"])
        return is_theta_semistable(g_vector(X), M, ce.get("negate_theta", False)) != in_tau_perp(X, M)
    if name == "linindep":
        seq = [_entry(A, d) for d in ce["sequence"]]
        return not verify_linear_independence(seq)["pass"]
    if name in ("main", "cor-main"):
        s = [_entry(A, d) for d in ce["first"]]
        t = [_entry(A, d) for d in ce["second"]]
        return not verify_one_place_uniqueness([s, t])["pass"]
    if name == "cor-wide":
        if universe is None:
            raise InputError("replaying cor-wide needs the universe")
        seq = [_entry(A, d) for d in ce["sequence"]]
        levels = perpendicular_levels(Level.from_universe(universe))
        hosts = hosting_subcategories(seq[:ce["prefix_length"]], levels, ce.get("flavor", "plain"))
        return len(hosts) != 1
    raise InputError(f"unknown statement {name!r}")
