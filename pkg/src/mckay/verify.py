"""End-to-end verification: builds every layer for a type and checks them
against each other, exactly.

All comparisons happen in the type's working conductor field; no floating
point enters any check.  Reports are deterministic and serializable; re-runs
produce byte-identical JSON.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import ade, characters, forms, klein, poincare
from .exact import Cyclo

# the catalog: cyclic orders 3..9 (affine A_2..A_8), D-triples p = 2..8
# (labels D4..D10), and the three exceptional triples
CATALOG = ([(m,) for m in range(3, 10)]
           + [(p, 2, 2) for p in range(2, 9)]
           + [(3, 3, 2), (4, 3, 2), (5, 3, 2)])


def parse_type(text):
    """Accepts 'E8', 'D7', 'A4', a triple '5,3,2', or 'all'."""
    t = text.strip()
    if t.lower() == "all":
        return list(CATALOG)
    if "," in t:
        trip = tuple(int(x) for x in t.split(","))
        if len(trip) not in (1, 3):
            raise ValueError(f"bad triple: {text}")
        return [trip]
    t = t.upper()
    for trip in CATALOG:
        if klein.dynkin_label(trip) == t:
            return [trip]
    raise ValueError(f"unknown type: {text}")


@dataclass
class TypeContext:
    """Everything computed for one type, built once and shared.

    The reflection group's own character table is expensive and only needed
    by the restriction check; it is built lazily via ``table_p``.
    """

    triple: tuple
    K: klein.KleinGroup
    Kp: klein.ReflectionGroup
    classes: list
    table: characters.CharacterTable
    mckay: list
    graph: ade.AdeGraph
    degrees: tuple
    solution: poincare.PoincareSolution
    matchings: list
    node_class: Optional[dict]
    _table_p: Optional[characters.CharacterTable] = None

    @property
    def label(self):
        return klein.dynkin_label(self.triple)

    @property
    def table_p(self):
        if self._table_p is None:
            self._table_p = characters.character_table(self.Kp)
        return self._table_p


@lru_cache(maxsize=None)
def build_context(triple, conductor=None, bound=10000) -> TypeContext:
    K = klein.build_group(triple, conductor=conductor, bound=bound)
    Kp = klein.build_reflection_group(K)
    classes = klein.conjugacy_classes(K)
    table = characters.character_table(K, classes)
    natural = characters.natural_character(K, classes)
    M = characters.mckay_matrix(table, natural=natural)
    graph = ade.build_graph(triple)
    d1, d2 = klein.degrees(Kp)
    sol = poincare.solve(M, d1, d2, table.trivial_index)
    matchings = ade.match_graph(M, table.degrees, table.trivial_index, graph)
    node_class = None if K.is_cyclic else ade.assign_nodes(K, classes, graph)
    return TypeContext(triple=triple, K=K, Kp=Kp, classes=classes, table=table,
                       mckay=M, graph=graph, degrees=(d1, d2),
                       solution=sol, matchings=matchings, node_class=node_class)


# ---------------------------------------------------------------------------
# individual checks; each returns {"name", "status", "witness"}

def _check(name, ok, witness=None):
    return {"name": name, "status": "pass" if ok else "fail",
            "witness": witness if witness is not None else {}}


def check_group_order(ctx):
    want = klein.predicted_order(ctx.triple)
    return _check("group_order", ctx.K.order == want,
                  {"order": ctx.K.order, "expected": want,
                   "kprime_order": ctx.Kp.order})


def check_class_equation(ctx):
    rep = klein.check_class_equation(ctx.K)
    return _check("class_equation", rep["holds"], rep)


def check_abelian_structure(ctx):
    K = ctx.K
    mas = klein.maximal_abelian(K)
    ok = True
    # pairwise intersections are {1, -1}
    for i in range(3):
        for j in range(i + 1, 3):
            inter = set(mas[i].members) & set(mas[j].members)
            ok = ok and inter == {K.identity, K.minus_one}
    # every non-central element lies in exactly one maximal abelian subgroup
    subs = list(klein.all_maximal_abelians(K))
    count = {}
    for s in subs:
        for m in s:
            count[m] = count.get(m, 0) + 1
    for x in range(K.order):
        if x in (K.identity, K.minus_one):
            continue
        ok = ok and count.get(x, 0) == 1
    # doubled/coupled dichotomy
    coupled = set(ctx.graph.coupled_branches)
    for ma in mas:
        if ma.branch in coupled:
            ok = ok and not ma.doubled
        else:
            ok = ok and ma.doubled
    # eigenvalues are primitive 2p-th roots
    for ma, p in zip(mas, K.triple):
        lam = ma.eigenvalue
        ok = ok and (lam ** (2 * p) == 1) and not (lam ** p == 1)
    return _check("maximal_abelian", ok,
                  {"orders": [len(ma.members) for ma in mas],
                   "doubled": [ma.doubled for ma in mas]})


def check_inversion_pattern(ctx):
    inv = klein.inversion_involution(ctx.classes)
    moved = sorted(c for c, d in inv.items() if d != c)
    cycles = len(moved) // 2
    pa = ctx.triple[0]
    if ctx.triple == (3, 3, 2):
        want = 2
    elif ctx.triple[1:] == (2, 2) and pa % 2 == 1:
        want = 1
    else:
        want = 0
    ok = cycles == want and all(inv[inv[c]] == c for c in inv)
    # the involution is a graph automorphism fixing non-coupled nodes
    perm = ade.graph_automorphism_from_inversion(ctx.graph, ctx.node_class,
                                                 ctx.classes)
    for node, img in perm.items():
        if node == img:
            continue
        if node[0] not in ctx.graph.coupled_branches:
            ok = False
    return _check("inversion_involution", ok,
                  {"two_cycles": cycles, "expected": want})


def check_kprime_inversion(ctx):
    rep = klein.check_inversion_action(ctx.Kp, ctx.classes)
    return _check("kprime_inversion_action", rep["matches_inversion"],
                  {"matches": rep["matches_inversion"]})


def check_degrees(ctx):
    d1, d2 = ctx.degrees
    ok = d1 * d2 == ctx.Kp.order
    ok = ok and (d1 - 1) + (d2 - 1) == len(ctx.Kp.reflections)
    expected = {(3, 3, 2): (8, 6), (4, 3, 2): (12, 8), (5, 3, 2): (20, 12)}
    if ctx.triple in expected:
        ok = ok and (d1, d2) == expected[ctx.triple]
    return _check("degrees", ok,
                  {"d1": d1, "d2": d2, "reflections": len(ctx.Kp.reflections)})


def check_natural_character(ctx):
    K, classes = ctx.K, ctx.classes
    nat = characters.natural_character(K, classes)
    where = klein.class_index_map(classes)
    ok = nat[where[K.identity]] == 2
    if K.minus_one is not None:
        ok = ok and nat[where[K.minus_one]] == -2
    for s, c in enumerate(classes):
        if c.inverse_class == c.id:
            ok = ok and nat[s].conj() == nat[s]
    if not K.is_cyclic:
        ok = ok and ctx.table.natural_index is not None
    return _check("natural_character", ok, {})


def check_mckay_structure(ctx):
    M, tab = ctx.mckay, ctx.table
    ok = all(M[i][j] == M[j][i] for i in range(len(M)) for j in range(len(M)))
    ok = ok and all(0 <= M[i][j] <= 2 for i in range(len(M)) for j in range(len(M)))
    for i in range(len(M)):
        ok = ok and sum(M[i][j] * tab.degrees[j] for j in range(len(M))) == 2 * tab.degrees[i]
    if not ctx.K.is_cyclic:
        ok = ok and all(M[i][i] == 0 for i in range(len(M)))
    return _check("mckay_integrality", ok, {"matrix": M})


def check_mckay_match(ctx):
    ms = ctx.matchings
    ok = len(ms) >= 1
    witness = {"count": len(ms)}
    if ms:
        iota = ms[0]
        witness["matching"] = {k: int(v) for k, v in sorted(iota.items())}
        for node, c in iota.items():
            i = ctx.graph.index(node)
            if ctx.table.degrees[c] != ctx.graph.marks[i]:
                ok = False
    return _check("mckay_match", ok, witness)


def check_restriction(ctx):
    rep = characters.restriction_check(ctx.Kp, ctx.K, ctx.table_p, ctx.table)
    return _check("restriction", rep["holds"],
                  {"counts": rep.get("counts"), "weighted": rep.get("weighted")})


def check_poincare_structure(ctx):
    sol, tab = ctx.solution, ctx.table
    d1, d2 = sol.degrees
    ok = True
    triv = sol.polys[tab.trivial_index]
    want = [0] * (d1 + d2 - 1)
    want[0] = 1
    want[-1] = 1
    ok = ok and triv.int_coeffs() == want
    h = Fraction(d1 + d2 - 2, 2)
    for i, p in enumerate(sol.polys):
        ok = ok and not p.is_zero()
        ok = ok and all(c >= 0 and c.denominator == 1 for c in p.coeffs)
        ok = ok and p.is_palindromic_about(sol.centers[i])
        if not ctx.K.is_cyclic:
            ok = ok and sol.centers[i] == h
    total = sum(p.eval_fraction(1) * d for p, d in zip(sol.polys, tab.degrees))
    ok = ok and total == 2 * ctx.K.order
    sumsq = sum(d * d for d in tab.degrees)
    ok = ok and sumsq == ctx.K.order
    return _check("poincare_structure", ok,
                  {"sum_P1_deg": int(total), "sum_deg_sq": sumsq})


def anomalous_columns(ctx):
    """Element nodes where the specialization identity provably cannot hold.

    At a branch node (X, n) the point is t0 = zeta_{2p_X}^n.  The graded
    trace identity forces, in the limit, the value of the dying degree factor;
    that limit equals the character side exactly when t0^h = 1 for
    h = d1 + d2 - 2.  Columns with 2 p_X not dividing n*h are structural
    anomalies of the specialization formula (the '0' and '*' columns always
    satisfy t0^h = 1 since h is even).
    """
    d1, d2 = ctx.degrees
    h = d1 + d2 - 2
    out = []
    for branch, p in zip("ABC", ctx.triple):
        for n in range(1, p):
            if (n * h) % (2 * p) != 0:
                out.append(f"{branch}{n}")
    return out


def theorem_grid(ctx):
    """Exact specialization grid.

    Returns (witness_matching, anomalies, ok): all cells on h-compatible
    columns must match exactly; anomalies collects the mismatching cells on
    the anomalous columns (both sides recorded).
    """
    K, g, sol, tab = ctx.K, ctx.graph, ctx.solution, ctx.table
    n = K.conductor
    degen = set(anomalous_columns(ctx))
    points = {nu: poincare.node_point(g, nu, n) for nu in g.nodes}
    lhs_cache = {}
    for iota in ctx.matchings:
        ok = True
        anomalies = []
        for nu in g.nodes:
            pt = points[nu]
            cls = ctx.node_class[nu]
            for node_i in g.nodes:
                ci = iota[node_i]
                key = (ci, nu)
                if key not in lhs_cache:
                    lhs_cache[key] = sol.polys[ci].eval_cyclo(pt)
                lhs = lhs_cache[key]
                chi = tab.values[ci][cls]
                rhs = chi + chi.conj()
                if not (lhs == rhs):
                    if nu in degen:
                        anomalies.append((node_i, nu, lhs, rhs))
                    else:
                        ok = False
                        break
            if not ok:
                break
        if ok:
            return iota, anomalies, True
    return None, [], False


def check_theorem(ctx):
    iota, anomalies, ok = theorem_grid(ctx)
    witness = {
        "anomalous_columns": anomalous_columns(ctx),
        "anomaly_cells": [
            {"char_node": a, "elem_node": b,
             "poly_value": l.to_json(), "pi_value": r.to_json()}
            for a, b, l, r in anomalies],
    }
    if iota is not None:
        witness["matching"] = {k: int(v) for k, v in sorted(iota.items())}
    return _check("theorem_specialization", ok, witness), anomalies, iota


def check_splitting(ctx, iota):
    """Symmetric split reproduces the individual conjugate character values
    on every h-compatible element column (where the summed identity holds)."""
    g, sol, tab = ctx.graph, ctx.solution, ctx.table
    if not g.coupled_branches:
        return _check("splitting", True, {"coupled": False})
    bx, by = g.coupled_branches
    p = dict(zip("ABC", ctx.triple))[bx]
    conj_rows = characters._conjugate_row(tab)
    n = ctx.K.conductor
    degen = set(anomalous_columns(ctx))
    ok = True
    detail = []
    for m in range(1, p):
        ci, cj = iota[f"{bx}{m}"], iota[f"{by}{m}"]
        ok = ok and conj_rows[ci] == cj and ci != cj
        ok = ok and sol.polys[ci] == sol.polys[cj]
        try:
            plus, minus = sol.split(ci)
        except poincare.AmbiguousSplit:
            return _check("splitting", False, {"reason": "ambiguous split"})
        d = tab.degrees[ci]
        ok = ok and plus.eval_fraction(1) == d and minus.eval_fraction(1) == d
        for nu in g.nodes:
            if nu == "0" or nu in degen:
                continue
            pt = poincare.node_point(g, nu, n)
            pv, mv = plus.eval_cyclo(pt), minus.eval_cyclo(pt)
            chi_i = tab.values[ci][ctx.node_class[nu]]
            chi_j = tab.values[cj][ctx.node_class[nu]]
            hit = ((chi_i == pv and chi_j == mv)
                   or (chi_i == mv and chi_j == pv))
            if not hit:
                ok = False
                detail.append({"char_node": f"{bx}{m}", "elem_node": nu})
    return _check("splitting", ok, {"coupled": True, "failures": detail})


def check_forms(ctx, heavy=True):
    out = []
    ki = forms.klein_degree_identity(ctx.K)
    out.append(_check("klein_degree_identity", ki["holds"], ki))
    sing = forms.singular_lines(ctx.K)
    sizes = sorted(len(o.lines) for o in sing)
    want = sorted(ctx.K.order // (2 * p) for p in ctx.triple)
    out.append(_check("singular_orbit_sizes", sizes == want,
                      {"sizes": sizes, "expected": want}))
    if heavy:
        jc = forms.jacobian_check(ctx.K)
        wit = {k: v for k, v in jc.items() if k != "constant"}
        if "constant" in jc and isinstance(jc["constant"], Cyclo):
            wit["constant"] = jc["constant"].to_json()
        out.append(_check("jacobian_factorization", jc["holds"], wit))
        ofs = [forms.orbit_form(ctx.K, o) for o in sing]
        rel = all(forms.verify_relative_invariance(ctx.K, of) for of in ofs)
        out.append(_check("orbit_form_invariance", rel, {}))
    return out


# ---------------------------------------------------------------------------


def classes_json(ctx):
    node_of = {}
    if ctx.node_class:
        node_of = {cid: node for node, cid in ctx.node_class.items()}
    out = []
    for c in ctx.classes:
        out.append({"id": c.id, "size": c.size, "order": c.order,
                    "node": node_of.get(c.id),
                    "rep_word": ctx.K.words[c.rep] or "e"})
    return out


def characters_json(ctx):
    iota = ctx.matchings[0] if ctx.matchings else None
    node_of = {}
    if iota and not ctx.K.is_cyclic:
        node_of = {v: k for k, v in iota.items()}
    out = []
    for i in range(ctx.table.size):
        out.append({
            "node": node_of.get(i),
            "degree": ctx.table.degrees[i],
            "values": [v.to_json() for v in ctx.table.values[i]],
        })
    return out


def poincare_json(ctx):
    iota = ctx.matchings[0] if ctx.matchings else None
    node_of = {}
    if iota and not ctx.K.is_cyclic:
        node_of = {v: k for k, v in iota.items()}
    coupled_chars = set()
    if ctx.graph.coupled_branches and iota:
        bx, by = ctx.graph.coupled_branches
        p = dict(zip("ABC", ctx.triple))[bx]
        for m in range(1, p):
            coupled_chars.add(iota[f"{bx}{m}"])
            coupled_chars.add(iota[f"{by}{m}"])
    out = []
    for i, p in enumerate(ctx.solution.polys):
        entry = {
            "node": node_of.get(i),
            "coeffs": [int(c) for c in p.coeffs],
            "center": _frac_json(ctx.solution.centers[i]),
            "plus": None, "minus": None,
        }
        if i in coupled_chars:
            plus, minus = ctx.solution.split(i)
            entry["plus"] = [int(c) for c in plus.coeffs]
            entry["minus"] = [int(c) for c in minus.coeffs]
        out.append(entry)
    return out


def _frac_json(f: Fraction):
    return int(f) if f.denominator == 1 else float(f)


def verify_type(triple, conductor=None, bound=10000, strict_theorem=False,
                heavy_forms=True) -> dict:
    """Full check battery for one type; returns the serializable report."""
    ctx = build_context(tuple(triple), conductor, bound)
    checks = [check_group_order(ctx)]
    anomalies = []
    if not ctx.K.is_cyclic:
        checks.append(check_class_equation(ctx))
        checks.append(check_abelian_structure(ctx))
        checks.append(check_inversion_pattern(ctx))
        checks.append(check_kprime_inversion(ctx))
    checks.append(check_degrees(ctx))
    checks.append(check_natural_character(ctx))
    checks.append(check_mckay_structure(ctx))
    checks.append(check_mckay_match(ctx))
    checks.append(check_restriction(ctx))
    checks.append(check_poincare_structure(ctx))
    if not ctx.K.is_cyclic:
        thm, anomalies, iota = check_theorem(ctx)
        checks.append(thm)
        checks.append(check_splitting(ctx, iota if iota else ctx.matchings[0]))
        checks.extend(check_forms(ctx, heavy=heavy_forms))
        if strict_theorem:
            checks.append(_check("theorem_full_grid", not anomalies,
                                 {"anomaly_count": len(anomalies)}))
    report = {
        "type": ctx.label,
        "triple": list(ctx.triple),
        "order": ctx.K.order,
        "conductor": ctx.K.conductor,
        "degrees": list(ctx.degrees),
        "classes": classes_json(ctx),
        "characters": characters_json(ctx),
        "poincare": poincare_json(ctx),
        "checks": checks,
        "theorem_strict": {
            "full_grid_exact": not anomalies,
            "anomalies": [
                {"char_node": a, "elem_node": b,
                 "poly_value": l.to_json(), "pi_value": r.to_json()}
                for a, b, l, r in anomalies],
        } if not ctx.K.is_cyclic else None,
    }
    report["pass"] = all(c["status"] == "pass" for c in checks)
    return report


def verify_all(types=None, strict_theorem=False) -> list:
    types = types if types is not None else list(CATALOG)
    return [verify_type(t, strict_theorem=strict_theorem) for t in types]


def report_to_json(report) -> str:
    return json.dumps(report, sort_keys=True, indent=1)
