"""Extended Coxeter-Dynkin graphs, node labels, marks, and McKay matching.

Node names: "0" (extending node), "*" (central node), "A1".."A{p-1}", "B..",
"C.." for the branch nodes.  The extending node is attached so that
C = 2I - adjacency is the affine Cartan matrix: this is machine-checked (the
kernel must be one-dimensional and strictly positive), never assumed from a
picture.  A-type cycles are built for McKay matching only and carry plain
numeric node names.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .klein import class_index_map, dynkin_label


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class AdeGraph:
    triple: tuple
    label: str
    nodes: tuple                 # node names
    adjacency: tuple             # symmetric 0/1 matrix (tuple of tuples)
    marks: tuple                 # positive integers, mark("0") = 1
    coupled_branches: tuple      # () or a pair like ("A", "B")

    def index(self, name):
        return self.nodes.index(name)

    def neighbors(self, name):
        i = self.index(name)
        return [self.nodes[j] for j, e in enumerate(self.adjacency[i]) if e]

    def cartan(self):
        n = len(self.nodes)
        return [[(2 if i == j else 0) - self.adjacency[i][j]
                 for j in range(n)] for i in range(n)]

    @property
    def is_cycle(self):
        return len(self.triple) == 1


def _kernel_vector(cartan):
    """The 1-dimensional positive integer kernel of an affine Cartan matrix."""
    n = len(cartan)
    rows = [[Fraction(x) for x in row] for row in cartan]
    piv_col = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_col.append(c)
        r += 1
    free = [c for c in range(n) if c not in piv_col]
    if len(free) != 1:
        raise GraphError("Cartan kernel is not 1-dimensional")
    fc = free[0]
    v = [Fraction(0)] * n
    v[fc] = Fraction(1)
    for i, pc in enumerate(piv_col):
        v[pc] = -rows[i][fc]
    den = 1
    for x in v:
        den = den * x.denominator // _gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    if ints[0] < 0:
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise GraphError("Cartan kernel is not positive")
    g = 0
    for x in ints:
        g = _gcd(g, x)
    return tuple(x // g for x in ints)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def build_graph(triple) -> AdeGraph:
    """The labeled extended graph of a D/E triple (or an A-type cycle)."""
    triple = tuple(triple)
    if len(triple) == 1:
        return _cycle_graph(triple[0])
    pa, pb, pc = triple
    nodes = ["0"]
    for branch, p in (("A", pa), ("B", pb), ("C", pc)):
        nodes += [f"{branch}{n}" for n in range(1, p)]
    nodes.append("*")
    idx = {v: i for i, v in enumerate(nodes)}
    edges = set()
    for branch, p in (("A", pa), ("B", pb), ("C", pc)):
        chain = [f"{branch}{n}" for n in range(1, p)] + ["*"]
        for u, v in zip(chain, chain[1:]):
            edges.add(frozenset((idx[u], idx[v])))
    # extending node placement: unique position making the Cartan matrix affine
    if (pb, pc) == (2, 2):
        zero_to = "A2" if pa >= 3 else "*"
    elif (pa, pb, pc) == (3, 3, 2):
        zero_to = "C1"
    elif (pa, pb, pc) == (4, 3, 2):
        zero_to = "B1"
    elif (pa, pb, pc) == (5, 3, 2):
        zero_to = "A1"
    else:
        raise GraphError(f"unsupported triple {triple}")
    edges.add(frozenset((idx["0"], idx[zero_to])))
    n = len(nodes)
    adj = [[0] * n for _ in range(n)]
    for e in edges:
        i, j = tuple(e)
        adj[i][j] = adj[j][i] = 1
    g = AdeGraph(triple=triple, label=dynkin_label(triple), nodes=tuple(nodes),
                 adjacency=tuple(tuple(r) for r in adj),
                 marks=(), coupled_branches=_coupled(triple))
    marks = _kernel_vector(g.cartan())
    if marks[0] != 1:
        raise GraphError("mark normalization failed")  # pragma: no cover
    return AdeGraph(triple=g.triple, label=g.label, nodes=g.nodes,
                    adjacency=g.adjacency, marks=marks,
                    coupled_branches=g.coupled_branches)


def _coupled(triple):
    pa, pb, pc = triple
    if (pb, pc) == (2, 2) and pa % 2 == 1 and pa > 2:
        return ("B", "C")
    if (pa, pb, pc) == (3, 3, 2):
        return ("A", "B")
    return ()


def _cycle_graph(m) -> AdeGraph:
    if m < 3:
        raise GraphError("A-type cycle needs order >= 3")
    nodes = tuple(str(i) for i in range(m))
    adj = [[0] * m for _ in range(m)]
    for i in range(m):
        adj[i][(i + 1) % m] = adj[(i + 1) % m][i] = 1
    g = AdeGraph(triple=(m,), label=f"A{m - 1}", nodes=nodes,
                 adjacency=tuple(tuple(r) for r in adj), marks=(),
                 coupled_branches=())
    marks = _kernel_vector(g.cartan())
    return AdeGraph(triple=g.triple, label=g.label, nodes=g.nodes,
                    adjacency=g.adjacency, marks=marks, coupled_branches=())


def match_graph(mckay, degrees, trivial, graph: AdeGraph):
    """All adjacency- and mark-preserving bijections node -> character index.

    For labeled (D/E) graphs the extending node is pinned to the trivial
    character; A-type cycles have no pinned node.  Empty result means the
    McKay matrix does not realize 2I - C of this graph.
    """
    n = len(graph.nodes)
    if len(mckay) != n:
        return []
    order = sorted(range(n), key=lambda i: (-sum(graph.adjacency[i]), i))
    results = []
    assign = {}
    used = [False] * len(degrees)

    def ok(i, c):
        if degrees[c] != graph.marks[i]:
            return False
        for j in assign:
            want = graph.adjacency[i][j]
            if mckay[c][assign[j]] != want:
                return False
        return True

    def rec(k):
        if k == n:
            results.append({graph.nodes[i]: assign[i] for i in range(n)})
            return
        i = order[k]
        if not graph.is_cycle and graph.nodes[i] == "0":
            cands = [trivial]
        else:
            cands = range(len(degrees))
        for c in cands:
            if not used[c] and ok(i, c):
                assign[i] = c
                used[c] = True
                rec(k + 1)
                used[c] = False
                del assign[i]

    rec(0)
    results.sort(key=lambda m: tuple(m[v] for v in graph.nodes))
    return results


def assign_nodes(K, classes, graph: AdeGraph) -> dict:
    """Node -> conjugacy class id: "0" -> [1], "*" -> [-1], Xn -> [e_X^n]."""
    if graph.is_cycle:
        raise GraphError("A-type cycles carry no branch labels")
    where = class_index_map(classes)
    ea, eb, ec = K.e_indices
    out = {"0": where[K.identity], "*": where[K.minus_one]}
    for branch, e, p in (("A", ea, K.triple[0]), ("B", eb, K.triple[1]),
                         ("C", ec, K.triple[2])):
        x = K.identity
        for nn in range(1, p):
            x = K.table[x][e]
            out[f"{branch}{nn}"] = where[x]
    if len(set(out.values())) != len(out):
        raise GraphError("node/class mismatch")
    # coupled-branch consistency: class(e_Y^n) = class(e_X^{-n})
    if graph.coupled_branches:
        bx, by = graph.coupled_branches
        ex = {"A": ea, "B": eb, "C": ec}[bx]
        p = {"A": K.triple[0], "B": K.triple[1], "C": K.triple[2]}[bx]
        x = K.identity
        for nn in range(1, p):
            x = K.table[x][K.inverse[ex]]
            if out[f"{by}{nn}"] != where[x]:
                raise GraphError("node/class mismatch")
    return out


def graph_automorphism_from_inversion(graph: AdeGraph, node_class, classes):
    """The node permutation induced by [c] -> [c^-1]; must be a graph map."""
    inv = {c.id: c.inverse_class for c in classes}
    cls_node = {v: k for k, v in node_class.items()}
    perm = {}
    for node, cid in node_class.items():
        perm[node] = cls_node[inv[cid]]
    # check it preserves adjacency
    idx = {v: i for i, v in enumerate(graph.nodes)}
    for u in node_class:
        for v in node_class:
            a = graph.adjacency[idx[u]][idx[v]]
            b = graph.adjacency[idx[perm[u]]][idx[perm[v]]]
            if a != b:
                raise GraphError("inversion is not a graph automorphism")
    return perm
