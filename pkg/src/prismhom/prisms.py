"""Labeled generalized prisms: the geometric oracle for the prismatic boundary.

A generator with partition (k1,...,kl) spans the product of simplices
Δ^k1 × ... × Δ^kl.  Vertices are integer coordinate tuples (p1,...,pl)
with 0 <= pq <= kq; the edge set is, within each factor, the complete
graph on that simplex's vertices (all pairs p < p'), with the other
coordinates fixed.

The labeling rule: the edge p -> p' in factor q carries

    (product of block-q entries p+1..p') ◁ (later block prefixes),

where the acting part multiplies, over every later factor u > q, the
product of the first p_u entries of block u.  Actions are applied one
element at a time, which agrees with acting by the product because of the
exponential law.  Deleting vertex i of factor j induces a labeling of the
face that is again of this form, for the tuple produced by the algebraic
face map — that equality is what `geometric_faces` checks and what the
verification suite leans on.
"""

from __future__ import annotations

from itertools import combinations, product

from .algebra import Shalgebra, diagonal_action
from .errors import StructureError, VerificationError
from .prismatic import BracketedTuple, face


class LabeledPrism:
    """A product of simplices with carrier-labeled directed edges."""

    __slots__ = ("partition", "label", "edges", "_key")

    def __init__(self, partition, label, edges):
        self.partition = tuple(partition)
        self.label = label                     # BracketedTuple or None
        self.edges = dict(edges)               # (vfrom, vto) -> element
        self._key = (self.partition, frozenset(self.edges.items()))

    @property
    def vertices(self):
        return [tuple(v) for v in product(*[range(k + 1) for k in self.partition])]

    def edge(self, vfrom, vto):
        try:
            return self.edges[(tuple(vfrom), tuple(vto))]
        except KeyError:
            raise StructureError(f"no edge {vfrom} -> {vto}")

    def __eq__(self, other):
        return isinstance(other, LabeledPrism) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        lbl = self.label.pretty() if self.label is not None else "?"
        return f"<LabeledPrism {lbl} on {self.partition}>"


def _edge_keys(partition):
    """All directed edges of the prism: per factor, pairs p < p', others fixed."""
    ranges = [range(k + 1) for k in partition]
    for q in range(len(partition)):
        others = [ranges[u] for u in range(len(partition)) if u != q]
        for p, pp in combinations(range(partition[q] + 1), 2):
            for rest in product(*others):
                vfrom = list(rest[:q]) + [p] + list(rest[q:])
                vto = list(rest[:q]) + [pp] + list(rest[q:])
                yield q, p, pp, tuple(vfrom), tuple(vto)


def good_labeling(g: BracketedTuple, S: Shalgebra) -> LabeledPrism:
    """The edge labeling of the prism of `g` determined by the labeling rule."""
    blocks = g.blocks()
    partition = g.partition
    edges = {}
    for q, p, pp, vfrom, vto in _edge_keys(partition):
        seg = S.product(blocks[q][p:pp])
        acting = []
        for u in range(q + 1, len(partition)):
            acting.extend(blocks[u][:vfrom[u]])
        edges[(vfrom, vto)] = S.act_by_all(seg, acting)
    return LabeledPrism(partition, g, edges)


def act_on_prism(prism: LabeledPrism, b, S: Shalgebra) -> LabeledPrism:
    """Act with b on every edge label; matches the prism of the acted tuple."""
    tri = S.tri.rows
    edges = {e: tri[lbl][b] for e, lbl in prism.edges.items()}
    label = prism.label
    if label is not None:
        label = BracketedTuple(label.partition, diagonal_action(label.elements, b, S))
    return LabeledPrism(prism.partition, label, edges)


def inductive_labeling(g: BracketedTuple, h, S: Shalgebra) -> LabeledPrism:
    """Label the prism of g|h by placing acted copies of g's prism at h's vertices.

    h is a single appended block (a tuple of carrier elements spanning one
    simplex factor).  The copy at vertex i of that factor is the prism of
    g acted by h1···hi; the connecting edges i -> j all carry h's simplex
    label h_{i+1}···h_j.  Agrees edge-for-edge with `good_labeling` of the
    concatenated tuple.
    """
    h = tuple(int(x) for x in h)
    m = len(h)
    if m < 1:
        raise StructureError("appended block must be non-empty")
    edges = {}
    for i in range(m + 1):
        copy = good_labeling(
            BracketedTuple(g.partition, tuple(S.act_by_all(x, h[:i]) for x in g.elements)),
            S)
        for (vfrom, vto), lbl in copy.edges.items():
            edges[(vfrom + (i,), vto + (i,))] = lbl
    for i, j in combinations(range(m + 1), 2):
        lbl = S.product(h[i:j])
        for v in product(*[range(k + 1) for k in g.partition]):
            edges[(v + (i,), v + (j,))] = lbl
    label = BracketedTuple(g.partition + (m,), g.elements + h)
    return LabeledPrism(g.partition + (m,), label, edges)


def _face_prism(prism: LabeledPrism, j, i):
    """Sub-prism obtained by deleting vertex i of factor j (0-based factor index)."""
    partition = prism.partition
    kj = partition[j]
    if kj == 1:
        # the factor collapses to a point and disappears; keep the other slice
        keep = 1 - i
        new_partition = partition[:j] + partition[j + 1:]

        def keep_vertex(v):
            return v[j] == keep

        def rename(v):
            return v[:j] + v[j + 1:]
    else:
        new_partition = partition[:j] + (kj - 1,) + partition[j + 1:]

        def keep_vertex(v):
            return v[j] != i

        def rename(v):
            return v[:j] + (v[j] - (1 if v[j] > i else 0),) + v[j + 1:]

    edges = {}
    for (vfrom, vto), lbl in prism.edges.items():
        if keep_vertex(vfrom) and keep_vertex(vto):
            edges[(rename(vfrom), rename(vto))] = lbl
    return new_partition, edges


def _recover_label(partition, edges):
    """Read the labeling tuple off the generating edges (t-1 -> t at the base point)."""
    elements = []
    for q, k in enumerate(partition):
        for t in range(1, k + 1):
            vfrom = tuple(0 if u != q else t - 1 for u in range(len(partition)))
            vto = tuple(0 if u != q else t for u in range(len(partition)))
            try:
                elements.append(edges[(vfrom, vto)])
            except KeyError:
                raise VerificationError(f"face labeling misses edge {vfrom}->{vto}")
    return BracketedTuple(tuple(partition), tuple(elements))


def geometric_faces(prism: LabeledPrism, S: Shalgebra):
    """All codimension-one faces with induced labels, signs and renamed vertices.

    Every induced labeling must itself be good (equal to the labeling its
    recovered tuple generates); a mismatch raises, since it would mean the
    geometric and algebraic face maps disagree.
    """
    out = []
    offset = 0
    for j, kj in enumerate(prism.partition):
        for i in range(kj + 1):
            sign = -1 if (offset + i) % 2 else 1
            new_partition, edges = _face_prism(prism, j, i)
            label = _recover_label(new_partition, edges)
            candidate = good_labeling(label, S)
            if candidate.edges != edges:
                raise VerificationError(
                    f"induced labeling of face (j={j + 1}, i={i}) of "
                    f"{prism!r} is not good")
            out.append((sign, candidate))
        offset += kj
    return out


def faces_match_algebra(g: BracketedTuple, S: Shalgebra) -> bool:
    """Signed multiset equality of geometric and algebraic faces for one tuple."""
    prism = good_labeling(g, S)
    geometric = sorted((sign, p.partition, p.label.elements, tuple(sorted(p.edges.items())))
                       for sign, p in geometric_faces(prism, S))
    algebraic = []
    for j, k in enumerate(g.partition, start=1):
        for i in range(k + 1):
            sign, f = face(g, j, i, S)
            p = good_labeling(f, S)
            algebraic.append((sign, p.partition, f.elements, tuple(sorted(p.edges.items()))))
    return geometric == sorted(algebraic)


def path_endomorphism(prism: LabeledPrism, u, v, S: Shalgebra):
    """The carrier map x -> x◁(labels along a directed edge path u -> v).

    Enumerates every orientation-respecting edge path between the two
    vertices, composes the action along each, and insists that all paths
    give one and the same map, which must moreover respect both operations.
    Returns the map as a tuple of images.
    """
    u, v = tuple(u), tuple(v)
    dims = [k + 1 for k in prism.partition]
    for vertex in (u, v):
        if len(vertex) != len(dims) or any(not 0 <= c < d for c, d in zip(vertex, dims)):
            raise StructureError(f"{vertex} is not a vertex of this prism")
    if any(a > b for a, b in zip(u, v)):
        raise StructureError(f"no directed path {u} -> {v}")
    tri = S.tri.rows
    identity = tuple(range(S.size))

    maps = set()

    def walk(vertex, current):
        if vertex == v:
            maps.add(current)
            return
        for q in range(len(dims)):
            for nxt in range(vertex[q] + 1, v[q] + 1):
                nv = vertex[:q] + (nxt,) + vertex[q + 1:]
                lbl = prism.edges[(vertex, nv)]
                walk(nv, tuple(tri[x][lbl] for x in current))

    walk(u, identity)
    if len(maps) != 1:
        raise VerificationError(
            f"path endomorphism {u} -> {v} is path dependent: {sorted(maps)}")
    (phi,) = maps
    dot = S.dot.rows
    for x in range(S.size):
        for y in range(S.size):
            if phi[dot[x][y]] != dot[phi[x]][phi[y]] or phi[tri[x][y]] != tri[phi[x]][phi[y]]:
                raise VerificationError(
                    f"path map {u} -> {v} is not an endomorphism at ({x},{y})")
    return phi


def prism_to_dict(prism: LabeledPrism, S: Shalgebra):
    """JSON-ready dump: vertices, directed labeled edges, oriented faces."""
    names = S.names or [str(i) for i in range(S.size)]
    faces = []
    for sign, p in geometric_faces(prism, S):
        faces.append({
            "sign": sign,
            "partition": list(p.partition),
            "label": p.label.pretty(names),
        })
    return {
        "partition": list(prism.partition),
        "label": prism.label.pretty(names) if prism.label else None,
        "vertices": [list(v) for v in prism.vertices],
        "edges": [
            {"from": list(vf), "to": list(vt), "label": names[lbl]}
            for (vf, vt), lbl in sorted(prism.edges.items())
        ],
        "faces": faces,
    }
