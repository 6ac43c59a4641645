"""The prismatic chain complex of a shalgebra and its qualgebra extension.

Degree-n generators are *bracketed tuples*: n carrier elements grouped into
blocks by an ordered partition (k1,...,kl) of n.  A generator spans the
product of simplices of dimensions k1,...,kl; the one-block partition (n)
gives the simplicial (multiplication) complex, the all-ones partition the
cubical (action) complex, and mixed partitions interpolate.

Face maps on block j of size kj, for i in 0..kj (block entries 1-based):

    i = 0     delete the first entry of block j and act with it (via ◁)
              on every entry of blocks 1..j-1;
    0<i<kj    replace entries (i, i+1) of block j by their ·-product;
    i = kj    delete the last entry of block j.

A block of size one disappears when its entry is deleted.  The face
carries the sign (-1)^(k1+...+k_{j-1}+i); the boundary of a generator is
the signed sum over all (j, i), with like terms combined.  For a carrier
satisfying H, YI, IY, III this squares to zero (verified on every build).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import NamedTuple

from . import chains
from .algebra import Shalgebra
from .errors import AxiomError, StructureError, VerificationError


def compositions(n):
    """All ordered partitions of n, lexicographic by parts; empty for n = 0."""
    if n < 0:
        raise StructureError("degree must be non-negative")
    return _compositions(n) if n else ()


@lru_cache(maxsize=None)
def _compositions(n):
    if n == 0:
        return ((),)
    out = []
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            out.append((first,) + rest)
    return tuple(out)


# Spec alias: the enumeration order is part of the generator numbering contract.
enumerate_partitions = compositions


class BracketedTuple(NamedTuple):
    """An ordered partition together with the elements filling its blocks."""

    partition: tuple
    elements: tuple

    @property
    def degree(self):
        return len(self.elements)

    def blocks(self):
        out = []
        pos = 0
        for k in self.partition:
            out.append(self.elements[pos:pos + k])
            pos += k
        return out

    def pretty(self, names=None):
        def name(x):
            return names[x] if names else str(x)

        parts = []
        for block in self.blocks():
            if len(block) == 1:
                parts.append(name(block[0]))
            else:
                parts.append("(" + ",".join(name(x) for x in block) + ")")
        return "|".join(parts) if parts else "()"


def bracketed(partition, elements) -> BracketedTuple:
    partition = tuple(int(k) for k in partition)
    elements = tuple(int(g) for g in elements)
    if any(k < 1 for k in partition):
        raise StructureError("partition parts must be positive")
    if sum(partition) != len(elements):
        raise StructureError(
            f"partition {partition} does not fit {len(elements)} elements")
    return BracketedTuple(partition, elements)


def face(g: BracketedTuple, j, i, S: Shalgebra):
    """Signed face of a generator: block j (1-based), vertex i in 0..kj.

    Returns (sign, BracketedTuple); the result of the two deletions on a
    size-one block is the generator with that block removed.
    """
    blocks = g.blocks()
    if not 1 <= j <= len(blocks):
        raise StructureError(f"block index {j} out of range")
    kj = len(blocks[j - 1])
    if not 0 <= i <= kj:
        raise StructureError(f"face index {i} out of range for block of size {kj}")
    sign = -1 if (sum(g.partition[: j - 1]) + i) % 2 else 1
    tri = S.tri.rows
    dot = S.dot.rows
    new_blocks = [list(b) for b in blocks]
    if i == 0:
        h = new_blocks[j - 1][0]
        del new_blocks[j - 1][0]
        for u in range(j - 1):
            new_blocks[u] = [tri[x][h] for x in new_blocks[u]]
    elif i == kj:
        del new_blocks[j - 1][-1]
    else:
        b = new_blocks[j - 1]
        b[i - 1:i + 1] = [dot[b[i - 1]][b[i]]]
    if not new_blocks[j - 1]:
        del new_blocks[j - 1]
    partition = tuple(len(b) for b in new_blocks)
    elements = tuple(x for b in new_blocks for x in b)
    return sign, BracketedTuple(partition, elements)


def boundary_generator(g: BracketedTuple, S: Shalgebra) -> dict:
    """Boundary of a generator with like terms combined; {} for degree 1.

    Terms map BracketedTuple -> nonzero integer coefficient.  The paired
    deletions of size-one blocks cancel here, which is why e.g. the
    boundary of a|b has two terms, not four.
    """
    if g.degree <= 1:
        return {}
    out = {}
    for j, k in enumerate(g.partition, start=1):
        for i in range(k + 1):
            sign, f = face(g, j, i, S)
            c = out.get(f, 0) + sign
            if c:
                out[f] = c
            else:
                del out[f]
    return out


# -- classical specializations -------------------------------------------------


def bar_differential(elements, S: Shalgebra) -> dict:
    """Simplicial differential of the multiplication alone, on plain tuples."""
    n = len(elements)
    out = {}
    for i in range(n + 1):
        if i == 0:
            t = tuple(elements[1:])
        elif i == n:
            t = tuple(elements[:-1])
        else:
            t = (elements[:i - 1]
                 + (S.mul(elements[i - 1], elements[i]),)
                 + elements[i + 1:])
        sign = -1 if i % 2 else 1
        c = out.get(t, 0) + sign
        if c:
            out[t] = c
        else:
            del out[t]
    return out


def rack_differential(elements, S: Shalgebra) -> dict:
    """Cubical differential of the action alone, on plain tuples.

    Face maps run over positions 1..n; the i-th pair is the acted deletion
    (everything left of position i acted by its entry) minus the plain
    deletion, with sign (-1)^i.
    """
    n = len(elements)
    tri = S.tri.rows
    out = {}
    for i in range(1, n + 1):
        h = elements[i - 1]
        plus = tuple(tri[x][h] for x in elements[:i - 1]) + tuple(elements[i:])
        minus = tuple(elements[:i - 1]) + tuple(elements[i:])
        sign = -1 if i % 2 else 1
        for t, s in ((plus, sign), (minus, -sign)):
            c = out.get(t, 0) + s
            if c:
                out[t] = c
            else:
                del out[t]
    return out


class TupleComplex:
    """Chain complex over plain tuples G^n (degree 0 = the empty tuple)."""

    def __init__(self, S, N, differential, name):
        self.S = S
        self.N = N
        self.name = name
        counts = {0: 1}
        boundaries = {}
        for n in range(1, N + 1):
            counts[n] = S.size ** n
            chs = []
            for elements in product(range(S.size), repeat=n):
                terms = {self.index_of(t): c for t, c in differential(elements, S).items()}
                chs.append(chains.Chain(n - 1, terms))
            boundaries[n] = chs
        self.cc = chains.ChainComplex(counts, boundaries, truncated=True)

    def index_of(self, elements):
        idx = 0
        for x in elements:
            idx = idx * self.S.size + x
        return idx

    def homology(self, n, allow_truncation=False):
        return self.cc.homology(n, allow_truncation)


def build_bar_complex(S: Shalgebra, N) -> TupleComplex:
    if not S.report.ok("H"):
        raise AxiomError("the multiplication is not associative",
                         witness=S.report.witness("H"))
    return TupleComplex(S, N, bar_differential, "group")


def build_rack_complex(S: Shalgebra, N) -> TupleComplex:
    if not S.report.ok("III"):
        raise AxiomError("the action is not self-distributive",
                         witness=S.report.witness("III"))
    return TupleComplex(S, N, rack_differential, "rack")


# -- degeneracies ---------------------------------------------------------------


DEGENERACY_FLAVORS = ("monoid", "spindle", "adjacent-equal-singletons")


def _is_degenerate(g: BracketedTuple, flavor, unit):
    if flavor == "monoid":
        return len(g.partition) == 1 and unit in g.elements
    if flavor == "spindle":
        return (all(k == 1 for k in g.partition)
                and any(a == b for a, b in zip(g.elements, g.elements[1:])))
    # adjacent-equal-singletons: some neighbouring pair of size-one blocks
    # carries the same element
    pos = 0
    for k1, k2 in zip(g.partition, g.partition[1:]):
        if k1 == 1 and k2 == 1 and g.elements[pos] == g.elements[pos + 1]:
            return True
        pos += k1
    return False


def degenerate_span(S: Shalgebra, N, flavor):
    """Spanning generators of the degenerate subcomplex, per degree.

    monoid: one-block tuples containing the unit (unit insertion images);
    spindle: all-ones tuples with an adjacent repeat (diagonal images,
    needs idempotence); adjacent-equal-singletons: any generator with two
    neighbouring size-one blocks holding equal elements.
    """
    if flavor not in DEGENERACY_FLAVORS:
        raise StructureError(f"unknown degeneracy flavor {flavor!r}")
    if flavor == "monoid" and S.unit is None:
        raise StructureError("monoid degeneracies need a unit element")
    if flavor == "spindle" and not S.report.ok("I"):
        raise AxiomError("spindle degeneracies need idempotence (axiom I)",
                         witness=S.report.witness("I"))
    out = {}
    for n in range(1, N + 1):
        gens = []
        for partition in compositions(n):
            for elements in product(range(S.size), repeat=n):
                g = BracketedTuple(partition, elements)
                if _is_degenerate(g, flavor, S.unit):
                    gens.append(g)
        out[n] = tuple(gens)
    return out


def degenerate_closure_violations(S: Shalgebra, N, flavor):
    """Degenerate generators whose boundary leaves the degenerate span."""
    span = degenerate_span(S, N, flavor)
    bad = []
    for n in range(2, N + 1):
        lower = set(span.get(n - 1, ()))
        for g in span[n]:
            for t in boundary_generator(g, S):
                if t not in lower:
                    bad.append((g, t))
                    break
    return bad


# -- qualgebra extension cells ---------------------------------------------------


class ExtraCell(NamedTuple):
    """A relation cell attached beyond the regular prism generators.

    kind  B3    degree 3, labels (a, b): fills the twisted-commutativity
                relation; boundary (a|b) + (b, a◁b) - (a, b).
          D3    degree 3, labels (a,): fills the idempotence square;
                boundary (a|a).
          B4_1  degree 4, labels (a, b): twist cell over (a,b)|b, boundary
                found by sign resolution (may be absent).
          B4_2  degree 4, labels (a, b): twist cell over a|(a,b), likewise.
          B4_3  degree 4, labels (a, b, c): boundary
                (a|b|c) + (a|(c, b◁c)) - (a|(b, c)).
          B4_4  degree 4, labels (a, b, c): boundary
                (a|b|c) + ((b, a◁b)|c) - B3(a◁c, b◁c) - ((a,b)|c) + B3(a,b).
    """

    kind: str
    labels: tuple

    @property
    def degree(self):
        return 3 if self.kind in ("B3", "D3") else 4

    def pretty(self, names=None):
        def name(x):
            return names[x] if names else str(x)

        return f"{self.kind}({','.join(name(x) for x in self.labels)})"


def _b3_boundary(a, b, S):
    terms = {}
    for g, c in ((BracketedTuple((1, 1), (a, b)), 1),
                 (BracketedTuple((2,), (b, S.act(a, b))), 1),
                 (BracketedTuple((2,), (a, b)), -1)):
        nc = terms.get(g, 0) + c
        if nc:
            terms[g] = nc
        else:
            del terms[g]
    return terms


def _b4_3_boundary(a, b, c, S):
    terms = {}
    for g, cf in ((BracketedTuple((1, 1, 1), (a, b, c)), 1),
                  (BracketedTuple((1, 2), (a, c, S.act(b, c))), 1),
                  (BracketedTuple((1, 2), (a, b, c)), -1)):
        nc = terms.get(g, 0) + cf
        if nc:
            terms[g] = nc
        else:
            del terms[g]
    return terms


def _b4_4_boundary(a, b, c, S):
    terms = {}
    for g, cf in ((BracketedTuple((1, 1, 1), (a, b, c)), 1),
                  (BracketedTuple((2, 1), (b, S.act(a, b), c)), 1),
                  (ExtraCell("B3", (S.act(a, c), S.act(b, c))), -1),
                  (BracketedTuple((2, 1), (a, b, c)), -1),
                  (ExtraCell("B3", (a, b)), 1)):
        nc = terms.get(g, 0) + cf
        if nc:
            terms[g] = nc
        else:
            del terms[g]
    return terms


def _word_values(S, letters):
    """Values of all ·-words of length <= 3 over the letters and their inverses."""
    alphabet = set(letters)
    for x in letters:
        alphabet.add(S.group_inverse(x))
    values = set(alphabet)
    for u, v in product(alphabet, repeat=2):
        values.add(S.mul(u, v))
    for u, v, w in product(alphabet, repeat=3):
        values.add(S.mul(S.mul(u, v), w))
    return sorted(values)


def resolve_twist_cell(kind, a, b, S):
    """Search the boundary of a degree-4 twist cell (B4_1 or B4_2).

    The supported cells are one regular prism generator — (a,b)|b for B4_1,
    a|(a,b) for B4_2 — and three B3 cells.  The regular cell is fixed with
    coefficient +1 (the global sign is a free choice); each B3 slot ranges
    over ±1 coefficients and labels built from words of length <= 3 in a, b
    and their group inverses.  An assignment is accepted when the total
    boundary vanishes; solutions are normalised by cancelling opposite
    pairs and must be unique.

    Returns ("ok", terms) with the full degree-4 boundary chain, or
    ("no_solution" | "ambiguous", detail).
    """
    if kind == "B4_1":
        base = BracketedTuple((2, 1), (a, b, b))
    elif kind == "B4_2":
        base = BracketedTuple((1, 2), (a, a, b))
    else:
        raise StructureError(f"not a twist cell kind: {kind}")
    base_boundary = boundary_generator(base, S)
    values = _word_values(S, (a, b))
    b3_cache = {(x, y): _b3_boundary(x, y, S) for x in values for y in values}

    options = [(s, lbl) for s in (1, -1) for lbl in sorted(b3_cache)]
    solutions = {}
    for combo in combinations_with_replacement(options, 3):
        total = dict(base_boundary)
        for s, lbl in combo:
            for g, c in b3_cache[lbl].items():
                nc = total.get(g, 0) + s * c
                if nc:
                    total[g] = nc
                else:
                    del total[g]
        if total:
            continue
        net = {}
        for s, lbl in combo:
            net[lbl] = net.get(lbl, 0) + s
        signature = frozenset((lbl, c) for lbl, c in net.items() if c)
        solutions.setdefault(signature, net)
    if not solutions:
        return "no_solution", None
    if len(solutions) > 1:
        return "ambiguous", sorted(str(sorted(sig)) for sig in solutions)
    (net,) = solutions.values()
    terms = {base: 1}
    for (x, y), c in sorted(net.items()):
        if c:
            terms[ExtraCell("B3", (x, y))] = c
    return "ok", terms


# -- the prismatic complex -------------------------------------------------------


MODES = ("plain", "qualgebra", "normalized")


class PrismaticComplex:
    """Generators, boundaries and homology of one shalgebra, up to degree N.

    mode "plain" is the bare prism complex; "qualgebra" adds the relation
    cells (B3 and, by default, D3 in degree 3; the B4 family in degree 4);
    "normalized" is the qualgebra complex with every generator containing
    an adjacent equal pair of singleton blocks collapsed to zero (D3 cells
    are dropped there because their boundary collapses with them).

    Homology is reliable for degrees below N; degree N itself needs
    allow_truncation.
    """

    def __init__(self, S, N, mode, generators, boundaries_terms, warnings, dropped):
        self.S = S
        self.N = N
        self.mode = mode
        self.warnings = tuple(warnings)
        self._gens = generators
        self._dropped = dropped
        self._index = {n: {g: i for i, g in enumerate(gens)}
                       for n, gens in generators.items()}
        counts = {0: 0}
        boundaries = {}
        for n in range(1, N + 1):
            counts[n] = len(generators.get(n, ()))
            boundaries[n] = [self._chain_from_terms(n - 1, terms)
                             for terms in boundaries_terms.get(n, ())]
        self.cc = chains.ChainComplex(counts, boundaries, truncated=True)
        bad = self.cc.d_squared_violations()
        if bad:
            n, idx = bad[0]
            raise VerificationError(
                f"boundary squared is nonzero on {self._gens[n][idx]!r}")

    # -- generator bookkeeping --------------------------------------------

    def generators(self, n):
        return self._gens.get(n, ())

    def generator_count(self, n):
        return len(self._gens.get(n, ()))

    def index_of(self, gen):
        n = gen.degree
        try:
            return self._index[n][gen]
        except KeyError:
            raise StructureError(f"generator {gen!r} is not part of this complex")

    def _chain_from_terms(self, degree, terms):
        if degree == 0:
            return chains.Chain(0)
        idx = self._index.get(degree, {})
        out = {}
        for g, c in (terms.items() if isinstance(terms, dict) else terms):
            if g in self._dropped:
                continue
            if g not in idx:
                raise StructureError(f"generator {g!r} is not part of this complex")
            i = idx[g]
            nc = out.get(i, 0) + c
            if nc:
                out[i] = nc
            else:
                del out[i]
        return chains.Chain(degree, out)

    def chain(self, degree, terms) -> chains.Chain:
        """Index-space chain from {generator: coefficient} terms.

        In normalized mode, terms on collapsed (degenerate) generators are
        dropped, matching the quotient map.
        """
        if not 1 <= degree <= self.N:
            raise StructureError(f"degree {degree} outside built range 1..{self.N}")
        return self._chain_from_terms(degree, terms)

    # -- homology ----------------------------------------------------------

    def homology(self, n, allow_truncation=False):
        return self.cc.homology(n, allow_truncation)

    def class_of(self, terms_or_chain, degree=None, allow_truncation=False):
        if isinstance(terms_or_chain, chains.Chain):
            z = terms_or_chain
        else:
            z = self.chain(degree, terms_or_chain)
        return self.cc.class_coordinates(z, allow_truncation)

    def d_squared_violations(self, degrees=None):
        return self.cc.d_squared_violations(degrees)

    def __repr__(self):
        return (f"<PrismaticComplex mode={self.mode} size={self.S.size} N={self.N} "
                f"counts={[self.generator_count(n) for n in range(1, self.N + 1)]}>")


def build_complex(S: Shalgebra, N, mode="plain", include_d3=True) -> PrismaticComplex:
    """Construct the prismatic complex of S through degree N.

    Refuses structures that fail the required axioms (the four shalgebra
    axioms for plain mode, all seven for the extended modes); the witness
    tuple rides along in the error.  The built complex always passes the
    boundary-squared check, which doubles as a runtime regression of the
    axiom arithmetic.
    """
    if mode not in MODES:
        raise StructureError(f"unknown mode {mode!r}; pick one of {MODES}")
    if N < 1:
        raise StructureError("max degree must be at least 1")
    if not S.report.shalgebra_ok:
        name, witness = S.report.first_failure(("H", "YI", "IY", "III"))
        raise AxiomError(f"not a shalgebra: axiom {name} fails at {witness}",
                         witness=witness)
    if mode in ("qualgebra", "normalized") and not S.report.qualgebra_ok:
        name, witness = S.report.first_failure()
        raise AxiomError(f"not a qualgebra: axiom {name} fails at {witness}",
                         witness=witness)

    generators = {}
    boundary_terms = {}
    for n in range(1, N + 1):
        gens = []
        for partition in compositions(n):
            for elements in product(range(S.size), repeat=n):
                gens.append(BracketedTuple(partition, elements))
        generators[n] = gens
        boundary_terms[n] = [boundary_generator(g, S) for g in gens]

    warnings = []
    if mode in ("qualgebra", "normalized"):
        rng = range(S.size)
        if N >= 3:
            for a, b in product(rng, repeat=2):
                generators[3].append(ExtraCell("B3", (a, b)))
                boundary_terms[3].append(_b3_boundary(a, b, S))
            if include_d3 and mode == "qualgebra":
                # In normalized mode the idempotence square is collapsed, so
                # the D3 cells would be boundary-free; they are left out there.
                for a in rng:
                    generators[3].append(ExtraCell("D3", (a,)))
                    boundary_terms[3].append({BracketedTuple((1, 1), (a, a)): 1})
        if N >= 4:
            if S.is_group:
                for kind in ("B4_1", "B4_2"):
                    for a, b in product(rng, repeat=2):
                        status, terms = resolve_twist_cell(kind, a, b, S)
                        if status == "ok":
                            generators[4].append(ExtraCell(kind, (a, b)))
                            boundary_terms[4].append(terms)
                        else:
                            warnings.append({"cell": kind, "labels": (a, b),
                                             "reason": status})
            else:
                warnings.append({"cell": "B4_1/B4_2", "labels": None,
                                 "reason": "not_a_group"})
            for a, b, c in product(rng, repeat=3):
                generators[4].append(ExtraCell("B4_3", (a, b, c)))
                boundary_terms[4].append(_b4_3_boundary(a, b, c, S))
            for a, b, c in product(rng, repeat=3):
                generators[4].append(ExtraCell("B4_4", (a, b, c)))
                boundary_terms[4].append(_b4_4_boundary(a, b, c, S))

    dropped = frozenset()
    if mode == "normalized":
        violations = degenerate_closure_violations(S, N, "adjacent-equal-singletons")
        if violations:
            raise VerificationError(
                f"degenerate span is not closed under the boundary: {violations[0]}")
        span = degenerate_span(S, N, "adjacent-equal-singletons")
        dropped = frozenset(g for gens in span.values() for g in gens)
        filtered_gens = {}
        filtered_terms = {}
        for n in generators:
            keep = [(g, t) for g, t in zip(generators[n], boundary_terms[n])
                    if g not in dropped]
            filtered_gens[n] = [g for g, _ in keep]
            filtered_terms[n] = [{h: c for h, c in t.items() if h not in dropped}
                                 for _, t in keep]
        generators, boundary_terms = filtered_gens, filtered_terms

    return PrismaticComplex(S, N, mode, generators, boundary_terms, warnings, dropped)


def extend_qualgebra(K: PrismaticComplex, include_d3=True) -> PrismaticComplex:
    """The qualgebra-extended complex over the same structure and degree range."""
    if K.mode != "plain":
        raise StructureError("extend_qualgebra expects a plain-mode complex")
    return build_complex(K.S, K.N, mode="qualgebra", include_d3=include_d3)


@lru_cache(maxsize=32)
def cached_complex(S: Shalgebra, N, mode="plain", include_d3=True) -> PrismaticComplex:
    return build_complex(S, N, mode=mode, include_d3=include_d3)


def prismatic_homology(S: Shalgebra, n) -> chains.HomologyGroup:
    """H_n of the plain prismatic complex (built through degree n+1)."""
    return cached_complex(S, n + 1, "plain").homology(n)


def qualgebra_homology(S: Shalgebra, n, include_d3=True) -> chains.HomologyGroup:
    """H_n of the qualgebra-extended complex (built through degree n+1)."""
    return cached_complex(S, n + 1, "qualgebra", include_d3).homology(n)
