"""Finite carriers with two binary operations and their seven axioms.

A carrier is {0, ..., size-1}; the two operations are written `dot`
(multiplication, a·b) and `tri` (right action, a◁b).  The seven axiom
names used throughout:

    H    (a·b)·c == a·(b·c)                 associativity
    YI   (a·b)◁c == (a◁c)·(b◁c)             distributivity
    IY   (a◁b)◁c == a◁(b·c)                 exponential law
    III  (a◁b)◁c == (a◁c)◁(b◁c)             self-distributivity
    II   x -> x◁b is a bijection for all b  right invertibility
    I    a◁a == a                           idempotence
    T    a·b == b·(a◁b)                     twisted commutativity

A *shalgebra* satisfies H, YI, IY, III; a *qualgebra* satisfies all seven.
The model case is a group with a·b the product and a◁b = b¯¹ab.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import AxiomError, StructureError

AXIOM_NAMES = ("H", "YI", "IY", "III", "II", "I", "T")

AXIOM_EQUATIONS = {
    "H": "(a.b).c == a.(b.c)",
    "YI": "(a.b)<c == (a<c).(b<c)",
    "IY": "(a<b)<c == a<(b.c)",
    "III": "(a<b)<c == (a<c)<(b<c)",
    "II": "x -> x<b is a bijection for every b",
    "I": "a<a == a",
    "T": "a.b == b.(a<b)",
}


class OperationTable:
    """A total binary operation on {0..size-1}, stored row-major: rows[a][b] = a op b."""

    __slots__ = ("size", "rows")

    def __init__(self, rows):
        try:
            rows = tuple(tuple(int(v) for v in row) for row in rows)
        except (TypeError, ValueError) as exc:
            raise StructureError(f"operation table must be a square array of integers: {exc}")
        n = len(rows)
        if n == 0:
            raise StructureError("operation table must be non-empty")
        for a, row in enumerate(rows):
            if len(row) != n:
                raise StructureError(f"row {a} has length {len(row)}, expected {n}")
            for b, v in enumerate(row):
                if not 0 <= v < n:
                    raise StructureError(f"entry [{a}][{b}] = {v} outside carrier [0, {n})")
        self.size = n
        self.rows = rows

    def __getitem__(self, ab):
        a, b = ab
        return self.rows[a][b]

    def as_array(self):
        return np.array(self.rows, dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, OperationTable) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"OperationTable(size={self.size})"


def _as_table(obj):
    return obj if isinstance(obj, OperationTable) else OperationTable(obj)


def _first_bad(eq):
    """Lexicographically smallest index where a boolean array is False, or None."""
    bad = np.argwhere(~eq)
    if bad.size == 0:
        return None
    return tuple(int(v) for v in bad[0])


@dataclass(frozen=True)
class AxiomStatus:
    ok: bool
    witness: tuple | None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class AxiomReport:
    """Pass/fail per axiom, with a lexicographically minimal counterexample on failure."""

    statuses: dict

    def ok(self, name):
        return self.statuses[name].ok

    def witness(self, name):
        return self.statuses[name].witness

    def all_ok(self, names=AXIOM_NAMES):
        return all(self.statuses[n].ok for n in names)

    @property
    def shalgebra_ok(self):
        return self.all_ok(("H", "YI", "IY", "III"))

    @property
    def qualgebra_ok(self):
        return self.all_ok(AXIOM_NAMES)

    def failures(self):
        return tuple(n for n in AXIOM_NAMES if not self.statuses[n].ok)

    def first_failure(self, names=AXIOM_NAMES):
        for n in names:
            if not self.statuses[n].ok:
                return n, self.statuses[n].witness
        return None

    def __str__(self):
        parts = []
        for n in AXIOM_NAMES:
            st = self.statuses[n]
            parts.append(f"{n}:{'ok' if st.ok else 'FAIL' + str(st.witness)}")
        return " ".join(parts)


def check_axioms(dot, tri) -> AxiomReport:
    """Test all seven axioms by exhaustive quantification over the carrier."""
    dot = _as_table(dot)
    tri = _as_table(tri)
    if dot.size != tri.size:
        raise StructureError(f"table sizes differ: {dot.size} vs {tri.size}")
    n = dot.size
    D = dot.as_array()
    T = tri.as_array()

    statuses = {}

    # Ternary axioms; argwhere row-major order makes witnesses lexicographically minimal.
    lhs = D[D]                      # (a,b,c) -> (ab)c
    rhs = D[:, D]                   # (a,b,c) -> a(bc)
    statuses["H"] = _status(lhs == rhs)

    lhs = T[D]                      # (ab)<c
    rhs = D[T[:, None, :], T[None, :, :]]   # (a<c)(b<c)
    statuses["YI"] = _status(lhs == rhs)

    lhs = T[T]                      # (a<b)<c
    rhs = T[:, D]                   # a<(bc)
    statuses["IY"] = _status(lhs == rhs)

    lhs = T[T]
    rhs = T[T[:, None, :], T[None, :, :]]   # (a<c)<(b<c)
    statuses["III"] = _status(lhs == rhs)

    # II: each column of tri, read as x -> x<b, must be a permutation.
    counts = np.zeros((n, n), dtype=np.int64)
    cols = np.broadcast_to(np.arange(n)[None, :], (n, n))
    np.add.at(counts, (T, cols), 1)
    statuses["II"] = _status(counts == 1)

    statuses["I"] = _status(np.diagonal(T) == np.arange(n))

    rhs = D[cols, T]                # b.(a<b)
    statuses["T"] = _status(D == rhs)

    return AxiomReport(statuses)


def _status(eq):
    w = _first_bad(np.asarray(eq))
    return AxiomStatus(w is None, w)


class Shalgebra:
    """A finite carrier with operations (·, ◁) satisfying H, YI, IY, III.

    Construction runs the full axiom check; the report is cached so the
    qualgebra-only axioms (II, I, T) can be queried without re-testing.
    Instances are immutable and hashable.
    """

    def __init__(self, dot, tri, names=None, _validate=True):
        self.dot = _as_table(dot)
        self.tri = _as_table(tri)
        if self.dot.size != self.tri.size:
            raise StructureError(f"table sizes differ: {self.dot.size} vs {self.tri.size}")
        self.size = self.dot.size
        self.report = check_axioms(self.dot, self.tri)
        if _validate and not self.report.shalgebra_ok:
            name, witness = self.report.first_failure(("H", "YI", "IY", "III"))
            raise AxiomError(
                f"axiom {name} fails at {witness}: {AXIOM_EQUATIONS[name]}", witness=witness
            )
        if names is not None:
            names = tuple(str(s) for s in names)
            if len(names) != self.size:
                raise StructureError(f"expected {self.size} names, got {len(names)}")
        self.names = names
        self.unit = self._find_unit()
        self._dot_rows = self.dot.rows
        self._tri_rows = self.tri.rows
        self._tri_inv_rows = None
        self._group_info = None

    def _find_unit(self):
        rows = self.dot.rows
        for e in range(self.size):
            if all(rows[e][x] == x and rows[x][e] == x for x in range(self.size)):
                return e
        return None

    # -- operations ------------------------------------------------------

    def mul(self, a, b):
        return self._dot_rows[a][b]

    def act(self, a, b):
        """a◁b."""
        return self._tri_rows[a][b]

    def act_inv(self, a, b):
        """The unique x with x◁b == a.  Needs axiom II."""
        if self._tri_inv_rows is None:
            if not self.report.ok("II"):
                raise AxiomError("axiom II fails; the action is not invertible",
                                 witness=self.report.witness("II"))
            n = self.size
            inv = [[0] * n for _ in range(n)]
            for x in range(n):
                for b in range(n):
                    inv[self._tri_rows[x][b]][b] = x
            self._tri_inv_rows = tuple(tuple(row) for row in inv)
        return self._tri_inv_rows[a][b]

    def product(self, seq):
        """Left-associated ·-product of a non-empty sequence (or the unit if empty)."""
        it = iter(seq)
        try:
            acc = next(it)
        except StopIteration:
            if self.unit is None:
                raise StructureError("empty product needs a unit element")
            return self.unit
        for x in it:
            acc = self._dot_rows[acc][x]
        return acc

    def act_by_all(self, a, seq):
        """Iterated action a◁s1◁s2◁...; equals a◁(s1·s2·...) by the exponential law."""
        for s in seq:
            a = self._tri_rows[a][s]
        return a

    # -- classification ---------------------------------------------------

    @property
    def is_qualgebra(self):
        return self.report.qualgebra_ok

    def group_info(self):
        if self._group_info is None:
            self._group_info = is_group_table(self.dot)
        return self._group_info

    @property
    def is_group(self):
        return self.group_info()[0]

    def group_inverse(self, a):
        ok, reason, unit, inv = self.group_info()
        if not ok:
            raise StructureError(f"not a group: {reason}")
        return inv[a]

    def name_of(self, a):
        return self.names[a] if self.names else str(a)

    # -- plumbing ----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Shalgebra)
                and self.dot.rows == other.dot.rows
                and self.tri.rows == other.tri.rows)

    def __hash__(self):
        return hash((self.dot.rows, self.tri.rows))

    def __repr__(self):
        kind = "qualgebra" if self.is_qualgebra else "shalgebra"
        return f"<{kind} of size {self.size}>"

    def to_dict(self):
        data = {"size": self.size,
                "dot": [list(r) for r in self.dot.rows],
                "tri": [list(r) for r in self.tri.rows]}
        if self.names:
            data["names"] = list(self.names)
        return data


def is_group_table(dot):
    """Check a group structure; returns (ok, first failed law or None, unit, inverses)."""
    dot = _as_table(dot)
    D = dot.as_array()
    if _first_bad(D[D] == D[:, D]) is not None:
        return False, "associativity", None, None
    n = dot.size
    unit = None
    for e in range(n):
        if all(dot.rows[e][x] == x and dot.rows[x][e] == x for x in range(n)):
            unit = e
            break
    if unit is None:
        return False, "identity", None, None
    inv = [None] * n
    for a in range(n):
        for b in range(n):
            if dot.rows[a][b] == unit and dot.rows[b][a] == unit:
                inv[a] = b
                break
        if inv[a] is None:
            return False, "inverses", unit, None
    return True, None, unit, tuple(inv)


def conjugation_qualgebra(group_dot, names=None) -> Shalgebra:
    """The qualgebra of a group acting on itself by conjugation: a◁b = b¯¹·a·b."""
    group_dot = _as_table(group_dot)
    ok, reason, unit, inv = is_group_table(group_dot)
    if not ok:
        raise StructureError(f"not a group table: {reason} fails")
    n = group_dot.size
    rows = group_dot.rows
    tri = [[rows[rows[inv[b]][a]][b] for b in range(n)] for a in range(n)]
    return Shalgebra(group_dot, tri, names=names)


@dataclass(frozen=True)
class Classification:
    shelf: str       # none / shelf / spindle / rack / quandle, for the action alone
    pair: str        # none / shalgebra / qualgebra, for the pair of operations
    group: bool      # whether the multiplication alone is a group


def classify(dot, tri) -> Classification:
    """Finest applicable labels for the action, the operation pair, and the multiplication."""
    report = check_axioms(dot, tri)
    if not report.ok("III"):
        shelf = "none"
    else:
        has_i, has_ii = report.ok("I"), report.ok("II")
        shelf = ("quandle" if has_i and has_ii
                 else "rack" if has_ii
                 else "spindle" if has_i
                 else "shelf")
    pair = ("qualgebra" if report.qualgebra_ok
            else "shalgebra" if report.shalgebra_ok
            else "none")
    return Classification(shelf, pair, is_group_table(dot)[0])


def diagonal_action(elements, h, S: Shalgebra):
    """Componentwise action: (g1,...,gk)◁h."""
    rows = S.tri.rows
    return tuple(rows[g][h] for g in elements)


def axiom_dependency_check(obj, tri=None) -> bool:
    """Whether self-distributivity (III) holds, given that IY and T do.

    Accepts a Shalgebra or a pair of tables.  Raises if IY or T fails, so a
    True return witnesses the implication IY ∧ T => III on this carrier.
    """
    report = obj.report if isinstance(obj, Shalgebra) else check_axioms(obj, tri)
    if not report.all_ok(("IY", "T")):
        name, witness = report.first_failure(("IY", "T"))
        raise AxiomError(f"precondition violated: axiom {name} fails at {witness}",
                         witness=witness)
    return report.ok("III")


# -- standard examples ------------------------------------------------------

def cyclic_group_table(n) -> OperationTable:
    return OperationTable([[(a + b) % n for b in range(n)] for a in range(n)])


def symmetric_group_table(k):
    """The symmetric group on k letters; returns (table, names).

    Elements are permutations of range(k) in lexicographic order of their
    one-line form; the product p·q acts by q first: (p·q)(x) = p(q(x)).
    """
    perms = sorted(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    rows = [[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    names = ["".join(str(v) for v in p) for p in perms]
    return OperationTable(rows), names


def conj_cyclic(n) -> Shalgebra:
    """Conjugation qualgebra of the cyclic group of order n (the action is trivial)."""
    return conjugation_qualgebra(cyclic_group_table(n), names=[str(i) for i in range(n)])


def conj_symmetric(k) -> Shalgebra:
    table, names = symmetric_group_table(k)
    return conjugation_qualgebra(table, names=names)


def one_element() -> Shalgebra:
    return Shalgebra([[0]], [[0]], names=["e"])


def projection_shalgebra(dot) -> Shalgebra:
    """Projection action a◁b = a over an arbitrary associative multiplication."""
    dot = _as_table(dot)
    tri = [[a for _ in range(dot.size)] for a in range(dot.size)]
    return Shalgebra(dot, tri)


def mul_mod_shalgebra(n) -> Shalgebra:
    """Projection shelf over multiplication mod n: commutative, unital, not a group."""
    return projection_shalgebra([[a * b % n for b in range(n)] for a in range(n)])


# -- structure files ---------------------------------------------------------

def parse_structure_tables(data):
    """Raw tables from a structure dict; no axioms are assumed."""
    if not isinstance(data, dict):
        raise StructureError("structure file must contain a JSON object")
    for key in ("dot", "tri"):
        if key not in data:
            raise StructureError(f"structure file misses field '{key}'")
    dot = OperationTable(data["dot"])
    tri = OperationTable(data["tri"])
    if "size" in data and int(data["size"]) != dot.size:
        raise StructureError(f"declared size {data['size']} != table size {dot.size}")
    if dot.size != tri.size:
        raise StructureError(f"table sizes differ: {dot.size} vs {tri.size}")
    names = data.get("names")
    if names is not None:
        names = [str(s) for s in names]
        if len(names) != dot.size:
            raise StructureError(f"expected {dot.size} names, got {len(names)}")
    return dot, tri, names


def load_structure_tables(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise StructureError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise StructureError(f"invalid JSON in {path}: line {exc.lineno}: {exc.msg}")
    return parse_structure_tables(data)


def load_structure(path) -> Shalgebra:
    dot, tri, names = load_structure_tables(path)
    return Shalgebra(dot, tri, names=names)


def save_structure(S: Shalgebra, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(S.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def random_tables(size, rng):
    """A uniformly random pair of tables; handy for searching small examples."""
    dot = [[rng.randrange(size) for _ in range(size)] for _ in range(size)]
    tri = [[rng.randrange(size) for _ in range(size)] for _ in range(size)]
    return OperationTable(dot), OperationTable(tri)
