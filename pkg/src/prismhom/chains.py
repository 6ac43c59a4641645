"""Finitely generated free integer chain complexes and exact homology.

Boundary data is stored sparsely (one coefficient dict per generator);
all reduction is done in exact integer arithmetic.  Python integers grow
as needed, so intermediate coefficient blow-up during Smith reduction is
harmless, only slow.  Pivoting always picks a smallest-magnitude entry,
which keeps coefficients tame on the sparse boundary matrices produced
by the rest of the package.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotACycleError, StructureError, VerificationError


class Chain:
    """A sparse integer combination of the generators of one degree."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree, terms=None):
        self.degree = degree
        self.terms = {}
        if terms:
            for g, c in (terms.items() if isinstance(terms, dict) else terms):
                if c:
                    nc = self.terms.get(g, 0) + c
                    if nc:
                        self.terms[g] = nc
                    else:
                        del self.terms[g]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Chain) and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def _combine(self, other, sign):
        if self.degree != other.degree:
            raise StructureError(f"degree mismatch: {self.degree} vs {other.degree}")
        out = dict(self.terms)
        for g, c in other.terms.items():
            nc = out.get(g, 0) + sign * c
            if nc:
                out[g] = nc
            else:
                out.pop(g, None)
        res = Chain(self.degree)
        res.terms = out
        return res

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, k):
        res = Chain(self.degree)
        if k:
            res.terms = {g: k * c for g, c in self.terms.items()}
        return res

    def __rmul__(self, k):
        return self.scaled(int(k))

    def items(self):
        return self.terms.items()

    def __repr__(self):
        body = " ".join(f"{c:+d}*[{g}]" for g, c in sorted(self.terms.items()))
        return f"Chain(deg={self.degree}, {body or '0'})"


@dataclass(frozen=True)
class HomologyGroup:
    """Isomorphism type of a f.g. abelian group: Z^free_rank + sum of Z/d_i."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise StructureError("free rank must be non-negative")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        prev = None
        for d in self.torsion:
            if d < 2:
                raise StructureError(f"torsion coefficient {d} < 2")
            if prev is not None and d % prev != 0:
                raise StructureError(f"torsion coefficients must divide in order: {prev}, {d}")
            prev = d

    @property
    def trivial(self):
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


# -- Smith normal form --------------------------------------------------------


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _snf(A, m, n, need_u=False, need_v=False):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (diag, U, Uinv, V, Vinv) with U·A·V diagonal, diag the list of
    nonzero diagonal entries d1 | d2 | ..., positive and in divisibility
    order.  Transform matrices are dense lists (None when not requested).
    A is consumed.
    """
    U = _identity(m) if need_u else None
    Uinv = _identity(m) if need_u else None
    V = _identity(n) if need_v else None
    Vinv = _identity(n) if need_v else None

    def row_add(i, j, q):
        # row_i += q * row_j
        Ai, Aj = A[i], A[j]
        for k in range(n):
            if Aj[k]:
                Ai[k] += q * Aj[k]
        if U is not None:
            Ui, Uj = U[i], U[j]
            for k in range(m):
                if Uj[k]:
                    Ui[k] += q * Uj[k]
            for row in Uinv:
                row[j] -= q * row[i]

    def col_add(j, i, q):
        # col_j += q * col_i
        for row in A:
            if row[i]:
                row[j] += q * row[i]
        if V is not None:
            for row in V:
                if row[i]:
                    row[j] += q * row[i]
            Vi, Vj = Vinv[i], Vinv[j]
            for k in range(n):
                if Vj[k]:
                    Vi[k] -= q * Vj[k]

    def row_swap(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]
            for row in Uinv:
                row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        if i == j:
            return
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_negate(i):
        A[i] = [-v for v in A[i]]
        if U is not None:
            U[i] = [-v for v in U[i]]
            for row in Uinv:
                row[i] = -row[i]

    diag = []
    t = 0
    while t < m and t < n:
        # smallest-magnitude nonzero entry of the trailing submatrix
        piv = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                v = Ai[j]
                if v and (piv is None or abs(v) < piv[0]):
                    piv = (abs(v), i, j)
                    if abs(v) == 1:
                        break
            if piv and piv[0] == 1:
                break
        if piv is None:
            break
        row_swap(t, piv[1])
        col_swap(t, piv[2])
        if A[t][t] < 0:
            row_negate(t)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                v = A[i][t]
                if v:
                    q = v // p
                    if q:
                        row_add(i, t, -q)
                    if A[i][t]:
                        # remainder smaller than pivot: promote it
                        row_swap(t, i)
                        if A[t][t] < 0:
                            row_negate(t)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                v = A[t][j]
                if v:
                    q = v // p
                    if q:
                        col_add(j, t, -q)
                    if A[t][j]:
                        col_swap(t, j)
                        if A[t][t] < 0:
                            row_negate(t)
                        dirty = True
                        break
            if dirty:
                continue
            # pivot must divide the whole trailing block for the divisor chain
            p = A[t][t]
            offender = None
            for i in range(t + 1, m):
                Ai = A[i]
                for j in range(t + 1, n):
                    if Ai[j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender, 1)
        diag.append(A[t][t])
        t += 1
    return diag, U, Uinv, V, Vinv


def smith_normal_form(matrix):
    """Invariant factors and rank of an integer matrix.

    Returns (factors, rank) with factors = (d1, ..., dr), d1 | d2 | ... all
    positive, and rank r.  Accepts any rectangular list-of-rows (or numpy
    array); an empty matrix has rank 0.
    """
    rows = [[int(v) for v in row] for row in matrix]
    m = len(rows)
    n = len(rows[0]) if m else 0
    if any(len(r) != n for r in rows):
        raise StructureError("matrix rows have unequal lengths")
    diag, *_ = _snf(rows, m, n)
    return tuple(diag), len(diag)


# -- chain complexes ----------------------------------------------------------


class ChainComplex:
    """Graded free Z-modules with sparse boundary maps.

    counts[n] is the number of generators in degree n; boundaries[n] lists,
    for every degree-n generator, its boundary as a Chain of degree n-1.
    Degrees not listed are zero.  With truncated=True the top stored degree
    is a window into a larger complex, so homology there is refused unless
    the caller explicitly allows ∂=0 truncation.
    """

    def __init__(self, counts, boundaries, truncated=False):
        self.counts = {int(k): int(v) for k, v in dict(counts).items() if int(v) >= 0}
        self.boundaries = {}
        self.truncated = truncated
        self.top = max((d for d, c in self.counts.items() if c), default=0)
        for n, chains in boundaries.items():
            n = int(n)
            if len(chains) != self.count(n):
                raise StructureError(
                    f"degree {n}: {len(chains)} boundaries for {self.count(n)} generators")
            lower = self.count(n - 1)
            for idx, ch in enumerate(chains):
                if ch.degree != n - 1:
                    raise StructureError(f"boundary of generator ({n},{idx}) has wrong degree")
                for g in ch.terms:
                    if not 0 <= g < lower:
                        raise StructureError(
                            f"boundary of ({n},{idx}) hits unknown generator ({n - 1},{g})")
            self.boundaries[n] = list(chains)
        for n in range(1, self.top + 1):
            if self.count(n) and n not in self.boundaries:
                raise StructureError(f"missing boundaries for degree {n}")
        self._hdata = {}

    def count(self, n):
        return self.counts.get(n, 0)

    @property
    def degrees(self):
        return tuple(sorted(self.counts))

    def boundary_of(self, n, index):
        if not 0 <= index < self.count(n):
            raise StructureError(f"unknown generator ({n},{index})")
        if n == 0:
            return Chain(-1)
        return self.boundaries[n][index]

    def boundary(self, chain: Chain) -> Chain:
        """Integer-linear extension of the generator boundaries."""
        if chain.degree < 1:
            raise StructureError("boundary needs degree >= 1")
        out = Chain(chain.degree - 1)
        stored = self.boundaries.get(chain.degree)
        count = self.count(chain.degree)
        for g, c in chain.terms.items():
            if not 0 <= g < count:
                raise StructureError(f"unknown generator ({chain.degree},{g})")
            out = out + (stored[g].scaled(c) if stored else Chain(chain.degree - 1))
        return out

    def d_squared_violations(self, degrees=None):
        """Generators whose boundary is not itself a cycle, as (degree, index) pairs."""
        if degrees is None:
            degrees = range(2, self.top + 1)
        bad = []
        for n in degrees:
            if n < 2:
                continue  # lands in degree <= 0; nothing to compose with
            for idx in range(self.count(n)):
                if self.boundary(self.boundaries[n][idx]):
                    bad.append((n, idx))
        return bad

    def matrix(self, n):
        """Dense matrix of ∂_n, rows = degree n-1 generators, columns = degree n."""
        rows, cols = self.count(n - 1), self.count(n)
        M = [[0] * cols for _ in range(rows)]
        for j, ch in enumerate(self.boundaries.get(n, [])):
            for g, c in ch.terms.items():
                M[g][j] = c
        return M

    # -- homology --------------------------------------------------------

    def _homology_data(self, n, allow_truncation):
        if n > self.top and self.truncated:
            raise StructureError(f"degree {n} was never constructed (top is {self.top})")
        if n == self.top and self.truncated and not allow_truncation:
            raise StructureError(
                f"homology at the top constructed degree {n} needs allow_truncation=True")
        key = n
        if key in self._hdata:
            return self._hdata[key]
        cols = self.count(n)
        # kernel of ∂_n via column transforms
        M = self.matrix(n)
        diag, _, _, V, Vinv = _snf(M, self.count(n - 1), cols, need_u=False, need_v=True)
        r = len(diag)
        kdim = cols - r
        vinv_cols = [[Vinv[i][j] for i in range(cols)] for j in range(cols)] if cols else []

        # image of ∂_{n+1}, written in kernel coordinates
        upper = self.boundaries.get(n + 1, [])
        Aprime = [[0] * len(upper) for _ in range(kdim)]
        for jcol, ch in enumerate(upper):
            w = [0] * cols
            for g, c in ch.terms.items():
                col = vinv_cols[g]
                for i in range(cols):
                    if col[i]:
                        w[i] += c * col[i]
            if any(w[:r]):
                raise VerificationError(
                    f"boundary of a degree-{n + 1} generator is not a cycle")
            for i in range(kdim):
                Aprime[i][jcol] = w[r + i]
        dprime, Uprime, _, _, _ = _snf(Aprime, kdim, len(upper), need_u=True, need_v=False)
        rprime = len(dprime)
        group = HomologyGroup(kdim - rprime, tuple(d for d in dprime if d > 1))
        data = {
            "group": group,
            "rank": r,
            "kdim": kdim,
            "vinv_cols": vinv_cols,
            "uprime": Uprime,
            "dprime": dprime,
        }
        self._hdata[key] = data
        return data

    def homology(self, n, allow_truncation=False) -> HomologyGroup:
        """H_n = Ker ∂_n / Im ∂_{n+1}, reported as free rank plus torsion."""
        return self._homology_data(n, allow_truncation)["group"]

    def class_coordinates(self, z: Chain, allow_truncation=False):
        """Canonical coordinates of the homology class of a cycle.

        Torsion coordinates come first (residues mod d_i for each invariant
        factor d_i > 1), then the free coordinates as plain integers.  Two
        cycles get equal coordinates exactly when their difference bounds.
        """
        n = z.degree
        data = self._homology_data(n, allow_truncation)
        cols = self.count(n)
        r, kdim = data["rank"], data["kdim"]
        w = [0] * cols
        for g, c in z.terms.items():
            if not 0 <= g < cols:
                raise StructureError(f"unknown generator ({n},{g})")
            col = data["vinv_cols"][g]
            for i in range(cols):
                if col[i]:
                    w[i] += c * col[i]
        if any(w[:r]):
            raise NotACycleError(f"chain in degree {n} is not a cycle",
                                 residue=self.boundary(z))
        kvec = w[r:]
        Uprime = data["uprime"]
        u = [sum(Uprime[i][j] * kvec[j] for j in range(kdim) if kvec[j]) for i in range(kdim)]
        dprime = data["dprime"]
        coords = []
        for i in range(kdim):
            if i < len(dprime):
                if dprime[i] > 1:
                    coords.append(u[i] % dprime[i])
            else:
                coords.append(u[i])
        return tuple(coords)


def boundary(chain: Chain, complex_: ChainComplex) -> Chain:
    return complex_.boundary(chain)


def verify_d_squared(complex_: ChainComplex, degrees=None):
    """Report of ∂∘∂ checks; empty violation list means the complex is consistent."""
    return complex_.d_squared_violations(degrees)


def export_boundary_triplets(complex_: ChainComplex, stream):
    """Plain-text sparse dump, one `degree row col value` line per entry."""
    for n in sorted(complex_.boundaries):
        for j, ch in enumerate(complex_.boundaries[n]):
            for g in sorted(ch.terms):
                stream.write(f"{n} {g} {j} {ch.terms[g]}\n")
