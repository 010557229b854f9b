"""Exact linear algebra over the integers.

Smith normal form with unimodular transforms, finitely presented abelian
groups, and induced maps between their cokernels.  All arithmetic uses
Python's arbitrary-precision integers; nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod


class IntMatrix:
    """Immutable integer matrix, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries) -> None:
        entries = tuple(int(x) for x in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ValueError(f"need {rows}*{cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, rows_list) -> "IntMatrix":
        rows_list = [list(r) for r in rows_list]
        r = len(rows_list)
        c = len(rows_list[0]) if rows_list else 0
        if any(len(row) != c for row in rows_list):
            raise ValueError("ragged rows")
        return cls(r, c, [x for row in rows_list for x in row])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def diagonal(cls, diag, rows=None, cols=None) -> "IntMatrix":
        diag = list(diag)
        n = len(diag)
        rows = n if rows is None else rows
        cols = n if cols is None else cols
        m = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            m[i][i] = d
        return cls(rows, cols, [x for row in m for x in row])

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        orows = other.to_rows()
        for i in range(self.rows):
            srow = self.row(i)
            acc = [0] * other.cols
            for k, a in enumerate(srow):
                if a:
                    orow = orows[k]
                    for j in range(other.cols):
                        acc[j] += a * orow[j]
            out.extend(acc)
        return IntMatrix(self.rows, other.cols, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, n: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [n * x for x in self.entries])

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        out = []
        for i in range(self.rows):
            out.extend(self.row(i))
            out.extend(other.row(i))
        return IntMatrix(self.rows, self.cols + other.cols, out)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         [self.entries[i * self.cols + j]
                          for j in range(self.cols) for i in range(self.rows)])

    def apply(self, vec):
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError("length mismatch")
        return tuple(sum(a * v for a, v in zip(self.row(i), vec)) for i in range(self.rows))

    def det(self) -> int:
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})"


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V = D with U, V unimodular and D in Smith normal form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self):
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D[i, i] for i in range(n))


def _smith(M: IntMatrix, want_u: bool, want_v: bool):
    """Diagonalize M by unimodular row/column operations.

    Pivots are chosen with minimal absolute value to keep coefficient
    growth in check.  Returns (diag, U_rows or None, V_rows or None).
    """
    r, c = M.rows, M.cols
    a = M.to_rows()
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)] if want_u else None
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)] if want_v else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        arow_s = a[src]
        arow_d = a[dst]
        for j in range(c):
            arow_d[j] += q * arow_s[j]
        if u is not None:
            urow_s = u[src]
            urow_d = u[dst]
            for j in range(r):
                urow_d[j] += q * urow_s[j]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        if v is not None:
            for row in v:
                row[dst] += q * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]

    n = min(r, c)
    t = 0
    while t < n:
        # minimal-absolute-value nonzero pivot in the trailing block
        piv = None
        best = None
        for i in range(t, r):
            arow = a[i]
            for j in range(t, c):
                x = arow[j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if piv is None:
            break
        if piv[0] != t:
            swap_rows(t, piv[0])
        if piv[1] != t:
            swap_cols(t, piv[1])

        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, r):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    if q:
                        add_row(i, t, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            # clear row t
            for j in range(t + 1, c):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    if q:
                        add_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty and all(a[i][t] == 0 for i in range(t + 1, r)) \
                    and all(a[t][j] == 0 for j in range(t + 1, c)):
                break

        # enforce divisibility of later entries by the pivot
        d = a[t][t]
        offender = None
        for i in range(t + 1, r):
            arow = a[i]
            for j in range(t + 1, c):
                if arow[j] % d != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue  # redo this pivot

        if d < 0:
            negate_row(t)
        t += 1

    return [a[i][i] for i in range(min(r, c))], u, v


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms: U*M*V = D, diag(D) a divisibility chain."""
    diag, u, v = _smith(M, True, True)
    D = IntMatrix.diagonal(diag, rows=M.rows, cols=M.cols) if min(M.rows, M.cols) \
        else IntMatrix.zero(M.rows, M.cols)
    return SmithDecomposition(IntMatrix.from_rows(u) if M.rows else IntMatrix(0, 0, []),
                              D,
                              IntMatrix.from_rows(v) if M.cols else IntMatrix(0, 0, []))


def smith_diagonal(M: IntMatrix):
    """Just the diagonal of the Smith form (no transform bookkeeping)."""
    diag, _, _ = _smith(M, False, False)
    return tuple(diag)


@dataclass(frozen=True)
class Presentation:
    """An abelian group given as coker(relations: Z^a -> Z^b).

    ``generators`` is b; the relation matrix has one column per relator.
    """

    generators: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise ValueError("relation matrix must have one row per generator")

    @classmethod
    def free(cls, rank: int) -> "Presentation":
        return cls(rank, IntMatrix.zero(rank, 0))

    @classmethod
    def cyclic(cls, n: int) -> "Presentation":
        if n == 0:
            return cls.free(1)
        return cls(1, IntMatrix.from_rows([[n]]))

    @classmethod
    def zero(cls) -> "Presentation":
        return cls(0, IntMatrix(0, 0, []))

    @classmethod
    def direct_sum(cls, *parts: "Presentation") -> "Presentation":
        gens = sum(p.generators for p in parts)
        cols = sum(p.relations.cols for p in parts)
        m = [[0] * cols for _ in range(gens)]
        ri = 0
        cj = 0
        for p in parts:
            for i in range(p.generators):
                for j in range(p.relations.cols):
                    m[ri + i][cj + j] = p.relations[i, j]
            ri += p.generators
            cj += p.relations.cols
        return cls(gens, IntMatrix(gens, cols, [x for row in m for x in row]))


@dataclass(frozen=True)
class GroupClass:
    """Isomorphism class Z^free_rank + Z/n1 + ... with n1 | n2 | ... (each >= 2)."""

    free_rank: int
    torsion_invariants: tuple

    def __post_init__(self):
        inv = tuple(int(n) for n in self.torsion_invariants)
        object.__setattr__(self, "torsion_invariants", inv)
        if any(n < 2 for n in inv):
            raise ValueError("torsion invariants must be >= 2")
        for x, y in zip(inv, inv[1:]):
            if y % x != 0:
                raise ValueError("torsion invariants must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion_invariants

    def order(self):
        """Group order, or None if infinite."""
        if self.free_rank:
            return None
        return prod(self.torsion_invariants, start=1)

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{n}" for n in self.torsion_invariants]
        return " + ".join(parts) if parts else "0"


def classify(P: Presentation) -> GroupClass:
    """Canonical invariant-factor decomposition of coker(relations)."""
    diag = smith_diagonal(P.relations)
    nonzero = [d for d in diag if d != 0]
    torsion = tuple(d for d in nonzero if d >= 2)
    return GroupClass(P.generators - len(nonzero), torsion)


def tensor_with_cyclic(P: Presentation, n: int) -> Presentation:
    """Presentation of P tensor Z/n: every generator acquires order n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    scaled = IntMatrix.diagonal([n] * P.generators)
    return Presentation(P.generators, P.relations.hstack(scaled))


def solvable(A: IntMatrix, b, snf: SmithDecomposition | None = None) -> bool:
    """Is A*x = b solvable over the integers?"""
    if snf is None:
        snf = smith_normal_form(A)
    ub = snf.U.apply(b)
    diag = snf.diagonal()
    for i, y in enumerate(ub):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if y != 0:
                return False
        elif y % d != 0:
            return False
    return True


def kernel_lattice(A: IntMatrix) -> IntMatrix:
    """Columns form a basis of ker(A: Z^cols -> Z^rows)."""
    diag, _, v = _smith(A, False, True)
    rank = sum(1 for d in diag if d != 0)
    cols = []
    for j in range(rank, A.cols):
        cols.append([v[i][j] for i in range(A.cols)])
    if not cols:
        return IntMatrix.zero(A.cols, 0)
    return IntMatrix(A.cols, len(cols),
                     [cols[j][i] for i in range(A.cols) for j in range(len(cols))])


def _inverse_unimodular(rows):
    """Inverse of a unimodular integer matrix (exact, via Fractions)."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    out = []
    for i in range(n):
        for j in range(n):
            val = a[i][j + n]
            if val.denominator != 1:
                raise ValueError("matrix is not unimodular")
            out.append(int(val))
    return IntMatrix(n, n, out)


class RelationError(ValueError):
    """The given generator map does not respect the relations."""


@dataclass(frozen=True)
class CokernelMap:
    """A homomorphism coker(src) -> coker(dst) induced by a map on generators."""

    matrix: IntMatrix
    src: Presentation
    dst: Presentation

    def cokernel(self) -> GroupClass:
        combined = self.matrix.hstack(self.dst.relations)
        return classify(Presentation(self.dst.generators, combined))

    def kernel(self) -> GroupClass:
        # preimage lattice of im(dst relations) under the generator map
        neg = IntMatrix(self.dst.relations.rows, self.dst.relations.cols,
                        [-x for x in self.dst.relations.entries])
        full = kernel_lattice(self.matrix.hstack(neg))
        proj = IntMatrix(self.src.generators, full.cols,
                         [full[i, j] for i in range(self.src.generators)
                          for j in range(full.cols)])
        # lattice basis for the projected generators
        diag, u, _ = _smith(proj, True, False)
        rank = sum(1 for d in diag if d != 0)
        if rank == 0:
            return GroupClass(0, ())
        uinv = _inverse_unimodular(u)
        basis_cols = [[uinv[i, t] * diag[t] for i in range(self.src.generators)]
                      for t in range(rank)]
        B = IntMatrix(self.src.generators, rank,
                      [basis_cols[t][i] for i in range(self.src.generators)
                       for t in range(rank)])
        # express src relations in B-coordinates:  B * coords = relation column
        bsnf = smith_normal_form(B)
        bdiag = bsnf.diagonal()
        coords = []
        for j in range(self.src.relations.cols):
            col = self.src.relations.column(j)
            ub = bsnf.U.apply(col)
            y = []
            for t in range(rank):
                d = bdiag[t] if t < len(bdiag) else 0
                if d == 0:
                    if ub[t] != 0:
                        raise RelationError("source relations escape the kernel lattice")
                    y.append(0)
                else:
                    if ub[t] % d != 0:
                        raise RelationError("source relations escape the kernel lattice")
                    y.append(ub[t] // d)
            for t in range(rank, self.src.generators):
                if ub[t] != 0:
                    raise RelationError("source relations escape the kernel lattice")
            x = bsnf.V.apply(y)
            coords.append(x)
        rel = IntMatrix(rank, len(coords),
                        [coords[j][t] for t in range(rank) for j in range(len(coords))]) \
            if coords else IntMatrix.zero(rank, 0)
        return classify(Presentation(rank, rel))

    def is_epi(self) -> bool:
        return self.cokernel().is_trivial

    def is_mono(self) -> bool:
        return self.kernel().is_trivial

    def is_iso(self) -> bool:
        if not self.is_epi():
            return False
        # a surjection between finite groups of equal order is bijective
        src_order = classify(self.src).order()
        dst_order = classify(self.dst).order()
        if src_order is not None and src_order == dst_order:
            return True
        return self.is_mono()


def map_cokernel(f: IntMatrix, src: Presentation, dst: Presentation) -> CokernelMap:
    """Build the induced map on cokernels, checking that f respects relations."""
    if f.rows != dst.generators or f.cols != src.generators:
        raise ValueError("generator map has the wrong shape")
    if src.relations.cols:
        image = f * src.relations
        dst_cols = {dst.relations.column(j) for j in range(dst.relations.cols)}
        dst_cols.add((0,) * dst.generators)
        snf = None
        for j in range(image.cols):
            col = image.column(j)
            if col in dst_cols:
                continue
            if snf is None:
                snf = smith_normal_form(dst.relations)
            if not solvable(dst.relations, col, snf):
                raise RelationError("map does not respect relations")
    return CokernelMap(f, src, dst)
