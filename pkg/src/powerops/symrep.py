"""Representation rings of symmetric groups and the transfer operator.

Character tables are computed by the Murnaghan-Nakayama recursion on
beta-numbers.  Restriction to a Young subgroup is a lookup on concatenated
cycle types; induction is its adjoint under the class-size-weighted inner
product (Frobenius reciprocity).  The transfer operator t(m,p) sums
induction-after-restriction over all ordered p-part compositions of m,
with zero parts allowed; its eigenvalues are the prime powers p^(number of
parts of c) over conjugacy classes c, and it is nilpotent mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .intlinalg import IntMatrix


def partitions(m: int):
    """All partitions of m in reverse-lexicographic order."""
    if m < 0:
        raise ValueError("m must be >= 0")

    @lru_cache(maxsize=None)
    def gen(total, largest):
        if total == 0:
            return [()]
        out = []
        for first in range(min(total, largest), 0, -1):
            out.extend((first,) + rest for rest in gen(total - first, first))
        return out

    return list(gen(m, m))


def z_order(lam) -> int:
    """Centralizer order of the class with cycle type lam."""
    z = 1
    mult = {}
    for k in lam:
        mult[k] = mult.get(k, 0) + 1
    for k, e in mult.items():
        z *= k ** e * factorial(e)
    return z


@lru_cache(maxsize=None)
def _mn_character(lam: tuple, mu: tuple) -> int:
    """Murnaghan-Nakayama: irreducible character chi_lam at cycle type mu."""
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    beta = [lam[i] + (len(lam) - 1 - i) for i in range(len(lam))]
    beta_set = set(beta)
    total = 0
    for b in beta:
        b2 = b - r
        if b2 < 0 or b2 in beta_set:
            continue
        height = sum(1 for x in beta if b2 < x < b)
        new_beta = sorted((beta_set - {b}) | {b2}, reverse=True)
        new_lam = tuple(x - (len(new_beta) - 1 - i)
                        for i, x in enumerate(new_beta))
        new_lam = tuple(x for x in new_lam if x > 0)
        total += (-1) ** height * _mn_character(new_lam, rest)
    return total


@dataclass(frozen=True)
class ClassFunction:
    """Integer class function on a symmetric group, in canonical class order."""

    m: int
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != len(partitions(self.m)):
            raise ValueError("one value per conjugacy class required")

    def __add__(self, other):
        if self.m != other.m:
            raise ValueError("mixed degrees")
        return ClassFunction(self.m, tuple(a + b for a, b
                                           in zip(self.values, other.values)))

    def scale(self, n):
        return ClassFunction(self.m, tuple(n * v for v in self.values))

    def at(self, lam) -> int:
        return self.values[partitions(self.m).index(tuple(lam))]


@dataclass(frozen=True)
class CharTable:
    """Irreducible characters of a symmetric group.

    Rows and columns are both indexed by partitions in canonical order;
    row lam is the character of the irreducible labeled lam.
    """

    m: int
    rows: tuple          # rows[i][j] = chi_{lam_i}(class mu_j)
    class_sizes: tuple

    def character(self, i: int) -> ClassFunction:
        return ClassFunction(self.m, self.rows[i])

    def inner(self, f: ClassFunction, g: ClassFunction) -> Fraction:
        n = factorial(self.m)
        return Fraction(sum(s * a * b for s, a, b
                            in zip(self.class_sizes, f.values, g.values)), n)


@lru_cache(maxsize=None)
def character_table(m: int) -> CharTable:
    parts = partitions(m)
    n = factorial(m)
    sizes = tuple(n // z_order(mu) for mu in parts)
    rows = tuple(tuple(_mn_character(lam, mu) for mu in parts)
                 for lam in parts)
    return CharTable(m, rows, sizes)


def _tuple_classes(comp):
    """Conjugacy classes of the Young subgroup for a composition (zeros ok)."""
    out = [()]
    for part in comp:
        out = [t + (lam,) for t in out for lam in partitions(part)]
    return out


@dataclass(frozen=True)
class YoungClassFunction:
    """Class function on a Young subgroup, indexed by partition tuples."""

    composition: tuple
    values: tuple

    def classes(self):
        return _tuple_classes(self.composition)


def _concat(tuple_of_partitions):
    parts = [k for lam in tuple_of_partitions for k in lam]
    return tuple(sorted(parts, reverse=True))


def restrict(f: ClassFunction, composition) -> YoungClassFunction:
    """Restriction to the Young subgroup of a composition of m."""
    comp = tuple(composition)
    if any(i < 0 for i in comp) or sum(comp) != f.m:
        raise ValueError("composition must consist of non-negative parts "
                         f"summing to {f.m}")
    classes = _tuple_classes(comp)
    return YoungClassFunction(comp, tuple(f.at(_concat(t)) for t in classes))


def _young_inner(a: YoungClassFunction, b: YoungClassFunction) -> Fraction:
    total = Fraction(0)
    for t, x, y in zip(a.classes(), a.values, b.values):
        z = 1
        for lam in t:
            z *= z_order(lam)
        total += Fraction(x * y, z)
    return total


def induce(g: YoungClassFunction, m: int) -> ClassFunction:
    """Induction to the full symmetric group, by Frobenius reciprocity."""
    if sum(g.composition) != m:
        raise ValueError(f"composition must sum to {m}")
    table = character_table(m)
    values = [Fraction(0)] * len(table.rows)
    for i in range(len(table.rows)):
        res = restrict(table.character(i), g.composition)
        c = _young_inner(g, res)
        if c:
            # coordinates may be fractional for a general class function;
            # the induced values themselves are always integral
            for j, v in enumerate(table.rows[i]):
                values[j] += c * v
    if any(v.denominator != 1 for v in values):
        raise ArithmeticError("induced class function has fractional values")
    return ClassFunction(m, tuple(int(v) for v in values))


def _composition_multisets(m: int, p: int):
    """Multisets of nonzero parts usable in a p-part composition of m,
    with the number of ordered arrangements of each."""
    out = []
    for lam in partitions(m):
        if len(lam) > p:
            continue
        mult = {}
        for k in lam:
            mult[k] = mult.get(k, 0) + 1
        ways = factorial(p) // factorial(p - len(lam))
        for e in mult.values():
            ways //= factorial(e)
        out.append((lam, ways))
    return out


@dataclass(frozen=True)
class TransferMatrix:
    """The summed induction-restriction operator in the irreducible basis."""

    m: int
    p: int
    matrix: IntMatrix
    paper_permutation: tuple  # canonical index of each paper-basis element

    def paper_basis_matrix(self) -> IntMatrix:
        perm = self.paper_permutation
        n = len(perm)
        return IntMatrix.from_rows(
            [[self.matrix[perm[i], perm[j]] for j in range(n)]
             for i in range(n)])


# The source names its small bases by representation (trivial, sign, the
# standard representation and its relatives); these permutations carry the
# canonical partition order onto that naming.
_PAPER_ORDER = {
    3: ((3,), (1, 1, 1), (2, 1)),
    4: ((4,), (1, 1, 1, 1), (2, 2), (3, 1), (2, 1, 1)),
}


def transfer_matrix(m: int, p: int) -> TransferMatrix:
    """Matrix of t(m,p) = sum of Ind∘Res over ordered p-part compositions."""
    if m < 1 or p < 1:
        raise ValueError("m and p must be >= 1")
    table = character_table(m)
    n = len(table.rows)
    entries = [[0] * n for _ in range(n)]
    for lam, ways in _composition_multisets(m, p):
        restricted = [restrict(table.character(i), lam) for i in range(n)]
        for i in range(n):
            for j in range(i, n):
                c = _young_inner(restricted[i], restricted[j])
                if c.denominator != 1:
                    raise ArithmeticError("non-integral transfer entry")
                entries[i][j] += ways * int(c)
                if i != j:
                    entries[j][i] = entries[i][j]
    parts = partitions(m)
    order = _PAPER_ORDER.get(m, tuple(parts))
    perm = tuple(parts.index(lam) for lam in order)
    return TransferMatrix(m, p, IntMatrix.from_rows(entries), perm)


def char_poly(M: IntMatrix):
    """Characteristic polynomial det(xI - M), coefficients highest first.

    Faddeev-LeVerrier; all divisions are exact over the integers.
    """
    n = M.rows
    if n != M.cols:
        raise ValueError("square matrix required")
    coeffs = [1]
    A = M
    for k in range(1, n + 1):
        if k > 1:
            A = M * A + M.scale(coeffs[-1])
        trace = sum(A[i, i] for i in range(n))
        c, r = divmod(-trace, k)
        if r:
            raise ArithmeticError("characteristic polynomial not integral")
        coeffs.append(c)
    return coeffs


def _poly_from_roots(roots):
    coeffs = [1]
    for r in roots:
        coeffs = [a - r * b for a, b
                  in zip(coeffs + [0], [0] + coeffs)]
    return coeffs


@dataclass(frozen=True)
class TransferSpectrum:
    m: int
    p: int
    eigenvalues: tuple       # descending, with multiplicity
    char_poly: tuple         # integer coefficients, highest first
    nilpotency_index: int    # least e with t^e = 0 mod p (0 if p == 1)


def _delta_multiplier(c: tuple, p: int) -> int:
    """Eigenvalue of Ind∘Res on the indicator of class c, counted directly.

    Summing over ordered splittings of the cycle multiset of c into p
    groups: z(c) * sum over tuple classes concatenating to c of the
    product of 1/z(lambda^(j)).
    """
    mult = sorted(c)
    total = Fraction(0)

    def rec(remaining, slots_left, acc):
        nonlocal total
        if slots_left == 1:
            lam = tuple(sorted(remaining, reverse=True))
            total += acc * Fraction(1, z_order(lam))
            return
        # choose the sub-multiset for this slot
        for sub in _sub_multisets(remaining):
            lam = tuple(sorted(sub, reverse=True))
            rest = list(remaining)
            for k in sub:
                rest.remove(k)
            rec(tuple(rest), slots_left - 1, acc * Fraction(1, z_order(lam)))

    rec(tuple(mult), p, Fraction(1))
    value = total * z_order(c)
    if value.denominator != 1:
        raise ArithmeticError("non-integral class multiplier")
    return int(value)


def _sub_multisets(items):
    """All sub-multisets of a sorted tuple, without duplicates."""
    distinct = []
    for k in items:
        if not distinct or distinct[-1][0] != k:
            distinct.append([k, 1])
        else:
            distinct[-1][1] += 1
    out = [()]
    for k, e in distinct:
        out = [s + (k,) * i for s in out for i in range(e + 1)]
    return out


def transfer_spectrum(m: int, p: int) -> TransferSpectrum:
    """Eigenvalues of t(m,p), verified two ways, plus mod-p nilpotency.

    (a) the characteristic polynomial of the matrix must factor as the
    product of (x - p^{l_c}) over classes c; (b) the indicator of each
    class must be an eigenvector with eigenvalue p^{l_c}, counted by the
    splitting formula without reference to the matrix.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    t = transfer_matrix(m, p)
    parts = partitions(m)
    candidates = sorted((p ** len(c) for c in parts), reverse=True)
    poly = char_poly(t.matrix)
    if poly != _poly_from_roots(candidates):
        raise ArithmeticError("characteristic polynomial does not match "
                              "the predicted eigenvalue multiset")
    for c in parts:
        if _delta_multiplier(c, p) != p ** len(c):
            raise ArithmeticError("class-indicator eigenvalue mismatch")
    if p == 1:
        index = 0
    else:
        n = t.matrix.rows
        power = IntMatrix.identity(n)
        index = 0
        while any(power[i, j] % p for i in range(n) for j in range(n)):
            power = power * t.matrix
            index += 1
            if index > n:
                raise ArithmeticError("transfer operator not nilpotent mod p")
    return TransferSpectrum(m, p, tuple(candidates), tuple(poly), index)
