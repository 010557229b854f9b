import random
from fractions import Fraction
from math import factorial

import pytest

from powerops.symrep import (ClassFunction, char_poly, character_table,
                             induce, partitions, restrict, transfer_matrix,
                             transfer_spectrum, z_order)
from powerops.intlinalg import IntMatrix


def test_partitions_order_and_count():
    assert partitions(3) == [(3,), (2, 1), (1, 1, 1)]
    assert partitions(0) == [()]
    counts = [len(partitions(m)) for m in range(9)]
    assert counts == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    for m in range(1, 8):
        ps = partitions(m)
        assert ps == sorted(ps, reverse=True)
        assert all(sum(lam) == m for lam in ps)


def test_z_order_sums_to_group_order():
    for m in range(1, 8):
        assert sum(factorial(m) // z_order(lam) for lam in partitions(m)) \
            == factorial(m)


def test_character_table_small_values():
    t = character_table(2)
    assert t.rows == ((1, 1), (-1, 1))       # classes ordered (2), (1,1)
    t = character_table(3)
    # the degree-2 character takes values 2, 0, -1 on (1^3), (2,1), (3)
    row = dict(zip(partitions(3), t.rows[1]))
    assert row[(1, 1, 1)] == 2 and row[(2, 1)] == 0 and row[(3,)] == -1


def test_orthogonality_and_degrees():
    for m in range(1, 8):
        t = character_table(m)
        n = len(t.rows)
        for i in range(n):
            for j in range(i, n):
                want = 1 if i == j else 0
                assert t.inner(t.character(i), t.character(j)) == want
        ident = partitions(m).index((1,) * m)
        degrees = [t.rows[i][ident] for i in range(n)]
        assert sum(d * d for d in degrees) == factorial(m)
        assert all(d > 0 for d in degrees)


def test_restrict_trivial_and_identity():
    t = character_table(4)
    triv = t.character(0)
    r = restrict(triv, (2, 1, 1))
    assert all(v == 1 for v in r.values)
    full = restrict(t.character(2), (4,))
    assert tuple(full.values) == t.rows[2]
    with pytest.raises(ValueError):
        restrict(triv, (3, 2))


def test_induce_regular_from_trivial_subgroup():
    t = character_table(2)
    triv = restrict(t.character(0), (1, 1))
    got = induce(triv, 2)
    # regular representation: trivial + sign
    want = [a + b for a, b in zip(t.rows[0], t.rows[1])]
    assert list(got.values) == want


def test_frobenius_reciprocity_random():
    rng = random.Random(60901)
    for _ in range(50):
        m = rng.randint(2, 6)
        t = character_table(m)
        n = len(t.rows)
        # random composition with zeros allowed
        p = rng.randint(2, 4)
        cuts = sorted(rng.randint(0, m) for _ in range(p - 1))
        comp = tuple(b - a for a, b in zip([0] + cuts, cuts + [m]))
        # random virtual character on the subgroup, via a restricted one
        f = ClassFunction(m, tuple(rng.randint(-3, 3) for _ in range(n)))
        res_f = restrict(f, comp)
        chi = t.character(rng.randrange(n))
        lhs = t.inner(induce(res_f, m), chi)
        # subgroup-side inner product
        res_chi = restrict(chi, comp)
        rhs = Fraction(0)
        for tup, a, b in zip(res_f.classes(), res_f.values, res_chi.values):
            z = 1
            for lam in tup:
                z *= z_order(lam)
            rhs += Fraction(a * b, z)
        assert lhs == rhs


def test_transfer_golden_matrices():
    assert transfer_matrix(2, 2).paper_basis_matrix().to_rows() \
        == [[3, 1], [1, 3]]
    assert transfer_matrix(3, 3).paper_basis_matrix().to_rows() \
        == [[10, 1, 8], [1, 10, 8], [8, 8, 19]]
    assert transfer_matrix(4, 4).paper_basis_matrix().to_rows() == [
        [35, 1, 20, 45, 15], [1, 35, 20, 15, 45], [20, 20, 56, 60, 60],
        [45, 15, 60, 115, 81], [15, 45, 60, 81, 115]]
    assert transfer_matrix(1, 7).matrix.to_rows() == [[7]]


def test_transfer_identity_at_p_one():
    for m in (1, 2, 3, 4):
        t = transfer_matrix(m, 1)
        assert t.matrix == IntMatrix.identity(len(partitions(m)))


def test_transfer_symmetric_nonnegative():
    for m in range(1, 6):
        for p in range(1, 6):
            t = transfer_matrix(m, p).matrix
            assert t == t.transpose()
            assert all(x >= 0 for x in t.entries)


def test_char_poly_known():
    m = IntMatrix.from_rows([[3, 1], [1, 3]])
    assert char_poly(m) == [1, -6, 8]      # (x-2)(x-4)
    assert char_poly(IntMatrix.identity(3)) == [1, -3, 3, -1]


def test_spectrum_examples():
    s = transfer_spectrum(2, 2)
    assert s.eigenvalues == (4, 2) and s.nilpotency_index == 2
    s = transfer_spectrum(3, 3)
    assert s.eigenvalues == (27, 9, 3)
    assert s.char_poly == (1, -39, 351, -729)
    s = transfer_spectrum(4, 4)
    assert s.eigenvalues == (256, 64, 16, 16, 4)


def test_spectrum_matches_partition_lengths():
    for m in range(1, 7):
        for p in (2, 3, 5):
            s = transfer_spectrum(m, p)
            want = sorted((p ** len(lam) for lam in partitions(m)),
                          reverse=True)
            assert list(s.eigenvalues) == want
