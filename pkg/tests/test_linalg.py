"""Flattening and exact rank: frozen examples, oracle elimination, fuzzing."""

import random
from fractions import Fraction

import pytest

from orefree.errors import UsageError
from orefree.field import BaseField, FunctionField
from orefree.linalg import flatten_to_k, rank_over_k

from oracles import (
    gauss_rank_fractions, gauss_rank_modp, generic_nullspace, random_ratfunc,
)

QT = FunctionField(0, ["t"])
QQ = BaseField(0)
F5 = BaseField(5)


def test_flatten_constants_identity_pattern():
    t = QT.var("t")
    rows = flatten_to_k([[QT.one()], [t]])
    # columns: monomials {t, 1} in graded-lex descending order
    assert rows == [[0, 1], [1, 0]]
    rank, null = rank_over_k(rows, QQ)
    assert rank == 2 and null == []


def test_flatten_proportional_rows():
    t = QT.var("t")
    rows = flatten_to_k([[1 / t], [2 / t]])
    assert rows == [[1], [2]]
    rank, null = rank_over_k(rows, QQ)
    assert rank == 1
    assert null == [[2, -1]]


def test_flatten_mixed_denominators():
    # 1/(t-1) and 1/(t+1) over common den t^2-1: numerators t+1, t-1
    t = QT.var("t")
    rows = flatten_to_k([[1 / (t - 1)], [1 / (t + 1)]])
    assert rows == [[1, 1], [1, -1]]
    assert rank_over_k(rows, QQ)[0] == 2


def test_flatten_rejects_ragged_input():
    t = QT.var("t")
    with pytest.raises(UsageError):
        flatten_to_k([[t], [t, t]])


def test_rank_frozen_example():
    rows = [[1, 2], [2, 4], [0, 1]]
    rank, null = rank_over_k(rows, QQ)
    assert rank == 2
    assert null == [[2, -1, 0]]
    # oracle re-check: the relation annihilates the rows
    for j in range(2):
        assert sum(null[0][i] * rows[i][j] for i in range(3)) == 0


def test_rank_modp_and_nullspace():
    rows = [[1, 2], [2, 4], [0, 1]]
    rank, null = rank_over_k(rows, F5)
    assert rank == 2
    assert len(null) == 1
    lam = null[0]
    assert lam[0] == 1  # leading entry normalized
    for j in range(2):
        assert sum(lam[i] * rows[i][j] for i in range(3)) % 5 == 0


def test_rank_empty_and_zero():
    assert rank_over_k([], QQ) == (0, [])
    rank, null = rank_over_k([[0, 0], [0, 0]], QQ)
    assert rank == 0
    assert null == [[1, 0], [0, 1]]


def test_rank_matches_textbook_oracle_char0():
    rng = random.Random(20260815)
    for _ in range(40):
        n = rng.randint(1, 6)
        c = rng.randint(1, 6)
        rows = [[Fraction(rng.randint(-8, 8), rng.randint(1, 3))
                 for _ in range(c)] for _ in range(n)]
        if rng.random() < 0.5 and n > 1:
            # plant a dependency to exercise the nullspace path
            rows[-1] = [a + b for a, b in zip(rows[0], rows[n // 2])]
        rank, null = rank_over_k(rows, QQ)
        assert rank == gauss_rank_fractions(rows)
        assert len(null) == n - rank
        for lam in null:
            for j in range(c):
                assert sum(lam[i] * rows[i][j] for i in range(n)) == 0
        # oracle nullspace must have the same dimension
        ref = generic_nullspace(rows, Fraction(0), Fraction(1))
        assert len(ref) == len(null)


def test_rank_matches_textbook_oracle_modp():
    rng = random.Random(440)
    for p in (2, 5, 7):
        base = BaseField(p)
        for _ in range(20):
            n = rng.randint(1, 6)
            c = rng.randint(1, 6)
            rows = [[rng.randint(0, p - 1) for _ in range(c)]
                    for _ in range(n)]
            rank, null = rank_over_k(rows, base)
            assert rank == gauss_rank_modp(rows, p)
            assert len(null) == n - rank
            for lam in null:
                for j in range(c):
                    assert sum(lam[i] * rows[i][j]
                               for i in range(n)) % p == 0


def test_flatten_then_rank_detects_k_relations_only():
    # t and 2t are k-dependent; t and t^2 are not, although K-dependent
    t = QT.var("t")
    rows = flatten_to_k([[t], [2 * t]])
    assert rank_over_k(rows, QQ)[0] == 1
    rows = flatten_to_k([[t], [t * t]])
    assert rank_over_k(rows, QQ)[0] == 2


def test_flatten_random_consistency():
    # a planted k-linear combination stays dependent after flattening
    rng = random.Random(77)
    for ff in (QT, FunctionField(5, ["t"])):
        for _ in range(10):
            v1 = [random_ratfunc(rng, ff) for _ in range(2)]
            v2 = [random_ratfunc(rng, ff) for _ in range(2)]
            a = ff.base.of_int(rng.randint(1, 4))
            b = ff.base.of_int(rng.randint(1, 4))
            v3 = [ff.const(a) * x + ff.const(b) * y for x, y in zip(v1, v2)]
            rows = flatten_to_k([v1, v2, v3])
            rank, null = rank_over_k(rows, ff.base)
            assert rank <= 2
            assert len(null) >= 1
