"""Exact k-linear algebra for vectors over K = k(y1, ..., yn).

K-linear independence questions are reduced to the prime field k in two
steps.  :func:`flatten_to_k` clears each coordinate to a common polynomial
denominator and splits the numerators into monomial coordinates, giving a
matrix over k whose row space mirrors the K-span (a k-relation among the
rows is exactly a k-relation among the original vectors, because scaling a
coordinate by a fixed nonzero polynomial and splitting by monomial are both
injective on k-linear combinations).

:func:`rank_over_k` then computes rank and a row-nullspace basis without
fractions: Bareiss elimination over Z in characteristic 0 (rows are first
scaled to integers; the scaling is undone on the nullspace vectors) and
ordinary elimination over F_p otherwise.  Nullspace vectors are read off an
augmented identity block, so no back substitution is needed.
"""

import math
from fractions import Fraction

from .errors import ResourceBoundExceeded, UsageError
from .field import _grlex_key, poly_gcd


def flatten_to_k(vectors):
    """Matrix over k with one row per vector, columns per (coordinate, monomial).

    All vectors must have the same length and live over the same field.
    Column order is deterministic: coordinates left to right, monomials in
    descending graded-lex order within a coordinate.
    """
    if not vectors:
        return []
    width = len(vectors[0])
    ff = None
    for v in vectors:
        if len(v) != width:
            raise UsageError("vectors of unequal length")
        for x in v:
            if ff is None:
                ff = x.ff
            elif x.ff != ff:
                raise UsageError("vectors over different fields")
    if width == 0:
        return [[] for _ in vectors]
    rows = [[] for _ in vectors]
    for j in range(width):
        col = [v[j] for v in vectors]
        den = ff.poly_one()
        for x in col:
            if not x.den.is_const():
                try:
                    g = poly_gcd(den, x.den)
                except ResourceBoundExceeded:
                    g = ff.poly_one()
                den = den.divide_exact(g) * x.den
        nums = []
        for x in col:
            q = den.divide_exact(x.den)
            assert q is not None
            nums.append(x.num * q)
        monos = set()
        for nm in nums:
            monos.update(nm.terms)
        order = sorted(monos, key=_grlex_key, reverse=True)
        zero = ff.base.zero()
        for i, nm in enumerate(nums):
            rows[i].extend(nm.terms.get(e, zero) for e in order)
    return rows


def _normalize_int_vector(vec):
    """Scale a Fraction vector to coprime integers, first nonzero positive."""
    denlcm = 1
    for x in vec:
        if x:
            denlcm = denlcm * x.denominator // math.gcd(denlcm, x.denominator)
    ints = [int(x * denlcm) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return ints


def _rank_bareiss(rows):
    """Fraction-free elimination over Z on [M | I]; returns rank, nullspace."""
    n = len(rows)
    ncols = len(rows[0]) if n else 0
    scales = []
    m = []
    for row in rows:
        denlcm = 1
        for x in row:
            if x:
                denlcm = denlcm * x.denominator // math.gcd(
                    denlcm, x.denominator)
        ints = [int(x * denlcm) for x in row]
        g = 0
        for x in ints:
            g = math.gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        # scaled_row = (denlcm/g) * row, so a nullspace coefficient mu for
        # the scaled row corresponds to mu * (denlcm/g) for the original
        scales.append(Fraction(denlcm, g if g else 1))
        m.append(ints)
    # strip column contents (pure column scaling, nullspace unaffected)
    for c in range(ncols):
        g = 0
        for r in range(n):
            g = math.gcd(g, m[r][c])
            if g == 1:
                break
        if g > 1:
            for r in range(n):
                m[r][c] //= g
    aug = ncols + n
    for i in range(n):
        m[i].extend(1 if j == i else 0 for j in range(n))
    prev = 1
    rank = 0
    for col in range(ncols):
        piv = -1
        best = None
        for r in range(rank, n):
            v = m[r][col]
            if v and (best is None or abs(v) < best):
                piv, best = r, abs(v)
        if piv < 0:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        row_p = m[rank]
        for r in range(rank + 1, n):
            # uniform one-step update keeps every entry an exact minor,
            # so the division by the previous pivot never truncates
            vr = m[r][col]
            row_r = m[r]
            if vr:
                for j in range(col + 1, aug):
                    row_r[j] = (pv * row_r[j] - vr * row_p[j]) // prev
            else:
                for j in range(col + 1, aug):
                    row_r[j] = pv * row_r[j] // prev
            row_r[col] = 0
        prev = pv
        rank += 1
    null = []
    for r in range(rank, n):
        assert all(m[r][c] == 0 for c in range(ncols))
        lam = [Fraction(m[r][ncols + i]) * scales[i] for i in range(n)]
        null.append(_normalize_int_vector(lam))
    return rank, null


def _rank_modp(rows, p):
    n = len(rows)
    ncols = len(rows[0]) if n else 0
    m = [list(row) + [1 if j == i else 0 for j in range(n)]
         for i, row in enumerate(rows)]
    rank = 0
    for col in range(ncols):
        piv = -1
        for r in range(rank, n):
            if m[r][col]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        prow = m[rank]
        for r in range(rank + 1, n):
            if m[r][col]:
                f = m[r][col] * inv % p
                row = m[r]
                for j in range(col, ncols + n):
                    row[j] = (row[j] - f * prow[j]) % p
        rank += 1
    null = []
    for r in range(rank, n):
        assert all(m[r][c] == 0 for c in range(ncols))
        lam = m[r][ncols:]
        for x in lam:
            if x:
                inv = pow(x, p - 2, p)
                lam = [y * inv % p for y in lam]
                break
        null.append(lam)
    return rank, null


def rank_over_k(rows, base):
    """Rank and row-nullspace basis of a matrix of prime-field scalars.

    Returns ``(rank, nullspace)`` where each nullspace vector lam satisfies
    sum(lam[i] * rows[i]) == 0.  Over Q the vectors are normalized to
    coprime integers with positive leading entry; over F_p the leading
    nonzero entry is 1.
    """
    if base.p:
        return _rank_modp([[int(x) % base.p for x in row] for row in rows],
                          base.p)
    return _rank_bareiss([[Fraction(x) for x in row] for row in rows])
