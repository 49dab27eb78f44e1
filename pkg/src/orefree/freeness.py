"""Free-subalgebra evidence: words in (1 - x)^{-1} and b(1 - x)^{-1}.

For a nonzero witness b in K, an index word I = (i_1, ..., i_r) over {0, 1}
names the product

    W_I = b^{i_1} (1-x)^{-1} b^{i_2} (1-x)^{-1} ... b^{i_r} (1-x)^{-1},

with W of the empty word equal to 1, and the companion element
V_I = (1-x)^{-1} W_I.  These satisfy the rewriting identities

    (1-x) V_I = W_I = b^{i_1} V_{I'}        (I' drops the first index)
    x V_I = V_I - b^{i_1} V_{I'}            (x V = V - 1 for the empty word)

which is why k-linear combinations of the W_I are stable enough to carry a
freeness argument.  This module checks the finite part of that argument
exactly: expand every word of length at most L, coordinatize the set over
the prime field k, and rank.  Full rank certifies that no k-relation exists
up to length L; a rank deficit yields an explicit relation, which is
re-evaluated against the fractions themselves before being reported.

Two coordinatizations are in use, and they provably compute the same
nullspace.  The general route brings all words over one common left
denominator and flattens the numerator coefficient vectors.  For a pure
derivation with polynomial witness and nilpotent-triangular images, words
expand instead in the power series ring K[[x]] with x a = a x + delta(a),
truncated at an order past the degree any relation numerator can reach
(each word admits a left denominator of degree = word length, so the
common denominator degree is at most the sum of the lengths); vanishing
of a combination through that order then forces the exact element to be
zero, which makes the truncated coordinate matrix faithful in both
directions while its entries stay polynomial.

Independence at bound L says nothing about longer words.  The certificate
stores the bound, the rank, and a digest of the flattened matrix so runs
are comparable; callers decide what theorem the evidence supports.
"""

import hashlib
import itertools
import math
from dataclasses import dataclass

from .config import DEFAULT_LIMITS
from .errors import (
    ContextMismatch, NotAdditiveEigen, RequiresPureAutomorphism,
    ResourceBoundExceeded, UsageError, ZeroArgument,
)
from .field import RatFunc
from .linalg import flatten_to_k, rank_over_k
from .orefrac import OreFraction, _lclm_with_probe, weyl_check
from .orepoly import OrePoly
from .valuation import length_profile


def words_up_to(max_len):
    """All index words over {0, 1} of length <= max_len, shortest first.

    Within one length the order is lexicographic with 0 before 1, so the
    full sequence starts (), (0,), (1,), (0, 0), (0, 1), ...  The order is
    part of the certificate contract: matrix rows and digests follow it.
    """
    if max_len < 0:
        raise UsageError("word length bound must be nonnegative")
    out = [()]
    for r in range(1, max_len + 1):
        out.extend(itertools.product((0, 1), repeat=r))
    assert len(out) == 2 ** (max_len + 1) - 1
    return out


def word_key(bits):
    """Bitstring form of an index word; the empty word maps to ''."""
    return "".join(str(b) for b in bits)


def one_minus_x_inverse(ctx):
    """(1 - x)^{-1} as a left fraction (stored with monic denominator x - 1)."""
    one = OrePoly.one(ctx)
    return OreFraction(one - OrePoly.x(ctx), one)


def _as_witness(ctx, b):
    if isinstance(b, int):
        b = ctx.ff.const(b)
    if not isinstance(b, RatFunc):
        raise UsageError("witness must be a rational function or integer")
    if b.ff != ctx.ff:
        raise ContextMismatch("witness lives over a different field")
    if b.is_zero():
        raise ZeroArgument("witness b must be nonzero")
    return b


def build_word_W(ctx, bits, b):
    """The word W for index tuple `bits`; the empty tuple gives 1."""
    b = _as_witness(ctx, b)
    g0 = one_minus_x_inverse(ctx)
    g1 = OreFraction.from_ratfunc(ctx, b) * g0
    out = OreFraction.one(ctx)
    for i in bits:
        assert i in (0, 1)
        out = out * (g1 if i else g0)
    return out


def build_word_V(ctx, bits, b):
    """The companion word V = (1 - x)^{-1} W; the empty tuple gives (1-x)^{-1}."""
    return one_minus_x_inverse(ctx) * build_word_W(ctx, bits, b)


def common_left_denominator(fracs, limit=DEFAULT_LIMITS):
    """Rewrite fractions over one denominator: den^{-1} nums[i] == fracs[i].

    Left fold in input order, growing the denominator by lclm steps; the
    cofactor that lifts the old denominator rescales all earlier
    numerators.  Input order is significant (it fixes the intermediate
    lclms), so callers wanting reproducible output must fix their order.
    """
    if not fracs:
        raise UsageError("need at least one fraction")
    ctx = fracs[0].ctx
    den = fracs[0].den
    nums = [fracs[0].num]
    for f in fracs[1:]:
        if f.ctx != ctx:
            raise ContextMismatch("fractions from different Ore contexts")
        m, u, v = _lclm_with_probe(den, f.den)
        if m.degree > limit.max_den_degree:
            raise ResourceBoundExceeded(
                "common denominator reached degree %d (bound %d)"
                % (m.degree, limit.max_den_degree))
        if not u.is_one():
            nums = [u * n for n in nums]
        nums.append(v * f.num)
        den = m
    return den, nums


def _numerator_rows(nums):
    width = max(n.degree for n in nums) + 1
    if width <= 0:
        width = 1
    return flatten_to_k([[n.coeff(j) for j in range(width)] for n in nums])


def _matrix_digest(rows, base):
    h = hashlib.sha256()
    ncols = len(rows[0]) if rows else 0
    h.update(("k:%d;%dx%d" % (base.p, len(rows), ncols)).encode())
    for row in rows:
        h.update(b"|")
        h.update(",".join(str(x) for x in row).encode())
    return h.hexdigest()


def _verify_relation(fracs, lam):
    """Assert that sum(lam[i] * fracs[i]) really is the zero fraction."""
    ctx = fracs[0].ctx
    acc = OreFraction.zero(ctx)
    nontrivial = False
    for c, f in zip(lam, fracs):
        if c:
            nontrivial = True
            acc = acc + OreFraction.from_ratfunc(ctx, ctx.ff.const(c)) * f
    assert nontrivial, "nullspace produced the zero relation"
    assert acc.is_zero(), "relation does not annihilate the fractions"


def independence_check(fracs, limit=DEFAULT_LIMITS):
    """Exact k-linear independence of left fractions.

    Returns (independent, rank, relation).  relation is None when
    independent; otherwise a tuple of prime-field scalars, one per input,
    already re-verified to sum the scaled fractions to zero.
    """
    den, nums = common_left_denominator(fracs, limit)
    rows = _numerator_rows(nums)
    rank, null = rank_over_k(rows, fracs[0].ctx.ff.base)
    if rank == len(fracs):
        return True, rank, None
    assert null, "rank deficit without a nullspace vector"
    lam = tuple(null[0])
    _verify_relation(fracs, lam)
    return False, rank, lam


@dataclass(frozen=True)
class FreenessCertificate:
    """Bounded-length independence evidence for the two word generators.

    verdict is "Independent" (rank equals word count; no k-relation among
    words of length <= max_length exists) or "Dependent" (relation maps
    index words to nonzero prime-field scalars and sums to zero).  The
    digest identifies the flattened matrix, so equal runs hash equal.
    """

    witness_b: RatFunc
    max_length: int
    word_count: int
    rank: int
    matrix_digest: str
    verdict: str
    relation: dict = None

    @property
    def independent(self):
        return self.verdict == "Independent"

    def to_json_dict(self):
        out = {
            "witness": str(self.witness_b),
            "L": self.max_length,
            "word_count": self.word_count,
            "rank": self.rank,
            "digest": self.matrix_digest,
            "verdict": self.verdict,
        }
        if self.relation is not None:
            out["relation"] = {word_key(w): c for w, c in self.relation.items()}
        return out


def _expand_words(ctx, words, b):
    """One fraction per word, sharing prefixes (same fold order as build_word_W)."""
    g0 = one_minus_x_inverse(ctx)
    g1 = OreFraction.from_ratfunc(ctx, b) * g0
    cache = {(): OreFraction.one(ctx)}
    for w in words:
        if w:
            cache[w] = cache[w[:-1]] * (g1 if w[-1] else g0)
    return [cache[w] for w in words]


def _delta_weights(delta):
    """Nilpotence depths per variable, or None when none are guaranteed.

    Applies when every delta(y_i) is a polynomial in variables strictly
    after y_i (constants allowed).  Then delta kills the monomial
    prod y_v^{e_v} after 1 + sum e_v * w[v] applications, by Leibniz and
    induction along the variable order; w[v] is 0 for delta(y_v) = 0 and
    1 + weight(delta(y_v)) otherwise, computed from the last variable back.
    """
    ff = delta.ff
    w = [0] * ff.nvars
    for i in range(ff.nvars - 1, -1, -1):
        img = delta.images[i]
        if img.is_zero():
            continue
        if not img.is_poly():
            return None
        deepest = 0
        for e in img.num.terms:
            if any(e[v] and v <= i for v in range(ff.nvars)):
                return None
            deepest = max(deepest, sum(e[v] * w[v] for v in range(len(e))))
        w[i] = deepest + 1
    return w


def _poly_weight(f, weights):
    """Largest j with delta^j(f) possibly nonzero, from the variable depths."""
    if f.is_zero():
        return 0
    assert f.is_poly()
    return max(sum(e[v] * weights[v] for v in range(len(e)))
               for e in f.num.terms)


def _series_mul_delta(ff, A, B, delta, weights):
    """Truncated product of series where x a = a x + delta(a).

    From x^m a = sum_j C(m, j) delta^j(a) x^{m-j}, low orders of A * B can
    draw on orders of A up to the nilpotence weight of B's coefficients
    above them; callers pad the truncation to absorb that.
    """
    M = len(A) - 1
    p = ff.char
    out = [ff.zero()] * (M + 1)
    for n, bn in enumerate(B[: M + 1]):
        if bn.is_zero():
            continue
        djs = [bn]
        for _ in range(_poly_weight(bn, weights)):
            nxt = delta.apply(djs[-1])
            if nxt.is_zero():
                break
            djs.append(nxt)
        assert delta.apply(djs[-1]).is_zero()
        for j, d in enumerate(djs):
            for m in range(j, M + 1):
                s = m - j + n
                if s > M:
                    break
                am = A[m]
                if am.is_zero():
                    continue
                c = math.comb(m, j)
                if p and c % p == 0:
                    continue
                out[s] = out[s] + am * d * c
    return out


def _series_word_rows(ctx, words, b, L):
    """Coordinate rows (series orders 0..N) for every word, prefix-shared.

    N is the sum of all word lengths: a common left denominator of the
    word set has degree at most N, so any k-relation has a polynomial
    numerator of degree at most N and is already visible, exactly, in the
    orders up to N.  The working truncation adds L times the witness
    weight because each multiplication by b^i (1-x)^{-1} lets high orders
    bleed down by at most weight(b).
    """
    delta = ctx.delta
    weights = _delta_weights(delta)
    assert weights is not None
    ff = ctx.ff
    N = sum(r * 2 ** r for r in range(1, L + 1))
    M = N + L * _poly_weight(b, weights)
    geom = [ff.one()] * (M + 1)
    scaled = [b] * (M + 1)
    cache = {(): [ff.one()] + [ff.zero()] * M}
    for w in words:
        if w:
            cache[w] = _series_mul_delta(
                ff, cache[w[:-1]], scaled if w[-1] else geom, delta, weights)
    return [cache[w][: N + 1] for w in words]


def freeness_certify(pair, b, L, limit=DEFAULT_LIMITS):
    """Certificate for all words of length <= L (count 2^{L+1} - 1).

    Independent means exactly that the bounded set carries no nontrivial
    k-relation; Dependent refutes freeness outright and carries the
    relation, re-verified by exact fraction arithmetic either way the rank
    was obtained.  Pure-derivation contexts whose images are
    nilpotent-triangular polynomials and whose witness is polynomial take
    the series coordinatization; everything else goes through the common
    left denominator.  Raises ResourceBoundExceeded when the word count or
    the denominator crosses the configured limits.
    """
    if L < 1:
        raise UsageError("certificate needs L >= 1")
    b = _as_witness(pair, b)
    words = words_up_to(L)
    if len(words) > limit.max_words:
        raise ResourceBoundExceeded(
            "%d words exceed the configured bound %d"
            % (len(words), limit.max_words))
    fracs = None
    rows = None
    if pair.is_pure_derivation() and b.is_poly():
        if _delta_weights(pair.delta) is not None:
            rows = flatten_to_k(_series_word_rows(pair, words, b, L))
    if rows is None:
        fracs = _expand_words(pair, words, b)
        den, nums = common_left_denominator(fracs, limit)
        rows = _numerator_rows(nums)
    base = pair.ff.base
    rank, null = rank_over_k(rows, base)
    digest = _matrix_digest(rows, base)
    if rank == len(words):
        return FreenessCertificate(b, L, len(words), rank, digest,
                                   "Independent")
    lam = tuple(null[0])
    if fracs is None:
        fracs = _expand_words(pair, words, b)
    _verify_relation(fracs, lam)
    relation = {w: c for w, c in zip(words, lam) if c}
    return FreenessCertificate(b, L, len(words), rank, digest, "Dependent",
                               relation)


def monomial_products_check(elems):
    """k-independence of the subset products led by the first element.

    The tested set is {a0} together with a0 * a_{i1} * ... * a_{i_m} over
    every nonempty increasing index sequence: 2^n products for n trailing
    factors, enumerated by bitmask so the order is fixed.
    """
    if len(elems) < 2:
        raise UsageError("need a lead element and at least one further factor")
    a0, rest = elems[0], list(elems[1:])
    prods = []
    for mask in range(1 << len(rest)):
        p = a0
        for j, a in enumerate(rest):
            if mask >> j & 1:
                p = p * a
        prods.append(p)
    rows = flatten_to_k([[p] for p in prods])
    rank, _ = rank_over_k(rows, a0.ff.base)
    return rank == len(prods)


def valuation_witness(sigma, place, window, candidates):
    """Candidate with minimal finite support length at the place, if any.

    A candidate qualifies when its support {n : v(sigma^n b) < 0} inside
    the +-window is nonempty and does not touch the window edge (so the
    length is known, not truncated).  Ties keep the earliest candidate.
    """
    best = None
    best_len = None
    for b in candidates:
        if b.is_zero():
            continue
        prof = length_profile(sigma, place, b, window)
        ell = prof.length
        if ell is None:
            continue
        if best_len is None or ell < best_len:
            best, best_len = b, ell
    return best


def weyl_pair_from_additive(pair, u, alpha):
    """Weyl pair from an additive eigenvector: sigma(u) - u = alpha.

    Returns (y, z, verified) with y = u / alpha (so sigma(y) = y + 1 when
    alpha is a constant of sigma), z = y x^{-1}, and verified the outcome
    of checking x z - z x = 1 by exact fraction arithmetic.
    """
    if not pair.is_pure_automorphism():
        raise RequiresPureAutomorphism(
            "Weyl pair from an additive eigenvector needs delta = 0")
    if alpha.is_zero():
        raise ZeroArgument("alpha must be nonzero")
    if pair.sigma.apply(u) - u != alpha:
        raise NotAdditiveEigen("sigma(u) - u != alpha for the supplied pair")
    y = u / alpha
    yf = OreFraction.from_ratfunc(pair, y)
    xf = OreFraction.from_poly(OrePoly.x(pair))
    z = yf * xf.inverse()
    outcome = weyl_check(z, xf)
    return yf, z, bool(outcome)
