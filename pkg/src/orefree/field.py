"""Exact arithmetic in rational function fields K = k(y1, ..., yn).

The base field k is either Q (characteristic 0) or F_p for a prime p.
Scalars are represented as ``fractions.Fraction`` in characteristic 0 and
as plain ints in ``range(p)`` otherwise; :class:`BaseField` bundles the
arithmetic so polynomial code never branches on the characteristic.

Polynomials (:class:`MPoly`) are sparse dicts mapping exponent tuples to
nonzero scalars.  The monomial order used for leading terms and printing
is graded lexicographic: compare total degree first, then the exponent
tuple with the first generator most significant.

Field elements (:class:`RatFunc`) are quotients num/den of polynomials
with the denominator normalized monic (graded-lex leading coefficient 1).
Construction reduces by a gcd; if a gcd attempt exceeds the configured
term bound the fraction is kept unreduced, which is still exact because
equality always falls back to cross multiplication.  No floating point is
used anywhere.

gcds use a primitive polynomial remainder sequence: dense Euclid for
univariate polynomials over F_p, integer-cleared primitive PRS over Q,
and recursion on contents for several variables.
"""

import math
from fractions import Fraction

from .config import DEFAULT_LIMITS
from .errors import (
    BadCharacteristic,
    CharacteristicMismatch,
    DivisionByZero,
    ResourceBoundExceeded,
)

_IDENT_OK = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class BaseField:
    """The prime field: Q when ``p == 0``, else F_p for prime p."""

    __slots__ = ("p",)

    def __init__(self, p=0):
        if p and not _is_prime(p):
            raise BadCharacteristic("modulus %r is not prime" % (p,))
        self.p = p

    @property
    def char(self):
        return self.p

    def zero(self):
        return 0 if self.p else Fraction(0)

    def one(self):
        return 1 if self.p else Fraction(1)

    def of_int(self, n):
        return n % self.p if self.p else Fraction(n)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return -a % self.p if self.p else -a

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero scalar")
        if self.p:
            return pow(a, self.p - 2, self.p)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        return pow(a, n, self.p) if self.p else a ** n

    def is_zero(self, a):
        return not a

    def __eq__(self, other):
        return isinstance(other, BaseField) and self.p == other.p

    def __hash__(self):
        return hash(("BaseField", self.p))

    def __repr__(self):
        return "Q" if self.p == 0 else "F%d" % self.p


class FunctionField:
    """Context object for K = k(names): base field plus ordered generators."""

    __slots__ = ("base", "names")

    def __init__(self, char, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names: %r" % (names,))
        for nm in names:
            if not nm or nm[0].isdigit() or any(c not in _IDENT_OK for c in nm):
                raise ValueError("bad generator name %r" % (nm,))
        self.base = BaseField(char)
        self.names = names

    @property
    def char(self):
        return self.base.p

    @property
    def nvars(self):
        return len(self.names)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError("unknown generator %r" % (name,)) from None

    # -- polynomial constructors -------------------------------------

    def poly_zero(self):
        return MPoly(self, {})

    def poly_one(self):
        return MPoly(self, {(0,) * self.nvars: self.base.one()})

    def poly_const(self, c):
        if isinstance(c, int):
            c = self.base.of_int(c)
        if not c:
            return MPoly(self, {})
        return MPoly(self, {(0,) * self.nvars: c})

    def poly_var(self, which):
        i = which if isinstance(which, int) else self.index(which)
        e = [0] * self.nvars
        e[i] = 1
        return MPoly(self, {tuple(e): self.base.one()})

    # -- field element constructors ----------------------------------

    def zero(self):
        return RatFunc(self.poly_zero(), self.poly_one(), reduce=False)

    def one(self):
        return RatFunc(self.poly_one(), self.poly_one(), reduce=False)

    def const(self, c):
        return RatFunc(self.poly_const(c), self.poly_one(), reduce=False)

    def from_int(self, n):
        return self.const(n)

    def var(self, which):
        return RatFunc(self.poly_var(which), self.poly_one(), reduce=False)

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def __eq__(self, other):
        return (isinstance(other, FunctionField)
                and self.base == other.base and self.names == other.names)

    def __hash__(self):
        return hash((self.base.p, self.names))

    def __repr__(self):
        return "%r(%s)" % (self.base, ",".join(self.names))


def _grlex_key(e):
    return (sum(e), e)


def _check_same_field(a, b):
    if a.ff != b.ff:
        raise CharacteristicMismatch(
            "operands live in different fields: %r vs %r" % (a.ff, b.ff))


class MPoly:
    """Sparse multivariate polynomial over the prime field.

    ``terms`` maps exponent tuples (one slot per field generator) to
    nonzero scalars.  The zero polynomial has an empty dict.  Instances
    are treated as immutable; all operators return fresh objects.
    """

    __slots__ = ("ff", "terms")

    def __init__(self, ff, terms):
        self.ff = ff
        self.terms = terms

    # -- basic queries -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_const(self):
        if not self.terms:
            return True
        if len(self.terms) > 1:
            return False
        (e, _), = self.terms.items()
        return not any(e)

    def const_value(self):
        """Scalar value, assuming :meth:`is_const`."""
        if not self.terms:
            return self.ff.base.zero()
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def vars_used(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(i)
        return used

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def lc(self):
        return self.leading()[1]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ff.poly_const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.ff == other.ff and self.terms == other.terms

    def __hash__(self):
        return hash((self.ff, frozenset(self.terms.items())))

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, int):
            return self.ff.poly_const(other)
        if isinstance(other, Fraction) and self.ff.char == 0:
            return self.ff.poly_const(other)
        if isinstance(other, MPoly):
            _check_same_field(self, other)
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        base = self.ff.base
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = base.add(out.get(e, 0), c) if e in out else c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(self.ff, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ff.base.neg
        return MPoly(self.ff, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return MPoly(self.ff, {})
        if len(a) > len(b):
            a, b = b, a
        ff = self.ff
        if ff.nvars == 1:
            return self._mul_uni(ff, a, b)
        p = ff.base.p
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(map(int.__add__, e1, e2))
                c = c1 * c2
                if e in out:
                    c = out[e] + c
                if p:
                    c %= p
                if c:
                    out[e] = c
                else:
                    out.pop(e, None)
        return MPoly(ff, out)

    __rmul__ = __mul__

    @staticmethod
    def _mul_uni(ff, a, b):
        # dense convolution; univariate products dominate several pipelines
        da = max(e[0] for e in a)
        db = max(e[0] for e in b)
        p = ff.base.p
        acc = [0] * (da + db + 1)
        for (i,), c1 in a.items():
            for (j,), c2 in b.items():
                acc[i + j] += c1 * c2
        if p:
            out = {(i,): v % p for i, v in enumerate(acc) if v % p}
        else:
            out = {(i,): v for i, v in enumerate(acc) if v}
        return MPoly(ff, out)

    def scalar_mul(self, c):
        if not c:
            return MPoly(self.ff, {})
        mul = self.ff.base.mul
        return MPoly(self.ff, {e: mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need n >= 0")
        result = self.ff.poly_one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divide_exact(self, g):
        """Quotient self/g when g divides exactly, else None."""
        if g.is_zero():
            raise DivisionByZero("polynomial division by zero")
        _check_same_field(self, g)
        if self.is_zero():
            return self.ff.poly_zero()
        base = self.ff.base
        ge, gc = g.leading()
        gcinv = base.inv(gc)
        rem = dict(self.terms)
        quo = {}
        while rem:
            re = max(rem, key=_grlex_key)
            qe = tuple(map(int.__sub__, re, ge))
            if any(k < 0 for k in qe):
                return None
            qc = base.mul(rem[re], gcinv)
            quo[qe] = qc
            # rem -= (qc * x^qe) * g
            for e, c in g.terms.items():
                te = tuple(map(int.__add__, qe, e))
                s = base.sub(rem.get(te, 0), base.mul(qc, c))
                if s:
                    rem[te] = s
                else:
                    rem.pop(te, None)
        return MPoly(self.ff, quo)

    def monic(self):
        if not self.terms:
            return self
        c = self.lc()
        if c == self.ff.base.one():
            return self
        return self.scalar_mul(self.ff.base.inv(c))

    def partial(self, i):
        """Formal partial derivative with respect to generator i."""
        base = self.ff.base
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = list(e)
                e2[i] = k - 1
                c2 = base.mul(c, base.of_int(k))
                if c2:
                    out[tuple(e2)] = c2
        return MPoly(self.ff, out)

    # -- substitution ----------------------------------------------------

    def substitute(self, images):
        """Image under y_i -> images[i] with RatFunc values.

        Assembled over a single common denominator (the product of the
        image denominators raised to the per-variable maximum exponent),
        so only one fraction reduction happens at the end.
        """
        ff = self.ff
        assert len(images) == ff.nvars
        if not images:
            return RatFunc(self, ff.poly_one(), reduce=False)
        if not self.terms:
            return images[0].ff.zero()
        tgt = images[0].ff
        maxes = [0] * ff.nvars
        for e in self.terms:
            for i, k in enumerate(e):
                if k > maxes[i]:
                    maxes[i] = k
        num_pows = [_powers(images[i].num, maxes[i]) for i in range(ff.nvars)]
        den_pows = [_powers(images[i].den, maxes[i]) for i in range(ff.nvars)]
        num = tgt.poly_zero()
        for e, c in self.terms.items():
            part = tgt.poly_const(_lift_scalar(c, ff, tgt))
            for i, k in enumerate(e):
                if k:
                    part = part * num_pows[i][k]
                if maxes[i] - k:
                    part = part * den_pows[i][maxes[i] - k]
            num = num + part
        den = tgt.poly_one()
        for i in range(ff.nvars):
            if maxes[i]:
                den = den * den_pows[i][maxes[i]]
        return RatFunc(num, den)

    def substitute_poly(self, images):
        """Image under y_i -> images[i] with polynomial values (stays MPoly)."""
        ff = self.ff
        assert len(images) == ff.nvars
        if not images:
            return self
        tgt = images[0].ff
        maxes = [0] * ff.nvars
        for e in self.terms:
            for i, k in enumerate(e):
                if k > maxes[i]:
                    maxes[i] = k
        pows = [_powers(images[i], maxes[i]) for i in range(ff.nvars)]
        out = tgt.poly_zero()
        for e, c in self.terms.items():
            part = tgt.poly_const(_lift_scalar(c, ff, tgt))
            for i, k in enumerate(e):
                if k:
                    part = part * pows[i][k]
            out = out + part
        return out

    # -- printing ----------------------------------------------------------

    def _term_str(self, e, c):
        factors = []
        for i, k in enumerate(e):
            if k == 1:
                factors.append(self.ff.names[i])
            elif k:
                factors.append("%s^%d" % (self.ff.names[i], k))
        mono = "*".join(factors)
        if not mono:
            return str(c)
        one = self.ff.base.one()
        if c == one:
            return mono
        if self.ff.char == 0 and c == -one:
            return "-" + mono
        return "%s*%s" % (c, mono)

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms, key=_grlex_key, reverse=True)
        out = self._term_str(items[0], self.terms[items[0]])
        for e in items[1:]:
            s = self._term_str(e, self.terms[e])
            if s.startswith("-"):
                out += " - " + s[1:]
            else:
                out += " + " + s
        return out

    def __repr__(self):
        return "MPoly(%s)" % self

    def sort_key(self):
        """Deterministic total order key (degree, then terms); test helper."""
        return sorted(((_grlex_key(e), str(c)) for e, c in self.terms.items()),
                      reverse=True)


def _powers(p, n):
    """[p^0, p^1, ..., p^n] with shared partial products."""
    out = [p.ff.poly_one()]
    for _ in range(n):
        out.append(out[-1] * p)
    return out


def _lift_scalar(c, src, tgt):
    if src.char != tgt.char:
        raise CharacteristicMismatch(
            "cannot move scalar between characteristics %d and %d"
            % (src.char, tgt.char))
    return c


# ---------------------------------------------------------------------------
# gcd machinery
# ---------------------------------------------------------------------------

def _int_content(xs):
    g = 0
    for x in xs:
        g = math.gcd(g, x)
        if g == 1:
            break
    return g


def _uni_to_int_list(p, i):
    """Clear a Q-coefficient univariate poly to a primitive int list."""
    d = p.degree_in(i)
    coeffs = [Fraction(0)] * (d + 1)
    for e, c in p.terms.items():
        coeffs[e[i]] = c
    denlcm = 1
    for c in coeffs:
        denlcm = denlcm * c.denominator // math.gcd(denlcm, c.denominator)
    ints = [int(c * denlcm) for c in coeffs]
    g = _int_content(ints)
    if g > 1:
        ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


def _int_list_to_poly(ff, i, ints):
    out = {}
    for k, c in enumerate(ints):
        if c:
            e = [0] * ff.nvars
            e[i] = k
            out[tuple(e)] = Fraction(c)
    return MPoly(ff, out)


def _trim(xs):
    while xs and not xs[-1]:
        xs.pop()
    return xs


def _uni_gcd_p(a, b, p):
    """Euclid on dense int lists mod p; returns monic list."""
    a, b = _trim(a[:]), _trim(b[:])
    while b:
        inv = pow(b[-1], p - 2, p)
        db = len(b) - 1
        r = a[:]
        while len(r) - 1 >= db and r:
            c = r[-1] * inv % p
            m = len(r) - 1 - db
            for j in range(db + 1):
                r[m + j] = (r[m + j] - c * b[j]) % p
            _trim(r)
        a, b = b, r
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _int_prem(a, b):
    """Pseudo-remainder of primitive int lists (univariate)."""
    r = a[:]
    db = len(b) - 1
    lb = b[-1]
    while _trim(r) and len(r) - 1 >= db:
        c = r[-1]
        m = len(r) - 1 - db
        r = [lb * x for x in r]
        for j in range(db + 1):
            r[m + j] -= c * b[j]
    return _trim(r)


def _uni_gcd_q(a, b):
    """Primitive PRS gcd of primitive int lists; returns primitive list."""
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        if r:
            g = _int_content(r)
            if g > 1:
                r = [x // g for x in r]
            if r[-1] < 0:
                r = [-x for x in r]
        a, b = b, r
    return a


def _mv_content(p, v, limit, work):
    """gcd of the coefficients of p viewed as univariate in variable v."""
    slices = {}
    for e, c in p.terms.items():
        key = e[v]
        e0 = list(e)
        e0[v] = 0
        slices.setdefault(key, {})[tuple(e0)] = c
    cont = None
    for part in slices.values():
        q = MPoly(p.ff, part)
        cont = q if cont is None else _gcd_impl(cont, q, limit, work)
        if cont.is_const():
            break
    return cont.monic()


def _mv_prem(a, b, v):
    """Pseudo-remainder of a by b in the main variable v."""
    db = b.degree_in(v)
    lb = _coeff_in(b, v, db)
    r = a
    while not r.is_zero():
        dr = r.degree_in(v)
        if dr < db:
            break
        c = _coeff_in(r, v, dr)
        xm = r.ff.poly_var(v) ** (dr - db)
        r = lb * r - c * xm * b
    return r


def _coeff_in(p, v, k):
    out = {}
    for e, c in p.terms.items():
        if e[v] == k:
            e0 = list(e)
            e0[v] = 0
            out[tuple(e0)] = c
    return MPoly(p.ff, out)


def _term_guard(p, limit):
    if len(p.terms) > limit.gcd_term_bound:
        raise ResourceBoundExceeded(
            "gcd intermediate grew to %d terms (bound %d)"
            % (len(p.terms), limit.gcd_term_bound))


def _charge(work, amount, limit):
    work[0] += amount
    if work[0] > limit.gcd_work_bound:
        raise ResourceBoundExceeded(
            "gcd abandoned after %d term-operations (bound %d)"
            % (work[0], limit.gcd_work_bound))


# gcd results are shared safely because MPoly instances are never mutated;
# the whole cache is dropped when full rather than evicted piecemeal, the
# hot pairs repopulate it within a few arithmetic steps
_GCD_CACHE = {}
_GCD_CACHE_CAP = 1 << 15
_GCD_CACHE_TERMS = 400


def _gcd_impl(a, b, limit, work=None):
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_const() or b.is_const():
        return a.ff.poly_one()
    if len(a.terms) == 1 and len(b.terms) == 1:
        (ea,), (eb,) = a.terms, b.terms
        e = tuple(min(i, j) for i, j in zip(ea, eb))
        return MPoly(a.ff, {e: a.ff.base.one()})
    cacheable = len(a.terms) + len(b.terms) <= _GCD_CACHE_TERMS
    if cacheable:
        key = (a.ff.char, a.ff.names,
               frozenset(a.terms.items()), frozenset(b.terms.items()))
        hit = _GCD_CACHE.get(key)
        if hit is not None:
            return hit
    g = _gcd_core(a, b, limit, [0] if work is None else work)
    if cacheable:
        if len(_GCD_CACHE) >= _GCD_CACHE_CAP:
            _GCD_CACHE.clear()
        _GCD_CACHE[key] = g
    return g


def _gcd_core(a, b, limit, work):
    _charge(work, len(a.terms) + len(b.terms), limit)
    ua, ub = a.vars_used(), b.vars_used()
    ff = a.ff
    p = ff.char
    if len(ua | ub) == 1:
        (v,) = ua | ub
        if p:
            da, db = a.degree_in(v), b.degree_in(v)
            la = [0] * (da + 1)
            lb = [0] * (db + 1)
            for e, c in a.terms.items():
                la[e[v]] = c
            for e, c in b.terms.items():
                lb[e[v]] = c
            g = _uni_gcd_p(la, lb, p)
            out = {}
            for k, c in enumerate(g):
                if c:
                    e = [0] * ff.nvars
                    e[v] = k
                    out[tuple(e)] = c
            return MPoly(ff, out)
        g = _uni_gcd_q(_uni_to_int_list(a, v), _uni_to_int_list(b, v))
        return _int_list_to_poly(ff, v, g).monic()
    # several variables: probe the divisible cases first, they dominate in
    # fraction pipelines (gcd of d and d*q) and skip the PRS entirely
    if a.divide_exact(b) is not None:
        return b.monic()
    if b.divide_exact(a) is not None:
        return a.monic()
    # primitive PRS on the first used variable
    v = min(ua | ub)
    ca = _mv_content(a, v, limit, work)
    cb = _mv_content(b, v, limit, work)
    c = _gcd_impl(ca, cb, limit, work)
    a = a.divide_exact(ca)
    b = b.divide_exact(cb)
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    while not b.is_zero():
        _term_guard(a, limit)
        _charge(work, len(a.terms) + len(b.terms), limit)
        r = _mv_prem(a, b, v)
        if not r.is_zero():
            r = r.divide_exact(_mv_content(r, v, limit, work))
        a, b = b, r
    return (c * a).monic()


def poly_gcd(a, b, limit=DEFAULT_LIMITS):
    """Monic greatest common divisor of two polynomials.

    gcd(0, 0) is 0 by convention.  Raises ResourceBoundExceeded when an
    intermediate result crosses ``limit.gcd_term_bound`` terms.
    """
    _check_same_field(a, b)
    return _gcd_impl(a, b, limit).monic()


def poly_lcm(a, b, limit=DEFAULT_LIMITS):
    if a.is_zero() or b.is_zero():
        return a.ff.poly_zero()
    g = poly_gcd(a, b, limit)
    return (a.divide_exact(g) * b).monic()


# ---------------------------------------------------------------------------
# field elements
# ---------------------------------------------------------------------------

class RatFunc:
    """Element of K = k(y1, ..., yn) as a normalized fraction num/den.

    Invariants after construction: den is nonzero and monic; num == 0
    implies den == 1; num and den are coprime unless gcd reduction hit
    the term bound (exactness is unaffected, only canonicity).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den, reduce=True, limit=DEFAULT_LIMITS):
        _check_same_field(num, den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            den = num.ff.poly_one()
        elif reduce and not den.is_const():
            try:
                g = _gcd_impl(num, den, limit)
                if not g.is_const():
                    num = num.divide_exact(g)
                    den = den.divide_exact(g)
            except ResourceBoundExceeded:
                pass
        if not num.is_zero():
            base = num.ff.base
            c = den.lc()
            if c != base.one():
                cinv = base.inv(c)
                num = num.scalar_mul(cinv)
                den = den.scalar_mul(cinv)
        nterms = len(num.terms) + len(den.terms)
        if nterms > limit.max_fraction_terms:
            raise ResourceBoundExceeded(
                "fraction grew to %d terms (bound %d)"
                % (nterms, limit.max_fraction_terms))
        self.num = num
        self.den = den

    @property
    def ff(self):
        return self.num.ff

    # -- queries ---------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num == self.den

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def const_value(self):
        base = self.ff.base
        return base.div(self.num.const_value(), self.den.const_value())

    def is_poly(self):
        return self.den.is_const()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.num.terms == other.num.terms and self.den.terms == other.den.terms:
            return True
        return self.num * other.den == other.num * self.den

    __hash__ = None

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if self.ff != other.ff:
                raise CharacteristicMismatch(
                    "operands live in different fields: %r vs %r"
                    % (self.ff, other.ff))
            return other
        if isinstance(other, int) or (
                isinstance(other, Fraction) and self.ff.char == 0):
            return self.ff.const(other)
        if isinstance(other, MPoly):
            _check_same_field(self.num, other)
            return RatFunc(other, self.ff.poly_one(), reduce=False)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        na, da = self.num, self.den
        nb, db = other.num, other.den
        if da.terms == db.terms:
            # common denominator: one cheap reduction pass on the sum
            return RatFunc(na + nb, da)
        try:
            g = _gcd_impl(da, db, DEFAULT_LIMITS)
        except ResourceBoundExceeded:
            return RatFunc(na * db + nb * da, da * db, reduce=False)
        if g.is_const():
            return RatFunc(na * db + nb * da, da * db, reduce=False)
        da_r = da.divide_exact(g)
        db_r = db.divide_exact(g)
        t = na * db_r + nb * da_r
        try:
            g2 = _gcd_impl(t, g, DEFAULT_LIMITS)
        except ResourceBoundExceeded:
            g2 = None
        if g2 is None or g2.is_const():
            return RatFunc(t, da_r * db, reduce=False)
        return RatFunc(t.divide_exact(g2), da_r * db.divide_exact(g2),
                       reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        na, da = self.num, self.den
        nb, db = other.num, other.den
        if na.is_zero() or nb.is_zero():
            return self.ff.zero()
        # cross cancellation keeps products reduced without a final gcd
        try:
            if not (na.is_const() or db.is_const()):
                g1 = _gcd_impl(na, db, DEFAULT_LIMITS)
                if not g1.is_const():
                    na = na.divide_exact(g1)
                    db = db.divide_exact(g1)
            if not (nb.is_const() or da.is_const()):
                g2 = _gcd_impl(nb, da, DEFAULT_LIMITS)
                if not g2.is_const():
                    nb = nb.divide_exact(g2)
                    da = da.divide_exact(g2)
            reduced = True
        except ResourceBoundExceeded:
            reduced = False
        return RatFunc(na * nb, da * db, reduce=not reduced)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFunc(self.den, self.num, reduce=False)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            raise ValueError("powers must be integers")
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return self.ff.one()
        return RatFunc(self.num ** n, self.den ** n, reduce=False)

    def substitute(self, images):
        """Image under y_i -> images[i]; denominator must stay nonzero."""
        num = self.num.substitute(images)
        den = self.den.substitute(images)
        if den.is_zero():
            raise DivisionByZero("substitution maps denominator to zero")
        return num / den

    # -- printing ------------------------------------------------------------

    def __str__(self):
        if self.den.is_const() and self.den.const_value() == self.ff.base.one():
            return str(self.num)
        ns = str(self.num)
        if len(self.num.terms) > 1:
            ns = "(%s)" % ns
        ds = str(self.den)
        if not all(c in _IDENT_OK for c in ds):
            ds = "(%s)" % ds
        return "%s/%s" % (ns, ds)

    def __repr__(self):
        return "RatFunc(%s)" % self
