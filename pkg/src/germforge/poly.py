"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Ring` fixes an ordered tuple of variable names together with a
:class:`MonomialOrder`.  Polynomials always carry their ring; arithmetic
between different rings is an error, never a silent coercion.

Monomials are plain tuples of non-negative exponents.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Integral

from gmpy2 import mpq

__all__ = [
    "QQ",
    "MonomialOrder",
    "LEX",
    "GREVLEX",
    "LOCAL",
    "Ring",
    "Polynomial",
    "RingMismatchError",
    "mono_mul",
    "mono_div",
    "mono_divides",
    "mono_lcm",
]


class RingMismatchError(ValueError):
    """Operands live in different polynomial rings."""


def QQ(value, den=None):
    """Coerce ``value`` to an exact rational (``gmpy2.mpq``).

    Floats are rejected: they would bring rounding into exact decisions.
    """
    if den is not None:
        return mpq(QQ(value)) / QQ(den)
    if isinstance(value, float):
        raise TypeError("floating-point coefficients are not supported")
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return mpq(value.strip())
    return mpq(value)


# -- monomials ---------------------------------------------------------------

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    """True if monomial ``a`` divides ``b``."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


# -- orders ------------------------------------------------------------------

def _lex_key(e):
    return e


def _lex_neg(e):
    return tuple(-x for x in e)


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


def _grevlex_neg(e):
    return (-sum(e),) + e[::-1]


def _local_key(e):
    return (-sum(e),) + tuple(-x for x in reversed(e))


def _local_neg(e):
    return (sum(e),) + e[::-1]


def _homlocal_key(e):
    # degree first, then the first (homogenising) variable, then the local
    # tie-break on the rest
    return (sum(e), e[0]) + tuple(-x for x in reversed(e[1:]))


def _homlocal_neg(e):
    return (-sum(e), -e[0]) + e[:0:-1]


class MonomialOrder:
    """A monomial order; ``key(e)`` is larger for larger monomials.

    ``neg(e)`` is the reversed comparison key (smaller for larger
    monomials), handy for ``heapq``.

    ``kind`` is one of ``"lex"``, ``"grevlex"``, ``"local"`` (negative degree
    reverse lexicographic, where 1 > x_i), ``"homlocal"`` or ``"block"``.
    ``"homlocal"`` is the global order on ``(t, x)`` whose restriction to
    homogeneous polynomials dehomogenises to the local order on ``x``.  Block orders
    compare the first block by grevlex, then the next, and so on; they are
    the elimination orders used to project varieties.
    """

    __slots__ = ("kind", "blocks", "key", "neg")

    def __init__(self, kind, blocks=None):
        if kind in ("ds", "negdegrevlex"):
            kind = "local"
        if kind not in ("lex", "grevlex", "local", "homlocal", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.blocks = tuple(blocks) if blocks else None
        if kind == "lex":
            self.key, self.neg = _lex_key, _lex_neg
        elif kind == "grevlex":
            self.key, self.neg = _grevlex_key, _grevlex_neg
        elif kind == "local":
            self.key, self.neg = _local_key, _local_neg
        elif kind == "homlocal":
            self.key, self.neg = _homlocal_key, _homlocal_neg
        else:
            if not self.blocks:
                raise ValueError("block order needs block sizes")
            cuts = []
            start = 0
            for size in self.blocks:
                cuts.append((start, start + size))
                start += size
            cuts = tuple(cuts)

            def key(e):
                out = ()
                for a, b in cuts:
                    out += _grevlex_key(e[a:b])
                return out

            def neg(e):
                out = ()
                for a, b in cuts:
                    out += _grevlex_neg(e[a:b])
                return out

            self.key, self.neg = key, neg

    @property
    def is_global(self):
        return self.kind != "local"

    def _ident(self):
        return (self.kind, self.blocks)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder('block', {list(self.blocks)})"
        return f"MonomialOrder({self.kind!r})"


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")
LOCAL = MonomialOrder("local")


# -- rings -------------------------------------------------------------------

class Ring:
    """Polynomial ring Q[names] with a monomial order."""

    __slots__ = ("names", "order", "_index")

    def __init__(self, names, order=GREVLEX):
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self.order = order
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def nvars(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r} in ring {self.names}") from None

    def with_order(self, order):
        if order == self.order:
            return self
        return Ring(self.names, order)

    def zero_exp(self):
        return (0,) * len(self.names)

    def gen(self, i):
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * len(self.names)
        e[i] = 1
        return Polynomial(self, {tuple(e): mpq(1)}, _clean=True)

    @property
    def gens(self):
        return tuple(self.gen(i) for i in range(len(self.names)))

    def const(self, c):
        c = QQ(c)
        return Polynomial(self, {self.zero_exp(): c} if c else {}, _clean=True)

    @property
    def zero(self):
        return Polynomial(self, {}, _clean=True)

    @property
    def one(self):
        return self.const(1)

    def __call__(self, text):
        """Parse ``text`` into a polynomial of this ring."""
        from .parsing import parse_polynomial

        return parse_polynomial(text, self)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.names == other.names
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.names, self.order))

    def __repr__(self):
        return f"Ring({' '.join(self.names)!r}, {self.order!r})"


# -- polynomials -------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial.

    Internally a dict ``{exponent tuple: mpq}`` without zero coefficients;
    :attr:`terms` exposes the canonical list sorted strictly descending in
    the ring's order.
    """

    __slots__ = ("ring", "_d", "_terms", "_lead")

    def __init__(self, ring, terms=None, _clean=False):
        self.ring = ring
        if _clean:
            self._d = terms
        else:
            d = {}
            n = ring.nvars
            for e, c in (terms or {}).items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} has wrong length for {ring}")
                if any(x < 0 for x in e):
                    raise ValueError(f"negative exponent in {e}")
                c = QQ(c)
                if c:
                    d[e] = d.get(e, 0) + c
                    if not d[e]:
                        del d[e]
            self._d = d
        self._terms = None
        self._lead = None

    # construction helpers ---------------------------------------------------

    @classmethod
    def from_terms(cls, ring, pairs):
        d = {}
        for e, c in pairs:
            e = tuple(e)
            d[e] = d.get(e, 0) + QQ(c)
        return cls(ring, {e: c for e, c in d.items() if c}, _clean=True)

    def with_ring(self, ring):
        """Same polynomial viewed in ``ring`` (same variables, other order)."""
        if ring.names != self.ring.names:
            raise RingMismatchError(f"cannot move {self.ring} to {ring}")
        if ring == self.ring:
            return self
        return Polynomial(ring, self._d, _clean=True)

    def embed(self, ring, positions=None):
        """Map into a larger ring; variable i goes to ``positions[i]``.

        By default variables are matched by name.
        """
        if positions is None:
            positions = [ring.index(n) for n in self.ring.names]
        n = ring.nvars
        d = {}
        for e, c in self._d.items():
            f = [0] * n
            for i, x in enumerate(e):
                f[positions[i]] += x
            d[tuple(f)] = c
        return Polynomial(ring, d, _clean=True)

    # basic protocol ---------------------------------------------------------

    @property
    def terms(self):
        if self._terms is None:
            key = self.ring.order.key
            self._terms = sorted(self._d.items(), key=lambda t: key(t[0]), reverse=True)
        return self._terms

    def as_dict(self):
        return dict(self._d)

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def is_zero(self):
        return not self._d

    def is_constant(self):
        return not self._d or (len(self._d) == 1 and not any(next(iter(self._d))))

    def coefficient(self, exps):
        return self._d.get(tuple(exps), mpq(0))

    @property
    def constant_term(self):
        return self._d.get(self.ring.zero_exp(), mpq(0))

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return self.ring.const(other)
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return other

    # leading data under the ring order -------------------------------------------

    @property
    def lm(self):
        if self._lead is None:
            if not self._d:
                raise ValueError("zero polynomial has no leading monomial")
            self._lead = max(self._d, key=self.ring.order.key)
        return self._lead

    @property
    def lc(self):
        return self._d[self.lm]

    def lt(self):
        return self.lm, self.lc

    def total_degree(self):
        if not self._d:
            return -1
        return max(sum(e) for e in self._d)

    def order_at_origin(self):
        """Lowest total degree of a term (the order of vanishing at 0)."""
        if not self._d:
            return -1
        return min(sum(e) for e in self._d)

    def homogeneous_part(self, deg):
        return Polynomial(
            self.ring, {e: c for e, c in self._d.items() if sum(e) == deg}, _clean=True
        )

    def initial_form(self):
        """Lowest-degree homogeneous part (generator of the tangent cone)."""
        if not self._d:
            return self
        return self.homogeneous_part(self.order_at_origin())

    def variables(self):
        """Indices of variables occurring in the polynomial."""
        used = set()
        for e in self._d:
            used.update(i for i, x in enumerate(e) if x)
        return sorted(used)

    def monic(self):
        if not self._d:
            return self
        inv = 1 / self.lc
        return Polynomial(self.ring, {e: c * inv for e, c in self._d.items()}, _clean=True)

    def primitive(self):
        """Scale to integer coefficients with gcd 1 and positive leading coefficient."""
        if not self._d:
            return self
        from math import gcd, lcm

        den = 1
        for c in self._d.values():
            den = lcm(den, int(c.denominator))
        nums = [int(c * den) for c in self._d.values()]
        g = 0
        for x in nums:
            g = gcd(g, x)
        scale = mpq(den, g)
        if self.lc < 0:
            scale = -scale
        return Polynomial(self.ring, {e: c * scale for e, c in self._d.items()}, _clean=True)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        if len(other._d) > len(self._d):
            big, small = other._d, self._d
        else:
            big, small = self._d, other._d
        d = dict(big)
        for e, c in small.items():
            v = d.get(e)
            if v is None:
                d[e] = c
            else:
                v = v + c
                if v:
                    d[e] = v
                else:
                    del d[e]
        return Polynomial(self.ring, d, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self._d.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        c = QQ(c)
        if not c:
            return self.ring.zero
        return Polynomial(self.ring, {e: v * c for e, v in self._d.items()}, _clean=True)

    def mul_term(self, mono, coeff):
        coeff = QQ(coeff)
        if not coeff:
            return self.ring.zero
        return Polynomial(
            self.ring,
            {mono_mul(e, mono): c * coeff for e, c in self._d.items()},
            _clean=True,
        )

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        d = {}
        for e1, c1 in self._d.items():
            for e2, c2 in other._d.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = d.get(e)
                d[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.ring, {e: c for e, c in d.items() if c}, _clean=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            q, r = divmod_single(self, other)
            if r:
                raise ValueError("polynomial division is not exact")
            return q
        return self.scale(1 / QQ(other))

    def __pow__(self, n):
        if not isinstance(n, Integral) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.names == other.ring.names and self._d == other._d
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
            return self._d == ({self.ring.zero_exp(): QQ(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.names, frozenset(self._d.items())))

    # calculus and evaluation -------------------------------------------------

    def partial_derivative(self, var):
        if isinstance(var, str):
            var = self.ring.index(var)
        if not 0 <= var < self.ring.nvars:
            raise IndexError(f"variable index {var} out of range for {self.ring}")
        d = {}
        for e, c in self._d.items():
            k = e[var]
            if k:
                f = list(e)
                f[var] = k - 1
                d[tuple(f)] = c * k
        return Polynomial(self.ring, d, _clean=True)

    diff = partial_derivative

    def gradient(self):
        return [self.partial_derivative(i) for i in range(self.ring.nvars)]

    def evaluate(self, point):
        point = [QQ(v) for v in point]
        if len(point) != self.ring.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, ring has {self.ring.nvars} variables"
            )
        total = mpq(0)
        powers = [dict() for _ in point]
        for e, c in self._d.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    p = powers[i].get(k)
                    if p is None:
                        p = point[i] ** k
                        powers[i][k] = p
                    term *= p
            total += term
        return total

    __call__ = evaluate

    def substitute(self, images):
        """Replace variable i by ``images[i]`` (polynomials of one common ring)."""
        images = list(images)
        if len(images) != self.ring.nvars:
            raise ValueError(
                f"need {self.ring.nvars} images, got {len(images)}"
            )
        target = None
        for img in images:
            if isinstance(img, Polynomial):
                if target is None:
                    target = img.ring
                elif img.ring != target:
                    raise RingMismatchError("substitution images live in different rings")
        if target is None:
            raise ValueError("substitution needs at least one polynomial image")
        images = [img if isinstance(img, Polynomial) else target.const(img) for img in images]
        cache = [dict() for _ in images]

        def power(i, k):
            p = cache[i].get(k)
            if p is None:
                p = images[i] ** k
                cache[i][k] = p
            return p

        acc = {}
        for e, c in self._d.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for f, v in term._d.items():
                w = acc.get(f)
                acc[f] = v if w is None else w + v
        return Polynomial(target, {f: v for f, v in acc.items() if v}, _clean=True)

    def translate(self, point):
        """Polynomial p(x + point): moves ``point`` to the origin."""
        point = [QQ(v) for v in point]
        gens = self.ring.gens
        return self.substitute([g + v for g, v in zip(gens, point)])

    # text -------------------------------------------------------------------

    def __str__(self):
        from .parsing import format_polynomial

        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, ring={self.ring.names})"


def divmod_single(a, b):
    """Divide ``a`` by one polynomial ``b`` under a global order.

    Local orders are replaced by grevlex, which makes the division terminate.
    """
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")
    a_ring = a.ring
    ring = a.ring if a.ring.order.is_global else a.ring.with_order(GREVLEX)
    a = a.with_ring(ring)
    b = b.with_ring(ring)
    key = ring.order.key
    lb, cb = b.lm, b.lc
    tail = [(e, c) for e, c in b._d.items() if e != lb]
    rem = dict(a._d)
    q = {}
    r = {}
    while rem:
        m = max(rem, key=key)
        c = rem.pop(m)
        if mono_divides(lb, m):
            s = mono_div(m, lb)
            f = c / cb
            q[s] = f
            for e, v in tail:
                t = mono_mul(e, s)
                w = rem.get(t, 0) - f * v
                if w:
                    rem[t] = w
                else:
                    rem.pop(t, None)
        else:
            r[m] = c
    home = a_ring
    return (
        Polynomial(home, q, _clean=True),
        Polynomial(home, r, _clean=True),
    )
