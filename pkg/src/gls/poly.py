"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are exponent tuples indexed by the ring's variable list; a
polynomial is a dict mapping exponent tuples to nonzero gmpy2.mpq
coefficients.  All arithmetic is exact.
"""

from gmpy2 import mpq

Q = mpq


def rational(p, q=1):
    return mpq(p, q)


class PolyRing:
    """A polynomial ring over Q with named variables.

    ``base`` optionally marks one variable as the base parameter of a
    family (it plays no role in the arithmetic, only in bookkeeping
    done by callers).  ``weights`` optionally assigns an integer weight
    to every variable for weighted-homogeneity checks.
    """

    def __init__(self, variables, base=None, weights=None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        for v in variables:
            if not v.isidentifier():
                raise ValueError("bad variable name: %r" % v)
        self.variables = variables
        self.index = {v: i for i, v in enumerate(variables)}
        self.nvars = len(variables)
        if base is not None and base not in self.index:
            raise ValueError("base variable %r not in ring" % base)
        self.base = base
        if weights is not None:
            weights = tuple(int(w) for w in weights)
            if len(weights) != self.nvars:
                raise ValueError("need one weight per variable")
        self.weights = weights
        self._zero_mon = (0,) * self.nvars

    def __repr__(self):
        return "PolyRing(%s)" % ", ".join(self.variables)

    def __eq__(self, other):
        return (isinstance(other, PolyRing)
                and self.variables == other.variables
                and self.base == other.base)

    def __hash__(self):
        return hash((self.variables, self.base))

    # -- constructors -------------------------------------------------

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {self._zero_mon: mpq(1)})

    def const(self, c):
        c = mpq(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {self._zero_mon: c})

    def var(self, name):
        i = self.index[name]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): mpq(1)})

    def gens(self):
        return [self.var(v) for v in self.variables]

    def monomial(self, exps, coeff=1):
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError("bad exponent vector")
        c = mpq(coeff)
        if c == 0:
            return self.zero()
        return Polynomial(self, {exps: c})

    def extend(self, new_variables, base=None):
        """A ring with extra variables appended after the current ones."""
        return PolyRing(self.variables + tuple(new_variables),
                        base=self.base if base is None else base)


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- basic queries -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1
                                  and self.ring._zero_mon in self.terms)

    def constant_coeff(self):
        return self.terms.get(self.ring._zero_mon, mpq(0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, name):
        i = self.ring.index[name]
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def variables_used(self):
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(self.ring.variables[i])
        return used

    def is_homogeneous(self, weights=None):
        if not self.terms:
            return True
        if weights is None:
            weights = self.ring.weights or (1,) * self.ring.nvars
        degs = {sum(w * e for w, e in zip(weights, m)) for m in self.terms}
        return len(degs) == 1

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("mixed rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = s + c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = mpq(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial(self.ring,
                              {m: c * v for m, v in self.terms.items()})
        other = self._coerce(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                s = out.get(m)
                if s is None:
                    out[m] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, type(mpq(0)))):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and substitution --------------------------------------

    def derivative(self, name):
        i = self.ring.index[name]
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                out[mm] = out.get(mm, mpq(0)) + c * e
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    def substitute(self, assignment):
        """Substitute variables by polynomials or rationals.

        ``assignment`` maps variable names to replacement values; the
        result lives in the same ring.
        """
        repl = {}
        for name, val in assignment.items():
            i = self.ring.index[name]
            if not isinstance(val, Polynomial):
                val = self.ring.const(val)
            repl[i] = val
        out = self.ring.zero()
        for m, c in self.terms.items():
            piece = self.ring.const(c)
            for i, e in enumerate(m):
                if not e:
                    continue
                if i in repl:
                    piece = piece * repl[i] ** e
                else:
                    piece = piece * self.ring.monomial(
                        tuple(e if j == i else 0
                              for j in range(self.ring.nvars)))
            out = out + piece
        return out

    def map_to(self, ring, rename=None):
        """Re-express the polynomial in another ring containing (renamed
        images of) all variables actually used."""
        rename = rename or {}
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, k in enumerate(m):
                if k:
                    name = self.ring.variables[i]
                    name = rename.get(name, name)
                    e[ring.index[name]] = k
            out[tuple(e)] = c
        return Polynomial(ring, out)

    # -- printing --------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        order = degrevlex(self.ring)
        items = sorted(self.terms.items(), key=lambda t: order.key(t[0]),
                       reverse=True)
        parts = []
        for m, c in items:
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(self.ring.variables[i])
                elif e > 1:
                    factors.append("%s^%d" % (self.ring.variables[i], e))
            if not factors:
                body = _qstr(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = _qstr(abs(c)) + "*" + "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    __repr__ = __str__


def _qstr(q):
    return str(q.numerator) if q.denominator == 1 else \
        "%s/%s" % (q.numerator, q.denominator)


# -- monomial orders ---------------------------------------------------


class MonomialOrder:
    """Base class; subclasses provide key(exps) -> tuple, larger = bigger."""

    name = "?"

    def key(self, m):
        raise NotImplementedError

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


class degrevlex(MonomialOrder):
    name = "degrevlex"

    def __init__(self, ring):
        self.ring = ring

    def key(self, m):
        return (sum(m),) + tuple(-e for e in reversed(m))


class lex(MonomialOrder):
    name = "lex"

    def __init__(self, ring):
        self.ring = ring

    def key(self, m):
        return m


class weighted_degrevlex(MonomialOrder):
    name = "weighted_degrevlex"

    def __init__(self, ring, weights):
        self.ring = ring
        self.weights = tuple(int(w) for w in weights)

    def key(self, m):
        return (sum(w * e for w, e in zip(self.weights, m)), sum(m)) \
            + tuple(-e for e in reversed(m))


class elimination_order(MonomialOrder):
    """Block order making a set of variables infinitely large.

    Any monomial involving a dropped variable beats any monomial in
    the kept variables only, so basis elements free of the dropped
    block generate the elimination ideal.
    """

    name = "elimination"

    def __init__(self, ring, drop):
        self.ring = ring
        self.drop = tuple(sorted(ring.index[v] for v in drop))
        dropset = set(self.drop)
        self.keep = tuple(i for i in range(ring.nvars) if i not in dropset)

    def key(self, m):
        d = tuple(m[i] for i in self.drop)
        k = tuple(m[i] for i in self.keep)
        return (sum(d),) + tuple(-e for e in reversed(d)) \
            + (sum(k),) + tuple(-e for e in reversed(k))


def order_by_name(ring, name):
    if name in (None, "degrevlex"):
        return degrevlex(ring)
    if name == "lex":
        return lex(ring)
    raise ValueError("unknown monomial order %r" % name)


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a, b):
    """a / b, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def leading_term(f, order):
    """(monomial, coefficient) of the largest term; f must be nonzero."""
    m = max(f.terms, key=order.key)
    return m, f.terms[m]


def jacobian(relations, variables):
    """Rows indexed by variables, columns by relations."""
    return [[f.derivative(v) for f in relations] for v in variables]
