"""Ideal arithmetic: intersection, quotient, saturation, elimination,
dimension, radical membership, minimal primes and radicals.

Decomposition into minimal primes splits on visible factorizations of
basis elements and otherwise reduces to dimension zero along a maximal
independent variable set (saturating by the product of leading
coefficients), where primality is certified by comparing the degree of
the minimal polynomial of a generic linear form with the vector-space
dimension over the rational function field of the independent block.
"""

import random

from . import factor
from .groebner import (groebner_basis, lead_monomials,
                       max_independent_set, normal_form,
                       staircase_dimension, standard_monomial_count)
from .poly import (Polynomial, degrevlex, elimination_order, leading_term,
                   monomial_div)


def _fresh_name(ring, stem):
    name = stem
    k = 0
    while name in ring.index:
        name = "%s%d" % (stem, k)
        k += 1
    return name


class Ideal:
    """An ideal of a polynomial ring, held as a generator list with a
    cached reduced basis."""

    def __init__(self, ring, gens):
        self.ring = ring
        self.gens = [g for g in gens if not g.is_zero()]
        self._gb = None
        self._dim = None
        self._primes = None

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(str(g) for g in self.gens)

    @property
    def order(self):
        return degrevlex(self.ring)

    def groebner(self):
        if self._gb is None:
            self._gb = groebner_basis(self.gens, self.order)
        return self._gb

    # -- predicates -----------------------------------------------------

    def is_zero(self):
        return not self.groebner()

    def is_unit(self):
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def reduce(self, f):
        return normal_form(f, self.groebner(), self.order)

    def contains_poly(self, f):
        return self.reduce(f).is_zero()

    def contains(self, other):
        return all(self.contains_poly(g) for g in other.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal) or self.ring != other.ring:
            return NotImplemented
        return self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.ring, tuple(self.groebner())))

    def radical_contains_poly(self, f):
        """Membership of f in the radical (one auxiliary variable)."""
        if self.contains_poly(f):
            return True
        aux = _fresh_name(self.ring, "rab_")
        ext = self.ring.extend((aux,))
        gens = [g.map_to(ext) for g in self.gens]
        gens.append(ext.one() - ext.var(aux) * f.map_to(ext))
        return Ideal(ext, gens).is_unit()

    # -- constructions --------------------------------------------------

    def sum(self, other):
        return Ideal(self.ring, self.gens + other.gens)

    def product(self, other):
        return Ideal(self.ring,
                     [a * b for a in self.gens for b in other.gens])

    def intersect(self, other):
        if not self.gens:
            return Ideal(self.ring, [])
        if not other.gens:
            return Ideal(self.ring, [])
        aux = _fresh_name(self.ring, "mix_")
        ext = self.ring.extend((aux,))
        w = ext.var(aux)
        gens = [w * g.map_to(ext) for g in self.gens]
        gens += [(ext.one() - w) * g.map_to(ext) for g in other.gens]
        return Ideal(ext, gens).eliminate([aux]).contract(self.ring)

    def quotient(self, other):
        """(self : other)."""
        if not other.gens:
            return Ideal(self.ring, [self.ring.one()])
        result = None
        for f in other.gens:
            qf = self._quotient_single(f)
            result = qf if result is None else result.intersect(qf)
        return result

    def _quotient_single(self, f):
        if f.is_zero():
            return Ideal(self.ring, [self.ring.one()])
        inter = self.intersect(Ideal(self.ring, [f]))
        return Ideal(self.ring,
                     [poly_exact_div(g, f) for g in inter.groebner()])

    def saturate(self, other):
        """(self : other^infinity); the intersection of the saturations
        at the single generators."""
        if isinstance(other, Polynomial):
            other = Ideal(self.ring, [other])
        if not other.gens:
            return Ideal(self.ring, [self.ring.one()])
        result = None
        for f in other.gens:
            s = self._saturate_single(f)
            result = s if result is None else result.intersect(s)
        return result

    def _saturate_single(self, f):
        if f.is_zero():
            return Ideal(self.ring, [self.ring.one()])
        if f.is_constant():
            return self
        aux = _fresh_name(self.ring, "sat_")
        ext = self.ring.extend((aux,))
        gens = [g.map_to(ext) for g in self.gens]
        gens.append(ext.one() - ext.var(aux) * f.map_to(ext))
        return Ideal(ext, gens).eliminate([aux]).contract(self.ring)

    def eliminate(self, names):
        """The subideal of elements free of the named variables, as an
        ideal of the same ring."""
        order = elimination_order(self.ring, names)
        gb = groebner_basis(self.gens, order)
        dropset = set(names)
        keep = [g for g in gb if not (g.variables_used() & dropset)]
        return Ideal(self.ring, keep)

    def contract(self, ring):
        """Re-express in a smaller ring containing every used variable."""
        return Ideal(ring, [g.map_to(ring) for g in self.gens])

    def extend_to(self, ring):
        return Ideal(ring, [g.map_to(ring) for g in self.gens])

    # -- invariants -------------------------------------------------------

    def dimension(self):
        """Krull dimension of ring/self (-1 for the unit ideal)."""
        if self._dim is None:
            gb = self.groebner()
            if not gb:
                self._dim = self.ring.nvars
            else:
                self._dim = staircase_dimension(
                    lead_monomials(gb, self.order), self.ring.nvars)
        return self._dim

    def vdim(self):
        """Q-dimension of ring/self; None if not finite."""
        gb = self.groebner()
        if not gb:
            return None
        return standard_monomial_count(lead_monomials(gb, self.order),
                                       self.ring.nvars)

    # -- decomposition ----------------------------------------------------

    def minimal_primes(self):
        if self._primes is None:
            if self.is_unit():
                self._primes = []
            else:
                found = _decompose(self)
                self._primes = _minimalize(found)
        return self._primes

    def radical(self):
        primes = self.minimal_primes()
        if not primes:
            return Ideal(self.ring, [self.ring.one()])
        out = primes[0]
        for p in primes[1:]:
            out = out.intersect(p)
        return out

    def is_radical(self):
        return self.radical() == self

    def is_prime(self):
        """Prime and proper (the zero ideal of a domain quotient counts)."""
        if self.is_unit():
            return False
        primes = self.minimal_primes()
        return len(primes) == 1 and primes[0] == self


def poly_exact_div(g, f):
    """Exact quotient g/f; raises if f does not divide g."""
    ring = g.ring
    order = degrevlex(ring)
    q = ring.zero()
    lf, cf = leading_term(f, order)
    r = g
    while not r.is_zero():
        lr, cr = leading_term(r, order)
        mq = monomial_div(lr, lf)
        if mq is None:
            raise ArithmeticError("inexact division")
        t = ring.monomial(mq, cr / cf)
        q = q + t
        r = r - t * f
    return q


# -- minimal prime decomposition -------------------------------------------


def _minimalize(ideals):
    uniq = []
    for i in ideals:
        if not any(i == j for j in uniq):
            uniq.append(i)
    out = []
    for i in uniq:
        if not any(j is not i and i.contains(j) for j in uniq):
            out.append(i)
    # deterministic order: by dimension descending then basis strings
    out.sort(key=lambda p: (-p.dimension(),
                            [str(g) for g in p.groebner()]))
    return out


def _decompose(ideal):
    work = [ideal]
    primes = []
    while work:
        cur = work.pop()
        if cur.is_unit():
            continue
        split = _split_on_factors(cur)
        if split is not None:
            work.extend(split)
            continue
        certified, branches = _leaf_decompose(cur)
        primes.extend(certified)
        work.extend(branches)
    return primes


def _split_on_factors(ideal):
    """Branch on a basis element that factors over Q, or replace a pure
    power by its root.  Returns a list of larger ideals, or None."""
    base = ideal.groebner()
    for g in base:
        factors = factor.factor_list(g)
        if len(factors) == 1 and factors[0][1] == 1:
            continue
        if any(ideal.contains_poly(f) for f, _ in factors):
            continue  # a factor already vanishes; no progress here
        if len(factors) == 1:
            root = factors[0][0]
            return [Ideal(ideal.ring, base + [root])]
        return [Ideal(ideal.ring, base + [f]) for f, _ in factors]
    return None


def _leaf_decompose(ideal):
    """Reduce to dimension zero over the function field of a maximal
    independent variable block; certify primality or split further.

    Returns (certified_primes, further_branches)."""
    ring = ideal.ring
    gb = ideal.groebner()
    order = ideal.order
    leads = lead_monomials(gb, order)
    indep = max_independent_set(leads, ring.nvars)
    dep = [ring.variables[i] for i in range(ring.nvars)
           if i not in indep]
    branches = []

    if indep:
        elim = elimination_order(ring, dep)
        gbp = groebner_basis(ideal.gens, elim)
        h = ring.one()
        seen = set()
        for g in gbp:
            lc = _lead_coefficient_in_block(g, elim, dep)
            if lc.is_constant():
                continue
            for f, _ in factor.factor_list(lc):
                if f not in seen:
                    seen.add(f)
                    h = h * f
        if not h.is_constant():
            sat = ideal.saturate(h)
            bigger = Ideal(ring, ideal.groebner() + [h])
            branches.append(bigger)
            if sat.is_unit():
                return [], branches
            if not (len(sat.groebner()) == len(gb)
                    and sat.groebner() == gb):
                # restart the whole analysis on the saturated ideal
                branches.append(sat)
                return [], branches
            ideal = sat
            gbp = groebner_basis(ideal.gens, elim)
    else:
        elim = order
        gbp = gb

    certified, extra = _zero_dim_over_block(ideal, gbp, elim, dep)
    return certified, branches + extra


def _lead_coefficient_in_block(g, elim_order, dep):
    """Leading coefficient of g seen as a polynomial in the dep block
    with coefficients in the remaining variables."""
    ring = g.ring
    dep_idx = [ring.index[v] for v in dep]
    lead, _ = leading_term(g, elim_order)
    lead_dep = tuple(lead[i] for i in dep_idx)
    terms = {}
    for m, c in g.terms.items():
        if tuple(m[i] for i in dep_idx) == lead_dep:
            mm = list(m)
            for i in dep_idx:
                mm[i] = 0
            terms[tuple(mm)] = c
    return Polynomial(ring, terms)


def _zero_dim_over_block(ideal, gbp, elim, dep):
    """Primality of an ideal that is zero-dimensional over the function
    field of the non-dep variables (and equal to its own saturation by
    the dep-block leading coefficients)."""
    ring = ideal.ring
    dep_idx = [ring.index[v] for v in dep]
    leads = lead_monomials(gbp, elim)
    dep_leads = [tuple(m[i] for i in dep_idx) for m in leads]
    vd = standard_monomial_count(dep_leads, len(dep_idx))
    if vd is None:
        raise ArithmeticError("block not zero-dimensional")
    if vd == 0:
        return [], []

    rng = random.Random(17)
    candidates = [[1 if j == i else 0 for j in range(len(dep))]
                  for i in range(len(dep))]
    for _ in range(8):
        candidates.append([rng.randint(1, 5) for _ in dep])

    for coeffs in candidates:
        lam = ring.zero()
        for c, v in zip(coeffs, dep):
            lam = lam + ring.var(v) * c
        m = _minimal_polynomial(ideal, lam, dep)
        if m is None:
            continue
        factors = factor.factor_list(m)
        s_factors = [(f, k) for f, k in factors
                     if f.degree_in(m.ring.variables[-1]) > 0]
        if len(s_factors) == 1 and s_factors[0][1] == 1:
            f = s_factors[0][0]
            if f.degree_in(m.ring.variables[-1]) == vd:
                return [ideal], []
            continue  # wrong linear form, retry
        branches = []
        s_name = m.ring.variables[-1]
        for f, _ in s_factors:
            g = f.substitute({s_name: lam.map_to(m.ring)}).map_to(ring)
            branches.append(Ideal(ring, ideal.groebner() + [g]))
        return [], branches
    raise ArithmeticError("could not certify primality of %r" % ideal)


def _minimal_polynomial(ideal, lam, dep):
    """Minimal polynomial over the independent-block function field of
    the element lam, as a polynomial in the fresh last variable; None
    when no basis element of minimal degree generates the elimination
    ideal (caller retries with another linear form)."""
    ring = ideal.ring
    s = _fresh_name(ring, "mp_")
    ext = ring.extend((s,))
    gens = [g.map_to(ext) for g in ideal.gens]
    gens.append(ext.var(s) - lam.map_to(ext))
    elim = Ideal(ext, gens).eliminate(dep)
    cands = [g for g in elim.groebner() if g.degree_in(s) > 0]
    if not cands:
        return None
    return _block_gcd(cands, s)


def _block_gcd(polys, s):
    """gcd of polynomials seen in F[s], F the fraction field of the
    other variables (delegated to sympy)."""
    import sympy
    ring = polys[0].ring
    exprs = [factor.to_sympy(p) for p in polys]
    s_sym = sympy.Symbol(s)
    g = sympy.Poly(exprs[0], s_sym)
    for e in exprs[1:]:
        g = g.gcd(sympy.Poly(e, s_sym))
    expr = g.as_expr()
    num, _ = sympy.fraction(sympy.together(expr))
    return factor.from_sympy(ring, sympy.expand(num))
