"""Buchberger engine for ideals and submodules of free modules.

A module element over the polynomial ring is represented internally as
a dict mapping (component, monomial) to a nonzero rational coefficient.
Ideals are the rank-one case.  The same machinery provides normal
forms, syzygies and membership certificates: syzygies are read off a
basis of the graph module spanned by (g_i, e_i) under an order that
makes the value components infinitely larger than the tag components.

S-pairs are processed in normal selection order (smallest lcm first)
and discarded by both the coprime-lead and the chain criterion where
they apply.
"""

import heapq

from gmpy2 import gcd, lcm, mpq, mpz

from .poly import (Polynomial, monomial_div, monomial_lcm, monomial_mul)


class ModuleOrder:
    """Order on (component, monomial) pairs; key tuples of plain ints."""

    def key(self, cm):
        raise NotImplementedError


class POT(ModuleOrder):
    """Position over term: lower component index always wins."""

    def __init__(self, ring_order):
        self.ring_order = ring_order

    def key(self, cm):
        return (-cm[0],) + self.ring_order.key(cm[1])


class TOP(ModuleOrder):
    """Term over position; used with elimination ring orders so that a
    variable block can be eliminated from a module."""

    def __init__(self, ring_order):
        self.ring_order = ring_order

    def key(self, cm):
        return self.ring_order.key(cm[1]) + (-cm[0],)


def _negkey(k):
    return tuple(-x for x in k)


def _content_normalize(terms):
    """Scale a term dict so coefficients are coprime integers and the
    first (any) coefficient reference is positive; in-place, returns terms."""
    if not terms:
        return terms
    den = mpz(1)
    for c in terms.values():
        den = lcm(den, c.denominator)
    num = mpz(0)
    for c in terms.values():
        num = gcd(num, c.numerator * (den // c.denominator))
    if num == 0:
        return terms
    scale = mpq(den, num)
    for k in list(terms):
        terms[k] = terms[k] * scale
    return terms


class GBElement:
    __slots__ = ("terms", "lead", "leadcoeff", "leadkey")

    def __init__(self, terms, order):
        self.terms = terms
        self.lead = max(terms, key=order.key)
        self.leadcoeff = terms[self.lead]
        self.leadkey = order.key(self.lead)


def _reduce_full(vec, by_comp, order):
    """Full normal form of the term dict ``vec`` against reducers
    grouped by lead component."""
    kf = order.key
    work = dict(vec)
    out = {}
    heap = []
    for t in work:
        heapq.heappush(heap, (_negkey(kf(t)), t))
    while heap:
        _, t = heapq.heappop(heap)
        c = work.get(t)
        if c is None:
            continue
        comp, mon = t
        red = None
        for g in by_comp.get(comp, ()):
            q = monomial_div(mon, g.lead[1])
            if q is not None:
                red = (g, q)
                break
        if red is None:
            del work[t]
            out[t] = c
            continue
        g, q = red
        factor = c / g.leadcoeff
        for (gc, gm), gcoeff in g.terms.items():
            tt = (gc, monomial_mul(gm, q))
            cur = work.get(tt)
            if cur is None:
                nv = -factor * gcoeff
                if nv:
                    work[tt] = nv
                    heapq.heappush(heap, (_negkey(kf(tt)), tt))
            else:
                nv = cur - factor * gcoeff
                if nv:
                    work[tt] = nv
                else:
                    del work[tt]
    return out


def _spoly(f, g):
    cf, mf = f.lead
    cg, mg = g.lead
    L = monomial_lcm(mf, mg)
    qf = monomial_div(L, mf)
    qg = monomial_div(L, mg)
    out = {}
    for (c, m), coeff in f.terms.items():
        out[(c, monomial_mul(m, qf))] = coeff / f.leadcoeff
    for (c, m), coeff in g.terms.items():
        t = (c, monomial_mul(m, qg))
        cur = out.get(t)
        nv = (cur if cur is not None else mpq(0)) - coeff / g.leadcoeff
        if nv:
            out[t] = nv
        elif cur is not None:
            del out[t]
    return out


def module_buchberger(vectors, order, interreduce=True):
    """Basis of the module generated by ``vectors`` (term dicts).

    Returns a list of GBElement with pairwise indivisible lead terms;
    with ``interreduce`` the result is the reduced basis up to scaling
    (tails reduced, content-normalized).
    """
    G = []
    for v in vectors:
        if v:
            G.append(GBElement(_content_normalize(dict(v)), order))
    by_comp = {}
    for g in G:
        by_comp.setdefault(g.lead[0], []).append(g)

    pairs = []
    pending = set()

    def push_pairs(j):
        gj = G[j]
        cj, mj = gj.lead
        for i in range(j):
            gi = G[i]
            if gi is None or gi.lead[0] != cj:
                continue
            L = monomial_lcm(gi.lead[1], mj)
            heapq.heappush(pairs, (order.key((cj, L)), i, j, L))
            pending.add((i, j))

    for j in range(len(G)):
        push_pairs(j)

    while pairs:
        _, i, j, L = heapq.heappop(pairs)
        pending.discard((i, j))
        gi, gj = G[i], G[j]
        if gi is None or gj is None:
            continue
        comp = gi.lead[0]
        # coprime-lead criterion (valid in the rank-one situation: both
        # elements supported entirely in one component)
        if monomial_mul(gi.lead[1], gj.lead[1]) == L \
                and all(c == comp for c, _ in gi.terms) \
                and all(c == comp for c, _ in gj.terms):
            continue
        # chain criterion
        skip = False
        for k, gk in enumerate(G):
            if gk is None or k == i or k == j:
                continue
            if gk.lead[0] != comp:
                continue
            if monomial_div(L, gk.lead[1]) is None:
                continue
            p1 = (min(i, k), max(i, k))
            p2 = (min(j, k), max(j, k))
            if p1 not in pending and p2 not in pending:
                skip = True
                break
        if skip:
            continue
        s = _spoly(gi, gj)
        r = _reduce_full(s, by_comp, order)
        if r:
            e = GBElement(_content_normalize(r), order)
            G.append(e)
            by_comp.setdefault(e.lead[0], []).append(e)
            push_pairs(len(G) - 1)

    # minimalize: drop elements whose lead is divisible by another lead
    alive = [g for g in G if g is not None]
    alive.sort(key=lambda g: g.leadkey)
    kept = []
    for g in alive:
        if any(k.lead[0] == g.lead[0]
               and monomial_div(g.lead[1], k.lead[1]) is not None
               for k in kept):
            continue
        kept.append(g)
    if not interreduce:
        return kept
    # tail-reduce each element against the others
    final = []
    for idx, g in enumerate(kept):
        others = {}
        for jdx, h in enumerate(kept):
            if jdx != idx:
                others.setdefault(h.lead[0], []).append(h)
        r = _reduce_full(g.terms, others, order)
        final.append(GBElement(_content_normalize(r), order))
    final.sort(key=lambda g: g.leadkey)
    return final


def module_normal_form(vec, basis, order):
    by_comp = {}
    for g in basis:
        by_comp.setdefault(g.lead[0], []).append(g)
    return _reduce_full(vec, by_comp, order)


# -- conversions between Polynomial vectors and term dicts ---------------


def vector_to_terms(vec):
    """vec: sequence of Polynomial (one per component) -> term dict."""
    out = {}
    for comp, f in enumerate(vec):
        if f is None:
            continue
        for m, c in f.terms.items():
            out[(comp, m)] = c
    return out


def terms_to_vector(terms, rank, ring):
    polys = [dict() for _ in range(rank)]
    for (comp, m), c in terms.items():
        polys[comp][m] = c
    return [Polynomial(ring, d) for d in polys]


def poly_to_terms(f):
    return {(0, m): c for m, c in f.terms.items()}


def terms_to_poly(terms, ring):
    return Polynomial(ring, {m: c for (_, m), c in terms.items()})


# -- ideal-level interface ------------------------------------------------


def groebner_basis(polys, order, monic=True):
    """Reduced basis of the ideal generated by ``polys``."""
    ring = None
    vecs = []
    for f in polys:
        if f.is_zero():
            continue
        ring = f.ring
        vecs.append(poly_to_terms(f))
    if ring is None:
        return []
    basis = module_buchberger(vecs, POT(order))
    out = []
    for g in basis:
        f = terms_to_poly(g.terms, ring)
        if monic:
            f = f * (1 / g.leadcoeff)
        out.append(f)
    return out


def normal_form(f, basis_polys, order):
    """Normal form of a Polynomial against a basis given as Polynomials."""
    if f.is_zero():
        return f
    basis = [GBElement(poly_to_terms(g), POT(order))
             for g in basis_polys if not g.is_zero()]
    r = module_normal_form(poly_to_terms(f), basis, POT(order))
    return terms_to_poly(r, f.ring)


# -- graph module: syzygies and membership certificates -------------------


class GraphOrder(ModuleOrder):
    """Value components (below ``rank``) dominate tag components; POT
    within each block."""

    def __init__(self, ring_order, rank):
        self.ring_order = ring_order
        self.rank = rank

    def key(self, cm):
        comp, m = cm
        return ((1 if comp < self.rank else 0, -comp)
                + self.ring_order.key(m))


class GraphBasis:
    """Basis of the module spanned by (g_i, e_i) in R^rank + R^s.

    Supports membership tests with certificates and extraction of the
    syzygy module of the g_i, all against the same basis.
    """

    def __init__(self, vectors, rank, ring, ring_order, tagged=None):
        """``vectors``: list of term dicts living in components < rank.
        ``tagged``: indices of vectors that receive a tag component
        (default: all).  Untagged vectors still participate in the
        module but their coefficients are not reported."""
        self.rank = rank
        self.ring = ring
        self.order = GraphOrder(ring_order, rank)
        if tagged is None:
            tagged = range(len(vectors))
        tagged = list(tagged)
        self.ntags = len(tagged)
        tagof = {v: rank + i for i, v in enumerate(tagged)}
        embedded = []
        for i, v in enumerate(vectors):
            w = dict(v)
            if i in tagof:
                w[(tagof[i], ring._zero_mon)] = mpq(1)
            embedded.append(w)
        self.basis = module_buchberger(embedded, self.order)
        self._by_comp = {}
        for g in self.basis:
            self._by_comp.setdefault(g.lead[0], []).append(g)

    def syzygies(self):
        """Generators of the syzygy module of the tagged vectors, as
        term dicts over components 0..ntags-1."""
        out = []
        for g in self.basis:
            if g.lead[0] >= self.rank:
                syz = {(c - self.rank, m): coeff
                       for (c, m), coeff in g.terms.items()}
                out.append(syz)
        return out

    def reduce(self, vec):
        """Normal form of a value vector (term dict in components <
        rank); returns (residue, coeffs) where residue is the reduced
        value part and coeffs expresses vec - residue in the tagged
        generators (term dict over components 0..ntags-1)."""
        r = _reduce_full(vec, self._by_comp, self.order)
        residue = {}
        coeffs = {}
        for (c, m), coeff in r.items():
            if c < self.rank:
                residue[(c, m)] = coeff
            else:
                coeffs[(c - self.rank, m)] = -coeff
        return residue, coeffs

    def contains(self, vec):
        residue, _ = self.reduce(vec)
        return not residue


# -- numerical invariants of lead-term staircases -------------------------


def lead_monomials(basis_polys, order):
    return [max(f.terms, key=order.key) for f in basis_polys if f.terms]


def staircase_dimension(leads, nvars):
    """Krull dimension of R/I from the lead monomials of a basis:
    the size of a largest variable subset S such that no lead monomial
    is supported entirely inside S."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    if frozenset() in supports:
        return -1  # unit ideal
    best = -1

    def grow(candidate, start):
        nonlocal best
        best = max(best, len(candidate))
        for i in range(start, nvars):
            cand = candidate | {i}
            if all(not s <= cand for s in supports):
                grow(cand, i + 1)

    grow(frozenset(), 0)
    return best


def max_independent_set(leads, nvars):
    """A largest variable subset supporting no lead monomial entirely."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    if frozenset() in supports:
        return None
    best = frozenset()

    def grow(candidate, start):
        nonlocal best
        if len(candidate) > len(best):
            best = candidate
        for i in range(start, nvars):
            cand = candidate | {i}
            if all(not s <= cand for s in supports):
                grow(cand, i + 1)

    grow(frozenset(), 0)
    return best


def standard_monomial_count(leads, nvars):
    """Number of monomials outside the lead-term staircase, or None if
    infinite."""
    bounds = []
    for i in range(nvars):
        b = None
        for m in leads:
            if m[i] and all(e == 0 for j, e in enumerate(m) if j != i):
                b = m[i] if b is None else min(b, m[i])
        if b is None:
            if any(all(e == 0 for e in m) for m in leads):
                return 0
            return None
        bounds.append(b)

    from itertools import product
    count = 0
    for m in product(*(range(b) for b in bounds)):
        if not any(all(x >= y for x, y in zip(m, lead)) for lead in leads):
            count += 1
    return count
