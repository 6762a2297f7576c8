"""Finitely presented modules over quotients of polynomial rings.

A module is the cokernel of a presentation matrix over R = ambient/I0;
columns are relations among the free generators.  Syzygies over R are
computed in the ambient ring after appending the defining-ideal
multiples of the free basis vectors, then discarding their
coefficients.  On top of the presentation calculus sit Fitting ideals,
duals, Ext^1 (with its functorial maps) and annihilators of
subquotients, which is everything the smoothness criteria consume.
"""


from .groebner import GraphBasis, terms_to_vector, vector_to_terms
from .ideals import Ideal
from .poly import degrevlex, jacobian


class QuotRing:
    """ambient/defining, with the ambient's default monomial order."""

    def __init__(self, ambient, defining):
        self.ambient = ambient
        if isinstance(defining, (list, tuple)):
            defining = Ideal(ambient, list(defining))
        self.defining = defining
        self.order = degrevlex(ambient)

    def __repr__(self):
        return "QuotRing(%s mod %d gens)" % (self.ambient,
                                             len(self.defining.gens))

    def reduce(self, f):
        return self.defining.reduce(f)

    def is_zero_elt(self, f):
        return self.defining.contains_poly(f)

    def thicken(self, extra):
        """The quotient by the defining ideal enlarged by ``extra``."""
        return QuotRing(self.ambient,
                        Ideal(self.ambient, self.defining.gens + list(extra)))


def _graph_over(qring, vectors, rank):
    """GraphBasis over the quotient ring: the given vectors are tagged,
    defining-ideal multiples of the basis vectors are appended untagged."""
    ring = qring.ambient
    zero = ring.zero()
    cols = [vector_to_terms(v) for v in vectors]
    tagged = list(range(len(cols)))
    for q in qring.defining.gens:
        for k in range(rank):
            vec = [zero] * rank
            vec[k] = q
            cols.append(vector_to_terms(vec))
    return GraphBasis(cols, rank, ring, qring.order, tagged=tagged)


def syzygies(qring, vectors, rank):
    """Generators of the syzygy module over the quotient ring of the
    given vectors in R^rank; each syzygy is a vector of length
    len(vectors)."""
    if not vectors:
        return []
    gb = _graph_over(qring, vectors, rank)
    return [terms_to_vector(s, len(vectors), qring.ambient)
            for s in gb.syzygies()]


def solve(qring, vectors, rank, target):
    """Coefficients c with sum(c_i * vectors_i) = target over the
    quotient ring, or None if target is not in the span."""
    gb = _graph_over(qring, vectors, rank)
    residue, coeffs = gb.reduce(vector_to_terms(target))
    if residue:
        return None
    return terms_to_vector(coeffs, len(vectors), qring.ambient)


def in_span(qring, vectors, rank, target):
    return solve(qring, vectors, rank, target) is not None


def reduce_vector(qring, v):
    return [qring.reduce(f) for f in v]


def prune_vectors(qring, vectors, rank):
    """Drop vectors lying in the span (over the quotient ring) of the
    remaining ones; entries are reduced first."""
    vecs = []
    for v in vectors:
        w = reduce_vector(qring, v)
        if any(not f.is_zero() for f in w):
            vecs.append(w)
    changed = True
    while changed and len(vecs) > 1:
        changed = False
        for i in range(len(vecs) - 1, -1, -1):
            rest = vecs[:i] + vecs[i + 1:]
            if in_span(qring, rest, rank, vecs[i]):
                vecs.pop(i)
                changed = True
                break
    return vecs


class FPModule:
    """coker of the matrix whose columns are ``relations`` (vectors of
    length ``rank`` of ambient polynomials) over ``qring``."""

    def __init__(self, qring, rank, relations):
        self.qring = qring
        self.rank = rank
        self.relations = [list(c) for c in relations]
        self._syz = None

    def __repr__(self):
        return "FPModule(rank %d, %d relations)" % (self.rank,
                                                    len(self.relations))

    def change_ring(self, qring):
        return FPModule(qring, self.rank, self.relations)

    def matrix_rows(self):
        ring = self.qring.ambient
        return [[col[i] for col in self.relations]
                for i in range(self.rank)]

    def relation_syzygies(self):
        if self._syz is None:
            self._syz = syzygies(self.qring, self.relations, self.rank)
        return self._syz

    # -- Fitting ideals -------------------------------------------------

    def fitting_ideal(self, i):
        """Fitt_i, as an ideal of the ambient ring containing the
        defining ideal."""
        ring = self.qring.ambient
        size = self.rank - i
        if size <= 0:
            return Ideal(ring, [ring.one()])
        cols = []
        for c in self.relations:
            w = reduce_vector(self.qring, c)
            if any(not f.is_zero() for f in w) and w not in cols:
                cols.append(w)
        if size > len(cols):
            return Ideal(ring, list(self.qring.defining.gens))
        rows = [[c[j] for c in cols] for j in range(self.rank)]
        minors = _minors(ring, rows, size)
        return Ideal(ring, list(self.qring.defining.gens) + minors)

    def fitting_radical(self, i):
        """Radical of Fitt_i.  Small minor systems are expanded
        directly; large ones go through rank-locus pivot splitting,
        which only yields the locus (hence the radical)."""
        ring = self.qring.ambient
        size = self.rank - i
        if size <= 0:
            return Ideal(ring, [ring.one()])
        cols = []
        for c in self.relations:
            w = reduce_vector(self.qring, c)
            if any(not f.is_zero() for f in w) and w not in cols:
                cols.append(w)
        if size > len(cols):
            return Ideal(ring, list(self.qring.defining.gens)).radical()
        nminors = 1
        for k in range(size):
            nminors = nminors * (self.rank - k) * (len(cols) - k)
        if nminors <= 500000:  # ~ (C(m,s) C(n,s) s!^2 bound proxy)
            return self.fitting_ideal(i).radical()
        rows = [[c[j] for c in cols] for j in range(self.rank)]
        return determinantal_radical(self.qring, rows, size)

    # -- duality and Ext^1 ------------------------------------------------

    def dual(self):
        """Hom(M, R) as an FPModule together with the embedding of its
        generators into R^rank (returned as .embedding on the result)."""
        ring = self.qring.ambient
        if not self.relations:
            out = FPModule(self.qring, self.rank, [])
            out.embedding = [[ring.one() if i == j else ring.zero()
                              for i in range(self.rank)]
                             for j in range(self.rank)]
            return out
        rows = self.matrix_rows()
        gens = syzygies(self.qring, rows, len(self.relations))
        gens = prune_vectors(self.qring, gens, self.rank)
        rels = syzygies(self.qring, gens, self.rank) if gens else []
        out = FPModule(self.qring, len(gens), rels)
        out.embedding = gens
        return out

    def annihilator(self):
        ring = self.qring.ambient
        result = None
        for i in range(self.rank):
            e = [ring.zero()] * self.rank
            e[i] = ring.one()
            q = _span_quotient(self.qring, self.relations, self.rank, e)
            result = q if result is None else result.intersect(q)
        if result is None:  # rank 0
            result = Ideal(ring, [ring.one()])
        return result

    def ext1(self):
        """Ext^1(M, R) as a Subquotient of R^(#relations)."""
        s = len(self.relations)
        if s == 0:
            return Subquotient(self.qring, 0, [], [])
        d2 = self.relation_syzygies()  # columns, vectors of length s
        if d2:
            d2_rows = [[col[j] for col in d2] for j in range(s)]
            num = syzygies(self.qring, d2_rows, len(d2))
        else:
            ring = self.qring.ambient
            num = [[ring.one() if i == j else ring.zero()
                    for i in range(s)] for j in range(s)]
        den = self.matrix_rows()  # rows of d1 = columns of d1^T
        return Subquotient(self.qring, s, num, den)


def _minors(ring, rows, size):
    from itertools import combinations
    nr, nc = len(rows), len(rows[0]) if rows else 0
    out = []
    for ri in combinations(range(nr), size):
        for ci in combinations(range(nc), size):
            sub = [[rows[i][j] for j in ci] for i in ri]
            d = _det(ring, sub)
            if not d.is_zero():
                out.append(d)
    return out


def _det(ring, m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    out = ring.zero()
    sign = 1
    for j in range(n):
        if not m[0][j].is_zero():
            sub = [row[:j] + row[j + 1:] for row in m[1:]]
            out = out + m[0][j] * _det(ring, sub) * sign
        sign = -sign
    return out


def determinantal_radical(qring, rows, size):
    """Radical of the ideal of size x size minors of the matrix plus
    the defining ideal, by pivot splitting: off a pivot entry the rank
    condition passes to the Schur complement (one size less); on the
    pivot's zero locus the entry joins the constraints.  Branch results
    are intersected and radicalized."""
    ring = qring.ambient
    branches = _rank_branches(ring, rows, size,
                              Ideal(ring, list(qring.defining.gens)))
    result = None
    for b in branches:
        r = b.radical()
        result = r if result is None else result.intersect(r)
    if result is None:
        result = Ideal(ring, [ring.one()])
    return result.radical()


_MINOR_BUDGET = 3000


def _rank_branches(ring, rows, size, constraints):
    if constraints.is_unit():
        return []
    if size <= 0:
        return []
    m = [[constraints.reduce(e) for e in row] for row in rows]
    m = [row for row in m if any(not e.is_zero() for e in row)]
    if m:
        ncols = len(m[0])
        live = [j for j in range(ncols)
                if any(not row[j].is_zero() for row in m)]
        m = [[row[j] for j in live] for row in m]
    if not m or size > min(len(m), len(m[0])):
        return [constraints]
    nm = 1
    for k in range(size):
        nm *= (len(m) - k) * (len(m[0]) - k)
    if nm <= _MINOR_BUDGET:
        minors = _minors(ring, m, size)
        return [Ideal(ring, constraints.gens + minors)]
    # choose a pivot: smallest nonzero entry, constants first
    pi = pj = None
    best = None
    for i, row in enumerate(m):
        for j, e in enumerate(row):
            if e.is_zero():
                continue
            score = (0 if e.is_constant() else 1, len(e.terms),
                     e.total_degree())
            if best is None or score < best:
                best, pi, pj = score, i, j
    a = m[pi][pj]
    out = []
    # branch 1: pivot vanishes (skipped when it is a nonzero constant)
    if not a.is_constant():
        zero_side = Ideal(ring, constraints.groebner() + [a])
        out.extend(_rank_branches(ring, rows=m, size=size,
                                  constraints=zero_side))
    # branch 2: pivot invertible; scaled Schur complement
    schur = [[a * m[i][j] - m[i][pj] * m[pi][j]
              for j in range(len(m[0])) if j != pj]
             for i in range(len(m)) if i != pi]
    sub = _rank_branches(ring, schur, size - 1, constraints)
    if a.is_constant():
        out.extend(sub)
    else:
        out.extend(b.saturate(a) for b in sub)
    return out


def _span_quotient(qring, vectors, rank, target):
    """The ideal (span(vectors) : target) over the quotient ring."""
    ring = qring.ambient
    if target is None or all(f.is_zero() for f in target):
        return Ideal(ring, [ring.one()])
    cols = [vector_to_terms(target)]
    cols += [vector_to_terms(v) for v in vectors]
    zero = ring.zero()
    for q in qring.defining.gens:
        for k in range(rank):
            vec = [zero] * rank
            vec[k] = q
            cols.append(vector_to_terms(vec))
    gb = GraphBasis(cols, rank, ring, qring.order, tagged=[0])
    gens = [terms_to_vector(s, 1, ring)[0] for s in gb.syzygies()]
    return Ideal(ring, list(qring.defining.gens) + gens)


class Subquotient:
    """(span(num) + span(den)) / span(den) inside R^rank."""

    def __init__(self, qring, rank, num, den):
        self.qring = qring
        self.rank = rank
        self.num = [list(v) for v in num]
        self.den = [list(v) for v in den]

    def __repr__(self):
        return "Subquotient(rank %d, %d/%d gens)" % (
            self.rank, len(self.num), len(self.den))

    def is_zero(self):
        if not self.num:
            return True
        gb = _graph_over(self.qring, self.den, self.rank) if self.den \
            else None
        for v in self.num:
            terms = vector_to_terms(v)
            if gb is None:
                if terms:
                    return False
            else:
                residue, _ = gb.reduce(terms)
                if residue:
                    return False
        return True

    def annihilator(self):
        """ann of the subquotient, an ideal of the ambient ring
        containing the defining ideal."""
        ring = self.qring.ambient
        result = None
        for v in self.num:
            q = _span_quotient(self.qring, self.den, self.rank, v)
            result = q if result is None else result.intersect(q)
        if result is None:
            result = Ideal(ring, [ring.one()])
        return result

    def multiply(self, f):
        """The image subquotient f * self."""
        return Subquotient(self.qring, self.rank,
                           [[f * c for c in v] for v in self.num],
                           self.den)

    def kernel_of_matrix(self, H, target):
        """Kernel of the map self -> target induced by the matrix H
        (target.rank x self.rank) on the ambient free modules."""
        ring = self.qring.ambient
        if not self.num:
            return Subquotient(self.qring, self.rank, [], self.den)
        images = []
        for v in self.num:
            images.append([sum((H[i][j] * v[j] for j in range(self.rank)),
                               ring.zero())
                           for i in range(target.rank)])
        cols = [vector_to_terms(w) for w in images]
        k = len(cols)
        cols += [vector_to_terms(v) for v in target.den]
        zero = ring.zero()
        for q in self.qring.defining.gens:
            for comp in range(target.rank):
                vec = [zero] * target.rank
                vec[comp] = q
                cols.append(vector_to_terms(vec))
        gb = GraphBasis(cols, target.rank, ring, self.qring.order,
                        tagged=list(range(k)))
        gens = []
        for s in gb.syzygies():
            a = terms_to_vector(s, k, ring)
            vec = [sum((a[i] * self.num[i][j] for i in range(k)),
                       ring.zero())
                   for j in range(self.rank)]
            gens.append(vec)
        return Subquotient(self.qring, self.rank, gens, self.den)


def ext1_induced(phi, M, N):
    """For phi: M -> N given by its matrix on generators (N.rank x
    M.rank), the induced map Ext^1(N) -> Ext^1(M): returns
    (Ext1N, Ext1M, H) where H is the matrix of the induced map on the
    ambient free modules R^{#rel N} -> R^{#rel M}."""
    ring = M.qring.ambient
    extN = N.ext1()
    extM = M.ext1()
    sM, sN = len(M.relations), len(N.relations)
    # chain lift phi1: F1(M) -> F1(N) with d1N . phi1 = phi0 . d1M
    phi1_cols = []
    for col in M.relations:
        img = [sum((phi[i][j] * col[j] for j in range(M.rank)),
                   ring.zero())
               for i in range(N.rank)]
        c = solve(N.qring, N.relations, N.rank, img) if sN else None
        if c is None:
            if sN or not all(N.qring.is_zero_elt(f) for f in img):
                raise ArithmeticError("map does not lift: not a"
                                      " well-defined module map")
            c = []
        phi1_cols.append(c)
    # H = phi1 transpose: rows indexed by M relations, cols by N relations
    H = [[phi1_cols[i][j] if j < len(phi1_cols[i]) else ring.zero()
          for j in range(sN)] for i in range(sM)]
    return extN, extM, H


def kaehler(qring, relative=False):
    """Module of differentials of the quotient ring, presented by the
    transposed Jacobian of the defining relations.  With ``relative``
    the base variable's differential is dropped (derivatives along the
    base do not appear)."""
    ring = qring.ambient
    names = [v for v in ring.variables
             if not (relative and v == ring.base)]
    rows = jacobian(qring.defining.gens, names)
    cols = [[rows[i][j] for i in range(len(names))]
            for j in range(len(qring.defining.gens))]
    m = FPModule(qring, len(names), cols)
    m.generator_names = ["d" + v for v in names]
    return m
