"""Ring-level predicates: integrality, Cohen-Macaulayness, injectivity
of the base inclusion, and singular loci via Fitting ideals of the
differentials.

Cohen-Macaulayness of ambient/I is tested homologically: a free
resolution of the quotient over the ambient polynomial ring is computed
by iterated syzygies, and the quotient is Cohen-Macaulay iff
Ext^i(ambient/I, ambient) vanishes for every i above the codimension
(the depth-sensitivity of Ext against the regular ambient ring; the
vanishing pattern does not depend on the resolution being minimal).
"""

from .modules import QuotRing, Subquotient, kaehler, syzygies


def base_injective(ideal, base):
    """No nonzero polynomial in the base variable alone vanishes on the
    family, i.e. the coordinate ring of the base embeds."""
    others = [v for v in ideal.ring.variables if v != base]
    return ideal.eliminate(others).is_zero()


def free_resolution(ring, gens, cap=None):
    """Iterated-syzygy free resolution of ring/(gens) over the
    polynomial ring: a list of differentials, each a list of columns;
    the i-th differential maps into a free module of the previous
    column count (rank 1 at the start)."""
    amb = QuotRing(ring, [])
    cap = cap or ring.nvars + 4
    diffs = []
    current = [[g] for g in gens if not g.is_zero()]
    rank = 1
    while current:
        diffs.append(current)
        if len(diffs) > cap:
            raise ArithmeticError("free resolution did not terminate")
        nxt = syzygies(amb, current, rank)
        rank = len(current)
        current = nxt
    return diffs


def _ext_step_is_zero(ring, diffs, i):
    """Whether Ext^i (i >= 1) of the resolved module against the ring
    vanishes; diffs as from free_resolution."""
    amb = QuotRing(ring, [])
    d_i = diffs[i - 1]
    rank_prev = 1 if i == 1 else len(diffs[i - 2])
    s = len(d_i)
    # denominator: rows of d_i = image of Hom(d_i)
    den = [[col[j] for col in d_i] for j in range(rank_prev)]
    if i < len(diffs):
        d_next = diffs[i]
        rows = [[col[j] for col in d_next] for j in range(s)]
        num = syzygies(amb, rows, len(d_next))
    else:
        num = [[ring.one() if a == b else ring.zero() for a in range(s)]
               for b in range(s)]
    return Subquotient(amb, s, num, den).is_zero()


def is_cohen_macaulay(ideal):
    """Cohen-Macaulayness of ring/ideal (False for the unit ideal)."""
    if ideal.is_unit():
        return False
    gb = ideal.groebner()
    if not gb:
        return True
    ring = ideal.ring
    codim = ring.nvars - ideal.dimension()
    diffs = free_resolution(ring, gb)
    if len(diffs) <= codim:
        return True  # projective dimension <= codim forces equality
    for i in range(codim + 1, len(diffs) + 1):
        if not _ext_step_is_zero(ring, diffs, i):
            return False
    return True


def projective_dimension(ideal):
    """Projective dimension of ring/ideal over the polynomial ring."""
    ring = ideal.ring
    gb = ideal.groebner()
    if not gb:
        return 0
    diffs = free_resolution(ring, gb)
    for i in range(len(diffs), 0, -1):
        if not _ext_step_is_zero(ring, diffs, i):
            return i
    return 0


def is_pure_dimensional(ideal, d=None):
    primes = ideal.minimal_primes()
    if not primes:
        return False
    if d is None:
        d = primes[0].dimension()
    return all(p.dimension() == d for p in primes)


def singular_locus(qring, d, relative=False):
    """Radical ideal of the points where the (relative) differentials
    fail to be locally free of rank d; contains the defining ideal."""
    om = kaehler(qring, relative=relative)
    return om.fitting_ideal(d).radical()
