"""Normalization of affine domains and conductor-based double-point
checks.

The normalization of ambient/P (P prime) is computed by the
endomorphism-ring iteration: with J the radical of the singular locus
and g a nonzerodivisor in J, Hom(J, J) = ((g*J) : J)/g; as long as the
quotient exceeds (g), its new elements u/g are adjoined as fresh ring
variables with kernel relations obtained by saturating (g*s - u) at g.
The loop stops when the endomorphism ring no longer grows (the ring is
normal) or the ring is already smooth.

The resulting algebra is re-presented as a module over the source ring
by a Buchberger elimination: the graph vectors (m_i, e_i) of the module
generators are closed up under an order that ranks value terms above
everything and extension-variable terms above base terms; basis vectors
with zero value part and no extension variables are exactly the module
relations with base coefficients.
"""

from .groebner import ModuleOrder, module_buchberger, terms_to_vector, \
    vector_to_terms
from .ideals import Ideal
from .modules import FPModule, QuotRing
from .ringprops import singular_locus


class ComponentNormalization:
    """Normalization data of one component ambient/prime."""

    def __init__(self, prime, ambient, defining, module_generators,
                 steps, smooth):
        self.prime = prime              # in the original ambient ring
        self.ambient = ambient          # possibly extended ring
        self.defining = defining        # kernel ideal in self.ambient
        self.module_generators = module_generators
        self.steps = steps
        self.smooth = smooth

    @property
    def ring(self):
        return QuotRing(self.ambient, self.defining.gens)

    @property
    def extension_variables(self):
        n = len(self.prime.ring.variables)
        return self.ambient.variables[n:]

    def __repr__(self):
        return "ComponentNormalization(%d steps, +%d vars)" % (
            self.steps, len(self.extension_variables))


def _fresh_names(ring, stem, count):
    out = []
    k = 0
    while len(out) < count:
        name = "%s%d" % (stem, k)
        if name not in ring.index and name not in out:
            out.append(name)
        k += 1
    return out


def normalize_component(prime, cap=32):
    """Grauert-Remmert style normalization of the domain ambient/prime."""
    amb = prime.ring
    cur_amb, cur_def = amb, prime
    gens = [amb.one()]
    level = 0
    while True:
        d = cur_def.dimension()
        J = singular_locus(QuotRing(cur_amb, cur_def.gens), d)
        if J.is_unit():
            return ComponentNormalization(prime, cur_amb, cur_def, gens,
                                          level, smooth=True)
        if level >= cap:
            raise ArithmeticError("normalization did not stabilize")
        g = None
        for cand in J.groebner():
            if cur_def.contains_poly(cand):
                continue
            if cur_def.quotient(Ideal(cur_amb, [cand])) == cur_def:
                g = cand
                break
        if g is None:
            raise ArithmeticError("no nonzerodivisor in the test ideal")
        gJ = Ideal(cur_amb, [g * j for j in J.groebner()] + cur_def.gens)
        U = gJ.quotient(J)
        g_ideal = Ideal(cur_amb, [g] + cur_def.gens)
        new_els = [u for u in U.groebner()
                   if not g_ideal.contains_poly(u)]
        if not new_els:
            return ComponentNormalization(prime, cur_amb, cur_def, gens,
                                          level, smooth=False)
        names = _fresh_names(cur_amb, "nrm%d_" % level, len(new_els))
        ext = cur_amb.extend(names)
        rels = [f.map_to(ext) for f in cur_def.gens]
        for name, u in zip(names, new_els):
            rels.append(g.map_to(ext) * ext.var(name) - u.map_to(ext))
        new_def = Ideal(ext, rels).saturate(g.map_to(ext))
        old = [p.map_to(ext) for p in gens]
        gens = list(old)
        for name in names:
            s = ext.var(name)
            for p in old:
                q = new_def.reduce(p * s)
                if not q.is_zero() and q not in gens:
                    gens.append(q)
        cur_amb, cur_def = ext, new_def
        level += 1


class _PresentationOrder(ModuleOrder):
    """Value component 0 above all tags; extension-variable part above
    the base part; positions break ties."""

    def __init__(self, nbase, nvars):
        self.nbase = nbase
        self.nvars = nvars

    def key(self, cm):
        comp, m = cm
        d = m[self.nbase:]
        x = m[:self.nbase]
        return ((1 if comp == 0 else 0, sum(d))
                + tuple(-e for e in reversed(d))
                + (sum(x),) + tuple(-e for e in reversed(x))
                + (-comp,))


def algebra_module_presentation(comp, base_qring):
    """The normalization of one component as a finitely presented
    module over base_qring (whose ambient is the original ring)."""
    amb = base_qring.ambient
    ext = comp.ambient
    if len(ext.variables) == len(amb.variables):
        rels = [[g] for g in comp.defining.groebner()]
        return FPModule(base_qring, 1, rels)
    n = len(comp.module_generators)
    vectors = []
    for i, m in enumerate(comp.module_generators):
        vec = [ext.zero()] * (1 + n)
        vec[0] = m
        vec[1 + i] = ext.one()
        vectors.append(vector_to_terms(vec))
    for k in comp.defining.groebner():
        vec = [k] + [ext.zero()] * n
        vectors.append(vector_to_terms(vec))
    order = _PresentationOrder(len(amb.variables), len(ext.variables))
    basis = module_buchberger(vectors, order)
    ext_names = set(comp.extension_variables)
    cols = []
    for b in basis:
        if any(c == 0 for c, _ in b.terms):
            continue
        vec = terms_to_vector(b.terms, 1 + n, ext)
        used = set()
        for f in vec[1:]:
            used |= f.variables_used()
        if used & ext_names:
            continue
        cols.append([f.map_to(amb) for f in vec[1:]])
    return FPModule(base_qring, n, cols)


def pushforward_module(base_qring, comps):
    """Direct sum of the component-normalization modules over the
    source ring, together with the coordinates of the unit section.

    Returns (FPModule, unit_vector, block_ranks)."""
    mods = [algebra_module_presentation(c, base_qring) for c in comps]
    amb = base_qring.ambient
    total = sum(m.rank for m in mods)
    cols = []
    offset = 0
    for m in mods:
        for c in m.relations:
            vec = [amb.zero()] * total
            vec[offset:offset + m.rank] = c
            cols.append(vec)
        offset += m.rank
    unit = [amb.zero()] * total
    offset = 0
    for m in mods:
        unit[offset] = amb.one()  # each generator list starts with 1
        offset += m.rank
    return FPModule(base_qring, total, cols), unit, [m.rank for m in mods]


def conductor_ideal(base_qring, module, unit):
    """Annihilator of coker(source ring -> pushforward), an ideal of
    the ambient ring containing the defining ideal."""
    coker = FPModule(base_qring, module.rank,
                     module.relations + [unit])
    return coker.annihilator()


def extension_kaehler(comp, base_qring):
    """Differentials of the component normalization relative to the
    source ring: generated by the extension variables' differentials
    and presented by the corresponding Jacobian block."""
    ext = comp.ambient
    names = list(comp.extension_variables)
    ring = comp.ring
    cols = []
    for k in comp.defining.gens:
        col = [k.derivative(v) for v in names]
        if any(not f.is_zero() for f in col):
            cols.append(col)
    return FPModule(ring, len(names), cols)
