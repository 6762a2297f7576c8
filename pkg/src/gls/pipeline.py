"""The decision pipeline for algorithmic generic log smoothness of a
one-parameter family.

Stages, in order: pre-checks on the total space (integral,
Cohen-Macaulay, right dimension, base injectivity, generically smooth
fibers), the stratification of the central fiber (double locus D and
triple locus T), the generically-double-normal-crossing test via
normalization and conductor, the per-component kink search via the
functorial kernel K^(k) and the multiplication image Z^(l) on Ext^1 of
the restricted differentials, the assembly of the log-singular locus,
and the locus where the relative log derivations fail to be locally
free.
"""

import time

from .factor import squarefree_part
from .ideals import Ideal
from .modules import FPModule, QuotRing, ext1_induced, kaehler
from .normalization import (conductor_ideal, extension_kaehler,
                            normalize_component, pushforward_module)
from .ringprops import (base_injective, is_cohen_macaulay, singular_locus)


class StageFailure(Exception):
    def __init__(self, stage, reason, inconclusive=False):
        super().__init__("%s: %s" % (stage, reason))
        self.stage = stage
        self.reason = reason
        self.inconclusive = inconclusive


class Family:
    """A parsed family: relations over ring with a marked base variable
    and expected relative fiber dimension d."""

    def __init__(self, ring, relations, d, mode="affine",
                 max_kink=8, truncation_order=None):
        self.ring = ring
        self.base = ring.base
        self.relations = list(relations)
        self.d = d
        self.mode = mode
        self.max_kink = max_kink
        self.truncation_order = truncation_order
        if self.base is None:
            raise ValueError("family needs a base variable")

    @property
    def fiber_variables(self):
        return [v for v in self.ring.variables if v != self.base]

    def ideal(self):
        return Ideal(self.ring, self.relations)


def _ideal_str(ideal):
    gb = ideal.groebner()
    return [str(g) for g in gb] if gb else ["0"]


class Report:
    """Accumulates per-stage results; rendered by the report module."""

    def __init__(self, family):
        self.family = family
        self.verdict = None
        self.stage = None
        self.reason = None
        self.sections = {}
        self.timings = {}

    def section(self, name, data):
        self.sections[name] = data

    def fail(self, exc):
        self.verdict = "inconclusive" if exc.inconclusive else "failed"
        self.stage = exc.stage
        self.reason = exc.reason


# -- stage 1: pre-checks ---------------------------------------------------


def check_pre_gls(fam, total_dim=None):
    ring = fam.ring
    d = fam.d if total_dim is None else total_dim - 1
    IX = fam.ideal()
    if IX.is_unit():
        raise StageFailure("pre-gls", "the relations generate the unit"
                           " ideal: empty total space")
    info = {}
    dim = IX.dimension()
    info["total_dimension"] = dim
    if dim != d + 1:
        raise StageFailure("pre-gls", "total space has dimension %d,"
                           " expected %d" % (dim, d + 1))
    if not base_injective(IX, fam.base):
        raise StageFailure("pre-gls", "a polynomial in the base variable"
                           " vanishes on the family")
    info["base_injective"] = True
    if not IX.is_prime():
        raise StageFailure("pre-gls", "total space is not integral")
    info["integral"] = True
    if not is_cohen_macaulay(IX):
        raise StageFailure("pre-gls", "total space is not Cohen-Macaulay")
    info["cohen_macaulay"] = True
    rel_sing = singular_locus(QuotRing(ring, IX.gens), d, relative=True)
    rdim = rel_sing.dimension()
    info["relative_singular_dimension"] = rdim
    if rdim > d - 1:
        raise StageFailure("pre-gls", "relative singular locus has"
                           " dimension %d > %d: some fiber is not"
                           " generically smooth" % (rdim, d - 1))
    info["relative_singular_locus"] = _ideal_str(rel_sing)
    return IX, rel_sing, info


# -- stage 2: strata of the central fiber -----------------------------------


class Strata:
    def __init__(self, IV, v_components, ID, d_components, IT):
        self.IV = IV
        self.v_components = v_components
        self.ID = ID
        self.d_components = d_components
        self.IT = IT


def compute_strata(fam, d=None):
    ring = fam.ring
    d = d if d is not None else fam.d
    IV = Ideal(ring, fam.relations + [ring.var(fam.base)])
    if IV.is_unit():
        raise StageFailure("strata", "empty central fiber")
    if not IV.is_radical():
        raise StageFailure("strata", "central fiber is not reduced")
    v_components = IV.minimal_primes()
    bad = [p for p in v_components if p.dimension() != d]
    if bad:
        raise StageFailure("strata", "central fiber is not pure of"
                           " dimension %d" % d)
    ID = singular_locus(QuotRing(ring, IV.groebner()), d)
    if ID.is_unit():
        d_components = []
    else:
        d_components = ID.minimal_primes()
        bad = [p for p in d_components if p.dimension() != d - 1]
        if bad:
            raise StageFailure("strata", "the double locus is not pure"
                               " of dimension %d" % (d - 1))
    if d_components:
        IT = singular_locus(QuotRing(ring, ID.groebner()), d - 1)
    else:
        IT = Ideal(ring, [ring.one()])
    if not IT.is_unit() and IT.dimension() > d - 2:
        raise StageFailure("strata", "the triple locus has dimension"
                           " %d > %d" % (IT.dimension(), d - 2))
    return Strata(IV, v_components, ID, d_components, IT)


def strata_info(strata):
    return {
        "central_fiber": _ideal_str(strata.IV),
        "central_fiber_components":
            [_ideal_str(p) for p in strata.v_components],
        "double_locus": _ideal_str(strata.ID),
        "double_locus_components":
            [_ideal_str(p) for p in strata.d_components],
        "triple_locus": _ideal_str(strata.IT),
        "triple_locus_dimension": strata.IT.dimension(),
    }


# -- stage 3: generically double normal crossings ---------------------------


def check_generically_dnc(fam, strata, d=None):
    ring = fam.ring
    d = d if d is not None else fam.d
    IT = strata.IT
    info = {"components": []}
    comps = []
    for p in strata.v_components:
        c = normalize_component(p)
        comps.append(c)
        ext_it = Ideal(c.ambient, [g.map_to(c.ambient) for g in IT.gens])
        sing = singular_locus(c.ring, d)
        if not sing.saturate(ext_it).is_unit():
            raise StageFailure(
                "dnc", "normalization of the component %s is singular"
                " away from the triple locus" % _ideal_str(p))
        om = extension_kaehler(c, None)
        ram = om.fitting_radical(0)
        if not ram.saturate(ext_it).is_unit():
            raise StageFailure(
                "dnc", "normalization of the component %s is ramified"
                " away from the triple locus" % _ideal_str(p))
        info["components"].append({
            "component": _ideal_str(p),
            "normalization_steps": c.steps,
            "extension_variables": list(c.extension_variables),
            "normalization_smooth": c.smooth,
        })
    qv = QuotRing(ring, strata.IV.groebner())
    module, unit, blocks = pushforward_module(qv, comps)
    cond = conductor_ideal(qv, module, unit)
    IC = cond.radical()
    info["conductor"] = _ideal_str(cond)
    info["conductor_radical"] = _ideal_str(IC)
    info["conductor_is_radical"] = (IC == cond)
    if IC.is_unit():
        info["double_curve_components"] = []
        return comps, info
    c_comps = IC.minimal_primes()
    info["double_curve_components"] = [_ideal_str(p) for p in c_comps]
    off_t = [p for p in c_comps if not p.contains(IT)]
    for p in off_t:
        if p.dimension() != d - 1:
            raise StageFailure(
                "dnc", "a conductor component away from the triple locus"
                " has dimension %d, expected %d"
                % (p.dimension(), d - 1))
    csing = singular_locus(QuotRing(ring, IC.groebner()), d - 1)
    if not csing.saturate(IT).is_unit():
        raise StageFailure("dnc", "the double curve is singular away"
                           " from the triple locus")
    pulled = module.change_ring(QuotRing(ring, IC.groebner()))
    if not pulled.fitting_radical(2).saturate(IT).is_unit():
        raise StageFailure("dnc", "the pushforward exceeds rank 2 on the"
                           " double curve away from the triple locus")
    f1 = pulled.fitting_ideal(1)
    for p in off_t:
        if not all(p.contains_poly(g) for g in f1.gens):
            raise StageFailure("dnc", "the pushforward has rank below 2"
                               " on a double-curve component away from"
                               " the triple locus")
    info["rank_two_off_triple_locus"] = True
    return comps, info


# -- stage 4: kink search ----------------------------------------------------


class KinkEngine:
    """Caches the thickened differential modules and the derived ideals
    K^(k) and Z^(l).

    In infinitesimal mode the restriction comes from the one-step
    thicker ring, so the presentation of the restricted absolute
    differentials carries the extra column d(t^(k+2))."""

    def __init__(self, fam, infinitesimal=False):
        self.fam = fam
        self.ring = fam.ring
        self.infinitesimal = infinitesimal
        self._K = {}
        self._Z = {}

    def _thick(self, k):
        t = self.ring.var(self.fam.base)
        return QuotRing(self.ring, self.fam.relations + [t ** (k + 1)])

    def omega_absolute_restricted(self, k):
        q = self._thick(k)
        names = self.ring.variables
        cols = [[f.derivative(v) for v in names]
                for f in self.fam.relations]
        if self.infinitesimal:
            t = self.ring.var(self.fam.base)
            extra = t ** (k + 2)
            cols.append([extra.derivative(v) for v in names])
        return FPModule(q, len(names), cols)

    def omega_relative(self, k):
        q = self._thick(k)
        names = [v for v in self.ring.variables if v != self.fam.base]
        cols = [[f.derivative(v) for v in names]
                for f in self.fam.relations]
        return FPModule(q, len(names), cols)

    def K_ideal(self, k):
        if k not in self._K:
            M = self.omega_absolute_restricted(k)
            N = self.omega_relative(k)
            names = self.ring.variables
            rel_names = [v for v in names if v != self.fam.base]
            phi = [[self.ring.one() if names[j] == rel_names[i]
                    else self.ring.zero()
                    for j in range(M.rank)] for i in range(N.rank)]
            extN, extM, H = ext1_induced(phi, M, N)
            ker = extN.kernel_of_matrix(H, extM)
            self._K[k] = ker.annihilator().radical()
        return self._K[k]

    def Z_ideal(self, ell):
        if ell not in self._Z:
            t = self.ring.var(self.fam.base)
            M = self.omega_absolute_restricted(ell - 1)
            img = M.ext1().multiply(t ** (ell - 1))
            self._Z[ell] = img.annihilator().radical()
        return self._Z[ell]


def kink_search(fam, strata, d=None, engine=None):
    """Per-component kinks; returns (records, info).  Raises an
    inconclusive StageFailure when a component exhausts the search."""
    d = d if d is not None else fam.d
    engine = engine or KinkEngine(fam)
    IT = strata.IT
    limit = fam.max_kink
    order_limited = False
    if engine.infinitesimal:
        if fam.truncation_order < limit:
            limit = fam.truncation_order
            order_limited = True
    records = []
    for E in strata.d_components:
        found = None
        for ell in range(1, limit + 1):
            ok = True
            for k in range(0, ell - 1):
                if not E.sum(engine.K_ideal(k)).saturate(IT).is_unit():
                    ok = False
                    break
            if not ok:
                continue
            ZE = E.sum(engine.Z_ideal(ell)).saturate(IT)
            if ZE.is_unit() or ZE.dimension() <= d - 2:
                found = (ell, ZE)
                break
        if found is None:
            if order_limited:
                raise StageFailure(
                    "kinks", "insufficient-order: component %s has no"
                    " kink up to the truncation order %d"
                    % (_ideal_str(E), limit), inconclusive=True)
            raise StageFailure(
                "kinks", "component %s has no kink up to max_kink=%d"
                % (_ideal_str(E), limit), inconclusive=True)
        records.append({"component": E, "kink": found[0],
                        "log_singular_part": found[1]})
    info = {"records": [{
        "component": _ideal_str(r["component"]),
        "kink": r["kink"],
        "log_singular_part": _ideal_str(r["log_singular_part"]),
    } for r in records]}
    return records, info


# -- stage 5: assembly --------------------------------------------------------


def assemble_log_singular_locus(fam, strata, records, rel_sing, d=None):
    ring = fam.ring
    d = d if d is not None else fam.d
    t = ring.var(fam.base)
    off_central = rel_sing.saturate(t)
    parts = [strata.IT] if not strata.IT.is_unit() else []
    zv = None
    for r in records:
        z = r["log_singular_part"]
        if not z.is_unit():
            parts.append(z)
            zv = z if zv is None else zv.intersect(z)
    if not off_central.is_unit():
        parts.append(off_central)
    if parts:
        zx = parts[0]
        for p in parts[1:]:
            zx = zx.intersect(p)
    else:
        zx = Ideal(ring, [ring.one()])
    zv = zv if zv is not None else Ideal(ring, [ring.one()])
    info = {
        "off_central_relative_singular": _ideal_str(off_central),
        "central_log_singular": _ideal_str(zv),
        "log_singular_locus": _ideal_str(zx),
    }
    return off_central, zv, zx, info


def base_shrink(fam, off_central, projective=False):
    """Squarefree polynomial in the base variable whose complement
    (together with the origin) carries the smooth part of the family.
    Vertex-section components are skipped in projective mode."""
    ring = fam.ring
    disc = ring.var(fam.base)
    if off_central.is_unit():
        return squarefree_part(disc)
    vertex = Ideal(ring, [ring.var(v) for v in fam.fiber_variables])
    for p in off_central.minimal_primes():
        if projective and p == vertex:
            continue
        ep = p.eliminate(fam.fiber_variables)
        if ep.is_zero():
            raise StageFailure(
                "assemble", "a relative singular component dominates"
                " the base: %s" % _ideal_str(p))
        disc = disc * ep.groebner()[0]
    return squarefree_part(disc)


# -- stage 6: differential log regularity -------------------------------------


def differential_log_locus(fam, d=None, double_dual=False):
    ring = fam.ring
    d = d if d is not None else fam.d
    q = QuotRing(ring, fam.relations)
    theta = kaehler(q, relative=True).dual()
    if double_dual:
        theta = theta.dual()
    locus = theta.fitting_radical(d)
    comps = locus.minimal_primes() if not locus.is_unit() else []
    info = {
        "double_dual": double_dual,
        "locus": _ideal_str(locus),
        "components": [_ideal_str(p) for p in comps],
    }
    return locus, info


# -- drivers -------------------------------------------------------------------


def _timed(report, name, fn):
    t0 = time.time()
    out = fn()
    report.timings[name] = round(time.time() - t0, 3)
    return out


def analyze_affine(fam, stage_until=None, with_differential=True,
                   double_dual=False, _total_dim=None, _projective=False):
    report = Report(fam)
    d = fam.d if _total_dim is None else _total_dim - 1
    try:
        IX, rel_sing, info = _timed(report, "pre-gls",
                                    lambda: check_pre_gls(fam, _total_dim))
        report.section("pre_gls", info)
        if stage_until == "pre-gls":
            report.verdict = "partial"
            return report
        strata = _timed(report, "strata", lambda: compute_strata(fam, d))
        report.section("strata", strata_info(strata))
        if stage_until == "strata":
            report.verdict = "partial"
            return report
        comps, info = _timed(report, "dnc",
                             lambda: check_generically_dnc(fam, strata, d))
        report.section("dnc", info)
        if stage_until == "dnc":
            report.verdict = "partial"
            return report
        records, info = _timed(report, "kinks",
                               lambda: kink_search(fam, strata, d))
        report.section("kinks", info)
        if stage_until == "kinks":
            report.verdict = "partial"
            return report
        off_central, zv, zx, info = _timed(
            report, "assemble",
            lambda: assemble_log_singular_locus(fam, strata, records,
                                                rel_sing, d))
        shrink = _timed(report, "base-shrink",
                        lambda: base_shrink(fam, off_central, _projective))
        info["base_shrink"] = str(shrink)
        report.section("assemble", info)
        if with_differential:
            _, dinfo = _timed(
                report, "differential",
                lambda: differential_log_locus(fam, d, double_dual))
            report.section("differential", dinfo)
        report.verdict = "gls"
    except StageFailure as exc:
        report.fail(exc)
    return report


def analyze_projective(fam, **kw):
    """The projective family is handled through its affine cone, whose
    relative dimension is one higher; relations must be homogeneous in
    the fiber variables (the base variable has weight zero)."""
    report = Report(fam)
    weights = [0 if v == fam.base else 1 for v in fam.ring.variables]
    for f in fam.relations:
        if not f.is_homogeneous(weights):
            report.fail(StageFailure(
                "input", "relation %s is not homogeneous in the fiber"
                " variables" % f))
            return report
    inner = analyze_affine(fam, _total_dim=fam.d + 2, _projective=True,
                           **kw)
    inner.sections["cone"] = {"cone_dimension": fam.d + 2}
    return inner


def analyze_infinitesimal(fam, stage_until=None, **_kw):
    """Checks the criteria available at a finite truncation order: the
    central fiber data and the kink search with restrictions taken from
    the one-step-thicker ring."""
    report = Report(fam)
    if fam.truncation_order is None:
        report.fail(StageFailure("input", "infinitesimal mode needs"
                                 " truncation_order"))
        return report
    ring = fam.ring
    try:
        strata = _timed(report, "strata",
                        lambda: compute_strata(fam, fam.d))
        info = strata_info(strata)
        if not is_cohen_macaulay(strata.IV):
            raise StageFailure("strata", "central fiber is not"
                               " Cohen-Macaulay")
        info["central_fiber_cohen_macaulay"] = True
        report.section("strata", info)
        if stage_until == "strata":
            report.verdict = "partial"
            return report
        engine = KinkEngine(fam, infinitesimal=True)
        records, kinfo = _timed(report, "kinks",
                                lambda: kink_search(fam, strata, fam.d,
                                                    engine))
        report.section("kinks", kinfo)
        zv = None
        for r in records:
            z = r["log_singular_part"]
            if not z.is_unit():
                zv = z if zv is None else zv.intersect(z)
        zv = zv if zv is not None else Ideal(ring, [ring.one()])
        report.section("assemble",
                       {"central_log_singular": _ideal_str(zv)})
        report.verdict = "gls"
    except StageFailure as exc:
        report.fail(exc)
    return report


def analyze(fam, **kw):
    if fam.mode == "projective":
        return analyze_projective(fam, **kw)
    if fam.mode == "infinitesimal":
        return analyze_infinitesimal(fam, **kw)
    return analyze_affine(fam, **kw)
