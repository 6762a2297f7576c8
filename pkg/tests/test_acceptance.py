"""End-to-end acceptance runs on the regression families, plus the fast
kernel property suites.  Each run carries a wall-clock budget."""

import json
import os
import random
import time

from gls.cli import main
from gls.familyfile import load_family
from gls.groebner import groebner_basis, normal_form
from gls.ideals import Ideal
from gls.modules import FPModule, QuotRing
from gls.normalization import normalize_component
from gls.parse import parse_polynomial
from gls.pipeline import KinkEngine, compute_strata
from gls.poly import PolyRing, degrevlex

FAMILIES = os.path.join(os.path.dirname(__file__), "families")


def fam_path(name):
    return os.path.join(FAMILIES, name)


def run_struct(capsys, path, *flags):
    t0 = time.time()
    code = main(["analyze", path, "--format", "struct", *flags])
    elapsed = time.time() - t0
    return code, json.loads(capsys.readouterr().out), elapsed


def ideal_from(ring, gens):
    return Ideal(ring, [parse_polynomial(ring, s) for s in gens])


def radical_equal(ring, got_gens, *expected):
    got = ideal_from(ring, got_gens).radical()
    want = ideal_from(ring, expected[0])
    for e in expected[1:]:
        want = want.intersect(ideal_from(ring, e))
    return got == want.radical()


# -- 1: main affine example ---------------------------------------------------


def test_main_affine_end_to_end(capsys):
    code, data, elapsed = run_struct(capsys, fam_path("ex_main_affine.gls"))
    assert code == 0
    assert data["verdict"] == "gls"
    assert elapsed <= 60

    ring = PolyRing(("t", "x", "y", "z", "w", "u"), base="t")
    pre = data["sections"]["pre_gls"]
    assert pre["total_dimension"] == 4
    assert pre["integral"] and pre["cohen_macaulay"]
    assert pre["base_injective"]

    strata = data["sections"]["strata"]
    assert radical_equal(ring, strata["triple_locus"],
                         ["t", "x", "y", "z", "w"])

    # kinks matched to their components
    by_comp = {}
    for rec in data["sections"]["kinks"]["records"]:
        comp = ideal_from(ring, rec["component"])
        by_comp[comp] = rec
    expect = {
        ("t", "y", "z", "w"): (1, [["t", "x", "z", "w", "u"],
                                   ["t", "y", "z", "w", "u"]]),
        ("t", "x", "z", "w"): (1, None),
        ("t", "x", "y", "z"): (2, [["t", "x", "y", "z", "w^2 - u^2"]]),
    }
    seen = set()
    for comp_gens, (kink, _) in expect.items():
        comp = ideal_from(ring, list(comp_gens))
        assert comp in by_comp, comp_gens
        assert by_comp[comp]["kink"] == kink
        seen.add(comp)
    assert set(by_comp) == seen

    # K^(0), Z^(1), Z^(2) from the engine itself
    fam = load_family(fam_path("ex_main_affine.gls"))
    engine = KinkEngine(fam)
    K0 = engine.K_ideal(0)
    assert K0 == ideal_from(ring, ["t", "z", "w", "x*y"]).radical()
    Z1 = engine.Z_ideal(1)
    want = ideal_from(ring, ["t", "x", "y", "z"])
    want = want.intersect(ideal_from(ring, ["t", "x", "z", "w", "u"]))
    want = want.intersect(ideal_from(ring, ["t", "y", "z", "w", "u"]))
    assert Z1 == want.radical()
    Z2 = engine.Z_ideal(2)
    assert Z2 == ideal_from(ring,
                            ["t", "x", "y", "z", "w^2 - u^2"]).radical()


# -- 2: main projective example ----------------------------------------------


def test_main_projective_end_to_end(capsys):
    code, data, elapsed = run_struct(
        capsys, fam_path("ex_main_projective.gls"), "--no-differential")
    assert code == 0
    assert data["verdict"] == "gls"
    assert elapsed <= 15 * 60

    pre = data["sections"]["pre_gls"]
    assert pre["total_dimension"] == 5
    assert pre["integral"] and pre["cohen_macaulay"]

    kinks = sorted(r["kink"]
                   for r in data["sections"]["kinks"]["records"])
    assert kinks == [1, 1, 2]

    ring = PolyRing(("t", "x", "y", "z", "w", "u", "v"), base="t")
    fam = load_family(fam_path("ex_main_projective.gls"))
    engine = KinkEngine(fam)
    Z2 = engine.Z_ideal(2)
    want = ideal_from(
        ring,
        ["t", "x", "y", "z", "u^2*v^2 - u^2*w^2 - v^2*w^2 - w^4"])
    assert Z2 == want.radical()

    shrink = parse_polynomial(ring,
                              data["sections"]["assemble"]["base_shrink"])
    want = parse_polynomial(
        ring, "t*(2*t + 1)*(2*t - 1)*(4*t^2 + 1)*(16*t^4 + 1)")
    lead = max(shrink.terms)
    assert shrink * want.terms[max(want.terms)] == \
        want * shrink.terms[lead]


# -- 3: three planes ----------------------------------------------------------


def test_three_planes_end_to_end(capsys):
    code, data, elapsed = run_struct(capsys,
                                     fam_path("ex_three_planes.gls"))
    assert code == 0
    assert data["verdict"] == "gls"
    assert elapsed <= 30

    recs = data["sections"]["kinks"]["records"]
    assert [r["kink"] for r in recs] == [1, 1, 1]
    assert all(r["log_singular_part"] == ["1"] for r in recs)

    ring = PolyRing(("t", "x", "y", "z"), base="t")
    fam = load_family(fam_path("ex_three_planes.gls"))
    engine = KinkEngine(fam)
    assert engine.Z_ideal(1) == ideal_from(ring, ["t", "x", "y", "z"])

    asm = data["sections"]["assemble"]
    assert asm["central_log_singular"] == ["1"]
    diff = data["sections"]["differential"]
    assert radical_equal(ring, diff["locus"], ["t", "x", "y", "z"])


# -- 4: quartic surface degeneration -------------------------------------------


def test_intro_quartic_end_to_end(capsys):
    code, data, elapsed = run_struct(capsys, fam_path("ex_quartic.gls"),
                                     "--no-differential")
    assert code == 0
    assert data["verdict"] == "gls"
    assert elapsed <= 10 * 60

    recs = data["sections"]["kinks"]["records"]
    assert [r["kink"] for r in recs] == [1] * 6

    ring = PolyRing(("t", "x", "y", "z", "w"), base="t")
    zv = ideal_from(ring,
                    data["sections"]["assemble"]["central_log_singular"])
    # the cone over the 24 points: Krull dimension 1
    assert zv.dimension() == 1

    # count the points chartwise by brute-force standard-monomial counts
    def points(extra):
        cut = zv.sum(ideal_from(ring, extra))
        if cut.is_unit():
            return 0
        assert cut.dimension() == 0
        return cut.vdim()

    n_w = points(["w - 1"])            # points with w != 0
    n_z = points(["w", "z - 1"])       # w = 0, z != 0
    n_y = points(["w", "z", "y - 1"])  # w = z = 0, y != 0
    n_x = points(["w", "z", "y", "x - 1"])
    assert (n_w, n_z, n_y, n_x) == (12, 8, 4, 0)
    assert n_w + n_z + n_y + n_x == 24
    assert n_w == 24 - (n_z + n_y + n_x)


# -- 5: infinitesimal coherence -------------------------------------------------


def test_infinitesimal_matches_affine(capsys):
    code, data, _ = run_struct(capsys,
                               fam_path("ex_main_infinitesimal.gls"))
    assert code == 0
    assert data["verdict"] == "gls"
    code2, affine, _ = run_struct(capsys, fam_path("ex_main_affine.gls"),
                                  "--no-differential")
    ring = PolyRing(("t", "x", "y", "z", "w", "u"), base="t")

    def keyed(report):
        out = {}
        for r in report["sections"]["kinks"]["records"]:
            comp = ideal_from(ring, r["component"])
            out[comp] = (r["kink"],
                         ideal_from(ring, r["log_singular_part"]).radical())
        return out

    assert keyed(data) == keyed(affine)


# -- 6: kernel property suites ---------------------------------------------------


def _random_poly(ring, rng, nterms=3, maxdeg=3):
    f = ring.zero()
    for _ in range(nterms):
        mon = tuple(rng.randint(0, maxdeg) for _ in range(ring.nvars))
        f = f + ring.monomial(mon, rng.randint(-4, 4))
    return f


def test_property_suites():
    t0 = time.time()
    rng = random.Random(20260826)
    ring = PolyRing(("x", "y", "z"))
    order = degrevlex(ring)

    # (i) Groebner: S-pairs and generators reduce to zero
    from gls.poly import leading_term, monomial_div, monomial_lcm
    for _ in range(200):
        gens = [_random_poly(ring, rng)
                for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        gb = groebner_basis(gens, order)
        for g in gens:
            assert normal_form(g, gb, order).is_zero()
        for i in range(len(gb)):
            for j in range(i + 1, len(gb)):
                mi, ci = leading_term(gb[i], order)
                mj, cj = leading_term(gb[j], order)
                lcm = monomial_lcm(mi, mj)
                s = (gb[i] * ring.monomial(monomial_div(lcm, mi), 1 / ci)
                     - gb[j] * ring.monomial(monomial_div(lcm, mj),
                                             1 / cj))
                assert normal_form(s, gb, order).is_zero()

    # (ii) Fitting presentation-invariance
    q = QuotRing(ring, [])
    mons = ["x", "y", "z", "x*y", "x - y", "z^2", "0", "1"]

    def rp(text):
        return parse_polynomial(ring, text)

    for _ in range(100):
        rank = rng.randint(1, 3)
        cols = [[rp(rng.choice(mons)) for _ in range(rank)]
                for _ in range(rng.randint(1, 3))]
        m = FPModule(q, rank, cols)
        fits = [m.fitting_ideal(i) for i in range(rank + 1)]
        extra = [rp(rng.choice(mons)) for _ in range(rank)]
        cols2 = [c + [ring.zero()] for c in cols]
        cols2.append(extra + [rp("-1")])
        m2 = FPModule(q, rank + 1, cols2)
        for i in range(rank + 1):
            assert m2.fitting_ideal(i) == fits[i]

    # (iii) Ext^1 of free modules vanishes
    for _ in range(50):
        f = _random_poly(ring, rng)
        if f.is_zero():
            continue
        qf = QuotRing(ring, [f])
        rank = rng.randint(1, 3)
        cols = []
        for _ in range(rng.randint(1, 2)):
            c = [ring.zero()] * rank
            c[rng.randrange(rank)] = f * _random_poly(ring, rng, 2, 2)
            cols.append(c)
        assert FPModule(qf, rank, cols).ext1().is_zero()

    # (iv) normalization idempotence
    curves = [Ideal(ring, [rp("x^2 - y^3")]),
              Ideal(ring, [rp("y^2 - x^3 - x^2")])]
    fam = load_family(fam_path("ex_main_affine.gls"))
    strata = compute_strata(fam)
    curves += strata.v_components
    for p in curves:
        comp = normalize_component(p)
        assert normalize_component(comp.defining).steps == 0

    # (v) radical/saturation idempotence
    mons = ["x^2", "y^2", "x*y", "z^3", "x*z", "y - x", "z - 1", "x"]
    for _ in range(200):
        gens = rng.sample(mons, rng.randint(1, 3))
        ideal = Ideal(ring, [rp(s) for s in gens])
        r = ideal.radical()
        assert r.radical() == r
        f = rp(rng.choice(mons))
        s = ideal.saturate(f)
        assert s.saturate(f) == s

    # (vi) kink-uniqueness re-scan on the regression families
    for name in ("ex_main_affine.gls", "ex_three_planes.gls"):
        fam = load_family(fam_path(name))
        strata = compute_strata(fam)
        engine = KinkEngine(fam)
        IT = strata.IT
        d = fam.d
        for E in strata.d_components:
            hits = []
            for ell in range(1, fam.max_kink + 1):
                ok = all(E.sum(engine.K_ideal(k)).saturate(IT).is_unit()
                         for k in range(0, ell - 1))
                if not ok:
                    continue
                ZE = E.sum(engine.Z_ideal(ell)).saturate(IT)
                if ZE.is_unit() or ZE.dimension() <= d - 2:
                    hits.append(ell)
            assert len(hits) == 1, (name, str(E.groebner()), hits)

    assert time.time() - t0 <= 5 * 60
