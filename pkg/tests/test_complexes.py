from fractions import Fraction

import pytest

from padicloci.complexes import (
    SIZE_LIMIT_MESSAGE,
    TwistedComplex,
    circle_complex,
    fitting_locus,
    scan_torsion,
    shape_check,
    specialize,
    surface_complex,
    torus_complex,
    wedge_complex,
)
from padicloci.cosets import TorsionCoset, enumerate_torsion
from padicloci.cyclotomic import CycNumber
from padicloci.laurent import LaurentPoly

F = Fraction


# -- cohomology at a character ------------------------------------------------


def test_circle_betti_numbers():
    circ = circle_complex()
    assert specialize(circ, (F(0),)) == (1, 1)
    assert specialize(circ, (F(1, 3),)) == (0, 0)
    assert specialize(circ, (F(1, 2),)) == (0, 0)


def test_torus_betti_numbers():
    tor = torus_complex()
    assert specialize(tor, (F(0), F(0))) == (1, 2, 1)
    assert specialize(tor, (F(1, 2), F(0))) == (0, 0, 0)
    assert specialize(tor, (F(1, 6), F(5, 6))) == (0, 0, 0)


def test_specialization_is_galois_invariant():
    tor = torus_complex()
    assert specialize(tor, (F(1, 6), F(1, 3))) == specialize(
        tor, (F(5, 6), F(5, 3) % 1)
    )


def test_wedge_cohomology():
    w3 = wedge_complex(3)
    assert specialize(w3, (F(0), F(0), F(0))) == (1, 3)
    assert specialize(w3, (F(1, 2), F(0), F(0))) == (0, 2)


def test_surface_cohomology_and_euler_characteristic():
    sur = surface_complex(2)
    assert specialize(sur, (F(0),) * 4) == (1, 4, 1)
    h = specialize(sur, (F(1, 3), F(0), F(0), F(0)))
    assert h[0] == 0 and h[2] == 0
    assert h[0] - h[1] + h[2] == -2


def test_euler_characteristic_is_constant_across_characters():
    for cplx, chi in ((torus_complex(), 0), (wedge_complex(4), -3), (surface_complex(3), -4)):
        n = cplx.nvars
        for k in range(6):
            char = tuple(F(k * (i + 1) % 6, 6) for i in range(n))
            h = specialize(cplx, char)
            signed = sum((-1) ** i * x for i, x in enumerate(h))
            assert signed == chi


# -- torsion scans ------------------------------------------------------------


def test_torus_scan_hits_only_the_trivial_character():
    s = scan_torsion(torus_complex(), 1, 0, 6)
    assert s.scanned == 36
    assert s.hits == ((F(0), F(0)),)
    assert s.order_bound == 6 and s.i == 1 and s.j == 0


def test_wedge_scan_thresholds():
    w3 = wedge_complex(3)
    s2 = scan_torsion(w3, 1, 2, 2)
    assert s2.hits == ((F(0), F(0), F(0)),) and s2.scanned == 8
    assert scan_torsion(w3, 1, 3, 2).hits == ()


def test_scan_json_shape():
    s = scan_torsion(circle_complex(), 0, 0, 4)
    doc = s.to_json()
    assert doc["scanned"] == 4
    assert doc["hits"] == [["0"]]
    assert doc["i"] == 0 and doc["j"] == 0 and doc["order_bound"] == 4


# -- determinantal loci -------------------------------------------------------


def test_circle_jumping_locus_is_a_single_binomial():
    f1 = fitting_locus(circle_complex(), 0, 0)
    assert len(f1) == 1
    assert set(f1[0].terms) == {(0,), (1,)}


def test_torus_jumping_locus_dedupes_to_two_binomials():
    f2 = fitting_locus(torus_complex(), 1, 0)
    assert len(f2) == 2
    exps = sorted(tuple(sorted(g.terms)) for g in f2)
    assert exps == [((0, 0), (0, 1)), ((0, 0), (1, 0))]


def test_fitting_trivial_threshold_and_h0():
    tor = torus_complex()
    f3 = fitting_locus(tor, 1, 2)
    assert len(f3) == 1 and len(f3[0].terms) == 1
    assert fitting_locus(tor, 0, 0) is not SIZE_LIMIT_MESSAGE
    assert len(fitting_locus(tor, 0, 0)) == 2


def test_fitting_generators_vanish_exactly_on_the_jump_set():
    # dual route: a 12-torsion character is a hit of the scan exactly when
    # every generator of the fitting ideal vanishes at it
    tor = torus_complex()
    gens = fitting_locus(tor, 1, 0)
    scan = scan_torsion(tor, 1, 0, 12)
    hits = set(scan.hits)
    from itertools import product

    for char in product([F(a, 12) for a in range(12)], repeat=2):
        point = tuple(CycNumber.root_of_unity(c) for c in char)
        vanish = all(g.evaluate(point).is_zero() for g in gens)
        assert vanish == (char in hits)


def test_fitting_size_cap():
    entry = LaurentPoly.variable(1, 0) - LaurentPoly.constant(1, 1)
    big = TwistedComplex(1, (7, 7), [[[entry] * 7 for _ in range(7)]])
    assert fitting_locus(big, 0, 0) == SIZE_LIMIT_MESSAGE


# -- shape checks -------------------------------------------------------------


def test_shape_confirms_the_torus_trivial_point():
    gens = fitting_locus(torus_complex(), 1, 0)
    v = shape_check(gens)
    assert v["verdict"] == "shape confirmed"
    assert len(v["cosets"]) == 1
    c0 = TorsionCoset.from_json(v["cosets"][0])
    assert c0.dim == 0 and c0.contains((F(0), F(0)))
    # the coset points are exactly the scan hits
    pts = set(enumerate_torsion(c0, 6))
    assert pts == set(scan_torsion(torus_complex(), 1, 0, 6).hits)


def test_shape_confirms_a_positive_dimensional_coset():
    tt = LaurentPoly(2, {(1, 1): 1, (0, 0): -1})
    v = shape_check([tt])
    assert v["verdict"] == "shape confirmed"
    assert TorsionCoset.from_json(v["cosets"][0]).dim == 1


def test_shape_undetermined_for_non_binomial_generators():
    bad = LaurentPoly(2, {(1, 0): 1, (0, 1): 1, (0, 0): -2})
    assert shape_check([bad])["verdict"] == "shape undetermined: non-binomial generators"


def test_shape_unit_generator_means_empty_locus():
    v = shape_check([LaurentPoly.constant(2, 1)])
    assert v["verdict"] == "shape confirmed" and v["cosets"] == []


def test_shape_with_root_of_unity_ratio():
    g = LaurentPoly(1, {(2,): 1, (0,): -CycNumber.root_of_unity(F(1, 3))})
    v = shape_check([g])
    assert v["verdict"] == "shape confirmed"
    assert len(v["cosets"]) == 2
    membership = {TorsionCoset.from_json(d).contains((F(1, 6),)) for d in v["cosets"]}
    assert membership == {True, False}


# -- complex construction and serialization -----------------------------------


def test_complex_rejects_non_composing_differentials():
    t = LaurentPoly.variable(1, 0)
    with pytest.raises(ValueError) as info:
        TwistedComplex(1, (1, 1, 1), [[[t]], [[t]]])
    assert "compose" in str(info.value)


def test_complex_rejects_shape_mismatches():
    t = LaurentPoly.variable(1, 0)
    with pytest.raises(ValueError):
        TwistedComplex(1, (1, 2), [[[t]]])
    with pytest.raises(ValueError):
        TwistedComplex(1, (0, 1), [[[t]]])


def test_complex_json_round_trip():
    tor = torus_complex()
    back = TwistedComplex.from_json(tor.to_json())
    assert back.dims == tor.dims and back.nvars == tor.nvars
    assert specialize(back, (F(1, 3), F(2, 3))) == (0, 0, 0)
    w = wedge_complex(2)
    assert TwistedComplex.from_json(w.to_json()).dims == w.dims
