import random
from fractions import Fraction

import pytest

from padicloci.padic import (
    DomainError,
    PadicScalar,
    PrecisionError,
    ResidueElement,
    UnramifiedScalar,
    _exp_reference,
    _log_reference,
    coset_eq,
    embed_root_of_unity,
    exp_domain_bound,
    modulus_poly,
    multiplicative_generator,
    padic_exp,
    padic_log,
    scalar_from_json,
    teichmuller,
)


def random_fraction(rng, p):
    num = rng.randrange(-200, 201)
    den = rng.randrange(1, 50)
    while den % p == 0:
        den = rng.randrange(1, 50)
    return Fraction(num, den)


# -- PadicScalar -----------------------------------------------------------


def test_from_int_basic_coset_data():
    x = PadicScalar.from_int(5, 50, 3)
    assert x.valuation == 2
    assert x.rep_int() == 50
    assert x.abs_prec == 5
    z = PadicScalar.from_int(5, 0, 3)
    assert z.is_zero_coset and z.abs_prec == 3


def test_from_fraction_inverts_denominator():
    x = PadicScalar.from_fraction(5, Fraction(1, 2), 4)
    assert x.rep_int() == 313
    assert (x + x).rep_int() == 1
    y = PadicScalar.from_fraction(7, Fraction(3, 7), 5)
    assert y.valuation == -1
    assert y.rep() == Fraction(3, 7)
    with pytest.raises(ValueError):
        y.rep_int()
    assert coset_eq(y * 7, PadicScalar.from_int(7, 3, 5))


def test_field_operations_agree_with_exact_rationals():
    rng = random.Random(401)
    for p in (2, 3, 5, 13):
        for _ in range(60):
            a = random_fraction(rng, p)
            b = random_fraction(rng, p)
            xa = PadicScalar.from_fraction(p, a, 8)
            xb = PadicScalar.from_fraction(p, b, 8)
            assert coset_eq(xa + xb, PadicScalar.from_fraction(p, a + b, 8))
            assert coset_eq(xa - xb, PadicScalar.from_fraction(p, a - b, 8))
            assert coset_eq(xa * xb, PadicScalar.from_fraction(p, a * b, 8))
            if b != 0:
                assert coset_eq(xa / xb, PadicScalar.from_fraction(p, a / b, 8))


def test_zero_coset_absorbing_rules():
    z = PadicScalar.zero_at(3, 4)
    x = PadicScalar.from_int(3, 2, 6)
    s = z + x
    assert not s.is_zero_coset
    assert s.abs_prec == 4
    prod = z * x
    assert prod.is_zero_coset and prod.abs_prec == 4
    assert (z + z).is_zero_coset


def test_is_zero_to_three_way():
    z = PadicScalar.zero_at(5, 3)
    assert z.is_zero_to(3) is True
    with pytest.raises(PrecisionError):
        z.is_zero_to(4)
    x = PadicScalar.from_int(5, 25, 4)
    assert x.is_zero_to(2) is True
    assert x.is_zero_to(3) is False


def test_truncate_refuses_to_refine():
    x = PadicScalar.from_int(5, 7, 3)
    assert x.truncate_abs(2).rep_int() == 7
    with pytest.raises(PrecisionError):
        x.truncate_abs(10)


def test_inverse_and_powers():
    rng = random.Random(77)
    for p in (3, 7):
        for _ in range(40):
            a = random_fraction(rng, p)
            if a == 0:
                continue
            x = PadicScalar.from_fraction(p, a, 7)
            assert coset_eq(x * x.inverse(), PadicScalar.one(p, 7))
            assert coset_eq(x ** 3, x * x * x)
            assert coset_eq(x ** -2, (x * x).inverse())
    with pytest.raises(ZeroDivisionError):
        PadicScalar.zero_at(3, 2) ** -1


def test_divexact_rational_loses_no_precision():
    x = PadicScalar.from_fraction(5, Fraction(6, 7), 6)
    y = x.divexact_rational(Fraction(2, 7))
    assert y.abs_prec >= x.abs_prec
    assert coset_eq(y, PadicScalar.from_int(5, 3, 6))


def test_residue_rules():
    assert PadicScalar.from_int(7, 10, 3).residue() == 3
    assert PadicScalar.from_int(7, 14, 3).residue() == 0
    with pytest.raises(ValueError):
        PadicScalar.from_fraction(7, Fraction(1, 7), 3).residue()


def test_scalar_json_round_trip():
    for x in (
        PadicScalar.from_fraction(5, Fraction(3, 4), 5),
        PadicScalar.from_fraction(3, Fraction(-7, 2), 4),
        PadicScalar.zero_at(7, 6),
    ):
        assert scalar_from_json(x.to_json()) == x


# -- residue fields and the unramified extension ---------------------------


def brute_lex_smallest_modulus(p, f):
    # exhaustive search over monic degree-f polynomials in lex coefficient
    # order (constant term first), testing irreducibility by trial products
    from itertools import product as iproduct

    def poly_mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
        return out

    monic = {1: [[c, 1] for c in range(p)]}
    for d in range(2, f):
        monic[d] = [list(t) + [1] for t in iproduct(range(p), repeat=d)]
    for tail in iproduct(range(p), repeat=f):
        cand = list(tail) + [1]
        reducible = False
        for d in range(1, f // 2 + 1):
            for a in monic[d]:
                for b in monic.get(f - d, [[1]] if f - d == 0 else []):
                    if poly_mul(a, b) == cand:
                        reducible = True
                        break
                if reducible:
                    break
            if reducible:
                break
        if not reducible:
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")


def test_modulus_poly_matches_brute_force_lex_search():
    for p, f in ((2, 2), (2, 3), (3, 2), (5, 2), (7, 2)):
        assert modulus_poly(p, f) == brute_lex_smallest_modulus(p, f)


def test_residue_element_orders_partition_the_unit_group():
    for p, f in ((3, 2), (5, 2), (2, 3)):
        q = p ** f
        seen = {}
        from padicloci.padic import residue_field_elements

        for xi in residue_field_elements(p, f):
            if xi.is_zero():
                continue
            n = xi.multiplicative_order()
            assert (xi ** n) == xi.one_like()
            seen[n] = seen.get(n, 0) + 1
        assert sum(seen.values()) == q - 1
        # cyclic group: phi(d) elements of each order d | q-1
        assert seen[q - 1] >= 1
    g = multiplicative_generator(5, 2)
    assert g.multiplicative_order() == 24


def test_unramified_round_trips():
    xi = ResidueElement(5, 2, (2, 3))
    x = UnramifiedScalar.from_residue(xi, 6)
    assert x.residue() == xi
    assert x.coefficients()[0].residue() == 2
    flat = PadicScalar.from_fraction(5, Fraction(4, 3), 6)
    emb = UnramifiedScalar.from_padic(flat, 2)
    assert emb.to_padic() == flat
    with pytest.raises(ValueError):
        (x * x).to_padic()  # genuinely quadratic element


def test_unramified_field_axioms_sampled():
    rng = random.Random(19)
    p, f, prec = 3, 2, 6
    def rand_unit():
        c = (rng.randrange(1, p), rng.randrange(p))
        return UnramifiedScalar.from_residue(ResidueElement(p, f, c), prec) + (
            UnramifiedScalar.one(p, f, prec) * rng.randrange(p ** 3)
        )
    for _ in range(30):
        a, b, c = rand_unit(), rand_unit(), rand_unit()
        assert coset_eq(a * (b + c), a * b + a * c)
        assert coset_eq((a * b) * c, a * (b * c))
        assert coset_eq(a * a.inverse(), UnramifiedScalar.one(p, f, prec))


def test_unramified_json_round_trip_and_flat_dispatch():
    xi = ResidueElement(3, 2, (1, 2))
    x = UnramifiedScalar.from_residue(xi, 5)
    doc = x.to_json()
    assert doc["f"] == 2
    assert scalar_from_json(doc) == x
    flat = UnramifiedScalar.from_padic(PadicScalar.from_int(3, 7, 5), 1)
    assert scalar_from_json(flat.to_json()) == flat.to_padic()


# -- Teichmuller lifts ------------------------------------------------------


def test_teichmuller_known_value_and_defining_properties():
    om = teichmuller(ResidueElement.from_int(5, 2), 4)
    assert om.to_padic().rep_int() == 182
    for p, f in ((2, 3), (3, 2), (7, 1), (13, 1)):
        q = p ** f
        for c in range(1, min(q, 9)):
            xi = (
                ResidueElement.from_int(p, c)
                if f == 1
                else ResidueElement(p, f, tuple((c + i) % p for i in range(f)))
            )
            if xi.is_zero():
                continue
            om = teichmuller(xi, 6)
            assert om.residue() == xi
            assert om ** (q - 1) == UnramifiedScalar.one(p, f, 6)


def test_teichmuller_is_multiplicative():
    p, f = 3, 2
    from padicloci.padic import residue_field_elements

    elems = [x for x in residue_field_elements(p, f) if not x.is_zero()]
    for a in elems:
        for b in elems:
            assert teichmuller(a, 5) * teichmuller(b, 5) == teichmuller(a * b, 5)


def test_embed_root_of_unity_orders():
    z = embed_root_of_unity(5, Fraction(1, 3), 6)
    assert z.f == 2
    assert z ** 3 == UnramifiedScalar.one(5, 2, 6)
    assert z != UnramifiedScalar.one(5, 2, 6)
    one = embed_root_of_unity(7, Fraction(0), 5)
    assert one == UnramifiedScalar.one(7, 1, 5)
    # angle arithmetic: z(1/6)**2 = z(1/3) inside the same field
    z6 = embed_root_of_unity(5, Fraction(1, 6), 6)
    assert z6 * z6 == embed_root_of_unity(5, Fraction(1, 3), 6)
    with pytest.raises(ValueError):
        embed_root_of_unity(5, Fraction(1, 10), 4)


# -- exp and log ------------------------------------------------------------


def test_exp_domain_gates():
    assert exp_domain_bound(3) == 1 and exp_domain_bound(2) == 2
    with pytest.raises(DomainError):
        padic_exp(PadicScalar.from_int(3, 1, 5))
    with pytest.raises(DomainError):
        padic_exp(PadicScalar.from_int(2, 2, 5))
    with pytest.raises(DomainError):
        padic_log(PadicScalar.from_int(5, 5, 4))
    # zero coset known deep enough is fine, shallow is a precision failure
    assert padic_exp(PadicScalar.zero_at(3, 4)).rep_int() == 1
    with pytest.raises(PrecisionError):
        padic_exp(PadicScalar.zero_at(2, 1))


def test_exp_known_value():
    x = padic_exp(PadicScalar.from_int(5, 5, 3))
    assert x.rep_int() % 5 ** 4 == 456


def test_exp_log_match_reference_series():
    rng = random.Random(23)
    for p in (2, 3, 5):
        b = exp_domain_bound(p)
        for _ in range(25):
            c = rng.randrange(1, p ** 4)
            x = PadicScalar.from_int(p, p ** b * c, 8)
            fast = padic_exp(x)
            slow = _exp_reference(x)
            assert coset_eq(fast, slow)
            assert coset_eq(padic_log(fast), _log_reference(fast))
            assert coset_eq(padic_log(fast), x)


def test_exp_is_a_homomorphism_and_log_inverts_it():
    rng = random.Random(31)
    p, b = 7, 1
    for _ in range(40):
        x = PadicScalar.from_int(p, p ** b * rng.randrange(1, p ** 5), 9)
        y = PadicScalar.from_int(p, p ** b * rng.randrange(1, p ** 5), 9)
        assert coset_eq(padic_exp(x + y), padic_exp(x) * padic_exp(y))
        assert coset_eq(padic_log(padic_exp(x)), x)
        assert coset_eq(padic_exp(padic_log(padic_exp(y))), padic_exp(y))


def test_exp_log_on_quadratic_extension():
    p, f = 3, 2
    xi = ResidueElement(p, f, (1, 1))
    x = UnramifiedScalar.from_residue(xi, 6) * p
    assert x.v == 1
    e = padic_exp(x)
    assert e.v == 0 and e.residue() == ResidueElement(p, f, (1, 0))
    assert coset_eq(padic_log(e), x)
    assert coset_eq(e, _exp_reference(x))


def test_log_requires_principal_units():
    om = teichmuller(ResidueElement.from_int(7, 3), 6)
    u = padic_exp(PadicScalar.from_int(7, 7, 6))
    mixed = om * UnramifiedScalar.from_padic(u, 1)
    with pytest.raises(DomainError):
        padic_log(mixed)
    # dividing out the multiplicative lift of the residue restores the domain
    fixed = mixed * teichmuller(mixed.residue(), 6).inverse()
    assert coset_eq(padic_log(fixed).to_padic(), padic_log(u))
