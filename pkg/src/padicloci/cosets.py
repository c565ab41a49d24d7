"""Torsion cosets of a split torus cut out by binomial equations.

A binomial equation pins one character of the torus to a root of
unity.  Writing characters additively, an equation is a pair (v, e)
with v a nonzero integer vector and e in Q/Z, and it constrains a
point x by x ** v = zeta_e.  The solution set of finitely many such
equations is a finite union of torsion cosets; each coset is stored
by the sublattice L of pinned characters together with the pinned
values, so

    coset = {x : x ** v = zeta(v) for all v in L}

with L saturated (the quotient of the character lattice by L is
torsion free) and zeta additive on a Hermite basis of L.  Everything
up to the certificate pipeline is exact integer and rational
arithmetic; p-adic data enters only when a component is embedded.
"""

import math
from fractions import Fraction
from itertools import product

from .conic import AnalyticLocus, conic_certificate
from .groups import (
    FgAbGroup,
    TorsionCharacter,
    char_exp,
    char_pow,
    embed_torsion,
    offset_coordinates,
)
from .intlinalg import (
    determinant,
    diagonal_of,
    hermite_normal_form,
    integer_kernel,
    lattice_solve,
    mat_vec,
    smith_normal_form,
    transpose,
    unimodular_inverse,
    vec_mat,
)
from .laurent import LaurentPoly
from .padic import (
    DomainError,
    PadicScalar,
    PrecisionError,
    coset_eq,
    embed_root_of_unity,
    exp_domain_bound,
)
from .series import PolyDisc


class BinomialSystem:
    """Finite list of equations x ** v = zeta_e on a torus of rank dim."""

    __slots__ = ("dim", "equations")

    def __init__(self, dim, equations):
        dim = int(dim)
        if dim < 1:
            raise ValueError("torus rank must be >= 1")
        eqs = []
        for v, e in equations:
            v = tuple(int(c) for c in v)
            if len(v) != dim:
                raise ValueError("exponent arity mismatch")
            if not any(v):
                raise ValueError("zero exponent vector is not an equation")
            eqs.append((v, Fraction(e) % 1))
        self.dim = dim
        self.equations = tuple(eqs)

    def to_json(self):
        return {
            "dim": self.dim,
            "equations": [
                {"exponents": list(v), "rhs": str(e)} for v, e in self.equations
            ],
        }

    @classmethod
    def from_json(cls, doc):
        eqs = [(item["exponents"], Fraction(item["rhs"])) for item in doc["equations"]]
        return cls(doc["dim"], eqs)


class TorsionCoset:
    """One torsion coset in canonical form.

    The constructor normalizes: the lattice basis goes to Hermite
    normal form with the pinned values carried through the same row
    operations, values are reduced mod 1, and dependent input rows must
    carry value 0 mod 1 or the pins were contradictory.  Saturation is
    then checked through the Smith invariant factors, so equal cosets
    compare equal componentwise.
    """

    __slots__ = ("ambient", "basis", "translate")

    def __init__(self, ambient, basis, translate):
        ambient = int(ambient)
        if ambient < 1:
            raise ValueError("ambient rank must be >= 1")
        rows = [[int(c) for c in r] for r in basis]
        for r in rows:
            if len(r) != ambient:
                raise ValueError("basis arity mismatch")
        vals = [Fraction(v) for v in translate]
        if len(vals) != len(rows):
            raise ValueError("one pinned value per basis row")
        hnf, carried, leftover = hermite_normal_form(rows, vals)
        for lv in leftover:
            if lv % 1:
                raise ValueError("pinned values are inconsistent")
        self.ambient = ambient
        self.basis = tuple(tuple(r) for r in hnf)
        self.translate = tuple(v % 1 for v in carried)
        if self.basis:
            _, d, _ = smith_normal_form([list(r) for r in self.basis])
            if any(x != 1 for x in diagonal_of(d)):
                raise ValueError("character lattice is not saturated")

    @property
    def dim(self):
        return self.ambient - len(self.basis)

    def contains(self, point):
        """Exact membership of a point given in Q/Z coordinates."""
        point = tuple(Fraction(x) for x in point)
        if len(point) != self.ambient:
            raise ValueError("point arity mismatch")
        return all(
            sum(c * x for c, x in zip(row, point)) % 1 == val
            for row, val in zip(self.basis, self.translate)
        )

    def __eq__(self, other):
        if not isinstance(other, TorsionCoset):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.basis == other.basis
            and self.translate == other.translate
        )

    def __hash__(self):
        return hash((self.ambient, self.basis, self.translate))

    def to_json(self):
        return {
            "lattice_basis": [list(r) for r in self.basis],
            "translate": [str(v) for v in self.translate],
            "dim": self.dim,
        }

    @classmethod
    def from_json(cls, doc):
        basis = [list(r) for r in doc["lattice_basis"]]
        vals = [Fraction(s) for s in doc["translate"]]
        return cls(int(doc["dim"]) + len(basis), basis, vals)


def _coset_key(c):
    return (c.dim, c.basis, c.translate)


def solve_binomial(system):
    """All solution components of a binomial system, as sorted cosets.

    Smith reduction of the exponent matrix turns the system into
    independent cyclic conditions s_k y_k = e_k in Q/Z.  Each nonzero
    s_k pins one new coordinate with s_k possible values, a zero s_k
    with nonzero right side kills the system, and the remaining
    coordinates stay free; an inconsistent system yields the empty
    list, never an error.  The pinned characters pull back to rows of
    the inverse column transform, which are saturated because any
    subset of rows of a unimodular matrix is.
    """
    d = system.dim
    if not system.equations:
        return [TorsionCoset(d, (), ())]
    rows = [list(v) for v, _ in system.equations]
    u, dmat, w = smith_normal_form(rows)
    winv = unimodular_inverse(w)
    rhs = [e for _, e in system.equations]
    moved = [sum(c * e for c, e in zip(urow, rhs)) % 1 for urow in u]
    diag = diagonal_of(dmat)
    pinned = []
    for k, e in enumerate(moved):
        s = diag[k] if k < len(diag) else 0
        if s == 0:
            if e:
                return []
        else:
            pinned.append((k, s))
    basis = [winv[k] for k, _ in pinned]
    out = []
    for choice in product(*(range(s) for _, s in pinned)):
        vals = [(moved[k] + j) / s for (k, s), j in zip(pinned, choice)]
        out.append(TorsionCoset(d, basis, vals))
    out.sort(key=_coset_key)
    return out


def enumerate_torsion(coset, order):
    """All points of order dividing ``order`` on the coset, sorted.

    Candidate points are a / order with a an integer vector, so the
    pins become B a = order * zeta over Z / order.  Saturation makes B
    surjective mod every order, hence the list has exactly
    order ** dim(coset) entries when order * zeta is integral and is
    empty otherwise.
    """
    m = int(order)
    if m < 1:
        raise ValueError("order bound must be >= 1")
    d = coset.ambient
    target = []
    for v in coset.translate:
        mv = v * m
        if mv.denominator != 1:
            return []
        target.append(int(mv) % m)
    b = [list(r) for r in coset.basis]
    r = len(b)
    if r == 0:
        pts = [tuple(Fraction(a, m) for a in tup) for tup in product(range(m), repeat=d)]
        pts.sort()
        return pts
    u, _, w = smith_normal_form(b)
    moved = [sum(c * t for c, t in zip(urow, target)) % m for urow in u]
    pts = []
    for free in product(range(m), repeat=d - r):
        a = mat_vec(w, moved + list(free))
        pts.append(tuple(Fraction(x % m, m) for x in a))
    pts.sort()
    return pts


def _check_unimodular(auto, d):
    rows = [[int(c) for c in r] for r in auto]
    if len(rows) != d or any(len(r) != d for r in rows):
        raise ValueError("automorphism shape mismatch")
    if determinant(rows) not in (1, -1):
        raise ValueError("automorphism must be unimodular")
    return rows


def sigma_stable(coset, auto):
    """Whether the monomial map with character action v -> v A fixes the coset.

    Every basis character must land back inside the lattice with the
    same pinned value.  One inclusion is enough: a unimodular map that
    sends a saturated lattice into itself restricts to an automorphism
    of it, because its determinant splits over the sublattice and the
    torsion-free quotient.
    """
    a = _check_unimodular(auto, coset.ambient)
    for row, val in zip(coset.basis, coset.translate):
        image = vec_mat(list(row), a)
        coeffs = lattice_solve(coset.basis, image)
        if coeffs is None:
            return False
        if sum(c * t for c, t in zip(coeffs, coset.translate)) % 1 != val:
            return False
    return True


def transform_coset(coset, auto):
    """The coset pinned by the transported characters v A.

    Dual route to sigma_stable: the coset is stable exactly when its
    transform normalizes back to itself.
    """
    a = _check_unimodular(auto, coset.ambient)
    rows = [vec_mat(list(row), a) for row in coset.basis]
    return TorsionCoset(coset.ambient, rows, coset.translate)


# ---------------------------------------------------------------------------
# certificate pipeline
# ---------------------------------------------------------------------------


def _point_image(auto_rows, point):
    return tuple(v % 1 for v in mat_vec(auto_rows, list(point)))


def _graded_basis(basis, weights):
    """Weight-pure basis rows of the lattice, or None when it has none.

    The lattice splits along the weight blocks exactly when the ranks
    of its blockwise slices add up to its rank; for a saturated lattice
    the slices are saturated in their blocks, so rank equality already
    forces the direct sum to exhaust the lattice.
    """
    rows = [list(r) for r in basis]
    r = len(rows)
    if r == 0:
        return []
    out = []
    for w in sorted(set(weights)):
        other = [j for j, wj in enumerate(weights) if wj != w]
        if other:
            block = [[row[j] for j in other] for row in rows]
            combos = integer_kernel(transpose(block), ncols=r)
        else:
            combos = [[1 if i == k else 0 for i in range(r)] for k in range(r)]
        for c in combos:
            out.append(vec_mat(c, rows))
    if len(out) != r:
        return None
    return out


def _character_value(chi, v):
    out = None
    for c, x in zip(v, chi.values):
        if c == 0:
            continue
        part = x ** int(c)
        out = part if out is None else out * part
    if out is None:
        raise ValueError("zero exponent vector")
    return out


def _contraction_exponent(psi, bound, cap):
    """Least n such that every offset of the p^n-th power of psi has
    valuation at least ``bound``."""
    cur = psi
    n = 0
    while True:
        offs = offset_coordinates(cur, 1)
        if all(x.norm_exponent() >= bound for x in offs):
            return n
        if n >= cap:
            raise PrecisionError("contraction not visible at this precision")
        cur = char_pow(cur, psi.p)
        n += 1


def _unit_row(d, i):
    row = [0] * d
    row[i] = 1
    return tuple(row)


def _certify_component(system, comp, action, auto_rows, prec):
    p = action.p
    d = comp.ambient
    full_order = math.lcm(1, *(v.denominator for v in comp.translate))
    points = enumerate_torsion(comp, full_order)
    t = points[0]
    t_order = math.lcm(1, *(x.denominator for x in t))
    if t_order % p == 0:
        return {
            "status": "certificate unavailable at p, torsion point still emitted exactly",
            "p": p,
            "component": comp.to_json(),
            "torsion_point": [str(x) for x in t],
            "order": t_order,
        }

    # least automorphism power fixing the base point; the orbit stays in
    # the finite set of full_order-torsion points of the component
    m = 1
    cur = _point_image(auto_rows, t)
    cap = full_order ** d + 1
    while cur != t:
        if not comp.contains(cur):
            raise AssertionError("stable component lost its torsion orbit")
        cur = _point_image(auto_rows, cur)
        m += 1
        if m > cap:
            raise AssertionError("torsion orbit failed to close")

    # embed the base point through its Teichmuller lift and re-check
    # every original equation at working precision
    group = FgAbGroup(d, ())
    chi = embed_torsion(TorsionCharacter(group, t, ()), p, prec)
    omega = embed_root_of_unity(
        p, Fraction(1, t_order) if t_order > 1 else Fraction(0), prec
    )
    for v, e in system.equations:
        rhs = omega ** (int(e * t_order) % t_order)
        if not coset_eq(_character_value(chi, v), rhs):
            raise AssertionError("embedded torsion point fails an equation")

    # translating by the base point must kill every pin exactly
    shifted = TorsionCoset(
        d,
        comp.basis,
        [
            val - sum(c * x for c, x in zip(row, t))
            for row, val in zip(comp.basis, comp.translate)
        ],
    )
    if any(shifted.translate):
        raise AssertionError("translation failed to reach the identity component")

    # contraction exponent of a sample pro-p character along the
    # subtorus directions, measured rather than assumed
    bound = exp_domain_bound(p)
    kernel = integer_kernel([list(r) for r in comp.basis], ncols=d)
    direction = [sum(col) for col in zip(*kernel)] if kernel else [0] * d
    tangent = [PadicScalar.from_int(p, (p ** bound) * c, prec) for c in direction]
    psi = char_exp(group, p, tangent, prec)
    n_contract = _contraction_exponent(psi, bound, prec)

    # the translated component in logarithm coordinates is the common
    # kernel of weight-pure linear forms, so the orbit of the sample
    # tangent vector admits a conic certificate
    graded = _graded_basis(comp.basis, action.weights)
    if graded is None:
        raise ValueError("hypothesis violation")
    polys = [
        LaurentPoly(d, {_unit_row(d, i): c for i, c in enumerate(row) if c})
        for row in graded
    ]
    locus = AnalyticLocus.from_polynomials(PolyDisc(p, d, bound), polys, prec)
    conic = conic_certificate(locus, action, tuple(tangent), max(action.weights))
    if not conic.get("ok"):
        raise AssertionError("conic step refused a certified subtorus")

    return {
        "status": "ok",
        "p": p,
        "precision": prec,
        "component": comp.to_json(),
        "torsion_point": [str(x) for x in t],
        "order": t_order,
        "sigma_power": m,
        "residue_character": {
            "f": chi.f,
            "coeffs": [list(r.coeffs) for r in chi.residue_character()],
        },
        "translation": {"coset_through_identity": shifted.to_json()},
        "contraction_exponent": n_contract,
        "contraction_target_exp": bound,
        "conic": conic,
    }


def torsion_certificate_pipeline(system, action, auto, precision):
    """Solve the system and certify every component at p = action.p.

    The lattice automorphism ``auto`` must fix each component and the
    action weights must grade each component lattice; either failure is
    reported as a hypothesis violation before any p-adic work starts.
    Components whose pinned values force p-power torsion get their
    torsion point emitted exactly with an unavailability notice instead
    of a p-adic certificate.  Every emitted certificate is re-validated
    from its serialized form through exact membership and stability.
    """
    p = action.p
    if action.dim != system.dim:
        raise ValueError("action arity mismatch")
    prec = int(precision)
    if prec <= exp_domain_bound(p):
        raise ValueError("precision must exceed the exp domain bound")
    comps = solve_binomial(system)
    if not comps:
        raise DomainError("the system has no solutions; nothing to certify")
    auto_rows = _check_unimodular(auto, system.dim)
    for c in comps:
        if not sigma_stable(c, auto_rows):
            raise ValueError("hypothesis violation")
        if _graded_basis(c.basis, action.weights) is None:
            raise ValueError("hypothesis violation")
    certs = [_certify_component(system, c, action, auto_rows, prec) for c in comps]
    for cert in certs:
        comp = TorsionCoset.from_json(cert["component"])
        point = tuple(Fraction(s) for s in cert["torsion_point"])
        if not comp.contains(point):
            raise AssertionError("certificate point left its component")
        if not sigma_stable(comp, auto_rows):
            raise AssertionError("certificate component lost stability")
    return certs
