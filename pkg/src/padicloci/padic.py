"""Exact p-adic scalars at finite relative precision.

A nonzero scalar is the coset ``p**v * (u + p**M * Z_p)`` stored as the
triple (v, u, M) with the unit part normalized into [1, p**M).  The coset
is tracked exactly: arithmetic here is integer arithmetic on coset data,
never floating approximation.  A quantity that cannot be distinguished
from zero is tagged "zero to absolute precision N" and stands for the
coset ``p**N * Z_p``; it remembers N and nothing else.  Norms follow the
convention |p| = 1/p, so a valuation-v element has norm p**(-v).

Unramified coefficient rings Q_{p^f} are coefficient vectors relative to
the basis 1, x, ..., x**(f-1) modulo a fixed monic degree-f polynomial
that is irreducible mod p; ``modulus_poly`` pins the deterministic choice
so serialized values never need to ship the modulus.  Ramified data
(fractional valuations, radii at the convergence boundary) is rejected,
not approximated.
"""

import math
from fractions import Fraction


class PrecisionError(ArithmeticError):
    """Raised when stored precision cannot support the requested answer."""


_PRIMES_SEEN = set()


def check_prime(p):
    if p in _PRIMES_SEEN:
        return p
    if not isinstance(p, int) or p < 2:
        raise ValueError("p must be a prime >= 2")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise ValueError("p must be prime, got %d = %d * %d" % (p, d, p // d))
        d += 1
    _PRIMES_SEEN.add(p)
    return p


def digit_sum(n, p):
    s = 0
    while n:
        s += n % p
        n //= p
    return s


def int_valuation(n, p):
    """(v, unit) with n == p**v * unit, for n != 0."""
    if n == 0:
        raise ValueError("valuation of integer zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def exp_domain_bound(p):
    # convergence disc of the exponential: |x| <= 1/p for odd p, 1/4 for p = 2
    return 2 if p == 2 else 1


class PadicScalar:
    """Element of Q_p known exactly modulo p**(v + M)."""

    __slots__ = ("p", "v", "u", "M", "zprec")

    def __init__(self, p, v, u, rel_prec, _zero_prec=None):
        check_prime(p)
        self.p = p
        if _zero_prec is not None:
            self.v = None
            self.u = 0
            self.M = 0
            self.zprec = _zero_prec
            return
        if rel_prec < 1:
            raise ValueError("relative precision must be >= 1")
        pm = p ** rel_prec
        u %= pm
        if u % p == 0:
            raise ValueError("unit part of a nonzero scalar must be a p-adic unit")
        self.v = v
        self.u = u
        self.M = rel_prec
        self.zprec = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero_at(cls, p, abs_prec):
        if abs_prec < 1:
            raise ValueError("zero needs a positive absolute precision")
        return cls(p, 0, 0, 0, _zero_prec=abs_prec)

    @classmethod
    def from_int(cls, p, n, rel_prec):
        if n == 0:
            return cls.zero_at(p, rel_prec)
        v, unit = int_valuation(n, p)
        return cls(p, v, unit, rel_prec)

    @classmethod
    def from_fraction(cls, p, q, rel_prec):
        q = Fraction(q)
        if q == 0:
            return cls.zero_at(p, rel_prec)
        vn, un = int_valuation(q.numerator, p) if q.numerator else (0, 0)
        vd, ud = int_valuation(q.denominator, p)
        unit = un * pow(ud, -1, p ** rel_prec)
        return cls(p, vn - vd, unit, rel_prec)

    @classmethod
    def one(cls, p, rel_prec):
        return cls(p, 0, 1, rel_prec)

    # -- queries ---------------------------------------------------------

    @property
    def is_zero_coset(self):
        return self.v is None

    @property
    def abs_prec(self):
        return self.zprec if self.v is None else self.v + self.M

    @property
    def valuation(self):
        # None means "only a lower bound, namely abs_prec, is known"
        return self.v

    def norm_exponent(self):
        """e with |x| = p**(-e); for a zero coset this is a lower bound."""
        return self.zprec if self.v is None else self.v

    def is_zero_to(self, tau):
        """Exact three-way test of |x| <= p**(-tau).

        True/False when the stored precision decides it, PrecisionError when
        the coset is too coarse to tell.
        """
        if self.v is not None:
            return self.v >= tau
        if self.zprec >= tau:
            return True
        raise PrecisionError(
            "zero to precision %d cannot be tested at threshold %d" % (self.zprec, tau)
        )

    def rep(self):
        """Canonical rational representative of the coset."""
        if self.v is None:
            return Fraction(0)
        if self.v >= 0:
            return Fraction((self.p ** self.v * self.u) % self.p ** self.abs_prec)
        return Fraction(self.u, self.p ** (-self.v))

    def rep_int(self):
        r = self.rep()
        if r.denominator != 1:
            raise ValueError("negative valuation has no integer representative")
        return r.numerator

    def truncate_abs(self, n):
        """The same coset coarsened to absolute precision n."""
        if n > self.abs_prec:
            raise PrecisionError("cannot refine precision from %d to %d" % (self.abs_prec, n))
        if self.v is None or self.v >= n:
            return PadicScalar.zero_at(self.p, n)
        return PadicScalar(self.p, self.v, self.u % self.p ** (n - self.v), n - self.v)

    def residue(self):
        """Image in F_p; requires v >= 0."""
        if self.v is None:
            if self.zprec < 1:
                raise PrecisionError("residue of an imprecise zero")
            return 0
        if self.v < 0:
            raise ValueError("residue of a non-integral scalar")
        return self.u % self.p if self.v == 0 else 0

    def __repr__(self):
        if self.v is None:
            return "PadicScalar(p=%d, O(p^%d))" % (self.p, self.zprec)
        return "PadicScalar(p=%d, p^%d * (%d + O(p^%d)))" % (self.p, self.v, self.u, self.M)

    def __eq__(self, other):
        if not isinstance(other, PadicScalar):
            return NotImplemented
        return (
            self.p == other.p
            and self.v == other.v
            and self.u == other.u
            and self.M == other.M
            and self.zprec == other.zprec
        )

    def __hash__(self):
        return hash((self.p, self.v, self.u, self.M, self.zprec))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other, abs_target):
        # exact rationals enter at whatever absolute precision the context needs
        if isinstance(other, PadicScalar):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return other
        if isinstance(other, int) or isinstance(other, Fraction):
            q = Fraction(other)
            if q == 0:
                return PadicScalar.zero_at(self.p, abs_target)
            v = int_valuation(q.numerator, self.p)[0] - int_valuation(q.denominator, self.p)[0]
            if v >= abs_target:
                return PadicScalar.zero_at(self.p, abs_target)
            return PadicScalar.from_fraction(self.p, q, abs_target - v)
        return None

    def __add__(self, other):
        other = self._coerce(other, self.abs_prec)
        if other is None:
            return NotImplemented
        p = self.p
        n = min(self.abs_prec, other.abs_prec)
        if self.v is None and other.v is None:
            return PadicScalar.zero_at(p, n)
        # common shift keeps everything integral when valuations are negative
        shift = min([x.v for x in (self, other) if x.v is not None] + [0])
        total = 0
        for x in (self, other):
            if x.v is not None:
                total += p ** (x.v - shift) * x.u
        n_shifted = n - shift
        total %= p ** n_shifted
        if total == 0:
            return PadicScalar.zero_at(p, n)
        v, unit = int_valuation(total, p)
        v += shift
        if v >= n:
            return PadicScalar.zero_at(p, n)
        return PadicScalar(p, v, unit, n - v)

    __radd__ = __add__

    def __neg__(self):
        if self.v is None:
            return self
        return PadicScalar(self.p, self.v, -self.u % self.p ** self.M, self.M)

    def __sub__(self, other):
        other2 = self._coerce(other, self.abs_prec)
        if other2 is None:
            return NotImplemented
        return self.__add__(-other2)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, PadicScalar):
            q = Fraction(other)
            if q == 0:
                # exact zero has no representation here; a coset bound must do
                return PadicScalar.zero_at(self.p, max(1, self.abs_prec))
            return self.divexact_rational(1 / q)
        if not isinstance(other, PadicScalar):
            return NotImplemented
        if other.p != self.p:
            raise ValueError("mixed primes")
        p = self.p
        if self.v is None or other.v is None:
            bound = self.norm_exponent() + other.norm_exponent()
            return PadicScalar.zero_at(p, max(1, bound))
        m = min(self.M, other.M)
        return PadicScalar(p, self.v + other.v, (self.u * other.u) % p ** m, m)

    __rmul__ = __mul__

    def inverse(self):
        if self.v is None:
            raise ZeroDivisionError("not invertible at this precision")
        return PadicScalar(self.p, -self.v, pow(self.u, -1, self.p ** self.M), self.M)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, PadicScalar):
            return self.divexact_rational(Fraction(other))
        if isinstance(other, PadicScalar):
            return self * other.inverse()
        return NotImplemented

    def divexact_rational(self, q):
        """Exact division by a rational; no precision is lost."""
        q = Fraction(q)
        if q == 0:
            raise ZeroDivisionError
        p = self.p
        vn, un = int_valuation(q.numerator, p)
        vd, ud = int_valuation(q.denominator, p)
        if self.v is None:
            return PadicScalar.zero_at(p, max(1, self.zprec - vn + vd))
        pm = p ** self.M
        unit = (self.u * pow(un, -1, pm) * ud) % pm
        return PadicScalar(p, self.v - vn + vd, unit, self.M)

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if self.v is None:
            if e <= 0:
                raise ZeroDivisionError("power of zero coset with exponent <= 0")
            return PadicScalar.zero_at(self.p, self.zprec * e)
        if e == 0:
            return PadicScalar.one(self.p, self.M)
        base = self if e > 0 else self.inverse()
        return PadicScalar(self.p, base.v * abs(e), pow(base.u, abs(e), self.p ** base.M), base.M)

    # -- serialization ----------------------------------------------------

    def to_json(self):
        if self.v is None:
            return {"p": self.p, "f": 1, "v": "zero", "unit_digits": [], "rel_prec": self.zprec}
        return {
            "p": self.p,
            "f": 1,
            "v": self.v,
            "unit_digits": _digits(self.u, self.p, self.M),
            "rel_prec": self.M,
        }


def _digits(n, p, count):
    out = []
    for _ in range(count):
        out.append(n % p)
        n //= p
    return out


def _undigits(ds, p):
    n = 0
    for d in reversed(ds):
        n = n * p + d
    return n


def scalar_from_json(doc):
    p = doc["p"]
    f = doc.get("f", 1)
    if doc["v"] == "zero":
        if f == 1:
            return PadicScalar.zero_at(p, doc["rel_prec"])
        return UnramifiedScalar.zero_at(p, f, doc["rel_prec"])
    if f == 1:
        return PadicScalar(p, doc["v"], _undigits(doc["unit_digits"], p), doc["rel_prec"])
    coeffs = tuple(_undigits(ds, p) for ds in doc["unit_digits"])
    return UnramifiedScalar(p, f, doc["v"], coeffs, doc["rel_prec"])


def coset_eq(x, y):
    """Equality of the cosets after coarsening to the shared precision."""
    n = min(x.abs_prec, y.abs_prec)
    a, b = x.truncate_abs(n), y.truncate_abs(n)
    return a == b


# ---------------------------------------------------------------------------
# residue fields and the deterministic modulus
# ---------------------------------------------------------------------------


def _fp_polymulmod(a, b, h, p):
    # a, b dense little-endian coefficient lists over F_p, h monic
    f = len(h) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, f - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for i in range(f):
                prod[k - f + i] = (prod[k - f + i] - c * h[i]) % p
    out = prod[:f]
    out += [0] * (f - len(out))
    return out


def _fp_powmod(a, e, h, p):
    f = len(h) - 1
    result = [1] + [0] * (f - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _fp_polymulmod(result, base, h, p)
        base = _fp_polymulmod(base, base, h, p)
        e >>= 1
    return result


def _fp_polygcd(a, b, p):
    a, b = list(a), list(b)

    def deg(x):
        d = len(x) - 1
        while d >= 0 and x[d] % p == 0:
            d -= 1
        return d

    while deg(b) >= 0:
        da, db = deg(a), deg(b)
        if da < db:
            a, b = b, a
            continue
        inv = pow(b[deg(b)] % p, -1, p)
        while deg(a) >= deg(b):
            da = deg(a)
            c = a[da] * inv % p
            shift = da - deg(b)
            for i in range(deg(b) + 1):
                a[i + shift] = (a[i + shift] - c * b[i]) % p
        a, b = b, a
    return a


def _is_irreducible(coeffs, p, f):
    # coeffs: little-endian of monic degree-f poly over F_p
    h = list(coeffs)
    x = [0, 1] if f > 1 else [0]
    if f == 1:
        return True
    xq = _fp_powmod([0, 1], p ** f, h, p)
    if xq != [0, 1] + [0] * (f - 2):
        return False
    for q in set(_prime_factors(f)):
        xe = _fp_powmod([0, 1], p ** (f // q), h, p)
        diff = list(xe)
        diff[1] = (diff[1] - 1) % p
        g = _fp_polygcd(h, diff, p)
        dg = len(g) - 1
        while dg >= 0 and g[dg] % p == 0:
            dg -= 1
        if dg != 0:
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


_MODULUS_CACHE = {}


def modulus_poly(p, f):
    """Deterministic modulus for Q_{p^f}.

    The first monic degree-f polynomial, in lexicographic order of the
    little-endian coefficient tuple (a_0, ..., a_{f-1}) with entries in
    [0, p), that is irreducible over F_p; returned little-endian including
    the leading 1.  This is an invented pinned convention: any fixed
    irreducible would do, determinism is what matters.
    """
    check_prime(p)
    if f < 1:
        raise ValueError("extension degree must be >= 1")
    key = (p, f)
    got = _MODULUS_CACHE.get(key)
    if got is not None:
        return got
    if f == 1:
        _MODULUS_CACHE[key] = (0, 1)
        return (0, 1)
    from itertools import product

    for tail in product(range(p), repeat=f):
        cand = tuple(tail) + (1,)
        if _is_irreducible(cand, p, f):
            _MODULUS_CACHE[key] = cand
            return cand
    raise AssertionError("no irreducible polynomial found; unreachable")


class ResidueElement:
    """Element of the residue field F_{p^f} over the pinned modulus."""

    __slots__ = ("p", "f", "coeffs")

    def __init__(self, p, f, coeffs):
        check_prime(p)
        coeffs = tuple(c % p for c in coeffs)
        if len(coeffs) != f:
            raise ValueError("need %d coefficients" % f)
        self.p = p
        self.f = f
        self.coeffs = coeffs

    @classmethod
    def from_int(cls, p, c):
        return cls(p, 1, (c % p,))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, ResidueElement)
            and (self.p, self.f, self.coeffs) == (other.p, other.f, other.coeffs)
        )

    def __hash__(self):
        return hash((self.p, self.f, self.coeffs))

    def __repr__(self):
        return "ResidueElement(p=%d, f=%d, %s)" % (self.p, self.f, list(self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, ResidueElement) or (self.p, self.f) != (other.p, other.f):
            raise ValueError("mixed residue fields")
        h = modulus_poly(self.p, self.f)
        return ResidueElement(
            self.p, self.f, _fp_polymulmod(list(self.coeffs), list(other.coeffs), list(h), self.p)
        )

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        h = list(modulus_poly(self.p, self.f))
        return ResidueElement(self.p, self.f, _fp_powmod(list(self.coeffs), e, h, self.p))

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError
        return self ** (self.p ** self.f - 2)

    def one_like(self):
        return ResidueElement(self.p, self.f, (1,) + (0,) * (self.f - 1))

    def multiplicative_order(self):
        if self.is_zero():
            raise ZeroDivisionError("order of zero")
        n = self.p ** self.f - 1
        order = n
        for q in set(_prime_factors(n)):
            while order % q == 0 and (self ** (order // q)) == self.one_like():
                order //= q
        return order


def residue_field_elements(p, f):
    """All elements in lexicographic coefficient order."""
    from itertools import product

    for coeffs in product(range(p), repeat=f):
        yield ResidueElement(p, f, coeffs)


_GENERATOR_CACHE = {}


def multiplicative_generator(p, f):
    """Lex-smallest generator of F_{p^f}^* (pinned convention)."""
    key = (p, f)
    got = _GENERATOR_CACHE.get(key)
    if got is not None:
        return got
    q = p ** f
    if q > 10 ** 6:
        raise ValueError("residue field too large for the generator search (q = %d)" % q)
    n = q - 1
    for elt in residue_field_elements(p, f):
        if elt.is_zero():
            continue
        if elt.multiplicative_order() == n:
            _GENERATOR_CACHE[key] = elt
            return elt
    raise AssertionError("cyclic group without generator; unreachable")


# ---------------------------------------------------------------------------
# unramified scalars
# ---------------------------------------------------------------------------


class UnramifiedScalar:
    """Element of Q_{p^f} as p**v times a unit coefficient vector.

    Coefficients share one relative precision M: the element is known
    coefficientwise modulo p**(v + M).  The valuation of an element equals
    the minimum of its coefficient valuations, which is what makes the
    unit normalization (some coefficient a unit) canonical.
    """

    __slots__ = ("p", "f", "v", "coeff", "M", "zprec")

    def __init__(self, p, f, v, coeff, rel_prec, _zero_prec=None):
        check_prime(p)
        self.p = p
        self.f = f
        if _zero_prec is not None:
            self.v = None
            self.coeff = (0,) * f
            self.M = 0
            self.zprec = _zero_prec
            return
        if rel_prec < 1:
            raise ValueError("relative precision must be >= 1")
        if len(coeff) != f:
            raise ValueError("need %d coefficients" % f)
        pm = p ** rel_prec
        coeff = tuple(c % pm for c in coeff)
        if all(c % p == 0 for c in coeff):
            raise ValueError("unit part must be a unit (some coefficient prime to p)")
        self.v = v
        self.coeff = coeff
        self.M = rel_prec
        self.zprec = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero_at(cls, p, f, abs_prec):
        return cls(p, f, 0, (), 0, _zero_prec=abs_prec)

    @classmethod
    def one(cls, p, f, rel_prec):
        return cls(p, f, 0, (1,) + (0,) * (f - 1), rel_prec)

    @classmethod
    def from_padic(cls, x, f):
        if x.v is None:
            return cls.zero_at(x.p, f, x.zprec)
        return cls(x.p, f, x.v, (x.u,) + (0,) * (f - 1), x.M)

    @classmethod
    def from_residue(cls, xi, rel_prec):
        if xi.is_zero():
            raise ValueError("no unit lift of residue zero")
        return cls(xi.p, xi.f, 0, xi.coeffs, rel_prec)

    def to_padic(self):
        if self.v is None:
            return PadicScalar.zero_at(self.p, self.zprec)
        if any(self.coeff[1:]):
            raise ValueError("element does not lie in Q_p")
        return PadicScalar(self.p, self.v, self.coeff[0], self.M)

    # -- queries -----------------------------------------------------------

    @property
    def is_zero_coset(self):
        return self.v is None

    @property
    def abs_prec(self):
        return self.zprec if self.v is None else self.v + self.M

    @property
    def valuation(self):
        return self.v

    def norm_exponent(self):
        return self.zprec if self.v is None else self.v

    def is_zero_to(self, tau):
        if self.v is not None:
            return self.v >= tau
        if self.zprec >= tau:
            return True
        raise PrecisionError(
            "zero to precision %d cannot be tested at threshold %d" % (self.zprec, tau)
        )

    def coefficients(self):
        """Coordinates as PadicScalar values over the power basis."""
        out = []
        for c in self.coeff:
            if c == 0:
                out.append(PadicScalar.zero_at(self.p, self.abs_prec))
            else:
                vc, uc = int_valuation(c, self.p)
                out.append(PadicScalar(self.p, self.v + vc, uc, self.M - vc))
        return tuple(out)

    def residue(self):
        if self.v is None:
            if self.zprec < 1:
                raise PrecisionError("residue of an imprecise zero")
            return ResidueElement(self.p, self.f, (0,) * self.f)
        if self.v < 0:
            raise ValueError("residue of a non-integral scalar")
        if self.v > 0:
            return ResidueElement(self.p, self.f, (0,) * self.f)
        return ResidueElement(self.p, self.f, tuple(c % self.p for c in self.coeff))

    def truncate_abs(self, n):
        if n > self.abs_prec:
            raise PrecisionError("cannot refine precision from %d to %d" % (self.abs_prec, n))
        if self.v is None or self.v >= n:
            return UnramifiedScalar.zero_at(self.p, self.f, n)
        pm = self.p ** (n - self.v)
        return UnramifiedScalar(self.p, self.f, self.v, tuple(c % pm for c in self.coeff), n - self.v)

    def __eq__(self, other):
        if not isinstance(other, UnramifiedScalar):
            return NotImplemented
        return (
            (self.p, self.f, self.v, self.coeff, self.M, self.zprec)
            == (other.p, other.f, other.v, other.coeff, other.M, other.zprec)
        )

    def __hash__(self):
        return hash((self.p, self.f, self.v, self.coeff, self.M, self.zprec))

    def __repr__(self):
        if self.v is None:
            return "UnramifiedScalar(p=%d, f=%d, O(p^%d))" % (self.p, self.f, self.zprec)
        return "UnramifiedScalar(p=%d, f=%d, p^%d * (%s + O(p^%d)))" % (
            self.p,
            self.f,
            self.v,
            list(self.coeff),
            self.M,
        )

    # -- arithmetic ---------------------------------------------------------

    def _lift_modulus(self):
        return modulus_poly(self.p, self.f)

    def _coerce(self, other):
        if isinstance(other, UnramifiedScalar):
            if other.p != self.p:
                raise ValueError("mixed primes")
            if other.f != self.f:
                if other.f == 1:
                    x = other
                    if x.v is None:
                        return UnramifiedScalar.zero_at(self.p, self.f, x.zprec)
                    return UnramifiedScalar(self.p, self.f, x.v, x.coeff + (0,) * (self.f - 1), x.M)
                raise ValueError("mixed extension degrees %d and %d" % (self.f, other.f))
            return other
        if isinstance(other, PadicScalar):
            if other.p != self.p:
                raise ValueError("mixed primes")
            return UnramifiedScalar.from_padic(other, self.f)
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                return UnramifiedScalar.zero_at(self.p, self.f, max(1, self.abs_prec))
            vq = int_valuation(q.numerator, self.p)[0] - int_valuation(q.denominator, self.p)[0]
            rel = max(1, self.abs_prec - vq)
            return UnramifiedScalar.from_padic(PadicScalar.from_fraction(self.p, q, rel), self.f)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p, f = self.p, self.f
        n = min(self.abs_prec, other.abs_prec)
        if self.v is None and other.v is None:
            return UnramifiedScalar.zero_at(p, f, n)
        shift = min([x.v for x in (self, other) if x.v is not None] + [0])
        total = [0] * f
        for x in (self, other):
            if x.v is not None:
                scale = p ** (x.v - shift)
                for i, c in enumerate(x.coeff):
                    total[i] += scale * c
        pn = p ** (n - shift)
        total = [c % pn for c in total]
        if all(c == 0 for c in total):
            return UnramifiedScalar.zero_at(p, f, n)
        vmin = min(int_valuation(c, p)[0] for c in total if c)
        vmin = min(vmin, n - shift)
        v = vmin + shift
        if v >= n:
            return UnramifiedScalar.zero_at(p, f, n)
        pm = p ** (n - v)
        return UnramifiedScalar(p, f, v, tuple((c // p ** vmin) % pm for c in total), n - v)

    __radd__ = __add__

    def __neg__(self):
        if self.v is None:
            return self
        pm = self.p ** self.M
        return UnramifiedScalar(self.p, self.f, self.v, tuple(-c % pm for c in self.coeff), self.M)

    def __sub__(self, other):
        other2 = self._coerce(other)
        if other2 is None:
            return NotImplemented
        return self.__add__(-other2)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def _mul_units(self, a, b, rel):
        p, f = self.p, self.f
        pm = p ** rel
        h = self._lift_modulus()
        prod = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % pm
        for k in range(2 * f - 2, f - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(f):
                    prod[k - f + i] = (prod[k - f + i] - c * h[i]) % pm
        return tuple(prod[:f])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p, f = self.p, self.f
        if self.v is None or other.v is None:
            bound = self.norm_exponent() + other.norm_exponent()
            return UnramifiedScalar.zero_at(p, f, max(1, bound))
        m = min(self.M, other.M)
        return UnramifiedScalar(p, f, self.v + other.v, self._mul_units(self.coeff, other.coeff, m), m)

    __rmul__ = __mul__

    def inverse(self):
        if self.v is None:
            raise ZeroDivisionError("not invertible at this precision")
        p, f, m = self.p, self.f, self.M
        h = list(self._lift_modulus())
        # invert the residue, then Newton-lift the inverse through p^m
        res = [c % p for c in self.coeff]
        inv0 = ResidueElement(p, f, tuple(res)).inverse().coeffs
        cur = list(inv0)
        prec = 1
        while prec < m:
            prec = min(2 * prec, m)
            pm = p ** prec
            prod = self._mul_units(tuple(c % pm for c in self.coeff), tuple(cur + [0] * (f - len(cur))), prec)
            two_minus = [(-c) % pm for c in prod]
            two_minus[0] = (two_minus[0] + 2) % pm
            cur = list(self._mul_units(tuple(cur + [0] * (f - len(cur))), tuple(two_minus), prec))
        return UnramifiedScalar(p, f, -self.v, tuple(cur), m)

    def __truediv__(self, other):
        other2 = self._coerce(other)
        if other2 is None:
            return NotImplemented
        return self * other2.inverse()

    def divexact_rational(self, q):
        q = Fraction(q)
        if q == 0:
            raise ZeroDivisionError
        p = self.p
        vn, un = int_valuation(q.numerator, p)
        vd, ud = int_valuation(q.denominator, p)
        if self.v is None:
            return UnramifiedScalar.zero_at(p, self.f, max(1, self.zprec - vn + vd))
        pm = p ** self.M
        scale = (pow(un, -1, pm) * ud) % pm
        return UnramifiedScalar(
            p, self.f, self.v - vn + vd, tuple((c * scale) % pm for c in self.coeff), self.M
        )

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if self.v is None:
            if e <= 0:
                raise ZeroDivisionError
            return UnramifiedScalar.zero_at(self.p, self.f, self.zprec * e)
        if e == 0:
            return UnramifiedScalar.one(self.p, self.f, self.M)
        base = self if e > 0 else self.inverse()
        k = abs(e)
        result = (1,) + (0,) * (self.f - 1)
        acc = base.coeff
        bits = k
        while bits:
            if bits & 1:
                result = self._mul_units(result, acc, base.M)
            bits >>= 1
            if bits:
                acc = self._mul_units(acc, acc, base.M)
        return UnramifiedScalar(self.p, self.f, base.v * k, result, base.M)

    # -- serialization -------------------------------------------------------

    def to_json(self):
        # f = 1 is Q_p itself; serialize through the flat form so the
        # document does not depend on which wrapper held the value
        if self.f == 1:
            return self.to_padic().to_json()
        if self.v is None:
            return {"p": self.p, "f": self.f, "v": "zero", "unit_digits": [], "rel_prec": self.zprec}
        return {
            "p": self.p,
            "f": self.f,
            "v": self.v,
            "unit_digits": [_digits(c, self.p, self.M) for c in self.coeff],
            "rel_prec": self.M,
        }


class DomainError(ValueError):
    """Input lies outside the convergence region of the requested map."""


# ---------------------------------------------------------------------------
# coefficient-vector helpers shared by the lift and the exp/log kernels
# ---------------------------------------------------------------------------


def _vec_mul_mod(a, b, h, pm):
    f = len(h) - 1
    if f == 1:
        return [a[0] * b[0] % pm]
    prod = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % pm
    for k in range(2 * f - 2, f - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for i in range(f):
                prod[k - f + i] = (prod[k - f + i] - c * h[i]) % pm
    return prod[:f]


def _vec_pow_mod(a, e, h, pm):
    f = len(h) - 1
    result = [1] + [0] * (f - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _vec_mul_mod(result, base, h, pm)
        e >>= 1
        if e:
            base = _vec_mul_mod(base, base, h, pm)
    return result


def teichmuller(xi, prec):
    """Multiplicative lift of a nonzero residue element.

    Returns the unique unit congruent to xi whose (p**f - 1)-th power is
    exactly 1, to relative precision prec.  Computed by iterating the
    q-power map (q = p**f), which fixes the residue and contracts the
    fiber one digit per step.
    """
    if xi.is_zero():
        raise ValueError("zero has no multiplicative lift")
    if prec < 1:
        raise ValueError("precision must be >= 1")
    p, f = xi.p, xi.f
    h = modulus_poly(p, f)
    pm = p ** prec
    q = p ** f
    t = [c % pm for c in xi.coeffs]
    for _ in range(prec + 2):
        nxt = _vec_pow_mod(t, q, h, pm)
        if nxt == t:
            break
        t = nxt
    else:
        raise AssertionError("q-power iteration failed to stabilize; unreachable")
    return UnramifiedScalar(p, f, 0, tuple(t), prec)


def embed_root_of_unity(p, frac, prec):
    """Root of unity exp-analog of a rational angle c/n, gcd(n, p) = 1.

    Picks the unramified coefficient ring Q_{p^f} with f the
    multiplicative order of p mod n, sends the angle 1/n to
    g**((p**f - 1)/n) for the pinned lex-smallest generator g of the
    residue field, and lifts multiplicatively.  Refuses when the residue
    field search would exceed 10**6 elements.
    """
    check_prime(p)
    frac = Fraction(frac) % 1
    if frac == 0:
        return UnramifiedScalar.one(p, 1, prec)
    n = frac.denominator
    c = frac.numerator
    if n % p == 0:
        raise ValueError("order divisible by p has no unramified root of unity")
    f = 1
    acc = p % n
    while acc != 1:
        acc = acc * p % n
        f += 1
    if p ** f > 10 ** 6:
        raise ValueError(
            "embedding needs residue field of size %d^%d; refusing beyond 10^6" % (p, f)
        )
    g = multiplicative_generator(p, f)
    omega = teichmuller(g, prec)
    return omega ** ((p ** f - 1) // n * c)


# ---------------------------------------------------------------------------
# exponential and logarithm
# ---------------------------------------------------------------------------


def _exp_term_count(v, p, n):
    # least J with j*(v*(p-1) - 1) + 1 >= n*(p-1) for every j >= J;
    # the left side is increasing in j because v > 1/(p-1) on the domain
    step = v * (p - 1) - 1
    j = 0
    while j * step + 1 < n * (p - 1):
        j += 1
    return max(j, 1)


def _log_term_count(w, p, n):
    k = 1
    while not (k * w >= n and p ** (k * w - n) >= k):
        k += 1
    return k


def _as_vector_scalar(x):
    if isinstance(x, PadicScalar):
        return UnramifiedScalar.from_padic(x, 1), True
    if isinstance(x, UnramifiedScalar):
        return x, False
    raise TypeError("expected a p-adic scalar")


def _exp_domain_check(x):
    bound = exp_domain_bound(x.p)
    if x.v is None:
        if x.zprec >= bound:
            return
        raise PrecisionError(
            "exp domain needs norm <= 1/p^%d; input only known to O(p^%d)" % (bound, x.zprec)
        )
    if x.v < bound:
        raise DomainError("exp domain requires valuation >= %d, got %d" % (bound, x.v))


def padic_exp(x, prec=None):
    """exp on its convergence disc: valuation >= 1 (>= 2 when p = 2).

    The result is a unit congruent to 1; it is determined exactly to the
    input's absolute precision, so prec beyond that raises PrecisionError.
    """
    xu, scalar_out = _as_vector_scalar(x)
    _exp_domain_check(xu)
    p, f = xu.p, xu.f
    avail = xu.abs_prec
    n = avail if prec is None else prec
    if n < 1:
        raise ValueError("target precision must be >= 1")
    if n > avail:
        raise PrecisionError("exp target precision %d exceeds input precision %d" % (n, avail))
    if xu.v is None or xu.v >= n:
        out = UnramifiedScalar(p, f, 0, (1,) + (0,) * (f - 1), n)
        return out.to_padic() if scalar_out else out
    v = xu.v
    j_count = _exp_term_count(v, p, n)
    guard = (j_count - 1 - digit_sum(j_count - 1, p)) // (p - 1)
    pm = p ** (n + guard)
    h = modulus_poly(p, f)
    rep = [c * p ** v % pm for c in xu.coeff]
    # Horner over j < j_count of ((j_count-1)!/j!) x^j, with the factorial
    # guard p**guard divided back out at the end
    acc = [1] + [0] * (f - 1)
    c = 1
    for j in range(j_count - 1, 0, -1):
        c = c * j % pm
        acc = _vec_mul_mod(acc, rep, h, pm)
        acc[0] = (acc[0] + c) % pm
    w_unit = 1
    pn = p ** n
    for j in range(2, j_count):
        jj = j
        while jj % p == 0:
            jj //= p
        w_unit = w_unit * jj % pn
    w_inv = pow(w_unit, -1, pn)
    pg = p ** guard
    out_coeff = []
    for s in acc:
        if s % pg:
            raise AssertionError("factorial guard mismatch; unreachable")
        out_coeff.append(s // pg * w_inv % pn)
    out = UnramifiedScalar(p, f, 0, tuple(out_coeff), n)
    return out.to_padic() if scalar_out else out


def padic_log(x, prec=None):
    """log on units congruent to 1 mod p (mod 4 when p = 2)."""
    xu, scalar_out = _as_vector_scalar(x)
    p, f = xu.p, xu.f
    bound = exp_domain_bound(p)
    if xu.v is None:
        raise DomainError("log needs a unit congruent to 1, got a zero coset")
    if xu.v != 0:
        raise DomainError("log domain requires a unit, got valuation %d" % xu.v)
    z = xu - 1
    avail = xu.abs_prec
    n = avail if prec is None else prec
    if n < 1:
        raise ValueError("target precision must be >= 1")
    if n > avail:
        raise PrecisionError("log target precision %d exceeds input precision %d" % (n, avail))
    if z.v is None:
        if z.zprec < bound:
            raise PrecisionError(
                "log domain needs norm <= 1/p^%d below 1; input only known to O(p^%d)"
                % (bound, z.zprec)
            )
        out = UnramifiedScalar.zero_at(p, f, min(n, z.zprec))
        return out.to_padic() if scalar_out else out
    if z.v < bound:
        raise DomainError("log domain requires valuation >= %d below 1, got %d" % (bound, z.v))
    w = z.v
    if w >= n:
        out = UnramifiedScalar.zero_at(p, f, n)
        return out.to_padic() if scalar_out else out
    k_count = _log_term_count(w, p, n)
    lcm = 1
    for k in range(1, k_count):
        lcm = lcm * k // math.gcd(lcm, k)
    guard = int_valuation(lcm, p)[0] if lcm % p == 0 else 0
    pm = p ** (n + guard)
    h = modulus_poly(p, f)
    rep = [c * p ** w % pm for c in z.coeff]
    # Horner over k in [1, k_count) of (-1)^(k+1) (lcm/k) z^k
    acc = [0] * f
    for k in range(k_count - 1, 0, -1):
        acc = _vec_mul_mod(acc, rep, h, pm) if any(acc) else acc
        sign = 1 if k % 2 == 1 else -1
        acc[0] = (acc[0] + sign * (lcm // k)) % pm
    acc = _vec_mul_mod(acc, rep, h, pm)
    pn = p ** n
    pg = p ** guard
    w_inv = pow(lcm // pg, -1, pn)
    out_coeff = []
    for s in acc:
        if s % pg:
            raise AssertionError("lcm guard mismatch; unreachable")
        out_coeff.append(s // pg * w_inv % pn)
    if all(c == 0 for c in out_coeff):
        out = UnramifiedScalar.zero_at(p, f, n)
        return out.to_padic() if scalar_out else out
    vmin = min(int_valuation(c, p)[0] for c in out_coeff if c)
    if vmin >= n:
        out = UnramifiedScalar.zero_at(p, f, n)
        return out.to_padic() if scalar_out else out
    pmv = p ** (n - vmin)
    out = UnramifiedScalar(
        p, f, vmin, tuple(c // p ** vmin % pmv for c in out_coeff), n - vmin
    )
    return out.to_padic() if scalar_out else out


# ---------------------------------------------------------------------------
# slow exact-rational references; independent of the kernels above
# ---------------------------------------------------------------------------


def _fraction_vector(xu):
    if xu.v is None:
        return [Fraction(0)] * xu.f
    scale = Fraction(xu.p) ** xu.v
    return [scale * c for c in xu.coeff]


def unramified_from_fractions(p, f, qs, abs_prec):
    """Assemble a scalar from exact power-basis coordinates, truncated."""
    qs = [Fraction(q) for q in qs]
    if all(q == 0 for q in qs):
        return UnramifiedScalar.zero_at(p, f, abs_prec)
    vals = []
    for q in qs:
        if q == 0:
            continue
        vals.append(
            int_valuation(q.numerator, p)[0] - int_valuation(q.denominator, p)[0]
        )
    v = min(vals)
    if v >= abs_prec:
        return UnramifiedScalar.zero_at(p, f, abs_prec)
    m = abs_prec - v
    pm = p ** m
    coeffs = []
    for q in qs:
        q = q / Fraction(p) ** v
        den = q.denominator
        if den % p == 0:
            raise AssertionError("denominator kept a p factor after scaling; unreachable")
        coeffs.append(q.numerator % pm * pow(den, -1, pm) % pm)
    return UnramifiedScalar(p, f, v, tuple(coeffs), m)


def _exp_reference(x, prec=None):
    """Term-by-term exact-Fraction exponential; test oracle for padic_exp."""
    xu, scalar_out = _as_vector_scalar(x)
    _exp_domain_check(xu)
    p, f = xu.p, xu.f
    avail = xu.abs_prec
    n = avail if prec is None else prec
    if n > avail:
        raise PrecisionError("exp target precision %d exceeds input precision %d" % (n, avail))
    if xu.v is None or xu.v >= n:
        out = UnramifiedScalar(p, f, 0, (1,) + (0,) * (f - 1), n)
        return out.to_padic() if scalar_out else out
    j_count = _exp_term_count(xu.v, p, n)
    h = modulus_poly(p, f)
    rep = _fraction_vector(xu)
    total = [Fraction(0)] * f
    total[0] = Fraction(1)
    power = [Fraction(0)] * f
    power[0] = Fraction(1)
    fact = 1
    for j in range(1, j_count):
        power = _frac_vec_mul_mod(power, rep, h)
        fact *= j
        for i in range(f):
            total[i] += power[i] / fact
    out = unramified_from_fractions(p, f, total, n)
    return out.to_padic() if scalar_out else out


def _log_reference(x, prec=None):
    """Term-by-term exact-Fraction logarithm; test oracle for padic_log."""
    xu, scalar_out = _as_vector_scalar(x)
    p, f = xu.p, xu.f
    bound = exp_domain_bound(p)
    if xu.v != 0:
        raise DomainError("log domain requires a unit")
    z = xu - 1
    avail = xu.abs_prec
    n = avail if prec is None else prec
    if z.v is None:
        out = UnramifiedScalar.zero_at(p, f, min(n, z.zprec))
        return out.to_padic() if scalar_out else out
    if z.v < bound:
        raise DomainError("log domain requires valuation >= %d below 1" % bound)
    if z.v >= n:
        out = UnramifiedScalar.zero_at(p, f, n)
        return out.to_padic() if scalar_out else out
    k_count = _log_term_count(z.v, p, n)
    h = modulus_poly(p, f)
    rep = _fraction_vector(z)
    total = [Fraction(0)] * f
    power = [Fraction(0)] * f
    power[0] = Fraction(1)
    for k in range(1, k_count):
        power = _frac_vec_mul_mod(power, rep, h)
        sign = 1 if k % 2 == 1 else -1
        for i in range(f):
            total[i] += Fraction(sign, k) * power[i]
    out = unramified_from_fractions(p, f, total, n)
    return out.to_padic() if scalar_out else out


def _frac_vec_mul_mod(a, b, h):
    f = len(h) - 1
    if f == 1:
        return [a[0] * b[0]]
    prod = [Fraction(0)] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(2 * f - 2, f - 1, -1):
        c = prod[k]
        if c:
            prod[k] = Fraction(0)
            for i in range(f):
                prod[k - f + i] -= c * h[i]
    return prod[:f]
