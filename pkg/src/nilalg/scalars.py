"""Exact scalars.

Every coefficient handled by the package lives in a small tower of exact
fields::

    Fraction  <  GaussRational  <  RationalFunction  <  RadicalScalar

``Fraction`` (from the standard library) plays the role of the rationals.
``GaussRational`` adjoins ``i``.  ``RationalFunction`` is a quotient of two
multivariate polynomials over the Gaussian rationals, kept gcd-reduced with a
denominator whose leading coefficient (graded lexicographic order, parameters
sorted by name) is 1.  ``RadicalScalar`` adjoins a single square root ``r`` of
a fixed radicand, stored as ``base + radical_part * r``.

Mixed arithmetic promotes to the larger type.  ``lower`` demotes a value to the
narrowest type that still represents it, which keeps numeric work on plain
fractions.
"""

from __future__ import annotations

from fractions import Fraction

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from .errors import MalformedScalarError, PoleError

__all__ = [
    "GaussRational",
    "Polynomial",
    "RationalFunction",
    "RadicalScalar",
    "I",
    "var",
    "sqrt_of",
    "lower",
    "normalize",
    "substitute",
    "limit_at_zero",
    "free_params",
    "format_scalar",
    "is_scalar",
]


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


class GaussRational:
    """``re + im*i`` with ``re`` and ``im`` exact fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        try:
            self.re = re if type(re) is Fraction else Fraction(re)
            self.im = im if type(im) is Fraction else Fraction(im)
        except ZeroDivisionError as exc:
            raise MalformedScalarError("zero denominator in rational literal") from exc

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def norm(self):
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return GaussRational(self.re, -self.im)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = GaussRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussRational({self.re}, {self.im})"

    def __str__(self):
        return _fmt_gauss(self)


I = GaussRational(0, 1)


def _fmt_gauss(c):
    re, im = c.re, c.im
    if im == 0:
        return str(re)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = f"{im}*i"
    if re == 0:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"({re}{sign}{imag})"


# ---------------------------------------------------------------------------
# Polynomials (thin wrapper over sympy's sparse polynomial rings)
# ---------------------------------------------------------------------------

_RINGS = {}


def _ring(names, domain):
    key = (names, domain)
    R = _RINGS.get(key)
    if R is None:
        R = PolyRing(names, domain, grlex)
        R._nilalg_names = names
        _RINGS[key] = R
    return R


def _names(R):
    names = getattr(R, "_nilalg_names", None)
    if names is None:
        names = tuple(g.name for g in R.symbols)
        R._nilalg_names = names
    return names


def _to_domain(c, domain):
    if isinstance(c, GaussRational):
        if domain is QQ:
            if c.im:
                raise ValueError("imaginary coefficient in a real ring")
            return QQ(c.re.numerator, c.re.denominator)
        return QQ_I(
            QQ(c.re.numerator, c.re.denominator), QQ(c.im.numerator, c.im.denominator)
        )
    c = Fraction(c)
    q = QQ(c.numerator, c.denominator)
    if domain is QQ:
        return q
    return QQ_I(q, QQ(0))


def _q_to_fraction(q):
    return Fraction(int(q.numerator), int(q.denominator))


def _from_domain(c, domain):
    if domain is QQ:
        return _q_to_fraction(c)
    re, im = _q_to_fraction(c.x), _q_to_fraction(c.y)
    if im == 0:
        return re
    return GaussRational(re, im)


def _const_poly(c):
    if isinstance(c, GaussRational) and c.im:
        R = _ring((), QQ_I)
    else:
        R = _ring((), QQ)
    return R.ground_new(_to_domain(c, R.domain))


def _convert(p, names, domain):
    R = p.ring
    if _names(R) == names and R.domain is domain:
        return p
    return p.set_ring(_ring(names, domain))


def _unify(p, q):
    Rp, Rq = p.ring, q.ring
    if Rp is Rq:
        return p, q
    names = tuple(sorted(set(_names(Rp)) | set(_names(Rq))))
    domain = QQ_I if (Rp.domain is QQ_I or Rq.domain is QQ_I) else QQ
    return _convert(p, names, domain), _convert(q, names, domain)


def _common(*ps):
    R = ps[0].ring
    if all(p.ring is R for p in ps):
        return ps
    names = tuple(sorted(set().union(*(_names(p.ring) for p in ps))))
    domain = QQ_I if any(p.ring.domain is QQ_I for p in ps) else QQ
    return tuple(_convert(p, names, domain) for p in ps)


def _demote(p):
    """Move a QQ(i) polynomial with real coefficients back to QQ."""
    R = p.ring
    if R.domain is not QQ_I:
        return p
    for c in p.values():
        if c.y:
            return p
    Rq = _ring(_names(R), QQ)
    return Rq.from_dict({m: c.x for m, c in p.items()})


def _demote2(num, den):
    if num.ring.domain is not QQ_I:
        return num, den
    for p in (num, den):
        for c in p.values():
            if c.y:
                return num, den
    return _demote(num), _demote(den)


def _real_domain_for(values):
    for v in values:
        if isinstance(v, GaussRational) and v.im:
            return QQ_I
    return QQ


class Polynomial:
    """Multivariate polynomial with Gaussian-rational coefficients.

    Parameters are kept sorted by name; terms iterate in descending graded
    lexicographic order.
    """

    __slots__ = ("_p",)

    def __init__(self, p):
        self._p = p

    @classmethod
    def constant(cls, c):
        return cls(_const_poly(c))

    @classmethod
    def variable(cls, name):
        R = _ring((name,), QQ)
        return cls(R.gens[0])

    @classmethod
    def from_terms(cls, params, terms):
        params = tuple(params)
        order = sorted(range(len(params)), key=lambda k: params[k])
        names = tuple(params[k] for k in order)
        domain = _real_domain_for(terms.values())
        R = _ring(names, domain)
        data = {}
        for exps, c in terms.items():
            if len(exps) != len(params):
                raise MalformedScalarError("exponent tuple does not match parameter arity")
            if c != 0:
                data[tuple(exps[k] for k in order)] = _to_domain(c, domain)
        return cls(R.from_dict(data) if data else R.zero)

    @property
    def params(self):
        return _names(self._p.ring)

    def terms(self):
        """Mapping exponent tuple -> coefficient in descending term order."""
        dom = self._p.ring.domain
        return {m: _from_domain(c, dom) for m, c in self._p.terms()}

    def is_zero(self):
        return not self._p

    def is_constant(self):
        return self._p.is_ground

    def leading_coefficient(self):
        return _from_domain(self._p.LC, self._p.ring.domain)

    def degree(self, name):
        names = self.params
        if name not in names:
            return 0 if self._p else -1
        return self._p.degree(self._p.ring.gens[names.index(name)])

    def __add__(self, other):
        p, q = _unify(self._p, _poly_of(other))
        return Polynomial(_demote(p + q))

    __radd__ = __add__

    def __sub__(self, other):
        p, q = _unify(self._p, _poly_of(other))
        return Polynomial(_demote(p - q))

    def __rsub__(self, other):
        p, q = _unify(self._p, _poly_of(other))
        return Polynomial(_demote(q - p))

    def __mul__(self, other):
        p, q = _unify(self._p, _poly_of(other))
        return Polynomial(_demote(p * q))

    __rmul__ = __mul__

    def __neg__(self):
        return Polynomial(-self._p)

    def __pow__(self, k):
        return Polynomial(self._p**k)

    def __eq__(self, other):
        try:
            q = _poly_of(other)
        except TypeError:
            return NotImplemented
        p, q = _unify(self._p, q)
        return p == q

    def __hash__(self):
        if self._p.is_ground:
            return hash(_from_domain(self._p.LC, self._p.ring.domain))
        return hash(str(self))

    def gcd(self, other):
        p, q = _unify(self._p, _poly_of(other))
        return Polynomial(_demote(p.gcd(q)))

    def __str__(self):
        return _fmt_poly(self._p)

    def __repr__(self):
        return f"Polynomial({self})"


def _poly_of(x):
    if isinstance(x, Polynomial):
        return x._p
    if isinstance(x, (int, Fraction, GaussRational)):
        return _const_poly(x)
    raise TypeError(f"cannot treat {type(x).__name__} as a polynomial")


def _fmt_monomial(names, exps):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _fmt_poly(p):
    if not p:
        return "0"
    R = p.ring
    names = _names(R)
    out = []
    for m, c in p.terms():
        c = _from_domain(c, R.domain)
        mono = _fmt_monomial(names, m)
        if not mono:
            s = _fmt_gauss(GaussRational(c)) if not isinstance(c, GaussRational) else _fmt_gauss(c)
        elif c == 1:
            s = mono
        elif c == -1:
            s = "-" + mono
        else:
            cs = _fmt_gauss(c) if isinstance(c, GaussRational) else str(c)
            s = f"{cs}*{mono}"
        out.append(s)
    text = out[0]
    for s in out[1:]:
        text += " - " + s[1:] if s.startswith("-") else " + " + s
    return text


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


def _monomial_gcd(p, mono):
    g = list(mono)
    for m in p.itermonoms():
        for k, e in enumerate(m):
            if e < g[k]:
                g[k] = e
        if not any(g):
            break
    return tuple(g)


_POINTS = (2, 3, 5, 7, 11, 13, -2, -3, 17, 19)


def _coprime(num, den):
    """True when ``num`` and ``den`` provably share no nonconstant factor.

    For each variable the others are set to integers that keep ``num``'s
    degree in it; a constant univariate gcd then bounds the true gcd's
    degree in that variable by zero.  False means "unknown".
    """
    R = num.ring
    gens = R.gens
    for k, x in enumerate(gens):
        dn, dd = num.degree(x), den.degree(x)
        if dn == 0 or dd == 0:
            continue
        others = [g for j, g in enumerate(gens) if j != k]
        for shift in range(3):
            point = [(g, R.domain(_POINTS[(j + shift) % len(_POINTS)])) for j, g in enumerate(others)]
            n1 = num.evaluate(point) if point else num
            d1 = den.evaluate(point) if point else den
            if n1.degree() == dn:
                break
        else:
            return False
        if n1.gcd(d1).degree() > 0:
            return False
    return True


def _conjugate(p):
    R = p.ring
    return R.from_dict({m: QQ_I(c.x, -c.y) for m, c in p.items()})


def _split_candidates(q, num, den):
    """``q`` and the Q(i)-factors ``gcd(q, f)`` of ``q`` met in ``num``, ``den``."""
    out = [q]
    for f in (num, den):
        r = f % q
        if not r:
            continue
        p = q.gcd(r)
        if not p.is_ground:
            out += [p, _conjugate(p)]
    return out


def _cofactors(num, den):
    """``(gcd, num/gcd, den/gcd)``, the gcd only up to a unit.

    Over Q(i) sympy falls back to dense subresultants whose coefficients
    explode.  The gcd divides H = gcd(num*conj(num), den*conj(den)), a gcd
    of rational polynomials.  Each rational irreducible factor q of H is
    either irreducible over Q(i) or splits as p*conj(p) with p = gcd(q, num),
    a gcd with the small q; those candidates are divided out exactly.
    """
    R = num.ring
    if R.domain is not QQ_I or not R.gens:
        return num.cofactors(den)
    H = _demote(num * _conjugate(num)).gcd(_demote(den * _conjugate(den)))
    g = R.one
    if H.is_ground:
        return g, num, den
    for q, _ in H.factor_list()[1]:
        q = _convert(q, _names(R), QQ_I)
        progress = True
        while progress:
            progress = False
            for c in _split_candidates(q, num, den):
                qn, rn = divmod(num, c)
                if rn:
                    continue
                qd, rd = divmod(den, c)
                if rd:
                    continue
                num, den, g = qn, qd, g * c
                progress = True
                break
    return g, num, den


def _gcd3(p, q):
    """``(g, p/g, q/g)`` with cheap exits for constants and coprime pairs."""
    R = p.ring
    if p.is_ground or q.is_ground or _coprime(p, q):
        return R.one, p, q
    return _cofactors(p, q)


def _monic(num, den):
    """Scale so the denominator's leading coefficient is 1 (no gcd step)."""
    lc = den.LC
    if lc != den.ring.domain.one:
        num = num.quo_ground(lc)
        den = den.quo_ground(lc)
    return _demote2(num, den)


def _canonical(num, den):
    """gcd-reduce and make the denominator's leading coefficient 1."""
    if not den:
        raise MalformedScalarError("zero denominator")
    num, den = _unify(num, den)
    R = num.ring
    if not num:
        return R.zero, R.one
    if den.is_ground:
        lc = den.LC
        if lc != R.domain.one:
            num = num.quo_ground(lc)
        return _demote2(num, R.one)
    if len(den) == 1:
        (mono, lc), = den.items()
        g = _monomial_gcd(num, mono)
        if any(g):
            num = R.from_dict({tuple(a - b for a, b in zip(m, g)): c for m, c in num.items()})
            den = R.from_dict({tuple(a - b for a, b in zip(mono, g)): lc})
    elif not _coprime(num, den):
        _, num, den = _cofactors(num, den)
    lc = den.LC
    if lc != R.domain.one:
        num = num.quo_ground(lc)
        den = den.quo_ground(lc)
    return _demote2(num, den)


class RationalFunction:
    """Canonical quotient ``num/den`` of polynomials in named parameters."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _poly_of(num) if not _is_raw(num) else num
        if den is None:
            self.num = _demote(num)
            self.den = self.num.ring.one
            return
        den = _poly_of(den) if not _is_raw(den) else den
        self.num, self.den = _canonical(num, den)

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def variable(cls, name):
        R = _ring((name,), QQ)
        return cls._raw(R.gens[0], R.one)

    @property
    def numerator(self):
        return Polynomial(self.num)

    @property
    def denominator(self):
        return Polynomial(self.den)

    @property
    def params(self):
        return _names(self.num.ring)

    def free_params(self):
        R = self.num.ring
        used = set()
        for p in (self.num, self.den):
            for m in p.itermonoms():
                for name, e in zip(_names(R), m):
                    if e:
                        used.add(name)
        return used

    def is_constant(self):
        return self.num.is_ground and self.den.is_ground

    def constant_value(self):
        dom = self.num.ring.domain
        n = _from_domain(self.num.LC, dom) if self.num else Fraction(0)
        d = _from_domain(self.den.LC, dom)
        v = n / d
        return lower(v)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, GaussRational)):
            p = _const_poly(other)
            return RationalFunction._raw(p, p.ring.one)
        if isinstance(other, Polynomial):
            return RationalFunction._raw(other._p, other._p.ring.one)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, da, b, db = _common(self.num, self.den, o.num, o.den)
        if da == db:
            if da.is_ground:
                return RationalFunction._raw(*_demote2(a + b, da))
            return RationalFunction._raw(*_canonical(a + b, da))
        if da.is_ground or db.is_ground:
            return RationalFunction._raw(*_monic(a * db + b * da, da * db))
        # only the gcd of the denominators can survive in the sum
        g, ra, rb = _gcd3(da, db)
        n = a * rb + b * ra
        if not n:
            return RationalFunction._raw(n.ring.zero, n.ring.one)
        if g.is_ground:
            return RationalFunction._raw(*_monic(n, da * rb))
        h, n, g = _gcd3(n, g)
        return RationalFunction._raw(*_monic(n, ra * rb * g))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, da, b, db = _common(self.num, self.den, o.num, o.den)
        if not a or not b:
            return RationalFunction._raw(a.ring.zero, a.ring.one)
        if da.is_ground and db.is_ground:
            return RationalFunction._raw(*_demote2(a * b, da * db))
        _, a, db = _gcd3(a, db)
        _, b, da = _gcd3(b, da)
        return RationalFunction._raw(*_monic(a * b, da * db))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("division by zero")
        num, den = self.den, self.num
        lc = den.LC
        R = den.ring
        if lc != R.domain.one:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        return RationalFunction._raw(*_demote2(num, den))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction._raw(self.num**k, self.den**k)

    def __eq__(self, other):
        if type(other) is int and other == 0:
            return not self.num
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, da, b, db = _common(self.num, self.den, o.num, o.den)
        return a == b and da == db

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash(str(self))

    def __bool__(self):
        return bool(self.num)

    def __str__(self):
        n = _fmt_poly(self.num)
        if self.den.is_ground and self.den.LC == self.den.ring.domain.one:
            return n
        d = _fmt_poly(self.den)
        if len(self.num.terms()) > 1:
            n = f"({n})"
        if len(self.den.terms()) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RationalFunction({self})"


def _is_raw(x):
    return hasattr(x, "ring") and hasattr(x, "itermonoms")


def var(name):
    """The parameter ``name`` as a rational function."""
    if name == "i":
        raise MalformedScalarError("'i' is reserved for the imaginary unit")
    return RationalFunction.variable(name)


# ---------------------------------------------------------------------------
# Quadratic radical extension
# ---------------------------------------------------------------------------


class RadicalScalar:
    """``base + radical_part * r`` where ``r**2 == radicand``."""

    __slots__ = ("base", "radical_part", "radicand")

    def __init__(self, base, radical_part, radicand):
        self.base = lower(base)
        self.radical_part = lower(radical_part)
        self.radicand = lower(radicand)

    def _coerce(self, other):
        if isinstance(other, RadicalScalar):
            if other.radicand is not self.radicand and other.radicand != self.radicand:
                raise ValueError("only one radical per arithmetic context")
            return other
        if isinstance(other, (int, Fraction, GaussRational, RationalFunction, Polynomial)):
            if isinstance(other, Polynomial):
                other = RationalFunction(other)
            return RadicalScalar(other, 0, self.radicand)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RadicalScalar(self.base + o.base, self.radical_part + o.radical_part, self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return RadicalScalar(-self.base, -self.radical_part, self.radicand)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.base, self.radical_part, o.base, o.radical_part
        return RadicalScalar(a * c + b * d * self.radicand, a * d + b * c, self.radicand)

    __rmul__ = __mul__

    def norm(self):
        return self.base * self.base - self.radical_part * self.radical_part * self.radicand

    def conjugate(self):
        return RadicalScalar(self.base, -self.radical_part, self.radicand)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in the radical extension")
        return RadicalScalar(self.base / n, -self.radical_part / n, self.radicand)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = RadicalScalar(1, 0, self.radicand)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if type(other) is int and other == 0:
            return self.base == 0 and self.radical_part == 0
        try:
            o = self._coerce(other)
        except ValueError:
            return False
        if o is None:
            return NotImplemented
        return self.base == o.base and self.radical_part == o.radical_part

    def __hash__(self):
        if self.radical_part == 0:
            return hash(self.base)
        return hash((self.base, self.radical_part))

    def __bool__(self):
        return not (self.base == 0 and self.radical_part == 0)

    def __str__(self):
        r = f"sqrt({format_scalar(self.radicand)})"
        if self.radical_part == 0:
            return format_scalar(self.base)
        rp = format_scalar(self.radical_part)
        rad = r if self.radical_part == 1 else f"({rp})*{r}"
        if self.base == 0:
            return rad
        return f"{format_scalar(self.base)} + {rad}"

    def __repr__(self):
        return f"RadicalScalar({self})"


def sqrt_of(radicand):
    """The adjoined square root ``r`` with ``r**2 == radicand``."""
    return RadicalScalar(0, 1, radicand)


# ---------------------------------------------------------------------------
# Generic operations on any scalar
# ---------------------------------------------------------------------------


def is_scalar(x):
    return isinstance(x, (int, Fraction, GaussRational, RationalFunction, RadicalScalar))


def lower(x):
    """Narrowest representation of ``x`` in the tower."""
    if isinstance(x, RadicalScalar):
        if x.radical_part == 0:
            return lower(x.base)
        return x
    if isinstance(x, RationalFunction):
        if x.is_constant():
            return x.constant_value()
        return x
    if isinstance(x, Polynomial):
        return lower(RationalFunction(x))
    if isinstance(x, GaussRational):
        if x.im == 0:
            return x.re
        return x
    if isinstance(x, int):
        return Fraction(x)
    return x


def to_sympy_field(x, K):
    """``x`` as an element of the sympy polynomial or fraction field domain ``K``.

    Over a polynomial domain ``x`` must have a constant denominator.
    """
    if hasattr(K, "field"):
        F, R = K.field, K.field.ring
    else:
        F, R = None, K.ring
    x = lower(x)
    if isinstance(x, RationalFunction):
        names = tuple(g.name for g in R.symbols)
        num = _convert(x.num, names, R.domain).set_ring(R)
        den = _convert(x.den, names, R.domain).set_ring(R)
        if F is None:
            return num.quo_ground(den.LC)
        return F.new(num, den)
    c = _to_domain(x, R.domain)
    return R.ground_new(c) if F is None else F.ground_new(c)


def from_sympy_field(e, names, ground):
    R = _ring(names, ground)
    # sympy treats equal rings as interchangeable, so rebuild in our own ring object
    num, den = R.from_dict(dict(e.numer)), R.from_dict(dict(e.denom))
    if not num:
        return Fraction(0)
    if num.is_ground and den.is_ground:
        return _from_domain(num.LC / den.LC, ground)
    return lower(RationalFunction(num, den))


def normalize(s):
    """Canonical form of ``s``; idempotent."""
    if isinstance(s, RationalFunction):
        return lower(RationalFunction._raw(*_canonical(s.num, s.den)))
    if isinstance(s, RadicalScalar):
        return lower(RadicalScalar(normalize(s.base), normalize(s.radical_part), normalize(s.radicand)))
    if isinstance(s, Polynomial):
        return lower(s)
    if isinstance(s, GaussRational):
        return lower(GaussRational(s.re, s.im))
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    raise MalformedScalarError(f"not a scalar: {s!r}")


def free_params(s):
    if isinstance(s, RationalFunction):
        return s.free_params()
    if isinstance(s, RadicalScalar):
        return free_params(s.base) | free_params(s.radical_part) | free_params(s.radicand)
    if isinstance(s, Polynomial):
        return RationalFunction(s).free_params()
    return set()


def _eval_poly(p, bindings):
    """Evaluate a raw polynomial with some parameters replaced by scalars."""
    R = p.ring
    names = _names(R)
    hit = [k for k, n in enumerate(names) if n in bindings]
    if not hit:
        return RationalFunction._raw(p, R.one)
    values = [bindings[names[k]] for k in hit]
    if all(isinstance(v, (int, Fraction, GaussRational)) for v in values):
        domain = QQ_I if (R.domain is QQ_I or _real_domain_for(values) is QQ_I) else QQ
        q = _convert(p, names, domain)
        q = q.subs([(q.ring.gens[k], _to_domain(v, domain)) for k, v in zip(hit, values)])
        return RationalFunction._raw(*_demote2(q, q.ring.one))
    powers = {}
    total = 0
    for m, c in p.terms():
        term = _from_domain(c, R.domain)
        rest = {}
        for k, e in enumerate(m):
            if not e:
                continue
            name = names[k]
            if name in bindings:
                key = (name, e)
                if key not in powers:
                    powers[key] = bindings[name] ** e
                term = term * powers[key]
            else:
                rest[k] = e
        if rest:
            mono = tuple(rest.get(k, 0) for k in range(len(names)))
            term = term * RationalFunction._raw(R.from_dict({mono: R.domain.one}), R.one)
        total = total + term
    return total


def substitute(s, bindings):
    """Replace parameters by scalars and renormalize.

    Raises ``PoleError`` if a denominator becomes zero.
    """
    if not bindings:
        return s
    if isinstance(s, (int, Fraction, GaussRational)):
        return lower(s)
    if isinstance(s, Polynomial):
        s = RationalFunction(s)
    if isinstance(s, RationalFunction):
        d = _eval_poly(s.den, bindings)
        if d == 0:
            bad = sorted(set(bindings) & s.free_params())
            raise PoleError(
                f"substitution {_fmt_bindings(bindings)} makes a denominator vanish",
                bad[0] if bad else None,
            )
        n = _eval_poly(s.num, bindings)
        return lower(n / d)
    if isinstance(s, RadicalScalar):
        radicand = substitute(s.radicand, bindings)
        base = substitute(s.base, bindings)
        part = substitute(s.radical_part, bindings)
        return lower(RadicalScalar(base, part, radicand))
    raise MalformedScalarError(f"not a scalar: {s!r}")


def _fmt_bindings(bindings):
    return ", ".join(f"{k}={format_scalar(v)}" for k, v in bindings.items())


def limit_at_zero(s, param):
    """Value of ``s`` at ``param = 0``, or ``PoleError`` if that is a pole."""
    if isinstance(s, (int, Fraction, GaussRational)):
        return lower(s)
    if isinstance(s, Polynomial):
        s = RationalFunction(s)
    if isinstance(s, RationalFunction):
        names = s.params
        if param not in names:
            return lower(s)
        R = s.num.ring
        g = R.gens[names.index(param)]
        d0 = s.den.subs(g, R.domain.zero)
        if not d0:
            raise PoleError(f"pole at {param}=0", param)
        n0 = s.num.subs(g, R.domain.zero)
        return lower(RationalFunction._raw(*_canonical(n0, d0)))
    if isinstance(s, RadicalScalar):
        if param in free_params(s.radicand):
            raise ValueError("limit in a parameter that the radicand depends on")
        return lower(
            RadicalScalar(limit_at_zero(s.base, param), limit_at_zero(s.radical_part, param), s.radicand)
        )
    raise MalformedScalarError(f"not a scalar: {s!r}")


def format_scalar(s):
    """Text form readable by the scalar literal grammar."""
    if isinstance(s, bool):
        raise MalformedScalarError("bool is not a scalar")
    if isinstance(s, (int, Fraction)):
        return str(Fraction(s))
    if isinstance(s, (GaussRational, Polynomial, RationalFunction, RadicalScalar)):
        return str(s)
    raise MalformedScalarError(f"not a scalar: {s!r}")
