"""Exact field arithmetic: rationals, odd prime fields, and simple extensions.

Field elements are plain hashable values (Fraction for Q, int residues for
F_p, coefficient tuples for extensions); a Field object supplies the
operations.  Characteristic 2 is rejected everywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


class FieldError(ValueError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface; subclasses fix the element representation."""

    char = 0
    order = None  # None for infinite fields

    def is_zero(self, a):
        return a == self.zero

    def is_one(self, a):
        return a == self.one

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        out = self.one
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def is_finite(self):
        return self.order is not None

    def elements(self):
        raise FieldError(f"field {self.describe()} is not finite")

    def __ne__(self, other):
        return not self.__eq__(other)


class RationalField(Field):
    """The rational numbers; elements are Fraction instances."""

    char = 0
    order = None
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def parse(self, s):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational scalar {s!r}") from exc

    def format(self, a):
        return f"{a.numerator}/{a.denominator}" if a.denominator != 1 else str(a.numerator)

    def sort_key(self, a):
        return (float(a), a.numerator, a.denominator)

    def describe(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


QQ = RationalField()


class PrimeField(Field):
    """F_p for an odd prime p; elements are ints in [0, p)."""

    def __init__(self, p):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p == 2:
            raise FieldError("characteristic 2 is not supported")
        self.p = p
        self.char = p
        self.order = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def parse(self, s):
        try:
            return int(s) % self.p
        except ValueError as exc:
            raise FieldError(f"bad residue scalar {s!r}") from exc

    def format(self, a):
        return str(a % self.p)

    def sort_key(self, a):
        return a % self.p

    def elements(self):
        return range(self.p)

    def describe(self):
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


class ExtensionField(Field):
    """Simple extension base[x]/(minpoly); elements are coefficient tuples.

    minpoly is monic, coefficients low to high over the base field, and is
    validated irreducible at construction (exhaustive search over finite
    bases; rational roots plus degree <= 3 over Q).
    """

    def __init__(self, base, minpoly, gen_name="a"):
        minpoly = tuple(minpoly)
        if len(minpoly) < 3:
            raise FieldError("extension degree must be at least 2")
        if not base.is_one(minpoly[-1]):
            raise FieldError("minimal polynomial must be monic")
        if not poly_is_irreducible(base, minpoly):
            raise FieldError(f"minimal polynomial {minpoly} is reducible over {base.describe()}")
        self.base = base
        self.minpoly = minpoly
        self.degree = len(minpoly) - 1
        self.gen_name = gen_name
        self.char = base.char
        self.order = None if base.order is None else base.order ** self.degree
        self.zero = tuple([base.zero] * self.degree)
        self.one = tuple([base.one] + [base.zero] * (self.degree - 1))
        self.generator = tuple(
            [base.zero, base.one] + [base.zero] * (self.degree - 2))

    def _wrap(self, coeffs):
        coeffs = list(coeffs)[: self.degree]
        coeffs += [self.base.zero] * (self.degree - len(coeffs))
        return tuple(coeffs)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        prod = poly_mul(self.base, a, b)
        _, rem = poly_divmod(self.base, prod, self.minpoly)
        return self._wrap(rem)

    def inv(self, a):
        if all(self.base.is_zero(c) for c in a):
            raise ZeroDivisionError("inverse of 0")
        g, u, _ = poly_ext_gcd(self.base, poly_trim(self.base, a), self.minpoly)
        if len(g) != 1:
            raise FieldError("element not invertible; minimal polynomial reducible?")
        scale = self.base.inv(g[0])
        return self._wrap([self.base.mul(scale, c) for c in u])

    def from_int(self, n):
        return self._wrap([self.base.from_int(n)])

    def embed(self, a):
        """Image of a base-field element."""
        return self._wrap([a])

    def parse(self, s):
        parts = s.split(",")
        if len(parts) > self.degree:
            raise FieldError(f"too many coordinates in {s!r}")
        return self._wrap([self.base.parse(p) for p in parts])

    def format(self, a):
        return ",".join(self.base.format(c) for c in a)

    def sort_key(self, a):
        return tuple(self.base.sort_key(c) for c in a)

    def elements(self):
        if self.order is None:
            raise FieldError(f"field {self.describe()} is not finite")
        base_elems = list(self.base.elements())

        def rec(k):
            if k == 0:
                yield ()
                return
            for rest in rec(k - 1):
                for c in base_elems:
                    yield rest + (c,)

        # low coordinate varies slowest for a stable enumeration order
        for tup in rec(self.degree):
            yield tup

    def describe(self):
        poly = " ".join(self.base.format(c) for c in self.minpoly)
        return f"{self.base.describe()}[{self.gen_name}]/({poly})"

    def __eq__(self, other):
        return (isinstance(other, ExtensionField)
                and other.base == self.base
                and other.minpoly == self.minpoly)

    def __hash__(self):
        return hash(("ext", self.base, self.minpoly))


# ---------------------------------------------------------------------------
# polynomial helpers; coefficient lists are low to high over an explicit field


def poly_trim(F, p):
    p = list(p)
    while p and F.is_zero(p[-1]):
        p.pop()
    return tuple(p)


def poly_add(F, p, q):
    n = max(len(p), len(q))
    p = list(p) + [F.zero] * (n - len(p))
    q = list(q) + [F.zero] * (n - len(q))
    return poly_trim(F, [F.add(a, b) for a, b in zip(p, q)])


def poly_scale(F, p, c):
    return poly_trim(F, [F.mul(c, a) for a in p])


def poly_mul(F, p, q):
    p, q = poly_trim(F, p), poly_trim(F, q)
    if not p or not q:
        return ()
    out = [F.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return poly_trim(F, out)


def poly_divmod(F, p, q):
    p, q = list(poly_trim(F, p)), poly_trim(F, q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [F.zero] * max(0, len(p) - len(q) + 1)
    lead_inv = F.inv(q[-1])
    while len(p) >= len(q) and poly_trim(F, p):
        shift = len(p) - len(q)
        c = F.mul(p[-1], lead_inv)
        quot[shift] = c
        for i, b in enumerate(q):
            p[shift + i] = F.sub(p[shift + i], F.mul(c, b))
        p = list(poly_trim(F, p))
    return poly_trim(F, quot), poly_trim(F, p)


def poly_gcd(F, p, q):
    p, q = poly_trim(F, p), poly_trim(F, q)
    while q:
        _, r = poly_divmod(F, p, q)
        p, q = q, r
    if p:
        p = poly_scale(F, p, F.inv(p[-1]))
    return p


def poly_ext_gcd(F, p, q):
    """Return (g, u, v) with u*p + v*q = g, g monic."""
    r0, r1 = poly_trim(F, p), poly_trim(F, q)
    u0, u1 = (F.one,), ()
    v0, v1 = (), (F.one,)
    while r1:
        quot, rem = poly_divmod(F, r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, poly_add(F, u0, poly_scale(F, poly_mul(F, quot, u1), F.neg(F.one)))
        v0, v1 = v1, poly_add(F, v0, poly_scale(F, poly_mul(F, quot, v1), F.neg(F.one)))
    if r0:
        scale = F.inv(r0[-1])
        r0 = poly_scale(F, r0, scale)
        u0 = poly_scale(F, u0, scale)
        v0 = poly_scale(F, v0, scale)
    return r0, u0, v0


def poly_eval(F, p, x):
    out = F.zero
    for c in reversed(p):
        out = F.add(F.mul(out, x), c)
    return out


def _fraction_sqrt(a):
    if a < 0:
        return None
    rn, rd = isqrt(a.numerator), isqrt(a.denominator)
    if rn * rn == a.numerator and rd * rd == a.denominator:
        return Fraction(rn, rd)
    return None


def field_sqrt(F, a):
    """A square root of a in F, or None if there is none (or undecidable)."""
    if F.is_zero(a):
        return F.zero
    if isinstance(F, RationalField):
        return _fraction_sqrt(a)
    if F.is_finite():
        for x in F.elements():
            if F.mul(x, x) == a:
                return x
        return None
    if isinstance(F, ExtensionField) and F.degree == 2 and isinstance(F.base, RationalField):
        # x = u + v*g with g^2 = s + t*g; solve (u^2 + s v^2) + (2uv + t v^2) g = a
        s = F.base.neg(F.minpoly[0])
        t = F.base.neg(F.minpoly[1])
        a0, a1 = a
        r = _fraction_sqrt(a0)
        if a1 == 0 and r is not None:
            return F.embed(r)
        # v != 0: let w = v^2, then (a1 - w t)^2 + 4 s w^2 = 4 a0 w
        # i.e. (t^2 + 4 s) w^2 - (2 a1 t + 4 a0) w + a1^2 = 0
        A = t * t + 4 * s
        B = -(2 * a1 * t + 4 * a0)
        C = a1 * a1
        cands = []
        if A == 0:
            if B != 0:
                cands.append(-C / B)
        else:
            disc = B * B - 4 * A * C
            rd = _fraction_sqrt(disc)
            if rd is not None:
                cands.extend([(-B + rd) / (2 * A), (-B - rd) / (2 * A)])
        for w in cands:
            v = _fraction_sqrt(w)
            if v is None or v == 0:
                continue
            u = (a1 - w * t) / (2 * v)
            x = (u, v)
            if F.mul(x, x) == a:
                return x
        return None
    return None


def poly_roots(F, p):
    """All roots in F (with multiplicity stripped), in sorted order.

    Complete for finite fields and for Q.  Over extension fields of Q only
    degree <= 2 is decided; higher degrees return the empty list.
    """
    p = poly_trim(F, p)
    if len(p) <= 1:
        return []
    roots = []
    if F.is_finite():
        roots = [x for x in F.elements() if F.is_zero(poly_eval(F, p, x))]
    elif isinstance(F, RationalField):
        # rational root theorem after clearing denominators
        from math import gcd
        denom = 1
        for c in p:
            denom = denom * c.denominator // gcd(denom, c.denominator)
        ints = [int(c * denom) for c in p]
        while ints and ints[0] == 0:
            if Fraction(0) not in roots:
                roots.append(Fraction(0))
            ints = ints[1:]
        if len(ints) > 1:
            a0, an = abs(ints[0]), abs(ints[-1])
            for num in _divisors(a0):
                for den in _divisors(an):
                    for cand in (Fraction(num, den), Fraction(-num, den)):
                        if F.is_zero(poly_eval(F, p, cand)) and cand not in roots:
                            roots.append(cand)
    elif len(p) == 3:
        # quadratic formula, char != 2
        c, b, a = p
        disc = F.sub(F.mul(b, b), F.mul(F.from_int(4), F.mul(a, c)))
        r = field_sqrt(F, disc)
        if r is not None:
            half = F.inv(F.add(a, a))
            roots = [F.mul(F.add(F.neg(b), r), half), F.mul(F.sub(F.neg(b), r), half)]
            roots = sorted(set(roots), key=F.sort_key)
    return sorted(set(roots), key=F.sort_key)


def _divisors(n):
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


_FACTOR_SEARCH_BOUND = 10 ** 6


def poly_factor_supported(F, p):
    """Split p into monic factors using the supported searches.

    Returns (factors, complete).  Factors multiply to p up to the leading
    coefficient; complete is True when the factors are certified irreducible.
    Over finite fields the search is exhaustive; over Q rational roots are
    stripped and the cofactor is certified only up to degree 3; over
    extensions of Q only degree <= 2 is decided.
    """
    p = poly_trim(F, p)
    if len(p) <= 1:
        return [], True
    p = poly_scale(F, p, F.inv(p[-1]))
    factors = []
    for r in poly_roots(F, p):
        lin = (F.neg(r), F.one)
        while True:
            quot, rem = poly_divmod(F, p, lin)
            if rem:
                break
            factors.append(lin)
            p = quot
    if len(p) == 1:
        return factors, True
    if len(p) == 2:
        factors.append(p)
        return factors, True
    if F.is_finite():
        done, complete = _finite_factor(F, p)
        return factors + done, complete
    if isinstance(F, RationalField):
        if len(p) <= 4:  # rootless degree 2 or 3 is irreducible
            factors.append(p)
            return factors, True
        factors.append(p)
        return factors, False
    # extension of Q: rootless quadratic is irreducible, beyond that undecided
    if len(p) == 3:
        factors.append(p)
        return factors, True
    factors.append(p)
    return factors, False


def _finite_factor(F, p):
    """Exhaustive trial division over a finite field."""
    deg = len(p) - 1
    half = deg // 2
    if F.order ** half > _FACTOR_SEARCH_BOUND:
        return [p], False
    factors = []
    d = 1
    while d <= (len(p) - 1) // 2:
        found = False
        for tail in _monic_tails(F, d):
            cand = tail + (F.one,)
            quot, rem = poly_divmod(F, p, cand)
            if not rem:
                factors.append(cand)
                p = quot
                found = True
                break
        if not found:
            d += 1
    if len(p) > 1:
        factors.append(p)
    return factors, True


def _monic_tails(F, d):
    elems = list(F.elements())

    def rec(k):
        if k == 0:
            yield ()
            return
        for head in rec(k - 1):
            for c in elems:
                yield head + (c,)

    return rec(d)


def poly_is_irreducible(F, p):
    p = poly_trim(F, p)
    if len(p) <= 1:
        return False
    if len(p) == 2:
        return True
    factors, complete = poly_factor_supported(F, p)
    if not complete:
        raise FieldError(
            f"cannot certify irreducibility of degree {len(p) - 1} over {F.describe()}")
    return len(factors) == 1


def field_from_descriptor(desc):
    """Build a field from 'Q', ('Fp', p) or ('ext', base_desc, minpoly_strs, name)."""
    if desc == "Q":
        return QQ
    if isinstance(desc, tuple) and desc[0] == "Fp":
        return PrimeField(desc[1])
    if isinstance(desc, tuple) and desc[0] == "ext":
        base = field_from_descriptor(desc[1])
        minpoly = tuple(base.parse(s) for s in desc[2])
        return ExtensionField(base, minpoly, desc[3])
    raise FieldError(f"unknown field descriptor {desc!r}")
