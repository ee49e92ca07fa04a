"""Exact coefficient arithmetic.

The ground ring is the integer polynomial ring in two deformation
parameters a0, a1 (class :class:`BivariatePoly`).  Homology is computed
after specializing to one of several coefficient rings:

* ``INT``     -- integers, a0 = a1 = 0
* ``RAT``     -- rationals, a0 = a1 = 0
* ``GF(p)``   -- the prime field, a0 = a1 = 0
* ``QH``      -- Q[h], a0 = 0 and a1 = h
* ``alpha_eval(q0, q1)`` -- rationals with a0, a1 evaluated at q0, q1
* ``GENERIC`` -- no specialization (matrix arithmetic only; no Smith
  normal form since the bivariate ring is not Euclidean)

All arithmetic is exact: arbitrary-precision integers, reduced
fractions, canonical residues.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedRingError


class _QDegAny:
    """Quantum degree of the zero element: homogeneous of every degree."""

    __slots__ = ()

    def __repr__(self):
        return "QDEG_ANY"


QDEG_ANY = _QDegAny()


# ---------------------------------------------------------------------------
# The bivariate ground ring Z[a0, a1]


class BivariatePoly:
    """Sparse integer polynomial in a0, a1, keyed by exponent pairs.

    Instances are immutable by convention; no stored coefficient is zero.

    >>> p = A0 + A1
    >>> print(p * (A0 - A1))
    a0^2 - a1^2
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (i, j), c in terms.items():
                c = int(c)
                if c:
                    clean[(int(i), int(j))] = c
        self.terms = clean

    @classmethod
    def from_int(cls, n):
        return cls({(0, 0): n})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = BivariatePoly.from_int(other)
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = BivariatePoly.from_int(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        res = BivariatePoly()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = BivariatePoly()
        res.terms = {k: -c for k, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, int):
            other = BivariatePoly.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return BivariatePoly.from_int(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            other = BivariatePoly.from_int(other)
        if not isinstance(other, BivariatePoly):
            return NotImplemented
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        res = BivariatePoly()
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        res = BivariatePoly.from_int(1)
        for _ in range(n):
            res = res * self
        return res

    def qdeg(self):
        """Quantum degree: 2*(i+j) when homogeneous, None when mixed,
        QDEG_ANY for the zero polynomial."""
        if not self.terms:
            return QDEG_ANY
        degs = {i + j for (i, j) in self.terms}
        if len(degs) > 1:
            return None
        return 2 * degs.pop()

    def evaluate(self, q0, q1):
        """Substitute rational values for a0, a1."""
        total = Fraction(0)
        for (i, j), c in self.terms.items():
            total += c * q0**i * q1**j
        return total

    def eval_h(self):
        """Substitute a0 -> 0, a1 -> h; returns an :class:`HPoly`."""
        coeffs = {}
        for (i, j), c in self.terms.items():
            if i == 0:
                coeffs[j] = coeffs.get(j, 0) + c
        if not coeffs:
            return HPoly(())
        out = [Fraction(0)] * (max(coeffs) + 1)
        for j, c in coeffs.items():
            out[j] = Fraction(c)
        return HPoly(out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items()):
            mono = []
            if i:
                mono.append("a0" if i == 1 else f"a0^{i}")
            if j:
                mono.append("a1" if j == 1 else f"a1^{j}")
            body = "*".join(mono)
            if not body:
                term = str(abs(c))
            elif abs(c) == 1:
                term = body
            else:
                term = f"{abs(c)}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        first_sign, first_term = parts[0]
        text = ("-" if first_sign == "-" else "") + first_term
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text

    def __repr__(self):
        return f"BivariatePoly({self})"


A0 = BivariatePoly({(1, 0): 1})
A1 = BivariatePoly({(0, 1): 1})
E1 = A0 + A1
E2 = A0 * A1
DISCRIMINANT = (A0 - A1) ** 2


# ---------------------------------------------------------------------------
# Dense univariate polynomials over Q, the ring Q[h]


class HPoly:
    """Dense univariate polynomial over Q in the variable h."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, (int, Fraction)):
            coeffs = (Fraction(coeffs),)
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def gen(cls):
        return cls((0, 1))

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HPoly(other)
        if not isinstance(other, HPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HPoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for k, c in enumerate(other.coeffs):
            a[k] += c
        return HPoly(a)

    __radd__ = __add__

    def __neg__(self):
        return HPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HPoly(other)
        return self + (-other)

    def __rsub__(self, other):
        return HPoly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HPoly(other)
        if not isinstance(other, HPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return HPoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return HPoly(out)

    __rmul__ = __mul__

    def divmod(self, other):
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 1)
        r = list(self.coeffs)
        d = other.degree()
        lead = other.leading()
        while len(r) - 1 >= d and any(c != 0 for c in r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < d:
                break
            f = r[-1] / lead
            k = len(r) - 1 - d
            q[k] = f
            for i, c in enumerate(other.coeffs):
                r[k + i] -= f * c
        return HPoly(q), HPoly(r)

    def monic(self):
        if not self.coeffs:
            return self
        lead = self.leading()
        return HPoly([c / lead for c in self.coeffs])

    def qdeg(self):
        """h carries quantum degree 2; defined for monomials only."""
        if not self.coeffs:
            return QDEG_ANY
        nz = [k for k, c in enumerate(self.coeffs) if c != 0]
        if len(nz) > 1:
            return None
        return 2 * nz[0]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree(), -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                hpow = "h" if k == 1 else f"h^{k}"
                body = hpow if abs(c) == 1 else f"{abs(c)}*{hpow}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"HPoly({self})"


# ---------------------------------------------------------------------------
# Coefficient rings


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class CoefficientRing:
    """Abstract ring protocol.

    Concrete rings expose ``kind`` plus exact arithmetic on raw values
    (ints, Fractions, HPoly, or BivariatePoly depending on the ring).
    """

    kind = "?"
    is_euclidean = False
    is_field = False
    qdeg_graded = False  # nonzero scalars may carry nonzero quantum degree

    def zero(self):
        raise NotImplementedError

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        raise NotImplementedError

    def is_zero(self, a):
        return a == self.zero()

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def divmod(self, a, b):
        raise UnsupportedRingError(f"no Euclidean division over {self.kind}")

    def size(self, a):
        """Euclidean size; only meaningful for Euclidean rings."""
        raise UnsupportedRingError(f"no Euclidean size over {self.kind}")

    def normalize_unit(self, a):
        """Return (u, a*u) with u a unit making a*u canonical."""
        return self.one(), a

    def alpha_images(self):
        """Images of the generators a0, a1 under the specialization."""
        raise NotImplementedError

    def specialize_poly(self, p):
        raise NotImplementedError

    def scalar_qdeg(self, a):
        if self.is_zero(a):
            return QDEG_ANY
        return 0

    def to_str(self, a):
        return str(a)

    def __repr__(self):
        return self.kind

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash(self.kind)


class IntRing(CoefficientRing):
    kind = "INT"
    is_euclidean = True

    def zero(self):
        return 0

    def from_int(self, n):
        return int(n)

    def divmod(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in INT")
        # round-toward-zero division so |r| < |b|
        q = abs(a) // abs(b)
        if (a < 0) != (b < 0):
            q = -q
        return q, a - q * b

    def size(self, a):
        return abs(a)

    def normalize_unit(self, a):
        return (1, a) if a >= 0 else (-1, -a)

    def alpha_images(self):
        return 0, 0

    def specialize_poly(self, p):
        return p.terms.get((0, 0), 0)


class RatRing(CoefficientRing):
    kind = "RAT"
    is_euclidean = True
    is_field = True

    def zero(self):
        return Fraction(0)

    def from_int(self, n):
        return Fraction(n)

    def divmod(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in RAT")
        return a / b, Fraction(0)

    def size(self, a):
        return 0 if a == 0 else 1

    def normalize_unit(self, a):
        if a == 0:
            return Fraction(1), Fraction(0)
        return 1 / a, Fraction(1)

    def alpha_images(self):
        return Fraction(0), Fraction(0)

    def specialize_poly(self, p):
        return Fraction(p.terms.get((0, 0), 0))


class PrimeField(CoefficientRing):
    is_euclidean = True
    is_field = True

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def kind(self):
        return "PRIME_FIELD"

    def zero(self):
        return 0

    def from_int(self, n):
        return n % self.p

    def divmod(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return (a * pow(b, -1, self.p)) % self.p, 0

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def size(self, a):
        return 0 if a % self.p == 0 else 1

    def normalize_unit(self, a):
        a %= self.p
        if a == 0:
            return 1, 0
        return pow(a, -1, self.p), 1

    def alpha_images(self):
        return 0, 0

    def specialize_poly(self, p):
        return p.terms.get((0, 0), 0) % self.p

    def __repr__(self):
        return f"GF({self.p})"

    def __hash__(self):
        return hash(("PRIME_FIELD", self.p))


class RatPolyH(CoefficientRing):
    kind = "RAT_POLY_H"
    is_euclidean = True
    qdeg_graded = True

    def zero(self):
        return HPoly(())

    def from_int(self, n):
        return HPoly(n)

    def divmod(self, a, b):
        if b.is_zero():
            raise ZeroDivisionError("division by zero in Q[h]")
        return a.divmod(b)

    def size(self, a):
        # shift so the zero polynomial has strictly smallest size
        return a.degree() + 1

    def normalize_unit(self, a):
        if a.is_zero():
            return HPoly(1), a
        return HPoly(1 / a.leading()), a.monic()

    def alpha_images(self):
        return HPoly(()), HPoly.gen()

    def specialize_poly(self, p):
        return p.eval_h()

    def scalar_qdeg(self, a):
        return a.qdeg()


class AlphaEval(CoefficientRing):
    """Q with a0, a1 evaluated at fixed rationals.

    With distinct values the discriminant (a0 - a1)^2 becomes an
    invertible scalar, which models the localized theory.
    """

    kind = "RAT_ALPHA_EVAL"
    is_euclidean = True
    is_field = True

    def __init__(self, q0, q1):
        self.q0 = Fraction(q0)
        self.q1 = Fraction(q1)

    def zero(self):
        return Fraction(0)

    def from_int(self, n):
        return Fraction(n)

    def divmod(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in alpha evaluation")
        return a / b, Fraction(0)

    def size(self, a):
        return 0 if a == 0 else 1

    def normalize_unit(self, a):
        if a == 0:
            return Fraction(1), Fraction(0)
        return 1 / a, Fraction(1)

    def alpha_images(self):
        return self.q0, self.q1

    def specialize_poly(self, p):
        return p.evaluate(self.q0, self.q1)

    @property
    def distinct(self):
        return self.q0 != self.q1

    def __repr__(self):
        return f"ALPHA_EVAL({self.q0},{self.q1})"

    def __hash__(self):
        return hash(("RAT_ALPHA_EVAL", self.q0, self.q1))


class GenericAlpha(CoefficientRing):
    """The unspecialized bivariate ring.  Supports matrix arithmetic and
    d^2 = 0 checks; refuses Smith normal form (not Euclidean)."""

    kind = "GENERIC_ALPHA"
    qdeg_graded = True

    def zero(self):
        return BivariatePoly()

    def from_int(self, n):
        return BivariatePoly.from_int(n)

    def is_zero(self, a):
        return a.is_zero()

    def alpha_images(self):
        return A0, A1

    def specialize_poly(self, p):
        return p

    def scalar_qdeg(self, a):
        return a.qdeg()


INT = IntRing()
RAT = RatRing()
QH = RatPolyH()
GENERIC = GenericAlpha()


def GF(p):
    return PrimeField(p)


def alpha_eval(q0=0, q1=1):
    return AlphaEval(q0, q1)


# ---------------------------------------------------------------------------
# Scalars: ring-tagged values with Euclidean division


@dataclass(frozen=True)
class Scalar:
    ring: CoefficientRing
    value: object

    def __add__(self, other):
        self._check(other)
        return Scalar(self.ring, self.ring.add(self.value, other.value))

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.ring, self.ring.sub(self.value, other.value))

    def __mul__(self, other):
        self._check(other)
        return Scalar(self.ring, self.ring.mul(self.value, other.value))

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.value))

    def is_zero(self):
        return self.ring.is_zero(self.value)

    def _check(self, other):
        if self.ring != other.ring:
            from .errors import RingMismatchError

            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __str__(self):
        return self.ring.to_str(self.value)


def specialize(p, target):
    """Ring homomorphism image of a bivariate polynomial in the target ring.

    INT, RAT, and prime fields send a0, a1 -> 0; Q[h] sends a0 -> 0 and
    a1 -> h; alpha evaluation substitutes the stored rationals.
    """
    return Scalar(target, target.specialize_poly(p))


def euclidean_divmod(a, b):
    """Exact division with remainder, a = q*b + r, with the Euclidean
    size of r strictly smaller than that of b."""
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("euclidean_divmod by zero")
    if not a.ring.is_euclidean:
        raise UnsupportedRingError(f"{a.ring.kind} is not Euclidean")
    q, r = a.ring.divmod(a.value, b.value)
    return Scalar(a.ring, q), Scalar(a.ring, r)


def poly_qdeg(p):
    """Quantum degree of a bivariate polynomial (generators in degree 2)."""
    return p.qdeg()


def poly_mul(a, b):
    return a * b
