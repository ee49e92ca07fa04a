"""The rank-2 Frobenius algebra underlying the link homology theories.

Over a coefficient ring with generator images (i0, i1), the algebra is
R[X]/((X - i0)(X - i1)), a free module with basis {1, X}.  The trace
sends 1 to 0 and X to 1.  Several distinguished bases are supported:

* ``ONE_X``     -- {1, X}, the canonical internal basis (trivial circles)
* ``V``         -- {1, X - i0} (essential circles in odd position)
* ``V_PRIME``   -- {1, X - i1} (essential circles in even position)
* ``E``         -- the idempotents {e0, e1}; needs distinct evaluated
                   parameters so their denominators are invertible
* ``D_V``/``D_V_PRIME`` -- the rescaled essential bases of the localized
                   theory, {1, (X - i0)/(i1 - i0)} and {1, (X - i1)/(i0 - i1)}

Every operation converts through ONE_X, so there is a single conversion
layer rather than pairwise converters.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidBasisError, RingMismatchError
from .ring import QDEG_ANY, AlphaEval, Scalar

ONE_X = "ONE_X"
V = "V"
V_PRIME = "V_PRIME"
E = "E"
D_V = "D_V"
D_V_PRIME = "D_V_PRIME"

BASIS_TAGS = (ONE_X, V, V_PRIME, E, D_V, D_V_PRIME)

# (qdeg b0, qdeg b1) per convention; the localized bases sit entirely in
# quantum degree -1 because their generators carry a degree-2 denominator.
_QDEG = {
    ONE_X: (-1, 1),
    V: (-1, 1),
    V_PRIME: (-1, 1),
    E: (-1, -1),
    D_V: (-1, -1),
    D_V_PRIME: (-1, -1),
}

# (adeg b0, adeg b1) when the basis decorates an essential circle.
_ADEG_ESSENTIAL = {
    V: (-1, 1),
    V_PRIME: (-1, 1),
    D_V: (-1, 1),
    D_V_PRIME: (-1, 1),
}

_EVAL_ONLY = (E, D_V, D_V_PRIME)


@dataclass(frozen=True)
class AlgebraElement:
    """Element c0*b0 + c1*b1 in a chosen basis convention."""

    ring: object
    basis: str
    c0: object
    c1: object

    @property
    def coords(self):
        return (self.c0, self.c1)

    def is_zero(self):
        return self.ring.is_zero(self.c0) and self.ring.is_zero(self.c1)

    def __str__(self):
        names = {
            ONE_X: ("1", "X"),
            V: ("v0", "v1"),
            V_PRIME: ("v0'", "v1'"),
            E: ("e0", "e1"),
            D_V: ("vbar0", "vbar1"),
            D_V_PRIME: ("vbar0'", "vbar1'"),
        }[self.basis]
        parts = []
        for c, name in zip(self.coords, names):
            if not self.ring.is_zero(c):
                parts.append(f"({self.ring.to_str(c)})*{name}")
        return " + ".join(parts) if parts else "0"


def check_basis(ring, basis):
    if basis not in BASIS_TAGS:
        raise InvalidBasisError(f"unknown basis {basis!r}")
    if basis in _EVAL_ONLY:
        if not (isinstance(ring, AlphaEval) and ring.distinct):
            raise InvalidBasisError(
                f"{basis} needs evaluated parameters with distinct values"
            )


class Frobenius:
    """Structure maps of the algebra over a fixed coefficient ring."""

    def __init__(self, ring):
        self.ring = ring
        self.i0, self.i1 = ring.alpha_images()
        self.e1_img = ring.add(self.i0, self.i1)  # X^2 coefficient on X
        self.e2_img = ring.mul(self.i0, self.i1)  # minus the constant term

    # -- basis plumbing ---------------------------------------------------

    def element(self, basis, c0, c1):
        check_basis(self.ring, basis)
        return AlgebraElement(self.ring, basis, c0, c1)

    def to_one_x(self, a):
        """Coordinates of a on {1, X}."""
        r = self.ring
        c0, c1 = a.c0, a.c1
        b = a.basis
        if b == ONE_X:
            return c0, c1
        if b == V:
            return r.sub(c0, r.mul(self.i0, c1)), c1
        if b == V_PRIME:
            return r.sub(c0, r.mul(self.i1, c1)), c1
        # evaluated-parameter bases
        q0, q1 = self.i0, self.i1
        d = q1 - q0
        if b == E:
            return (q1 * c1 - q0 * c0) / d, (c0 - c1) / d
        if b == D_V:
            return c0 - q0 * c1 / d, c1 / d
        if b == D_V_PRIME:
            return c0 + q1 * c1 / d, -c1 / d
        raise InvalidBasisError(b)

    def from_one_x(self, basis, d0, d1):
        r = self.ring
        if basis == ONE_X:
            return self.element(ONE_X, d0, d1)
        if basis == V:
            return self.element(V, r.add(d0, r.mul(self.i0, d1)), d1)
        if basis == V_PRIME:
            return self.element(V_PRIME, r.add(d0, r.mul(self.i1, d1)), d1)
        check_basis(self.ring, basis)
        q0, q1 = self.i0, self.i1
        if basis == E:
            return self.element(E, d0 + q1 * d1, d0 + q0 * d1)
        if basis == D_V:
            return self.element(D_V, d0 + q0 * d1, d1 * (q1 - q0))
        if basis == D_V_PRIME:
            return self.element(D_V_PRIME, d0 + q1 * d1, d1 * (q0 - q1))
        raise InvalidBasisError(basis)

    def convert(self, a, to):
        """Same element, new coordinates.  Round trips are identities."""
        self._check_ring(a)
        d0, d1 = self.to_one_x(a)
        return self.from_one_x(to, d0, d1)

    # -- structure maps ---------------------------------------------------

    def unit(self):
        r = self.ring
        return self.element(ONE_X, r.one(), r.zero())

    def counit(self, a):
        """The trace: 1 -> 0, X -> 1, extended linearly."""
        self._check_ring(a)
        _, d1 = self.to_one_x(a)
        return Scalar(self.ring, d1)

    def mult(self, a, b):
        """Product in the quotient by (X - i0)(X - i1); output in ONE_X."""
        self._check_ring(a)
        self._check_ring(b)
        r = self.ring
        a0, a1 = self.to_one_x(a)
        b0, b1 = self.to_one_x(b)
        # (a0 + a1 X)(b0 + b1 X) with X^2 = (i0+i1) X - i0 i1
        xx = r.mul(a1, b1)
        d0 = r.sub(r.mul(a0, b0), r.mul(self.e2_img, xx))
        d1 = r.add(
            r.add(r.mul(a0, b1), r.mul(a1, b0)), r.mul(self.e1_img, xx)
        )
        return self.element(ONE_X, d0, d1)

    def comult_tensor(self, a):
        """Comultiplication as coordinates on {1, X} tensor {1, X}.

        Returns a dict (i, j) -> value where i, j index {1, X}.
        """
        self._check_ring(a)
        r = self.ring
        d0, d1 = self.to_one_x(a)
        # 1 -> X(x)1 + 1(x)X - (i0+i1) 1(x)1,  X -> X(x)X - i0 i1 1(x)1
        out = {}
        items = [
            ((1, 0), d0),
            ((0, 1), d0),
            ((0, 0), r.neg(r.mul(self.e1_img, d0))),
            ((1, 1), d1),
            ((0, 0), r.neg(r.mul(self.e2_img, d1))),
        ]
        for key, v in items:
            s = r.add(out.get(key, r.zero()), v)
            if r.is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
        return out

    def comult(self, a):
        """Comultiplication as a formal sum of element pairs (in ONE_X)."""
        r = self.ring
        pairs = []
        basis = [
            self.element(ONE_X, r.one(), r.zero()),
            self.element(ONE_X, r.zero(), r.one()),
        ]
        for (i, j), v in sorted(self.comult_tensor(a).items()):
            left = basis[i]
            scaled = self.element(
                ONE_X, r.mul(v, left.c0), r.mul(v, left.c1)
            )
            pairs.append((scaled, basis[j]))
        return pairs

    def x_action(self, a):
        """Full multiplication by X, returned in the input's convention."""
        self._check_ring(a)
        r = self.ring
        x = self.element(ONE_X, r.zero(), r.one())
        prod = self.mult(a, x)
        return self.convert(prod, a.basis)

    # -- gradings ----------------------------------------------------------

    def bidegree(self, a, essential):
        """(qdeg, adeg) for homogeneous elements; None components for
        inhomogeneous input; QDEG_ANY for the zero element."""
        self._check_ring(a)
        r = self.ring
        if a.is_zero():
            return QDEG_ANY, QDEG_ANY
        qtab = _QDEG[a.basis]
        if essential:
            atab = _ADEG_ESSENTIAL.get(a.basis)
            if atab is None:
                raise InvalidBasisError(
                    f"{a.basis} does not decorate essential circles"
                )
        else:
            atab = (0, 0)
        qdegs, adegs = set(), set()
        for k, c in enumerate(a.coords):
            if r.is_zero(c):
                continue
            sq = r.scalar_qdeg(c)
            if sq is None:
                return None, None
            if sq is not QDEG_ANY:
                qdegs.add(sq + qtab[k])
            adegs.add(atab[k])
        q = qdegs.pop() if len(qdegs) == 1 else (None if qdegs else QDEG_ANY)
        adeg = adegs.pop() if len(adegs) == 1 else None
        return q, adeg

    def _check_ring(self, a):
        if a.ring != self.ring:
            raise RingMismatchError(f"{a.ring} vs {self.ring}")


def basis_bidegree(basis, index, essential):
    """Bidegree of the index-th basis vector of a slot convention."""
    q = _QDEG[basis][index]
    if essential:
        a = _ADEG_ESSENTIAL[basis][index]
    else:
        a = 0
    return q, a
