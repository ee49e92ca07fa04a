"""State spaces and cobordism maps.

The planar TQFT assigns the rank-2 algebra to every circle and
multiplication/comultiplication to saddles.  Over the annulus, trivial
circles keep the {1, X} basis while the i-th essential circle (counted
from the puncture outward) carries {1, X - a0} for odd i and
{1, X - a1} for even i; words in these bases carry an annular degree.
Saddle maps are computed from the Frobenius structure in the slot bases,
so truncating to the annular-degree-preserving part yields each variant:

* ``GENERIC``       -- the full planar map, no truncation
* ``ANNULAR_ALPHA`` -- adeg-preserving part over the bivariate ring
* ``ANNULAR_ZERO``  -- the same with both parameters set to zero
* ``ANNULAR_H``     -- parameters (0, h) over Q[h]
* ``ANNULAR_D``     -- evaluated parameters, idempotent/rescaled bases
* ``BETA``          -- the pair (adeg-0 part, adeg-raising part)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple

from . import frobenius as fb
from .errors import (
    NotACubeEdgeError,
    ShapeMismatchError,
    VariantRingMismatchError,
)
from .frobenius import Frobenius, basis_bidegree
from .ring import QDEG_ANY, AlphaEval

GENERIC = "GENERIC"
ANNULAR_ALPHA = "ANNULAR_ALPHA"
ANNULAR_ZERO = "ANNULAR_ZERO"
ANNULAR_H = "ANNULAR_H"
ANNULAR_D = "ANNULAR_D"
BETA = "BETA"

VARIANTS = (GENERIC, ANNULAR_ALPHA, ANNULAR_ZERO, ANNULAR_H, ANNULAR_D, BETA)

MERGE_TT = "MERGE_TT"
SPLIT_T = "SPLIT_T"
TYPE_I = "TYPE_I"
TYPE_II = "TYPE_II"
TYPE_III = "TYPE_III"
TYPE_IV = "TYPE_IV"

_MERGES = (MERGE_TT, TYPE_I, TYPE_II)
_SPLITS = (SPLIT_T, TYPE_III, TYPE_IV)


def check_variant_ring(ring, variant):
    kind = ring.kind
    ok = {
        GENERIC: True,
        ANNULAR_ALPHA: kind == "GENERIC_ALPHA",
        ANNULAR_ZERO: kind in ("INT", "RAT", "PRIME_FIELD"),
        ANNULAR_H: kind == "RAT_POLY_H",
        ANNULAR_D: isinstance(ring, AlphaEval) and ring.distinct,
        BETA: kind == "GENERIC_ALPHA",
    }.get(variant)
    if ok is None:
        raise VariantRingMismatchError(f"unknown variant {variant!r}")
    if not ok:
        raise VariantRingMismatchError(f"variant {variant} over ring {ring}")


def slot_convention(essential, essential_index, variant):
    if variant == ANNULAR_D:
        if essential:
            return fb.D_V if essential_index % 2 == 1 else fb.D_V_PRIME
        return fb.E
    if essential:
        return fb.V if essential_index % 2 == 1 else fb.V_PRIME
    return fb.ONE_X


class Slot(NamedTuple):
    essential: bool
    convention: str
    essential_index: object  # int for essential slots, None otherwise


@dataclass(frozen=True)
class StateSpace:
    """Tensor product of one rank-2 module per circle.

    Basis words are tuples of bits, one per slot (0 = first basis vector
    of the slot convention), enumerated lexicographically.
    """

    ring: object
    variant: str
    slots: tuple

    @property
    def rank(self):
        return 1 << len(self.slots)

    def words(self):
        return product((0, 1), repeat=len(self.slots))

    def word_index(self, word):
        idx = 0
        for b in word:
            idx = (idx << 1) | b
        return idx

    def index_word(self, idx):
        k = len(self.slots)
        return tuple((idx >> (k - 1 - j)) & 1 for j in range(k))

    def word_bidegree(self, word):
        q = a = 0
        for slot, bit in zip(self.slots, word):
            dq, da = basis_bidegree(slot.convention, bit, slot.essential)
            q += dq
            a += da
        return q, a

    def adeg(self, word):
        return self.word_bidegree(word)[1]

    def __eq__(self, other):
        if not isinstance(other, StateSpace):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.variant == other.variant
            and self.slots == other.slots
        )

    def __hash__(self):
        return hash((self.variant, self.slots))


def state_space(rd, ring, variant):
    """State space of a resolved diagram: slots parallel rd.circles."""
    check_variant_ring(ring, variant)
    slots = tuple(
        Slot(
            c.essential,
            slot_convention(c.essential, c.essential_index, variant),
            c.essential_index,
        )
        for c in rd.circles
    )
    return StateSpace(ring, variant, slots)


def make_space(ring, variant, flags):
    """Explicit state space from (essential, essential_index) pairs."""
    check_variant_ring(ring, variant)
    slots = tuple(
        Slot(ess, slot_convention(ess, idx, variant), idx)
        for ess, idx in flags
    )
    return StateSpace(ring, variant, slots)


def essential_space(n, ring, variant):
    """n concentric essential circles, innermost first."""
    return make_space(ring, variant, [(True, i + 1) for i in range(n)])


# ---------------------------------------------------------------------------
# linear maps between state spaces


@dataclass
class LinearMap:
    """Sparse matrix between state spaces, rows indexed by codomain words."""

    domain: StateSpace
    codomain: StateSpace
    entries: dict = field(default_factory=dict)
    declared_bidegree: tuple = (None, None)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.entries == other.entries
        )

    def add(self, other):
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ShapeMismatchError("sum of maps with different spaces")
        r = self.domain.ring
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = r.add(out.get(k, r.zero()), v)
            if r.is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
        return LinearMap(self.domain, self.codomain, out, self.declared_bidegree)

    def scale(self, s):
        r = self.domain.ring
        out = {}
        for k, v in self.entries.items():
            w = r.mul(s, v)
            if not r.is_zero(w):
                out[k] = w
        return LinearMap(self.domain, self.codomain, out, self.declared_bidegree)

    def negate(self):
        r = self.domain.ring
        out = {k: r.neg(v) for k, v in self.entries.items()}
        return LinearMap(self.domain, self.codomain, out, self.declared_bidegree)

    def adeg_split(self):
        """Split entries by annular-degree shift; returns {shift: map}."""
        parts = {}
        for (row, col), v in self.entries.items():
            da = self.codomain.adeg(
                self.codomain.index_word(row)
            ) - self.domain.adeg(self.domain.index_word(col))
            parts.setdefault(da, {})[(row, col)] = v
        return {
            da: LinearMap(self.domain, self.codomain, ent, (None, da))
            for da, ent in parts.items()
        }

    def qdeg_shift_of_entry(self, row, col):
        """q(target) + q(entry) - q(source); None if entry inhomogeneous."""
        v = self.entries[(row, col)]
        sq = self.domain.ring.scalar_qdeg(v)
        if sq is None:
            return None
        if sq is QDEG_ANY:
            sq = 0
        qt, _ = self.codomain.word_bidegree(self.codomain.index_word(row))
        qs, _ = self.domain.word_bidegree(self.domain.index_word(col))
        return qt + sq - qs

    def check_bidegree(self, expect_q, expect_a):
        """Verify every entry realizes the given bidegree (q check is
        skipped over rings where scalars are ungraded)."""
        graded = self.domain.ring.qdeg_graded or self.domain.ring.kind in (
            "INT",
            "RAT",
            "PRIME_FIELD",
        )
        for (row, col) in self.entries:
            da = self.codomain.adeg(
                self.codomain.index_word(row)
            ) - self.domain.adeg(self.domain.index_word(col))
            if expect_a is not None and da != expect_a:
                return False
            if expect_q is not None and graded:
                if self.qdeg_shift_of_entry(row, col) != expect_q:
                    return False
        return True

    def to_sparse(self):
        from .linalg import SparseMatrix

        return SparseMatrix(
            self.domain.ring,
            self.codomain.rank,
            self.domain.rank,
            dict(self.entries),
        )

    def specialize(self, target):
        """Entrywise ring homomorphism image; only from the generic ring."""
        if self.domain.ring.kind != "GENERIC_ALPHA":
            raise VariantRingMismatchError("specialize needs generic entries")

        def conv(space):
            return StateSpace(target, space.variant, space.slots)

        out = {}
        for k, v in self.entries.items():
            w = target.specialize_poly(v)
            if not target.is_zero(w):
                out[k] = w
        return LinearMap(
            conv(self.domain), conv(self.codomain), out, self.declared_bidegree
        )


def identity_map(space):
    one = space.ring.one()
    ent = {(i, i): one for i in range(space.rank)}
    return LinearMap(space, space, ent, (0, 0))


def compose(f, g):
    """f after g (matrix product f.g)."""
    if g.codomain != f.domain:
        raise ShapeMismatchError("compose: inner spaces disagree")
    r = f.domain.ring
    by_row = {}
    for (row, mid), v in g.entries.items():
        by_row.setdefault(row, []).append((mid, v))
    out = {}
    for (row, mid), u in f.entries.items():
        for col, v in by_row.get(mid, ()):
            key = (row, col)
            s = r.add(out.get(key, r.zero()), r.mul(u, v))
            if r.is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
    dq1, da1 = f.declared_bidegree
    dq2, da2 = g.declared_bidegree
    dq = dq1 + dq2 if (dq1 is not None and dq2 is not None) else None
    da = da1 + da2 if (da1 is not None and da2 is not None) else None
    return LinearMap(g.domain, f.codomain, out, (dq, da))


# ---------------------------------------------------------------------------
# saddle classification


@dataclass(frozen=True)
class SaddleDescriptor:
    """A cube edge: which circles merge or split, and how the untouched
    circles correspond across the saddle."""

    kind: str
    crossing: int
    rd_from: object
    rd_to: object
    dom_involved: tuple  # slot indices, ordered (essential first, inner first)
    cod_involved: tuple
    uninvolved: tuple  # (domain slot, codomain slot) pairs


def classify_saddle(d, rd_from, rd_to, crossing):
    """Identify the elementary saddle between two resolutions that differ
    exactly at the given crossing."""
    uf, ut = rd_from.smoothing, rd_to.smoothing
    diff = [i for i, (a, b) in enumerate(zip(uf, ut)) if a != b]
    if diff != [crossing] or uf[crossing] != 0:
        raise NotACubeEdgeError(f"{uf} -> {ut} not an edge at {crossing}")
    incident = set(d.crossings[crossing])
    dom_inv = [
        i for i, c in enumerate(rd_from.circles) if c.edge_ids & incident
    ]
    cod_inv = [
        i for i, c in enumerate(rd_to.circles) if c.edge_ids & incident
    ]
    if not ((len(dom_inv), len(cod_inv)) in ((2, 1), (1, 2))):
        raise NotACubeEdgeError(
            f"saddle at {crossing} involves {len(dom_inv)} -> {len(cod_inv)} circles"
        )
    by_key = {c.edge_ids: j for j, c in enumerate(rd_to.circles)}
    pairs = []
    for i, c in enumerate(rd_from.circles):
        if i in dom_inv:
            continue
        j = by_key.get(c.edge_ids)
        if j is None or j in cod_inv:
            raise NotACubeEdgeError("untouched circles do not match")
        pairs.append((i, j))

    def pattern(rd, idxs):
        ess = [i for i in idxs if rd.circles[i].essential]
        triv = [i for i in idxs if not rd.circles[i].essential]
        ess.sort(key=lambda i: rd.circles[i].essential_index)
        return ess, triv

    dess, dtriv = pattern(rd_from, dom_inv)
    cess, ctriv = pattern(rd_to, cod_inv)
    if len(dom_inv) == 2:
        if len(dess) == 0 and len(cess) == 0:
            kind = MERGE_TT
        elif len(dess) == 1 and len(cess) == 1:
            kind = TYPE_I
        elif len(dess) == 2 and len(cess) == 0:
            kind = TYPE_II
        else:
            raise NotACubeEdgeError("impossible merge pattern")
        dom = tuple(dess + dtriv)
        cod = tuple(cess + ctriv)
    else:
        if len(dess) == 0 and len(cess) == 0:
            kind = SPLIT_T
        elif len(dess) == 1 and len(cess) == 1:
            kind = TYPE_III
        elif len(dess) == 0 and len(cess) == 2:
            kind = TYPE_IV
        else:
            raise NotACubeEdgeError("impossible split pattern")
        dom = tuple(dess + dtriv)
        cod = tuple(cess + ctriv)
    return SaddleDescriptor(
        kind, crossing, rd_from, rd_to, dom, cod, tuple(pairs)
    )


# ---------------------------------------------------------------------------
# map construction


def _basis_elt(fr, conv, bit):
    r = fr.ring
    if bit == 0:
        return fr.element(conv, r.one(), r.zero())
    return fr.element(conv, r.zero(), r.one())


def _local_merge(fr, conv_a, conv_b, conv_out):
    r = fr.ring
    local = {}
    for ba, bb in product((0, 1), repeat=2):
        prod = fr.mult(_basis_elt(fr, conv_a, ba), _basis_elt(fr, conv_b, bb))
        res = fr.convert(prod, conv_out)
        outs = []
        for bit, c in enumerate(res.coords):
            if not r.is_zero(c):
                outs.append(((bit,), c))
        if outs:
            local[(ba, bb)] = outs
    return local


def _local_split(fr, conv_in, conv_out1, conv_out2):
    r = fr.ring
    one, zero = r.one(), r.zero()
    local = {}
    for b in (0, 1):
        tens = fr.comult_tensor(_basis_elt(fr, conv_in, b))
        acc = {}
        for (i, j), v in tens.items():
            f1 = fr.from_one_x(
                conv_out1, one if i == 0 else zero, one if i == 1 else zero
            )
            f2 = fr.from_one_x(
                conv_out2, one if j == 0 else zero, one if j == 1 else zero
            )
            for o1, c1 in enumerate(f1.coords):
                if r.is_zero(c1):
                    continue
                for o2, c2 in enumerate(f2.coords):
                    if r.is_zero(c2):
                        continue
                    key = (o1, o2)
                    w = r.mul(v, r.mul(c1, c2))
                    s = r.add(acc.get(key, zero), w)
                    if r.is_zero(s):
                        acc.pop(key, None)
                    else:
                        acc[key] = s
        outs = [(key, v) for key, v in sorted(acc.items())]
        if outs:
            local[(b,)] = outs
    return local


def _local_power_of_x(fr, conv, dots):
    r = fr.ring
    local = {}
    for b in (0, 1):
        elt = _basis_elt(fr, conv, b)
        for _ in range(dots):
            elt = fr.x_action(elt)
        outs = []
        for bit, c in enumerate(elt.coords):
            if not r.is_zero(c):
                outs.append(((bit,), c))
        if outs:
            local[(b,)] = outs
    return local


def _embed(dom_space, cod_space, dom_inv, cod_inv, pairs, local, bidegree):
    r = dom_space.ring
    entries = {}
    k_cod = len(cod_space.slots)
    for col, word in enumerate(dom_space.words()):
        loc_in = tuple(word[s] for s in dom_inv)
        for loc_out, v in local.get(loc_in, ()):
            bits = [0] * k_cod
            for pos, s in enumerate(cod_inv):
                bits[s] = loc_out[pos]
            for ds, cs in pairs:
                bits[cs] = word[ds]
            row = cod_space.word_index(tuple(bits))
            key = (row, col)
            s = r.add(entries.get(key, r.zero()), v)
            if r.is_zero(s):
                entries.pop(key, None)
            else:
                entries[key] = s
    return LinearMap(dom_space, cod_space, entries, bidegree)


def merge_map(dom_space, cod_space, dom_pair, cod_slot, uninvolved):
    """Multiplication of two slots into one, between explicit spaces."""
    fr = Frobenius(dom_space.ring)
    local = _local_merge(
        fr,
        dom_space.slots[dom_pair[0]].convention,
        dom_space.slots[dom_pair[1]].convention,
        cod_space.slots[cod_slot].convention,
    )
    return _embed(
        dom_space, cod_space, tuple(dom_pair), (cod_slot,),
        tuple(uninvolved), local, (1, None),
    )


def split_map(dom_space, cod_space, dom_slot, cod_pair, uninvolved):
    """Comultiplication of one slot into two, between explicit spaces."""
    fr = Frobenius(dom_space.ring)
    local = _local_split(
        fr,
        dom_space.slots[dom_slot].convention,
        cod_space.slots[cod_pair[0]].convention,
        cod_space.slots[cod_pair[1]].convention,
    )
    return _embed(
        dom_space, cod_space, (dom_slot,), tuple(cod_pair),
        tuple(uninvolved), local, (1, None),
    )


def _saddle_map(sd, ring, variant):
    dom_space = state_space(sd.rd_from, ring, variant)
    cod_space = state_space(sd.rd_to, ring, variant)
    fr = Frobenius(ring)
    if sd.kind in _MERGES:
        conv_a = dom_space.slots[sd.dom_involved[0]].convention
        conv_b = dom_space.slots[sd.dom_involved[1]].convention
        conv_out = cod_space.slots[sd.cod_involved[0]].convention
        local = _local_merge(fr, conv_a, conv_b, conv_out)
    else:
        conv_in = dom_space.slots[sd.dom_involved[0]].convention
        conv_1 = cod_space.slots[sd.cod_involved[0]].convention
        conv_2 = cod_space.slots[sd.cod_involved[1]].convention
        local = _local_split(fr, conv_in, conv_1, conv_2)
    return _embed(
        dom_space,
        cod_space,
        sd.dom_involved,
        sd.cod_involved,
        sd.uninvolved,
        local,
        (1, None),
    )


def full_saddle_map(sd, ring, variant=GENERIC):
    """The untruncated planar map in the variant's slot bases."""
    return _saddle_map(sd, ring, variant)


def truncate_adeg(m, keep=0):
    """The part of a map shifting annular degree by exactly ``keep``."""
    parts = m.adeg_split()
    zero = LinearMap(m.domain, m.codomain, {}, (m.declared_bidegree[0], keep))
    got = parts.get(keep, zero)
    return LinearMap(
        m.domain, m.codomain, got.entries, (m.declared_bidegree[0], keep)
    )


def annular_saddle_map(sd, ring, variant):
    """The adeg-preserving truncation, or the (d0, d2) pair for BETA."""
    check_variant_ring(ring, variant)
    if variant == GENERIC:
        raise VariantRingMismatchError("GENERIC is the untruncated theory")
    full = _saddle_map(sd, ring, GENERIC if variant == BETA else variant)
    parts = full.adeg_split()
    bad = [da for da in parts if da not in (0, 2)]
    if bad:
        raise AssertionError(f"saddle map shifts adeg by {bad}")
    if variant == BETA:
        return truncate_adeg(full, 0), truncate_adeg(full, 2)
    return truncate_adeg(full, 0)


def dotted_identity_map(space, slot, dots, variant):
    """Multiplication by the dotted identity cobordism on one circle."""
    if dots < 1:
        raise ValueError("dots must be positive")
    fr = Frobenius(space.ring)
    conv = space.slots[slot].convention
    local = _local_power_of_x(fr, conv, dots)
    pairs = tuple(
        (j, j) for j in range(len(space.slots)) if j != slot
    )
    m = _embed(space, space, (slot,), (slot,), pairs, local, (2 * dots, None))
    if variant == GENERIC:
        return m
    if variant == BETA:
        return truncate_adeg(m, 0), truncate_adeg(m, 2)
    return truncate_adeg(m, 0)


def birth_map(space, position):
    """Insert a trivial circle at the given slot position (the unit)."""
    ring = space.ring
    conv = slot_convention(False, None, space.variant)
    new_slots = (
        space.slots[:position]
        + (Slot(False, conv, None),)
        + space.slots[position:]
    )
    cod = StateSpace(ring, space.variant, new_slots)
    fr = Frobenius(ring)
    unit = fr.convert(fr.unit(), conv)
    entries = {}
    for col, word in enumerate(space.words()):
        for bit, c in enumerate(unit.coords):
            if ring.is_zero(c):
                continue
            bits = word[:position] + (bit,) + word[position:]
            entries[(cod.word_index(bits), col)] = c
    return LinearMap(space, cod, entries, (-1, 0))


def death_map(space, slot):
    """Cap off a trivial circle (the counit on that slot)."""
    ring = space.ring
    if space.slots[slot].essential:
        raise ValueError("death caps a trivial circle")
    new_slots = space.slots[:slot] + space.slots[slot + 1 :]
    cod = StateSpace(ring, space.variant, new_slots)
    fr = Frobenius(ring)
    eps = [
        fr.counit(_basis_elt(fr, space.slots[slot].convention, b)).value
        for b in (0, 1)
    ]
    entries = {}
    for col, word in enumerate(space.words()):
        c = eps[word[slot]]
        if ring.is_zero(c):
            continue
        bits = word[:slot] + word[slot + 1 :]
        entries[(cod.word_index(bits), col)] = c
    return LinearMap(space, cod, entries, (-1, 0))
