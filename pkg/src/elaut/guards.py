"""Edge guards: Boolean functions over atomic propositions.

A guard is stored canonically as the bit vector of its minterms: bit i of
the vector is set iff the guard holds under assignment i, where bit 0 of
the assignment index is AP 0's truth value.  Guards are interned per
store, so two guard ids are equal exactly when the functions are equal.
Id 0 is always the constant false and id 1 the constant true.
"""

from __future__ import annotations

from dataclasses import dataclass

FALSE_GUARD = 0
TRUE_GUARD = 1

DEFAULT_MAX_APS = 16


class GuardStore:
    """Interning table for guards over a fixed list of APs."""

    def __init__(self, ap_count, max_aps=DEFAULT_MAX_APS):
        if ap_count < 0 or ap_count > max_aps:
            raise ValueError("ap_count %d outside [0, %d]"
                             % (ap_count, max_aps))
        self.ap_count = ap_count
        self.nminterms = 1 << ap_count
        self.full = (1 << self.nminterms) - 1
        self._table = []          # id -> minterm bits
        self._ids = {}            # minterm bits -> id
        self.intern(0)            # FALSE_GUARD
        self.intern(self.full)    # TRUE_GUARD
        self._lit_cache = {}

    def __len__(self):
        return len(self._table)

    def intern(self, bits):
        got = self._ids.get(bits)
        if got is not None:
            return got
        if bits < 0 or bits > self.full:
            raise ValueError("not a valid minterm vector")
        gid = len(self._table)
        self._table.append(bits)
        self._ids[bits] = gid
        return gid

    def bits_of(self, gid):
        return self._table[gid]

    def _check(self, gid):
        if not 0 <= gid < len(self._table):
            raise ValueError("unknown guard id %d" % gid)
        return gid

    def lit(self, ap, positive=True):
        """Guard for a single AP literal."""
        if not 0 <= ap < self.ap_count:
            raise ValueError("AP index %d out of range" % ap)
        key = (ap, positive)
        got = self._lit_cache.get(key)
        if got is not None:
            return got
        bits = 0
        for m in range(self.nminterms):
            if ((m >> ap) & 1) == (1 if positive else 0):
                bits |= 1 << m
        gid = self.intern(bits)
        self._lit_cache[key] = gid
        return gid

    def g_and(self, a, b):
        return self.intern(self._table[self._check(a)]
                           & self._table[self._check(b)])

    def g_or(self, a, b):
        return self.intern(self._table[self._check(a)]
                           | self._table[self._check(b)])

    def g_not(self, a):
        return self.intern(self._table[self._check(a)] ^ self.full)

    def is_sat(self, a):
        return self._table[self._check(a)] != 0

    def holds(self, gid, minterm):
        """Does the guard accept assignment index `minterm`?"""
        return (self._table[self._check(gid)] >> minterm) & 1 == 1

    def restrict(self, gid, ap, value):
        """The guard with AP `ap` fixed to `value` (a cofactor)."""
        bits = self._table[self._check(gid)]
        out = 0
        for m in range(self.nminterms):
            if (bits >> m) & 1 and ((m >> ap) & 1) == (1 if value else 0):
                out |= 1 << m
                out |= 1 << (m ^ (1 << ap))
        return self.intern(out)

    def exists(self, gid, aps):
        """Existentially quantify the given AP indices away."""
        g = gid
        for ap in aps:
            g = self.g_or(self.restrict(g, ap, False),
                          self.restrict(g, ap, True))
        return g

    def support(self, gid):
        """APs the guard actually depends on."""
        out = []
        for ap in range(self.ap_count):
            if self.restrict(gid, ap, False) != self.restrict(gid, ap, True):
                out.append(ap)
        return out

    # -- cube extraction ----------------------------------------------

    def cube_bits(self, cube):
        bits = self.full
        for ap in cube.positive:
            bits &= self._table[self.lit(ap, True)]
        for ap in cube.negative:
            bits &= self._table[self.lit(ap, False)]
        return bits

    def to_cubes(self, gid):
        """A pairwise-disjoint cover of the guard by cubes.

        Greedy: take the lowest uncovered minterm, widen it into a cube by
        freeing APs while the cube stays inside the uncovered part, emit,
        subtract, repeat.  Deterministic; true gives one empty cube, false
        gives no cubes, and OR-ing the cubes back reconstructs the guard.
        """
        remaining = self._table[self._check(gid)]
        out = []
        while remaining:
            m = (remaining & -remaining).bit_length() - 1
            pos = [ap for ap in range(self.ap_count) if (m >> ap) & 1]
            neg = [ap for ap in range(self.ap_count) if not (m >> ap) & 1]
            cube = Cube(frozenset(pos), frozenset(neg))
            bits = self.cube_bits(cube)
            for ap in range(self.ap_count):
                widened = Cube(cube.positive - {ap}, cube.negative - {ap})
                wbits = self.cube_bits(widened)
                if wbits & ~remaining == 0:
                    cube, bits = widened, wbits
            out.append(cube)
            remaining &= ~bits
        return out

    # -- text form ----------------------------------------------------

    def print_label(self, gid):
        gid = self._check(gid)
        if gid == FALSE_GUARD:
            return "f"
        if gid == TRUE_GUARD:
            return "t"
        parts = []
        for cube in self.to_cubes(gid):
            lits = []
            for ap in sorted(cube.positive | cube.negative):
                lits.append(("%d" if ap in cube.positive else "!%d") % ap)
            parts.append("&".join(lits) if lits else "t")
        return " | ".join(parts)

    def parse_label(self, text):
        """Parse "0&!1 | 2" style Boolean expressions over AP indices."""
        return _LabelParser(self, text).parse()

    def translate_from(self, other, gid, ap_map):
        """Re-express a guard from another store in this one.

        ap_map[i] is the index, in this store's AP order, of the other
        store's AP i.  Works by remapping minterms, so the result is the
        same Boolean function over the shared APs.
        """
        src = other.bits_of(gid)
        out = 0
        for m in range(self.nminterms):
            sm = 0
            for i in range(other.ap_count):
                sm |= ((m >> ap_map[i]) & 1) << i
            if (src >> sm) & 1:
                out |= 1 << m
        return self.intern(out)


@dataclass(frozen=True)
class Cube:
    """A conjunction of literals: positive APs and negated APs."""
    positive: frozenset
    negative: frozenset


class LabelParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__("%s at position %d" % (message, pos))
        self.pos = pos


class _LabelParser:
    def __init__(self, store, text):
        self.store = store
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        g = self.disjunction()
        if self.peek() != "":
            raise LabelParseError("trailing input in label", self.pos)
        return g

    def disjunction(self):
        g = self.conjunction()
        while self.peek() == "|":
            self.pos += 1
            g = self.store.g_or(g, self.conjunction())
        return g

    def conjunction(self):
        g = self.primary()
        while self.peek() == "&":
            self.pos += 1
            g = self.store.g_and(g, self.primary())
        return g

    def primary(self):
        ch = self.peek()
        if ch == "!":
            self.pos += 1
            return self.store.g_not(self.primary())
        if ch == "(":
            self.pos += 1
            g = self.disjunction()
            if self.peek() != ")":
                raise LabelParseError("expected ')'", self.pos)
            self.pos += 1
            return g
        if ch == "t":
            self.pos += 1
            return TRUE_GUARD
        if ch == "f":
            self.pos += 1
            return FALSE_GUARD
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            ap = int(self.text[start:self.pos])
            if ap >= self.store.ap_count:
                raise LabelParseError("AP index %d out of range" % ap, start)
            return self.store.lit(ap, True)
        raise LabelParseError("unexpected %r in label" % (ch or "end"),
                              self.pos)
