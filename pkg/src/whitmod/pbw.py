"""Exact arithmetic in the universal enveloping algebra U(g).

A PBW monomial is a nondecreasing tuple of symbol ids; the symbol order is
f-block (positive roots by height, then lexicographic coordinates), h-block,
e-block.  Straightening rewrites adjacent inversions x*y = y*x + [x,y] and
memoizes intermediate products; the single-swap layer of the memo can be
persisted to a versioned JSON cache keyed by a root-system fingerprint.
Results never depend on cache state.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .errors import MixedRootSystem, NotSimpleRoot
from .rootsystem import LieElement, RootSystem

CACHE_SCHEMA_VERSION = 1


class Algebra:
    """U(g) with a fixed PBW symbol order.

    The default order is the standard f/h/e block order; module
    presentations instantiate adapted orders over the same root system.
    """

    def __init__(self, rs: RootSystem, order=None):
        self.rs = rs
        self.symbols = list(order) if order is not None else rs.basis_symbols()
        self.index = {s: i for i, s in enumerate(self.symbols)}
        if len(self.index) != len(rs.basis_symbols()):
            raise ValueError("symbol order must enumerate every basis symbol once")
        self._sym_mono_cache = {}
        self._bracket_ids = {}

    # ------------------------------------------------------------------

    def fingerprint(self):
        doc = {
            "type": self.rs.type_label,
            "rank": self.rs.rank,
            "order": [list(s) for s in self.symbols],
        }
        blob = json.dumps(doc, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def _bracket(self, i, j):
        """[s_i, s_j] as dict symbol-id -> Fraction."""
        key = (i, j)
        hit = self._bracket_ids.get(key)
        if hit is None:
            raw = self.rs.bracket_symbols(self.symbols[i], self.symbols[j])
            hit = {self.index[s]: c for s, c in raw.items()}
            self._bracket_ids[key] = hit
        return hit

    def _sym_times_mono(self, s, mono):
        """Normal form of symbol * monomial, as dict mono -> Fraction."""
        if not mono or s <= mono[0]:
            return {(s,) + mono: Fraction(1)}
        key = (s, mono)
        hit = self._sym_mono_cache.get(key)
        if hit is not None:
            return hit
        x, rest = mono[0], mono[1:]
        out = {}
        for m1, c1 in self._sym_times_mono(s, rest).items():
            for m2, c2 in self._sym_times_mono(x, m1).items():
                out[m2] = out.get(m2, Fraction(0)) + c1 * c2
        for u, cu in self._bracket(s, x).items():
            for m2, c2 in self._sym_times_mono(u, rest).items():
                out[m2] = out.get(m2, Fraction(0)) + cu * c2
        out = {m: c for m, c in out.items() if c != 0}
        self._sym_mono_cache[key] = out
        return out

    def _sym_times_terms(self, s, terms):
        out = {}
        for mono, c in terms.items():
            for m2, c2 in self._sym_times_mono(s, mono).items():
                out[m2] = out.get(m2, Fraction(0)) + c * c2
        return {m: c for m, c in out.items() if c != 0}

    def word_to_element(self, word):
        """Normal form of an ordered product of basis symbols."""
        terms = {(): Fraction(1)}
        for s in reversed([self.index[w] if not isinstance(w, int) else w for w in word]):
            terms = self._sym_times_terms(s, terms)
        return UEAElement(self, terms)

    def mono_times_terms(self, mono, terms):
        for s in reversed(mono):
            terms = self._sym_times_terms(s, terms)
        return terms

    def unit(self):
        return UEAElement(self, {(): Fraction(1)})

    def generator(self, symbol):
        return UEAElement(self, {(self.index[symbol],): Fraction(1)})

    # ------------------------------------------------------------------
    # cache persistence (single-swap layer: keys (s, (x,)) )

    def cache_stats(self):
        swaps = sum(1 for (s, m) in self._sym_mono_cache if len(m) == 1)
        return {"entries": len(self._sym_mono_cache), "swap_entries": swaps}

    def export_swap_cache(self):
        entries = []
        for (s, m), val in sorted(self._sym_mono_cache.items()):
            if len(m) != 1:
                continue
            entries.append(
                [s, m[0], [[list(mono), str(c)] for mono, c in sorted(val.items())]]
            )
        return {
            "schema_version": CACHE_SCHEMA_VERSION,
            "fingerprint": self.fingerprint(),
            "entries": entries,
        }

    def import_swap_cache(self, doc):
        """Load a persisted swap cache; stale fingerprints are ignored."""
        if not isinstance(doc, dict):
            return 0
        if doc.get("schema_version") != CACHE_SCHEMA_VERSION:
            return 0
        if doc.get("fingerprint") != self.fingerprint():
            return 0
        n = 0
        for s, x, val in doc.get("entries", []):
            key = (s, (x,))
            self._sym_mono_cache[key] = {
                tuple(mono): Fraction(c) for mono, c in val
            }
            n += 1
        return n


class UEAElement:
    """Element of U(g) in PBW normal form: map monomial -> exact rational."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms=None):
        self.algebra = algebra
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c != 0}

    def _check(self, other):
        if self.algebra is not other.algebra:
            raise MixedRootSystem("elements live in different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return UEAElement(self.algebra, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return UEAElement(self.algebra, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        return multiply(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, UEAElement)
            and self.algebra is other.algebra
            and self.terms == other.terms
        )

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Filtration degree; -1 for the zero element."""
        return max((len(m) for m in self.terms), default=-1)

    def __repr__(self):
        if not self.terms:
            return "UEAElement(0)"
        names = self.algebra.symbols
        parts = []
        for m, c in sorted(self.terms.items()):
            word = "*".join(f"{names[s][0]}{names[s][1]}" for s in m) or "1"
            parts.append(f"{c}*{word}")
        return "UEAElement(" + " + ".join(parts) + ")"


def multiply(a: UEAElement, b: UEAElement) -> UEAElement:
    """PBW normal form of the product a*b."""
    a._check(b)
    alg = a.algebra
    out = {}
    for m1, c1 in a.terms.items():
        prod = alg.mono_times_terms(m1, dict(b.terms))
        for m2, c2 in prod.items():
            out[m2] = out.get(m2, Fraction(0)) + c1 * c2
    return UEAElement(alg, out)


def straighten(algebra: Algebra, word) -> UEAElement:
    """Normal form of an ordered word of basis symbols, e.g. [("e",0),("f",0)]."""
    return algebra.word_to_element(list(word))


def commutator(a: UEAElement, b: UEAElement) -> UEAElement:
    return multiply(a, b) - multiply(b, a)


def lie_to_uea(algebra: Algebra, x: LieElement) -> UEAElement:
    terms = {}
    for sym, c in x.coefficients.items():
        terms[(algebra.index[sym],)] = c
    return UEAElement(algebra, terms)


def casimir_sl2(algebra: Algebra, simple_index: int) -> UEAElement:
    """Casimir of the sl2 triple of a simple root: e f + f e + h^2 / 2.

    In normal form this is 2 f e + h + h^2 / 2, with h the simple coroot.
    """
    rs = algebra.rs
    gamma = rs.simple_root(simple_index)
    try:
        k = rs.pos_index(gamma)
    except Exception as exc:
        raise NotSimpleRoot(str(exc)) from exc
    if sum(gamma) != 1:
        raise NotSimpleRoot(f"{gamma} is not simple")
    e = algebra.generator(("e", k))
    f = algebra.generator(("f", k))
    h = algebra.generator(("h", simple_index))
    return multiply(e, f) + multiply(f, e) + multiply(h, h).scale(Fraction(1, 2))
