"""Root systems and Chevalley-basis structure constants.

Supported envelope: A1-A4, B2-B4, C3-C4, D4, G2 (rank at most 4).  Roots are
stored as integer coordinate vectors in the simple-root basis, so every
computation is exact.  Signs of the structure constants N(a,b) are fixed by
the extraspecial-pair convention with positive roots ordered by height and
then lexicographically, which makes two builds of the same system produce
identical tables.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import MixedRootSystem, NotARoot, UnsupportedType

# (type_label, rank) -> symmetrizer d_i with (alpha_i, alpha_i) = 2 d_i;
# short roots are normalized to squared length 2.
_ENVELOPE = {
    ("A", 1), ("A", 2), ("A", 3), ("A", 4),
    ("B", 2), ("B", 3), ("B", 4),
    ("C", 3), ("C", 4),
    ("D", 4),
    ("G", 2),
}


def _cartan_matrix(type_label, rank):
    """Cartan matrix with entry (i, j) = <alpha_j, alpha_i^vee>."""
    n = rank
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if type_label in ("A", "B", "C"):
        for i in range(n - 1):
            m[i][i + 1] = -1
            m[i + 1][i] = -1
        if type_label == "B" and n >= 2:
            # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
            m[n - 1][n - 2] = -2
        if type_label == "C" and n >= 2:
            # alpha_n long: <alpha_n, alpha_{n-1}^vee> = -2
            m[n - 2][n - 1] = -2
    elif type_label == "D":
        # node n-2 (0-based index n-3... use branch node at index 1 for D4)
        # D4: alpha_2 is the central node
        for i, j in ((0, 1), (1, 2), (1, 3)):
            m[i][j] = -1
            m[j][i] = -1
    elif type_label == "G":
        # alpha_1 short, alpha_2 long
        m[0][1] = -3
        m[1][0] = -1
    return m


def _symmetrizer(type_label, rank):
    if type_label in ("A", "D"):
        return [1] * rank
    if type_label == "B":
        return [2] * (rank - 1) + [1]
    if type_label == "C":
        return [1] * (rank - 1) + [2]
    if type_label == "G":
        return [1, 3]
    raise UnsupportedType(type_label)


class RootSystem:
    """Immutable Cartan data, positive roots, and Chevalley constants."""

    def __init__(self, type_label, rank):
        if (type_label, rank) not in _ENVELOPE:
            raise UnsupportedType(f"({type_label}, {rank}) is outside the supported envelope")
        self.type_label = type_label
        self.rank = rank
        self.cartan_matrix = _cartan_matrix(type_label, rank)
        self.symmetrizer = _symmetrizer(type_label, rank)
        self.positive_roots = self._close_positive_roots()
        self._pos_index = {r: i for i, r in enumerate(self.positive_roots)}
        self._root_set = set(self.positive_roots) | {
            self._neg(r) for r in self.positive_roots
        }
        self.structure_constants = self._chevalley_constants()
        self._coroots = [self._coroot(r) for r in self.positive_roots]
        self._pair_brackets = self._bracket_table()

    # ------------------------------------------------------------------
    # root enumeration

    def _close_positive_roots(self):
        simple = [
            tuple(1 if j == i else 0 for j in range(self.rank))
            for i in range(self.rank)
        ]
        roots = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for beta in frontier:
                for i, alpha in enumerate(simple):
                    p = 0
                    while self._sub(beta, alpha, p + 1) in roots:
                        p += 1
                    q = p - self._pairing(beta, i)
                    if q >= 1:
                        cand = tuple(b + a for b, a in zip(beta, alpha))
                        if cand not in roots:
                            roots.add(cand)
                            new.append(cand)
            frontier = new
        return sorted(roots, key=lambda r: (sum(r), r))

    @staticmethod
    def _sub(beta, alpha, k):
        return tuple(b - k * a for b, a in zip(beta, alpha))

    @staticmethod
    def _neg(r):
        return tuple(-x for x in r)

    def _pairing(self, beta, i):
        """<beta, alpha_i^vee>."""
        return sum(b * self.cartan_matrix[i][j] for j, b in enumerate(beta))

    def _form(self, a, b):
        """Symmetric invariant form (a, b), short roots squared length 2."""
        return sum(
            a[i] * b[j] * self.symmetrizer[i] * self.cartan_matrix[i][j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    def is_root(self, r):
        return tuple(r) in self._root_set

    def root_string(self, alpha, beta):
        """(p, q) with p = max{k : beta - k*alpha in Phi}, q likewise for +."""
        alpha, beta = tuple(alpha), tuple(beta)
        if alpha not in self._root_set or beta not in self._root_set:
            raise NotARoot(f"{alpha} or {beta} is not a root")
        if beta == alpha or beta == self._neg(alpha):
            raise NotARoot("root string undefined for beta = ±alpha")
        p = 0
        while self._sub(beta, alpha, p + 1) in self._root_set:
            p += 1
        q = 0
        while self._sub(beta, alpha, -(q + 1)) in self._root_set:
            q += 1
        return p, q

    # ------------------------------------------------------------------
    # structure constants

    def _chevalley_constants(self):
        """Full table N(a, b) over signed root pairs with a + b a root."""
        pos = self.positive_roots
        order = {r: i for i, r in enumerate(pos)}
        npos = {}

        def string_p(a, b):
            p = 0
            while self._sub(b, a, p + 1) in self._root_set:
                p += 1
            return p

        def n_mixed(x, y):
            # N(x, -y) for positive x, y with x - y a root; reduces to the
            # positive table via (a,b,c) relations for a + b + c = 0.
            delta = tuple(xi - yi for xi, yi in zip(x, y))
            if delta not in self._root_set:
                return 0
            if sum(delta) > 0:
                return Fraction(-self._form(delta, delta), self._form(x, x)) * npos[(y, delta)]
            dneg = self._neg(delta)
            return Fraction(self._form(dneg, dneg), self._form(y, y)) * npos[(dneg, x)]

        by_height = {}
        for gamma in pos:
            by_height.setdefault(sum(gamma), []).append(gamma)

        for h in sorted(by_height):
            if h < 2:
                continue
            for gamma in by_height[h]:
                special = []
                for a in pos:
                    if order[a] >= order.get(gamma, 10**9):
                        break
                    b = self._sub(gamma, a, 1)
                    if b in self._pos_index and order[a] < order[b]:
                        special.append((a, b))
                special.sort(key=lambda ab: order[ab[0]])
                if not special:
                    continue
                a1, b1 = special[0]
                n1 = string_p(a1, b1) + 1
                npos[(a1, b1)] = n1
                npos[(b1, a1)] = -n1
                lg = self._form(gamma, gamma)
                for a, b in special[1:]:
                    t2 = 0
                    if self._sub(b1, b, 1) in self._root_set:
                        t2 = Fraction(
                            n_mixed(b1, b) * n_mixed(a1, a),
                            self._form(self._sub(b1, b, 1), self._sub(b1, b, 1)),
                        )
                    t3 = 0
                    if self._sub(a1, b, 1) in self._root_set:
                        t3 = Fraction(
                            (-n_mixed(a1, b)) * n_mixed(b1, a),
                            self._form(self._sub(a1, b, 1), self._sub(a1, b, 1)),
                        )
                    val = Fraction(-lg, n1) * (t2 + t3)
                    if val.denominator != 1:
                        raise AssertionError("non-integral structure constant")
                    expected = string_p(a, b) + 1
                    if abs(int(val)) != expected:
                        raise AssertionError("|N| != p+1 during construction")
                    npos[(a, b)] = int(val)
                    npos[(b, a)] = -int(val)

        # extend to all signed pairs
        full = {}
        for (a, b), n in npos.items():
            full[(a, b)] = n
            full[(self._neg(a), self._neg(b))] = -n
        for x in pos:
            for y in pos:
                if x == y:
                    continue
                delta = tuple(xi - yi for xi, yi in zip(x, y))
                if delta in self._root_set:
                    n = n_mixed(x, y)
                    if Fraction(n).denominator != 1:
                        raise AssertionError("non-integral mixed constant")
                    full[(x, self._neg(y))] = int(n)
                    full[(self._neg(y), x)] = -int(n)
                    full[(self._neg(x), y)] = -int(n)
                    full[(y, self._neg(x))] = int(n)
        return full

    def _coroot(self, gamma):
        """Coroot of gamma as integer coefficients over h_1..h_rank."""
        lg = self._form(gamma, gamma)
        coeffs = []
        for i in range(self.rank):
            c = Fraction(2 * gamma[i] * self.symmetrizer[i], lg)
            if c.denominator != 1:
                raise AssertionError("non-integral coroot coefficient")
            coeffs.append(int(c))
        return tuple(coeffs)

    def coroot(self, gamma):
        return self._coroots[self._pos_index[tuple(gamma)]]

    # ------------------------------------------------------------------
    # brackets

    def _bracket_table(self):
        """Brackets of all pairs of basis symbols.

        Symbols: ("e", k) and ("f", k) for positive root index k, ("h", i)
        for Cartan index i.  Values are dicts symbol -> Fraction.
        """
        table = {}
        pos = self.positive_roots

        def put(s1, s2, val):
            val = {k: v for k, v in val.items() if v != 0}
            table[(s1, s2)] = val
            table[(s2, s1)] = {k: -v for k, v in val.items()}

        for i in range(self.rank):
            for j in range(i, self.rank):
                put(("h", i), ("h", j), {})
        for k, gamma in enumerate(pos):
            for i in range(self.rank):
                c = Fraction(self._pairing(gamma, i))
                put(("h", i), ("e", k), {("e", k): c})
                put(("h", i), ("f", k), {("f", k): -c})
        for k, gamma in enumerate(pos):
            hco = self._coroots[k]
            put(("e", k), ("f", k), {("h", i): Fraction(c) for i, c in enumerate(hco)})
        for ka, a in enumerate(pos):
            for kb, b in enumerate(pos):
                s = tuple(x + y for x, y in zip(a, b))
                if s in self._pos_index:
                    n = Fraction(self.structure_constants[(a, b)])
                    ks = self._pos_index[s]
                    if (("e", ka), ("e", kb)) not in table:
                        put(("e", ka), ("e", kb), {("e", ks): n})
                    # [f_a, f_b] = N(-a,-b) f_{a+b} = -N(a,b) f_{a+b}
                    if (("f", ka), ("f", kb)) not in table:
                        put(("f", ka), ("f", kb), {("f", ks): -n})
                elif (("e", ka), ("e", kb)) not in table and ka != kb:
                    put(("e", ka), ("e", kb), {})
                    put(("f", ka), ("f", kb), {})
                if ka == kb:
                    continue
                d = tuple(x - y for x, y in zip(a, b))
                if d in self._root_set:
                    n = Fraction(self.structure_constants[(a, self._neg(b))])
                    if sum(d) > 0:
                        val = {("e", self._pos_index[d]): n}
                    else:
                        val = {("f", self._pos_index[self._neg(d)]): n}
                    if (("e", ka), ("f", kb)) not in table:
                        put(("e", ka), ("f", kb), val)
                elif (("e", ka), ("f", kb)) not in table:
                    put(("e", ka), ("f", kb), {})
        for k in range(len(pos)):
            put(("e", k), ("e", k), {})
            put(("f", k), ("f", k), {})
        return table

    def bracket_symbols(self, s1, s2):
        """[s1, s2] as a dict of basis symbols to Fractions."""
        return self._pair_brackets[(s1, s2)]

    def basis_symbols(self):
        """All basis symbols in f-block, h-block, e-block order."""
        fs = [("f", k) for k in range(len(self.positive_roots))]
        hs = [("h", i) for i in range(self.rank)]
        es = [("e", k) for k in range(len(self.positive_roots))]
        return fs + hs + es

    def pos_index(self, gamma):
        gamma = tuple(gamma)
        if gamma not in self._pos_index:
            raise NotARoot(f"{gamma} is not a positive root")
        return self._pos_index[gamma]

    def simple_root(self, i):
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def __eq__(self, other):
        return (
            isinstance(other, RootSystem)
            and self.type_label == other.type_label
            and self.rank == other.rank
        )

    def __hash__(self):
        return hash((self.type_label, self.rank))

    def __repr__(self):
        return f"RootSystem({self.type_label}{self.rank})"

    # ------------------------------------------------------------------
    # serialization

    def to_json_dict(self):
        """JSON document for the CLI ``roots`` command.

        Structure constants are triples [i, j, N] with 1-based signed root
        indices: +k for the k-th positive root, -k for its negative.
        """
        def signed_index(r):
            if r in self._pos_index:
                return self._pos_index[r] + 1
            return -(self._pos_index[self._neg(r)] + 1)

        triples = sorted(
            [signed_index(a), signed_index(b), n]
            for (a, b), n in self.structure_constants.items()
        )
        return {
            "schema_version": 1,
            "type": self.type_label,
            "rank": self.rank,
            "cartan_matrix": self.cartan_matrix,
            "positive_roots": [list(r) for r in self.positive_roots],
            "structure_constants": triples,
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def build_root_system(type_label, rank):
    return RootSystem(type_label, rank)


class LieElement:
    """Exact rational linear combination of Chevalley basis symbols."""

    __slots__ = ("rs", "coefficients")

    def __init__(self, rs, coefficients=None):
        self.rs = rs
        self.coefficients = {
            k: Fraction(v) for k, v in (coefficients or {}).items() if v != 0
        }

    @classmethod
    def basis(cls, rs, symbol):
        return cls(rs, {symbol: Fraction(1)})

    def __add__(self, other):
        self._check(other)
        out = dict(self.coefficients)
        for k, v in other.coefficients.items():
            out[k] = out.get(k, Fraction(0)) + v
        return LieElement(self.rs, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return LieElement(self.rs, {k: v * Fraction(c) for k, v in self.coefficients.items()})

    def __eq__(self, other):
        return (
            isinstance(other, LieElement)
            and self.rs == other.rs
            and self.coefficients == other.coefficients
        )

    def is_zero(self):
        return not self.coefficients

    def _check(self, other):
        if self.rs != other.rs:
            raise MixedRootSystem("elements come from different root systems")

    def __repr__(self):
        if not self.coefficients:
            return "LieElement(0)"
        parts = [f"{v}*{s[0]}{s[1]}" for s, v in sorted(self.coefficients.items())]
        return "LieElement(" + " + ".join(parts) + ")"


def bracket(x, y):
    """Lie bracket of two LieElements over the same root system."""
    if x.rs != y.rs:
        raise MixedRootSystem("operands come from different root systems")
    out = {}
    for s1, c1 in x.coefficients.items():
        for s2, c2 in y.coefficients.items():
            for s3, c3 in x.rs.bracket_symbols(s1, s2).items():
                out[s3] = out.get(s3, Fraction(0)) + c1 * c2 * c3
    return LieElement(x.rs, out)


def root_string(rs, alpha, beta):
    return rs.root_string(alpha, beta)
