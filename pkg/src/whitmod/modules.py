"""Module presentations with confluent reduction onto a normal-form basis.

All supported families are instances of one induction engine: a cyclic
vector v with e_gamma v = psi(e_gamma) v, z v = Omega_bar(z) v on the
centre, and per support factor the Casimir reduction
h^2 v = (2c - 2h - 4 psi f) v.  A basis monomial is

    prod_{gamma in mbar} f_gamma^{b} * prod_{alpha in support} f_alpha^{a} h_alpha^{eps} * v

with eps in {0, 1}.  Verma modules are the psi = 0 instance (the Y-part is
one-dimensional and Omega_bar is the highest weight); the universal sl2
module is the full-support rank-1 instance.  The action reuses PBW
straightening in an order adapted to the basis (mbar f's, support f's,
h's, e's).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    DimensionMismatch,
    InvalidParams,
    MixedRootSystem,
    NonOrthogonalSupport,
    NotGraded,
    NotInNilradical,
)
from .parabolic import (
    CentralCharacter,
    ParabolicData,
    WhittakerCharacter,
    ZWeight,
)
from .pbw import Algebra, UEAElement
from .rootsystem import LieElement, RootSystem

NOT_FOUND = object()

# straightening caches are expensive to warm; presentations over the same
# root system and symbol order share one Algebra (results are cache-independent)
_ALGEBRA_POOL = {}


def _shared_algebra(rs, order):
    key = (rs.type_label, rs.rank, tuple(order))
    alg = _ALGEBRA_POOL.get(key)
    if alg is None:
        alg = Algebra(rs, order)
        _ALGEBRA_POOL[key] = alg
    return alg


class InducedPresentation:
    """McDowell-type induced module (covers Verma and universal sl2)."""

    def __init__(self, family, psi: WhittakerCharacter, central: CentralCharacter):
        rs = psi.rs
        self.family = family
        self.rs = rs
        self.psi = psi
        self.parabolic = ParabolicData(psi)
        parab = self.parabolic
        support = parab.support
        # supported scope: pairwise orthogonal support roots
        for a in support:
            for b in support:
                if a != b and rs.cartan_matrix[a][b] != 0:
                    raise NonOrthogonalSupport(
                        f"support roots {a} and {b} are adjacent; only pairwise "
                        "orthogonal Whittaker supports are implemented"
                    )
        self.central = central
        self.support = support
        self.mbar = parab.m_roots  # positive-root indices; basis uses f_gamma
        # adapted PBW order: mbar f's, support f's, h's, e's
        order = (
            [("f", k) for k in self.mbar]
            + [("f", rs.pos_index(rs.simple_root(i))) for i in support]
            + [("h", i) for i in range(rs.rank)]
            + [("e", k) for k in range(len(rs.positive_roots))]
        )
        # f's of non-simple levi roots cannot occur (orthogonal support),
        # but the algebra needs a total order on every symbol
        missing = [s for s in rs.basis_symbols() if s not in set(order)]
        order = order + missing
        self.algebra = _shared_algebra(rs, order)
        self._h_expansion = self._build_h_expansion()
        self._psi_on_pos = [psi.value_on_positive_root(k) for k in range(len(rs.positive_roots))]
        self._act_cache = {}
        self._factor_pow_cache = {}

    # ------------------------------------------------------------------

    def _build_h_expansion(self):
        """h_i = sum_a c_a h_{support a} + (scalar from Omega_bar on z)."""
        rs = self.rs
        parab = self.parabolic
        n = rs.rank
        cols = [
            tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))
            for i in self.support
        ] + [tuple(z) for z in parab.centre_basis]
        from .linalg import solve_exact

        expansion = []
        for i in range(n):
            rhs = [Fraction(1) if j == i else Fraction(0) for j in range(n)]
            mat = [[cols[c][j] for c in range(len(cols))] for j in range(n)]
            sol = solve_exact(mat, rhs)
            if sol is None:
                raise InvalidParams("Cartan basis change failed")
            supp_part = tuple(sol[: len(self.support)])
            z_coords = sol[len(self.support):]
            scalar = sum(
                z_coords[k] * self.central.centre_weight[k]
                for k in range(len(z_coords))
            )
            expansion.append((supp_part, Fraction(scalar)))
        return expansion

    def cyclic_vector(self):
        mono = (
            tuple(0 for _ in self.mbar),
            tuple((0, 0) for _ in self.support),
        )
        return ModuleElement(self, {mono: Fraction(1)})

    def is_graded(self):
        return self.parabolic.centre_dim() > 0

    def omega_bar(self):
        return ZWeight(tuple(self.central.centre_weight))

    def z_weight_of(self, mono):
        """z-weight of a basis monomial: Omega_bar minus the mbar drop."""
        if not self.is_graded():
            raise NotGraded("the centre of the Levi is trivial; no z-grading")
        parab = self.parabolic
        coords = list(self.central.centre_weight)
        bexps, _ = mono
        for pos, k in enumerate(self.mbar):
            b = bexps[pos]
            if b:
                rest = parab.restrict_root(self.rs.positive_roots[k])
                coords = [c - b * r for c, r in zip(coords, rest)]
        return ZWeight(tuple(coords))

    def depth_of(self, mono):
        """Weighted total mbar exponent (restriction-coordinate weights)."""
        bexps, _ = mono
        return sum(
            b * self.parabolic.depth_weight(self.rs.positive_roots[k])
            for b, k in zip(bexps, self.mbar)
        )

    # ------------------------------------------------------------------
    # reduction

    def _mono_word(self, mono):
        """Adapted-order symbol-id word of a basis monomial."""
        alg = self.algebra
        rs = self.rs
        bexps, factors = mono
        word = []
        for b, k in zip(bexps, self.mbar):
            word.extend([alg.index[("f", k)]] * b)
        for (a, eps), i in zip(factors, self.support):
            word.extend([alg.index[("f", rs.pos_index(rs.simple_root(i)))]] * a)
        for (a, eps), i in zip(factors, self.support):
            if eps:
                word.append(alg.index[("h", i)])
        return tuple(word)

    def _factor_h_power(self, support_pos, power):
        """Reduce h_alpha^power v in a single support factor.

        Returns list of (coeff, a, eps); uses h^2 v = (2c - 2h - 4 psi f) v
        and h f^a = f^a (h - 2a).
        """
        key = (support_pos, power)
        hit = self._factor_pow_cache.get(key)
        if hit is not None:
            return hit
        i = self.support[support_pos]
        c = self.central.casimir(i)
        psival = self.psi.values[i]
        if power == 0:
            out = {(0, 0): Fraction(1)}
        elif power == 1:
            out = {(0, 1): Fraction(1)}
        else:
            prev = self._factor_h_power(support_pos, power - 1)
            out = {}

            def add(state, coeff):
                out[state] = out.get(state, Fraction(0)) + coeff

            for (a, eps), coeff in prev:
                # apply h on the left: h f^a h^eps v = f^a (h - 2a) h^eps v
                if eps == 0:
                    add((a, 1), coeff)
                    add((a, 0), -2 * a * coeff)
                else:
                    # f^a h^2 v = f^a (2c - 2h - 4 psi f) v
                    add((a, 0), 2 * c * coeff)
                    add((a, 1), -2 * coeff)
                    add((a + 1, 0), -4 * psival * coeff)
                    add((a, 1), -2 * a * coeff)
        result = tuple(
            ((a, eps), coeff) for (a, eps), coeff in sorted(out.items()) if coeff != 0
        )
        self._factor_pow_cache[key] = result
        return result

    def _reduce_pbw_mono(self, pbw_mono):
        """Image of (adapted PBW monomial) * v in the normal-form basis."""
        alg = self.algebra
        rs = self.rs
        nsupp = len(self.support)
        support_pos = {i: p for p, i in enumerate(self.support)}
        mbar_pos = {k: p for p, k in enumerate(self.mbar)}
        bexps = [0] * len(self.mbar)
        supp_f = [0] * nsupp
        h_counts = [0] * rs.rank
        scalar = Fraction(1)
        for sid in pbw_mono:
            kind, idx = alg.symbols[sid]
            if kind == "f":
                if idx in mbar_pos:
                    bexps[mbar_pos[idx]] += 1
                else:
                    gamma = rs.positive_roots[idx]
                    if sum(gamma) != 1:
                        raise InvalidParams("unexpected levi f symbol in reduction")
                    supp_f[support_pos[gamma.index(1)]] += 1
            elif kind == "h":
                h_counts[idx] += 1
            else:  # e acts on v by psi
                scalar *= self._psi_on_pos[idx]
                if scalar == 0:
                    return {}
        # expand the commuting h-part into support variables plus scalars
        # poly: dict (powers per support factor) -> Fraction
        poly = {tuple(0 for _ in range(nsupp)): scalar}
        for i in range(rs.rank):
            supp_part, const = self._h_expansion[i]
            for _ in range(h_counts[i]):
                new = {}
                for powers, coeff in poly.items():
                    if const != 0:
                        key = powers
                        new[key] = new.get(key, Fraction(0)) + coeff * const
                    for p, cpa in enumerate(supp_part):
                        if cpa != 0:
                            key = tuple(
                                q + 1 if t == p else q for t, q in enumerate(powers)
                            )
                            new[key] = new.get(key, Fraction(0)) + coeff * cpa
                poly = new
        out = {}
        for powers, coeff in poly.items():
            if coeff == 0:
                continue
            # independent support factors: combine reduced states
            states = [((), Fraction(1))]
            for p in range(nsupp):
                reduced = self._factor_h_power(p, powers[p])
                states = [
                    (acc + ((a + supp_f[p], eps),), c0 * c1)
                    for acc, c0 in states
                    for (a, eps), c1 in reduced
                ]
            for factors, c0 in states:
                mono = (tuple(bexps), factors)
                out[mono] = out.get(mono, Fraction(0)) + coeff * c0
        return {m: c for m, c in out.items() if c != 0}

    def act_symbol(self, symbol, mono):
        """Left action of one basis symbol on a basis monomial."""
        sid = self.algebra.index[symbol]
        key = (sid, mono)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        word = (sid,) + self._mono_word(mono)
        terms = {(): Fraction(1)}
        for s in reversed(word):
            terms = self.algebra._sym_times_terms(s, terms)
        out = {}
        for pbw_mono, c in terms.items():
            for m2, c2 in self._reduce_pbw_mono(pbw_mono).items():
                out[m2] = out.get(m2, Fraction(0)) + c * c2
        out = {m: c for m, c in out.items() if c != 0}
        self._act_cache[key] = out
        return out

    # ------------------------------------------------------------------

    def descriptor(self):
        doc = {
            "family": self.family,
            "root_system": {"type": self.rs.type_label, "rank": self.rs.rank},
            "psi": [str(v) for v in self.psi.values],
        }
        if self.family == "verma":
            doc["lambda"] = [str(v) for v in self.central.centre_weight]
        else:
            doc["omega"] = [str(v) for v in self.central.centre_weight]
            doc["casimirs"] = {str(i): str(c) for i, c in self.central.casimir_scalars}
        return doc

    def mono_json(self, mono):
        bexps, factors = mono
        return {"mbar": list(bexps), "factors": [list(t) for t in factors]}

    def __repr__(self):
        return f"<{self.family} over {self.rs!r}>"


class DirectSumPresentation:
    """Finite direct sum of presentations over one root system and character."""

    def __init__(self, components):
        if not components:
            raise InvalidParams("a direct sum needs at least one component")
        rs = components[0].rs
        psi = components[0].psi
        for comp in components[1:]:
            if comp.rs != rs:
                raise MixedRootSystem("direct-sum components over different root systems")
            if comp.psi.values != psi.values:
                raise InvalidParams("direct-sum components must share one Whittaker character")
        self.family = "direct_sum"
        self.components = list(components)
        self.rs = rs
        self.psi = psi
        self.parabolic = components[0].parabolic

    def cyclic_vector(self):
        # cyclic over the sum of the component cyclic vectors
        terms = {}
        for ci, comp in enumerate(self.components):
            for m, c in comp.cyclic_vector().terms.items():
                terms[(ci, m)] = c
        return ModuleElement(self, terms)

    def is_graded(self):
        return all(c.is_graded() for c in self.components)

    def z_weight_of(self, mono):
        ci, inner = mono
        return self.components[ci].z_weight_of(inner)

    def act_symbol(self, symbol, mono):
        ci, inner = mono
        return {
            (ci, m): c
            for m, c in self.components[ci].act_symbol(symbol, inner).items()
        }

    def descriptor(self):
        return {
            "family": "direct_sum",
            "components": [c.descriptor() for c in self.components],
        }

    def mono_json(self, mono):
        ci, inner = mono
        doc = self.components[ci].mono_json(inner)
        doc["component"] = ci
        return doc

    def __repr__(self):
        return f"<direct_sum of {len(self.components)} over {self.rs!r}>"


class ModuleElement:
    """Exact linear combination of normal-form basis monomials."""

    __slots__ = ("presentation", "terms")

    def __init__(self, presentation, terms=None):
        self.presentation = presentation
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c != 0}

    def __add__(self, other):
        if self.presentation is not other.presentation:
            raise MixedRootSystem("elements belong to different presentations")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return ModuleElement(self.presentation, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return ModuleElement(self.presentation, {m: v * c for m, v in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, ModuleElement)
            and self.presentation is other.presentation
            and self.terms == other.terms
        )

    def is_zero(self):
        return not self.terms

    def to_json(self):
        return [
            [self.presentation.mono_json(m), str(c)]
            for m, c in sorted(self.terms.items())
        ]

    def __repr__(self):
        return f"ModuleElement({len(self.terms)} terms)"


# ----------------------------------------------------------------------
# actions


def act(u, w: ModuleElement) -> ModuleElement:
    """Module action of a UEAElement or LieElement on a module element."""
    pres = w.presentation
    if isinstance(u, LieElement):
        if u.rs != pres.rs:
            raise MixedRootSystem("operand over a different root system")
        out = {}
        for sym, c in u.coefficients.items():
            for m, wc in w.terms.items():
                for m2, c2 in pres.act_symbol(sym, m).items():
                    out[m2] = out.get(m2, Fraction(0)) + c * wc * c2
        return ModuleElement(pres, out)
    if isinstance(u, UEAElement):
        if u.algebra.rs != pres.rs:
            raise MixedRootSystem("operand over a different root system")
        out = {}
        for mono, c in u.terms.items():
            word = [u.algebra.symbols[sid] for sid in mono]
            cur = dict(w.terms)
            for sym in reversed(word):
                nxt = {}
                for m, wc in cur.items():
                    for m2, c2 in pres.act_symbol(sym, m).items():
                        nxt[m2] = nxt.get(m2, Fraction(0)) + wc * c2
                cur = nxt
            for m, wc in cur.items():
                out[m] = out.get(m, Fraction(0)) + c * wc
        return ModuleElement(pres, out)
    raise InvalidParams(f"cannot act by {type(u).__name__}")


def psi_value(psi: WhittakerCharacter, x: LieElement) -> Fraction:
    """psi extended linearly to n; raises if x leaves the nilradical."""
    total = Fraction(0)
    for (kind, idx), c in x.coefficients.items():
        if kind != "e":
            raise NotInNilradical("bullet operands must lie in the nilradical")
        total += c * psi.value_on_positive_root(idx)
    return total


def bullet(x: LieElement, w: ModuleElement) -> ModuleElement:
    """x • w = x w - psi(x) w."""
    psi = w.presentation.psi
    val = psi_value(psi, x)
    return act(x, w) - w.scale(val)


def bullet_depth(w: ModuleElement, k_max: int):
    """Least k with every (k+1)-fold bullet word in the simple generators
    annihilating w, or NOT_FOUND.  Simple-root generators suffice because
    psi is a homomorphism and n is generated by the simple root spaces."""
    rs = w.presentation.rs
    gens = [
        LieElement.basis(rs, ("e", rs.pos_index(rs.simple_root(i))))
        for i in range(rs.rank)
    ]
    layer = [w]
    for k in range(k_max + 1):
        nxt = []
        for elem in layer:
            for g in gens:
                image = bullet(g, elem)
                if not image.is_zero():
                    nxt.append(image)
        if not nxt:
            return k
        layer = nxt
    return NOT_FOUND


# ----------------------------------------------------------------------
# factory


def build_module(family, rs: RootSystem, **params):
    """Construct a module presentation.

    verma: lam=[rationals per h_i]  (psi = 0)
    mcdowell: psi=[...], omega=[...], casimirs={simple index: rational}
    universal_sl2: eta=rational (nonzero), c=rational  (rank-1 only)
    direct_sum: components=[presentations]
    """
    if family == "verma":
        lam = params.get("lam")
        if lam is None or len(lam) != rs.rank:
            raise InvalidParams("verma requires lam with one value per h_i")
        psi = WhittakerCharacter.zero(rs)
        parab = ParabolicData(psi)
        # centre basis is the standard h_i basis when psi = 0
        central = CentralCharacter.build(parab, [Fraction(v) for v in lam], {})
        return InducedPresentation("verma", psi, central)
    if family == "mcdowell":
        psi = WhittakerCharacter.from_values(rs, params["psi"])
        parab = ParabolicData(psi)
        central = CentralCharacter.build(
            parab, params.get("omega", []), params.get("casimirs", {})
        )
        return InducedPresentation("mcdowell", psi, central)
    if family == "universal_sl2":
        if rs.rank != 1:
            raise InvalidParams("universal_sl2 requires the rank-1 system")
        eta = Fraction(params["eta"])
        if eta == 0:
            raise InvalidParams("universal_sl2 requires a nonzero eta")
        psi = WhittakerCharacter.from_values(rs, [eta])
        parab = ParabolicData(psi)
        central = CentralCharacter.build(parab, [], {0: Fraction(params["c"])})
        return InducedPresentation("universal_sl2", psi, central)
    if family == "direct_sum":
        return DirectSumPresentation(params["components"])
    raise InvalidParams(f"unknown family {family!r}")
