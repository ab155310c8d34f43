"""Whittaker characters and the parabolic decomposition they induce.

Given psi on the nilradical, the support (simple roots where psi is
nonzero) determines a Levi subalgebra l, its centre z inside the Cartan,
and the splitting of g into mbar + l + m.  z-weights of induced modules
live on a canonical integer basis of z.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import DimensionMismatch
from .linalg import normalize_primitive, nullspace, rref, solve_exact
from .rootsystem import RootSystem


@dataclass(frozen=True)
class WhittakerCharacter:
    """psi on n, determined by its values on simple root vectors."""

    rs: RootSystem
    values: tuple  # Fractions, one per simple root

    @classmethod
    def from_values(cls, rs, values):
        vals = tuple(Fraction(v) for v in values)
        if len(vals) != rs.rank:
            raise DimensionMismatch("psi needs one value per simple root")
        return cls(rs, vals)

    @classmethod
    def zero(cls, rs):
        return cls(rs, tuple(Fraction(0) for _ in range(rs.rank)))

    def support(self):
        """Delta_psi as a tuple of simple-root indices."""
        return tuple(i for i, v in enumerate(self.values) if v != 0)

    def is_nonsingular(self):
        return len(self.support()) == self.rs.rank

    def value_on_positive_root(self, k):
        """psi(e_gamma) for the k-th positive root; zero off the simple support."""
        gamma = self.rs.positive_roots[k]
        if sum(gamma) != 1:
            return Fraction(0)
        return self.values[gamma.index(1)]


class ParabolicData:
    """Derived decomposition data for a Whittaker character."""

    def __init__(self, psi: WhittakerCharacter):
        self.psi = psi
        self.rs = psi.rs
        rs = self.rs
        self.support = psi.support()
        support_set = set(self.support)
        # positive roots supported only on Delta_psi
        self.levi_roots = tuple(
            k for k, gamma in enumerate(rs.positive_roots)
            if all(c == 0 or i in support_set for i, c in enumerate(gamma))
        )
        self.m_roots = tuple(
            k for k in range(len(rs.positive_roots)) if k not in self.levi_roots
        )
        self.mbar_roots = self.m_roots  # negatives of m_roots, same indices
        # centre of l: {h : alpha(h) = 0 for alpha in Delta_psi}
        constraint_rows = [
            [Fraction(rs.cartan_matrix[j][i]) for j in range(rs.rank)]
            for i in self.support
        ]
        self.centre_basis = tuple(nullspace(constraint_rows, rs.rank))
        self._restriction_cache = {}

    def centre_dim(self):
        return len(self.centre_basis)

    def restrict_root(self, gamma):
        """gamma restricted to z: values on the centre basis."""
        gamma = tuple(gamma)
        hit = self._restriction_cache.get(gamma)
        if hit is None:
            rs = self.rs
            hit = tuple(
                sum(
                    Fraction(gamma[i]) * z[j] * rs.cartan_matrix[j][i]
                    for i in range(rs.rank)
                    for j in range(rs.rank)
                )
                for z in self.centre_basis
            )
            self._restriction_cache[gamma] = hit
        return hit

    def restriction_generators(self):
        """Restrictions of the non-support simple roots, in index order."""
        return [
            (j, self.restrict_root(self.rs.simple_root(j)))
            for j in range(self.rs.rank)
            if j not in self.support
        ]

    def generators_independent(self):
        """Whether the restriction generators are linearly independent.

        When they are, the partial order on z-weights is decided by a
        unique linear solve; otherwise bounded enumeration is used.
        """
        gens = [list(g) for _, g in self.restriction_generators()]
        if not gens:
            return True
        _, pivots = rref([[gens[g][k] for g in range(len(gens))] for k in range(self.centre_dim())])
        return len(pivots) == len(gens)

    def positive_functional_coords(self):
        """h* = sum of non-support fundamental coweights, in z coordinates.

        Every restriction generator evaluates to 1 on h*, which bounds the
        total degree in cone-membership checks.
        """
        rs = self.rs
        # alpha_i(sum_j c_j h_j) = sum_j c_j M[j][i]
        mat = [[Fraction(rs.cartan_matrix[j][i]) for j in range(rs.rank)] for i in range(rs.rank)]
        rhs = [Fraction(0) if i in self.support else Fraction(1) for i in range(rs.rank)]
        hstar = solve_exact(mat, rhs)
        # express h* in the centre basis
        zmat = [[self.centre_basis[k][j] for k in range(self.centre_dim())] for j in range(rs.rank)]
        coords = solve_exact(zmat, hstar)
        if coords is None:
            raise DimensionMismatch("h* does not lie in the centre")
        return tuple(coords)

    def depth_weight(self, gamma):
        """Integer weight of an mbar generator: non-support coordinate sum."""
        return sum(c for i, c in enumerate(gamma) if i not in self.support)

    def __repr__(self):
        return f"ParabolicData(support={self.support}, dim z={self.centre_dim()})"


def parabolic_data(psi: WhittakerCharacter, rs: RootSystem = None) -> ParabolicData:
    if rs is not None and rs != psi.rs:
        raise DimensionMismatch("psi was built over a different root system")
    return ParabolicData(psi)


@dataclass(frozen=True)
class ZWeight:
    """Rational coordinates on the centre basis of a ParabolicData."""

    coordinates: tuple

    def __sub__(self, other):
        if len(self.coordinates) != len(other.coordinates):
            raise DimensionMismatch("weights live on different centre bases")
        return ZWeight(tuple(a - b for a, b in zip(self.coordinates, other.coordinates)))


def zweight_leq(eta: ZWeight, mu: ZWeight, parab: ParabolicData) -> bool:
    """eta ⪯ mu: mu - eta lies in the Z+-cone of restricted non-support simple roots."""
    if len(eta.coordinates) != len(mu.coordinates):
        raise DimensionMismatch("weights live on different centre bases")
    if len(eta.coordinates) != parab.centre_dim():
        raise DimensionMismatch("weights do not match the centre basis")
    tau = tuple(m - e for e, m in zip(eta.coordinates, mu.coordinates))
    if all(t == 0 for t in tau):
        return True
    gens = [g for _, g in parab.restriction_generators()]
    if not gens:
        return False
    # total degree is pinned by the positive functional h*
    hstar = parab.positive_functional_coords()
    total = sum(u * t for u, t in zip(hstar, tau))
    if total.denominator != 1 or total < 0:
        return False
    total = int(total)
    dim = parab.centre_dim()
    if parab.generators_independent():
        mat = [[gens[g][k] for g in range(len(gens))] for k in range(dim)]
        sol = solve_exact(mat, list(tau))
        if sol is None:
            return False
        # check consistency (solve_exact zeroes free vars; none here)
        for k in range(dim):
            if sum(mat[k][g] * sol[g] for g in range(len(gens))) != tau[k]:
                return False
        return all(x.denominator == 1 and x >= 0 for x in sol)
    # bounded enumeration over coefficient vectors of total degree `total`
    def search(idx, remaining, acc):
        if idx == len(gens) - 1:
            n = remaining
            return all(
                acc[k] + n * gens[idx][k] == tau[k] for k in range(dim)
            )
        for n in range(remaining + 1):
            nxt = tuple(acc[k] + n * gens[idx][k] for k in range(dim))
            if search(idx + 1, remaining - n, nxt):
                return True
        return False

    return search(0, total, tuple(Fraction(0) for _ in range(dim)))


@dataclass(frozen=True)
class CentralCharacter:
    """Omega for a McDowell family: restriction to z plus factor Casimir scalars."""

    centre_weight: tuple  # Fractions on the centre basis
    casimir_scalars: tuple  # (simple_index, Fraction) pairs, sorted

    @classmethod
    def build(cls, parab: ParabolicData, centre_weight, casimirs):
        cw = tuple(Fraction(v) for v in centre_weight)
        if len(cw) != parab.centre_dim():
            raise DimensionMismatch("centre weight does not match the centre basis")
        cas = tuple(sorted((int(i), Fraction(c)) for i, c in dict(casimirs).items()))
        if tuple(i for i, _ in cas) != tuple(parab.support):
            raise DimensionMismatch("need exactly one Casimir scalar per support root")
        return cls(cw, cas)

    def casimir(self, simple_index):
        for i, c in self.casimir_scalars:
            if i == simple_index:
                return c
        raise KeyError(simple_index)
