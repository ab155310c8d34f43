"""Whittaker-vector solver and certification harness.

The solver assembles, per z-weight block, the exact linear system
(e_alpha - psi_alpha) w = 0 over a finite truncated basis.  Operator images
are computed with the untruncated module action, and every image monomial
(including ones outside the truncated basis) contributes a vanishing
equation, so each nullspace vector is an exact Whittaker vector with no
truncation caveat; truncation only limits which vectors can be found.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import InvalidParams, UnknownLength
from .linalg import nullspace
from .modules import DirectSumPresentation, ModuleElement, bullet
from .rootsystem import LieElement

REPORT_SCHEMA_VERSION = 1

VERDICT_SIMPLE = "SIMPLE_UPTO"
VERDICT_NOT_SIMPLE = "NOT_SIMPLE"
VERDICT_INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Truncation:
    """Finite window: depth D over mbar, factor degree K, slack K + (D - d)."""

    depth: int
    factor_deg: int
    window: int = 3

    def grown(self, j):
        return Truncation(self.depth + j, self.factor_deg + j, self.window)

    def to_json(self):
        return {"depth": self.depth, "factor_deg": self.factor_deg, "window": self.window}


@dataclass
class WhittakerReport:
    presentation: object
    truncation: Truncation
    exact_vectors: list
    dim_lower_bound: int
    stabilized: bool
    verdict: str
    per_weight: list  # (weight coords tuple or None, dim)
    basis_size: int

    def witnesses(self):
        """Whittaker vectors beyond the cyclic one (NotSimple evidence)."""
        if self.verdict != VERDICT_NOT_SIMPLE:
            return []
        v = self.presentation.cyclic_vector()
        out = []
        for w in self.exact_vectors:
            if not _proportional(w, v):
                out.append(w)
        return out

    def to_json(self):
        per_weight = [
            {
                "weight": None if wt is None else [str(c) for c in wt],
                "dim": d,
            }
            for wt, d in self.per_weight
        ]
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "module": self.presentation.descriptor(),
            "psi": [str(v) for v in self.presentation.psi.values],
            "omega": self._omega_json(),
            "truncation": self.truncation.to_json(),
            "basis_size": self.basis_size,
            "dim_lower_bound": self.dim_lower_bound,
            "stabilized": self.stabilized,
            "verdict": self.verdict,
            "witnesses": [w.to_json() for w in self.witnesses()],
            "per_weight": per_weight,
        }

    def _omega_json(self):
        pres = self.presentation
        if isinstance(pres, DirectSumPresentation):
            return None
        return [str(v) for v in pres.central.centre_weight]


def _proportional(a: ModuleElement, b: ModuleElement):
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    if set(a.terms) != set(b.terms):
        return False
    mono = next(iter(a.terms))
    ratio = a.terms[mono] / b.terms[mono]
    return all(a.terms[m] == ratio * b.terms[m] for m in a.terms)


# ----------------------------------------------------------------------
# truncated bases


def _induced_truncated_basis(pres, trunc: Truncation):
    """Basis monomials with weighted mbar depth <= D and slack-bounded factors."""
    rs = pres.rs
    weights = [
        pres.parabolic.depth_weight(rs.positive_roots[k]) for k in pres.mbar
    ]
    out = []

    def mbar_tuples(pos, remaining, acc):
        if pos == len(weights):
            yield tuple(acc)
            return
        w = weights[pos]
        limit = remaining // w if w > 0 else 0
        for b in range(limit + 1):
            acc.append(b)
            yield from mbar_tuples(pos + 1, remaining - b * w, acc)
            acc.pop()

    for bexps in mbar_tuples(0, trunc.depth, []):
        depth = sum(b * w for b, w in zip(bexps, weights))
        k_bound = trunc.factor_deg + (trunc.depth - depth)
        factor_ranges = [
            [(a, eps) for a in range(k_bound + 1) for eps in (0, 1)]
            for _ in pres.support
        ]
        for factors in product(*factor_ranges):
            out.append((bexps, tuple(factors)))
    out.sort()
    return out


def truncated_basis(pres, trunc: Truncation):
    if isinstance(pres, DirectSumPresentation):
        out = []
        for ci, comp in enumerate(pres.components):
            out.extend((ci, m) for m in _induced_truncated_basis(comp, trunc))
        return out
    return _induced_truncated_basis(pres, trunc)


# ----------------------------------------------------------------------
# nullspace per z-weight block


def _simple_generators(rs):
    return [
        (i, LieElement.basis(rs, ("e", rs.pos_index(rs.simple_root(i)))))
        for i in range(rs.rank)
    ]


def _solve_once(pres, trunc: Truncation):
    """(vectors, per_weight, basis_size) at one truncation, exact."""
    basis = truncated_basis(pres, trunc)
    gens = _simple_generators(pres.rs)
    graded = pres.is_graded()
    blocks = {}
    if graded:
        for mono in basis:
            key = pres.z_weight_of(mono).coordinates
            blocks.setdefault(key, []).append(mono)
    else:
        blocks[None] = list(basis)
    vectors = []
    per_weight = []
    for key in sorted(blocks, key=lambda k: (k is None, k), reverse=True):
        block = blocks[key]
        col_of = {m: j for j, m in enumerate(block)}
        images = {}
        for i, gen in gens:
            for mono in block:
                one = ModuleElement(pres, {mono: Fraction(1)})
                img = bullet(gen, one)
                for m2, c in img.terms.items():
                    row = images.setdefault((i, m2), {})
                    row[col_of[mono]] = c
        row_keys = sorted(images, key=lambda k: (k[0], repr(k[1])))
        rows = [images[rk] for rk in row_keys]
        for vec in nullspace(rows, len(block)):
            elem = ModuleElement(
                pres, {block[j]: vec[j] for j in range(len(block)) if vec[j] != 0}
            )
            vectors.append(elem)
        dim_here = sum(
            1 for v in vectors if graded and _block_key(pres, v) == key
        ) if graded else len(vectors)
        per_weight.append((key, dim_here))
    return vectors, per_weight, len(basis)


def _block_key(pres, elem):
    mono = next(iter(elem.terms))
    return pres.z_weight_of(mono).coordinates


def whittaker_vectors(pres, trunc: Truncation) -> WhittakerReport:
    """Exact Whittaker vectors in the truncated window, with stabilization.

    Runs the solve at ``window`` consecutive truncation sizes; the reported
    vectors come from the base truncation and every one is re-verified with
    the exact, untruncated action.
    """
    dims = []
    base = None
    for j in range(max(1, trunc.window)):
        vectors, per_weight, basis_size = _solve_once(pres, trunc.grown(j))
        dims.append(len(vectors))
        if j == 0:
            base = (vectors, per_weight, basis_size)
    vectors, per_weight, basis_size = base
    gens = _simple_generators(pres.rs)
    for w in vectors:
        for _, gen in gens:
            if not bullet(gen, w).is_zero():
                raise AssertionError("solver produced a non-Whittaker vector")
    stabilized = len(set(dims)) == 1
    dim = dims[0]
    if dim >= 2:
        verdict = VERDICT_NOT_SIMPLE
    elif dim == 1 and stabilized:
        verdict = VERDICT_SIMPLE
    else:
        verdict = VERDICT_INCONCLUSIVE
    return WhittakerReport(
        presentation=pres,
        truncation=trunc,
        exact_vectors=vectors,
        dim_lower_bound=dim,
        stabilized=stabilized,
        verdict=verdict,
        per_weight=per_weight,
        basis_size=basis_size,
    )


def certify_simplicity(pres, trunc: Truncation):
    """(verdict, report) for the simplicity criterion dim Wh = 1."""
    report = whittaker_vectors(pres, trunc)
    return report.verdict, report


# ----------------------------------------------------------------------
# composition lengths


def known_length(pres):
    """Certified composition length, or raise UnknownLength.

    Table: rank-1 Verma (2 iff the highest weight is a nonnegative integer,
    else 1); rank-1 universal module with nonsingular character (1);
    direct sums add.
    """
    if isinstance(pres, DirectSumPresentation):
        return sum(known_length(c) for c in pres.components)
    if pres.family == "verma" and pres.rs.rank == 1:
        lam = pres.central.centre_weight[0]
        return 2 if (lam.denominator == 1 and lam >= 0) else 1
    if pres.family == "universal_sl2" and pres.psi.is_nonsingular():
        return 1
    raise UnknownLength(f"no certified length for {pres!r}")


def length_bound_check(instances, trunc: Truncation):
    """Corollary harness: dim Wh <= composition length on every instance.

    Returns a list of row dicts; a violated inequality raises AssertionError
    since it would falsify the corollary or reveal a solver bug.
    """
    rows = []
    for label, pres in instances:
        row = {"instance": label, "module": pres.descriptor()}
        try:
            length = known_length(pres)
        except UnknownLength:
            row.update(status="SKIPPED", reason="no certified length")
            rows.append(row)
            continue
        report = whittaker_vectors(pres, trunc)
        dim = report.dim_lower_bound
        if dim > length:
            row.update(status="FAIL", length=length, dim=dim)
            rows.append(row)
            raise AssertionError(
                f"corollary violated on {label}: dim {dim} > length {length}"
            )
        row.update(
            status="PASS",
            length=length,
            dim=dim,
            equality=(dim == length),
            stabilized=report.stabilized,
        )
        rows.append(row)
    return rows


# ----------------------------------------------------------------------
# sweeps


def sweep(points, trunc: Truncation):
    """Run the solver over labelled grid points.

    ``points`` is a list of (label, presentation-or-callable).  Per-point
    errors are collected, not fatal.  Returns (rows, dim_ge_2_labels).
    """
    rows = []
    flagged = []
    for label, pres in points:
        try:
            if callable(pres):
                pres = pres()
            report = whittaker_vectors(pres, trunc)
            rows.append(
                {
                    "label": label,
                    "dim": report.dim_lower_bound,
                    "verdict": report.verdict,
                    "stabilized": report.stabilized,
                    "error": "",
                    "report": report,
                }
            )
            if report.dim_lower_bound >= 2:
                flagged.append(label)
        except Exception as exc:  # per-point isolation
            rows.append(
                {
                    "label": label,
                    "dim": None,
                    "verdict": "",
                    "stabilized": False,
                    "error": f"{type(exc).__name__}: {exc}",
                    "report": None,
                }
            )
    return rows, flagged
