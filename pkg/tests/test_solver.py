from fractions import Fraction

import pytest

from whitmod import (
    LieElement,
    ModuleElement,
    Truncation,
    UnknownLength,
    bullet,
    build_module,
    certify_simplicity,
    known_length,
    length_bound_check,
    nullspace,
    sweep,
    truncated_basis,
    whittaker_vectors,
)

TR = Truncation(8, 8, window=3)


def test_verma_integral_weights_not_simple(a1):
    for lam in (0, 1, 2, 3):
        pres = build_module("verma", a1, lam=[Fraction(lam)])
        report = whittaker_vectors(pres, TR)
        assert report.dim_lower_bound == 2
        assert report.verdict == "NOT_SIMPLE"
        (witness,) = report.witnesses()
        assert set(witness.terms) == {((lam + 1,), ())}


def test_verma_nonintegral_simple(a1):
    for lam in (Fraction(-1), Fraction(1, 2), Fraction(-3, 2)):
        pres = build_module("verma", a1, lam=[lam])
        verdict, report = certify_simplicity(pres, TR)
        assert verdict == "SIMPLE_UPTO"
        assert report.dim_lower_bound == 1
        assert report.stabilized


def test_universal_sl2_always_dim_one(a1):
    for c in (Fraction(0), Fraction(1, 2), Fraction(2), Fraction(17, 3)):
        pres = build_module("universal_sl2", a1, eta=1, c=c)
        report = whittaker_vectors(pres, Truncation(0, 8, window=3))
        assert report.dim_lower_bound == 1
        assert report.verdict == "SIMPLE_UPTO"


def test_direct_sum_additivity(a1):
    p1 = build_module("verma", a1, lam=[Fraction(-1)])
    p2 = build_module("verma", a1, lam=[Fraction(-2)])
    ds = build_module("direct_sum", a1, components=[p1, p2])
    report = whittaker_vectors(ds, TR)
    assert report.dim_lower_bound == 2
    assert report.verdict == "NOT_SIMPLE"


def test_dim_monotone_in_truncation(a1):
    pres = build_module("verma", a1, lam=[Fraction(3)])
    dims = []
    for d in (2, 4, 6, 8):
        report = whittaker_vectors(pres, Truncation(d, d, window=1))
        dims.append(report.dim_lower_bound)
    assert dims == sorted(dims)
    assert dims[-1] == 2


def test_vectors_reverify_exactly(a2):
    pres = build_module(
        "mcdowell", a2, psi=[1, 0], omega=[Fraction(0)], casimirs={0: Fraction(0)}
    )
    report = whittaker_vectors(pres, Truncation(6, 6, window=2))
    gens = [
        LieElement.basis(a2, ("e", a2.pos_index(a2.simple_root(i))))
        for i in range(2)
    ]
    assert report.exact_vectors
    for w in report.exact_vectors:
        for g in gens:
            assert bullet(g, w).is_zero()


def test_blocked_solve_matches_unblocked(a1):
    # The z-weight block decomposition must not change the answer.
    pres = build_module("verma", a1, lam=[Fraction(2)])
    trunc = Truncation(8, 8, window=1)
    report = whittaker_vectors(pres, trunc)
    basis = truncated_basis(pres, trunc)
    col_of = {m: j for j, m in enumerate(basis)}
    e = LieElement.basis(a1, ("e", 0))
    rows = {}
    for mono in basis:
        img = bullet(e, ModuleElement(pres, {mono: Fraction(1)}))
        for m2, c in img.terms.items():
            rows.setdefault(m2, {})[col_of[mono]] = c
    vecs = nullspace([rows[k] for k in sorted(rows, key=repr)], len(basis))
    assert len(vecs) == report.dim_lower_bound


def test_per_weight_dims_sum(a1):
    pres = build_module("verma", a1, lam=[Fraction(1)])
    report = whittaker_vectors(pres, TR)
    assert sum(d for _, d in report.per_weight) == report.dim_lower_bound


def test_report_json_shape(a1):
    pres = build_module("verma", a1, lam=[Fraction(2)])
    doc = whittaker_vectors(pres, TR).to_json()
    assert doc["schema_version"] == 1
    assert doc["verdict"] == "NOT_SIMPLE"
    assert doc["dim_lower_bound"] == 2
    assert doc["truncation"] == {"depth": 8, "factor_deg": 8, "window": 3}
    assert len(doc["witnesses"]) == 1
    assert all(isinstance(x, str) for x in doc["psi"])


def test_known_length_table(a1, a2):
    assert known_length(build_module("verma", a1, lam=[Fraction(2)])) == 2
    assert known_length(build_module("verma", a1, lam=[Fraction(-1)])) == 1
    assert known_length(build_module("verma", a1, lam=[Fraction(1, 2)])) == 1
    assert known_length(build_module("universal_sl2", a1, eta=1, c=0)) == 1
    p = build_module("verma", a1, lam=[Fraction(-2)])
    ds = build_module("direct_sum", a1, components=[p, p])
    assert known_length(ds) == 2
    with pytest.raises(UnknownLength):
        known_length(
            build_module(
                "mcdowell", a2, psi=[1, 0], omega=[Fraction(0)], casimirs={0: Fraction(0)}
            )
        )


def test_length_bound_harness(a1, a2):
    instances = [
        ("verma 2", build_module("verma", a1, lam=[Fraction(2)])),
        ("verma -1", build_module("verma", a1, lam=[Fraction(-1)])),
        ("universal", build_module("universal_sl2", a1, eta=1, c=1)),
        (
            "sl3",
            build_module(
                "mcdowell", a2, psi=[1, 0], omega=[Fraction(1)], casimirs={0: Fraction(1)}
            ),
        ),
    ]
    rows = length_bound_check(instances, Truncation(6, 6, window=2))
    by_label = {r["instance"]: r for r in rows}
    assert by_label["verma 2"]["status"] == "PASS"
    assert by_label["verma 2"]["equality"]
    assert by_label["verma -1"]["status"] == "PASS"
    assert by_label["sl3"]["status"] == "SKIPPED"


def test_sweep_isolates_errors(a1):
    def boom():
        raise RuntimeError("bad point")

    points = [
        ("good", build_module("verma", a1, lam=[Fraction(3)])),
        ("bad", boom),
        ("also good", build_module("verma", a1, lam=[Fraction(-1)])),
    ]
    rows, flagged = sweep(points, Truncation(6, 6, window=2))
    assert [r["label"] for r in rows] == ["good", "bad", "also good"]
    assert rows[0]["dim"] == 2 and rows[0]["verdict"] == "NOT_SIMPLE"
    assert rows[1]["error"].startswith("RuntimeError")
    assert rows[2]["dim"] == 1
    assert flagged == ["good"]
