import random
from fractions import Fraction

import pytest

from whitmod import (
    InvalidParams,
    LieElement,
    ModuleElement,
    NonOrthogonalSupport,
    NotGraded,
    NotInNilradical,
    act,
    bullet,
    bullet_depth,
    build_module,
    multiply,
)
from whitmod.modules import NOT_FOUND


def f_power(pres, k):
    """f^k v in a rank-1 Verma presentation."""
    return ModuleElement(pres, {((k,), ()): Fraction(1)})


def test_verma_lowering_oracle(a1):
    # e . f^k v = k (lam - k + 1) f^{k-1} v, independent closed form.
    rng = random.Random(42)
    e = LieElement.basis(a1, ("e", 0))
    for _ in range(6):
        lam = Fraction(rng.randint(-8, 8), rng.randint(1, 5))
        pres = build_module("verma", a1, lam=[lam])
        for k in range(7):
            got = act(e, f_power(pres, k))
            expected = (
                f_power(pres, k - 1).scale(k * (lam - k + 1))
                if k >= 1
                else ModuleElement(pres, {})
            )
            assert got == expected, (lam, k)


def test_verma_h_weight(a1):
    lam = Fraction(3, 2)
    pres = build_module("verma", a1, lam=[lam])
    h = LieElement.basis(a1, ("h", 0))
    for k in range(5):
        assert act(h, f_power(pres, k)) == f_power(pres, k).scale(lam - 2 * k)


def test_universal_sl2_h_square_rule(a1):
    # h . (h v) = 2c v - 2 h v - 4 eta f v, from Cas = 2fe + h + h^2/2.
    eta, c = Fraction(1), Fraction(5, 3)
    pres = build_module("universal_sl2", a1, eta=eta, c=c)
    h = LieElement.basis(a1, ("h", 0))
    v = pres.cyclic_vector()
    hv = act(h, v)
    assert hv == ModuleElement(pres, {((), ((0, 1),)): Fraction(1)})
    fv = ModuleElement(pres, {((), ((1, 0),)): Fraction(1)})
    assert act(h, hv) == v.scale(2 * c) - hv.scale(2) - fv.scale(4 * eta)


def test_universal_sl2_e_acts_as_eta(a1):
    eta = Fraction(2, 5)
    pres = build_module("universal_sl2", a1, eta=eta, c=Fraction(0))
    e = LieElement.basis(a1, ("e", 0))
    v = pres.cyclic_vector()
    assert act(e, v) == v.scale(eta)
    assert bullet(e, v).is_zero()


def test_universal_sl2_rejects_bad_params(a1, a2):
    with pytest.raises(InvalidParams):
        build_module("universal_sl2", a1, eta=0, c=1)
    with pytest.raises(InvalidParams):
        build_module("universal_sl2", a2, eta=1, c=1)


def sl3_pres(a2, omega=Fraction(7, 3), c=Fraction(5, 7)):
    return build_module(
        "mcdowell", a2, psi=[1, 0], omega=[omega], casimirs={0: c}
    )


def test_sl3_z_weights(a2):
    omega = Fraction(7, 3)
    pres = sl3_pres(a2, omega=omega)
    v = pres.cyclic_vector()
    mono = next(iter(v.terms))
    assert pres.z_weight_of(mono).coordinates == (omega,)
    # each mbar lowering drops the z-weight by 3
    f2 = LieElement.basis(a2, ("f", a2.pos_index((0, 1))))
    w = act(f2, v)
    mono2 = next(iter(w.terms))
    assert pres.z_weight_of(mono2).coordinates == (omega - 3,)


def test_centre_acts_by_z_weight(a2):
    pres = sl3_pres(a2)
    z = LieElement(a2, {("h", 0): Fraction(1), ("h", 1): Fraction(2)})
    rng = random.Random(11)
    monos = list(pres.act_symbol(("f", 0), next(iter(pres.cyclic_vector().terms))))
    for mono in monos:
        w = ModuleElement(pres, {mono: Fraction(1)})
        wt = pres.z_weight_of(mono).coordinates[0]
        assert act(z, w) == w.scale(wt)


@pytest.mark.parametrize("label,values", [("A", [1, 1])])
def test_nonorthogonal_support_rejected(a2, label, values):
    with pytest.raises(NonOrthogonalSupport):
        build_module("mcdowell", a2, psi=values, omega=[], casimirs={0: 1, 1: 1})


def test_orthogonal_support_accepted(a3):
    pres = build_module(
        "mcdowell",
        a3,
        psi=[1, 0, 1],
        omega=[Fraction(1, 2)],
        casimirs={0: Fraction(1), 2: Fraction(2)},
    )
    assert pres.is_graded()
    assert len(pres.support) == 2


def test_ungraded_when_nonsingular(a1):
    pres = build_module("universal_sl2", a1, eta=1, c=0)
    assert not pres.is_graded()
    with pytest.raises(NotGraded):
        pres.z_weight_of(next(iter(pres.cyclic_vector().terms)))


@pytest.mark.parametrize(
    "family,params",
    [
        ("verma", {"lam": [Fraction(5, 2)]}),
        ("universal_sl2", {"eta": Fraction(2), "c": Fraction(-1, 3)}),
    ],
)
def test_module_axiom_rank1(a1, family, params):
    _module_axiom_check(build_module(family, a1, **params), seed=3)


def test_module_axiom_sl3(a2):
    _module_axiom_check(sl3_pres(a2), seed=4)


def _module_axiom_check(pres, seed):
    from whitmod import bracket

    rs = pres.rs
    rng = random.Random(seed)
    syms = rs.basis_symbols()
    v = pres.cyclic_vector()
    # random cyclic translates as test vectors
    vecs = [v]
    for _ in range(3):
        w = v
        for _ in range(2):
            w = act(LieElement.basis(rs, rng.choice(syms)), w)
        if not w.is_zero():
            vecs.append(w)
    for _ in range(25):
        x = LieElement.basis(rs, rng.choice(syms))
        y = LieElement.basis(rs, rng.choice(syms))
        w = rng.choice(vecs)
        lhs = act(bracket(x, y), w)
        rhs = act(x, act(y, w)) - act(y, act(x, w))
        assert lhs == rhs


def test_act_respects_products(a2):
    pres = sl3_pres(a2)
    A = pres.algebra
    rng = random.Random(8)
    syms = a2.basis_symbols()
    v = pres.cyclic_vector()
    for _ in range(15):
        a = A.generator(rng.choice(syms))
        b = multiply(A.generator(rng.choice(syms)), A.generator(rng.choice(syms)))
        assert act(multiply(a, b), v) == act(a, act(b, v))


def test_bullet_requires_nilradical(a1):
    pres = build_module("verma", a1, lam=[Fraction(1)])
    with pytest.raises(NotInNilradical):
        bullet(LieElement.basis(a1, ("h", 0)), pres.cyclic_vector())


def test_bullet_depth(a1):
    lam = Fraction(5, 2)
    pres = build_module("verma", a1, lam=[lam])
    v = pres.cyclic_vector()
    assert bullet_depth(v, 4) == 0
    f = LieElement.basis(a1, ("f", 0))
    assert bullet_depth(act(f, v), 4) == 1
    assert bullet_depth(act(f, act(f, v)), 4) == 2
    zero = ModuleElement(pres, {})
    assert bullet_depth(zero, 2) == 0


def test_bullet_depth_not_found(a1):
    pres = build_module("verma", a1, lam=[Fraction(7)])
    f = LieElement.basis(a1, ("f", 0))
    w = pres.cyclic_vector()
    for _ in range(5):
        w = act(f, w)
    assert bullet_depth(w, 2) is NOT_FOUND


def test_direct_sum_acts_componentwise(a1):
    p1 = build_module("verma", a1, lam=[Fraction(-1)])
    p2 = build_module("verma", a1, lam=[Fraction(-2)])
    ds = build_module("direct_sum", a1, components=[p1, p2])
    v = ds.cyclic_vector()
    assert len(v.terms) == 2
    e = LieElement.basis(a1, ("e", 0))
    assert act(e, v).is_zero()
    f = LieElement.basis(a1, ("f", 0))
    fv = act(f, v)
    assert {ci for (ci, _) in fv.terms} == {0, 1}
