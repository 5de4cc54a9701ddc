from fractions import Fraction

import pytest

from latsym import discform, lattice


def test_a1_module():
    mod = discform.discriminant_form(lattice.root_A(1))
    assert mod.orders == [2]
    elems = mod.elements()
    assert elems == [(0,), (1,)]
    assert mod.q((1,)) == Fraction(3, 2)
    assert mod.q((0,)) == 0


def test_e8_module_trivial():
    mod = discform.discriminant_form(lattice.root_E8())
    assert mod.orders == []
    assert mod.elements() == [()]


def test_odd_lattice_rejected():
    with pytest.raises(ValueError, match="even"):
        discform.discriminant_form(lattice.odd_plane())


def test_bilinear_from_quadratic():
    mod = discform.discriminant_form(lattice.build_named("U(2)+A1"))
    for x in mod.elements():
        for y in mod.elements():
            lhs = mod.b(x, y)
            rhs = (mod.q(mod.add(x, y)) - mod.q(x) - mod.q(y)) % 2
            assert lhs == rhs


def test_lambda_module():
    lam = lattice.standard_model().lattice
    mod = discform.discriminant_form(lam)
    assert len(mod.elements()) == 256
    assert mod.orders == [2] * 8
    # q takes values in (1/2)Z mod 2Z on this module
    for x in mod.elements():
        assert (2 * mod.q(x)) % 1 == 0


def test_kernel_and_radical():
    lam = lattice.standard_model().lattice
    mod = discform.discriminant_form(lam)
    kern, rad, r = discform.kernel_and_radical(mod)
    assert kern.dim == 7
    assert rad.dim == 1
    assert mod.q(r) == 1
    # K is the integral part of q, r spans the radical of b restricted to K
    for x in kern.elements():
        assert mod.q(x) % 1 == 0
        assert mod.b(r, x) == 0

    a1_2 = discform.discriminant_form(lattice.build_named("A1^2"))
    kern2, rad2, r2 = discform.kernel_and_radical(a1_2)
    assert kern2.dim == 1
    assert rad2.dim == 1
    assert r2 == (1, 1)


def test_transvections():
    lam = lattice.standard_model().lattice
    mod = discform.discriminant_form(lam)
    _kern, _rad, r = discform.kernel_and_radical(mod)
    t = discform.transvection(mod, r)
    assert t.preserves_q
    assert t.order() == 2
    for x in mod.elements():
        assert t.apply(t.apply(x)) == x

    with pytest.raises(ValueError):
        discform.transvection(mod, tuple([0] * 8))

    # a transvection in a vector of square != 1 is a map but not an isometry
    sigma = next(x for x in mod.elements() if any(x) and mod.q(x) != 1)
    assert not discform.transvection(mod, sigma).preserves_q


def test_induced_isometry():
    from latsym import isometry

    model = lattice.standard_model()
    lam = model.lattice
    mod = discform.discriminant_form(lam)
    _kern, _rad, r = discform.kernel_and_radical(mod)

    refl = isometry.reflection(lam, model.named["a1_sum"])
    induced = discform.induced_disc_isometry(lam, refl)
    assert induced.matrix == discform.transvection(mod, r).matrix

    ident = discform.induced_disc_isometry(lam, isometry.identity_isometry(lam))
    assert ident.is_identity


def test_full_reflection_group():
    lam = lattice.standard_model().lattice
    mod = discform.discriminant_form(lam)
    grp = discform.full_reflection_group(mod)
    assert grp.order() == 2903040

    _kern, rad, r = discform.kernel_and_radical(mod)
    t = discform.transvection(mod, r)
    assert grp.contains(t)
    assert grp.is_central(t)

    nonzero = [x for x in mod.elements() if any(x)]
    q1 = [x for x in nonzero if mod.q(x) == 1]
    assert len(q1) == 64
    sizes = sorted(len(o) for o in grp.orbits(q1))
    assert sizes == [1, 63]

    kern, rad, _r = discform.kernel_and_radical(mod)
    assert grp.quotient_order(kern, rad) == 1451520


def test_group_enumeration_cap():
    big = lattice.build_named("A1^11")
    mod = discform.discriminant_form(big)
    with pytest.raises(ValueError, match="too large"):
        discform.full_reflection_group(mod)


def test_group_from_generators_empty():
    with pytest.raises(ValueError):
        discform.group_from_generators([])


def test_small_reflection_group():
    mod = discform.discriminant_form(lattice.build_named("A1^2"))
    grp = discform.full_reflection_group(mod)
    assert grp.order() == 2


def test_module_caching():
    lam = lattice.standard_model().lattice
    assert discform.discriminant_form(lam) is discform.discriminant_form(lam)
