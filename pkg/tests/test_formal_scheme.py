from fractions import Fraction

import pytest

from superscheme.fields import ExtensionField, PrimeField, QQ
from superscheme.superlinear import (
    GradedMap, Matrix, Subspace, standard_space, unit_vec,
)
from superscheme.superalgebra import enumerate_homs
from superscheme.supercoalgebra import (
    dualize_algebra, grouplikes_over, truncated_cofree, unit_coalgebra,
)
from superscheme.formal_scheme import (
    AlgebraicityVerdict, FormalSuperscheme, SchemeMorphism,
    bosonic_reduction_morphism, bosonic_reduction_scheme, base_change,
    base_change_morphism, coproduct, descent_check, fiber, fiber_product,
    finite_bounded_degree, identity_morphism, immersion_fiberwise_check,
    is_algebraic_at, is_closed_immersion, is_faithfully_flat,
    is_finite_morphism, is_flat, is_flat_at, is_open_immersion,
    is_strictly_surjective, is_surjective, point_map, points, product,
    transport_point, transport_point_inverse,
)
from superscheme.corpus import (
    divided_power, grassmann, grouplike_coalgebra, quotient_ring_algebra,
    seeded_random, split_pair, truncated_polynomial,
)

F3 = PrimeField(3)
F5 = PrimeField(5)


def _scheme(C):
    return FormalSuperscheme.finite(C)


def _collapse(C):
    """Counit morphism Sp*(C) -> Sp*(k)."""
    F = C.field
    K = unit_coalgebra(F)
    m = GradedMap(C.space, K.space, Matrix(F, [list(C.counit)], C.dim), 0)
    return SchemeMorphism.finite(m, _scheme(C), _scheme(K))


def test_points_examples():
    X = _scheme(dualize_algebra(split_pair()))
    assert len(points(X)) == 2
    Y = _scheme(divided_power(3))
    pts = points(Y)
    assert len(pts) == 1 and pts[0].kappa.dim == 1
    Z = _scheme(dualize_algebra(quotient_ring_algebra([F3.one, F3.zero, F3.one],
                                                      F3)))
    pz = points(Z)
    assert len(pz) == 1 and pz[0].kappa.dim == 2


def test_bosonic_reduction_scheme():
    G = dualize_algebra(grassmann(1))
    X = _scheme(G)
    B = bosonic_reduction_scheme(X)
    assert B.coalgebra.dim == 1
    assert len(points(B)) == len(points(X))
    D = _scheme(divided_power(2))
    assert bosonic_reduction_scheme(D).coalgebra.delta == D.coalgebra.delta
    G2 = _scheme(dualize_algebra(grassmann(2)))
    B2 = bosonic_reduction_scheme(G2)
    assert B2.coalgebra.dim == 1
    assert all(p == 0 for p in B2.coalgebra.space.parities)


def test_point_map_equals_bosonic_point_map():
    for seed in range(20):
        entry = seeded_random("morphism", seed)
        (f,) = entry.payload
        assert point_map(f) == point_map(bosonic_reduction_morphism(f)), seed


def test_transport_point_example():
    D = truncated_polynomial(1)
    phi = GradedMap(D.space, D.space,
                    Matrix(QQ, [[Fraction(1), Fraction(0)],
                                [Fraction(0), Fraction(2)]]), 0)
    u = transport_point(phi, D, D)
    assert u == ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(2)))
    back = transport_point_inverse(u, D, D)
    assert back.matrix.rows == u


def test_transport_rejects_non_morphism():
    D = truncated_polynomial(1)
    bad = GradedMap(D.space, D.space,
                    Matrix(QQ, [[Fraction(1), Fraction(1)],
                                [Fraction(0), Fraction(1)]]), 0)
    with pytest.raises(ValueError):
        transport_point(bad, D, D)


def test_transport_bijection_over_f3():
    # full enumerations correspond elementwise through transport
    pairs = [(grassmann(1, F3), grassmann(1, F3)),
             (grassmann(1, F3), truncated_polynomial(1, F3)),
             (truncated_polynomial(1, F3), grassmann(1, F3))]
    gens = {2: [unit_vec(F3, 2, 1)]}
    for A, R in pairs:
        homs = enumerate_homs(A, R, gens[A.dim])
        gls = grouplikes_over(dualize_algebra(A), R)
        assert len(homs) == len(gls)
        transported = sorted(transport_point(phi, A, R) for phi in homs)
        assert transported == sorted(gls)
        for phi in homs:
            u = transport_point(phi, A, R)
            assert transport_point_inverse(u, A, R).matrix == phi.matrix


def test_transport_natural_in_target():
    # postcomposition with an algebra morphism commutes with transport
    A = grassmann(1, F3)
    R = grassmann(1, F3)
    Rp = grassmann(0, F3)
    rho = GradedMap(R.space, Rp.space, Matrix(F3, [[1, 0]]), 0)
    for phi in enumerate_homs(A, R, [unit_vec(F3, 2, 1)]):
        u = transport_point(rho.compose(phi), A, Rp)
        v = transport_point(phi, A, R)
        pushed = tuple(rho.matrix.apply([row[i] for row in v])
                       for i in range(A.dim))
        pushed = tuple(tuple(pushed[i][a] for i in range(A.dim))
                       for a in range(Rp.dim))
        assert u == pushed


def test_immersion_predicates():
    KK = dualize_algebra(split_pair())
    X = _scheme(KK)
    K = unit_coalgebra(QQ)
    incl = SchemeMorphism.finite(
        GradedMap(K.space, KK.space, Matrix(QQ, [[Fraction(1)], [Fraction(0)]]), 0),
        _scheme(K), X)
    assert is_closed_immersion(incl) and is_open_immersion(incl)
    assert not is_surjective(incl)
    G = dualize_algebra(grassmann(1))
    j = SchemeMorphism.finite(
        GradedMap(K.space, G.space, Matrix(QQ, [[Fraction(1)], [Fraction(0)]]), 0),
        _scheme(K), _scheme(G))
    assert is_closed_immersion(j) and not is_open_immersion(j)
    ident = identity_morphism(X)
    assert is_closed_immersion(ident) and is_open_immersion(ident)
    assert is_surjective(ident) and is_strictly_surjective(ident)


def test_strict_surjectivity_implies_surjectivity():
    for seed in range(20):
        (f,) = seeded_random("morphism", seed).payload
        if is_strictly_surjective(f):
            assert is_surjective(f)


def test_product_coproduct():
    KK = dualize_algebra(split_pair())
    P = product(_scheme(KK), _scheme(KK))
    assert len(points(P)) == 4
    S = coproduct([_scheme(KK), _scheme(divided_power(1))])
    assert len(points(S)) == 3
    assert S.coalgebra.dim == 4


def test_fiber_product_over_self():
    # A box_A A along identities is A again
    D = divided_power(2)
    ident = identity_morphism(_scheme(D))
    W = fiber_product(ident, ident)
    assert W.coalgebra.dim == D.dim
    assert len(points(W)) == 1


def test_fiber_examples():
    KK = dualize_algebra(split_pair())
    X = _scheme(KK)
    ident = identity_morphism(X)
    pts = points(X)
    fib = fiber(ident, pts[0])
    assert fib.coalgebra.dim == 1
    col = _collapse(KK)
    fib2 = fiber(col, points(col.target)[0])
    assert fib2.coalgebra.dim == 2
    K = unit_coalgebra(QQ)
    incl = SchemeMorphism.finite(
        GradedMap(K.space, KK.space, Matrix(QQ, [[Fraction(1)], [Fraction(0)]]), 0),
        _scheme(K), X)
    assert fiber(incl, pts[1]).coalgebra.dim == 0


def test_immersion_fiberwise():
    KK = dualize_algebra(split_pair())
    K = unit_coalgebra(QQ)
    incl = SchemeMorphism.finite(
        GradedMap(K.space, KK.space, Matrix(QQ, [[Fraction(1)], [Fraction(0)]]), 0),
        _scheme(K), _scheme(KK))
    ok, total, fiberwise = immersion_fiberwise_check(incl)
    assert ok and total and fiberwise
    col = _collapse(KK)
    ok2, total2, fiberwise2 = immersion_fiberwise_check(col)
    assert ok2 and not total2 and not fiberwise2


def test_base_change_splits_components():
    C = dualize_algebra(quotient_ring_algebra([F3.one, F3.zero, F3.one], F3))
    X = _scheme(C)
    assert len(points(X)) == 1
    F9 = ExtensionField(F3, (1, 0, 1), "j")
    X9 = base_change(X, F9)
    assert len(points(X9)) == 2
    CQ = dualize_algebra(quotient_ring_algebra([Fraction(1), Fraction(0),
                                                Fraction(1)]))
    QI = ExtensionField(QQ, (Fraction(1), Fraction(0), Fraction(1)), "i")
    assert len(points(base_change(_scheme(CQ), QI))) == 2
    assert base_change(X, F3) is X  # trivial extension


def test_flat_morphism_examples():
    KK = dualize_algebra(split_pair())
    col = _collapse(KK)
    assert is_faithfully_flat(col)
    K = unit_coalgebra(QQ)
    incl = SchemeMorphism.finite(
        GradedMap(K.space, KK.space, Matrix(QQ, [[Fraction(1)], [Fraction(0)]]), 0),
        _scheme(K), _scheme(KK))
    assert is_flat(incl) and not is_faithfully_flat(incl)
    D = divided_power(1)
    pt = SchemeMorphism.finite(
        GradedMap(K.space, D.space, Matrix(QQ, [[Fraction(1)], [Fraction(0)]]), 0),
        _scheme(K), _scheme(D))
    assert not is_flat(pt)


def test_faithfully_flat_equivalences_on_seeds():
    for seed in range(25):
        (f,) = seeded_random("morphism", seed).payload
        flat = is_flat(f)
        ff = is_faithfully_flat(f)
        assert ff == (flat and is_surjective(f))
        if flat:
            assert is_surjective(f) == is_strictly_surjective(f)


def test_flat_invariant_under_base_change():
    F9 = ExtensionField(F3, (1, 0, 1), "j")
    for seed in range(12):
        (f,) = seeded_random("morphism", seed, field=F3).payload
        f9 = base_change_morphism(f, F9)
        assert is_flat(f) == is_flat(f9), seed
        assert is_faithfully_flat(f) == is_faithfully_flat(f9), seed


def test_descent_examples():
    KK = dualize_algebra(split_pair())
    rep = descent_check(_collapse(KK), depth=3)
    assert rep.passed
    ident = identity_morphism(_scheme(divided_power(1)))
    assert descent_check(ident, depth=2).passed
    K = unit_coalgebra(QQ)
    incl = SchemeMorphism.finite(
        GradedMap(K.space, KK.space, Matrix(QQ, [[Fraction(1)], [Fraction(0)]]), 0),
        _scheme(K), _scheme(KK))
    rep3 = descent_check(incl, depth=2)
    assert not rep3.passed
    assert ("kappa(1)", 0) in rep3.failures


def test_finite_morphism_degrees():
    KK = dualize_algebra(split_pair())
    ident = identity_morphism(_scheme(KK))
    finite, max_dim = is_finite_morphism(ident)
    assert finite and max_dim == 1
    assert finite_bounded_degree(ident) == 1
    col = _collapse(KK)
    assert finite_bounded_degree(col) == 2
    colG = _collapse(dualize_algebra(grassmann(1)))
    assert finite_bounded_degree(colG) == 1
    assert is_finite_morphism(colG) == (True, 2)


def test_fiber_over_non_rational_point():
    # the target's unique point has residue field F9; kappa(y) is 2-dimensional
    C9 = dualize_algebra(quotient_ring_algebra([F3.one, F3.zero, F3.one], F3))
    X = _scheme(C9)
    ident = identity_morphism(X)
    y = points(X)[0]
    assert y.kappa.dim == 2
    fib = fiber(ident, y)
    assert fib.coalgebra.dim == 2
    assert is_faithfully_flat(ident)


def test_descent_over_extension_residue_target():
    # faithfully flat cover of a scheme whose point has residue field F9
    from superscheme.superalgebra import tensor_superalgebra
    B = quotient_ring_algebra([F3.one, F3.zero, F3.one], F3)
    C9 = dualize_algebra(B)
    Y = _scheme(C9)
    A = tensor_superalgebra(B, grassmann(1, F3))
    CA = dualize_algebra(A)
    rows = [[F3.zero] * CA.dim for _ in range(C9.dim)]
    for i in range(2):
        rows[i][i * 2] = F3.one  # dual of the inclusion b -> b (x) 1
    m = GradedMap(CA.space, C9.space, Matrix(F3, rows, CA.dim), 0)
    f = SchemeMorphism.finite(m, _scheme(CA), Y)
    assert is_faithfully_flat(f)
    assert descent_check(f, depth=2).passed
    assert descent_check(identity_morphism(Y), depth=2).passed


def test_finite_bounded_degree_deeper():
    colD2 = _collapse(divided_power(2))
    assert finite_bounded_degree(colD2) == 3  # dual module k[x]/(x^3) over k
    colG2 = _collapse(dualize_algebra(grassmann(2)))
    assert finite_bounded_degree(colG2) == 2  # sdim 2|2 needs two mixed slots


def test_algebraicity_divided_power_tower():
    from superscheme.ksdim import presentation, truncation_tower
    P = presentation(1, 0, [])
    tower = truncation_tower(P, 3)   # D1 < D2 < D3
    verdict = is_algebraic_at(tower, 0)
    assert verdict.stabilized
    assert verdict.stage_dims[-1] == 2


def test_algebraicity_finite_level_trivial():
    X = _scheme(divided_power(2))
    assert is_algebraic_at(X, 0).stabilized


def test_empty_scheme_predicates():
    from superscheme.supercoalgebra import zero_coalgebra
    empty = _scheme(zero_coalgebra(QQ))
    assert points(empty) == []
    KK = dualize_algebra(split_pair())
    m = GradedMap(empty.coalgebra.space, KK.space, Matrix(QQ, [[], []], 0), 0)
    f = SchemeMorphism.finite(m, empty, _scheme(KK))
    assert is_flat(f)                       # vacuously, no points
    assert not is_faithfully_flat(f)        # misses every point
    assert is_closed_immersion(f)
    assert fiber(f, points(_scheme(KK))[0]).coalgebra.dim == 0


def test_product_of_finite_level_algebraic_everywhere():
    X = _scheme(dualize_algebra(split_pair()))
    Y = _scheme(divided_power(2))
    P = product(X, Y)
    for p in points(P):
        assert is_algebraic_at(P, p.index).stabilized


def test_algebraicity_growing_cofree_tower():
    # first-jet coalgebras on k^{d|0}: A_1 grows with每 level
    levels = []
    for d in (1, 2, 3):
        V = standard_space(QQ, d, 0, even_prefix="v")
        levels.append(truncated_cofree(V, 1).coalgebra)
    maps = []
    for small, big in zip(levels, levels[1:]):
        big_index = {l: i for i, l in enumerate(big.space.labels)}
        rows = [[QQ.zero] * small.dim for _ in range(big.dim)]
        for j, lab in enumerate(small.space.labels):
            rows[big_index[lab]][j] = QQ.one
        maps.append(GradedMap(small.space, big.space, Matrix(QQ, rows, small.dim), 0))
    tower = FormalSuperscheme.tower(levels, maps)
    verdict = is_algebraic_at(tower, 0)
    assert not verdict.stabilized
    assert verdict.stage_dims == (2, 3, 4)
