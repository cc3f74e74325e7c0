"""Ring construction, validation, units, and decomposition tests.

The generator-reduced axiom scans are cross-checked against a raw
triple-loop oracle on every small ring, so the fast path and the
definitional path must agree before anything else is trusted.
"""

import numpy as np
import pytest

import oracles
from matsemi.errors import (
    MissingInvolution,
    RingSpecError,
    SizeCapExceeded,
)
from matsemi.rings import (
    make_gaussian,
    make_matrix_ring,
    make_zmod,
    mat_mul,
    mat2_inverse_scan,
    parse_ring_spec,
    sum_of_units_decompose,
    unitaries,
    units,
    validate_matrix_view,
    validate_ring,
)


# ---------------------------------------------------------------------------
# Constructors


def test_zmod_characteristic_two():
    z2 = make_zmod(2)
    assert z2.add[1, 1] == 0


def test_zmod_four_two_squared():
    z4 = make_zmod(4)
    assert z4.mul[2, 2] == 0


def test_zmod_five_imaginary_unit():
    assert make_zmod(5).i_elem == 2


def test_zmod_canonical_indices():
    for n in range(1, 9):
        r = make_zmod(n)
        assert r.zero == 0
        assert r.one == (1 if n > 1 else 0)


def test_gaussian_three_product():
    g3 = make_gaussian(3)
    one_plus_i = 1 + 3 * 1
    one_minus_i = 1 + 3 * 2  # 1 - i = 1 + 2i mod 3
    assert g3.mul[one_plus_i, one_minus_i] == 2


def test_gaussian_two_squared_i():
    g2 = make_gaussian(2)
    one_plus_i = 1 + 2 * 1
    assert g2.mul[one_plus_i, one_plus_i] == 0


def test_gaussian_degenerate():
    g1 = make_gaussian(1)
    assert g1.size == 1
    assert g1.zero == g1.one == 0


def test_gaussian_star_is_conjugation():
    g3 = make_gaussian(3)
    i = g3.i_elem
    assert g3.star[i] == g3.neg[i]


def test_matrix_ring_sizes():
    assert make_matrix_ring(make_zmod(2), 2).ring.size == 16
    assert make_matrix_ring(make_zmod(3), 2).ring.size == 81


def test_matrix_ring_k1_is_isomorphic_copy():
    base = make_zmod(4)
    v = make_matrix_ring(base, 1)
    assert v.ring.size == 4
    assert v.ring.one == base.one and v.ring.zero == base.zero
    assert np.array_equal(np.asarray(v.ring.mul), np.asarray(base.mul))
    assert validate_ring(v.ring).ok and validate_matrix_view(v).ok


def test_matrix_units_orthogonal():
    v = make_matrix_ring(make_zmod(2), 2)
    e11 = v.matrix_unit(0, 0)
    e22 = v.matrix_unit(1, 1)
    assert v.ring.mul[e11, e22] == v.ring.zero


def test_matrix_size_cap():
    with pytest.raises(SizeCapExceeded):
        make_matrix_ring(make_zmod(2), 2, size_cap=10, use_cache=False)


def test_matrix_product_against_row_column_oracle():
    """One product per ring recomputed by explicit row-by-column sums."""
    for base in (make_zmod(4), make_gaussian(3)):
        v = make_matrix_ring(base, 2)
        x, y = 7 % v.ring.size, 13 % v.ring.size
        X, Y = v.decode(np.asarray(x)), v.decode(np.asarray(y))
        expect = np.empty((2, 2), dtype=np.int64)
        for i in range(2):
            for j in range(2):
                t0 = base.mul[X[i, 0], Y[0, j]]
                t1 = base.mul[X[i, 1], Y[1, j]]
                expect[i, j] = base.add[t0, t1]
        assert int(v.ring.mul[x, y]) == int(v.encode(expect))


def test_matrix_tables_match_oracle_everywhere():
    base = make_zmod(3)
    v = make_matrix_ring(base, 2)
    o = oracles.oracle_mat2(oracles.oracle_zmod(3))
    for x in range(0, 81, 7):
        for y in range(0, 81, 5):
            assert int(v.ring.mul[x, y]) == o.mul(x, y)
            assert int(v.ring.add[x, y]) == o.add(x, y)
    assert v.ring.one == o.one
    assert v.ring.star is not None
    assert all(int(v.ring.star[x]) == o.star(x) for x in range(81))


# ---------------------------------------------------------------------------
# Spec grammar


@pytest.mark.parametrize("spec,size", [
    ("zmod:6", 6),
    ("gauss:3", 9),
    ("mat:2:zmod:2", 16),
    ("mat:2:gauss:2", 256),
])
def test_parse_ring_spec(spec, size):
    ring = parse_ring_spec(spec)
    assert ring.size == size
    assert ring.label == spec


def test_parse_nested_matrix_spec():
    ring = parse_ring_spec("mat:2:gauss:3")
    assert ring.size == 6561
    assert ring.matrix_view.base.label == "gauss:3"


@pytest.mark.parametrize("bad", ["", "zmod", "zmod:x", "zmod:0", "ring:3",
                                 "mat:2", "mat:0:zmod:2", "mat:x:zmod:2"])
def test_parse_rejects_bad_specs(bad):
    with pytest.raises(RingSpecError):
        parse_ring_spec(bad)


def test_parse_respects_size_cap():
    with pytest.raises(SizeCapExceeded):
        parse_ring_spec("mat:2:zmod:40", size_cap=100)


# ---------------------------------------------------------------------------
# Validation: fast generator scans agree with the definitional triple loop


@pytest.mark.parametrize("spec", ["zmod:1", "zmod:2", "zmod:4", "zmod:6",
                                  "gauss:2", "gauss:3", "mat:2:zmod:2"])
def test_validation_agrees_with_triple_loop_oracle(spec):
    ring = parse_ring_spec(spec)
    assert validate_ring(ring).ok
    if spec.startswith("zmod"):
        oring = oracles.oracle_zmod(int(spec.split(":")[1]))
    elif spec.startswith("gauss"):
        oring = oracles.oracle_gauss(int(spec.split(":")[1]))
    else:
        oring = oracles.oracle_mat2(oracles.oracle_zmod(2))
    assert oracles.ring_axioms_hold(oring)


def test_validation_catches_broken_associativity():
    z4 = make_zmod(4)
    mul = z4.mul.copy()
    mul[2, 3] = 1  # break (2*3) while leaving identities intact
    from matsemi.rings import RingTable

    broken = RingTable(z4.add, mul, 0, 1, label="broken")
    val = validate_ring(broken)
    assert not val.ok


def test_validation_catches_broken_distributivity():
    z4 = make_zmod(4)
    add = z4.add.copy()
    add[2, 3] = 2
    from matsemi.rings import RingTable

    broken = RingTable(add, z4.mul, 0, 1, label="broken-add")
    assert not validate_ring(broken).ok


def test_degenerate_ring_vacuously_valid():
    z1 = make_zmod(1)
    val = validate_ring(z1)
    assert val.ok
    assert z1.zero == z1.one == 0


def test_star_i_compatibility_reported_not_gating():
    z5 = make_zmod(5)
    val = validate_ring(z5)
    assert val.ok
    assert val.info["star_negates_i"] is False
    g3 = make_gaussian(3)
    assert validate_ring(g3).info["star_negates_i"] is True


def test_matrix_view_scans():
    for base in (make_zmod(2), make_zmod(3), make_gaussian(2)):
        view = make_matrix_ring(base, 2)
        assert validate_matrix_view(view).ok


# ---------------------------------------------------------------------------
# Units / unitaries


def test_units_zmod4():
    assert list(units(make_zmod(4))) == [1, 3]


def test_units_m2z2_count():
    m = make_matrix_ring(make_zmod(2), 2)
    us = units(m.ring)
    assert len(us) == 6
    # closure under product and inverse
    prods = m.ring.mul[np.ix_(us, us)]
    assert set(int(p) for p in prods.ravel()) <= set(int(u) for u in us)


def test_units_degenerate():
    assert list(units(make_zmod(1))) == [0]


def test_unitaries_subset_of_units():
    for ring in (make_gaussian(3), make_matrix_ring(make_gaussian(2), 2).ring):
        us = set(int(u) for u in units(ring))
        for u in unitaries(ring):
            assert int(u) in us


def test_unitaries_gauss3_contains_i():
    g3 = make_gaussian(3)
    assert g3.i_elem in set(int(u) for u in unitaries(g3))


def test_unitaries_zmod2():
    assert list(unitaries(make_zmod(2))) == [1]


def test_unitaries_need_star():
    g3 = make_gaussian(3)
    from matsemi.rings import RingTable

    bare = RingTable(g3.add, g3.mul, g3.zero, g3.one, label="bare")
    with pytest.raises(MissingInvolution):
        unitaries(bare)


def test_star_maps_units_bijectively():
    for ring in (make_zmod(4), make_gaussian(3),
                 make_matrix_ring(make_zmod(2), 2).ring):
        us = units(ring)
        starred = sorted(int(ring.star[u]) for u in us)
        assert starred == [int(u) for u in us]


# ---------------------------------------------------------------------------
# Sum-of-units decomposition


def test_decompose_zero_in_z2():
    assert sum_of_units_decompose(make_zmod(2), 0, 2) == [1, 1]


def test_decompose_two_in_z4():
    assert sum_of_units_decompose(make_zmod(4), 2, 2) == [1, 1]


def test_decompose_e11_in_m2z2():
    m = make_matrix_ring(make_zmod(2), 2)
    out = sum_of_units_decompose(m.ring, m.matrix_unit(0, 0), 2)
    assert out is not None and len(out) == 2
    assert all(int(u) in set(int(x) for x in units(m.ring)) for u in out)
    assert int(m.ring.add[out[0], out[1]]) == m.matrix_unit(0, 0)


def test_decompose_matches_shortest_oracle():
    g3 = make_gaussian(3)
    o = oracles.oracle_gauss(3)
    pool = [int(u) for u in units(g3)]
    for x in range(9):
        got = sum_of_units_decompose(g3, x, 4)
        want = oracles.shortest_unit_sum(o, pool, x, 4)
        assert (got is None) == (want is None)
        if got is not None:
            assert len(got) == len(want)


def test_decompose_none_when_unreachable():
    z4 = make_zmod(4)
    assert sum_of_units_decompose(z4, 1, 1) == [1]
    # 0 needs two units in Z4 (1+3); kmax=1 cannot reach it
    assert sum_of_units_decompose(z4, 0, 1) is None


def test_decompose_unitaries_mode():
    g3 = make_gaussian(3)
    for x in range(9):
        out = sum_of_units_decompose(g3, x, 4, mode="unitaries")
        assert out is not None
        pool = set(int(u) for u in unitaries(g3))
        assert all(int(u) in pool for u in out)


# ---------------------------------------------------------------------------
# Matrix arithmetic helpers


def test_mat_mul_matches_ring_table():
    base = make_zmod(3)
    v = make_matrix_ring(base, 2)
    rng = np.random.default_rng(7)
    xs = rng.integers(0, 81, size=12)
    ys = rng.integers(0, 81, size=12)
    got = v.encode(mat_mul(base, v.decode(xs), v.decode(ys)))
    want = v.ring.mul[xs, ys]
    assert np.array_equal(np.asarray(got), np.asarray(want, dtype=np.int64))


def test_mat2_inverse_scan_finds_inverse():
    z3 = make_zmod(3)
    m = np.array([[1, 1], [0, 1]])
    inv = mat2_inverse_scan(z3, m)
    assert inv is not None
    assert np.array_equal(mat_mul(z3, m, inv), np.array([[1, 0], [0, 1]]))


def test_mat2_inverse_scan_rejects_singular():
    z3 = make_zmod(3)
    assert mat2_inverse_scan(z3, np.array([[1, 1], [1, 1]])) is None
