"""End-to-end checks of the Python bindings against known exact values."""

import json

import pytest

import affqh


def test_root_system_basics():
    rs = affqh.RootSystem("A", 2)
    assert rs.type == "A"
    assert rs.rank == 2
    assert repr(rs) == "RootSystem('A', 2)"
    with pytest.raises(affqh.InvalidInputError):
        affqh.RootSystem("Z", 9)
    with pytest.raises(affqh.InvalidInputError):
        affqh.RootSystem("A", 0)


def test_enumeration_and_words():
    rs = affqh.RootSystem("A", 1)
    minus = affqh.enumerate_minus(rs, 3)
    assert minus[0] == "w=e;lam=0"
    assert len(minus) == 4
    assert affqh.length(rs, "w=s1;lam=-1") == 1
    assert affqh.reduced_word(rs, "w=s1;lam=-1") == "s0"
    assert affqh.reduced_word(rs, "w=e;lam=0") == "e"
    # the ball contains every minimal representative
    ball = set(affqh.enumerate_ball(rs, 3))
    assert set(minus) <= ball
    with pytest.raises(affqh.InvalidInputError):
        affqh.length(rs, "garbage")


def test_membership_agrees_with_condition_c():
    rs = affqh.RootSystem("A", 2)
    for x in affqh.enumerate_ball(rs, 3):
        for parabolic in ([], [1], [2]):
            assert affqh.in_wp_af(rs, x, parabolic) == affqh.condition_c(
                rs, x, parabolic
            )


def test_gr_product_anchor():
    rs = affqh.RootSystem("A", 1)
    gr = affqh.GrEngine(rs)
    prod = gr.product("w=s1;lam=-1", "w=s1;lam=-1")
    assert prod == {"w=e;lam=-1": "1", "w=s1;lam=-2": "a1"}


def test_qh_product_anchor():
    rs = affqh.RootSystem("A", 1)
    qh = affqh.QhEngine(rs)
    rows = qh.product("s1", "s1")
    assert sorted(rows) == [("0", "s1", "a1"), ("1", "e", "1")]
    assert qh.classical_product("s1", "s1") == {"s1": "a1"}
    assert qh.localization("e", "s1") == "1"
    assert qh.localization("s1", "e") == "0"


def test_coset_reps_are_minimal():
    rs = affqh.RootSystem("A", 2)
    qh = affqh.QhEngine(rs, [2])
    reps = qh.coset_reps()
    assert len(reps) == 3
    assert reps[0] == "e"
    for w in reps:
        assert affqh.min_coset_rep(rs, w, [2]) == w


def test_basis_image_and_dimension():
    rs = affqh.RootSystem("A", 1)
    qh = affqh.QhEngine(rs)
    assert qh.basis_image("w=e;lam=0") == ("0", "e")
    for x in affqh.enumerate_minus(rs, 4):
        image = qh.basis_image(x)
        assert image is not None
        beta, w = image
        dim = qh.dimension(x, w)
        assert dim["dimension"] == dim["length_x"] + dim["length_v"] + dim["chern"]
        assert all(s >= 0 for s in dim["summands"])
        assert sum(dim["summands"]) == dim["dimension"]


def test_verify_small():
    rs = affqh.RootSystem("A", 1)
    report = affqh.verify(rs, [], 3)
    assert report["passed"] is True
    assert report["pairs_checked"] == 16
    assert report["failures"] == []
    assert report["group_type"] == "A"
    assert set(report["timing"]) == {"products", "membership", "dimension"}


def test_tables_round_trip_through_json():
    rs = affqh.RootSystem("A", 1)
    table = json.loads(affqh.xi_table_json(rs, 2))
    assert table["header"]["basis"] == "xi"
    assert table["header"]["fingerprint"] == affqh.convention_fingerprint()
    anchor = {"coeff": "1", "u": "w=s1;lam=-1", "v": "w=s1;lam=-1", "z": "w=e;lam=-1"}
    assert anchor in table["rows"]
    qh_table = json.loads(affqh.qh_table_json(rs, [], 1))
    assert qh_table["header"]["basis"] == "qh"
    assert {
        "beta": "1",
        "coeff": "1",
        "u": "s1",
        "v": "s1",
        "w": "e",
    } in qh_table["rows"]
    # the non-equivariant slice sets every a_i to zero
    flat = json.loads(affqh.qh_table_json(rs, [], 1, non_equivariant=True))
    assert all(row["coeff"] != "0" and "a" not in row["coeff"] for row in flat["rows"])
