import os

import pytest

import kcoh

DATA = os.environ.get("KCOH_DATA", os.path.join(os.path.dirname(__file__), "..", "..", "tests", "data"))

ZERO_T2 = '{"coeff": "Q/Z", "kind": "cubical2", "values": {"e,f": 0}}'


@pytest.fixture(scope="module")
def t2():
    return kcoh.load_graph(os.path.join(DATA, "t2.kg"))


@pytest.fixture(scope="module")
def theta():
    return kcoh.load_cocycle(os.path.join(DATA, "theta.cc"))


def test_load_and_inspect(t2, theta):
    assert t2.rank == 2
    assert t2.vertices == ["*"]
    assert t2.edges == [("e", 1, "*", "*"), ("f", 2, "*", "*")]
    assert t2.square_count == 1
    assert not t2.has_sources
    assert theta.kind == "cubical2"
    assert theta.coefficients == "Q/Z"
    assert theta.values == {"e,f": "1/4"}


def test_homology_anchors(t2):
    assert [kcoh.homology(t2, r) for r in range(3)] == ["Z", "Z^2", "Z"]
    assert kcoh.cohomology(t2, 1, "Z/4") == "Z/4 + Z/4"


def test_pair_values(t2, theta):
    assert kcoh.is_two_cocycle(t2, theta)
    # ascending colour order is already preferred: no squares crossed
    assert kcoh.pair_value(t2, theta, ["e"], ["f"]) == "0"
    assert kcoh.pair_value(t2, theta, ["f"], ["e"]) == "1/4"


def test_shuffle_word(t2, theta):
    r = kcoh.shuffle_word(t2, theta, ["f", "e", "f", "e"])
    assert r["word"] == ["e", "e", "f", "f"]
    assert r["value"] == "3/4"
    assert r["moves"] == 3


def test_sigma_pair(t2, theta):
    assert kcoh.sigma_pair(t2, theta, ["e", "f"], ["e"], []) == "1/4"
    assert kcoh.sigma_pair(t2, theta, ["e", "f"], ["f"], []) == "0"
    assert kcoh.sigma_pair(t2, theta, [], [], [], vertex="*") == "0"


def test_class_equal(t2, theta):
    zero = kcoh.cocycle_from_json(ZERO_T2)
    assert not kcoh.class_equal(t2, theta, zero)
    assert kcoh.class_equal(t2, theta, theta)


def test_errors(t2, theta):
    with pytest.raises(ValueError):
        kcoh.load_graph(os.path.join(DATA, "theta.cc"))
    with pytest.raises(ValueError):
        kcoh.pair_value(t2, theta, ["nope"], ["e"])
    with pytest.raises(ValueError):
        kcoh.pair_value(t2, theta, [], ["e"])
    with pytest.raises(ValueError):
        kcoh.cocycle_from_json("{")
