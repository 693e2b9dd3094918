import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from borsukcube.cube import (DimensionError, Isometry, VertexSet,
                             canonical_form, compose, enumerate_group,
                             format_vertex, group_order, hamming_distance,
                             identity_isometry, isometric_contains,
                             load_vertex_set, parse_vertex, random_isometry,
                             save_vertex_set, vertex_set_from_strings)

U1 = parse_vertex("0000001111")[0]
U2 = parse_vertex("0000110011")[0]

K4_PRIME = vertex_set_from_strings(
    ["0000000000", "1111110000", "1110001110", "0001111110"])
K4_DOUBLE_PRIME = vertex_set_from_strings(
    ["0000000000", "1111110000", "1110001110", "0101011011"])


def test_hamming_distance_examples():
    # u1 = 0000001111, u2 = 0000110011 differ in four coordinates
    assert hamming_distance(U1, U2) == 4
    assert hamming_distance(U1, U1) == 0
    a = parse_vertex("1111110000")[0]
    b = parse_vertex("0001111110")[0]
    assert hamming_distance(a, b) == 6


def test_parse_format_roundtrip():
    mask, dim = parse_vertex("0000001111")
    assert dim == 10
    # leftmost character is bit 0, so the 1s sit at bits 6..9
    assert mask == 0b1111000000
    assert format_vertex(mask, 10) == "0000001111"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_vertex("01x0")
    with pytest.raises(DimensionError):
        parse_vertex("0101", dim=5)


def test_apply_identity_and_translation():
    ident = identity_isometry(10)
    for v in (0, U1, 1023):
        assert ident.apply(v) == v
    shift = Isometry(tuple(range(10)), U1)
    assert shift.apply(0) == U1


def test_group_order_values():
    assert group_order(1) == 2
    assert group_order(4) == 384
    assert group_order(10) == 3_715_891_200
    with pytest.raises(DimensionError):
        group_order(0)
    with pytest.raises(DimensionError):
        group_order(17)


def test_isometries_preserve_distance_bulk():
    rng = random.Random(12345)
    for _ in range(10_000):
        g = random_isometry(10, rng)
        u = rng.randrange(1 << 10)
        v = rng.randrange(1 << 10)
        assert hamming_distance(g.apply(u), g.apply(v)) == hamming_distance(u, v)


def test_isometry_is_bijection():
    rng = random.Random(7)
    for n in (3, 6, 10):
        g = random_isometry(n, rng)
        image = {g.apply(v) for v in range(1 << n)}
        assert len(image) == 1 << n


def test_composition_law():
    rng = random.Random(99)
    for _ in range(200):
        g = random_isometry(8, rng)
        h = random_isometry(8, rng)
        v = rng.randrange(1 << 8)
        assert compose(g, h).apply(v) == g.apply(h.apply(v))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, (1 << 30) - 1), st.integers(0, 1023), st.integers(0, 1023))
def test_isometry_distance_property(seed, u, v):
    g = random_isometry(10, random.Random(seed))
    assert hamming_distance(g.apply(u), g.apply(v)) == hamming_distance(u, v)


def test_isometric_contains_edge_into_clique():
    edge = VertexSet(10, (0, parse_vertex("1111110000")[0]))
    assert isometric_contains(K4_PRIME, edge)


def test_isometric_contains_distinguishes_k4_classes():
    assert not isometric_contains(K4_PRIME, K4_DOUBLE_PRIME)
    assert not isometric_contains(K4_DOUBLE_PRIME, K4_PRIME)


def test_isometric_contains_random_images():
    rng = random.Random(2024)
    for _ in range(50):
        g = random_isometry(10, rng)
        image = K4_PRIME.transform(g)
        assert isometric_contains(image, K4_PRIME)
        assert isometric_contains(K4_PRIME, image)


def test_isometric_contains_agrees_with_exhaustive_oracle():
    rng = random.Random(5150)
    n = 4
    group = list(enumerate_group(n))
    for _ in range(60):
        s = VertexSet(n, rng.sample(range(1 << n), rng.randint(2, 6)))
        f = VertexSet(n, rng.sample(range(1 << n), rng.randint(1, 4)))
        brute = any(set(g.apply(v) for v in f.members) <= set(s.members)
                    for g in group)
        assert isometric_contains(s, f) == brute


def test_canonical_form_single_point_orbit():
    assert canonical_form(VertexSet(10, (0,))).members == (0,)
    assert canonical_form(VertexSet(10, (777,))).members == (0,)


def test_canonical_form_constant_on_orbits():
    rng = random.Random(31337)
    base = canonical_form(K4_PRIME)
    for _ in range(100):
        g = random_isometry(10, rng)
        assert canonical_form(K4_PRIME.transform(g)) == base


def test_canonical_form_separates_k4_classes():
    assert canonical_form(K4_PRIME) != canonical_form(K4_DOUBLE_PRIME)


def test_canonical_form_agrees_with_exhaustive_minimum():
    rng = random.Random(8090)
    n = 4
    group = list(enumerate_group(n))
    for _ in range(25):
        s = VertexSet(n, rng.sample(range(1 << n), rng.randint(1, 5)))
        brute = min(tuple(sorted(g.apply(v) for v in s.members))
                    for g in group)
        assert canonical_form(s).members == brute


def test_vertex_set_file_roundtrip(tmp_path):
    path = tmp_path / "set.txt"
    vs = vertex_set_from_strings(["0000001111", "0000110011"])
    save_vertex_set(str(path), vs)
    assert load_vertex_set(str(path)) == vs


def test_vertex_set_file_comments_and_header(tmp_path):
    path = tmp_path / "set.txt"
    path.write_text("# comment\nn=4\n\n0110\n# more\n1001\n")
    vs = load_vertex_set(str(path))
    assert vs.dim == 4
    assert vs.members == (parse_vertex("0110")[0], parse_vertex("1001")[0])


def test_vertex_set_file_bad_line(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0110\n01x0\n")
    with pytest.raises(ValueError, match="bad.txt:2"):
        load_vertex_set(str(path))
