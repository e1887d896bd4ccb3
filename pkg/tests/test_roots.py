import pytest

from relpatch.errors import NotARoot, UnsupportedType
from relpatch.roots import automorphism_group, build_root_system, height


@pytest.mark.parametrize("type_,rank,count", [
    ("A", 1, 2), ("A", 2, 6), ("A", 3, 12), ("B", 2, 8), ("B", 3, 18),
    ("C", 2, 8), ("C", 3, 18), ("D", 4, 24),
])
def test_root_counts(type_, rank, count):
    rs = build_root_system(type_, rank)
    assert len(rs.roots) == count
    assert set(rs.roots) == {tuple(-c for c in r) for r in rs.roots}


@pytest.mark.parametrize("type_,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 4)])
def test_simple_roots_form_a_base(type_, rank):
    rs = build_root_system(type_, rank)
    for r in rs.roots:
        coords = rs.simple_coords(r)
        assert all(c >= 0 for c in coords) or all(c <= 0 for c in coords)
        assert rs.from_simple_coords(coords) == r
        assert height(rs, tuple(-c for c in r)) == -height(rs, r)


def test_a2_roots():
    rs = build_root_system("A", 2)
    coords = {rs.simple_coords(r) for r in rs.roots}
    assert coords == {(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)}
    a1, a2 = rs.simple_roots
    assert height(rs, a1) == 1
    assert height(rs, rs.from_simple_coords((1, 1))) == 2


def test_c2_long_roots():
    rs = build_root_system("C", 2)
    norm = {r: sum(c * c for c in r) for r in rs.roots}
    long_coords = {rs.simple_coords(r) for r in rs.roots if norm[r] == max(norm.values())}
    assert long_coords == {(0, 1), (0, -1), (2, 1), (-2, -1)}
    assert height(rs, rs.from_simple_coords((2, 1))) == 3


def test_a1():
    rs = build_root_system("A", 1)
    assert {rs.simple_coords(r) for r in rs.roots} == {(1,), (-1,)}
    assert automorphism_group(rs) == []


def test_automorphisms():
    a3 = build_root_system("A", 3)
    (sigma,) = automorphism_group(a3)
    assert sigma.perm == (2, 1, 0)
    assert automorphism_group(build_root_system("C", 2)) == []
    for r in a3.roots:
        image = a3.apply(sigma, r)
        assert a3.is_root(image)
        assert height(a3, image) == height(a3, r)


def test_errors():
    with pytest.raises(UnsupportedType):
        build_root_system("G", 2)
    with pytest.raises(UnsupportedType):
        build_root_system("A", 0)
    with pytest.raises(NotARoot):
        height(build_root_system("A", 2), (1, 1, 1))


def test_positive_order_is_by_height():
    rs = build_root_system("C", 3)
    heights = [rs.height(r) for r in rs.positive_roots]
    assert heights == sorted(heights)
