from hypothesis import given, strategies as st

from chartloom.ingest.pathdata import PathLine, PathRect, path_to_shape


def test_axis_aligned_closed_quad():
    assert path_to_shape("M0,0 H10 V5 H0 Z") == PathRect(0, 0, 10, 5)


def test_triangle_is_none():
    assert path_to_shape("M0,0 L10,0 L5,8 Z") is None


def test_two_vertex_line():
    assert path_to_shape("M0,0 L10,10") == PathLine(0, 0, 10, 10)


def test_curves_disqualify():
    assert path_to_shape("M0,0 C1,1 2,2 3,3 Z") is None


def test_unparseable_is_none():
    assert path_to_shape("squiggle") is None
    assert path_to_shape("") is None


def test_explicit_lineto_rectangle():
    assert path_to_shape("M2,3 L12,3 L12,9 L2,9 Z") == PathRect(2, 3, 10, 6)


def test_relative_commands():
    assert path_to_shape("m2,3 h10 v6 h-10 z") == PathRect(2, 3, 10, 6)


def test_subpixel_noise_deduped():
    # coincident vertices within tolerance collapse onto the first one
    assert path_to_shape("M0,0 L10,0 L10.3,0.2 L10.3,5 L0,5 Z") == PathRect(0, 0, 10, 5)


def test_diagonal_edge_rejected():
    assert path_to_shape("M0,0 L10,0 L12,5 L0,5 Z") is None


@given(st.integers(0, 3))
def test_rotation_free(start):
    """Shuffling the start vertex of a rectangular cycle keeps the same rect."""
    verts = [(0.0, 0.0), (10.0, 0.0), (10.0, 5.0), (0.0, 5.0)]
    cycle = verts[start:] + verts[:start]
    d = "M" + " L".join(f"{x},{y}" for x, y in cycle) + " Z"
    assert path_to_shape(d) == PathRect(0, 0, 10, 5)
