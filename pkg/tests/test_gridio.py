from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l1bubble.geometry import Configuration
from l1bubble.gridio import GridParseError, format_grid, parse_grid, read_grid, roundtrip, write_grid


def test_parse_2d():
    cfg = parse_grid("AAB\n.BB\n")
    assert cfg.dimension == 2
    assert cfg.A.cells() == {(0, 0), (1, 0)}
    assert cfg.B.cells() == {(2, 0), (1, 1), (2, 1)}


def test_parse_3d_layers_and_origin():
    cfg = parse_grid("# origin: 1 2 3\nA.\n\n.B\n")
    assert cfg.dimension == 3
    assert cfg.A.cells() == {(1, 2, 3)}
    assert cfg.B.cells() == {(2, 2, 4)}


def test_single_layer_3d_directive():
    cfg = parse_grid("# dim: 3\nAB\n")
    assert cfg.dimension == 3
    assert cfg.B.cells() == {(1, 0, 0)}


@pytest.mark.parametrize(
    "text, line",
    [
        ("AB\nA\n", 2),
        ("AX\n", 1),
        ("A.\n\n\n.B\n", 3),
        ("# dim: 4\nAB\n", 1),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(GridParseError) as exc:
        parse_grid(text)
    assert exc.value.line == line


def test_missing_set_is_parse_error():
    with pytest.raises(GridParseError):
        parse_grid("AA\n")


def test_file_roundtrip(tmp_path):
    cfg = Configuration.from_cells([(0, 0, 0), (0, 1, 0)], [(1, 0, 1)])
    p = tmp_path / "c.grid"
    write_grid(cfg, p, comment="hello")
    back = read_grid(p)
    assert back.A == cfg.A and back.B == cfg.B


@settings(max_examples=80, deadline=None)
@given(
    cells=st.sets(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-2, 2)), min_size=2, max_size=10),
    k=st.integers(1, 9),
    flat=st.booleans(),
)
def test_roundtrip_property(cells, k, flat):
    cells = sorted(cells)
    if flat:
        cells = sorted({c[:2] for c in cells})
        if len(cells) < 2:
            return
    k = min(k, len(cells) - 1)
    cfg = Configuration.from_cells(cells[:k], cells[k:])
    back = roundtrip(cfg)
    assert back.A == cfg.A and back.B == cfg.B
    assert parse_grid(format_grid(cfg)).dimension == cfg.dimension
