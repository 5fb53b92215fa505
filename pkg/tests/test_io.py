from __future__ import annotations

import pytest

from permbound.group import symmetric_group
from permbound.io import GroupFileError, format_group, parse_group_text, read_group_file, write_group_file


def test_parse_with_comments():
    G = parse_group_text("# S4\n\ndegree 4\n(1 2 3 4)  # rotation\n\n(1 2)\n")
    assert G.degree == 4 and G.order() == 24


@pytest.mark.parametrize(
    "text",
    ["", "(1 2)\n", "degree x\n", "degree 0\n", "degree 3\n(1 4)\n", "degree 3\n(1 2\n", "order 3\n"],
)
def test_parse_errors(text):
    with pytest.raises(GroupFileError):
        parse_group_text(text)


def test_round_trip(tmp_path):
    G = symmetric_group(5)
    path = tmp_path / "s5.grp"
    write_group_file(path, G, comment="symmetric")
    H = read_group_file(path)
    assert H.name == "s5" and H.same_group(G)
    assert format_group(H).splitlines()[0] == "degree 5"


def test_identity_generator():
    G = parse_group_text("degree 3\n()\n")
    assert G.order() == 1
