"""Group files: ``degree n`` on the first line, then one generator per line.

Generators are written in 1-based cycle notation. Blank lines and anything
after ``#`` are ignored.
"""

from __future__ import annotations

from pathlib import Path

from .group import Group
from .perm import format_permutation, parse_permutation


class GroupFileError(ValueError):
    pass


def parse_group_text(text: str, name: str | None = None) -> Group:
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree":
                raise GroupFileError(f"line {lineno}: expected 'degree n'")
            try:
                degree = int(parts[1])
            except ValueError:
                raise GroupFileError(f"line {lineno}: bad degree {parts[1]!r}") from None
            if degree < 1:
                raise GroupFileError(f"line {lineno}: degree must be positive")
            continue
        try:
            gens.append(parse_permutation(line, degree))
        except ValueError as exc:
            raise GroupFileError(f"line {lineno}: {exc}") from None
    if degree is None:
        raise GroupFileError("missing 'degree n' line")
    return Group(degree, gens, name=name)


def read_group_file(path) -> Group:
    path = Path(path)
    return parse_group_text(path.read_text(), name=path.stem)


def format_group(G: Group, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"degree {G.degree}")
    lines.extend(format_permutation(g) for g in G.generators)
    return "\n".join(lines) + "\n"


def write_group_file(path, G: Group, comment: str | None = None) -> None:
    Path(path).write_text(format_group(G, comment))
