"""PACE treedepth decomposition text: depth line, then one 1-based parent per vertex (0 = root)."""
from typing import Optional, TextIO, Union

from pid_treedepth.core import EliminationForest
from pid_treedepth.graph import GraphFormatError


def write_tree_output(depth: int, forest: EliminationForest, sink: TextIO) -> None:
    sink.write(f"{depth}\n")
    for p in forest.parent:
        sink.write(f"{0 if p is None else p + 1}\n")


def format_tree_output(depth: int, forest: EliminationForest) -> str:
    lines = [str(depth)] + [str(0 if p is None else p + 1) for p in forest.parent]
    return "\n".join(lines) + "\n"


def parse_tree_output(text: Union[str, TextIO], n: int) -> EliminationForest:
    """Read a decomposition for an n-vertex graph; comment lines starting with ``c`` are skipped."""
    lines = text.splitlines() if isinstance(text, str) else text
    values: list[tuple[int, int]] = []
    for line_no, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped or stripped.split()[0] == "c":
            continue
        try:
            values.append((line_no, int(stripped)))
        except ValueError:
            raise GraphFormatError(f"line {line_no}: expected an integer, got {stripped!r}") from None

    if not values:
        raise GraphFormatError("empty decomposition")
    depth = values[0][1]
    if len(values) - 1 != n:
        raise GraphFormatError(f"expected {n} parent lines, got {len(values) - 1}")

    parent: list[Optional[int]] = []
    for line_no, p in values[1:]:
        if not 0 <= p <= n:
            raise GraphFormatError(f"line {line_no}: parent {p} outside 0..{n}")
        parent.append(None if p == 0 else p - 1)
    return EliminationForest(parent=parent, depth=depth)
