"""graph6 codec (one undirected graph per printable line).

Bit order is the standard upper triangle by columns: (0,1), (0,2), (1,2), (0,3), ...
"""

from typing import Iterator, List, Tuple

from app.models.graph import Graph, make_graph
from app.utils.validators import GraphValidationError

HEADER = ">>graph6<<"


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0))
    raise GraphValidationError(f"order {n} too large for graph6")


def _decode_order(data: List[int]) -> Tuple[int, int]:
    """Return (n, number of header bytes)"""
    if not data:
        raise GraphValidationError("empty graph6 line")
    if data[0] != 63 + 63:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        raise GraphValidationError("graph6 orders above 258047 are not supported")
    if len(data) < 4:
        raise GraphValidationError("truncated graph6 order header")
    n = 0
    for value in data[1:4]:
        n = (n << 6) | (value - 63)
    return n, 4


def _triangle(n: int) -> Iterator[Tuple[int, int]]:
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(text: str) -> Graph:
    line = text.strip()
    if line.startswith(HEADER):
        line = line[len(HEADER):]
    data = [ord(c) for c in line]
    if any(c < 63 or c > 126 for c in data):
        raise GraphValidationError(f"graph6 line contains characters outside 63..126: {text!r}")
    n, offset = _decode_order(data)
    body = data[offset:]
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    if len(body) < expected:
        raise GraphValidationError(f"truncated graph6 bit stream: expected {expected} bytes, got {len(body)}")
    if len(body) > expected:
        raise GraphValidationError(f"trailing data after graph6 bit stream: {text!r}")
    adj = [0] * n
    k = 0
    for i, j in _triangle(n):
        if (body[k // 6] - 63) >> (5 - k % 6) & 1:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        k += 1
    return make_graph(n, tuple(adj))


def write_graph6(graph: Graph) -> str:
    out = [_encode_order(graph.n)]
    chunk, filled = 0, 0
    for i, j in _triangle(graph.n):
        chunk = (chunk << 1) | (graph.adj[i] >> j & 1)
        filled += 1
        if filled == 6:
            out.append(chr(chunk + 63))
            chunk, filled = 0, 0
    if filled:
        out.append(chr((chunk << (6 - filled)) + 63))
    return "".join(out)


def read_graph6_file(path) -> List[Graph]:
    """Read every non-blank line of a graph6 file"""
    graphs = []
    try:
        with open(path, "r", encoding="ascii") as f:
            lines = f.readlines()
    except (OSError, UnicodeDecodeError) as e:
        raise GraphValidationError(f"cannot read graph6 file {path}: {e}") from None
    for line_num, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            graphs.append(parse_graph6(line))
        except GraphValidationError as e:
            raise GraphValidationError(f"{path}:{line_num}: {e}") from None
    return graphs
