"""Bit-exact graph6 encoding and decoding.

The format packs the upper triangle of the adjacency matrix in column order
(pairs (0,1), (0,2), (1,2), (0,3), ...) into 6-bit chunks, most significant
bit first, each chunk offset by 63 into the printable range.  The size header
is one byte for n <= 62, '~' plus three bytes up to n = 258047, and '~~'
plus six bytes up to n = 2^36 - 1.
"""

from __future__ import annotations

from .constructions import Graph


class Graph6Error(ValueError):
    """Malformed graph6 input."""


_MAX_N = (1 << 36) - 1


def _size_header(n: int) -> bytes:
    if n < 0 or n > _MAX_N:
        raise Graph6Error(f"vertex count {n} outside the graph6 range [0, 2^36)")
    if n <= 62:
        return bytes([n + 63])
    chunks = 3 if n <= 258047 else 6
    prefix = b"~" if chunks == 3 else b"~~"
    body = bytes(((n >> (6 * (chunks - 1 - i))) & 0x3F) + 63 for i in range(chunks))
    return prefix + body


def _pack_bits(bits: list[int]) -> bytes:
    out = bytearray()
    for i in range(0, len(bits), 6):
        chunk = bits[i : i + 6]
        chunk += [0] * (6 - len(chunk))
        val = 0
        for b in chunk:
            val = (val << 1) | b
        out.append(val + 63)
    return bytes(out)


def encode_graph6(graph: Graph) -> bytes:
    """Encode a simple undirected graph as graph6 bytes."""
    n = graph.n
    header = _size_header(n)
    bits = []
    for j in range(1, n):
        nb = set(graph.neighbors(j))
        for i in range(j):
            bits.append(1 if i in nb else 0)
    return header + _pack_bits(bits)


def encode_graph6_from_columns(n: int, columns: list[int]) -> bytes:
    """Encode from per-column upper-triangle values.

    ``columns[j-1]`` holds the bits (i, j) for i < j, with i = 0 as the most
    significant bit, which is exactly the graph6 bit order.
    """
    bits = []
    for j in range(1, n):
        col = columns[j - 1]
        for i in range(j):
            bits.append((col >> (j - 1 - i)) & 1)
    return _size_header(n) + _pack_bits(bits)


def decode_graph6(data: bytes | str) -> Graph:
    """Decode graph6 bytes back into a Graph.

    Accepts the optional ">>graph6<<" prefix; rejects malformed headers,
    bytes outside the printable range, and payload length or padding
    mismatches, each with a distinct message.
    """
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<") :]
    if not data:
        raise Graph6Error("empty input")
    for b in data:
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b} outside the graph6 printable range 63..126")

    pos = 0
    if data[0] != 126:
        n = data[0] - 63
        pos = 1
    elif len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise Graph6Error("truncated 3-byte size header")
        n = 0
        for b in data[1:4]:
            n = (n << 6) | (b - 63)
        pos = 4
        if n <= 62:
            raise Graph6Error("non-minimal multi-byte size header")
    else:
        if len(data) < 8:
            raise Graph6Error("truncated 6-byte size header")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        pos = 8
        if n <= 258047:
            raise Graph6Error("non-minimal multi-byte size header")

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    payload = data[pos:]
    if len(payload) != nbytes:
        raise Graph6Error(f"payload holds {len(payload)} bytes, header implies {nbytes}")

    edges = []
    bit_index = 0
    i, j = 0, 1
    for byte in payload:
        val = byte - 63
        for k in range(5, -1, -1):
            bit = (val >> k) & 1
            if bit_index < nbits:
                if bit:
                    edges.append((i, j))
                i += 1
                if i == j:
                    i, j = 0, j + 1
            elif bit:
                raise Graph6Error("nonzero padding bits")
            bit_index += 1
    return Graph(n, edges)
