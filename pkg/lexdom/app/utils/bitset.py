"""Vertex sets as integer bitmasks: bit v is set iff vertex v is a member."""

from typing import Iterable, Iterator


def bit(v: int) -> int:
    return 1 << v


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def popcount(mask: int) -> int:
    return mask.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
