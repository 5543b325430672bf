"""Seeded random streams.

Every random draw in the package comes from a Philox counter-based generator
keyed by ``(seed, *tags)``. Tags may be ints, floats or strings; the same key
always gives the same stream and distinct keys give independent streams.
"""

from __future__ import annotations

import struct
import zlib

import numpy as np

_MASK32 = 0xFFFFFFFF


def _words(tag) -> list[int]:
    if isinstance(tag, (bool, np.bool_)):
        return [int(tag)]
    if isinstance(tag, (int, np.integer)):
        v = int(tag)
        if v < 0:
            raise ValueError("integer stream tags must be non-negative")
        out = []
        while True:
            out.append(v & _MASK32)
            v >>= 32
            if not v:
                return out
    if isinstance(tag, (float, np.floating)):
        lo, hi = struct.unpack("<II", struct.pack("<d", float(tag)))
        return [lo, hi]
    if isinstance(tag, str):
        return [zlib.crc32(tag.encode()), len(tag)]
    raise TypeError(f"unsupported stream tag {tag!r}")


def stream(seed: int, *tags) -> np.random.Generator:
    """Independent generator for ``seed`` split by ``tags``."""
    key: list[int] = []
    for t in tags:
        w = _words(t)
        # length prefix keeps (1, 2) and (1 | 2<<32,) apart
        key.append(len(w))
        key.extend(w)
    ss = np.random.SeedSequence(entropy=_words(int(seed) & (2**64 - 1)), spawn_key=tuple(key))
    return np.random.Generator(np.random.Philox(ss))
