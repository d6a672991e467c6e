"""Block-buffered draws from a numpy Generator for tight proposal loops."""

from __future__ import annotations

import numpy as np

_BLOCK = 8192


class IntStream:
    """Scalar uniform integers in [0, bound), drawn in blocks."""

    __slots__ = ("rng", "bound", "buf", "pos")

    def __init__(self, rng: np.random.Generator, bound: int):
        self.rng = rng
        self.bound = bound
        self.buf = None
        self.pos = _BLOCK

    def next(self) -> int:
        if self.pos >= _BLOCK:
            self.buf = self.rng.integers(0, self.bound, size=_BLOCK)
            self.pos = 0
        value = self.buf[self.pos]
        self.pos += 1
        return int(value)


class UniformStream:
    """Scalar uniforms in [0, 1), drawn in blocks."""

    __slots__ = ("rng", "buf", "pos")

    def __init__(self, rng: np.random.Generator):
        self.rng = rng
        self.buf = None
        self.pos = _BLOCK

    def next(self) -> float:
        if self.pos >= _BLOCK:
            self.buf = self.rng.random(size=_BLOCK)
            self.pos = 0
        value = self.buf[self.pos]
        self.pos += 1
        return float(value)
