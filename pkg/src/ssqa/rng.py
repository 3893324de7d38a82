"""64-bit xorshift random number generation with per-replica streams.

The generator applies Marsaglia's (13, 7, 17) left/right/left shift triple.
Replica stream k is seeded with splitmix64(seed + (k+1) * GOLDEN), which is
a bijection of distinct inputs, so streams are pairwise distinct; a zero
result (which would be an absorbing state) is remapped deterministically.

Binary spin noise takes the low bit of each output word; uniform floats map
the word into [-1, 1). Both engines (reference and hardware model) consume
one output word per spin update from the owning replica's stream, in spin
index order, so their streams stay aligned.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*a, **k):
        def deco(f):
            return f

        return deco if not (len(a) == 1 and callable(a[0])) else a[0]


MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    x = (x + GOLDEN) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return (x ^ (x >> 31)) & MASK64


def xorshift_next(state: int):
    """One step of the 64-bit xorshift (13, 7, 17); returns (state', output)."""
    if state == 0:
        raise ValueError("xorshift state must be nonzero")
    x = state & MASK64
    x = (x ^ (x << 13)) & MASK64
    x ^= x >> 7
    x = (x ^ (x << 17)) & MASK64
    return x, x


class XorShift64:
    """Scalar 64-bit xorshift generator; state is never zero."""

    def __init__(self, seed: int):
        self.state = seed & MASK64
        if self.state == 0:
            raise ValueError("seed must be nonzero")

    def next_word(self) -> int:
        self.state, out = xorshift_next(self.state)
        return out


def stream_seeds(seed: int, n_streams: int) -> np.ndarray:
    """Derive one nonzero 64-bit stream seed per replica from the run seed."""
    seeds = np.empty(n_streams, dtype=np.uint64)
    for k in range(n_streams):
        s = splitmix64((seed + (k + 1) * GOLDEN) & MASK64)
        while s == 0:
            s = splitmix64(s + 1)
        seeds[k] = s
    return seeds


@njit(cache=True)
def _block_words(states, n):
    r = states.shape[0]
    out = np.empty((n, r), dtype=np.uint64)
    for i in range(n):
        for k in range(r):
            x = states[k]
            x ^= x << np.uint64(13)
            x ^= x >> np.uint64(7)
            x ^= x << np.uint64(17)
            states[k] = x
            out[i, k] = x
    return out


def _block_words_py(states, n):
    out = np.empty((n, states.shape[0]), dtype=np.uint64)
    for i in range(n):
        states ^= states << np.uint64(13)
        states ^= states >> np.uint64(7)
        states ^= states << np.uint64(17)
        out[i] = states
    return out


class RngStreams:
    """R parallel xorshift streams advanced in lockstep.

    next_block(n) returns the next n output words of every stream as an
    (n, R) array: entry [i, k] is draw i of stream k.
    """

    def __init__(self, seed: int, n_streams: int):
        self.states = stream_seeds(seed, n_streams)
        self.n_streams = n_streams

    def next_block(self, n: int) -> np.ndarray:
        if _HAVE_NUMBA:
            return _block_words(self.states, n)
        return _block_words_py(self.states, n)

    def next_bipolar(self, n: int) -> np.ndarray:
        """(n, R) array of +-1 noise bits (low bit of each word)."""
        words = self.next_block(n)
        return np.where(words & np.uint64(1), np.int64(1), np.int64(-1))

    def next_uniform(self, n: int) -> np.ndarray:
        """(n, R) array of uniforms in [-1, 1)."""
        words = self.next_block(n)
        return (words >> np.uint64(1)).astype(np.float64) / (2.0**62) - 1.0
