"""Counter-based random stream used by the generators and randomized solvers.

The stream is SplitMix64 viewed as a counter-based generator: draw number
``k`` (0-based) of the stream with seed ``s`` is

    mix64(s + (k + 1) * 0x9E3779B97F4A7C15  mod 2**64)

where ``mix64`` is the SplitMix64 finalizer. The state is therefore just the
pair ``(seed, counter)``, which makes the stream trivially reproducible on
any platform with 64-bit unsigned arithmetic and cheap to advance from inside
compiled loops.

Derived quantities:

* uniform double on [0, 1): ``(draw >> 11) * 2**-53``
* uniform integer on [0, n): rejection sampling, accept a draw ``x`` iff
  ``x >= 2**64 mod n`` and return ``x mod n`` (no modulo bias).
"""
import numba as nb
import numpy as np

GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_ZERO = np.uint64(0)
_INV53 = 1.0 / 9007199254740992.0

_jit = {"nogil": True, "cache": True}


@nb.njit(**_jit)
def mix64(z):
    z = np.uint64(z)
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    return z ^ (z >> _S31)


@nb.njit(**_jit)
def draw_u64(seed, counter):
    """Raw 64-bit draw number ``counter`` of stream ``seed``."""
    return mix64(np.uint64(seed) + (np.uint64(counter) + _ONE) * GOLDEN_GAMMA)


@nb.njit(**_jit)
def draw_uniform(seed, counter):
    return np.float64(draw_u64(seed, counter) >> _S11) * _INV53


@nb.njit(**_jit)
def draw_index(seed, counter, n):
    """Uniform integer on [0, n); returns ``(value, next_counter)``."""
    un = np.uint64(n)
    threshold = (_ZERO - un) % un
    while True:
        x = draw_u64(seed, counter)
        counter += 1
        if x >= threshold:
            return np.int64(x % un), counter


@nb.njit(**_jit)
def fill_uniform(seed, counter, out, low, high):
    """Fill ``out`` (flat order) with uniform draws on [low, high)."""
    width = high - low
    for t in range(out.size):
        out[t] = low + width * draw_uniform(seed, counter + t)
    return counter + out.size


def derive_seed(*parts):
    """Mix integers into one 64-bit seed; order-sensitive and platform stable.

    ``h = mix64(parts[0] + gamma)`` then ``h = mix64(h ^ mix64(p + gamma))``
    for every later part ``p``.
    """
    if not parts:
        raise ValueError("derive_seed needs at least one integer")
    gamma = int(GOLDEN_GAMMA)
    h = int(mix64(np.uint64((int(parts[0]) + gamma) % 2**64)))
    for p in parts[1:]:
        q = int(mix64(np.uint64((int(p) + gamma) % 2**64)))
        h = int(mix64(np.uint64(h ^ q)))
    return h


class CounterRNG:
    """A ``(seed, counter)`` stream; each draw advances ``counter``.

    >>> rng = CounterRNG(7)
    >>> u = rng.random(3)
    >>> rng.counter
    3
    """

    def __init__(self, seed, counter=0):
        self.seed = int(seed) % 2**64
        self.counter = int(counter)

    def __repr__(self):
        return f"CounterRNG(seed={self.seed}, counter={self.counter})"

    def random(self, size=None, low=0.0, high=1.0):
        """Uniform draws on [low, high), consumed in C order."""
        if size is None:
            out = np.empty(1)
            self.fill(out, low, high)
            return float(out[0])
        out = np.empty(size)
        self.fill(out.reshape(-1), low, high)
        return out

    def fill(self, flat, low=0.0, high=1.0):
        self.counter = int(fill_uniform(np.uint64(self.seed), self.counter, flat,
                                        float(low), float(high)))
        return flat

    def integers(self, n):
        """One uniform integer on [0, n)."""
        if n < 1:
            raise ValueError("n must be positive")
        value, self.counter = draw_index(np.uint64(self.seed), self.counter, n)
        self.counter = int(self.counter)
        return int(value)

    def spawn(self, *parts):
        """Independent child stream keyed by ``parts``."""
        return CounterRNG(derive_seed(self.seed, *parts))


def as_rng(rng):
    """Accept a :class:`CounterRNG` or an integer seed."""
    if isinstance(rng, CounterRNG):
        return rng
    if isinstance(rng, (int, np.integer)):
        return CounterRNG(int(rng))
    raise TypeError(f"expected CounterRNG or int seed, got {type(rng).__name__}")
