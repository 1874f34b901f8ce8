"""SIMON/SIMECK cipher cores and their XOR-difference round machinery.

Everything here is pure and operates on plain ints masked to the word
size, so the search loops elsewhere can stay allocation-free.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional


class Variant(Enum):
    SIMON = "simon"
    SIMECK = "simeck"


# (and_rot_1, and_rot_2, lin_rot) per family: rotations feeding the two
# AND inputs and the linear XOR term of the round function.
_ROTATIONS = {
    Variant.SIMON: (1, 8, 2),
    Variant.SIMECK: (0, 5, 1),
}

_SUPPORTED_WORD_BITS = (16, 24, 32)


@dataclass(frozen=True)
class CipherSpec:
    """Static parameters of one cipher variant."""

    variant: Variant
    word_bits: int
    total_rounds: int
    and_rot_1: int
    and_rot_2: int
    lin_rot: int

    def __post_init__(self):
        if self.word_bits not in _SUPPORTED_WORD_BITS:
            raise ValueError(f"unsupported word size: {self.word_bits}")
        if (self.and_rot_1, self.and_rot_2, self.lin_rot) != _ROTATIONS[self.variant]:
            raise ValueError(f"rotation constants do not match {self.variant.value}")

    @property
    def block_bits(self) -> int:
        return 2 * self.word_bits

    @property
    def mask(self) -> int:
        return (1 << self.word_bits) - 1

    @property
    def name(self) -> str:
        return f"{self.variant.value}{self.block_bits}"


def simon32() -> CipherSpec:
    return CipherSpec(Variant.SIMON, 16, 32, 1, 8, 2)


def simeck32() -> CipherSpec:
    return CipherSpec(Variant.SIMECK, 16, 32, 0, 5, 1)


def spec_by_name(name: str) -> CipherSpec:
    try:
        return {"simon32": simon32, "simeck32": simeck32}[name.lower()]()
    except KeyError:
        raise ValueError(f"unsupported cipher variant: {name!r}") from None


@dataclass(frozen=True)
class DiffState:
    """XOR difference (left, right) at a round boundary."""

    left: int
    right: int
    round_index: int = 0

    def validate(self, spec: CipherSpec) -> None:
        if not (0 <= self.left <= spec.mask and 0 <= self.right <= spec.mask):
            raise ValueError("difference words exceed the word size")
        if not (0 <= self.round_index <= spec.total_rounds):
            raise ValueError("round index outside the cipher's round range")

    def is_zero(self) -> bool:
        return self.left == 0 and self.right == 0


def rotl(x: int, r: int, n: int) -> int:
    """Circular left shift of an n-bit word."""
    if not 0 <= r < n:
        raise ValueError(f"rotation {r} out of range for {n}-bit word")
    if x >> n:
        raise ValueError(f"value {x:#x} exceeds {n} bits")
    if r == 0:
        return x
    return ((x << r) | (x >> (n - r))) & ((1 << n) - 1)


def hamming_weight(x: int) -> int:
    """Number of set bits."""
    return x.bit_count()


def and_diff_inputs(state: DiffState, spec: CipherSpec) -> tuple[int, int]:
    """The two AND-input differences derived from the left word."""
    n = spec.word_bits
    return rotl(state.left, spec.and_rot_1, n), rotl(state.left, spec.and_rot_2, n)


def xdp_and_weight(a: int, b: int, c: int) -> Optional[int]:
    """-log2 probability of the AND transition (a, b) -> c, or None if impossible.

    A bit of c outside the support a|b forces probability zero; inside the
    support every bit costs a factor 1/2, giving weight hw(a|b).
    """
    support = a | b
    if c & ~support:
        return None
    return hamming_weight(support)


def xdp_and_bruteforce(a: int, b: int, c: int, n: int) -> Fraction:
    """Exhaustive AND differential probability over all 2^(2n) input pairs.

    Independent oracle for xdp_and_weight; n is capped because the cost
    is 4^n.
    """
    if n > 8:
        raise ValueError(f"brute force limited to n <= 8 bits, got {n}")
    size = 1 << n
    if not (a < size and b < size and c < size):
        raise ValueError("differences exceed the word size")
    count = 0
    for p in range(size):
        pa = p ^ a
        for q in range(size):
            if (p & q) ^ (pa & (q ^ b)) == c:
                count += 1
    return Fraction(count, size * size)


def round_forward_diff(state: DiffState, c: int, spec: CipherSpec) -> DiffState:
    """Propagate a difference one round forward given the AND output difference c.

    Key addition cancels in the difference domain, so only the rotations
    and c appear.
    """
    a, b = and_diff_inputs(state, spec)
    if xdp_and_weight(a, b, c) is None:
        raise ValueError(f"AND output difference {c:#06x} impossible for inputs "
                         f"({a:#06x}, {b:#06x})")
    n = spec.word_bits
    new_left = state.right ^ c ^ rotl(state.left, spec.lin_rot, n)
    return DiffState(new_left, state.left, state.round_index + 1)


def round_backward_diff(state: DiffState, c: int, spec: CipherSpec) -> DiffState:
    """Exact inverse of round_forward_diff; the pre-image left word is state.right."""
    n = spec.word_bits
    a = rotl(state.right, spec.and_rot_1, n)
    b = rotl(state.right, spec.and_rot_2, n)
    if xdp_and_weight(a, b, c) is None:
        raise ValueError(f"AND output difference {c:#06x} impossible for inputs "
                         f"({a:#06x}, {b:#06x})")
    prev_right = state.left ^ c ^ rotl(state.right, spec.lin_rot, n)
    return DiffState(state.right, prev_right, state.round_index - 1)


def replay_trail(initial: DiffState, trail: list[int],
                 spec: CipherSpec) -> tuple[DiffState, int]:
    """Walk a forward trail, returning the final state and cumulative weight.

    Raises if any transition is impossible.
    """
    state = initial
    weight = 0
    for c in trail:
        a, b = and_diff_inputs(state, spec)
        w = xdp_and_weight(a, b, c)
        if w is None:
            raise ValueError(f"trail contains impossible transition at round "
                             f"{state.round_index}")
        weight += w
        state = round_forward_diff(state, c, spec)
    return state, weight


# --- key schedules and encryption (needed only to validate trails empirically) ---

# SIMON z0 constant sequence, 62 bits, z0[0] is the most significant bit below.
_SIMON_Z0 = 0b11111010001001010110000111001101111101000100101011000011100110

KEY_WORDS = 4  # both 32-bit variants use 4 key words


def _simeck_sequence(rounds: int) -> list[int]:
    # LFSR with polynomial X^5 + X^2 + 1, all-ones initial state.
    states = [1] * 5
    for i in range(rounds - 5):
        states.append(states[i + 2] ^ states[i])
    return states


def round_keys(key: tuple[int, ...], spec: CipherSpec, rounds: Optional[int] = None) -> list[int]:
    """Expand a master key (words in the designers' printed order, k3 first)
    into the first `rounds` round keys."""
    if len(key) != KEY_WORDS:
        raise ValueError(f"expected {KEY_WORDS} key words, got {len(key)}")
    n = spec.word_bits
    mask = spec.mask
    if any(not (0 <= k <= mask) for k in key):
        raise ValueError("key words exceed the word size")
    if rounds is None:
        rounds = spec.total_rounds
    if spec.variant is Variant.SIMON:
        k = [key[3], key[2], key[1], key[0]]
        for i in range(KEY_WORDS, rounds):
            tmp = rotl(k[i - 1], n - 3, n) ^ k[i - 3]
            tmp ^= rotl(tmp, n - 1, n)
            z = (_SIMON_Z0 >> (61 - ((i - KEY_WORDS) % 62))) & 1
            k.append(((mask ^ k[i - KEY_WORDS]) ^ tmp ^ z ^ 3) & mask)
        return k[:rounds]
    # SIMECK schedule reuses the round function on the key registers.
    z = _simeck_sequence(spec.total_rounds)
    t = [key[2], key[1], key[0], None]  # t0, t1, t2 registers
    ks = [key[3]]
    for i in range(rounds - 1):
        const = (mask ^ 3) ^ z[i]
        x = t[i % 4]
        new_t = ks[i] ^ ((x & rotl(x, 5, n)) ^ rotl(x, 1, n)) ^ const
        t[(i + 3) % 4] = new_t
        ks.append(x)
    return ks


def _round_function(x: int, spec: CipherSpec) -> int:
    n = spec.word_bits
    return (rotl(x, spec.and_rot_1, n) & rotl(x, spec.and_rot_2, n)) ^ rotl(x, spec.lin_rot, n)


def encrypt(plaintext: tuple[int, int], key: tuple[int, ...], spec: CipherSpec,
            rounds: Optional[int] = None) -> tuple[int, int]:
    """Encrypt one (left, right) block for `rounds` rounds (all by default)."""
    ks = round_keys(key, spec, rounds)
    left, right = plaintext
    if not (0 <= left <= spec.mask and 0 <= right <= spec.mask):
        raise ValueError("plaintext words exceed the word size")
    for rk in ks:
        left, right = right ^ _round_function(left, spec) ^ rk, left
    return left, right


def decrypt(ciphertext: tuple[int, int], key: tuple[int, ...], spec: CipherSpec,
            rounds: Optional[int] = None) -> tuple[int, int]:
    ks = round_keys(key, spec, rounds)
    left, right = ciphertext
    for rk in reversed(ks):
        left, right = right, left ^ _round_function(right, spec) ^ rk
    return left, right


def empirical_trail_probability(initial: DiffState, trail: list[int],
                                spec: CipherSpec, pairs: int, seed: int) -> Fraction:
    """Monte-Carlo estimate of the probability that random plaintext pairs with
    the initial difference, under random keys, land on the trail's final
    difference after len(trail) rounds."""
    if len(trail) > spec.total_rounds:
        raise ValueError("trail longer than the cipher")
    if pairs < 1:
        raise ValueError("need at least one plaintext pair")
    final, _ = replay_trail(initial, trail, spec)  # rejects invalid trails
    if not trail:
        return Fraction(1)
    rounds = len(trail)
    rng = random.Random(seed)
    mask = spec.mask
    hits = 0
    for _ in range(pairs):
        key = tuple(rng.randrange(mask + 1) for _ in range(KEY_WORDS))
        ks = round_keys(key, spec, rounds)
        l1 = rng.randrange(mask + 1)
        r1 = rng.randrange(mask + 1)
        l2, r2 = l1 ^ initial.left, r1 ^ initial.right
        for rk in ks:
            l1, r1 = r1 ^ _round_function(l1, spec) ^ rk, l1
            l2, r2 = r2 ^ _round_function(l2, spec) ^ rk, l2
        if l1 ^ l2 == final.left and r1 ^ r2 == final.right:
            hits += 1
    return Fraction(hits, pairs)
