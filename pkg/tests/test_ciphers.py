"""Cipher core: rotations, weights, AND differentials, round functions,
encryption against published vectors, empirical trail probability."""
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vistacrypt.ciphers import (CipherSpec, DiffState, Variant, and_diff_inputs,
                                decrypt, empirical_trail_probability, encrypt,
                                hamming_weight, replay_trail, rotl,
                                round_backward_diff, round_forward_diff, simeck32,
                                simon32, spec_by_name, xdp_and_bruteforce,
                                xdp_and_weight)

words16 = st.integers(min_value=0, max_value=0xFFFF)


def test_rotl_identity_and_wraparound():
    assert rotl(0b0001, 0, 4) == 0b0001
    assert rotl(0b1000, 1, 4) == 0b0001
    assert rotl(0x8000, 1, 16) == 0x0001


def test_rotl_against_exhaustive_4bit_table():
    # oracle: rotate via string manipulation
    for x in range(16):
        for r in range(4):
            bits = format(x, "04b")
            assert rotl(x, r, 4) == int(bits[r:] + bits[:r], 2)


def test_rotl_rejects_bad_rotation():
    with pytest.raises(ValueError):
        rotl(1, 16, 16)
    with pytest.raises(ValueError):
        rotl(1, -1, 16)


@given(words16, st.integers(min_value=0, max_value=15))
def test_rotl_bijection(x, r):
    assert rotl(rotl(x, r, 16), (16 - r) % 16, 16) == x


def test_hamming_weight():
    assert hamming_weight(0) == 0
    assert hamming_weight(0xFFFF) == 16
    assert hamming_weight(0b1011) == 3


@given(words16, words16)
def test_hamming_weight_subadditive_on_or(a, b):
    assert hamming_weight(a | b) <= hamming_weight(a) + hamming_weight(b)


def test_and_diff_inputs():
    simon = simon32()
    simeck = simeck32()
    assert and_diff_inputs(DiffState(0, 0), simon) == (0, 0)
    assert and_diff_inputs(DiffState(0x0001, 0), simon) == (0x0002, 0x0100)
    assert and_diff_inputs(DiffState(0x0001, 0), simeck) == (0x0001, 0x0020)


def test_cipher_spec_validates_rotations():
    with pytest.raises(ValueError):
        CipherSpec(Variant.SIMON, 16, 32, 0, 5, 1)
    with pytest.raises(ValueError):
        CipherSpec(Variant.SIMON, 15, 32, 1, 8, 2)
    assert spec_by_name("simon32").name == "simon32"
    with pytest.raises(ValueError):
        spec_by_name("simon48")


def test_xdp_weight_basics():
    assert xdp_and_weight(0, 0, 0) == 0
    assert xdp_and_weight(0, 0, 1) is None
    assert xdp_and_weight(0b0011, 0b0101, 0b0110) == 3
    # any c outside the support is impossible
    assert xdp_and_weight(0b0011, 0b0101, 0b1000) is None


def test_xdp_bruteforce_basics():
    assert xdp_and_bruteforce(0, 0, 0, 4) == 1
    assert xdp_and_bruteforce(0, 0, 1, 4) == 0
    assert xdp_and_bruteforce(0b0011, 0b0101, 0b0110, 4) == Fraction(1, 8)
    with pytest.raises(ValueError):
        xdp_and_bruteforce(0, 0, 0, 9)


def test_xdp_weight_matches_bruteforce_sampled():
    # full 4096-triple sweep lives in the acceptance suite; spot-check here
    rng = random.Random(7)
    for _ in range(40):
        a, b, c = (rng.randrange(16) for _ in range(3))
        w = xdp_and_weight(a, b, c)
        p = xdp_and_bruteforce(a, b, c, 4)
        assert (w is None and p == 0) or p == Fraction(1, 2 ** w)


def _forward_oracle(state, c, spec, trials=4000, seed=11):
    """Empirical difference propagation: encrypt random pairs one round with
    keys folded in, keep pairs whose AND output difference equals c."""
    rng = random.Random(seed)
    n, mask = spec.word_bits, spec.mask
    outs = set()
    for _ in range(trials):
        l1, r1 = rng.randrange(mask + 1), rng.randrange(mask + 1)
        k = rng.randrange(mask + 1)
        l2, r2 = l1 ^ state.left, r1 ^ state.right
        def round1(l, r):
            f_and = rotl(l, spec.and_rot_1, n) & rotl(l, spec.and_rot_2, n)
            return r ^ f_and ^ rotl(l, spec.lin_rot, n) ^ k, l
        a1 = (rotl(l1, spec.and_rot_1, n) & rotl(l1, spec.and_rot_2, n))
        a2 = (rotl(l2, spec.and_rot_1, n) & rotl(l2, spec.and_rot_2, n))
        if a1 ^ a2 != c:
            continue
        (nl1, nr1), (nl2, nr2) = round1(l1, r1), round1(l2, r2)
        outs.add((nl1 ^ nl2, nr1 ^ nr2))
    return outs


@pytest.mark.parametrize("spec,state,c", [
    (simon32(), DiffState(0x0001, 0x0000), 0x0000),
    (simeck32(), DiffState(0x0001, 0x0001), 0x0001),
])
def test_round_forward_matches_empirical_propagation(spec, state, c):
    expected = round_forward_diff(state, c, spec)
    outs = _forward_oracle(state, c, spec)
    assert outs == {(expected.left, expected.right)}


def test_round_forward_examples():
    simon = simon32()
    zero = round_forward_diff(DiffState(0, 0), 0, simon)
    assert (zero.left, zero.right) == (0, 0)
    nxt = round_forward_diff(DiffState(0x0001, 0), 0, simon)
    assert (nxt.left, nxt.right) == (0x0004, 0x0001)
    with pytest.raises(ValueError):
        round_forward_diff(DiffState(0x0001, 0), 0x8000, simon)


def test_round_backward_inverts_forward():
    simon = simon32()
    fwd = round_forward_diff(DiffState(0x0001, 0), 0, simon)
    back = round_backward_diff(fwd, 0, simon)
    assert (back.left, back.right) == (0x0001, 0)


@settings(max_examples=200)
@given(words16, words16, st.randoms(use_true_random=False))
def test_backward_forward_roundtrip(left, right, rnd):
    spec = simon32() if rnd.random() < 0.5 else simeck32()
    state = DiffState(left, right, round_index=1)
    a, b = and_diff_inputs(state, spec)
    c = rnd.getrandbits(16) & (a | b)
    fwd = round_forward_diff(state, c, spec)
    back = round_backward_diff(fwd, c, spec)
    assert (back.left, back.right, back.round_index) == (left, right, 1)


def test_zero_difference_is_fixed_point():
    for spec in (simon32(), simeck32()):
        state = DiffState(0, 0)
        for _ in range(8):
            a, b = and_diff_inputs(state, spec)
            assert xdp_and_weight(a, b, 0) == 0
            state = round_forward_diff(state, 0, spec)
        assert state.is_zero()


# published designer test vectors
SIMON32_VECTOR = ((0x6565, 0x6877), (0x1918, 0x1110, 0x0908, 0x0100), (0xC69B, 0xE9BB))
SIMECK32_VECTOR = ((0x6565, 0x6877), (0x1918, 0x1110, 0x0908, 0x0100), (0x770D, 0x2C76))


def test_simon32_test_vector():
    pt, key, ct = SIMON32_VECTOR
    assert encrypt(pt, key, simon32()) == ct
    assert decrypt(ct, key, simon32()) == pt


def test_simeck32_test_vector():
    pt, key, ct = SIMECK32_VECTOR
    assert encrypt(pt, key, simeck32()) == ct
    assert decrypt(ct, key, simeck32()) == pt


@given(words16, words16, st.tuples(words16, words16, words16, words16))
@settings(max_examples=50)
def test_encrypt_decrypt_identity(left, right, key):
    for spec in (simon32(), simeck32()):
        assert decrypt(encrypt((left, right), key, spec), key, spec) == (left, right)


def test_encrypt_rejects_bad_key_length():
    with pytest.raises(ValueError):
        encrypt((0, 0), (1, 2, 3), simon32())


def test_replay_trail_accumulates_weight():
    simon = simon32()
    final, weight = replay_trail(DiffState(0x0001, 0), [0, 0], simon)
    assert weight == 4  # 2 per round along the linear trail
    assert final.round_index == 2
    with pytest.raises(ValueError):
        replay_trail(DiffState(0x0001, 0), [0x8000], simon)


def test_empirical_probability_empty_trail():
    assert empirical_trail_probability(DiffState(1, 0), [], simon32(), 10, 0) == 1


def test_empirical_probability_one_round():
    # weight-2 transition: estimate should land within 5x of 2^-2
    spec = simon32()
    est = empirical_trail_probability(DiffState(0x0001, 0), [0x0002], spec,
                                      pairs=4096, seed=5)
    assert Fraction(1, 20) < est < Fraction(5, 4)
