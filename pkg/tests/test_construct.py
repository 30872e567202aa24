import random

import pytest

from prepcode.construct import (
    ConstructionError,
    build_extended_preparata,
    build_nr_via_octacode,
    hensel_lift_cubic,
    is_member,
    preparata_spec,
    random_even_nonmember,
    random_member,
    reduce,
)
from prepcode.core import (
    BinaryWord,
    CapabilityError,
    InputError,
    puncture,
    translate,
    weight_distribution,
)

EXPECTED_WD_16 = {0: 1, 6: 112, 8: 30, 10: 112, 16: 1}
EXPECTED_WD_15 = {0: 1, 5: 42, 6: 70, 7: 15, 8: 15, 9: 70, 10: 42, 15: 1}


def test_parameters(nr16):
    assert (nr16.n, nr16.M, nr16.d) == (16, 256, 6)
    assert nr16.reduced
    assert weight_distribution(nr16) == EXPECTED_WD_16


def test_all_weights_even(nr16):
    assert all(w.weight % 2 == 0 for w in nr16.words)


def test_zero_and_ones_are_members(nr16):
    spec = preparata_spec(3)
    assert BinaryWord.zeros(16) in nr16
    assert BinaryWord.ones(16) in nr16
    assert is_member(spec, BinaryWord.zeros(16))
    assert is_member(spec, BinaryWord.ones(16))


def test_weight_two_words_are_not_members():
    spec = preparata_spec(3)
    assert not is_member(spec, BinaryWord.from_support(16, [1, 2]))
    assert not is_member(spec, BinaryWord.from_support(16, [1, 9]))


def test_membership_matches_enumeration(nr16):
    spec = preparata_spec(3)
    for w in nr16.words:
        assert is_member(spec, w)
    rng = random.Random(3)
    hits = 0
    for _ in range(1000):
        w = BinaryWord(16, rng.getrandbits(16))
        assert is_member(spec, w) == (w in nr16)
        hits += w in nr16
    assert hits < 50  # random words are almost never codewords


def test_is_member_length_mismatch():
    spec = preparata_spec(3)
    with pytest.raises(InputError):
        is_member(spec, BinaryWord.zeros(15))


def test_bad_field_degree():
    with pytest.raises(InputError):
        preparata_spec(4)
    with pytest.raises(InputError):
        build_extended_preparata(2)


def test_enumeration_capped_at_degree_3():
    with pytest.raises(CapabilityError):
        build_extended_preparata(5)


def test_other_primitive_polynomial_gives_same_parameters(nr16):
    # x^3 + x^2 + 1 is the other degree-3 primitive polynomial.
    other = build_extended_preparata(3, 0b1101)
    assert (other.n, other.M, other.d) == (16, 256, 6)
    assert weight_distribution(other) == EXPECTED_WD_16


def test_hensel_lift_coefficients():
    assert hensel_lift_cubic() == [3, 1, 2, 1]


def test_octacode_route(octa16):
    assert (octa16.n, octa16.M, octa16.d) == (16, 256, 6)
    assert weight_distribution(octa16) == EXPECTED_WD_16
    assert octa16.reduced


def test_two_constructions_differ_as_sets(nr16, octa16):
    assert set(nr16.words) != set(octa16.words)


def test_reduce(nr16):
    assert reduce(nr16) == nr16
    moved = translate(nr16, nr16.words[37])
    red = reduce(moved)
    assert red.reduced
    assert (red.n, red.M, red.d) == (16, 256, 6)
    shifted = translate(nr16, BinaryWord.from_support(16, [2, 3]))
    red2 = reduce(shifted)
    assert red2.reduced
    assert (red2.M, red2.d) == (256, 6)


def test_puncture_all_positions(nr16):
    for pos in range(1, 17):
        p = puncture(nr16, pos)
        assert (p.n, p.M, p.d) == (15, 256, 5)
        assert weight_distribution(p) == EXPECTED_WD_15


def test_membership_mode_sampling_m5():
    spec = preparata_spec(5)
    rng = random.Random(1)
    members = [random_member(spec, rng) for _ in range(50)]
    assert all(is_member(spec, w) for w in members)
    vals = sorted({w.value for w in members})
    for i, a in enumerate(vals):
        for b in vals[i + 1:]:
            assert (a ^ b).bit_count() >= 6
    for _ in range(50):
        w = random_even_nonmember(spec, rng)
        assert w.weight % 2 == 0
        assert not is_member(spec, w)


def test_oracle_sampling_agrees_with_enumeration_at_m3(nr16):
    spec = preparata_spec(3)
    rng = random.Random(9)
    for _ in range(200):
        assert random_member(spec, rng) in nr16
