import io
import random

import pytest

from prepcode.core import (
    BinaryWord,
    CapabilityError,
    Code,
    InputError,
    ParseError,
    StructureError,
    code_from_text,
    code_to_text,
    hamming_distance,
    min_distance,
    puncture,
    read_code,
    translate,
    weight_distribution,
    write_code,
)


def test_word_basics():
    w = BinaryWord.from_support(8, [1, 3, 8])
    assert w.weight == 3
    assert w.support() == (1, 3, 8)
    assert w.bit(1) == 1 and w.bit(2) == 0 and w.bit(8) == 1
    assert w.bits() == "10100001"


def test_word_coordinate_one_is_msb():
    w = BinaryWord.from_support(4, [1])
    assert w.value == 0b1000
    assert w.to_hex() == "8"


def test_word_hex_round_trip_odd_length():
    w = BinaryWord.from_support(15, [1, 15])
    assert w.to_hex() == "8002"  # 15 bits padded to 16, pad bit zero
    assert BinaryWord.from_hex(15, "8002") == w


def test_word_hex_rejects_nonzero_pad():
    with pytest.raises(InputError):
        BinaryWord.from_hex(15, "8003")


def test_word_hex_rejects_bad_width_and_digits():
    with pytest.raises(InputError):
        BinaryWord.from_hex(16, "1234X")
    with pytest.raises(InputError):
        BinaryWord.from_hex(16, "00G0")
    with pytest.raises(InputError):
        BinaryWord.from_hex(16, "123")


def test_word_validation():
    with pytest.raises(InputError):
        BinaryWord(0, 0)
    with pytest.raises(InputError):
        BinaryWord(4, 16)
    with pytest.raises(InputError):
        BinaryWord.from_support(4, [5])


def test_hamming_distance_examples():
    w = BinaryWord.from_support(16, [2, 5, 9])
    assert hamming_distance(w, w) == 0
    z = BinaryWord.zeros(16)
    assert hamming_distance(z, BinaryWord.from_support(16, [1, 2, 3])) == 3
    assert hamming_distance(z, BinaryWord.ones(16)) == 16


def test_hamming_distance_length_mismatch():
    with pytest.raises(InputError):
        hamming_distance(BinaryWord.zeros(4), BinaryWord.zeros(5))


def test_distance_is_xor_weight_and_triangle():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randrange(1, 33)
        a = BinaryWord(n, rng.getrandbits(n))
        b = BinaryWord(n, rng.getrandbits(n))
        c = BinaryWord(n, rng.getrandbits(n))
        assert hamming_distance(a, b) == (a ^ b).weight
        assert hamming_distance(a, b) == hamming_distance(b, a)
        assert hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c)


def test_min_distance_trivial():
    assert min_distance([BinaryWord.zeros(8), BinaryWord.from_support(8, [3])]) == 1
    with pytest.raises(InputError):
        min_distance([BinaryWord.zeros(8)])
    with pytest.raises(InputError):
        min_distance([BinaryWord.zeros(8), BinaryWord.zeros(7)])


def test_min_distance_cap():
    words = [BinaryWord(6, v) for v in range(40)]
    with pytest.raises(CapabilityError):
        min_distance(words, cap=30)


def test_code_params(nr16):
    assert (nr16.n, nr16.M, nr16.d) == (16, 256, 6)
    assert nr16.reduced
    assert BinaryWord.zeros(16) in nr16
    assert BinaryWord.from_support(16, [1]) not in nr16


def test_degenerate_code_has_no_distance():
    single = Code.from_words([BinaryWord.zeros(4)])
    with pytest.raises(InputError):
        single.d


def test_weight_distribution_trivial():
    c = Code.from_words([BinaryWord.zeros(9), BinaryWord.ones(9)])
    assert weight_distribution(c) == {0: 1, 9: 1}


def test_weight_distribution_counts_sum(nr16):
    wd = weight_distribution(nr16)
    assert sum(wd.values()) == nr16.M
    assert wd[0] == 1


def test_translate_identity_and_reduction(nr16):
    assert translate(nr16, BinaryWord.zeros(16)) == nr16
    w = nr16.words[10]
    moved = translate(nr16, w)
    assert moved.reduced
    assert (moved.n, moved.M, moved.d) == (16, 256, 6)


def test_translate_preserves_distances(nr16):
    rng = random.Random(2)
    t = BinaryWord(16, rng.getrandbits(16))
    moved = translate(nr16, t)
    assert moved.d == nr16.d
    pairs = [(rng.randrange(256), rng.randrange(256)) for _ in range(50)]
    tv = t.value
    for i, j in pairs:
        a, b = nr16.words[i], nr16.words[j]
        assert hamming_distance(a, b) == (
            (a.value ^ tv) ^ (b.value ^ tv)
        ).bit_count()


def test_translate_length_mismatch(nr16):
    with pytest.raises(InputError):
        translate(nr16, BinaryWord.zeros(15))


def test_puncture_small():
    c = Code.from_words([BinaryWord.zeros(4), BinaryWord.ones(4)])
    p = puncture(c, 1)
    assert p.words == (BinaryWord.zeros(3), BinaryWord.ones(3))


def test_puncture_merges_rejected():
    c = Code.from_words([BinaryWord(3, 0b000), BinaryWord(3, 0b001)])
    with pytest.raises(StructureError):
        puncture(c, 3)


def test_puncture_bad_coordinate(nr16):
    with pytest.raises(InputError):
        puncture(nr16, 0)
    with pytest.raises(InputError):
        puncture(nr16, 17)


def test_puncture_preparata(nr16):
    p = puncture(nr16, 7)
    assert (p.n, p.M, p.d) == (15, 256, 5)


def test_distance_invariance_exhaustive(p15):
    # Translating by any codeword must not change the weight distribution.
    base = weight_distribution(p15)
    for w in p15.words:
        assert weight_distribution(translate(p15, w)) == base


def test_file_round_trip(nr16, tmp_path):
    path = tmp_path / "c.code"
    write_code(nr16, path)
    again = read_code(path)
    assert again == nr16


def test_file_round_trip_odd_length(p15):
    assert code_from_text(code_to_text(p15)) == p15


def test_file_header_checked():
    text = code_to_text(Code.from_words([BinaryWord.zeros(8), BinaryWord.ones(8)]))
    bad = text.replace("m=2", "m=3")
    with pytest.raises(ParseError):
        code_from_text(bad)


def test_file_bad_magic():
    with pytest.raises(ParseError) as err:
        code_from_text("# something else\nn=4 m=1 d=?\n0\n")
    assert err.value.line == 1


def test_file_bad_hex_line_number():
    with pytest.raises(ParseError) as err:
        code_from_text("# prepcode v1\nn=16 m=2 d=?\n0000\n00G0\n")
    assert err.value.line == 4


def test_file_duplicate_words():
    with pytest.raises(ParseError):
        code_from_text("# prepcode v1\nn=4 m=2 d=?\nA\nA\n")


def test_file_distance_mismatch():
    with pytest.raises(ParseError):
        code_from_text("# prepcode v1\nn=4 m=2 d=3\nA\nB\n")


def test_write_to_stream(p15):
    buf = io.StringIO()
    write_code(p15, buf)
    first, second = buf.getvalue().splitlines()[:2]
    assert first == "# prepcode v1"
    assert second == "n=15 m=256 d=5"
