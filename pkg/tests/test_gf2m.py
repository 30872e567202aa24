import pytest

from prepcode.gf2m import FieldError, elem_sum, field_new


@pytest.fixture(scope="module")
def gf8():
    return field_new(3, 0b1011)


def test_field_axioms_exhaustive(gf8):
    f = gf8
    for a in f.elements():
        assert f.mul(a, 1) == a
        assert f.mul(a, 0) == 0
        for b in f.elements():
            assert f.mul(a, b) == f.mul(b, a)
            # distributivity over xor-addition
            for c in f.elements():
                assert f.mul(a, b ^ c) == f.mul(a, b) ^ f.mul(a, c)
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))


def test_inverses(gf8):
    for a in range(1, gf8.order):
        assert gf8.mul(a, gf8.inv(a)) == 1
    with pytest.raises(FieldError):
        gf8.inv(0)


def test_frobenius(gf8):
    for a in gf8.elements():
        for b in gf8.elements():
            sq = lambda x: gf8.mul(x, x)
            assert sq(a ^ b) == sq(a) ^ sq(b)


def test_cube_of_generator(gf8):
    # x^3 = x + 1 modulo x^3 + x + 1
    assert gf8.cube(0b010) == 0b011


def test_cube_bijective_at_m3(gf8):
    images = {gf8.cube(a) for a in gf8.elements()}
    assert images == set(gf8.elements())


def test_elem_sum_of_whole_field(gf8):
    assert elem_sum(gf8.elements()) == 0
    assert elem_sum([]) == 0
    assert elem_sum([5]) == 5


def test_reducible_modulus_rejected():
    # x^3 + x^2 + x + 1 = (x + 1)(x^2 + 1)
    with pytest.raises(FieldError):
        field_new(3, 0b1111)


def test_irreducible_but_imprimitive_rejected():
    # x^4 + x^3 + x^2 + x + 1 is irreducible with root of order 5
    with pytest.raises(FieldError):
        field_new(4, 0b11111)


def test_wrong_degree_rejected():
    with pytest.raises(FieldError):
        field_new(3, 0b10011)
    with pytest.raises(FieldError):
        field_new(1, None)
    with pytest.raises(FieldError):
        field_new(9, None)


def test_gf32_default():
    f = field_new(5)
    assert f.modulus == 0b100101
    assert f.order == 32
    # generator has full multiplicative order: exp table is a bijection
    assert sorted(f.exp) == list(range(1, 32))


def test_out_of_range_element(gf8):
    with pytest.raises(FieldError):
        gf8.mul(8, 1)
    with pytest.raises(FieldError):
        gf8.cube(-1)


def test_pow(gf8):
    for a in range(1, 8):
        assert gf8.pow(a, 3) == gf8.cube(a)
        assert gf8.pow(a, 0) == 1
        assert gf8.pow(a, 7) == 1  # multiplicative group order
