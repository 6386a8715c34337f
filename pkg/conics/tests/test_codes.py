from conics.codes import build_golay, build_ternary_golay, mask, support


def test_golay_weight_distribution():
    assert build_golay().weight_distribution == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


def test_golay_is_closed_under_sum():
    C = build_golay()
    a, b = C.octads[0], C.octads[1]
    assert a ^ b in C


def test_ternary_golay_weight_distribution():
    assert build_ternary_golay().weight_distribution == {0: 1, 6: 264, 9: 440, 12: 24}


def test_mask_and_support():
    assert mask([1, 0, 1]) == 0b101
    assert support(0b101) == (0, 2)
