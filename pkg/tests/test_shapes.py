import math

import pytest

from hexdimer import INFINITE, BoxShape, ScaledShape


def test_finite_volume_formula():
    assert BoxShape(1, 1, 1).volume == 6
    assert BoxShape(2, 2, 2).volume == 24
    assert BoxShape(3, 2, 1).volume == 2 * (6 + 2 + 3)


def test_infinite_volume_is_mn():
    assert BoxShape(4, 5, INFINITE).volume == 20
    assert not BoxShape(4, 5, INFINITE).is_finite


@pytest.mark.parametrize("bad", [(0, 1, 1), (1, -2, 1), (1, 1, 0), (1, 1, 2.5)])
def test_invalid_boxes_rejected(bad):
    with pytest.raises(ValueError):
        BoxShape(*bad)


def test_scaled_shape_lattice_consistency():
    s = ScaledShape(1.0, 2.0, 3.0, 0.1)
    assert s.box() == BoxShape(10, 20, 30)
    assert s.inv_eps == 10
    with pytest.raises(ValueError):
        ScaledShape(1.0, 2.0, 3.0, 0.3)  # 1/0.3 not integral


def test_scaled_from_box_roundtrip():
    box = BoxShape(3, 2, INFINITE)
    s = ScaledShape.from_box(box, 7)
    assert s.box() == box
    assert math.isclose(s.a, 3 / 7)
    assert not s.is_finite
