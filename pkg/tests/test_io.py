import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from topovec.barcode import Barcode
from topovec.filtration import PointCloud
from topovec import io


def test_parse_single_bar():
    out = io.parse_barcodes("0,0.0,1.5\n")
    assert out == {0: Barcode(0, [(0.0, 1.5)])}


def test_parse_with_header_and_inf():
    out = io.parse_barcodes("dim,birth,death\n1,0,inf\n1,0,2\n")
    assert out[1].bars[0][0].death == 2
    assert out[1].bars[1][0].is_essential


def test_parse_rejects_birth_after_death():
    with pytest.raises(io.BarcodeFileError, match="line 1"):
        io.parse_barcodes("1,2.0,1.0\n")


def test_parse_reports_line_numbers():
    with pytest.raises(io.BarcodeFileError, match="line 3"):
        io.parse_barcodes("0,0,1\n0,1,2\n0,oops,3\n")
    with pytest.raises(io.BarcodeFileError, match="line 2"):
        io.parse_barcodes("0,0,1\n0,1\n")


def test_round_trip(tmp_path):
    barcodes = {
        0: Barcode(0, [(0, 1, 3), (0.25, 0.75)]),
        1: Barcode(1, [(1.0, math.inf), (0.1, 2.2)]),
    }
    path = tmp_path / "bars.csv"
    io.write_barcodes(barcodes, path)
    assert io.read_barcodes(path) == barcodes


@given(
    st.lists(
        st.tuples(
            st.floats(min_value=-10, max_value=10, allow_nan=False),
            st.floats(min_value=0, max_value=10, allow_nan=False),
            st.integers(min_value=1, max_value=3),
        ),
        max_size=10,
    )
)
def test_round_trip_property(raw):
    barcodes = {0: Barcode(0, [(p, p + l, m) for p, l, m in raw])}
    assert io.parse_barcodes(io.format_barcodes(barcodes)).get(0, Barcode(0)) == barcodes[0]


def test_point_cloud_round_trip(tmp_path):
    pc = PointCloud(np.array([[0.0, 1.5], [2.25, -3.5]]))
    path = tmp_path / "points.csv"
    io.write_point_cloud(pc, path)
    back = io.read_point_cloud(path)
    assert np.array_equal(back.points, pc.points)


def test_point_cloud_ragged_rows():
    with pytest.raises(io.BarcodeFileError, match="line 2"):
        io.parse_point_cloud("0,1\n0,1,2\n")


def test_image_csv():
    img = io.parse_image_csv("1,2\n3,4\n")
    assert img.width == 2 and img.height == 2
    assert img.pixel(1, 1) == 4


def test_pgm_plain_and_binary():
    plain = b"P2\n# comment\n2 2\n255\n0 64\n128 255\n"
    img = io.parse_pgm(plain)
    assert img.width == 2 and img.pixel(1, 1) == 255
    binary = b"P5\n2 2\n255\n" + bytes([0, 64, 128, 255])
    img_b = io.parse_pgm(binary)
    assert np.array_equal(img.intensities, img_b.intensities)


def test_pgm_round_trip(tmp_path):
    values = np.array([[0.0, 0.5], [0.75, 1.0]])
    path = tmp_path / "img.pgm"
    io.write_pgm(values, path)
    back = io.read_image(path)
    assert back.to_matrix()[1, 1] == 255
    assert back.to_matrix()[0, 0] == 0


def test_pgm_truncated():
    with pytest.raises(io.BarcodeFileError):
        io.parse_pgm(b"P5\n4 4\n255\n\x00\x01")
