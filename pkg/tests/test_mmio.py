import numpy as np
import pytest

from aqr import (
    CsrSpdOperator,
    ParseError,
    UnsupportedFormatError,
    csr_from_coo,
    laplacian_spd,
    make_rng,
    read_matrix_market,
    write_matrix_market,
)


def test_coordinate_identity(tmp_path):
    p = tmp_path / "eye.mtx"
    p.write_text(
        "%%MatrixMarket matrix coordinate real general\n"
        "2 2 2\n"
        "1 1 1.0\n"
        "2 2 1.0\n"
    )
    op = read_matrix_market(p)
    assert isinstance(op, CsrSpdOperator)
    assert np.array_equal(op.to_dense(), np.eye(2))


def test_array_column_major_order(tmp_path):
    p = tmp_path / "z.mtx"
    p.write_text(
        "%%MatrixMarket matrix array real general\n"
        "% a comment\n"
        "3 2\n"
        "1.0\n2.0\n3.0\n4.0\n5.0\n6.0\n"
    )
    M = read_matrix_market(p)
    assert np.array_equal(M, [[1.0, 4.0], [2.0, 5.0], [3.0, 6.0]])


def test_symmetric_coordinate_expands_triangle(tmp_path):
    p = tmp_path / "s.mtx"
    p.write_text(
        "%%MatrixMarket matrix coordinate real symmetric\n"
        "3 3 4\n"
        "1 1 2.0\n"
        "2 1 -1.0\n"
        "2 2 2.0\n"
        "3 3 2.0\n"
    )
    A = read_matrix_market(p).to_dense()
    assert A[0, 1] == A[1, 0] == -1.0
    assert np.array_equal(A, A.T)


def test_symmetric_array(tmp_path):
    p = tmp_path / "sa.mtx"
    p.write_text(
        "%%MatrixMarket matrix array real symmetric\n"
        "2 2\n"
        "4.0\n2.0\n5.0\n"
    )
    M = read_matrix_market(p)
    assert np.array_equal(M, [[4.0, 2.0], [2.0, 5.0]])


def test_roundtrip_dense_bitwise(tmp_path, rng):
    M = rng.standard_normal((5, 3)) * 10.0 ** rng.integers(-12, 12, (5, 3))
    p = tmp_path / "m.mtx"
    write_matrix_market(p, M)
    back = read_matrix_market(p)
    assert np.array_equal(back, np.asfortranarray(M))


def test_roundtrip_csr_bitwise(tmp_path):
    rng = make_rng(99)
    rows = rng.integers(0, 50, 200)
    cols = rng.integers(0, 50, 200)
    vals = rng.standard_normal(200)
    op = csr_from_coo(50, rows, cols, vals)
    sym = csr_from_coo(
        50,
        np.concatenate([rows, cols]),
        np.concatenate([cols, rows]),
        np.concatenate([vals, vals]),
    )
    p = tmp_path / "c.mtx"
    write_matrix_market(p, sym)
    back = read_matrix_market(p)
    assert isinstance(back, CsrSpdOperator)
    assert np.array_equal(back.indptr, sym.indptr)
    assert np.array_equal(back.indices, sym.indices)
    assert np.array_equal(back.data, sym.data)
    del op


def test_roundtrip_laplacian(tmp_path):
    op = laplacian_spd(4, 4)
    p = tmp_path / "l.mtx"
    write_matrix_market(p, op)
    back = read_matrix_market(p)
    assert np.array_equal(back.data, op.data)
    assert np.array_equal(back.indices, op.indices)


def test_parse_error_carries_line_number(tmp_path):
    p = tmp_path / "bad.mtx"
    p.write_text(
        "%%MatrixMarket matrix coordinate real general\n"
        "2 2 2\n"
        "1 1 1.0\n"
        "2 oops 1.0\n"
    )
    with pytest.raises(ParseError) as info:
        read_matrix_market(p)
    assert info.value.line_number == 4


def test_truncated_file(tmp_path):
    p = tmp_path / "short.mtx"
    p.write_text("%%MatrixMarket matrix array real general\n2 2\n1.0\n")
    with pytest.raises(ParseError):
        read_matrix_market(p)


def test_unsupported_field(tmp_path):
    p = tmp_path / "c.mtx"
    p.write_text("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1.0 0.0\n")
    with pytest.raises(UnsupportedFormatError):
        read_matrix_market(p)
    p.write_text("%%MatrixMarket matrix coordinate pattern general\n1 1 1\n1 1\n")
    with pytest.raises(UnsupportedFormatError):
        read_matrix_market(p)


def test_bad_header(tmp_path):
    p = tmp_path / "h.mtx"
    p.write_text("not a matrix market file\n")
    with pytest.raises(ParseError) as info:
        read_matrix_market(p)
    assert info.value.line_number == 1


def test_index_out_of_range(tmp_path):
    p = tmp_path / "r.mtx"
    p.write_text("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n")
    with pytest.raises(ParseError) as info:
        read_matrix_market(p)
    assert info.value.line_number == 3
