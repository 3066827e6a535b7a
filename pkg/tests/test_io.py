import json

import numpy as np
import pytest

from ldoi import io
from ldoi.embed import embed
from ldoi.hadamardness import SignMatrix
from ldoi.triples import MatrixTriple, TripleError, random_triple
from ldoi.unitary import random_unitary


def test_triple_json_roundtrip_is_exact(rng):
    for d in (1, 2, 5):
        t = random_triple(d, rng)
        text = io.dump_triple(t)
        assert io.load_triple(text).allclose(t, atol=0)
        assert io.dump_triple(io.load_triple(text)) == text


def test_json_layout():
    obj = json.loads(io.dump_triple(MatrixTriple.swap(2)))
    assert obj["d"] == 2
    assert obj["C"] == [[[1, 0], [1, 0]], [[1, 0], [1, 0]]]


def test_float_format():
    assert io.fmt_float(0.1) == "0.10000000000000001"
    assert io.fmt_float(-0.0) == "0"
    assert io.fmt_float(3.0) == "3"
    with pytest.raises(ValueError):
        io.fmt_float(float("nan"))


def test_dumps_deterministic():
    t = random_unitary(3, seed=4)
    assert io.dump_triple(t) == io.dump_triple(random_unitary(3, seed=4))


def test_real_grids_accepted():
    t = io.load_triple('{"d": 2, "A": [[1, 0], [0, 1]], "B": [[1, 0], [0, 1]], "C": [[1, 1], [1, 1]]}')
    assert t.allclose(MatrixTriple.swap(2))


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        '{"A": [[1]], "B": [[1]], "C": [[1]]}',
        '{"d": 2, "A": [[1]], "B": [[1]], "C": [[1]]}',
        '{"d": 1, "A": [[[1, 2, 3]]], "B": [[1]], "C": [[1]]}',
    ],
)
def test_malformed(text):
    with pytest.raises(TripleError):
        io.load_triple(text)


def test_csv_roundtrip(rng):
    X = embed(random_triple(3, rng))
    assert np.array_equal(io.dense_from_csv(io.dense_to_csv(X)), X)
    first = io.dense_to_csv(X).splitlines()[0].split(",")
    assert len(first) == 2 * 9


def test_values_csv():
    text = io.values_to_csv([1 + 2j, -0.5j])
    assert text == "re,im\n1,2\n0,-0.5\n"


def test_load_matrix_variants():
    assert io.load_matrix("+-\n--") == SignMatrix.from_array([[1, -1], [-1, -1]])
    assert io.load_matrix("[[1, -1], [1, 1]]") == SignMatrix.from_array([[1, -1], [1, 1]])
    M = io.load_matrix("[[[1, 0], [0, 1]], [[0, 1], [1, 0]]]")
    assert isinstance(M, np.ndarray) and M[0, 1] == 1j
    assert isinstance(io.load_matrix("[[0.5, 1], [1, 1]]"), np.ndarray)
