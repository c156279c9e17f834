import csv
import io
import json

import numpy as np
import pytest

from spintomo import io as sio
from spintomo.sampling import random_density_matrix, random_operator
from spintomo.tomography import SphereQuadrature, symbol_table, tomogram


def test_tomogram_json_round_trip_is_exact(rng):
    w = tomogram(random_density_matrix(3, rng), SphereQuadrature.for_spin(3))
    text = sio.dumps_json(sio.symbol_table_to_dict(w))
    back = sio.symbol_table_from_dict(json.loads(text))
    assert back.is_probability
    assert np.array_equal(back.values, w.values)


def test_symbol_json_keeps_imaginary_part(rng):
    f = symbol_table(random_operator(2, rng), SphereQuadrature.for_spin(2))
    back = sio.symbol_table_from_dict(json.loads(sio.dumps_json(sio.symbol_table_to_dict(f))))
    assert np.array_equal(back.values, f.values)


def test_symbol_csv_round_trip(rng):
    f = symbol_table(random_operator(1, rng), SphereQuadrature.for_spin(1))
    rows = list(csv.reader(io.StringIO(sio.symbol_table_to_csv(f))))
    assert rows[0] == list(sio.SYMBOL_COLUMNS)
    values = np.array([float(r[4]) + 1j * float(r[5]) for r in rows[1:]])
    assert np.array_equal(values, f.values.ravel())


def test_symbol_table_from_dict_rejects_bad_rows(rng):
    w = tomogram(random_density_matrix(1, rng), SphereQuadrature.for_spin(1))
    data = sio.symbol_table_to_dict(w)
    data["rows"] = data["rows"][:-1]
    with pytest.raises(ValueError, match="rows"):
        sio.symbol_table_from_dict(data)
    data = sio.symbol_table_to_dict(w)
    data["quad_M"] += 1
    with pytest.raises(ValueError):
        sio.symbol_table_from_dict(data)


def test_density_matrix_round_trip(rng):
    rho = random_density_matrix(4, rng)
    data = json.loads(sio.dumps_json(sio.density_matrix_to_dict(rho)))
    assert data["basis"] == sio.BASIS_TAG and data["dim"] == 5
    assert np.array_equal(sio.density_matrix_from_dict(data), rho)


def test_density_matrix_rejections():
    with pytest.raises(ValueError, match="basis"):
        sio.density_matrix_from_dict({"dim": 1, "basis": "ascending", "re": [[1.0]], "im": [[0.0]]})
    with pytest.raises(ValueError, match="positive"):
        sio.density_matrix_from_dict({"dim": 2, "re": [[1.5, 0], [0, -0.5]], "im": [[0, 0], [0, 0]]})
    with pytest.raises(ValueError, match="shape"):
        sio.density_matrix_from_dict({"dim": 3, "re": [[1.0]], "im": [[0.0]]})


def test_dumps_json_is_deterministic():
    a = sio.dumps_json({"b": np.float64(0.1), "a": np.arange(3)})
    assert a == sio.dumps_json({"a": [0, 1, 2], "b": 0.1})
    assert a.endswith("\n")
    with pytest.raises(ValueError):
        sio.dumps_json({"x": float("nan")})
