import json

import pytest

from glmaps import make_field
from glmaps.commutation import vector_plus_constant, point_indicator, semilinear_table, vector_table
from glmaps.errors import ParseError
from glmaps.gf_core import enumerate_homs, frobenius_hom, identity_hom
from glmaps.io import dumps, from_json, load_mapping, loads, save_mapping, save_report, to_json
from glmaps.linalg import identity
from glmaps.projective import proj_points
from glmaps.semilinear import SemilinearMap, induced_projective

F2, F4 = make_field(2), make_field(2, 2)


def _objects():
    return [
        vector_table(F2, 3, F2, 3, list(range(8))),
        vector_plus_constant(SemilinearMap(enumerate_homs(F2, F4)[0], ((1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, 0))), (0, 0, 0, 1)),
        induced_projective(SemilinearMap(frobenius_hom(F4), identity(3))),
        point_indicator(proj_points(F2, 3), F2, 7),
        SemilinearMap(frobenius_hom(F4), ((1, 2), (3, 1))),
    ]


@pytest.mark.parametrize("obj", _objects(), ids=["identity", "vector_plus_constant", "frobenius_points", "point_indicator", "semilinear"])
def test_round_trip_is_exact(obj, tmp_path):
    path = tmp_path / "m.json"
    save_mapping(obj, path)
    back = load_mapping(path)
    assert back == obj
    assert dumps(to_json(back)) == path.read_text()


def test_identity_table_json_shape():
    obj = to_json(semilinear_table(SemilinearMap(identity_hom(F2), identity(2))))
    assert obj == {"type": "mapping_table", "domain": "GF(2)^2", "codomain": "GF(2)^2", "table": [[0, 0], [0, 1], [1, 0], [1, 1]]}


def test_malformed_field_spec():
    obj = {"type": "mapping_table", "domain": "GF(6)^2", "codomain": "GF(2)^2", "table": []}
    with pytest.raises(ParseError, match="domain|6"):
        from_json(obj)


def test_missing_and_bad_fields_name_the_context():
    with pytest.raises(ParseError, match="table"):
        from_json({"type": "mapping_table", "domain": "GF(2)^1", "codomain": "GF(2)^1"})
    with pytest.raises(ParseError):
        from_json({"type": "mapping_table", "domain": "GF(2)^1", "codomain": "GF(2)^1", "table": [[0], [2]]})
    with pytest.raises(ParseError):
        from_json({"type": "point_map", "domain": "GF(2)^2", "codomain": "GF(2)^2", "table": [0, 1, 9]})
    with pytest.raises(ParseError):
        from_json({"type": "nonsense"})


def test_loads_reports_line_and_column():
    with pytest.raises(ParseError, match="line 2"):
        loads('{\n  "a": ,\n}')


def test_reports_are_sorted_and_stable(tmp_path):
    path = tmp_path / "r.json"
    save_report({"b": 1, "a": [1, 2]}, path)
    text = path.read_text()
    assert text == dumps({"a": [1, 2], "b": 1})
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"a": [1, 2], "b": 1}
