import pytest

import fancohom as fc


def test_projective_plane_table():
    f = fc.projective_space(2)
    assert f.rank == 2
    assert f.is_complete() and f.is_simplicial()
    assert f.f_vector() == [1, 3, 3]
    assert fc.betti(f) == [1, 0, 1, 0, 1]
    table = fc.cohomology(f)
    assert set(table) == {(0, 0), (1, 1), (2, 2)}
    assert table[(1, 1)] == {"rank": 1, "torsion": []}


def test_json_round_trip():
    f = fc.hirzebruch(3)
    g = fc.Fan.from_json(f.to_json())
    assert g == f
    assert g.rays() == f.rays()
    assert "complete simplicial" in g.summary()


def test_fan_from_maximal_and_euler():
    quadrant = fc.Fan.from_maximal(2, [[[1, 0], [0, 1]]])
    assert quadrant.f_vector() == [1, 2, 1]
    assert fc.euler(quadrant, 0) == 1
    assert fc.euler(quadrant, 1) == 0
    with pytest.raises(fc.FanError):
        fc.Fan.from_maximal(2, [[[0, 1], [1, 0]], [[1, 0], [1, 1]]])


def test_verify_regimes():
    assert fc.verify(fc.projective_space(2), "prop4.1")["verdict"] == "pass"
    assert fc.verify(fc.projective_space(2), "prop2.1")["verdict"] == "hypothesis_violation"
    report = fc.verify(fc.projective_space(2), "thm4.2", rho=0)
    assert report["verdict"] == "pass"
    assert all(check["ok"] for check in report["checks"])


def test_graph_fans_transfer():
    fans = fc.graph(fc.projective_space(1), [0, -1])
    assert fc.betti(fans["full"]) == [1, 0, 2, 0, 1]
    assert fc.betti(fans["upper"]) == [1, 0, 1, 0, 0]
    assert fans["full"].rank == 2
    assert 0 <= fans["downward_ray"] < len(fans["full"].rays())


def test_exact_linear_algebra_with_big_integers():
    assert fc.smith([[2, 4], [6, 8]]) == [2, 4]
    big = 2**80
    assert fc.hermite([[big]]) == [[big]]
    assert fc.rank([[1, 2], [2, 4]]) == 1
    assert fc.kernel([[1, 2], [2, 4]]) == [[2], [-1]] or fc.kernel([[1, 2], [2, 4]]) == [[-2], [1]]
    assert fc.saturate([[2, 0], [0, 4]]) == [[1, 0], [0, 1]]
