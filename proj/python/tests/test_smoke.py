import json
from fractions import Fraction

import pytest

import gbd


@pytest.fixture
def z_chain():
    return gbd.Chain(gbd.Group.lattice(1), [2, 4, 8])


def test_group_arithmetic():
    h = gbd.Group.heisenberg()
    assert h.multiply((1, 0, 0), (0, 1, 0)) == (1, 1, 1)
    assert h.inverse((1, 1, 0)) == (-1, -1, 1)
    assert len(h.generators) == 4


def test_defects_are_fractions():
    z = gbd.Group.lattice(1)
    assert gbd.folner_defect(z, [(i,) for i in range(10)], (1,)) == Fraction(1, 5)
    assert gbd.s_boundary(z, [(-1,), (0,), (1,)], [(i,) for i in range(10)]) == [
        (-1,), (0,), (9,), (10,)]


def test_tiles_and_refinement(z_chain):
    assert gbd.build_tile(z_chain, 3) == [(i,) for i in range(8)]
    assert gbd.verify_tiling(z_chain, [(0,), (1,), (2,), (3,)], 2) is None
    assert "share a coset" in gbd.verify_tiling(z_chain, [(0,), (4,)], 2)
    result = gbd.refine(z_chain, 1, 3)
    assert result["ok"] and result["centers"] == [(0,), (2,), (4,), (6,)]


def test_odometer_carries(z_chain):
    orbit = gbd.odometer_orbit(z_chain, (1,), 8, 3)
    assert orbit[7] == [1, 3, 7]
    assert orbit[8] == [0, 0, 0]


def test_certificate_example(z_chain):
    cert = gbd.certificate(z_chain, "3 7 1\n", 3)
    assert cert["K"] == [[7]]
    assert [g["patches"][0]["mover"] for g in cert["graphs"]] == [[-7], [-6], [-5]]
    assert all(cert["validation"].values())
    with pytest.raises(gbd.ValidationError):
        gbd.certificate(z_chain, "3 0 1\n", 3)


def test_measure_and_report(z_chain):
    h_chain = gbd.Chain(gbd.Group.heisenberg(), [2])
    solved = gbd.solve_invariant_measure(h_chain, 1, [(1, 0, 0), (0, 1, 0)])
    assert solved["unique"] and solved["masses"] == [Fraction(1, 8)] * 8
    report = json.loads(gbd.af_chain_report(z_chain))
    assert report["multiplicities"] == [2, 2]
    assert report["supernatural"] == {"2": "inf"}


def test_cli_exit_codes():
    code, out, _ = gbd.run_cli(["odometer", "--steps", "3", "--depth", "2"])
    assert code == 0 and json.loads(out)["orbit"][3] == [1, 3]
    code, _, err = gbd.run_cli(["odometer", "--steps", "3", "--depth", "9"])
    assert code == 2 and "level" in err
