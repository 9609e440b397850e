from fractions import Fraction

import latcoh
from latcoh import (
    ResultCode,
    cyclotomic_lattice,
    gauss_lattice,
    sign_lattice,
    trivial_lattice,
)
from latcoh.utils import digest
from tests.data import PAPER3_DELTA_COLUMNS, PAPER_WITNESS


def test_init_is_cached(word_cap):
    assert latcoh.init(word_cap) is latcoh.init(word_cap)
    assert latcoh.init(word_cap)._core.word_cap == word_cap


def test_tate(client):
    result = client.cohomology.tate(gauss_lattice())
    assert result.result_code == ResultCode.SUCCESS
    report = result.response
    assert report.free_outside_origin
    assert report.violations == []
    assert report.status == 0
    assert len(report.cells) == 6
    assert report.digest == digest(gauss_lattice().to_json_dict())


def test_tate_jmax(client, paper3):
    report = client.cohomology.tate(paper3, 1).response
    assert {(c.i, c.j) for c in report.cells} == {
        (0, 0),
        (1, 0),
        (0, 1),
        (1, 1),
    }


def test_e2(client):
    report = client.cohomology.e2(trivial_lattice(4, 0)).response
    assert report.i_max == 4
    assert [c.torsion for c in report.cells] == [(), (), (4,), (), (4,)]
    assert report.checkerboard_violations == []


def test_alpha1(client, paper3):
    report = client.obstruction.alpha1(paper3, PAPER_WITNESS).response
    columns = [tuple(col) for col in zip(*report.delta)]
    assert columns == PAPER3_DELTA_COLUMNS
    assert report.alpha1 == [[-x for x in row] for row in report.delta]
    assert report.sign == -1
    assert report.obstruction_nonzero
    assert report.witness_pairing == 2


def test_alpha1_non_invariant_witness(client, paper3):
    result = client.obstruction.alpha1(paper3, [1, 0, 0, 0, 0, 0, 0, 0, 0])
    assert result.result_code == ResultCode.ERROR
    assert result.exit_status == 3


def test_d2(client, paper3):
    report = client.spectral.d2(paper3).response
    assert report.all_zero
    assert len(report.maps) == 9
    assert report.maps[0].target == (2, 0)


def test_collapse(client, paper3, paper6):
    assert client.spectral.collapse(paper3).exit_status == 0
    failed = client.spectral.collapse(paper6)
    assert failed.result_code == ResultCode.SUCCESS
    assert not failed.response.collapses
    assert failed.response.witnesses
    assert failed.exit_status == 1


def test_e3(client, paper3):
    report = client.spectral.e3(paper3).response
    assert report.changed == []


def test_euler(client):
    report = client.euler.ratio(sign_lattice()).response
    assert report.k == 1
    assert Fraction(report.lhs) == Fraction(report.rhs) == 4
    assert report.equal
    assert report.fixed_points is None


def test_euler_precondition(client, paper3):
    result = client.euler.ratio(paper3, 1)
    assert result.result_code == ResultCode.ERROR
    assert result.error.code == "PreconditionError"
    assert result.exit_status == 2


def test_prime(client):
    report = client.euler.prime(cyclotomic_lattice(3, 1)).response
    assert report.p == 3
    assert report.h1_order == 3
    assert report.ratio == "27"
    assert report.consistent


def test_verify_unknown_corruption(client):
    result = client.paper.verify(corrupt="klein")
    assert result.result_code == ResultCode.ERROR
    assert result.exit_status == 2