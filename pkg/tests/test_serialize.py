import json

from gentoda import aks, serialize
from gentoda.algebra.commutative import classical_ring
from gentoda.algebra.uea import UEAElement
from gentoda.spectral import classical_family, pairwise_commutativity, quantum_charpoly, quantum_family


def test_uea_round_trip():
    a = quantum_charpoly(3)
    doc = serialize.uea_to_json(a)
    assert serialize.uea_from_json(json.loads(serialize.dumps(doc))) == a


def test_uea_factor_exponents():
    n = 2
    x = UEAElement.e(n, 2, 1) * UEAElement.e(n, 2, 1) * UEAElement.u(n)
    doc = serialize.uea_to_json(x)
    assert doc["terms"] == [{"coefficient": "1/1", "factors": [["E", 2, 1, 2]], "spectral": {"D": 0, "eps": 0, "u": 1}}]


def test_poly_round_trip():
    R = classical_ring(3)
    f = R.x(1, 2) ** 2 * R.lam * 3 / 7 - R.eps * R.u + 1
    doc = serialize.poly_to_json(f)
    assert serialize.poly_from_json(json.loads(serialize.dumps(doc))) == f
    assert serialize.element_from_json(doc) == f


def test_family_round_trip():
    for F in (classical_family(2), quantum_family(2)):
        back = serialize.family_from_json(json.loads(serialize.dumps(serialize.family_to_json(F))))
        assert back.entries == F.entries
        assert back.leading_eps == F.leading_eps


def test_dumps_is_deterministic():
    doc1 = serialize.dumps(serialize.reduced_to_json(aks.reduce_family(2)))
    doc2 = serialize.dumps(serialize.reduced_to_json(aks.reduce_family(2)))
    assert doc1 == doc2
    report = serialize.report_to_json(pairwise_commutativity(classical_family(2)))
    assert report["status"] == "pass"


def test_rational_format():
    from fractions import Fraction

    assert serialize.rational(Fraction(-3, 6)) == "-1/2"
    assert serialize.rational(4) == "4/1"
