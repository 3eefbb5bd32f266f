import json
from importlib import resources

import pytest

from plurikit import appendix
from plurikit.appendix import ChecksumError, load_golden, table_normalization, verify_entries, verify_sigma
from plurikit.bases import mi_bidegree, offdiag_unflatten
from plurikit.field import KAPPA, asc_poch
from plurikit.poly import Poly
from plurikit.weyl import apply_D

MISPRINTED = [(2, 0, 1, 0, 1, 0), (1, 0, 1, 1, 1, 0)]


def test_checksum_detects_tampering(monkeypatch):
    raw = json.loads(resources.files("plurikit").joinpath("data/appendix_a.json").read_text())
    raw["payload"]["entries"][0]["nu"] = [9, 9, 9, 9, 9, 9]

    class Fake:
        def joinpath(self, _):
            return self

        def read_text(self):
            return json.dumps(raw)

    monkeypatch.setattr(appendix.resources, "files", lambda _: Fake())
    with pytest.raises(ChecksumError):
        load_golden()


def test_golden_shape():
    gold = load_golden()
    assert gold["n"] == 3
    assert len(gold["entries"]) == 21
    assert {tuple(e["nu"]) for e in gold["errata"]} == set(MISPRINTED)


def test_normalization():
    assert table_normalization(2) == KAPPA * (KAPPA + 1) * (KAPPA - 1) * KAPPA
    assert table_normalization(0) == 1
    assert table_normalization(3) == asc_poch(KAPPA, 3) * asc_poch(KAPPA - 1, 3)


def test_sigma_verbatim():
    rep = verify_sigma()
    assert rep.ok and rep.checked == 3


@pytest.mark.parametrize("method", ["generating_function", "linear_solve"])
def test_verbatim_table(method):
    rep = verify_entries(method=method)
    assert rep.checked == 21
    assert sorted(rep.mismatches) == sorted(MISPRINTED)
    assert rep.summary() == "19/21 entries match"


def test_errata_table():
    rep = verify_entries(errata=True)
    assert rep.ok and rep.matched == 21


def test_low_degree_entries():
    rep = verify_entries(max_nu=2)
    assert rep.ok and rep.checked > 0


@pytest.mark.parametrize("flat", MISPRINTED)
def test_printed_forms_are_not_pluriharmonic(flat):
    gold = load_golden()
    printed = next(Poly.from_json(e["poly"]) for e in gold["entries"] if tuple(e["nu"]) == flat)
    fixed = next(Poly.from_json(e["poly"]) for e in gold["errata"] if tuple(e["nu"]) == flat)
    assert any(apply_D(i, i, printed) for i in (1, 2, 3))
    assert not any(apply_D(i, i, fixed) for i in (1, 2, 3))
    bd = mi_bidegree(offdiag_unflatten(flat, 3))
    assert set(fixed.bidegree_split()) == {(bd.a, bd.b)}
