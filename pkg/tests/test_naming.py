import json
from importlib import resources

import pytest

from schubertq.naming import (
    _e6_naming,
    _e7_search,
    _e7_assignment,
    fixture_payload,
    seed_file_payload,
)
from schubertq.spaces import Space, space


def test_e6_names(e6):
    n = e6.naming
    assert len(n.name_of) == 27
    assert sorted(n.id_of) == sorted(
        ["s0", "s1", "s2", "s3", "s'4", "s''4", "s'5", "s''5", "s'6", "s''6",
         "s'7", "s''7", "s8", "s'8", "s''8", "s'9", "s''9", "s'10", "s''10",
         "s'11", "s''11", "s'12", "s''12", "s13", "s14", "s15", "s16"]
    )
    # anchors: the quadric class, the five-plane, duality
    assert n.name_of[e6.quivers.index_of_ideal(e6.quivers.geometry(2).y_ideal).id] == "s8"
    assert n.name_of[e6.quivers.index_of_ideal(e6.quivers.geometry(1).t_ideal).id] == "s''11"
    cs = e6.cosets
    for wid, nm in n.name_of.items():
        c = int(nm.lstrip("s'"))
        p = nm.count("'")
        dual_nm = n.name_of[cs.dual_of[wid]]
        assert int(dual_nm.lstrip("s'")) == 16 - c
        assert dual_nm.count("'") == p


def test_aliases(e6):
    n = e6.naming
    assert n.parse("H").id == n.parse("s1").id
    assert n.parse("pt").id == n.parse("s16").id
    assert n.parse("top").id == n.parse("s0").id == e6.cosets.w_x.id
    with pytest.raises(Exception):
        n.parse("s′4")  # only plain ASCII primes


def test_fixture_files_match_regeneration(e6, e7):
    for sp, fname in ((e6, "e6p1.json"), (e7, "e7p7.json")):
        shipped = json.loads(
            resources.files("schubertq").joinpath("data/names/" + fname).read_text()
        )
        assert shipped == fixture_payload(sp)
        shipped_seeds = json.loads(
            resources.files("schubertq").joinpath("data/seeds/" + fname).read_text()
        )
        assert shipped_seeds == seed_file_payload(sp)


def test_e6_naming_from_scratch(e6):
    naming, seeds, table = _e6_naming(e6)
    assert naming.name_of == e6.naming.name_of


@pytest.mark.slow
def test_e7_search_is_unique_and_matches_fixture(e7):
    s5p, nine, thirteen, fourteen, eighteen, seeds, table = _e7_search(e7)
    names = _e7_assignment(e7, s5p, nine, thirteen, fourteen, eighteen, table)
    assert names == e7.naming.name_of


def test_e6_mirror_naming():
    m = space("E6/P6")
    assert len(m.naming.name_of) == 27
    assert not m.classical_table().underdetermined
    assert not m.quantum_table().underdetermined


def test_generic_naming_deterministic():
    a = Space("A", 4, 2).naming.name_of
    b = Space("A", 4, 2).naming.name_of
    sp = space("A4/P2")
    assert {sp.cosets.indices[i].orbit_weight: v for i, v in a.items()} == {
        sp.cosets.indices[i].orbit_weight: v for i, v in b.items()
    }


def test_qh_data_dir_override(tmp_path, monkeypatch):
    import shutil
    from importlib import resources

    names_dir = tmp_path / "names"
    seeds_dir = tmp_path / "seeds"
    names_dir.mkdir()
    seeds_dir.mkdir()
    for sub, tgt in (("names", names_dir), ("seeds", seeds_dir)):
        ref = resources.files("schubertq").joinpath(f"data/{sub}/e7p7.json")
        (tgt / "e7p7.json").write_text(ref.read_text())
    monkeypatch.setenv("QH_DATA_DIR", str(tmp_path))
    sp = Space("E", 7, 7)  # fresh, uncached space
    assert len(sp.naming.name_of) == 56
    assert not sp.classical_table().underdetermined
