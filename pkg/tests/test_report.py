import dataclasses
import json
from fractions import Fraction

from leibder import catalog, report
from leibder.algebra import Algebra, lower_central_series
from leibder.published import TABLES
from leibder.report import cmd_table, render
from leibder.solver import SpaceKind, compute_space, general_element


def _rows_by_id(rep):
    return {row.entry_id: row for row in rep.rows}


def test_table_one_rows():
    rep = cmd_table(1, workers=2)
    rows = _rows_by_id(rep)
    assert [r.entry_id for r in rep.rows] == [f"L{i}" for i in range(1, 22)]
    assert (rows["L1"].computed_dim, rows["L1"].published_dim, rows["L1"].match) == (4, 4, True)
    assert rows["L7"].computed_dim == 6
    assert rows["L7"].status == "documented"
    assert rows["L14"].computed_dim == 5
    assert rows["L4"].alpha_used == (0, 1)
    assert rows["L4"].computed_dim == 3
    assert rep.range.computed == (3, 7) and rep.range.match
    assert rep.undocumented == ()
    assert rep.exit_code == 0


def test_table_two_documents_the_range_and_rows():
    rep = cmd_table(2, workers=4)
    rows = _rows_by_id(rep)
    assert rows["L7"].computed_dim == 6 and rows["L7"].published_dim == 7
    assert rows["L7"].note
    assert rows["L21"].status == "documented"
    assert rep.range.computed == (3, 9)
    assert not rep.range.match and rep.range.note
    assert rep.exit_code == 0


def test_table_three_rows():
    rep = cmd_table(3)
    rows = _rows_by_id(rep)
    assert (rows["L19"].computed_dim, rows["L19"].published_dim) == (12, 12)
    assert rows["L19"].oracle_dim == 12
    assert rows["L3"].status == "documented"
    assert rep.exit_code == 0


def test_undocumented_mismatch_fails(monkeypatch):
    published = TABLES[1]
    changed = dataclasses.replace(published, dims={**published.dims, "L1": 9})
    monkeypatch.setattr(report, "table", lambda which: changed)
    rep = cmd_table(1)
    assert [r.entry_id for r in rep.undocumented] == ["L1"]
    assert _rows_by_id(rep)["L1"].status == "MISMATCH"
    assert rep.exit_code == 2


def test_table_json_is_exact_and_stable():
    rep = cmd_table(1, alpha_samples=(Fraction(1, 2), Fraction(3)))
    first = render(rep, "json")
    assert first == render(cmd_table(1, alpha_samples=(Fraction(1, 2), Fraction(3))), "json")
    data = json.loads(first)
    assert data["table"] == 1
    assert len(data["rows"]) == 21
    l13 = next(r for r in data["rows"] if r["id"] == "L13")
    assert [Fraction(s) for s in l13["alpha_samples"]] == [Fraction(1, 2), Fraction(3)]
    assert all(isinstance(r["computed_dim"], int) for r in data["rows"])


def test_table_latex_layout():
    text = render(cmd_table(3), "latex")
    assert "\\toprule" in text and "\\bottomrule" in text
    assert text.count("$L_{") == 21
    caption = "Biderivations of four-dimensional nilpotent complex Leibniz algebras."
    assert f"\\caption{{{caption}}}" in text


def test_table_text_lists_notes_and_range():
    text = render(cmd_table(2), "text")
    assert text.startswith("AntiDerivations of four-dimensional")
    assert "L11: " in text
    assert "range: computed 3-9, published 3-10" in text


def test_space_json():
    data = json.loads(render(compute_space(catalog.get("L1"), SpaceKind.DER), "json"))
    assert data["algebra"] == "L1"
    assert data["space"] == "der"
    assert data["dim"] == 4
    for matrix in data["basis"]:
        for row in matrix:
            assert all("/" in cell for cell in row)


def test_zero_algebra_general_element_text():
    el = general_element(compute_space(Algebra.zero(4), SpaceKind.DER))
    text = render(el, "text")
    assert "dim 16" in text
    for r in range(1, 5):
        for c in range(1, 5):
            assert f"d{r}{c}" in text


def test_general_element_json_and_latex():
    el = general_element(compute_space(catalog.get("L1"), SpaceKind.BIDER))
    data = json.loads(render(el, "json"))
    assert data["parameters"] == ["d31", "d41", "D41"]
    assert data["d"][2][0] == "d31"
    assert data["D"][3][0] == "D41"
    latex = render(el, "latex")
    assert "\\begin{pmatrix}" in latex
    assert "D_{41}" in latex


def test_render_series_report_in_every_format():
    series = lower_central_series(catalog.get("L1"))

    text = render(series, "text")
    assert text.splitlines() == [
        "L1: descending series dims [4, 3, 2, 1, 0]",
        "nilpotent, index 5",
    ]

    data = json.loads(render(series, "json"))
    assert data["series"] == [4, 3, 2, 1, 0]
    assert (data["algebra"], data["nilpotent"], data["nil_index"]) == ("L1", True, 5)

    latex = render(series, "latex")
    assert latex.startswith("\\begin{verbatim}\n")
    assert "nilpotent, index 5" in latex
