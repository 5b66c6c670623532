import pytest

from spectre.ko import (ALL_LABELS, EXTENDED_KO_TABLE, KO_TABLE, KOLabel, SignTriple,
                        labels_for, parse_label, sign_table)

# reference fixtures kept literal and separate from the library tables; "0" is a blank cell
CLASSICAL_ROWS = {
    "eps":   "++----++",
    "eps'":  "+-+++-++",
    "eps''": "+0-0+0-0",
}
EXTENDED_COLUMNS = ["0+", "0-", "1", "2+", "2-", "3", "4+", "4-", "5", "6+", "6-", "7"]
EXTENDED_ROWS = {
    "eps":   "+++-+----+-+",
    "eps'":  "+--+-++--+-+",
    "eps''": "++0--0++0--0",
}
_SIGN = {"+": 1, "-": -1, "0": None}


class TestTables:
    def test_classical_fixture(self):
        for n in range(8):
            got = KO_TABLE[n]
            want = tuple(_SIGN[CLASSICAL_ROWS[r][n]] for r in ("eps", "eps'", "eps''"))
            assert got == want

    def test_extended_fixture(self):
        assert [str(l) for l in ALL_LABELS] == EXTENDED_COLUMNS
        for k, name in enumerate(EXTENDED_COLUMNS):
            want = tuple(_SIGN[EXTENDED_ROWS[r][k]] for r in ("eps", "eps'", "eps''"))
            assert EXTENDED_KO_TABLE[parse_label(name)] == want

    def test_plus_columns_are_classical(self):
        for n in range(8):
            assert sign_table(labels_for(n)[0]).as_tuple() == KO_TABLE[n]

    def test_minus_column_from_toggle(self):
        # J ↦ Jγ sends (ε, ε′, ε″) to (εε″, -ε′, ε″)
        for n in (0, 2, 4, 6):
            e, ep, epp = KO_TABLE[n]
            assert sign_table(KOLabel(n, "minus")).as_tuple() == (e * epp, -ep, epp)

    @pytest.mark.parametrize("label,signs", [
        (KOLabel(0, "plus"), (1, 1, 1)),
        (KOLabel(2, "plus"), (-1, 1, -1)),
        (KOLabel(2, "minus"), (1, -1, -1)),
        (KOLabel(5), (-1, -1, None)),
        (KOLabel(4, "minus"), (-1, -1, 1)),
    ])
    def test_examples(self, label, signs):
        assert sign_table(label).as_tuple() == signs


class TestKOLabel:
    def test_reduces_mod_8(self):
        assert KOLabel(10) == KOLabel(2, "plus")

    def test_odd_rejects_variant(self):
        with pytest.raises(ValueError):
            KOLabel(3, "plus")

    def test_bad_variant(self):
        with pytest.raises(ValueError):
            KOLabel(2, "sideways")

    def test_flip(self):
        assert KOLabel(6, "+").flipped() == KOLabel(6, "minus")
        with pytest.raises(ValueError):
            KOLabel(7).flipped()

    def test_json(self):
        for l in ALL_LABELS:
            assert KOLabel.from_json(l.to_json()) == l

    @pytest.mark.parametrize("text,label", [("6+", KOLabel(6, "plus")), ("2-", KOLabel(2, "minus")),
                                            ("3", KOLabel(3)), ("4", KOLabel(4, "plus")),
                                            ("0minus", KOLabel(0, "minus"))])
    def test_parse(self, text, label):
        assert parse_label(text) == label

    @pytest.mark.parametrize("text", ["", "x", "3+", "2*"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_label(text)


class TestSignTriple:
    def test_str(self):
        assert str(sign_table(KOLabel(2, "minus"))) == "eps=+ eps'=- eps''=-"
        assert str(sign_table(KOLabel(7))) == "eps=+ eps'=+"

    def test_rejects(self):
        with pytest.raises(ValueError):
            SignTriple(0, 1)
