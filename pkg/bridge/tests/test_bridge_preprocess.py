import pytest

from tagbridge import ParseError, parse_raw


class TestStructure:
    def test_header_and_roles(self):
        doc = parse_raw(
            "#speaker-id: ab-12\n[00:00:05]\nINT: dag\nSPK: dag meneer\n")
        assert doc.speaker_id == "ab-12"
        assert [u.role for u in doc.utterances] == ["INT", "SPK"]
        assert doc.utterances[0].start_time == 5.0

    def test_time_inheritance(self):
        doc = parse_raw("[00:01:00]\nSPK: een\nSPK: twee\n[00:02:00]\n"
                        "SPK: drie\n")
        assert [u.start_time for u in doc.utterances] == [60.0, 60.0, 120.0]

    def test_duration_is_last_marker(self):
        doc = parse_raw("[00:01:00]\nSPK: woord\n[01:02:03]\n")
        assert doc.duration == 3723.0

    def test_blank_and_empty_utterances_skipped(self):
        doc = parse_raw("\nSPK: woord\n\nSPK: ...\nSPK: !?\n")
        assert len(doc.utterances) == 2
        assert doc.utterances[1].tokens[0].marker == "Pause"

    def test_word_count_excludes_markers(self):
        doc = parse_raw("SPK: ja ... nee -\n")
        assert doc.word_count() == 2


class TestMarkers:
    @pytest.mark.parametrize("text,surfaces", [
        ("SPK: ik was ... daar", ["ik", "was", "PAUSE", "daar"]),
        ("SPK: dus…ja", ["dus", "PAUSE", "ja"]),
        ("SPK: ja.... nee", ["ja", "PAUSE", "nee"]),
        ("SPK: de wo- woning", ["de", "wo", "BREAK", "woning"]),
        ("SPK: en toen -", ["en", "toen", "BREAK"]),
        ("SPK: en --- toen", ["en", "BREAK", "toen"]),
    ])
    def test_substitutions(self, text, surfaces):
        doc = parse_raw(text + "\n")
        assert [t.surface for t in doc.utterances[0].tokens] == surfaces

    def test_punctuation_stripped(self):
        doc = parse_raw('SPK: "Ja," zei hij (toen).\n')
        assert [t.surface for t in doc.utterances[0].tokens] == [
            "Ja", "zei", "hij", "toen"]

    def test_internal_hyphen_kept(self):
        doc = parse_raw("SPK: zo-iets bestaat\n")
        assert doc.utterances[0].tokens[0].surface == "zo-iets"


class TestErrors:
    @pytest.mark.parametrize("text", [
        "[0:00:00]\nSPK: a\n",
        "[00:00]\nSPK: a\n",
        "[00:61:00]\nSPK: a\n",
        "[00:00:99]\nSPK: a\n",
    ])
    def test_malformed_time_markers(self, text):
        with pytest.raises(ParseError):
            parse_raw(text)

    def test_non_monotonic_time(self):
        with pytest.raises(ParseError):
            parse_raw("[00:02:00]\nSPK: a\n[00:01:00]\nSPK: b\n")

    def test_unknown_prefix(self):
        with pytest.raises(ParseError):
            parse_raw("XYZ: hallo\n")

    def test_header_after_content(self):
        with pytest.raises(ParseError):
            parse_raw("SPK: a\n#speaker-id: late\n")

    def test_unknown_comment(self):
        with pytest.raises(ParseError):
            parse_raw("# note to self\n")

    def test_error_carries_line_number(self):
        with pytest.raises(ParseError, match="line 3"):
            parse_raw("#speaker-id: x\n[00:00:00]\nbare line\n")
