import json

import pytest
from hypothesis import given, strategies as st

from lexiprof import (
    MarkerPolicy,
    ProfileCategory,
    ProfileConfig,
    SpeakerRole,
    Token,
    TokenWindow,
    Transcript,
    Utterance,
    build_profile,
    count_ngrams,
    count_vocabulary,
    extract_ngrams,
    map_pos,
    profile_from_json,
    profile_to_json,
    select_top_k,
)
from lexiprof.errors import (
    EmptyConstructionWindow,
    InvalidConfig,
    UntaggedInput,
)
from lexiprof.ingest import break_token, pause_token

from strategies import token_windows
from oracles import oracle_ngram_stats, oracle_top_k, oracle_vocab_stats


def window(*utts):
    return TokenWindow("s", 0.0, 1e9, tuple(tuple(u) for u in utts))


def words(text, pos="NOUN"):
    return [Token(w, w.casefold(), pos) for w in text.split()]


class TestConfig:
    def test_defaults(self):
        cfg = ProfileConfig()
        assert all(v == 5 for v in cfg.items_per_category.values())
        assert cfg.vocab_min_count == 5
        assert cfg.ngram_n_range == (2, 5)
        assert cfg.ngrams_per_n == 3
        assert cfg.ngram_min_count == 3
        assert cfg.marker_policy is MarkerPolicy.RETAIN

    @pytest.mark.parametrize("kwargs", [
        {"items_per_category": {ProfileCategory.NOUN: 5}},
        {"vocab_min_count": 0},
        {"ngram_min_count": 0},
        {"ngrams_per_n": 0},
        {"ngram_n_range": (1, 5)},
        {"ngram_n_range": (3, 2)},
        {"construction_minutes": 0},
    ])
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(InvalidConfig):
            ProfileConfig(**kwargs)


class TestCountVocabulary:
    def test_category_filter(self):
        w = window(words("de", "DET") + words("man man"))
        counts = count_vocabulary(w)
        assert counts[ProfileCategory.NOUN] == {"man": (2, 1, "man")}
        assert all(
            not counts[c] for c in counts if c is not ProfileCategory.NOUN)

    def test_case_folding(self):
        w = window([Token("Man", "Man", "NOUN"), Token("man", "man", "NOUN")])
        assert count_vocabulary(w)[ProfileCategory.NOUN] == {
            "man": (2, 0, "man")}

    def test_marker_only_window_is_empty(self):
        w = window([pause_token(), break_token()])
        counts = count_vocabulary(w)
        assert all(not table for table in counts.values())

    def test_untagged_window_rejected(self):
        w = window([Token("hoi", "hoi", "X")])
        with pytest.raises(UntaggedInput):
            count_vocabulary(w)

    def test_partial_tags_allowed(self):
        w = window([Token("hoi", "hoi", "X"), Token("man", "man", "NOUN")])
        assert count_vocabulary(w)[ProfileCategory.NOUN]["man"] == (
            1, 1, "man")

    def test_first_occurrence_is_flat_token_index(self):
        w = window(words("ja", "INTJ") + [pause_token()] + words("man"),
                   words("boom"))
        nouns = count_vocabulary(w)[ProfileCategory.NOUN]
        assert nouns["man"] == (1, 2, "man")
        assert nouns["boom"] == (1, 3, "boom")

    @given(token_windows())
    def test_matches_linear_scan_oracle(self, w):
        def category_of(upos):
            cat = map_pos(upos)
            return None if cat is None else cat
        flat = [(t.surface, t.lemma, t.pos, t.is_marker) for t in w.tokens]
        expected = oracle_vocab_stats(flat, category_of)
        got = count_vocabulary(w)
        for cat in ProfileCategory:
            assert got[cat] == expected.get(cat, {})


class TestSelectTopK:
    def test_threshold_then_rank(self):
        stats = {"de": (7, 0), "man": (6, 1), "huis": (5, 2), "boot": (4, 3)}
        picked = select_top_k(stats, k=5, min_count=5)
        assert [item for item, _, _ in picked] == ["de", "man", "huis"]

    def test_empty_input(self):
        assert select_top_k({}, k=3, min_count=1) == []

    def test_tie_breaks_on_first_occurrence_then_item(self):
        stats = {"b": (5, 0), "a": (5, 4)}
        assert [i for i, _, _ in select_top_k(stats, 1, 1)] == ["b"]
        stats = {"b": (5, 2), "a": (5, 2)}
        assert [i for i, _, _ in select_top_k(stats, 1, 1)] == ["a"]

    @given(
        st.dictionaries(
            st.text("abc", min_size=1, max_size=3),
            st.tuples(st.integers(1, 9), st.integers(0, 50)),
            max_size=12),
        st.integers(1, 8),
        st.integers(1, 4),
    )
    def test_matches_selection_oracle(self, stats, k, min_count):
        assert select_top_k(stats, k, min_count) == oracle_top_k(
            stats, k, min_count)

    @given(
        st.dictionaries(
            st.text("abc", min_size=1, max_size=3),
            st.tuples(st.integers(1, 9), st.integers(0, 50)),
            max_size=12),
        st.integers(1, 6),
    )
    def test_top_k_is_prefix_of_top_k_plus_one(self, stats, k):
        smaller = select_top_k(stats, k, 1)
        larger = select_top_k(stats, k + 1, 1)
        assert larger[:len(smaller)] == smaller


class TestNgrams:
    def test_repeated_bigram_counted(self):
        w = window(words("ik denk dat ik denk dat ik denk dat", "X"))
        # n-grams are surface-based; tags are irrelevant here.
        stats = count_ngrams(w, 2)
        assert stats[("ik", "denk")][0] == 3
        assert stats[("denk", "dat")][0] == 3

    def test_never_crosses_utterances(self):
        w = window(words("ik denk"), words("dat ik denk"))
        assert ("denk", "dat") not in count_ngrams(w, 2)

    def test_marker_policies(self):
        utt = [Token("ik", "ik", "PRON"), pause_token(),
               Token("denk", "denken", "VERB")]
        w = window(utt, utt, utt)
        retain = count_ngrams(w, 3, MarkerPolicy.RETAIN)
        assert retain[("ik", "PAUSE", "denk")][0] == 3
        dropped = count_ngrams(w, 2, MarkerPolicy.DROP_TOKEN)
        assert dropped[("ik", "denk")][0] == 3
        excluded = count_ngrams(w, 3, MarkerPolicy.EXCLUDE_NGRAM)
        assert excluded == {}

    def test_threshold_filters_rare_ngrams(self):
        w = window(words("a b"), words("a b"))
        cfg = ProfileConfig()
        out = extract_ngrams(w, cfg)
        assert out[2] == ()  # "a b" occurs twice, threshold is 3

    def test_marker_surfaces_stay_uppercase_in_grams(self):
        utt = [Token("IK", "ik", "PRON"), pause_token()]
        w = window(utt * 3)
        stats = count_ngrams(w, 2)
        assert ("ik", "PAUSE") in stats

    @pytest.mark.parametrize("policy", list(MarkerPolicy))
    @given(w=token_windows())
    def test_matches_enumeration_oracle(self, policy, w):
        triples = [
            [(t.surface, t.lemma, t.is_marker) for t in utt]
            for utt in w.utterance_tokens
        ]
        for n in range(2, 6):
            expected = oracle_ngram_stats(triples, n, policy.value)
            assert count_ngrams(w, n, policy) == expected

    @given(w=token_windows())
    def test_extract_agrees_with_oracle_ranking(self, w):
        cfg = ProfileConfig(ngram_min_count=2, ngrams_per_n=3)
        got = extract_ngrams(w, cfg)
        triples = [
            [(t.surface, t.lemma, t.is_marker) for t in utt]
            for utt in w.utterance_tokens
        ]
        for n in cfg.n_values:
            stats = oracle_ngram_stats(triples, n, "RETAIN")
            expected = oracle_top_k(
                {g: (c, f) for g, (c, f, _) in stats.items()}, 3, 2)
            assert [(e.tokens, e.count, e.first_occurrence_index)
                    for e in got[n]] == expected


def interview(minutes=12, per_minute=("man man man man man "
                                      "loopt loopt loopt loopt loopt")):
    utts = []
    for m in range(minutes):
        utts.append(Utterance(
            SpeakerRole.INTERVIEWEE, m * 60.0,
            tuple(Token(w, w, "NOUN" if w == "man" else "VERB")
                  for w in per_minute.split())))
    return Transcript("p1", tuple(utts), minutes * 60.0)


class TestBuildProfile:
    def test_basic_shape(self):
        p = build_profile(interview(), ProfileConfig(construction_minutes=10))
        assert p.speaker_id == "p1"
        assert p.construction_span == (0.0, 600.0)
        assert [e.surface for e in p.vocab[ProfileCategory.NOUN]] == ["man"]
        assert p.vocab[ProfileCategory.NOUN][0].count == 50

    def test_transcript_too_short(self):
        with pytest.raises(EmptyConstructionWindow):
            build_profile(interview(minutes=5),
                          ProfileConfig(construction_minutes=10))

    def test_no_interviewee_speech(self):
        t = Transcript("p1", (Utterance(
            SpeakerRole.INTERVIEWER, 0.0, (Token("en", "en", "CCONJ"),)),),
            1200.0)
        with pytest.raises(EmptyConstructionWindow):
            build_profile(t, ProfileConfig(construction_minutes=10))

    def test_pure_function(self):
        cfg = ProfileConfig(construction_minutes=10)
        t = interview()
        assert profile_to_json(build_profile(t, cfg)) == profile_to_json(
            build_profile(t, cfg))

    def test_interviewer_speech_ignored(self):
        t = interview()
        noisy = Transcript(
            t.speaker_id,
            t.utterances + (Utterance(
                SpeakerRole.INTERVIEWER, t.duration,
                tuple(Token("vraag", "vraag", "NOUN") for _ in range(99))),),
            t.duration)
        p = build_profile(noisy, ProfileConfig(construction_minutes=10))
        assert [e.surface for e in p.vocab[ProfileCategory.NOUN]] == ["man"]

    @given(st.integers(0, 2**32 - 1))
    def test_invariants_on_generated_data(self, seed):
        from lexiprof import default_speaker_model, generate_transcript
        t = generate_transcript(default_speaker_model(seed), 12)
        cfg = ProfileConfig(construction_minutes=10)
        p = build_profile(t, cfg)  # LexicalProfile validates on build
        for cat, entries in p.vocab.items():
            assert len(entries) <= cfg.items_per_category[cat]
            counts = [e.count for e in entries]
            assert counts == sorted(counts, reverse=True)
            assert all(c >= cfg.vocab_min_count for c in counts)
        for n, entries in p.ngrams.items():
            assert len(entries) <= cfg.ngrams_per_n
            assert all(e.count >= cfg.ngram_min_count for e in entries)
            assert all(len(e.tokens) == n for e in entries)


class TestProfileJson:
    def test_round_trip(self):
        p = build_profile(interview(), ProfileConfig(construction_minutes=10))
        text = profile_to_json(p)
        assert profile_to_json(profile_from_json(text)) == text

    def test_top_level_key_order(self):
        p = build_profile(interview(), ProfileConfig(construction_minutes=10))
        doc = json.loads(
            profile_to_json(p),
            object_pairs_hook=lambda pairs: [k for k, _ in pairs])
        assert doc == [
            "speaker_id", "construction_span", "config", "vocab", "ngrams"]

    def test_malformed_json_rejected(self):
        from lexiprof.errors import ParseError
        with pytest.raises(ParseError):
            profile_from_json("{not json")
        with pytest.raises(ParseError):
            profile_from_json('{"speaker_id": "x"}')
