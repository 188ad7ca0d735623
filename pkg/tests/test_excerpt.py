import random

from hypothesis import given, settings
from hypothesis import strategies as st

from nameline.excerpt import (
    extract_candidates,
    first_last_rule,
    from_record,
    generalize,
    read_excerpts,
    to_record,
    write_excerpts,
)
from nameline.textseg import analyze

from oracles import brute_force_windows, random_document_text


class TestExtractCandidates:
    def test_single_sentence_rename(self):
        doc = analyze("Saint Petersburg was renamed Petrograd in 1914.", "sp")
        candidates = extract_candidates(doc, 2)
        assert len(candidates) == 1
        excerpt = candidates[0]
        assert excerpt.distance == 0
        assert excerpt.name_count == 2
        assert excerpt.year_count == 1
        assert excerpt.names == ("Saint Petersburg", "Petrograd")
        assert excerpt.years == (1914,)

    def test_no_components_no_candidates(self):
        doc = analyze("The city grew. It prospered.", "plain")
        assert extract_candidates(doc, 2) == []

    def test_only_distance_two_window(self):
        # names in sentences 0 and 2, year in sentence 1: of the six windows
        # only [0, 2] satisfies every constraint
        text = "The harbor lies near Kalden. Ships arrived in 1720. Captains praised Verato."
        doc = analyze(text, "3s")
        candidates = extract_candidates(doc, 2)
        assert [(c.first_sentence, c.last_sentence) for c in candidates] == [(0, 2)]
        assert candidates[0].distance == 2

    def test_ordering_by_first_sentence_then_distance(self, sp_text):
        doc = analyze(sp_text, "sp")
        candidates = extract_candidates(doc, 2)
        keys = [(c.first_sentence, c.distance) for c in candidates]
        assert keys == sorted(keys)

    def test_empty_document(self):
        assert extract_candidates(analyze("", "none"), 2) == []

    def test_text_matches_raw_span(self, sp_text):
        doc = analyze(sp_text, "sp")
        for candidate in extract_candidates(doc, 2):
            assert candidate.text in sp_text
            assert candidate.text == candidate.text.strip()

    def test_oracle_equivalence_on_random_documents(self):
        rng = random.Random(7)
        for _ in range(50):
            doc = analyze(random_document_text(rng), "rand")
            got = {(c.first_sentence, c.last_sentence)
                   for c in extract_candidates(doc, 2)}
            assert got == brute_force_windows(doc, 2)

    def test_monotone_in_max_distance(self):
        rng = random.Random(11)
        for _ in range(20):
            doc = analyze(random_document_text(rng), "rand")
            previous: set = set()
            for d in range(4):
                current = {(c.first_sentence, c.last_sentence)
                           for c in extract_candidates(doc, d)}
                assert previous <= current
                previous = current


class TestFirstLastRule:
    def test_single_sentence_with_name(self):
        doc = analyze("It was Petrograd.", "x")
        assert first_last_rule(doc.sentences[:1]) is True

    def test_last_sentence_bare(self):
        doc = analyze("It was Petrograd. It grew fast.", "x")
        assert first_last_rule(doc.sentences) is False

    def test_components_only_at_boundaries(self):
        text = "Ships arrived in 1720. It grew fast. Captains praised Verato."
        doc = analyze(text, "x")
        assert first_last_rule(doc.sentences) is True


class TestGeneralize:
    def test_hand_worked_example(self):
        doc = analyze("Saint Petersburg was renamed Petrograd in 1914.", "sp")
        stream = generalize(doc.sentences[0].tokens)
        assert stream == ["N", "was", "renamed", "N", "in", "Y"]

    def test_all_word_sentence_lowercased(self):
        doc = analyze("the walls were rebuilt twice", "x")
        stream = generalize(doc.sentences[0].tokens)
        assert stream == ["the", "walls", "were", "rebuilt", "twice"]

    def test_single_year(self):
        doc = analyze("in 1914", "x")
        assert generalize(doc.sentences[0].tokens) == ["in", "Y"]
        bare = analyze("1914", "x")
        assert generalize(bare.sentences[0].tokens) == ["Y"]

    def test_punct_separated_names_stay_separate(self):
        doc = analyze("It was renamed Petrograd, then Leningrad in 1924.", "x")
        stream = generalize(doc.sentences[0].tokens)
        assert stream.count("N") == 2

    def test_conservation_counts(self, sp_text):
        doc = analyze(sp_text, "sp")
        for candidate in extract_candidates(doc, 2):
            assert candidate.generalized.count("N") == candidate.name_count
            assert candidate.generalized.count("Y") == candidate.year_count

    def test_no_punct_or_uppercase_words_in_stream(self, sp_text):
        doc = analyze(sp_text, "sp")
        for candidate in extract_candidates(doc, 2):
            for token in candidate.generalized:
                assert token in ("N", "Y") or token == token.lower()


class TestRecords:
    def test_roundtrip(self, tmp_path, sp_text):
        doc = analyze(sp_text, "sp")
        candidates = extract_candidates(doc, 2)
        path = tmp_path / "excerpts.jsonl"
        write_excerpts(path, candidates)
        loaded = read_excerpts(path)
        assert len(loaded) == len(candidates)
        for original, copy in zip(candidates, loaded):
            assert copy.sentence_range == original.sentence_range
            assert copy.generalized == original.generalized
            assert copy.text == original.text
            assert copy.years == original.years

    def test_record_fields(self):
        doc = analyze("Saint Petersburg was renamed Petrograd in 1914.", "sp")
        record = to_record(extract_candidates(doc, 2)[0])
        assert set(record) >= {"source_id", "first_sentence", "last_sentence",
                               "distance", "text", "generalized"}
        rebuilt = from_record(record)
        assert rebuilt.name_count == 2


@given(st.integers(min_value=0, max_value=2**31 - 1))
@settings(max_examples=30, deadline=None)
def test_candidates_satisfy_invariants(seed):
    doc = analyze(random_document_text(random.Random(seed)), "prop")
    for candidate in extract_candidates(doc, 2):
        assert 0 <= candidate.distance <= 2
        assert candidate.name_count >= 2
        assert candidate.year_count >= 1
        assert candidate.generalized.count("N") == candidate.name_count
        assert candidate.generalized.count("Y") == candidate.year_count
        window = doc.sentences[candidate.first_sentence:candidate.last_sentence + 1]
        assert first_last_rule(window)
