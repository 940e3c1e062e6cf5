"""Tokenizer, correction map, dictionary, and normalization rules.

Expected byte offsets in this file were derived by hand from the UTF-8
encoding of each input string before being frozen here.
"""

from __future__ import annotations

import logging

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vulntrack.errors import LoadFailureError
from vulntrack.pipeline import (
    KIND_DOMAIN,
    KIND_ENGLISH,
    KIND_UNKNOWN,
    CorrectionMap,
    KeywordDictionary,
    TextPipeline,
    Token,
    correct,
    normalize,
    normalize_surface,
    tokenize,
)
from vulntrack.stemmer import stem


def spans(tokens: list[Token]) -> list[tuple[str, int, int, str]]:
    return [(t.surface, t.byte_start, t.byte_end, t.original) for t in tokens]


class TestTokenize:
    def test_hyphen_splits_runs(self):
        assert spans(tokenize("Cross-site scripting")) == [
            ("cross", 0, 5, "Cross"),
            ("site", 6, 10, "site"),
            ("scripting", 11, 20, "scripting"),
        ]

    def test_digit_runs_discarded_two_char_words_kept(self):
        assert spans(tokenize("CVE-2016-1234 in win32")) == [
            ("cve", 0, 3, "CVE"),
            ("in", 14, 16, "in"),
            ("win32", 17, 22, "win32"),
        ]

    def test_empty_input(self):
        assert tokenize("") == []

    def test_single_char_and_digit_discards(self):
        assert spans(tokenize("A 1 ab 12 a1")) == [
            ("ab", 4, 6, "ab"),
            ("a1", 10, 12, "a1"),
        ]

    def test_multibyte_offsets(self):
        text = "Büro faß 漢字テスト désolé"
        assert spans(tokenize(text)) == [
            ("büro", 0, 5, "Büro"),
            ("faß", 6, 10, "faß"),
            ("漢字テスト", 11, 26,
             "漢字テスト"),
            ("désolé", 27, 35, "désolé"),
        ]

    def test_offsets_slice_original_bytes(self):
        text = "The Über-parser mishandles win32 PE headers."
        raw = text.encode("utf-8")
        for token in tokenize(text):
            assert raw[token.byte_start:token.byte_end].decode(
                "utf-8") == token.original
            assert token.surface == token.original.lower()

    @settings(max_examples=300)
    @given(st.text(alphabet=st.characters(exclude_categories=("Cs",)),
                   max_size=120))
    def test_position_fidelity_property(self, text: str):
        raw = text.encode("utf-8")
        for token in tokenize(text):
            assert raw[token.byte_start:token.byte_end].decode(
                "utf-8") == token.original
            assert token.surface
            assert token.surface == token.original.lower()

    @given(st.text(max_size=80))
    def test_ordinals_strictly_increase(self, text: str):
        tokens = tokenize(text)
        for before, after in zip(tokens, tokens[1:]):
            assert before.byte_end <= after.byte_start


class TestCorrectionMap:
    def test_known_misspelling_rewritten(self):
        cmap = CorrectionMap()
        assert cmap.add("watsapp", "whatsapp")
        token = tokenize("watsapp gateway")[0]
        fixed = correct(token, cmap)
        assert fixed.surface == "whatsapp"
        assert (fixed.byte_start, fixed.byte_end) == (token.byte_start,
                                                      token.byte_end)
        assert fixed.original == "watsapp"

    def test_identity_when_absent(self):
        token = tokenize("sql")[0]
        assert correct(token, CorrectionMap()) is token

    def test_idempotent(self):
        cmap = CorrectionMap()
        cmap.add("watsapp", "whatsapp")
        token = tokenize("watsapp")[0]
        once = correct(token, cmap)
        twice = correct(once, cmap)
        assert twice.surface == once.surface

    def test_chain_and_self_loop_rejected(self):
        cmap = CorrectionMap()
        assert cmap.add("aa", "bb")
        assert not cmap.add("bb", "cc")  # bb is already a corrected form
        assert not cmap.add("cc", "aa")  # aa is already a key
        assert not cmap.add("dd", "dd")
        assert cmap.entries == {"aa": "bb"}

    def test_load_skips_malformed_lines(self, caplog):
        lines = [
            "watsapp\twhatsapp",
            "only-one-column",
            "a\tb\tc",
            "",
            "teh\tthe",
        ]
        cmap = CorrectionMap()
        with caplog.at_level(logging.WARNING):
            assert cmap.load(lines) == 2
        assert cmap.entries == {"watsapp": "whatsapp", "teh": "the"}
        assert sum("malformed" in r.message for r in caplog.records) == 2

    def test_load_failure_wraps_oserror(self):
        def boom():
            raise OSError("gone")
            yield

        with pytest.raises(LoadFailureError):
            CorrectionMap().load(boom())


class TestKeywordDictionary:
    def test_load_counts_new_insertions(self):
        kd = KeywordDictionary()
        words = ["alpha", "bravo", "charlie", "delta", "echo"]
        assert kd.load(words, KIND_ENGLISH) == 5
        assert kd.load(words, KIND_ENGLISH) == 0

    def test_load_lowercases(self):
        kd = KeywordDictionary()
        kd.load(["SQL"], KIND_DOMAIN)
        assert "sql" in kd
        assert "SQL" not in kd

    def test_domain_never_downgraded(self):
        kd = KeywordDictionary()
        kd.load(["sql"], KIND_DOMAIN)
        kd.load(["sql"], KIND_ENGLISH)
        assert kd.get("sql").kind == KIND_DOMAIN

    def test_unknown_upgraded_by_curated_load(self):
        kd = KeywordDictionary()
        kd.ensure("inject", KIND_UNKNOWN)
        kd.load(["inject"], KIND_ENGLISH)
        assert kd.get("inject").kind == KIND_ENGLISH

    def test_invalid_kind_rejected(self):
        with pytest.raises(ValueError):
            KeywordDictionary().load(["x"], KIND_UNKNOWN)


class TestNormalize:
    def test_domain_term_exempt_from_stemming(self):
        kd = KeywordDictionary()
        kd.load(["windows"], KIND_DOMAIN)
        token = tokenize("Windows")[0]
        assert normalize(token, kd).surface == "windows"

    def test_english_word_stemmed(self):
        kd = KeywordDictionary()
        kd.load(["injection"], KIND_ENGLISH)
        token = tokenize("injection")[0]
        assert normalize(token, kd).surface == "inject"

    def test_unseen_surface_stemmed_and_registered(self):
        kd = KeywordDictionary()
        token = tokenize("svchosted")[0]
        result = normalize(token, kd)
        assert result.surface == stem("svchosted")
        entry = kd.get(result.surface)
        assert entry is not None and entry.kind == KIND_UNKNOWN

    def test_grow_disabled_leaves_dictionary_alone(self):
        kd = KeywordDictionary()
        normalize(tokenize("svchosted")[0], kd, grow=False)
        assert len(kd) == 0

    def test_offsets_survive_normalization(self):
        kd = KeywordDictionary()
        token = tokenize("vulnerabilities everywhere")[0]
        result = normalize(token, kd)
        assert (result.byte_start, result.byte_end) == (token.byte_start,
                                                        token.byte_end)
        assert result.original == "vulnerabilities"


class TestPipeline:
    def build(self) -> TextPipeline:
        pipe = TextPipeline()
        pipe.dictionary.load(["whatsapp", "sql"], KIND_DOMAIN)
        pipe.corrections.add("watsapp", "whatsapp")
        return pipe

    def test_correction_applies_before_domain_check(self):
        # The corrected surface is a domain term, so it must dodge the
        # stemmer; stemming "whatsapp" would strip nothing here, so use
        # a correction whose target would otherwise change.
        pipe = TextPipeline()
        pipe.dictionary.load(["scripting"], KIND_DOMAIN)
        pipe.corrections.add("scritping", "scripting")
        (token,) = pipe.stream("scritping")
        assert token.surface == "scripting"

    def test_stream_end_to_end(self):
        pipe = self.build()
        tokens = pipe.stream("watsapp SQL injection")
        assert [t.surface for t in tokens] == ["whatsapp", "sql", "inject"]

    def test_stream_is_deterministic(self):
        pipe = self.build()
        text = "Unsanitized watsapp payloads crashed the SQL parser."
        first = pipe.stream(text)
        second = pipe.stream(text)
        assert spans(first) == spans(second)

    def test_grow_false_is_pure(self):
        pipe = self.build()
        before = len(pipe.dictionary)
        pipe.stream("quixotic frobnication", grow=False)
        assert len(pipe.dictionary) == before

    def test_keyword_matches_stream_surface(self):
        pipe = self.build()
        for word in ["watsapp", "Injection", "SQL", "overflowing"]:
            (token,) = pipe.stream(word.lower(), grow=False) or [None]
            assert pipe.keyword(word) == token.surface

    def test_normalize_surface_without_corrections(self):
        kd = KeywordDictionary()
        kd.load(["php"], KIND_DOMAIN)
        assert normalize_surface(" PHP ", kd) == "php"
        assert normalize_surface("Vulnerabilities", kd) == "vulner"
