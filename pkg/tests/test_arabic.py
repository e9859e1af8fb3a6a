"""Normalization rules and Buckwalter transliteration."""

import random
import unicodedata

import pytest

from useg import (
    TransliterationError, TransliterationTable, UsegError, default_table,
    from_buckwalter, normalize, to_buckwalter,
)

# Letters already in normalized form, plus diacritics, for fuzzing.
NORMALIZED_LETTERS = (
    "ءابتثجحخدذرزسشصضطظعغفقكلمنهويؤئ"
)
DIACRITICS = "ًٌٍَُِّْ"
DENORMALIZED = "أإآةى"


def rand_normalized_text(rng: random.Random, max_words: int = 6) -> str:
    words = []
    for _ in range(rng.randint(1, max_words)):
        chars = []
        for _ in range(rng.randint(1, 8)):
            chars.append(rng.choice(NORMALIZED_LETTERS))
            if rng.random() < 0.2:
                chars.append(rng.choice(DIACRITICS))
        words.append("".join(chars))
    return " ".join(words)


class TestNormalize:
    def test_alef_hamza_forms_collapse(self):
        assert normalize("أ") == "ا"
        assert normalize("إ") == "ا"
        assert normalize("آ") == "ا"

    def test_teh_marbuta_becomes_heh(self):
        assert normalize("مدرسة") == "مدرسه"

    def test_alef_maksura_becomes_yeh(self):
        assert normalize("على") == "علي"

    def test_whitespace_collapses_and_strips(self):
        assert normalize("  مساء \t الخير \n") == "مساء الخير"

    def test_diacritics_survive(self):
        assert normalize("شُكْرًا") == "شُكْرًا"

    def test_nfc_composition_feeds_the_rules(self):
        # Alef + combining madda composes to the madda form, then folds.
        assert normalize("آ") == "ا"

    def test_idempotent_on_fuzzed_input(self):
        rng = random.Random(101)
        pool = NORMALIZED_LETTERS + DENORMALIZED + DIACRITICS + "  \t"
        for _ in range(500):
            text = "".join(rng.choice(pool)
                           for _ in range(rng.randint(0, 30)))
            once = normalize(text)
            assert normalize(once) == once
            assert not set(once) & set(DENORMALIZED)

    def test_empty_and_whitespace_only(self):
        assert normalize("") == ""
        assert normalize("   ") == ""


class TestToBuckwalter:
    def test_greeting_phrase(self):
        assert to_buckwalter("مساء الخير") == "msA' Alxyr"

    def test_thanks_word(self):
        assert to_buckwalter("شكرا") == "$krA"

    def test_digits_and_space_pass_through(self):
        assert to_buckwalter("رقم 42") == "rqm 42"

    def test_unmapped_characters_pass_through(self):
        assert to_buckwalter("ok مساء") == "ok msA'"


class TestFromBuckwalter:
    def test_greeting_phrase(self):
        assert from_buckwalter("msA' Alxyr") == "مساء الخير"

    def test_thanks_word(self):
        assert from_buckwalter("$krA") == "شكرا"

    def test_digits_and_whitespace_pass(self):
        assert from_buckwalter("42 \t") == "42 \t"

    def test_unmapped_symbol_is_an_error_with_position(self):
        with pytest.raises(TransliterationError) as exc_info:
            from_buckwalter("ms%A")
        assert exc_info.value.symbol == "%"
        assert exc_info.value.position == 2

    def test_round_trip_on_fuzzed_normalized_text(self):
        rng = random.Random(7)
        for _ in range(500):
            text = normalize(rand_normalized_text(rng))
            assert from_buckwalter(to_buckwalter(text)) == text


class TestTransliterationTable:
    def test_default_table_is_injective(self):
        table = default_table()
        assert len(set(table.forward.values())) == len(table.forward)

    def test_default_table_cached(self):
        assert default_table() is default_table()

    def test_rejects_duplicate_ascii(self, tmp_path):
        path = tmp_path / "dup.tsv"
        path.write_text("0621\tء\tX\n0622\tآ\tX\n",
                        encoding="utf-8")
        with pytest.raises(UsegError):
            TransliterationTable.from_tsv(path)

    def test_rejects_codepoint_glyph_mismatch(self, tmp_path):
        path = tmp_path / "bad.tsv"
        path.write_text("0621\tآ\t'\n", encoding="utf-8")
        with pytest.raises(UsegError):
            TransliterationTable.from_tsv(path)

    def test_rejects_wrong_field_count(self, tmp_path):
        path = tmp_path / "fields.tsv"
        path.write_text("0621\tء\n", encoding="utf-8")
        with pytest.raises(UsegError):
            TransliterationTable.from_tsv(path)

    def test_rejects_missing_required_letters(self, tmp_path):
        path = tmp_path / "tiny.tsv"
        path.write_text("0621\tء\t'\n", encoding="utf-8")
        with pytest.raises(UsegError):
            TransliterationTable.from_tsv(path)

    def test_every_normalized_letter_is_covered(self):
        table = default_table()
        for ch in NORMALIZED_LETTERS + DIACRITICS:
            assert unicodedata.normalize("NFC", ch) in table.forward
