"""Conjunction-waw splitting rules and lexicon handling."""

import logging
import random

from useg import WawLexicon, load_lexicon, split_waw, wawanize_turn

LEX = WawLexicon.from_words(["قال", "قت", "وقت", "كان", "الخير"])


class TestSplitWaw:
    def test_splits_when_rest_is_a_word(self):
        assert split_waw("وقال", LEX) == ["و", "قال"]

    def test_full_word_entry_wins(self):
        # The token itself is a lexicon word, so it must stay whole.
        assert split_waw("وقت", LEX) == ["وقت"]

    def test_rest_must_be_in_lexicon(self):
        assert split_waw("وهمية", LEX) == ["وهمية"]

    def test_too_short_to_split(self):
        # Splitting would leave a single letter; the guard needs length 3.
        assert split_waw("وق", LEX) == ["وق"]

    def test_non_waw_initial_tokens_untouched(self):
        assert split_waw("قال", LEX) == ["قال"]
        assert split_waw("فقال", LEX) == ["فقال"]

    def test_bare_waw_untouched(self):
        assert split_waw("و", LEX) == ["و"]

    def test_idempotent_over_fuzzed_tokens(self):
        rng = random.Random(3)
        words = list(LEX.words)
        for _ in range(300):
            token = rng.choice(words)
            if rng.random() < 0.5:
                token = "و" + token
            once = []
            for part in split_waw(token, LEX):
                once.extend(split_waw(part, LEX))
            assert once == split_waw(token, LEX)


class TestWawanizeTurn:
    def test_flat_map_preserves_order(self):
        tokens = ["وقال", "الخير", "وكان"]
        assert wawanize_turn(tokens, LEX) == \
            ["و", "قال", "الخير", "و", "كان"]

    def test_empty_turn(self):
        assert wawanize_turn([], LEX) == []

    def test_idempotent_as_a_whole(self):
        tokens = ["وقال", "وقت", "و", "مرحبا"]
        once = wawanize_turn(tokens, LEX)
        assert wawanize_turn(once, LEX) == once


class TestLoadLexicon:
    def test_loads_and_normalizes(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("# comment line\nقال\nمدرسة\n\n", encoding="utf-8")
        lexicon = load_lexicon(path)
        assert "قال" in lexicon
        assert "مدرسه" in lexicon  # stored in normalized form
        assert len(lexicon) == 2

    def test_skips_non_arabic_lines_with_warning(self, tmp_path, caplog):
        path = tmp_path / "lex.txt"
        path.write_text("قال\nhello\n", encoding="utf-8")
        with caplog.at_level(logging.WARNING, logger="useg.wawanizer"):
            lexicon = load_lexicon(path)
        assert len(lexicon) == 1
        assert any("hello" in r.message for r in caplog.records)

    def test_skips_bare_waw_entry(self, tmp_path):
        path = tmp_path / "lex.txt"
        path.write_text("و\nقال\n", encoding="utf-8")
        assert len(load_lexicon(path)) == 1

    def test_packaged_lexicon_loads(self, default_lexicon):
        assert len(default_lexicon) > 100
        assert "قال" in default_lexicon

    def test_membership_uses_normalized_form(self):
        lexicon = WawLexicon.from_words(["مدرسة"])
        assert "مدرسه" in lexicon
