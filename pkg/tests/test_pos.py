"""POS providers and the analyzer-tag mapping."""

import logging

import pytest

from useg import (
    LexiconPosProvider, PosInfo, PosProvider, TagMapping, UsegError,
    gold_pos_from_corpus,
)
from useg.pos import UNKNOWN_TAG


class TestLexiconPosProvider:
    def test_satisfies_the_protocol(self, default_provider):
        assert isinstance(default_provider, PosProvider)

    def test_flags_conjunctions(self, default_provider):
        infos = default_provider.tag_tokens(["و", "قال"])
        assert infos[0].is_conjunction
        assert not infos[1].is_conjunction

    def test_flags_proper_nouns(self, default_provider):
        infos = default_provider.tag_tokens(["احمد", "راح", "مصر"])
        assert infos[0].is_proper_noun
        assert not infos[1].is_proper_noun
        assert infos[2].is_proper_noun

    def test_unknown_tokens_get_unk(self, default_provider):
        info = default_provider.tag_tokens(["سباغيتي"])[0]
        assert info.tag == UNKNOWN_TAG
        assert not (info.is_conjunction or info.is_noun
                    or info.is_proper_noun)

    def test_membership_is_normalization_aware(self):
        provider = LexiconPosProvider(
            conjunctions=frozenset(["و"]),
            proper_nouns=frozenset(["شريفه"]),
        )
        assert provider.tag_tokens(["شريفة"])[0].is_proper_noun

    def test_alignment(self, default_provider):
        tokens = ["و"] * 5
        assert len(default_provider.tag_tokens(tokens)) == 5


class TestTagMapping:
    def test_longest_prefix_wins(self):
        mapping = TagMapping.default()
        info = mapping.classify("noun_prop")
        assert info is not None and info.is_proper_noun
        info = mapping.classify("noun")
        assert info is not None and info.is_noun \
            and not info.is_proper_noun

    def test_conjunction_rule(self):
        info = TagMapping.default().classify("conj")
        assert info is not None and info.is_conjunction

    def test_unmatched_returns_none(self):
        assert TagMapping.default().classify("verb") is None

    def test_load_rejects_unknown_kind(self, tmp_path):
        path = tmp_path / "map.cfg"
        path.write_text("adj=adjective\n", encoding="utf-8")
        with pytest.raises(UsegError):
            TagMapping.load(path)

    def test_load_skips_comments_and_blanks(self, tmp_path):
        path = tmp_path / "map.cfg"
        path.write_text("# c\n\nconj=conj\n", encoding="utf-8")
        mapping = TagMapping.load(path)
        assert mapping.classify("conj_x").is_conjunction


class TestGoldPosFromCorpus:
    def test_missing_tags_give_blank_info(self):
        infos = gold_pos_from_corpus([None, ""], TagMapping.default())
        assert all(not (i.is_conjunction or i.is_noun or i.is_proper_noun)
                   for i in infos)

    def test_mapped_tags(self):
        infos = gold_pos_from_corpus(
            ["conj", "noun_prop", "noun"], TagMapping.default()
        )
        assert infos[0].is_conjunction
        assert infos[1].is_proper_noun
        assert infos[2].is_noun

    def test_unmapped_tag_warns_once_per_name(self, caplog):
        with caplog.at_level(logging.WARNING, logger="useg.pos"):
            gold_pos_from_corpus(["verb", "verb", "adv"],
                                 TagMapping.default())
        messages = [r.message for r in caplog.records]
        assert sum("verb" in m for m in messages) == 1
        assert sum("adv" in m for m in messages) == 1

    def test_default_posinfo_is_all_off(self):
        info = PosInfo()
        assert info.tag == UNKNOWN_TAG
        assert not (info.is_conjunction or info.is_noun
                    or info.is_proper_noun)
