"""Shared fixtures: the bundled corpora and a pipeline trained on them."""

from pathlib import Path

import pytest

from useg import FeatureTemplate, TrainConfig, load_corpus
from useg.pos import LexiconPosProvider
from useg.segmenter import train_pipeline
from useg.wawanizer import load_lexicon

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def toy_path() -> Path:
    return FIXTURES / "toy.useg"


@pytest.fixture(scope="session")
def toy_dialogues(toy_path):
    return load_corpus(toy_path)


@pytest.fixture(scope="session")
def toy_turns(toy_dialogues):
    return [turn for dialogue in toy_dialogues for turn in dialogue.turns]


@pytest.fixture(scope="session")
def default_lexicon():
    from importlib import resources

    return load_lexicon(
        resources.files("useg.data").joinpath("waw_lexicon.txt")
    )


@pytest.fixture(scope="session")
def default_provider():
    return LexiconPosProvider.from_files()


@pytest.fixture(scope="session")
def toy_pipeline(toy_turns, default_lexicon, default_provider):
    return train_pipeline(
        toy_turns, default_lexicon, default_provider,
        FeatureTemplate(), TrainConfig(),
    )
