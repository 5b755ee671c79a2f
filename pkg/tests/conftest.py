import functools

import pytest

from virtualih.fanfile import load_corpus_document
from virtualih.mes import construct_mes


@functools.lru_cache(maxsize=None)
def corpus_doc(name):
    return load_corpus_document(name)


@functools.lru_cache(maxsize=None)
def corpus_fan(name):
    return corpus_doc(name).build()


@functools.lru_cache(maxsize=None)
def corpus_model(name, seed=0):
    return construct_mes(corpus_fan(name), seed=seed)


@pytest.fixture
def fan():
    return corpus_fan


@pytest.fixture
def model():
    return corpus_model
