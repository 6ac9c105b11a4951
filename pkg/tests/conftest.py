from __future__ import annotations

import pytest

from planeaut.corpus import generate
from planeaut.decomposition import Automorphism


def aut(text: str) -> Automorphism:
    return Automorphism.parse(text)


@pytest.fixture(scope="session")
def corpus():
    """The seed-1 corpus of 200 automorphisms shared by the property suites."""
    return generate(1, 200)


@pytest.fixture(scope="session")
def lf_corpus(corpus):
    from planeaut.classify import is_lf

    return [s for s in corpus if is_lf(s.automorphism)]
