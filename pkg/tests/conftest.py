import pathlib

import pytest

from deduce.grammar import load_ccg, load_cf, load_tag

DATA = pathlib.Path(__file__).parent / "data"


def read(name: str) -> str:
    return (DATA / name).read_text()


@pytest.fixture(scope="session")
def toy_grammar():
    return load_cf(read("toy.cf"))


@pytest.fixture(scope="session")
def cnf_ab_grammar():
    return load_cf(read("cnf_ab.cf"))


@pytest.fixture(scope="session")
def abn_grammar():
    return load_cf(read("abn.dcg"))


@pytest.fixture(scope="session")
def ambiguous_grammar():
    return load_cf(read("ambiguous.cf"))


@pytest.fixture(scope="session")
def ccg_lexicon():
    return load_ccg(read("lexicon.ccg"))


@pytest.fixture(scope="session")
def trip_grammar():
    return load_tag(read("trip.tag"))


@pytest.fixture(scope="session")
def counting_grammar():
    return load_tag(read("counting.tag"))
