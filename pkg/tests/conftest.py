from pathlib import Path

import pytest

from umlmap.corpus import load_corpus
from umlmap.parser import parse_document
from umlmap.resolver import resolve
from umlmap.rms.storage import FlatFileStore

GOLDEN_DIR = Path(__file__).parent / "golden"

RESEARCHERS_CSV = (
    "name,voteno,allocation,balance,password,role\n"
    "Aminah Yusof,S014001,1000,1000,abc123,R\n"
    "Lim Wei Jie,S014002,2500,100,lwj77,R\n"
    "RMS Admin,ADMIN01,0,0,adm1n,A\n"
)


@pytest.fixture
def rms_source():
    return load_corpus("rms")


@pytest.fixture
def rms_tree(rms_source):
    return parse_document(rms_source, file="rms.uml")


@pytest.fixture
def rms_model(rms_tree):
    return resolve(rms_tree)


@pytest.fixture
def student_faculty_model():
    return resolve(parse_document(load_corpus("student_faculty"), file="student_faculty.uml"))


@pytest.fixture
def researchers_file(tmp_path):
    path = tmp_path / "researchers.csv"
    path.write_text(RESEARCHERS_CSV, encoding="utf-8")
    return path


@pytest.fixture
def store(researchers_file, tmp_path):
    return FlatFileStore(researchers_file, tmp_path / "orders.csv")


@pytest.fixture
def records(store):
    return store.load_researchers()
