"""Bundled .uml models transcribed from the case study."""
from importlib import resources

CORPUS_PREFIX = "corpus:"
CORPUS_NAMES = ("rms", "student_faculty")


def corpus_path(name: str):
    if name not in CORPUS_NAMES:
        raise KeyError(f"no bundled model named {name!r}; choose from {', '.join(CORPUS_NAMES)}")
    return resources.files(__name__).joinpath(f"{name}.uml")


def load_corpus(name: str) -> str:
    return corpus_path(name).read_text(encoding="utf-8")
