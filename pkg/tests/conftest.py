from __future__ import annotations

import random
from importlib import resources

import pytest

from k2yoneda.bar import BarComplex
from k2yoneda.chains import enumerate_chains
from k2yoneda.linalg import Field
from k2yoneda.presentation import MonomialPresentation, PresentationError, is_finite_dimensional, parse_presentation
from k2yoneda.showcase import example_presentation
from k2yoneda.yoneda import build_ext_algebra

_CRITERIA: list[tuple[str, bool, str]] = []


def sample_path(name: str) -> str:
    return str(resources.files("k2yoneda") / "samples" / name)


def load_sample(name: str) -> MonomialPresentation:
    with open(sample_path(name), encoding="utf-8") as fh:
        return parse_presentation(fh.read(), source=name)


def random_presentation(rng: random.Random, max_letters=3, max_relations=4, max_len=4, finite=True):
    """Random antichain presentation; retries until it is valid (and finite-dimensional if asked)."""
    while True:
        k = rng.randint(1, max_letters)
        names = "xyz"[:k]
        rels = {tuple(rng.randrange(k) for _ in range(rng.randint(2, max_len))) for _ in range(rng.randint(1, max_relations))}
        try:
            p = MonomialPresentation(tuple(names), tuple(rels))
        except PresentationError:
            continue
        if finite and not is_finite_dimensional(p):
            continue
        return p


@pytest.fixture(scope="session")
def example():
    return example_presentation()


@pytest.fixture(scope="session")
def example_chains(example):
    return enumerate_chains(example, 8)


@pytest.fixture(scope="session")
def ext(example_chains):
    return build_ext_algebra(example_chains)


@pytest.fixture(scope="session")
def bar(ext):
    return BarComplex(ext.algebra, Field(32003))


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion: criterion(label, passed, detail); asserts ``passed``."""

    def record(label: str, passed: bool, detail: str = ""):
        _CRITERIA.append((label, bool(passed), detail))
        print(f"{label}: {'PASS' if passed else 'FAIL'} {detail}")
        assert passed, f"{label} failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
