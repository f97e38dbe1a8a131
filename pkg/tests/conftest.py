import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from holoeikonal.multipoly import MultiPoly  # noqa: E402
from holoeikonal.scalar import GaussianRational  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parents[1]

small_fractions = st.builds(
    Fraction, st.integers(-6, 6), st.integers(1, 4)
)
gaussian_rationals = st.builds(GaussianRational, small_fractions, small_fractions)
nonzero_gaussian_rationals = gaussian_rationals.filter(bool)


@st.composite
def polys(draw, nvars=None, max_terms=5, max_exp=3):
    n = nvars if nvars is not None else draw(st.integers(1, 4))
    exps = st.tuples(*[st.integers(0, max_exp)] * n)
    terms = draw(st.dictionaries(exps, gaussian_rationals, max_size=max_terms))
    return MultiPoly(n, terms)


@pytest.fixture
def fixtures_dir():
    return ROOT / "fixtures" / "table1"


def load_table1():
    try:
        import tomllib
    except ModuleNotFoundError:  # python < 3.11
        import tomli as tomllib
    out = []
    for path in sorted((ROOT / "fixtures" / "table1").glob("*.toml")):
        with path.open("rb") as fh:
            data = tomllib.load(fh)
        data["name"] = path.stem
        out.append(data)
    return out


ACCEPTANCE_LINES = []


def record_acceptance(line):
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
