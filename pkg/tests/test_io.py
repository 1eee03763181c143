import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadscheme.builder import build_sh
from hadscheme.catalogue import builtin_order8, order4_schemes
from hadscheme.hadamard import H1, NotOrthogonal, sylvester
from hadscheme.io import (
    FormatError,
    format_built,
    format_hadamard,
    format_scheme,
    parse_hadamard,
    parse_scheme,
    read_hadamard,
    read_scheme,
    write_hadamard,
    write_scheme,
)
from hadscheme.scheme import NotClosedUnderTranspose

import random
from conftest import random_equivalent


@pytest.mark.parametrize("name", sorted(order4_schemes()))
def test_scheme_round_trip(name, tmp_path):
    s = order4_schemes()[name]
    path = tmp_path / "s.scheme"
    write_scheme(path, s)
    assert read_scheme(path) == s


def test_built_file_has_label_line():
    text = format_built(build_sh(builtin_order8()["AS8_3"](), sylvester(3)))
    assert text.splitlines()[1] == "# labels: 1=t~ 2..3=s~ 4=r+ 5=r-"
    assert parse_scheme(text).n == 32


@given(st.integers(0, 2 ** 32 - 1))
@settings(max_examples=30, deadline=None)
def test_hadamard_round_trip(seed):
    h = random_equivalent(sylvester(3), random.Random(seed))
    assert parse_hadamard(format_hadamard(h)) == h


def test_hadamard_numeric_rows(tmp_path):
    path = tmp_path / "h.had"
    path.write_text("# comment\n2\n1 1\n1 -1\n")
    assert read_hadamard(path) == sylvester(1)
    write_hadamard(path, H1)
    assert read_hadamard(path) == H1


@pytest.mark.parametrize("text", ["", "2 2\n0 1\n", "x y\n", "2 3\n0 1\n1 0\n"])
def test_bad_scheme_text(text):
    with pytest.raises(FormatError):
        parse_scheme(text)


def test_scheme_axioms_checked_on_read():
    with pytest.raises(NotClosedUnderTranspose):
        parse_scheme("3 3\n0 1 2\n2 0 1\n1 1 0\n")


@pytest.mark.parametrize("text", ["", "2\n++\n", "2\n+x\n-+\n", "2\n+++\n+-\n", "n\n"])
def test_bad_hadamard_text(text):
    with pytest.raises(FormatError):
        parse_hadamard(text)


def test_non_hadamard_rejected():
    with pytest.raises(NotOrthogonal):
        parse_hadamard("2\n++\n++\n")


def test_format_scheme_header():
    s = order4_schemes()["AS4_1"]
    assert format_scheme(s).splitlines()[0] == "4 2"
