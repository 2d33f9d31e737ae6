import pytest
from hypothesis import given, strategies as st

from photonic_vqe.io import (
    HamiltonianTable,
    ParseError,
    format_hamiltonian,
    format_records,
    format_table,
    load_hamiltonian,
    load_table,
    parse_hamiltonian,
    parse_records,
    parse_table,
)
from photonic_vqe.pauli import HEH_STRINGS, Hamiltonian, PauliString

from conftest import DATA

labels = st.text("IXYZ", min_size=2, max_size=2)
weights = st.floats(-1e6, 1e6, allow_nan=False)


def test_builtin_files():
    h = load_hamiltonian(DATA / "heisenberg.txt")
    assert h.label == "heisenberg"
    assert [s.label for s in h.strings] == ["XX", "YY", "ZZ"]
    heh = load_hamiltonian(DATA / "heh_strings.txt")
    assert tuple(s.label for s in heh.strings) == HEH_STRINGS
    t = load_table(DATA / "synthetic_scan.csv")
    assert [r for r, _ in t.rows] == [0.6, 0.75, 0.9, 1.2, 1.6, 2.2]
    assert t.hamiltonian(0.9).weights[PauliString("II")] == -2.8


@given(st.lists(st.tuples(labels, weights), min_size=1, max_size=10))
def test_hamiltonian_round_trip(terms):
    h = Hamiltonian.from_terms(terms)
    assert parse_hamiltonian(format_hamiltonian(h)) == h


def test_duplicates_merge_and_comments():
    h = parse_hamiltonian("# head\nXX 1.0  # tail\n\nZZ 2\nXX 0.5\n")
    assert h.weights == {PauliString("XX"): 1.5, PauliString("ZZ"): 2.0}


@pytest.mark.parametrize(
    "text, line",
    [("XX 1\nYY\n", 2), ("XX one\n", 1), ("XA 1\n", 1), ("XX 1\nXXX 1\n", 2), ("XX nan\n", 1), ("\n# x\n", None)],
)
def test_hamiltonian_errors_name_line(text, line):
    with pytest.raises(ParseError) as e:
        parse_hamiltonian(text, source="f.txt")
    assert e.value.line == line
    assert str(e.value).startswith("f.txt")


@given(
    st.lists(st.floats(0.1, 5, allow_nan=False), min_size=1, max_size=5, unique=True),
    st.data(),
)
def test_table_round_trip(rs, data):
    strings = (PauliString("II"), PauliString("ZZ"), PauliString("XX"))
    rows = tuple((r, tuple(data.draw(weights) for _ in strings)) for r in rs)
    t = HamiltonianTable(strings, rows)
    assert parse_table(format_table(t)) == t


@pytest.mark.parametrize(
    "text, line",
    [
        ("X,XX\n1,2\n", 1),
        ("R,XX,XX\n1,2,3\n", 1),
        ("R,XX,Z\n1,2,3\n", 1),
        ("R,XX\n1,2,3\n", 2),
        ("R,XX\n1,2\n1,3\n", 3),
        ("R,XX\n1,q\n", 2),
        ("R,XX\n", None),
    ],
)
def test_table_errors(text, line):
    with pytest.raises(ParseError) as e:
        parse_table(text)
    assert e.value.line == line


def test_records_round_trip():
    rows = [("VQE_P", 0, 0.1 + 0.2, -2.9999999999999996), ("VQE_E", 1, 1e-17, 3.0)]
    text = format_records(["mode", "trial", "a", "b"], rows)
    header, back = parse_records(text, [str, int, float, float])
    assert header == ["mode", "trial", "a", "b"]
    assert back == rows
    with pytest.raises(ParseError):
        parse_records("a,b\n1\n", [int, int])
