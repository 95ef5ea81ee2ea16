import pytest
from hypothesis import given, strategies as st

from choix import oeis
from choix.oeis import (
    BFile,
    BFileFormatError,
    SequenceError,
    Tables,
    UnsupportedSequenceError,
    compare_sequences,
    generate_sequence,
    parse_bfile,
)

from oracles import brute_images


def test_m0_m1():
    assert generate_sequence("A323462", 8).values == [1, 1, 3, 2, 5, 3, 7, 4]
    b = generate_sequence("A323288", 16)
    assert b.values[-2:] == [110, 112]
    assert b.entries[0] == (1, 2)


def test_tau_sequence(table_1_cap7):
    b = generate_sequence("A323454", 12, Tables(tau=table_1_cap7))
    assert b.values == [0, 1, 11, 2, -1, 10, 9, 3, 9, -1, 10, 9]


def test_tau_needs_table():
    with pytest.raises(SequenceError):
        generate_sequence("A323454", 3)


def test_steps5_sequence(table_5_cap7):
    b = generate_sequence("a323484", 12, Tables(five=table_5_cap7))
    assert b.values == [0, 1, 11, 2, 11, 12, 8, 3, 10, 12, 9, 11]
    with pytest.raises(SequenceError):
        generate_sequence("A323484", 4001, Tables(five=table_5_cap7))


def test_record_sequences(table_1_cap7, table_5_cap7):
    t = Tables(tau=table_1_cap7, five=table_5_cap7)
    assert generate_sequence("A323463", 8, t).values == [0, 1, 11, 12, 13, 14, 15, 16]
    assert generate_sequence("A323463", 8, t, positions=True).values == [1, 2, 3, 99, 369, 999, 1999, 9879]
    assert generate_sequence("A323464", 9, t, positions=True).values == [5, 10, 15, 30, 100, 200, 400, 9875, 19995]
    with pytest.raises(SequenceError):
        generate_sequence("A323463", 9, t)


def test_flattened_rows():
    vals = generate_sequence("A323460", 12).values
    assert vals == [1, 2, 1, 2, 4, 3, 6, 2, 4, 8, 5, 10]
    expect = [m for n in range(1, 40) for m in sorted(brute_images(n, 2))][:60]
    assert generate_sequence("A323465", 60).values == expect


def test_unknown_and_reserved():
    with pytest.raises(UnsupportedSequenceError):
        generate_sequence("A323453", 5)
    with pytest.raises(SequenceError):
        generate_sequence("A000045", 5)


def test_offset_override():
    assert generate_sequence("A323462", 3, offset=0).entries == ((0, 1), (1, 1), (2, 3))


def test_parse():
    assert parse_bfile("1 1\n2 1\n3 3\n").entries == ((1, 1), (2, 1), (3, 3))
    assert parse_bfile("# comment\n1 0\n").entries == ((1, 0),)
    assert parse_bfile("5 -1\n").entries == ((5, -1),)
    with pytest.raises(BFileFormatError):
        parse_bfile("1 1\n3 3\n")
    with pytest.raises(BFileFormatError):
        parse_bfile("1 1 1\n")
    with pytest.raises(BFileFormatError):
        parse_bfile("1 x\n")


def test_compare():
    a = BFile.from_values(range(100))
    assert compare_sequences(a, a).match
    b = BFile.from_values([v if i != 36 else -7 for i, v in enumerate(range(100))])
    rep = compare_sequences(a, b)
    assert rep.divergence == (37, 36, -7)
    assert "37" in str(rep)
    with pytest.raises(SequenceError):
        compare_sequences(a, BFile.from_values([1], offset=500))


def test_compare_against_table(table_1_cap7):
    ref = parse_bfile("".join(f"{i} {v}\n" for i, v in enumerate(
        [0, 1, 11, 2, -1, 10, 9, 3, 9, -1, 10, 9, 5, 8, -1, 4, 7, 8, 8, -1, 10, 9, 6, 8,
         -1, 5, 8, 7, 9, -1, 6, 5, 10, 6, -1, 9], 1)))
    gen = generate_sequence("A323454", 1000, Tables(tau=table_1_cap7))
    rep = compare_sequences(gen, ref)
    assert rep.match and (rep.first, rep.last) == (1, 36)


@given(st.lists(st.integers(min_value=-10**30, max_value=10**30), max_size=50),
       st.integers(min_value=0, max_value=5))
def test_round_trip(values, offset):
    b = BFile.from_values(values, offset)
    assert parse_bfile(b.to_text()) == b
    assert parse_bfile(b.to_text()).to_text() == b.to_text()


def test_text_format():
    text = generate_sequence("A323462", 3).to_text()
    assert text == "1 1\n2 1\n3 3\n"


def test_write_read(tmp_path):
    b = generate_sequence("A323460", 50)
    p = tmp_path / "b.txt"
    oeis.write_bfile(b, p)
    assert oeis.read_bfile(p) == b
    assert p.read_bytes() == b.to_text().encode("ascii")


def test_reference_url():
    assert oeis.reference_url("a323454") == "https://oeis.org/A323454/b323454.txt"
