import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pyramid_steg.errors import InvalidTable
from pyramid_steg.range_policy import (
    RangeTable,
    capacity_bits,
    classify,
    default_table,
    format_table,
    load_table,
    parse_table,
    validate,
)

from _support import DEFAULT_TRIPLES, random_table, random_triples


def test_default_table_is_valid():
    assert validate(default_table()) == []
    assert default_table().triples() == DEFAULT_TRIPLES


@pytest.mark.parametrize("b, depth", [(63, 3), (0, 0), (15, 0), (16, 1), (32, 3), (64, 2), (200, 1)])
def test_classify_default(b, depth):
    assert classify(b, default_table()) == depth


def test_lut_matches_classify():
    t = default_table()
    assert [classify(b, t) for b in range(256)] == t.lut.tolist()


def _closure_violations(table):
    bad = []
    for b in range(256):
        k = classify(b, table)
        for p in range(1 << k):
            moved = (b >> k << k) | p
            if classify(moved, table) != k:
                bad.append((b, p))
    return bad


def test_closure_exhaustive_default():
    assert _closure_violations(default_table()) == []


@pytest.mark.parametrize("seed", range(20))
def test_closure_exhaustive_random_tables(seed):
    table = random_table(np.random.default_rng(seed))
    assert validate(table) == []
    assert _closure_violations(table) == []


def test_depth_bound_violation():
    t = RangeTable.from_triples([(0, 31, 0), (32, 63, 5), (64, 255, 0)])
    problems = validate(t)
    assert len(problems) == 1 and "depth bound" in problems[0]


def test_closure_alignment_violation():
    t = RangeTable.from_triples([(0, 9, 0), (10, 40, 2), (41, 255, 0)])
    problems = validate(t)
    assert any("closure alignment" in p and "[10,40]" in p for p in problems)


def test_gap_overlap_and_coverage_reported():
    assert any("gap" in p for p in validate(RangeTable.from_triples([(0, 15, 0), (32, 255, 0)])))
    assert any("overlap" in p for p in validate(RangeTable.from_triples([(0, 31, 0), (16, 255, 0)])))
    assert any("uncovered" in p for p in validate(RangeTable.from_triples([(0, 127, 0)])))
    assert validate(RangeTable()) == ["table has no entries"]


def test_validate_reports_all_violations():
    t = RangeTable.from_triples([(0, 9, 7), (10, 40, 2), (41, 100, 0)])
    assert len(validate(t)) == 3


def test_capacity_examples():
    t = default_table()
    assert capacity_bits(bytes(21), t) == 0
    assert capacity_bits(bytes([63]) * 21, t) == 63
    # tail bytes beyond the last full block carry nothing
    assert capacity_bits(bytes([63]) * 41, t) == 63
    assert capacity_bits(bytes([63]) * 20, t) == 0


@given(st.binary(max_size=300), st.binary(min_size=21, max_size=21))
def test_capacity_monotone_in_blocks(data, block):
    t = default_table()
    usable = len(data) - len(data) % 21
    assert capacity_bits(data[:usable] + block, t) >= capacity_bits(data, t)


def test_table_file_round_trip(tmp_path):
    t = random_table(np.random.default_rng(7))
    p = tmp_path / "table.txt"
    p.write_text("# custom table\n\n" + format_table(t))
    assert load_table(p) == t


@pytest.mark.parametrize("text", ["0 255\n", "0 255 x\n", "0 127 0\n128 255 9\n"])
def test_bad_table_files(text):
    with pytest.raises(InvalidTable):
        parse_table(text)


@given(st.integers(0, 2**32 - 1))
def test_random_tables_always_valid(seed):
    triples = random_triples(np.random.default_rng(seed))
    assert validate(RangeTable.from_triples(triples)) == []
