"""CLI tests: spec parsing, lattice expressions, exit codes, output
determinism, and the golden appendix report."""

import io
import json
import os
import sys
from fractions import Fraction

import pytest

from scrollbranch.cli import (parse_spec_text, parse_extras,
                              evaluate_lattice, SpecParseError,
                              LatticeExprError, _jsonify, main)
from scrollbranch import latticecalc

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), 'golden')

SPEC_A_TEXT = """\
# fixed spec A
f = [1, 1, 2, -1, 2]
q = [3, 2, 0, 2, 0, 4, 2, 0, 2, 5, 2, 2, 6, 4, 7]
jet_order = 8
"""


def run_cli(argv):
    """run main() capturing stdout; returns (exit code, bytes)"""
    old = sys.stdout
    sys.stdout = io.StringIO()
    try:
        code = main(argv)
        out = sys.stdout.getvalue()
    finally:
        sys.stdout = old
    return code, out.encode('utf-8')


# ---------------------------------------------------------------------------
# spec parsing
# ---------------------------------------------------------------------------

def test_parse_spec_text_basic():
    spec, opts = parse_spec_text(SPEC_A_TEXT)
    assert spec.f_coeffs == (1, 1, 2, -1, 2)
    assert spec.q_coeffs[0] == 3
    assert spec.jet_order == 8
    assert opts == {'jet_order': 8}


def test_parse_spec_exact_decimals():
    spec, _ = parse_spec_text(
        'f = [0.5, 1, 2, -1, 2]\n'
        'q = [3, 2, 0, 2, 0, 4, 2, 0, 2, 5, 2, 2, 6, 4, 7]\n')
    assert spec.f_coeffs[0] == Fraction(1, 2)


def test_parse_spec_comments_and_strings():
    spec, _ = parse_spec_text(
        'f = [1, 1, 2, -1, 2]  # trailing comment\n'
        '# full-line comment\n'
        'q = [3, 2, 0, 2, 0, 4, 2, 0, 2, 5, 2, 2, 6, 4, 7]\n')
    assert spec.f_coeffs == (1, 1, 2, -1, 2)


@pytest.mark.parametrize('text', [
    'f = [1, 2, 3]\nq = [0]\n',                       # wrong arities
    'f = [1, 1, 2, -1, 2]\n',                         # missing q
    'seed = "three"\n',                               # non-integer seed
    'f = [1, 1, 2, -1, 2]\nf = [1, 1, 2, -1, 2]\n',   # duplicate key
    'mystery = 1\n',                                  # unknown key
    'f [1, 2]\n',                                     # no equals sign
    '',                                               # nothing at all
    'f = [1, 1, x, -1, 2]\n'
    'q = [3, 2, 0, 2, 0, 4, 2, 0, 2, 5, 2, 2, 6, 4, 7]\n',   # bad number
])
def test_parse_spec_errors(text):
    with pytest.raises(SpecParseError):
        parse_spec_text(text)


def test_parse_extras():
    assert parse_extras('') == []
    assert parse_extras('6x(1,2)') == [(1, 2)] * 6
    assert parse_extras('2x(3,1), (10,3)') == [(3, 1), (3, 1), (10, 3)]
    with pytest.raises(SpecParseError):
        parse_extras('6x1,2')
    with pytest.raises(SpecParseError):
        parse_extras('(1,2,3)')


# ---------------------------------------------------------------------------
# lattice expressions
# ---------------------------------------------------------------------------

def test_lattice_picS_values():
    assert evaluate_lattice('C1^2', 'picS') == -3
    assert evaluate_lattice('C2^2', 'picS') == -1
    assert evaluate_lattice('K^2', 'picS') == 0
    assert evaluate_lattice('(2*K - C1 - C1bar)^2', 'picS') == 2
    assert evaluate_lattice('(C1 + C2 + C1bar + C2bar) * C1', 'picS') == -1


def test_lattice_z1_values():
    assert evaluate_lattice('(2*F - E - Eb)^2 * E', 'z1') == 0
    for k in range(1, 6):
        assert evaluate_lattice('(2*F - E - Eb)^2 * (%d*F)' % k,
                                'z1') == 2 * k
    assert evaluate_lattice('E^3', 'z1') == 4


def test_lattice_ytilde_values():
    assert evaluate_lattice('Sigma^3', 'ytilde') == -4
    assert evaluate_lattice('c2 * Dt', 'ytilde') == 32
    assert evaluate_lattice('(K + Dt) * Dt^2', 'ytilde') == 32
    assert evaluate_lattice('c2 * Dt + (K + Dt) * Dt^2', 'ytilde') == 64


def test_lattice_degree_one_result():
    val = evaluate_lattice('2*K - C1', 'picS')
    assert isinstance(val, latticecalc.PicS)
    want = 2 * latticecalc.PicS.named('K') - latticecalc.PicS.named('C1')
    assert val == want


@pytest.mark.parametrize('expr,ring', [
    ('K + 1', 'picS'),            # scalar plus class
    ('c2 * c2', 'ytilde'),        # exceeds top degree
    ('2K', 'picS'),               # juxtaposition
    ('nonsense', 'picS'),
    ('(K', 'picS'),
    ('K^0', 'picS'),
    ('K * K + K', 'picS'),        # mixed degrees
    ('F', 'nosuchring'),
])
def test_lattice_errors(expr, ring):
    with pytest.raises(LatticeExprError):
        evaluate_lattice(expr, ring)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def test_jsonify_exactness():
    doc = _jsonify({'a': Fraction(1, 2), 'b': Fraction(4, 2),
                    'c': [Fraction(-3, 7)], 'd': None, 'e': True})
    assert doc == {'a': '1/2', 'b': 2, 'c': ['-3/7'], 'd': None, 'e': True}
    # no floats anywhere in the tree
    def no_floats(x):
        if isinstance(x, dict):
            return all(no_floats(v) for v in x.values())
        if isinstance(x, list):
            return all(no_floats(v) for v in x)
        return not isinstance(x, float)
    assert no_floats(doc)


# ---------------------------------------------------------------------------
# the command line itself
# ---------------------------------------------------------------------------

@pytest.fixture()
def spec_file(tmp_path):
    p = tmp_path / 'specA.toml'
    p.write_text(SPEC_A_TEXT)
    return str(p)


def test_cli_lattice_ok():
    code, out = run_cli(['lattice', 'C1^2', '--ring', 'picS'])
    assert code == 0
    doc = json.loads(out)
    assert doc['value'] == -3
    assert doc['schema'] == 1


def test_cli_ledger_and_extras():
    code, out = run_cli(['ledger', '--extras', '6x(1,2)'])
    assert code == 0
    doc = json.loads(out)
    assert doc['ledger']['closed'] is True
    assert doc['ledger']['e_B'] == 28


def test_cli_appendix_text_format():
    code, out = run_cli(['appendix', '--format', 'text'])
    assert code == 0
    assert b'pairs_disjoint: True' in out


def test_cli_curves(spec_file):
    code, out = run_cli(['curves', spec_file])
    assert code == 0
    doc = json.loads(out)
    kinds = [c['kind'] for c in doc['curves']]
    assert kinds.count('conic') == 2
    assert kinds.count('quartic') == 3


def test_cli_parse_error_exit_2(tmp_path):
    bad = tmp_path / 'bad.toml'
    bad.write_text('f = [1, 2]\n')
    code, _ = run_cli(['curves', str(bad)])
    assert code == 2
    code, _ = run_cli(['curves', str(tmp_path / 'missing.toml')])
    assert code == 2
    code, _ = run_cli(['lattice', '2K'])
    assert code == 2


def test_cli_degenerate_exit_1(tmp_path):
    # f proportional to z3: the five cutting planes are not distinct
    bad = tmp_path / 'degen.toml'
    bad.write_text('f = [0, 0, 0, 1, 0]\n'
                   'q = [3, 2, 0, 2, 0, 4, 2, 0, 2, 5, 2, 2, 6, 4, 7]\n')
    code, _ = run_cli(['curves', str(bad)])
    assert code == 1


def test_cli_spec_xor_seed(spec_file):
    code, _ = run_cli(['curves', spec_file, '--seed', '1'])
    assert code == 2
    code, _ = run_cli(['curves'])
    assert code == 2


def test_cli_seeded_points_deterministic():
    code1, out1 = run_cli(['points', '--seed', '5'])
    code2, out2 = run_cli(['points', '--seed', '5'])
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc['summary']['total'] == 26
    assert doc['summary']['pattern'] == [2, 12, 12]


def test_cli_appendix_matches_golden():
    code, out = run_cli(['appendix'])
    assert code == 0
    with open(os.path.join(GOLDEN_DIR, 'appendix.json'), 'rb') as fh:
        assert out == fh.read()
