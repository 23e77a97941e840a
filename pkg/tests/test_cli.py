# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this
# file, You can obtain one at https://mozilla.org/MPL/2.0/.

import json
from pathlib import Path

import h5py
import pytest

from Profinity.Cli import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, main
from Profinity.Core import Configuration, Schema
from Profinity.Core.Descriptors import CartesianDescriptor, ProPDescriptor

SCHEMAS = Path(__file__).parent.parent / 'schemas'
FULL = 'seq[prod(C(2,i) for i in N)]'
CASE_I = 'seq[prod(C(2,i) for i in N), C(2,2)]'


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / 'config.yaml'
    path.write_text('verify:\n'
                    '  corpus size: 20\n'
                    '  snf matrices: 10\n'
                    '  workers: 2\n')

    return path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()

    return code, captured.out.strip(), captured.err


def test_normalize(capsys):
    code, out, _ = run(capsys, 'normalize', CASE_I)

    assert code == EXIT_OK
    assert out == 'seq[prod(C(2, i) for i in N), C(2, 2)]'


def test_normalize_json(capsys):
    code, out, _ = run(capsys, '--format', 'json', 'normalize',
                       FULL + ' * Zp(2)^aleph0')
    data = json.loads(out)

    assert code == EXIT_OK
    assert data['prime'] == 2
    assert data['torsion_type'] == '1'
    assert data['free_rank'] == 'aleph0'


def test_descriptor_from_file_and_json(capsys, tmp_path):
    dsl = tmp_path / 'group.dsl'
    dsl.write_text('let u = prod(C(2, i) for i in N);\nseq[u] * Zp(2)\n')

    assert run(capsys, 'normalize', str(dsl))[1] == \
        'seq[prod(C(2, i) for i in N)] * Zp(2)'

    document = tmp_path / 'group.json'
    document.write_text(json.dumps(Schema.descriptor_to_json(
        ProPDescriptor.cartesian(CartesianDescriptor.cyclic(3, 2)))))

    assert run(capsys, 'normalize', str(document))[1] == 'seq[C(3, 2)]'


def test_validate(capsys):
    assert run(capsys, 'validate', CASE_I)[:2] == (EXIT_OK, 'valid')

    code, out, _ = run(capsys, 'validate',
                       'seq[C(2,2), prod(C(2,i) for i in N)]')
    assert code == EXIT_NEGATIVE
    assert out == 'index 0: bounded exponent'


def test_dual_and_type(capsys):
    assert run(capsys, 'dual', 'Zp(2)^2')[1] == \
        'discrete(p=2): ulm layers seq[]; divisible rank 2'

    assert run(capsys, 'type', 'seq[repeat(prod(C(2, i) for i in N)), '
                               'C(2, 2)]')[1] == 'w+1'


def test_series(capsys):
    code, out, _ = run(capsys, 'series', 'seq[repeat(prod(C(2, i) for i in '
                                         'N)), C(2, 2)]', '--at', 'w')

    assert code == EXIT_OK
    assert out == 'layer w: C(2, 2)\nquotient: seq[C(2, 2)]'

    code, _, err = run(capsys, 'series', FULL, '--at', 'w*2')
    assert code == EXIT_ERROR
    assert 'index exceeds torsion type' in err


def test_iso(capsys):
    code, out, _ = run(capsys, 'iso', FULL, FULL + ' * Zp(2)')
    assert code == EXIT_NEGATIVE
    assert out.startswith('not isomorphic')

    assert run(capsys, 'iso', '--abstract', FULL, FULL + ' * Zp(2)')[0] == \
        EXIT_OK

    code, out, _ = run(capsys, '--format', 'json', 'iso', FULL, FULL)
    assert code == EXIT_OK
    assert json.loads(out)['verdict'] is True


def test_embed(capsys):
    code, out, _ = run(capsys, 'embed', 'Zp(2)', FULL, '--take', '2')

    assert code == EXIT_OK
    assert out.splitlines() == [
        'embeds', '  free 0 link 1: C_p^1 -> copy 0 of C_p^1',
        '  free 0 link 2: C_p^2 -> copy 0 of C_p^2']

    code, out, _ = run(capsys, 'embed', FULL, 'seq[C(2,2)]')
    assert code == EXIT_NEGATIVE
    assert out.startswith('not supported')


def test_construct_and_materialize(capsys, tmp_path):
    code, out, _ = run(capsys, 'construct', CASE_I)
    assert code == EXIT_OK
    assert out.splitlines()[0] == 'extension r=2 diagonal=(1) [case I]'

    code, out, _ = run(capsys, 'construct', '--emit-tree', CASE_I)
    assert code == EXIT_OK

    tree = tmp_path / 'tree.json'
    tree.write_text(out)

    code, out, _ = run(capsys, 'materialize', str(tree), '--level', '3',
                       '--cap', '1')
    assert code == EXIT_OK
    assert out.endswith('of order 2^8 from 4 generators')


def test_construct_trivial_group(capsys, tmp_path):
    code, out, _ = run(capsys, 'construct', '--emit-tree', 'trivial(3)')
    assert code == EXIT_OK
    assert json.loads(out)['prime'] == 3

    tree = tmp_path / 'tree.json'
    tree.write_text(out)

    code, out, _ = run(capsys, 'materialize', str(tree))
    assert code == EXIT_OK
    assert out == 'trivial of order 3^0 from 0 generators'


def test_construct_rejects_invalid_sequence(capsys):
    code, _, err = run(capsys, 'construct',
                       'seq[C(2,2), prod(C(2,i) for i in N)]')

    assert code == EXIT_ERROR
    assert 'bounded exponent' in err


def test_decompose(capsys):
    code, out, _ = run(capsys, 'decompose', FULL, '--take', '2')
    lines = out.splitlines()

    assert code == EXIT_OK
    assert lines[0] == 'K_0: seq[L(2, [], [1, 0])]'
    assert lines[1] == 'K_1: seq[L(2, [], [0, 1, 0, 0])]'
    assert lines[2].startswith('rest: seq[')

    code, _, err = run(capsys, 'decompose', 'Zp(2)')
    assert code == EXIT_ERROR
    assert 'not decomposable' in err


def test_verify_writes_signals(capsys, tmp_path, small_config):
    code, out, _ = run(capsys, '--config', str(small_config), 'verify',
                       '--suite', 'snf', '--suite', 'theta',
                       '--log-file', str(tmp_path / 'suites'))

    assert code == EXIT_OK
    assert [line.split()[:2] for line in out.splitlines()] == [
        ['snf', 'pass'], ['theta', 'pass']]

    with h5py.File(tmp_path / 'suites.hdf5', 'r') as log_file:
        assert log_file['suites/snf'].shape == (10, 2)
        assert log_file['suites/theta'][:, 1].all()

    assert run(capsys, '--config', str(small_config), 'verify', '--suite',
               'snf', '--log-file', str(tmp_path / 'again'))[0] == EXIT_OK
    with h5py.File(tmp_path / 'again.hdf5', 'r') as log_file:
        assert log_file['suites/snf'].shape == (10, 2)

    assert Configuration.get_config().verify.corpus_size == 200


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, 'verify', '--suite', 'bogus')

    assert code == EXIT_ERROR
    assert 'Unknown suite "bogus"' in err


def test_schema(capsys, tmp_path):
    code, out, _ = run(capsys, 'schema')
    assert code == EXIT_OK
    assert set(json.loads(out)) == {'descriptor', 'discrete', 'certificate',
                                    'tree'}

    assert run(capsys, 'schema', '--output', str(tmp_path / 'out'))[0] == \
        EXIT_OK
    assert (tmp_path / 'out' / 'tree.schema.json').is_file()


def test_committed_schemas_match_the_models():
    schemas = Schema.json_schemas()

    assert {p.name for p in SCHEMAS.glob('*.schema.json')} == \
        {f'{name}.schema.json' for name in schemas}
    for name, schema in schemas.items():
        path = SCHEMAS / f'{name}.schema.json'
        assert json.loads(path.read_text()) == schema, name


def test_dsl_errors_show_a_caret(capsys):
    code, _, err = run(capsys, 'normalize', 'C(4,1)')

    assert code == EXIT_ERROR
    assert err.splitlines() == ['error: 1:1: 4 is not prime', 'C(4,1)',
                                '^^^^^^']


def test_file_that_is_not_utf8(capsys, tmp_path):
    path = tmp_path / 'group.dsl'
    path.write_bytes(b'Zp(2) \xff\n')

    code, _, err = run(capsys, 'normalize', str(path))

    assert code == EXIT_ERROR
    assert 'is not UTF-8 text: byte 6' in err


def test_bad_json(capsys):
    code, _, err = run(capsys, 'normalize', '{"prime": 2')

    assert code == EXIT_ERROR
    assert 'Invalid descriptor JSON' in err


@pytest.mark.parametrize('text, message', [
    ('dsl:\n  max depth: 101\n', 'invalid configuration'),
    ('verify: [1, 2\n', 'Invalid YAML'),
])
def test_bad_config(capsys, tmp_path, text, message):
    path = tmp_path / 'config.yaml'
    path.write_text(text)

    code, _, err = run(capsys, '--config', str(path), 'type', 'Zp(2)')

    assert code == EXIT_ERROR
    assert message in err


def test_missing_config(capsys, tmp_path):
    code, _, err = run(capsys, '--config', str(tmp_path / 'missing.yaml'),
                       'type', 'Zp(2)')

    assert code == EXIT_ERROR
    assert 'Cannot read config file' in err


def test_usage(capsys):
    assert main([]) == EXIT_ERROR
    assert main(['--help']) == EXIT_OK
    assert main(['normalize']) == EXIT_ERROR

    capsys.readouterr()
