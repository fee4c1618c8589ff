import json

import pytest

from ldaapp.cli import cli
from ldaapp.parser import parse_coefficient

COEFFICIENT = ('-(d-2-2*k-2*n)*(d-4-2*k-2*n)*(d-2-k-n)*(d-3-k-n)*(d-n-2*k)'
               '/(q2^3*(k+1)*(d-2*k-4)*k*(d-2*k-2)*n)')


@pytest.fixture
def write_system(tmp_path):
    def write(equations, **extra):
        doc = {'variables': ['k', 'n'], 'functions': ['f'], 'equations': equations, **extra}
        path = tmp_path / 'system.json'
        path.write_text(json.dumps(doc), encoding='utf-8')
        return str(path)
    return write


def test_masters(runner, systems_dir):
    result = runner.invoke(cli, ['masters', str(systems_dir / 'one_loop.json')])
    assert result.exit_code == 0, result.output
    assert result.output == '[f(k,n+1), f(k,n+2), f(k+1,n+1)]\n'


def test_masters_json_and_latex(runner, systems_dir):
    path = str(systems_dir / 'one_loop_massless.json')
    result = runner.invoke(cli, ['masters', path, '--json'])
    assert json.loads(result.output) == ['f(k+1,n+1)']
    result = runner.invoke(cli, ['masters', path, '--format', 'latex'])
    assert result.output == '[f(k + 1, n + 1)]\n'


def test_basis(runner, systems_dir):
    path = str(systems_dir / 'fibonacci.json')
    result = runner.invoke(cli, ['basis', path])
    assert result.exit_code == 0
    assert result.output == 'y(n+2) - y(n+1) - y(n)\n    multiplicative: n\n'
    result = runner.invoke(cli, ['basis', path, '--reduced'])
    assert result.output == 'y(n+2) - y(n+1) - y(n)\n'


def test_reduce_text(runner, systems_dir):
    result = runner.invoke(cli, ['reduce', str(systems_dir / 'fibonacci.json'),
                                 '--target', 'y(n+4)'])
    assert result.exit_code == 0
    assert result.output == 'y(n+4) = 3*y(n+1) + 2*y(n)\nmasters: [y(n), y(n+1)]\n'


def test_reduce_factored_json(runner, systems_dir, one_loop_massless):
    result = runner.invoke(cli, ['reduce', str(systems_dir / 'one_loop_massless.json'),
                                 '--target', 'f(k+3,n+2)', '--factor', '--json'])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report['masters'] == ['f(k+1,n+1)']
    (entry,) = report['combination']
    assert entry['master'] == 'f(k+1,n+1)'
    table = one_loop_massless.table
    assert parse_coefficient(entry['coefficient'], table) == parse_coefficient(COEFFICIENT, table)
    assert parse_coefficient(entry['factored'], table) == parse_coefficient(COEFFICIENT, table)


def test_scheme(runner, systems_dir):
    path = str(systems_dir / 'heat_pde.json')
    result = runner.invoke(cli, ['scheme', path, '--json'])
    assert result.exit_code == 0, result.output
    (scheme,) = json.loads(result.output)
    assert {entry['term'] for entry in scheme['terms']} == {
        'u(j,k)', 'u(j+1,k)', 'u(j+2,k)', 'u(j,k+1)', 'u(j+1,k+1)', 'u(j+2,k+1)'}
    result = runner.invoke(cli, ['scheme', path, '--system'])
    assert 'ux(j+2,k+1)' in result.output


def test_verify(runner, systems_dir):
    result = runner.invoke(cli, ['verify', str(systems_dir / 'fibonacci.json'), '--degree', '4'])
    assert result.exit_code == 0, result.output
    assert 'janet characterization: ok' in result.output
    assert 'normal forms agree up to degree 2: ok' in result.output


def test_usage_errors_exit_1(runner, systems_dir, tmp_path):
    assert runner.invoke(cli, ['masters', str(tmp_path / 'missing.json')]).exit_code == 1
    fibonacci = str(systems_dir / 'fibonacci.json')
    assert runner.invoke(cli, ['reduce', fibonacci]).exit_code == 1
    assert runner.invoke(cli, ['verify', fibonacci, '--degree', '-1']).exit_code == 1
    assert runner.invoke(cli, ['basis', fibonacci, '--format', 'xml']).exit_code == 1


def test_input_errors_exit_1(runner, write_system):
    result = runner.invoke(cli, ['basis', write_system(['f(k-1,n) - f(k,n)'])])
    assert result.exit_code == 1
    assert 'error:' in result.output
    assert 'k -> k+1' in result.output
    result = runner.invoke(cli, ['basis', write_system([])])
    assert result.exit_code == 1


def test_math_errors_exit_2(runner, write_system):
    result = runner.invoke(cli, ['basis', write_system(['f(k,n) = 1', 'f(k,n) = 2'])])
    assert result.exit_code == 2
    assert 'error:' in result.output
    result = runner.invoke(cli, ['masters', write_system(['f(k+1,n) - f(k,n)'])])
    assert result.exit_code == 2
