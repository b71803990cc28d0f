import json

from hyperloop.__main__ import main


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fold__a3_flip(capsys):
    code, out, _ = run(capsys, 'fold', '--type', 'A3', '--auto', 'flip')
    assert code == 0
    document = json.loads(out)
    assert document["folded_type"] == 'C2'
    assert document["m"] == 2
    assert document["I0"] == [[0, 2], [1]]


def test_fold__d4_triality(capsys):
    code, out, _ = run(capsys, 'fold', '--type', 'D4', '--auto', 'rot3')
    assert code == 0
    assert json.loads(out)["folded_type"] == 'G2'


def test_fold__identity(capsys):
    code, out, _ = run(capsys, 'fold', '--type', 'A1', '--auto', 'id')
    assert code == 0
    assert json.loads(out)["m"] == 1


def test_fold__check_sweeps_the_twisted_basis(capsys):
    code, out, _ = run(capsys, 'fold', '--type', 'A3', '--auto', 'flip', '--check')
    assert code == 0
    assert json.loads(out)["violations"] == {"jacobi": 0, "grading": 0, "basis_relations": 0}


def test_fold__usage_errors(capsys):
    code, _, err = run(capsys, 'fold', '--type', 'B2', '--auto', 'flip')
    assert code == 2
    assert err.startswith('error: ')

    code, _, _ = run(capsys, 'fold', '--type', 'X3', '--auto', 'id')
    assert code == 2


def test_module__weyl_module(capsys):
    code, out, _ = run(capsys, 'module', '--type', 'A1', '--hw', '3', '--field', 'Q')
    assert code == 0
    document = json.loads(out)
    assert document["dimension"] == 4
    assert document["character"]["multiplicities"] == [[[3], 1], [[1], 1], [[-1], 1], [[-3], 1]]


def test_module__simple_quotient(capsys):
    code, out, _ = run(capsys, 'module', '--type', 'A2', '--hw', '1,1', '--field', 'F3', '--simple')
    assert code == 0
    document = json.loads(out)
    assert document["dimension"] == 7
    assert document["weyl_dimension"] == 8
    assert document["simple_dimension"] == 7


def test_module__folded_needs_an_automorphism(capsys):
    code, _, err = run(capsys, 'module', '--type', 'A3', '--hw', '1,0', '--field', 'Q', '--folded')
    assert code == 2
    assert '--auto' in err


def test_module__folded(capsys):
    code, out, _ = run(capsys, 'module', '--type', 'A3', '--auto', 'flip', '--hw', '1,0', '--field', 'Q', '--folded')
    assert code == 0
    document = json.loads(out)
    assert document["type"] == 'C2'
    assert document["dimension"] == 4


def test_module__bad_field(capsys):
    code, _, _ = run(capsys, 'module', '--type', 'A1', '--hw', '1', '--field', 'F6')
    assert code == 2


def test_drinfeld__single_factor(capsys):
    code, out, _ = run(capsys, 'drinfeld', '--type', 'A3', '--auto', 'flip', '--field', 'F7', '--pi', '1:(1-2u)')
    assert code == 0
    document = json.loads(out)
    assert document["factors"] == [{"weight": [1, 0, 0], "point": "2"}]
    assert document["decomposition"]["m"] == 2


def test_drinfeld__trivial(capsys):
    code, out, _ = run(capsys, 'drinfeld', '--type', 'A3', '--auto', 'flip', '--field', 'F7', '--pi', '1')
    assert code == 0
    assert json.loads(out)["decomposition"]["blocks"] == []


def test_drinfeld__not_split(capsys):
    code, _, err = run(capsys, 'drinfeld', '--type', 'A3', '--auto', 'flip', '--field', 'F5', '--pi', '1:(1+u+u^2)')
    assert code == 3
    assert 'suggested extension degree: 2' in err


def test_verify__heisenberg(capsys):
    code, out, _ = run(capsys, 'verify', 'heisenberg', '--nmax', '4', '-q')
    assert code == 0
    document = json.loads(out)
    assert document["ok"] is True
    assert document["counts"] == {"pass": 4, "fail": 0, "skipped": 0}
    assert "timing" not in document["cases"][0]


def test_verify__restriction_case(capsys):
    code, out, _ = run(
        capsys, 'verify', 'restriction', '--type', 'A2', '--auto', 'flip', '--field', 'F5', '--pi', 'w1@2', '-q',
    )
    assert code == 0
    assert json.loads(out)["suite"] == 'restriction'


def test_verify__restriction_precondition(capsys):
    code, _, err = run(
        capsys, 'verify', 'restriction', '--type', 'D4', '--auto', 'rot3', '--field', 'F3', '--pi', 'w1@2', '-q',
    )
    assert code == 3
    assert err.startswith('error: ')


def test_verify__timing(capsys):
    code, out, _ = run(capsys, 'verify', 'heisenberg', '--nmax', '2', '--timing', '-q')
    assert code == 0
    assert "elapsed_ms" in json.loads(out)["cases"][0]["timing"]


def test_out__writes_a_stable_document(capsys, tmp_path):
    first = tmp_path / 'first.json'
    second = tmp_path / 'second.json'
    assert main(['--out', str(first), 'verify', 'heisenberg', '--nmax', '3', '-q']) == 0
    assert main(['--out', str(second), 'verify', 'heisenberg', '--nmax', '3', '-q']) == 0
    assert capsys.readouterr().out == ''
    assert first.read_text(encoding='utf-8') == second.read_text(encoding='utf-8')
    assert json.loads(first.read_text(encoding='utf-8'))["suite"] == 'heisenberg'
