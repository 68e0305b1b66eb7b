import csv
import inspect
import io
import json
import math

import pytest

from pertsums import closedform, laplace
from pertsums.cli import main
from pertsums.errors import DomainError
from pertsums.registry import OPERATIONS, REGISTRY, IdentityRecord, relative_error, run_sweep
from pertsums.specfun import digamma


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_exit(capsys, *argv):
    # argparse failures raise SystemExit instead of returning
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


# -- registry ---------------------------------------------------------------


def test_every_closed_form_operation_is_registered_once():
    public = {f"closedform.{n}" for n, obj in vars(closedform).items()
              if n in closedform.__all__ and inspect.isfunction(obj)}
    public |= {f"laplace.{n}" for n, obj in vars(laplace).items()
               if n in laplace.__all__ and inspect.isfunction(obj) and n != "laplace_pair"}
    assert public <= set(OPERATIONS)
    assert all(ident in REGISTRY for ident in OPERATIONS.values())


def test_registry_ids_unique_and_keyed():
    assert all(rec.id == key for key, rec in REGISTRY.items())
    assert len({rec.id for rec in REGISTRY.values()}) == len(REGISTRY)


def test_relative_error_edges():
    assert relative_error(0.0, 0.0) == 0.0
    assert relative_error(1.0, math.inf) == math.inf
    assert relative_error(1.0, 1.0 + 1e-12) == pytest.approx(1e-12, rel=1e-3)


@pytest.mark.parametrize("tol", [1e-20, 1e-15, 1e-6])
def test_passed_iff_below_tolerance(tol):
    rep = run_sweep(REGISTRY["eq66"], 10, 4, tolerance=tol)
    assert rep.passed == (rep.max_rel_error <= tol)
    assert rep.tolerance == tol and rep.samples == 10 and rep.seed == 4


def test_sweep_is_reproducible():
    a = run_sweep(REGISTRY["lemma1"], 15, 11)
    b = run_sweep(REGISTRY["lemma1"], 15, 11)
    assert a == b
    assert run_sweep(REGISTRY["lemma1"], 15, 12).worst_point != a.worst_point


def test_evaluator_error_counts_as_failure():
    def fail(p):
        raise DomainError("nope")

    rec = IdentityRecord("bad", "always fails", fail, lambda p: 1.0, "x", lambda r: {"x": r.random()})
    rep = run_sweep(rec, 3, 0)
    assert rep.max_rel_error == math.inf and not rep.passed


@pytest.mark.parametrize("ident", sorted(REGISTRY))
def test_each_identity_passes_small_sweep(ident):
    assert run_sweep(REGISTRY[ident], 4, 2).passed


# -- sum --------------------------------------------------------------------


def test_sum_closed_digamma_value(capsys):
    code, out, _ = run(capsys, "sum", "--alpha", "2", "--b", "2", "--gamma", "3", "--y", "0.5", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    expected = digamma(3) - digamma(2) + math.log(2)
    assert rec["value"] == pytest.approx(expected, rel=1e-14)
    assert rec["method"] == "closed" and rec["series"] == "gauss"


@pytest.mark.parametrize("method", ["oracle", "integral"])
def test_sum_other_methods_agree(capsys, method):
    code, out, _ = run(capsys, "sum", "--alpha", "2", "--b", "2", "--gamma", "3", "--y", "0.5",
                       "--method", method, "--format", "json")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(digamma(3) - digamma(2) + math.log(2), rel=1e-9)


def test_sum_confluent_oracle(capsys):
    code, out, _ = run(capsys, "sum", "--alpha", "1", "--gamma", "2", "--y", "0.5", "--method", "oracle",
                       "--format", "json")
    assert code == 0
    closed = json.loads(run(capsys, "sum", "--alpha", "1", "--gamma", "2", "--y", "0.5", "--format", "json")[1])
    assert json.loads(out)["value"] == pytest.approx(closed["value"], rel=1e-8)


def test_sum_domain_error_exit_2(capsys):
    code, _, err = run_exit(capsys, "sum", "--alpha", "4", "--gamma", "1.5", "--y", "0.5")
    assert code == 2
    assert "alpha/2" in err


def test_sum_convergence_exit_3(capsys):
    code, _, err = run_exit(capsys, "sum", "--alpha", "4", "--gamma", "3", "--y", "1", "--method", "oracle",
                            "--max-terms", "1000")
    assert code == 3 and "convergence" in err


def test_sum_text_format(capsys):
    code, out, _ = run(capsys, "sum", "--alpha", "2", "--b", "2", "--gamma", "3", "--y", "0.5")
    assert code == 0
    assert "value               1.193147181" in out


# -- verify -----------------------------------------------------------------


def test_verify_eq66(capsys):
    code, out, _ = run(capsys, "verify", "eq66", "--samples", "100", "--seed", "7", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["passed"] is True and rec["max_rel_error"] <= 1e-12 and rec["seed"] == 7


def test_verify_header_echoes_seed(capsys):
    _, out, _ = run(capsys, "verify", "eq66", "--samples", "3", "--seed", "9")
    assert out.splitlines()[0] == "# seed 9  generator random.Random (Mersenne Twister)  samples 3"


def test_verify_failure_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "eq66", "--samples", "5", "--tolerance", "1e-30", "--format", "csv")
    assert code == 1
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["passed"] == "false" and rows[0]["worst_point"].startswith("y=")


def test_verify_unknown_is_usage_error(capsys):
    code, _, _ = run_exit(capsys, "verify", "nosuch")
    assert code == 64


def test_missing_subcommand_is_usage_error(capsys):
    assert run_exit(capsys)[0] == 64
    assert run_exit(capsys, "sum", "--alpha", "1")[0] == 64


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "all", "--seed", "1", "--format", "json")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["identity"] for r in recs] == list(REGISTRY)
    assert all(r["passed"] and r["samples"] == 20 for r in recs)


# -- output invariants ------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ("verify", "lemma3", "--samples", "6", "--seed", "5"),
    ("verify", "lemma3", "--samples", "6", "--seed", "5", "--format", "csv"),
    ("oscillator", "correction", "--alpha", "2", "--gamma", "2", "--x-grid", "0.1:1:0.3", "--format", "csv"),
])
def test_byte_identical_reproducibility(capsys, argv):
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_json_round_trip(capsys):
    from pertsums.laplace import f_gamma

    _, out, _ = run(capsys, "laplace", "f", "--gamma", "1.5", "--x", "1", "--format", "json")
    assert json.loads(out)["value"] == f_gamma(1.5, 1.0)
    _, out, _ = run(capsys, "kernel", "f3", "--a", "3.7", "--z", "0.3", "--format", "json")
    assert json.loads(out)["value"] == closedform.f3_kernel(3.7, 0.3).value


# -- oscillator -------------------------------------------------------------


def test_energy_display(capsys):
    code, out, _ = run(capsys, "oscillator", "energy", "--alpha", "1", "--A", "0")
    assert code == 0
    assert out.splitlines()[0] == "E0(λ) = 3 + 1.128379167 λ − 0.07789097267 λ²"


def test_energy_json(capsys):
    _, out, _ = run(capsys, "oscillator", "energy", "--alpha", "1", "--A", "0", "--format", "json")
    rec = json.loads(out)
    assert rec["c1"] == pytest.approx(2 / math.sqrt(math.pi), rel=1e-15)
    assert rec["c2"] == pytest.approx(-0.077890972, abs=1e-9)


def test_energy_needs_exactly_one_of_A_gamma(capsys):
    assert run_exit(capsys, "oscillator", "energy", "--alpha", "1")[0] == 64
    assert run_exit(capsys, "oscillator", "energy", "--alpha", "1", "--A", "0", "--gamma", "1.5")[0] == 64


def test_correction_grid_csv(capsys):
    code, out, _ = run(capsys, "oscillator", "correction", "--alpha", "2", "--gamma", "2",
                       "--x-grid", "0.1:3:0.1", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "psi0", "psi1"]
    assert len(rows) == 31
    assert float(rows[1][0]) == pytest.approx(0.1) and float(rows[-1][0]) == pytest.approx(3.0)


def test_bad_grid_is_usage_error(capsys):
    assert run_exit(capsys, "oscillator", "correction", "--alpha", "2", "--gamma", "2", "--x-grid", "0,1")[0] == 64


def test_matrix_csv(capsys):
    code, out, _ = run(capsys, "oscillator", "matrix", "--alpha", "1", "--gamma", "2.5", "--N", "4", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    m = [[float(v) for v in r] for r in rows[1:]]
    assert len(m) == 4 and all(len(r) == 4 for r in m)
    assert all(m[i][j] == pytest.approx(m[j][i], rel=1e-12) for i in range(4) for j in range(4))


def test_variational_table(capsys):
    code, out, _ = run(capsys, "oscillator", "variational", "--alpha", "1", "--A", "0", "--lambda", "0.01",
                       "--N", "20", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[-1]["N"] == "20"
    assert abs(float(rows[-1]["difference"])) <= 2e-6
    e = [float(r["E0"]) for r in rows]
    assert all(b <= a for a, b in zip(e, e[1:]))


# -- kernel and laplace -----------------------------------------------------


def test_kernel_text(capsys):
    code, out, _ = run(capsys, "kernel", "gauss", "--a", "2", "--z", "0.3")
    assert code == 0 and "0.5204081633" in out


@pytest.mark.parametrize("argv", [
    ("laplace", "derivative", "--gamma", "1.5", "--x", "1"),
    ("laplace", "inverse-log", "--gamma", "1", "--x2", "1"),
    ("laplace", "antiderivative", "--gamma", "2.5", "--x", "1.5"),
])
def test_laplace_tasks_run(capsys, argv):
    assert run(capsys, *argv, "--format", "json")[0] == 0


def test_laplace_domain_error(capsys):
    assert run_exit(capsys, "laplace", "f", "--gamma", "-2", "--x", "1")[0] == 2
