import io
import json
import subprocess
import sys

import pytest

from frobtrace import cli

# every public operation, by module
OPERATIONS = {
    "ffield": ["make_context", "char_eval", "char_order"],
    "charsum": ["gauss_sum", "theta", "binom"],
    "hgf": ["hg_general", "hg_2f1", "hg_theorem1"],
    "ecurves": ["count_curve", "trace_family", "enumerate_classes"],
    "quaddecomp": ["gaussian_decomp", "eisenstein_decomp"],
    "classno": ["class_number", "hurwitz_H", "split_discriminant"],
    "hecke": ["gk_eval", "lambda_eval", "trace_thm2", "trace_recursion", "trace_hijikata",
              "tau_cor1", "tau_cor2", "tau_cor3", "power_sum_identities"],
    "mforms": ["sigma", "delta_series", "trace_oracle"],
    "cli": ["run"],
}


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


def test_tau_cor2():
    code, out, _ = run("tau", "--p", "13", "--method", "cor2")
    assert code == 0
    assert out.startswith('{"p":13,"tau":-577738,')
    assert records(out)[0]["schema"] == "tau"


@pytest.mark.parametrize("method", ["cor1", "cor2", "cor3", "oracle"])
def test_tau_methods(method):
    code, out, _ = run("tau", "--p", "37", "--method", method)
    assert code == 0 and records(out)[0]["tau"] == -182213314


def test_odd_weight_is_usage_error():
    code, out, err = run("hecke", "trace", "--k", "13", "--p", "13")
    assert code == 2 and out == "" and "BadWeight" in err


@pytest.mark.parametrize("method", ["thm2", "recursion", "hijikata", "oracle"])
def test_hecke_methods(method):
    code, out, _ = run("hecke", "trace", "--k", "16", "--p", "13", "--method", method)
    rec = records(out)[0]
    assert code == 0 and rec["trace"] == records(run("hecke", "trace", "--k", "16", "--p", "13", "--method", "oracle")[1])[0]["trace"]


def test_hecke_per_t():
    code, out, _ = run("hecke", "trace", "--k", "12", "--p", "13", "--per-t")
    rec = records(out)[0]
    assert code == 0 and len(rec["per_t"]) == 11 and rec["lambda"] is not None
    assert rec["decomps"] == {"a": 3, "b": 2, "c": -1, "d": 3}


def test_usage_errors():
    assert run("bogus")[0] == 2
    assert run("tau")[0] == 2
    assert run("tau", "--p", "12")[0] == 2
    assert run("hecke", "trace", "--k", "24", "--p", "13", "--method", "oracle")[0] == 2
    assert run("decomp", "--p", "11")[0] == 2
    assert run("classno", "--d", "5")[0] == 2
    assert run("trace", "--p", "13", "--t", "1")[0] == 2
    assert run("--help")[0] == 0


def test_verify_thm1():
    code, out, err = run("--threads", "1", "verify", "--target", "thm1", "--pmax", "100")
    assert code == 0
    recs = records(out)
    main = [r for r in recs if r["theorem"] == "thm1"][0]
    assert main["primes"] == [13, 37, 61, 73, 97] and main["passed"]
    assert "wall_time" not in main and "thm1" in err


def test_verify_failure_exit_status():
    code, out, _ = run("--threads", "1", "verify", "--target", "thm1", "--pmax", "40", "--tolerance", "1e-30")
    assert code == 1
    assert any(not r["passed"] for r in records(out))


def test_flags_after_subcommand():
    code, out, _ = run("verify", "--target", "props", "--pmax", "40", "--threads", "1", "--timings")
    assert code == 0 and all("wall_time" in r for r in records(out))


def test_decomp_and_classno():
    rec = records(run("decomp", "--p", "13")[1])[0]
    assert rec["gaussian"] == {"a": 3, "b": 2} and rec["eisenstein"]["c"] % 3 == 2
    rec = records(run("decomp", "--p", "7")[1])[0]
    assert rec["gaussian"] is None and rec["eisenstein"] is not None
    rec = records(run("classno", "--d", "-3")[1])[0]
    assert (rec["h"], rec["w"], rec["h_star"], rec["H"]) == (1, 3, "1/3", 1)


def test_mforms_coeffs():
    rec = records(run("mforms", "coeffs", "--form", "delta", "--n", "5")[1])[0]
    assert rec["coeffs"] == [0, 1, -24, 252, -1472, 4830]
    rec = records(run("mforms", "coeffs", "--form", "e4", "--n", "2")[1])[0]
    assert rec["coeffs"] == [1, 240, 2160]


def test_hg():
    rec = records(run("hg", "--p", "13", "--t", "5")[1])[0]
    assert rec["residual"] < 1e-9 and set(rec["value"]) == {"re", "im"}
    code, out, _ = run("hg", "--p", "13", "--t", "5", "--upper", "6", "6", "6", "--lower", "0", "0")
    assert code == 0


def test_trace_csv():
    code, out, _ = run("trace", "--p", "13", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "p,t,a_t,re_F,im_F,residual" and len(lines) == 12
    assert all(float(line.split(",")[-1]) < 1e-9 for line in lines[1:])
    code, out, _ = run("trace", "--p", "11", "--family", "legendre", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 10


def test_determinism():
    a = run("--threads", "1", "verify", "--target", "hasse-davenport", "--pmax", "100")[1]
    b = run("--threads", "2", "verify", "--target", "hasse-davenport", "--pmax", "100")[1]
    assert a == b
    assert run("trace", "--p", "37")[1] == run("trace", "--p", "37")[1]


def test_float_format():
    assert cli.jsonable(1 / 3) == 0.333333333333
    assert cli.jsonable(complex(1, -0.0)) == {"re": 1.0, "im": 0.0}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "frobtrace", "tau", "--p", "13"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["tau"] == -577738


def _clear_caches():
    import importlib

    for mod in OPERATIONS:
        m = importlib.import_module(f"frobtrace.{mod}")
        for obj in vars(m).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()


def test_verify_all_covers_every_operation():
    # cached results would hide calls, so start cold
    _clear_caches()
    called = set()

    def prof(frame, event, arg):
        if event == "call":
            mod = frame.f_globals.get("__name__", "")
            if mod.startswith("frobtrace."):
                called.add((mod.split(".")[1], frame.f_code.co_name))

    sys.setprofile(prof)
    try:
        code, out, _ = run("--threads", "1", "verify", "--target", "all", "--pmax", "200")
    finally:
        sys.setprofile(None)
    assert code == 0
    missing = [(m, f) for m, fs in OPERATIONS.items() for f in fs if (m, f) not in called]
    assert not missing
