"""Command-line front end.

Subcommands:

    arralg analyze FILE        invariants, reductions and Rees data of one arrangement
    arralg conjectures [FILE ...] | --random N M COUNT SEED
    arralg forms FILE          checks for a system of forms of higher degree
    arralg gb POLY ...         reduced (or degree-truncated) Gröbner basis

JSON goes to stdout; ``--pretty`` prints a human-readable rendering instead.
Exit codes: 0 success, 1 input error (with line/column for parse errors),
2 expectation mismatch under ``--expect-paper``, 3 stage timeout.
Defaults for most flags can be set through ``ARRALG_<FLAG>`` variables, for
example ARRALG_TIMEOUT_GB=30 or ARRALG_FIELD=F2.
"""

from __future__ import annotations

import argparse
import json
import os
import signal
import sys
import time
import warnings
from contextlib import contextmanager
from typing import Dict, List, Optional

from . import __version__
from .arrangement import (
    Arrangement,
    ArrangementError,
    CharacteristicWarning,
    delta_membership_check,
    graded_piece_equality,
    random_generic,
)
from .fiberred import (
    analytic_spread,
    arrangement_reduction_number,
    colon_infinity_reduction_test,
    fiber_criterion,
    g_infinity_check,
    is_linear_type,
    rees_is_ci,
    rees_presentation,
    replay_certificate,
)
from .forms import FormSystem, FormSystemError, form_system_report
from .groebner.hilbert import codim
from .groebner.ideal import Ideal, m_power, saturate
from .groebner.order import DEGREVLEX, LEX
from .homalg.invariants import _resolution, depth_and_pd, indeg_syz, satiety
from .polycore.field import FieldSpec
from .polycore.parse import PolynomialSyntaxError
from .polycore.polynomial import PolynomialRing, default_names

SCHEMA = {"analysis": "arralg.analysis/1", "conjectures": "arralg.conjectures/1",
          "forms": "arralg.forms/1", "gb": "arralg.gb/1"}
STAGES = {"gb": 60.0, "resolution": 120.0, "rees": 300.0}
BUDGET_N, BUDGET_M = 4, 7

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_TIMEOUT = 0, 1, 2, 3


class InputError(Exception):
    pass


class StageTimeout(Exception):
    def __init__(self, stage: str, seconds: float):
        super().__init__(f"stage {stage!r} exceeded {seconds:g} s")
        self.stage = stage


def _env(name: str, default=None):
    return os.environ.get("ARRALG_" + name.upper(), default)


def parse_field(text) -> FieldSpec:
    try:
        return FieldSpec.from_json(text)
    except (ValueError, TypeError) as exc:
        raise InputError(f"cannot read field {text!r}: {exc}") from exc


# ------------------------------------------------------------------ stage timing


class Stages:
    """Per-stage time limits (SIGALRM based) and accumulated timings."""

    def __init__(self, limits: Dict[str, float]):
        self.limits = limits
        self.timings: Dict[str, float] = {}

    @contextmanager
    def run(self, name: str):
        limit = self.limits.get(name, 0) or 0
        use_alarm = limit > 0 and hasattr(signal, "SIGALRM")
        if use_alarm:
            def handler(signum, frame):
                raise StageTimeout(name, limit)
            try:
                old = signal.signal(signal.SIGALRM, handler)
            except ValueError:      # not on the main thread
                use_alarm = False
        if use_alarm:
            signal.setitimer(signal.ITIMER_REAL, limit)
        t0 = time.perf_counter()
        try:
            yield
        finally:
            if use_alarm:
                signal.setitimer(signal.ITIMER_REAL, 0)
                signal.signal(signal.SIGALRM, old)
            self.timings[name] = round(self.timings.get(name, 0.0) + time.perf_counter() - t0, 3)


# ------------------------------------------------------------------ input files


def _read_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc


def _locate(text: str, needle: str, offset: int):
    """Line and column (1-based) of offset ``offset`` inside the first quoted occurrence of needle."""
    at = text.find(json.dumps(needle))
    if at < 0:
        return None
    pos = at + 1 + offset
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _syntax_error(path: str, text: str, exc: PolynomialSyntaxError, obj) -> InputError:
    pos = getattr(exc, "position", None) or 0
    bad = None
    forms = obj.get("forms", []) if isinstance(obj, dict) else []
    for t in forms:
        if isinstance(t, str) and repr(t) in str(exc):
            bad = t
            break
    where = _locate(text, bad, pos) if bad is not None else None
    if where:
        return InputError(f"{path}:{where[0]}:{where[1]}: {exc}")
    return InputError(f"{path}: {exc}")


def load_arrangement_file(path: str, field: Optional[FieldSpec]) -> Arrangement:
    obj, text = _read_json(path)
    try:
        return Arrangement.from_json(obj, field)
    except PolynomialSyntaxError as exc:
        raise _syntax_error(path, text, exc, obj) from exc
    except (ArrangementError, KeyError, ValueError, TypeError) as exc:
        raise InputError(f"{path}: invalid arrangement: {exc}") from exc


def load_forms_file(path: str, field: Optional[FieldSpec]) -> FormSystem:
    obj, text = _read_json(path)
    try:
        return FormSystem.from_json(obj, field)
    except PolynomialSyntaxError as exc:
        raise _syntax_error(path, text, exc, obj) from exc
    except (FormSystemError, KeyError, ValueError, TypeError) as exc:
        raise InputError(f"{path}: invalid form system: {exc}") from exc


# ------------------------------------------------------------------ analysis


KNOWN_CHAR2 = {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)}
KNOWN_FREE = {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)}


def _cols(A: Arrangement):
    return {tuple(int(x) for x in c) for c in A.cols}


def is_char2_example(A: Arrangement) -> bool:
    return A.field.p == 2 and A.n == 3 and _cols(A) == KNOWN_CHAR2


def is_free_example(A: Arrangement) -> bool:
    return A.field.p == 0 and A.n == 3 and _cols(A) == KNOWN_FREE


def analyze_arrangement(A: Arrangement, stages: Optional[Stages] = None, k_max: Optional[int] = None,
                        rees: Optional[bool] = None, seed: int = 0) -> dict:
    """The full analysis report of one arrangement (without timings)."""
    stages = stages or Stages({})
    n, m = A.n, A.m
    R = A.ring
    rep: Dict[str, object] = {"schema": SCHEMA["analysis"], "version": __version__, "seed": seed}
    rep["input"] = A.to_json()
    rep["forms"] = A.form_texts()
    rep.update({"n": n, "m": m, "rank": A.rank})
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", CharacteristicWarning)
        J = A.jacobian_ideal()
    rep["characteristic_warnings"] = sorted({str(w.message) for w in caught})
    rep["genericity_level"] = A.genericity_level()
    rep["generic"] = A.is_generic()
    rep["coloops"] = A.coloops()
    rep["components"] = A.components()
    I = A.fold_product_ideal()
    f = A.defining_polynomial()

    with stages.run("gb"):
        Jsat, _ = saturate(J, R.irrelevant_ideal())
        rep["codim_Jf"] = codim(J)
        rep["f_in_Jf"] = J.contains(f)
        rep["Jf_saturated"] = Jsat == J
        rep["saturation_equals_I"] = Jsat == I
        rep["graded_piece_equality"] = graded_piece_equality(A) if m > n else None
        rep["I_m_minus_n_equals_m_power"] = (A.fold_product_ideal(m - n) == m_power(R, m - n)) if m > n else None
        rep["delta_in_Jf"] = delta_membership_check(A) if m > n else None
        rep["colon_infinity_unit"] = colon_infinity_reduction_test(J, I)
        rep["fiber_criterion"] = fiber_criterion(A)
        rep["analytic_spread"] = analytic_spread(A)
        cert = arrangement_reduction_number(A, k_max)
        rep["reduction"] = cert.to_json()
        rep["reduction"]["replayed"] = replay_certificate(cert) if cert.success else None
        rep["reduction"]["double_checked"] = cert.double_checked

    with stages.run("resolution"):
        res = _resolution(J)
        depth, pd = depth_and_pd(J)
        rep["r_indeg"] = indeg_syz(J)
        rep["regularity"] = res.betti.regularity()
        rep["satiety"] = satiety(J, Jsat)
        rep["depth"] = depth
        rep["projective_dimension"] = pd
        rep["betti"] = res.betti.to_json()
        gdeg = min(res.modules[0].degrees)
        syz = sorted(j - gdeg for (k, j) in res.betti if k == 1)
        rep["syzygy_degrees"] = syz
        rep["perfect"] = pd == rep["codim_Jf"]
        rep["free"] = rep["codim_Jf"] == 2 and pd == 2

    if rees is None:
        rees = n <= 3
    with stages.run("rees"):
        if rees:
            P = rees_presentation(J)
            rep["linear_type"] = is_linear_type(J, P)
            rep["rees_ci"] = rees_is_ci(A, P)
        else:
            rep["linear_type"] = None
            rep["rees_ci"] = None
        rep["g_infinity"] = g_infinity_check(J)
        rep["g_infinity"]["heights"] = {str(k): v for k, v in sorted(rep["g_infinity"]["heights"].items())}
    return rep


def _expect(out: list, name: str, expected, observed):
    out.append({"check": name, "expected": expected, "observed": observed, "ok": expected == observed})


def arrangement_expectations(A: Arrangement, rep: dict) -> List[dict]:
    """Known expectations that apply to this instance."""
    n, m = A.n, A.m
    out: List[dict] = []
    char_ok = not A.char_divides_m()
    if A.field.p == 0 and rep.get("reduction") is not None:
        _expect(out, "fiber criterion agrees with the reduction certificate",
                rep["fiber_criterion"], rep["reduction"]["r"] is not None)
    if A.is_generic() and char_ok and n >= 3 and m > n:
        d = 2 * m - n - 1
        _expect(out, "r_indeg = m-n+1", m - n + 1, rep["r_indeg"])
        _expect(out, "regularity = 2m-n-1", d, rep["regularity"])
        _expect(out, "satiety = 2m-n-1", d, rep["satiety"])
        _expect(out, "saturation of J_f equals I", True, rep["saturation_equals_I"])
        _expect(out, "depth R/J_f = 0", 0, rep["depth"])
        _expect(out, "pd R/J_f = n", n, rep["projective_dimension"])
        shape = {f"0,{m - 1}": n}
        observed_shape = {k: v for k, v in rep["betti"].items() if k.startswith("0,")}
        _expect(out, "beta_0 = n in degree m-1", shape, observed_shape)
        bad = [k for k in rep["betti"] if not k.startswith("0,")
               and int(k.split(",")[1]) != d + int(k.split(",")[0])]
        _expect(out, "step k >= 1 purely in degree 2m-n-1+k", [], bad)
        _expect(out, "[I]_{2m-n-1} = [J_f]_{2m-n-1}", True, rep["graded_piece_equality"])
        _expect(out, "I_{m-n} = m^{m-n}", True, rep["I_m_minus_n_equals_m_power"])
        _expect(out, "Delta in J_f", True, rep["delta_in_Jf"])
        _expect(out, "fiber criterion holds", True, rep["fiber_criterion"])
        r = rep["reduction"]["r"]
        _expect(out, "reduction number <= n-1", True, r is not None and r <= n - 1)
        _expect(out, "not free", False, rep["free"])
        if n == 3 and rep["linear_type"] is not None:
            _expect(out, "linear type", True, rep["linear_type"])
    if A.field.p == 0 and n == 2 and A.rank == 2 and m >= 3:
        _expect(out, "rank-2 reduction number one", 1, rep["reduction"]["r"])
    if A.field.p == 0 and rep["coloops"] and A.genericity_level() >= n - 1:
        _expect(out, "coloop: reduction holds", True, rep["reduction"]["r"] is not None)
    if is_free_example(A):
        _expect(out, "free", True, rep["free"])
        _expect(out, "Rees algebra complete intersection", True, rep["rees_ci"])
        _expect(out, "r_indeg = 1", 1, rep["r_indeg"])
    if is_char2_example(A):
        _expect(out, "f not in J_f", False, rep["f_in_Jf"])
        _expect(out, "J_f perfect", True, rep["perfect"])
        _expect(out, "resolution 0 -> R(-4)+R(-5) -> R(-3)^3", {"0,3": 3, "1,4": 1, "1,5": 1}, rep["betti"])
        _expect(out, "J_f saturated", True, rep["Jf_saturated"])
        _expect(out, "saturation differs from I", False, rep["saturation_equals_I"])
        _expect(out, "syzygy degrees (min 1, max 2)", [1, 2], rep["syzygy_degrees"])
        _expect(out, "J_f : I^inf is proper", False, rep["colon_infinity_unit"])
    return out


# ------------------------------------------------------------------ conjectures


def _check_budget(A: Arrangement):
    if A.n > BUDGET_N or A.m > BUDGET_M:
        raise InputError(f"instance with n={A.n}, m={A.m} is outside the desk-scale budget "
                         f"(n <= {BUDGET_N}, m <= {BUDGET_M}); run 'arralg analyze' on it with larger "
                         "--timeout-* values instead")


def conjecture_verdicts(A: Arrangement, stages: Stages, k_max: Optional[int] = None,
                        linear_type_all: bool = False) -> dict:
    n = A.n
    rec: Dict[str, object] = {"forms": A.form_texts(), "n": n, "m": A.m, "field": A.field.to_json(),
                              "genericity_level": A.genericity_level(), "char_divides_m": A.char_divides_m()}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CharacteristicWarning)
        with stages.run("gb"):
            rec["fiber_criterion"] = fiber_criterion(A)
            cert = arrangement_reduction_number(A, k_max)
        rec["reduction_number"] = cert.r
        rec["reduction_ok"] = cert.r is not None and cert.r <= n - 1
        rec["fiber_agrees"] = rec["fiber_criterion"] == cert.success
        J = A.jacobian_ideal()
        with stages.run("rees"):
            rec["linear_type"] = is_linear_type(J) if (n == 3 or linear_type_all) else None
            rec["g_infinity"] = g_infinity_check(J)["holds"]
    if is_char2_example(A):
        rec["expectation"] = "negative"
    elif not A.char_divides_m() and A.genericity_level() >= n - 1:
        rec["expectation"] = "positive"
    else:
        rec["expectation"] = "none"
    ok = True
    if rec["expectation"] == "positive":
        ok = rec["reduction_ok"] and rec["fiber_agrees"] and rec["linear_type"] is not False
    elif rec["expectation"] == "negative":
        ok = not rec["reduction_ok"] and rec["fiber_agrees"]
    rec["matches_expectation"] = ok
    return rec


def conjectures_report(instances: List[Arrangement], stages: Stages, k_max=None, linear_type_all=False,
                       seed: int = 0) -> dict:
    rows = [conjecture_verdicts(A, stages, k_max, linear_type_all) for A in instances]
    summary = {
        "instances": len(rows),
        "reduction_ok": sum(1 for r in rows if r["reduction_ok"]),
        "fiber_agrees": sum(1 for r in rows if r["fiber_agrees"]),
        "linear_type": sum(1 for r in rows if r["linear_type"]),
        "linear_type_tested": sum(1 for r in rows if r["linear_type"] is not None),
        "g_infinity": sum(1 for r in rows if r["g_infinity"]),
        "expected_negative": sum(1 for r in rows if r["expectation"] == "negative"),
        "matches_expectation": sum(1 for r in rows if r["matches_expectation"]),
    }
    return {"schema": SCHEMA["conjectures"], "version": __version__, "seed": seed,
            "instances": rows, "summary": summary}


# ------------------------------------------------------------------ forms


def forms_expectations(FS: FormSystem, rep: dict) -> List[dict]:
    out: List[dict] = []
    tf = rep.get("two_forms")
    if tf is not None:
        if not tf["i"]["unmet"]:
            _expect(out, "(i) g^2 in J_F^sat", True, tf["i"]["g2_in_JF_sat"])
        if not tf["ii"]["unmet"]:
            _expect(out, "(ii) indeg Syz(J_F) >= indeg Syz(J_g)", True, tf["ii"]["holds"])
        if not tf["iii"]["unmet"]:
            _expect(out, "(iii) JJ is m-primary", True, tf["iii"]["jj_m_primary"])
            _expect(out, "(iii) g JJ inside J_F", True, tf["iii"]["g_jj_in_JF"])
            _expect(out, "(iii) depth R/J_F = 0", 0, tf["iii"]["depth"])
        _expect(out, "Leibniz decomposition", True, tf["leibniz"])
        _expect(out, "determinantal trade identity", True, tf["trade_identity"])
    if rep.get("pairwise_coprime"):
        _expect(out, "codim J_F = 2", 2, rep["codim_JF"])
        if all(rep["indeg_bound"]["char_ok"].values()):
            _expect(out, "indeg lower bound", True, rep["indeg_bound"]["holds"])
    _expect(out, "J_F equigenerated in degree sum(d_i) - 1", [sum(FS.degrees) - 1], rep["JF_degrees"])
    for u in rep["unbalanced"]:
        if u["applicable"] and u["f_smooth"]:
            _expect(out, f"unbalanced j={u['j']}: depth 0", 0, u["depth"])
            _expect(out, f"unbalanced j={u['j']}: G^2 in J_F^sat", True, u["G2_in_JF_sat"])
            _expect(out, f"unbalanced j={u['j']}: G^2 not in J_F", False, u["G2_in_JF"])
    return out


# ------------------------------------------------------------------ rendering


def _flat(v) -> bool:
    if isinstance(v, list):
        return all(_flat(x) and not isinstance(x, dict) for x in v)
    return not isinstance(v, dict)


def _render_pretty(rep, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(rep, dict):
        for k, v in rep.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_render_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(rep, list):
        for v in rep:
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(_render_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v)}")
    return "\n".join(lines)


def emit(rep: dict, pretty: bool):
    if pretty:
        sys.stdout.write(_render_pretty(rep) + "\n")
    else:
        sys.stdout.write(json.dumps(rep, indent=2, sort_keys=True) + "\n")


# ------------------------------------------------------------------ argument parsing


def _float_env(name: str, default: float) -> float:
    v = _env(name)
    return float(v) if v not in (None, "") else default


def _common(p: argparse.ArgumentParser):
    p.add_argument("--field", default=_env("field"), help="Q, F2, GF(7), ... (overrides the input file)")
    p.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="JSON output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="human-readable output")
    p.set_defaults(pretty=_env("pretty", "0") not in ("0", "", "false"))
    p.add_argument("--expect-paper", action="store_true", default=_env("expect_paper", "0") not in ("0", "", "false"),
                   help="check the known expectations; exit 2 on mismatch")
    kmax = _env("kmax")
    p.add_argument("--kmax", type=int, default=int(kmax) if kmax else None, help="largest reduction exponent tried")
    for stage, dflt in STAGES.items():
        p.add_argument(f"--timeout-{stage}", type=float, default=_float_env(f"timeout_{stage}", dflt),
                       help=f"seconds for the {stage} stage (0 = no limit; default {dflt:g})")
    md = _env("max_degree")
    p.add_argument("--max-degree", type=int, default=int(md) if md else None,
                   help="degree cap for Gröbner computations and reduction certificates")
    p.add_argument("--timings", action="store_true", help="include stage timings (breaks byte-identical output)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arralg", description="Jacobian and fold-product ideals of arrangements.")
    ap.add_argument("--version", action="version", version=f"arralg {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="full report for one arrangement file")
    a.add_argument("path")
    rg = a.add_mutually_exclusive_group()
    rg.add_argument("--rees", dest="rees", action="store_true", default=None, help="always run Rees eliminations")
    rg.add_argument("--no-rees", dest="rees", action="store_false", help="skip Rees eliminations")
    _common(a)
    c = sub.add_parser("conjectures", help="reduction and linear-type verdicts for a batch of instances")
    c.add_argument("paths", nargs="*")
    c.add_argument("--random", nargs=4, type=int, metavar=("N", "M", "COUNT", "SEED"))
    c.add_argument("--linear-type-all", action="store_true", help="test linear type for n != 3 as well")
    _common(c)
    f = sub.add_parser("forms", help="checks for a system of forms")
    f.add_argument("path")
    _common(f)
    g = sub.add_parser("gb", help="Gröbner basis of polynomials given as arguments")
    g.add_argument("polys", nargs="+")
    g.add_argument("--vars", default="x,y,z", help="comma-separated variable names")
    g.add_argument("--order", choices=["degrevlex", "lex"], default="degrevlex")
    _common(g)
    return ap


def _kmax(args, A: Arrangement) -> Optional[int]:
    k = args.kmax if args.kmax is not None else A.n - 1
    if args.max_degree is not None:
        k = min(k, max(0, args.max_degree // max(1, A.m - 1) - 1))
    return k


def _finish(rep: dict, expectations: Optional[List[dict]], args, stages: Stages) -> int:
    if expectations is not None:
        rep["expectations"] = expectations
    if args.timings:
        rep["timings"] = stages.timings
    emit(rep, args.pretty)
    if expectations is not None and not all(e["ok"] for e in expectations):
        bad = [e["check"] for e in expectations if not e["ok"]]
        sys.stderr.write("expectation mismatch: " + "; ".join(bad) + "\n")
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_analyze(args) -> int:
    field = parse_field(args.field) if args.field else None
    A = load_arrangement_file(args.path, field)
    stages = Stages({s: getattr(args, f"timeout_{s}") for s in STAGES})
    rep = analyze_arrangement(A, stages, _kmax(args, A), args.rees, args.seed)
    return _finish(rep, arrangement_expectations(A, rep) if args.expect_paper else None, args, stages)


def cmd_conjectures(args) -> int:
    field = parse_field(args.field) if args.field else None
    instances: List[Arrangement] = []
    seed = args.seed
    if args.random:
        n, m, count, seed = args.random
        if n > BUDGET_N or m > BUDGET_M:
            raise InputError(f"--random {n} {m} is outside the desk-scale budget (n <= {BUDGET_N}, m <= {BUDGET_M})")
        if n < 2 or m < n + 1 or count < 0:
            raise InputError("--random needs 2 <= n < m and COUNT >= 0")
        R = PolynomialRing(field or FieldSpec(0), n, default_names(n))
        instances += [random_generic(R, m, seed * 1000003 + i) for i in range(count)]
    for path in args.paths:
        instances.append(load_arrangement_file(path, field))
    if not instances:
        raise InputError("give arrangement files or --random N M COUNT SEED")
    for A in instances:
        _check_budget(A)
    stages = Stages({s: getattr(args, f"timeout_{s}") for s in STAGES})
    rep = conjectures_report(instances, stages, args.kmax, args.linear_type_all, seed)
    exp = None
    if args.expect_paper:
        exp = [{"check": f"instance {i}: {r['expectation']}", "expected": True,
                "observed": r["matches_expectation"], "ok": r["matches_expectation"]}
               for i, r in enumerate(rep["instances"]) if r["expectation"] != "none"]
    return _finish(rep, exp, args, stages)


def cmd_forms(args) -> int:
    field = parse_field(args.field) if args.field else None
    FS = load_forms_file(args.path, field)
    stages = Stages({s: getattr(args, f"timeout_{s}") for s in STAGES})
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        with stages.run("resolution"):
            rep = form_system_report(FS)
    out = {"schema": SCHEMA["forms"], "version": __version__}
    out.update(rep)
    out["warnings"] = sorted({str(w.message) for w in caught})
    return _finish(out, forms_expectations(FS, rep) if args.expect_paper else None, args, stages)


def cmd_gb(args) -> int:
    field = parse_field(args.field) if args.field else FieldSpec(0)
    names = [s.strip() for s in args.vars.split(",") if s.strip()]
    try:
        R = PolynomialRing(field, len(names), names)
    except ValueError as exc:
        raise InputError(f"--vars: {exc}") from exc
    polys = []
    for k, text in enumerate(args.polys):
        try:
            polys.append(R.parse(text))
        except PolynomialSyntaxError as exc:
            col = (getattr(exc, "position", None) or 0) + 1
            raise InputError(f"argument {k + 1}, line 1, column {col}: {exc}") from exc
    I = Ideal(R, polys)
    stages = Stages({s: getattr(args, f"timeout_{s}") for s in STAGES})
    with stages.run("gb"):
        if args.max_degree is not None:
            if args.order != "degrevlex" or not I.is_homogeneous():
                raise InputError("--max-degree needs homogeneous input and the degrevlex order")
            basis = I.truncated_basis(args.max_degree)
            truncated = True
        else:
            basis = I.groebner(DEGREVLEX if args.order == "degrevlex" else LEX)
            truncated = False
    rep = {"schema": SCHEMA["gb"], "version": __version__, "field": field.to_json(), "vars": names,
           "order": args.order, "truncated": truncated, "max_degree": args.max_degree,
           "basis": [g.format() for g in basis]}
    return _finish(rep, None, args, stages)


COMMANDS = {"analyze": cmd_analyze, "conjectures": cmd_conjectures, "forms": cmd_forms, "gb": cmd_gb}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        sys.stderr.write(f"arralg: error: {exc}\n")
        return EXIT_INPUT
    except StageTimeout as exc:
        sys.stderr.write(f"arralg: timeout: {exc}\n")
        return EXIT_TIMEOUT


if __name__ == "__main__":
    sys.exit(main())
