"""Command-line front end: ``run`` verification suites, ``apply`` and ``dump`` operators.

Exit status: 0 when every must-pass suite passes, 1 when one fails, 2 on a
usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Sequence

from . import matrices as mx
from .arith import parse_rat
from .burnside import burnside_certificate
from .composite import (
    MatrixRep, check_representation, octahedron, truncated_witt_composite,
    tensor_rep, verify_octahedron_proposition, witt_window_rep,
)
from .operators import GradedOp, VermaVec
from .overlay import theorem_1C_window
from .witt import (
    DEFAULT_H_SAMPLE, WeightError, WeightParam, current, qr_symmetry, sl2_relations,
    sl2_triple, verify_theorem_1A, verify_theorem_1B, witt_assignment,
)

SUITES = ("sl2", "thm1a", "thm1b", "octahedron", "overlay", "tensor", "burnside")
MUST_PASS = {"sl2", "thm1a", "thm1b", "octahedron"}
FORMATS = ("json", "csv")
WINDOW_K = 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    h: list[str] = field(default_factory=lambda: list(DEFAULT_H_SAMPLE))
    K: int = 6
    N: int = 6
    suites: list[str] = field(default_factory=lambda: list(SUITES))
    out: str | None = None
    format: str = "json"
    fixture: str | None = None

    def validate(self) -> list[WeightParam]:
        try:
            weights = [WeightParam.parse(x) for x in self.h]
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad h value: {exc}") from exc
        if not weights:
            raise ConfigError("at least one h value is required")
        if self.K < 2:
            raise ConfigError("K must be at least 2")
        if self.N < 4:
            raise ConfigError("N must be at least 4")
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown or not self.suites:
            raise ConfigError(f"unknown suites {unknown}; choose from {','.join(SUITES)}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.format == "csv" and "thm1a" not in self.suites:
            raise ConfigError("csv output is the thm1a defect table; include the thm1a suite")
        return weights

    def echo(self) -> dict:
        return {"h": list(self.h), "K": self.K, "N": self.N,
                "suites": [s for s in SUITES if s in self.suites], "format": self.format}


def read_config_file(path: str) -> dict[str, str]:
    out = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key=value")
        key, value = (x.strip() for x in line.split("=", 1))
        out[key] = value
    return out


def _split(value: str) -> list[str]:
    return [x.strip() for x in value.split(",") if x.strip()]


def build_config(file_values: dict[str, str], overrides: dict[str, str | None]) -> RunConfig:
    merged = dict(file_values)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    cfg = RunConfig()
    known = {"h", "K", "N", "suites", "out", "format", "fixture"}
    extra = set(merged) - known
    if extra:
        raise ConfigError(f"unknown config keys {sorted(extra)}")
    try:
        if "h" in merged:
            cfg.h = _split(merged["h"])
        if "K" in merged:
            cfg.K = int(merged["K"])
        if "N" in merged:
            cfg.N = int(merged["N"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if "suites" in merged:
        cfg.suites = _split(merged["suites"])
    cfg.out = merged.get("out")
    cfg.format = merged.get("format", cfg.format)
    cfg.fixture = merged.get("fixture")
    return cfg


# -- suites ------------------------------------------------------------------------

def _suite(name: str, passed: bool | None, counts: dict, payload) -> dict:
    if name in MUST_PASS:
        status = "pass" if passed else "fail"
    else:
        status = "finding"
    return {"name": name, "status": status, "counts": counts, "payload": payload}


def suite_sl2(weights, cfg):
    payload = []
    ok = True
    for w in weights:
        rel = sl2_relations(w)
        ok &= all(rel.values())
        payload.append({"h": str(w.h), "pairs": [
            {"i": i, "j": j, "holds": v} for (i, j), v in sorted(rel.items())]})
    return _suite("sl2", ok, {"h_values": len(weights), "pairs": 9 * len(weights)}, payload)


def suite_thm1a(weights, cfg, reports):
    ok = True
    nonzero = 0
    for w in weights:
        rep = verify_theorem_1A(w, cfg.K)
        reports.append(rep)
        ok &= rep.passed
        nonzero += len(rep.nonzero_pairs())
    payload = [r.to_dict() for r in reports]
    return _suite("thm1a", ok, {"h_values": len(weights), "nonzero_defects": nonzero}, payload)


def suite_thm1b(weights, cfg):
    reps = [verify_theorem_1B(w, cfg.K) for w in weights]
    ok = all(r.passed for r in reps)
    rules = sorted({r.resolved_rule or "unresolved" for r in reps})
    return _suite("thm1b", ok, {"h_values": len(weights), "resolved_rules": rules},
                  [r.to_dict() for r in reps])


def _load_model(cfg) -> MatrixRep:
    from .composite import octahedron_model
    if cfg.fixture is None:
        return octahedron_model()
    try:
        data = json.loads(Path(cfg.fixture).read_text())
        return MatrixRep(4, {v: mx.from_grid(g) for v, g in data["matrices"].items()})
    except (OSError, ValueError, KeyError) as exc:
        raise ConfigError(f"bad octahedron fixture {cfg.fixture}: {exc}") from exc


def suite_octahedron(weights, cfg):
    c = octahedron()
    T = _load_model(cfg)
    rep = check_representation(c, T)
    prop = verify_octahedron_proposition(T)
    ok = rep.passed and prop.passed
    return _suite("octahedron", ok,
                  {"faces_passed": sum(rep.pieces.values()), "faces": len(rep.pieces)},
                  {"representation": rep.to_dict(), "proposition": prop.to_dict()})


def suite_overlay(weights, cfg):
    payload = []
    for w in weights:
        for spin in (2, 1):
            payload.append(theorem_1C_window(w, cfg.N, spin, WINDOW_K).to_dict())
    passing = sum(c["pass"] for p in payload for c in p["candidates"])
    return _suite("overlay", None, {"searches": len(payload), "passing_candidates": passing}, payload)


def _window(w, cfg):
    return witt_window_rep(w, cfg.N, WINDOW_K)


def suite_burnside(weights, cfg):
    payload = []
    for w in weights:
        T = _window(w, cfg)
        res = burnside_certificate(T.matrices(), grading=T.grading)
        payload.append({"h": str(w.h), "dimension": T.m, "irreducible": res.irreducible,
                        "route": res.route})
    return _suite("burnside", None, {"irreducible": sum(p["irreducible"] for p in payload),
                                     "windows": len(payload)}, payload)


def suite_tensor(weights, cfg):
    c = truncated_witt_composite(WINDOW_K)
    windows = {w.h: _window(w, cfg) for w in weights}
    payload = []
    for a, b in combinations_with_replacement(sorted(windows), 2):
        TT = tensor_rep(windows[a], windows[b])
        res = burnside_certificate(TT.matrices(), grading=TT.grading)
        payload.append({
            "h1": str(a), "h2": str(b), "dimension": TT.m,
            "representation_on_window": check_representation(c, TT).passed,
            "irreducible": res.irreducible, "route": res.route,
        })
    return _suite("tensor", None, {"pairs": len(payload),
                                   "irreducible": sum(p["irreducible"] for p in payload)}, payload)


def run(cfg: RunConfig) -> tuple[dict, int, list]:
    """Run the selected suites in fixed order; returns (report, exit status, 1A reports)."""
    weights = cfg.validate()
    rho = witt_assignment(weights[0])
    suites = []
    defect_reports: list = []
    for name in SUITES:
        if name not in cfg.suites:
            continue
        if name == "thm1a":
            suites.append(suite_thm1a(weights, cfg, defect_reports))
        else:
            suites.append(globals()[f"suite_{name}"](weights, cfg))
    conventions = {
        "witt_index_map": rho.describe(),
        "sign_convention": rho.sign_convention,
        "candidates_tested": [list(t) for t in rho.tested],
    }
    for s in suites:
        if s["name"] == "thm1b":
            conventions["current_rule"] = s["counts"]["resolved_rules"]
    report = {"config": cfg.echo(), "conventions": conventions, "suites": suites}
    failed = any(s["status"] == "fail" for s in suites)
    return report, 1 if failed else 0, defect_reports


def render(report: dict, defect_reports: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if len(defect_reports) == 1:
        return defect_reports[0].to_csv()
    rows = ["h,i,j,status"]
    for rep in defect_reports:
        rows.extend(f"{rep.h},{line}" for line in rep.to_csv().splitlines()[1:])
    return "\n".join(rows) + "\n"


# -- apply / dump -------------------------------------------------------------------

_OP_RE = re.compile(r"^\s*(sl2\.(Lm1|L0|Lp1)|(qr|current|e|f)\(\s*([+-]?\d+)\s*\))\s*$")


def parse_operator(text: str, w: WeightParam) -> GradedOp:
    m = _OP_RE.match(text)
    if not m:
        raise ConfigError(f"unknown operator {text!r}; use sl2.Lm1, sl2.L0, sl2.Lp1, "
                          "qr(k), current(i), e(i) or f(i)")
    if m.group(2):
        return dict(zip(("Lm1", "L0", "Lp1"), sl2_triple(w)))[m.group(2)]
    kind, k = m.group(3), int(m.group(4))
    if kind == "qr":
        return qr_symmetry(w, k)
    if kind in ("current", "f"):
        return current(w, k)
    return witt_assignment(w).rho(w, k)


_TERM_RE = re.compile(r"^(?:(\d+(?:/\d+)?)\s*\*?\s*)?(z(?:\^(\d+))?)?$")


def parse_poly(text: str) -> VermaVec:
    """Polynomial in ``z`` such as ``"3/2*z^3 - z + 1"``."""
    src = text.replace(" ", "")
    if not src:
        raise ConfigError("empty polynomial")
    tokens = re.findall(r"[+-]?[^+-]+", src)
    if "".join(tokens) != src:
        raise ConfigError(f"cannot parse polynomial {text!r}")
    coeffs: dict[int, Fraction] = {}
    for tok in tokens:
        sign, body = (tok[0], tok[1:]) if tok[0] in "+-" else ("+", tok)
        m = _TERM_RE.match(body)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ConfigError(f"cannot parse term {body!r}")
        c = parse_rat(m.group(1)) if m.group(1) else Fraction(1)
        n = (int(m.group(3)) if m.group(3) else 1) if m.group(2) else 0
        coeffs[n] = coeffs.get(n, Fraction(0)) + (-c if sign == "-" else c)
    return VermaVec.from_dict(coeffs)


# -- entry point ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wittcomp", description="Run verification suites, or apply and dump operators on C[z].")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    r = sub.add_parser("run", help="run verification suites")
    r.add_argument("--config", help="flat key=value config file")
    r.add_argument("--h", help="comma-separated weights, e.g. 1/2,1,5")
    r.add_argument("--K", help="index window")
    r.add_argument("--N", help="truncation degree")
    r.add_argument("--suites", help=f"comma-separated subset of {','.join(SUITES)}")
    r.add_argument("--out", help="report path (stdout if omitted)")
    r.add_argument("--format", help="json or csv")
    r.add_argument("--fixture", help="octahedron model fixture to use instead of the packaged one")
    for name, helptext in (("apply", "apply an operator to a polynomial"),
                           ("dump", "print an operator's shift components")):
        a = sub.add_parser(name, help=helptext)
        a.add_argument("--h", default="1", help="weight h (default 1)")
        a.add_argument("operator", help="sl2.Lm1 | sl2.L0 | sl2.Lp1 | qr(k) | current(i) | e(i) | f(i)")
        if name == "apply":
            a.add_argument("poly", help='polynomial in z, e.g. "z^3 + 1/2*z"')
    return p


def _cmd_run(args) -> int:
    file_values = read_config_file(args.config) if args.config else {}
    cfg = build_config(file_values, {
        "h": args.h, "K": args.K, "N": args.N, "suites": args.suites,
        "out": args.out, "format": args.format, "fixture": args.fixture,
    })
    started = time.time()
    report, status, defects = run(cfg)
    text = render(report, defects, cfg.format)
    if cfg.out:
        try:
            Path(cfg.out).write_text(text)
            Path(cfg.out + ".log").write_text(
                f"started {time.strftime('%Y-%m-%dT%H:%M:%S', time.localtime(started))}\n"
                f"elapsed {time.time() - started:.3f}s\nexit {status}\n")
        except OSError as exc:
            raise ConfigError(f"cannot write {cfg.out}: {exc}") from exc
    else:
        sys.stdout.write(text)
    for s in report["suites"]:
        print(f"{s['name']}: {s['status']}", file=sys.stderr)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        w = WeightParam.parse(args.h)
        op = parse_operator(args.operator, w)
        if args.command == "dump":
            print(op.dump())
        else:
            print(op.apply(parse_poly(args.poly)).render())
        return 0
    except (ConfigError, WeightError, ValueError, ZeroDivisionError) as exc:
        print(f"wittcomp: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
