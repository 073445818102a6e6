"""Command-line front end.

Exit codes: 0 success or pass, 1 verification failure (or a negative answer
such as a non-member), 2 usage or input error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from . import __version__
from .alcoves import (AlcoveError, admissible_set, alcove_validate, enumerate_g_minuscule, enumerate_minuscule,
                      extreme_alcoves, reduced_word)
from .charts import (ChartError, ModelParams, build_component, build_elliptic_triangle, build_gl_iwahori,
                     build_gl_iwahori_matrix, build_gl_pro_p, build_gsp_hs, build_gsp_iwahori, build_gsp_shadrach,
                     combinatorial_vanishing, vanishing_pattern, worst_fiber)
from .groebner import (BudgetExceeded, IdealHandle, RingHom, colon, eliminate, hom_check, hom_kernel, ideal_equal,
                       saturate, set_default_budget)
from .ring_core import ParseError, RingMismatch, ring_from_json
from .veronese import lemma_sort_check, normalization_presentation, sorted_binomials
from . import verify as V

DEFAULTS = {"budget": 10 ** 6, "p": 3, "pk": 4, "D": None, "threads": os.cpu_count() or 1}
# GSp_4 at p >= 5 is a long job; it gets this budget unless one is given explicitly
LONG_RUN_BUDGET = 10 ** 8
ENV = {"budget": "LML_BUDGET", "p": "LML_P", "pk": "LML_K", "D": "LML_D", "threads": "LML_THREADS"}


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    command: List[str]
    params: Dict[str, object]
    version: str = __version__
    budgets: Dict[str, object] = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)
    elapsed_ms: float = 0.0

    def to_json(self) -> dict:
        return {"command": list(self.command), "params": dict(self.params), "version": self.version,
                "budgets": dict(self.budgets), "outputs": list(self.outputs),
                "elapsed_ms": round(self.elapsed_ms, 3)}


def resolve_config(args: argparse.Namespace, environ: Optional[Dict[str, str]] = None) -> Dict[str, object]:
    """Flags override ``LML_*`` environment variables, which override defaults."""
    environ = os.environ if environ is None else environ
    cfg = {}
    for key, default in DEFAULTS.items():
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
        elif ENV[key] in environ:
            raw = environ[ENV[key]]
            try:
                cfg[key] = int(raw)
            except ValueError:
                raise UsageError(f"{ENV[key]} must be an integer, got {raw!r}") from None
        else:
            cfg[key] = default
    return cfg


def atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".lml-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_ideal(path: str) -> IdealHandle:
    try:
        with open(path) as fh:
            data = json.load(fh)
        ring = ring_from_json(data["ring"])
        return IdealHandle(ring, [ring(g) for g in data["gens"]])
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError, ParseError) as exc:
        raise UsageError(f"cannot read ideal from {path}: {exc}") from None


def ideal_json(I: IdealHandle, named=None) -> dict:
    out = I.to_json()
    if named:
        out["named"] = {k: str(v) for k, v in named.items()}
    return out


# ---------------------------------------------------------------------------
# subcommand bodies; each returns (exit code, payload, human summary)


def cmd_alcove(args, cfg):
    if args.action == "enum":
        if args.gsp:
            xs = enumerate_g_minuscule(args.n, args.convention)
        elif args.extreme:
            xs = extreme_alcoves(args.n, _need(args.r, "--r"))
        else:
            xs = enumerate_minuscule(args.n, _need(args.r, "--r"))
        payload = {"count": len(xs), "alcoves": [x.to_json() for x in xs]}
        return 0, payload, f"{len(xs)} alcoves"
    if args.action == "adm":
        r = _need(args.r, "--r")
        els = sorted(admissible_set(args.n, r), key=lambda w: (reduced_word(w)[1], str(w)))
        payload = {"count": len(els), "elements": [{**w.to_json(), "length": reduced_word(w)[1]} for w in els]}
        return 0, payload, f"{len(els)} admissible elements"
    if args.action == "check":
        try:
            with open(args.file) as fh:
                rows = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read alcove: {exc}") from None
        try:
            x = alcove_validate(rows)
        except AlcoveError as exc:
            return 1, {"valid": False, "error": str(exc)}, f"invalid: {exc}"
        payload = {"valid": True, "size": x.size, "minuscule": x.is_minuscule(),
                   "differences": [list(t) for t in x.differences()]}
        if x.is_minuscule():
            payload["vanishing"] = [list(v) for v in combinatorial_vanishing(x)]
            payload["vanishing_linear_algebra"] = [list(v) for v in vanishing_pattern(x, cfg["p"])]
        return 0, payload, f"valid alcove of size {x.size}"
    raise UsageError(f"unknown alcove action {args.action}")


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required here")
    return value


def build_chart(case: str, n: int, r: Optional[int], p: int, eps: str = "+1"):
    if case == "gl":
        return build_gl_iwahori(n, _need(r, "--r"))
    if case == "gl-matrix":
        return build_gl_iwahori_matrix(n, _need(r, "--r"))
    if case == "gl-pro-p":
        return build_gl_pro_p(ModelParams(n, _need(r, "--r"), p))
    if case == "gl-component":
        return build_component(ModelParams(n, _need(r, "--r"), p), int(eps))
    if case == "gsp":
        return build_gsp_iwahori(n)
    if case == "gsp-hs":
        return build_gsp_hs(n, p)
    if case == "gsp-shadrach":
        return build_gsp_shadrach(n, p)
    if case == "worst-fiber":
        return worst_fiber(build_gl_pro_p(ModelParams(n, _need(r, "--r"), p)))
    if case == "elliptic":
        return build_elliptic_triangle(p).hs
    raise UsageError(f"unknown chart case {case}")


def cmd_chart(args, cfg):
    C = build_chart(args.case, args.n, args.r, cfg["p"], args.eps)
    payload = ideal_json(C.ideal(), C.named)
    payload["case"] = C.case
    payload["params"] = C.params
    return 0, payload, f"{C.case}: {C.ring.nvars} variables, {len(C.gens)} generators"


def cmd_ideal(args, cfg):
    I = load_ideal(args.ideal)
    R = I.ring
    try:
        if args.action == "gb":
            G = I.basis()
            return 0, {"ring": R.to_json(), "gens": [str(g) for g in G]}, f"{len(G)} basis elements"
        if args.action == "member":
            f = R(_need(args.poly, "--poly"))
            nf = I.normal_form(f)
            ok = nf.is_zero()
            return (0 if ok else 1), {"member": ok, "normal_form": str(nf)}, "member" if ok else f"not a member (normal form {nf})"
        if args.action == "nf":
            nf = I.normal_form(R(_need(args.poly, "--poly")))
            return 0, {"normal_form": str(nf)}, str(nf)
        if args.action in ("colon", "saturate"):
            f = R(_need(args.poly, "--poly"))
            J = colon(I, f) if args.action == "colon" else saturate(I, f)
            return 0, ideal_json(J), f"{len(J.gens)} generators"
        if args.action == "eliminate":
            names = [v.strip() for v in _need(args.vars, "--vars").split(",") if v.strip()]
            J = eliminate(I, names)
            return 0, ideal_json(J), f"{len(J.gens)} generators"
        if args.action == "equal":
            J = load_ideal(_need(args.other, "--other"))
            ok = ideal_equal(I, J.with_ring(R))
            return (0 if ok else 1), {"equal": ok}, "equal" if ok else "different"
        if args.action == "unit":
            ok = I.is_unit_ideal()
            return (0 if ok else 1), {"unit": ok}, "unit ideal" if ok else "proper ideal"
    except (ParseError, RingMismatch, ValueError) as exc:
        raise UsageError(str(exc)) from None
    raise UsageError(f"unknown ideal action {args.action}")


def cmd_veronese(args, cfg):
    if args.action == "gens":
        I = sorted_binomials(args.n, _need(args.g, "--g"), alternative=args.alternative)
        return 0, ideal_json(I), f"{len(I.gens)} binomials"
    if args.action == "check-sort":
        ok = lemma_sort_check(args.n, _need(args.g, "--g"))
        I = sorted_binomials(args.n, args.g)
        payload = ideal_json(I)
        payload["sort_lemma"] = ok
        return (0 if ok else 1), payload, "sort lemma holds" if ok else "sort lemma fails"
    if args.action == "normalization":
        C = normalization_presentation(args.n, cfg["p"])
        payload = ideal_json(C.ideal())
        payload["params"] = C.params
        return 0, payload, f"{len(C.gens)} generators"
    raise UsageError(f"unknown veronese action {args.action}")


def run_verify(theorem: str, args, cfg) -> V.VerificationReport:
    n, r, p, K, b = args.n, args.r, cfg["p"], cfg["pk"], cfg["budget"]
    if theorem == "kr":
        return V.verify_kr(n)
    if theorem == "extreme-count":
        return V.verify_extreme_count(n)
    if theorem == "vanishing":
        return V.verify_vanishing(n, r, p)
    if theorem == "chart":
        return V.verify_chart(n, _need(r, "--r"), p, budget=b)
    if theorem == "worst-fiber":
        return V.verify_worst_fiber(n, _need(r, "--r"), p, budget=b)
    if theorem == "torsion":
        case = args.case or ("c1" if r is not None else "hs")
        return V.verify_torsion(case, n, r, p, budget=b)
    if theorem == "splitting":
        return V.verify_splitting(n, _need(r, "--r"), p, budget=b)
    if theorem == "nonnormal":
        return V.verify_nonnormality_witness(n, _need(r, "--r"), args.i or 0, p, budget=b)
    if theorem == "drinfeld":
        return V.verify_regular_drinfeld(n, p, budget=b)
    if theorem == "hs":
        if p >= 5 and n >= 2 and args.budget is None and ENV["budget"] not in os.environ:
            b = cfg["budget"] = LONG_RUN_BUDGET
        return V.verify_hs(n, p, budget=b)
    if theorem == "normalization":
        return V.verify_normalization(n, p, cfg["D"], budget=b)
    if theorem == "sort-lemma":
        return V.verify_sort_lemma(n, _need(args.g, "--g"), budget=b)
    if theorem == "lift":
        return V.verify_lift(n, r, p, K, budget=b)
    if theorem == "elliptic":
        return V.verify_elliptic(p, budget=b)
    raise UsageError(f"unknown theorem {theorem}")


def cmd_verify(args, cfg):
    rep = run_verify(args.theorem, args, cfg)
    code = {"pass": 0, "not-applicable": 0, "fail": 1, "budget": 3}[rep.status]
    lines = [f"{rep.theorem} {rep.params}: {rep.status}"]
    lines += [f"  [{'ok' if e.ok else 'FAIL'}] {e.name}" for e in rep.evidence]
    lines += [f"  note: {n}" for n in rep.notes]
    return code, rep.to_json(), "\n".join(lines)


def cmd_hom(args, cfg):
    src = load_ideal(args.source)
    tgt = load_ideal(args.target)
    try:
        mapping = json.loads(args.map)
        phi = RingHom.from_mapping(src.ring, tgt.ring, mapping)
    except (json.JSONDecodeError, ValueError, ParseError, RingMismatch) as exc:
        raise UsageError(f"bad map: {exc}") from None
    ok = hom_check(phi, src, tgt)
    payload = {"well_defined": ok, "images": {v: str(img) for v, img in zip(src.ring.variables, phi.images)}}
    if ok and args.kernel:
        payload["kernel"] = [str(g) for g in hom_kernel(phi, tgt).gens]
    return (0 if ok else 1), payload, "well defined" if ok else "not well defined"


# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", nargs="?", const="-", default=None, metavar="FILE",
                   help="machine-readable output (to FILE, or stdout if omitted)")
    p.add_argument("-o", "--output", default=None, metavar="FILE", help="write the JSON artifact to FILE")
    p.add_argument("--budget", type=int, default=None, help="Groebner reduction-step budget")
    p.add_argument("--threads", type=int, default=None, help="worker threads (results do not depend on it)")
    p.add_argument("--p", type=int, default=None, help="prime")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lml", description="Exact computations on local model charts.")
    parser.add_argument("--version", action="version", version=f"lml {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("alcove", help="alcove enumeration and checks")
    a.add_argument("action", choices=["enum", "adm", "check"])
    a.add_argument("file", nargs="?", help="alcove JSON for 'check'")
    a.add_argument("--n", type=int, default=2)
    a.add_argument("--r", type=int, default=None)
    a.add_argument("--gsp", action="store_true")
    a.add_argument("--convention", default="chain")
    a.add_argument("--extreme", action="store_true")
    _common(a)

    c = sub.add_parser("chart", help="build chart presentations")
    c.add_argument("action", choices=["build"])
    c.add_argument("--case", required=True, choices=["gl", "gl-matrix", "gl-pro-p", "gl-component", "gsp", "gsp-hs",
                                                     "gsp-shadrach", "elliptic", "worst-fiber"])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r", type=int, default=None)
    c.add_argument("--eps", default="+1")
    _common(c)

    i = sub.add_parser("ideal", help="operations on ideals in JSON form")
    i.add_argument("action", choices=["gb", "member", "nf", "colon", "saturate", "eliminate", "equal", "unit"])
    i.add_argument("--ideal", required=True)
    i.add_argument("--poly", default=None)
    i.add_argument("--vars", default=None, help="comma-separated variables to eliminate")
    i.add_argument("--other", default=None, help="second ideal for 'equal'")
    _common(i)

    v = sub.add_parser("veronese", help="sorted binomials and the normalization")
    v.add_argument("action", choices=["gens", "check-sort", "normalization"])
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--g", type=int, default=None)
    v.add_argument("--alternative", action="store_true")
    _common(v)

    w = sub.add_parser("verify", help="run a verification harness")
    w.add_argument("theorem", choices=sorted(V.THEOREMS))
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--r", type=int, default=None)
    w.add_argument("--i", type=int, default=None)
    w.add_argument("--g", type=int, default=None)
    w.add_argument("--pk", type=int, default=None, help="p-adic precision K")
    w.add_argument("--D", type=int, default=None, help="degree bound")
    w.add_argument("--case", choices=["c1", "hs"], default=None)
    _common(w)

    h = sub.add_parser("hom", help="check a ring map between quotient rings")
    h.add_argument("action", choices=["check"])
    h.add_argument("--source", required=True)
    h.add_argument("--target", required=True)
    h.add_argument("--map", required=True, help='JSON object, e.g. {"w": "u*v"}')
    h.add_argument("--kernel", action="store_true")
    _common(h)

    r = sub.add_parser("replay", help="re-run the command recorded in an artifact's manifest")
    r.add_argument("artifact")
    return parser


HANDLERS = {"alcove": cmd_alcove, "chart": cmd_chart, "ideal": cmd_ideal, "veronese": cmd_veronese,
            "verify": cmd_verify, "hom": cmd_hom}

_VOLATILE_KEYS = {"ms", "elapsed_ms", "outputs"}


def strip_timing(obj):
    """Drop wall-clock fields and output paths so artifacts can be compared."""
    if isinstance(obj, dict):
        return {k: strip_timing(v) for k, v in obj.items() if k not in _VOLATILE_KEYS}
    if isinstance(obj, list):
        return [strip_timing(v) for v in obj]
    return obj


def _replay(path: str, out) -> int:
    try:
        with open(path) as fh:
            old = json.load(fh)
        argv = old["manifest"]["command"]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read manifest from {path}: {exc}") from None
    parser = build_parser()
    args = parser.parse_args(_drop_outputs(old["manifest"]["command"]))
    code, payload, _ = _execute(args, old["manifest"]["command"])
    same = strip_timing(payload) == strip_timing(old)
    out.write(("replay matches\n" if same else "replay differs\n"))
    return 0 if same else 1


def _drop_outputs(argv: Sequence[str]) -> List[str]:
    out, skip = [], False
    for k, a in enumerate(argv):
        if skip:
            skip = False
            continue
        if a in ("-o", "--output"):
            skip = True
            continue
        if a == "--json":
            if k + 1 < len(argv) and not argv[k + 1].startswith("-"):
                skip = True
            continue
        out.append(a)
    return out


def _drop_threads(argv: Sequence[str]) -> List[str]:
    """The thread count cannot change a result, so it is left out of the
    recorded command line; artifacts then agree byte for byte."""
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a == "--threads":
            skip = True
        elif not a.startswith("--threads="):
            out.append(a)
    return out


def _execute(args, argv):
    cfg = resolve_config(args)
    set_default_budget(cfg["budget"])
    params = {k: v for k, v in vars(args).items() if k not in ("json", "output", "threads", "command")}
    params.update({k: v for k, v in cfg.items() if k not in ("threads", "budget")})
    manifest = RunManifest(_drop_threads(argv), dict(sorted(params.items())),
                           budgets={"reduction_steps": cfg["budget"]})
    start = time.perf_counter()
    code, payload, summary = HANDLERS[args.command](args, cfg)
    manifest.elapsed_ms = (time.perf_counter() - start) * 1000.0
    manifest.budgets["reduction_steps"] = cfg["budget"]
    for target in (args.output, args.json):
        if target and target != "-":
            manifest.outputs.append(target)
    if isinstance(payload, dict):
        payload = dict(payload)
    else:
        payload = {"items": payload}
    payload["manifest"] = manifest.to_json()
    return code, payload, summary


def dispatch(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "replay":
            return _replay(args.artifact, out)
        code, payload, summary = _execute(args, argv)
        text = _dump(payload)
        for target in (args.output, args.json):
            if target and target != "-":
                atomic_write(target, text)
        if args.json == "-":
            out.write(text)
        else:
            out.write(summary + "\n")
        return code
    except UsageError as exc:
        err.write(f"lml: error: {exc}\n")
        return 2
    except (ChartError, AlcoveError) as exc:
        err.write(f"lml: error: {exc}\n")
        return 2
    except BudgetExceeded as exc:
        err.write(f"lml: budget exceeded: {exc}\n")
        return 3


def main() -> None:
    sys.exit(dispatch())
