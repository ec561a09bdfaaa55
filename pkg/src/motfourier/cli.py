"""Command line interface and script runner.

Every subcommand prints one JSON document (sorted keys) on stdout.  Exit codes:
0 when every verification in the output passed, 1 when some verification did
not pass, 2 when a statement raised an error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Sequence

from . import dsl
from .distrib import (
    Conv, FourierOf, Regular, Tensor, check_coherence, check_dist_fourier, dist_apply, dist_eval,
    dist_text,
)
from .errors import MotFourierError, OutsideModel
from .fourier import (
    PolyballH, Report, check_convolution, check_inversion, check_plancherel, check_poisson,
    check_product_convolution, fourier0,
)
from .geometry import Ball, Polyball
from .integrator import MuFn, convolve, integrate, integrate_with_form
from .newton import check_limit_values, jacobian, limit_set
from .padic import PadicConfig, oracle_check
from .probes import random_vf
from .valfield import VF, as_gamma
from .weil import RELATIONS, W, s, u, verify_relations, weil_apply, word_text
from .wavefn import MotFn

DEFAULT_P = 5
DEFAULT_LEVEL = 3
DIST_TYPES = (Regular, FourierOf, Tensor, Conv)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def exit_code(doc: dict) -> int:
    if doc.get("error"):
        return 2
    statuses = [r["status"] for r in _all_reports(doc) if "status" in r]
    return 0 if all(st == "pass" for st in statuses) else 1


def _all_reports(doc) -> list:
    out = []
    if isinstance(doc, dict):
        if "status" in doc and "identity" in doc:
            out.append(doc)
        elif "status" in doc and "numeric" in doc:
            out.append(doc)
        for v in doc.values():
            out += _all_reports(v)
    elif isinstance(doc, list):
        for v in doc:
            out += _all_reports(v)
    return out


# ---------------------------------------------------------------------------
# value helpers


def _fn(v, what: str = "argument") -> MotFn:
    if isinstance(v, MuFn):
        return v.fn
    if not isinstance(v, MotFn):
        raise OutsideModel(f"{what} must be a function")
    return v


def _dist(v):
    if isinstance(v, DIST_TYPES):
        return v
    if isinstance(v, MotFn):
        return Regular(v)
    raise OutsideModel("expected a distribution")


def _vec(v) -> list:
    if isinstance(v, tuple):
        return [dsl._to_vf(x) for x in v]
    return [dsl._to_vf(v)]


def parse_word(text: str) -> list:
    """``"w,u(t),s(t^-1)"`` as a list of generators."""
    e = dsl.parse_expr(f"({text})")
    items = e.items if isinstance(e, dsl.Tuple) else (e,)
    word = []
    for g in items:
        if isinstance(g, dsl.Name) and g.id == "w":
            word.append(W)
        elif isinstance(g, dsl.Call) and g.func in ("u", "s") and len(g.args) == 1:
            arg = dsl._to_vf(dsl.Evaluator().eval(g.args[0]))
            word.append(u(arg) if g.func == "u" else s(arg))
        else:
            raise OutsideModel(f"unknown generator {dsl.pretty(g)}")
    return word


def _reports(rs) -> list:
    return [r.as_dict() if isinstance(r, Report) else r for r in rs]


# ---------------------------------------------------------------------------
# operations shared by the script runner and the subcommands


def op_integrate(f, order=None, with_form: bool = False) -> dict:
    if isinstance(f, MuFn):
        value, form = integrate_with_form(f, order)
        return {"value": value.text(), "form": form.text()}
    f = _fn(f)
    out = {"value": integrate(f, order).text()}
    if with_form:
        out["form"] = "rv(1)"
    return out


def op_fourier(f) -> dict:
    return {"result": dsl.fn_to_json(fourier0(_fn(f)))}


def op_convolve(f, g) -> dict:
    return {"result": dsl.fn_to_json(convolve(_fn(f), _fn(g)))}


IDENTITIES = ("inversion", "plancherel", "poisson", "convolution", "product-convolution")


def op_verify(identity: str, f, g=None, subgroup: Polyball | Ball | None = None) -> dict:
    f = _fn(f)
    if isinstance(subgroup, Ball):
        subgroup = Polyball([subgroup])
    if subgroup is not None and not isinstance(subgroup, Polyball):
        raise OutsideModel("the subgroup must be a ball or a polyball")
    if identity == "inversion":
        reps = [check_inversion(f) if subgroup is None else check_inversion(f, PolyballH(subgroup))]
    elif identity == "poisson":
        if subgroup is None:
            raise OutsideModel("poisson needs a subgroup")
        reps = check_poisson(f, subgroup)
    elif identity in ("plancherel", "convolution", "product-convolution"):
        g = f if g is None else _fn(g)
        if identity == "plancherel":
            reps = check_plancherel(f, g) if subgroup is None else check_plancherel(f, g, PolyballH(subgroup))
        elif identity == "convolution":
            reps = [check_convolution(f, g) if subgroup is None else check_convolution(f, g, PolyballH(subgroup))]
        else:
            reps = [check_product_convolution(f, g)]
    else:
        raise OutsideModel(f"unknown identity {identity!r}; choose from {', '.join(IDENTITIES)}")
    return {"reports": _reports(reps)}


def op_weil(word: str, f) -> dict:
    mf = f if isinstance(f, MuFn) else MuFn(_fn(f))
    gens = parse_word(word)
    out = weil_apply(gens, mf)
    return {"word": word_text(gens), "result": dsl.fn_to_json(out)}


def op_weil_verify(fns: Sequence, params: Sequence | None = None, relations: Sequence[str] = RELATIONS) -> dict:
    from .corpus import WEIL_PARAMS

    mfs = [f if isinstance(f, MuFn) else MuFn(_fn(f)) for f in fns]
    ps = list(WEIL_PARAMS) if params is None else [dsl._to_vf(p) for p in params]
    return {"reports": _reports(verify_relations(mfs, ps, relations))}


def op_limit_set(text: str) -> dict:
    g = dsl.parse_poly(text, 2)
    res = limit_set(g)
    return {"polynomial": g.text(["x", "y"]), "result": res.as_dict(), "roots_checked": check_limit_values(g, res)}


def op_jacobian(text: str, at) -> dict:
    fmap = dsl.parse_poly(text)
    if not isinstance(fmap, list):
        fmap = [fmap]
    if at is None:
        raise OutsideModel("jacobian needs a point")
    point = _vec(dsl.eval_expr(at) if isinstance(at, str) else at)
    return {"jacobian": jacobian(fmap, point).text()}


def op_oracle(f, p: int, level: int) -> dict:
    f = _fn(f)
    cfg = PadicConfig(p, level)
    return oracle_check(integrate(f), f, cfg)


def op_dist_eval(d, at, gamma) -> dict:
    d = _dist(d)
    return {"dist": dist_text(d), "value": dist_eval(d, _vec(at), as_gamma(dsl._rational(gamma))).text()}


def op_dist_apply(d, f) -> dict:
    d = _dist(d)
    return {"dist": dist_text(d), "value": dist_apply(d, _fn(f)).text()}


def op_dist_verify(d, f=None, samples: int = 10, seed: int = 0) -> dict:
    d = _dist(d)
    rng = random.Random(seed)
    pts = []
    for _ in range(samples):
        g = rng.randint(-3, 2)
        pts.append(([random_vf(rng, -3, 3) for _ in range(d.arity)], g, rng.randint(g, 3)))
    reps = check_coherence(d, pts)
    if f is not None:
        reps.append(check_dist_fourier(d, _fn(f)))
    return {"dist": dist_text(d), "reports": _reports(reps)}


# ---------------------------------------------------------------------------
# scripts


class Runner:
    def __init__(self, p: int = DEFAULT_P, level: int = DEFAULT_LEVEL):
        self.ev = dsl.Evaluator()
        self.options = {"p": p, "level": level}

    def run(self, script: dsl.Script) -> dict:
        results = []
        for st in script.statements:
            line = st.line
            try:
                if isinstance(st, dsl.Assign):
                    self.ev.env[st.name] = self.ev.eval(st.expr)
                    continue
                out = self.command(st)
            except MotFourierError as exc:
                results.append({"line": line, "command": "assign" if isinstance(st, dsl.Assign) else st.name,
                                "error": type(exc).__name__, "message": str(exc)})
                return {"results": results, "error": {"line": line, "type": type(exc).__name__,
                                                      "message": str(exc)}}
            if out is not None:
                results.append({"line": line, "command": st.name, **out})
        return {"results": results}

    def command(self, st: dsl.Command):
        args = [self._arg(a) for a in st.args]
        opts = {k: self.ev.eval(v) for k, v in st.options}
        name = st.name
        if name == "option":
            for k, v in opts.items():
                if k not in self.options:
                    raise OutsideModel(f"unknown option {k!r}")
                self.options[k] = dsl._integer(v, k)
            return None
        if name == "print":
            return {"value": [_show(a) for a in args]}
        if name == "integrate":
            order = None
            if "order" in opts:
                order = [dsl._integer(x) - 1 for x in (opts["order"] if isinstance(opts["order"], tuple) else (opts["order"],))]
            return op_integrate(args[0], order)
        if name == "fourier":
            return op_fourier(args[0])
        if name == "convolve":
            return op_convolve(args[0], args[1])
        if name == "verify":
            ident = st.args[0].id if isinstance(st.args[0], dsl.Name) else args[0]
            h = opts.get("subgroup")
            return op_verify(ident, *args[1:3], subgroup=h)
        if name == "weil":
            return op_weil(args[0], args[1])
        if name == "weil-verify":
            params = opts.get("params")
            if params is not None and not isinstance(params, tuple):
                params = (params,)
            return op_weil_verify(args, params)
        if name == "limit-set":
            return op_limit_set(args[0])
        if name == "jacobian":
            return op_jacobian(args[0], opts.get("at", args[1] if len(args) > 1 else None))
        if name == "oracle":
            p = dsl._integer(opts.get("p", VF.const(self.options["p"])), "p")
            level = dsl._integer(opts.get("level", VF.const(self.options["level"])), "level")
            return op_oracle(args[0], p, level)
        if name == "dist-eval":
            return op_dist_eval(args[0], args[1], args[2])
        if name == "dist-apply":
            return op_dist_apply(args[0], args[1])
        if name == "dist-verify":
            return op_dist_verify(args[0], args[1] if len(args) > 1 else None)
        raise OutsideModel(f"unknown command {name!r}")

    def _arg(self, e):
        # bare identity names in `verify` are words, not variables
        if isinstance(e, dsl.Name) and e.id in IDENTITIES and e.id not in self.ev.env:
            return e.id
        return self.ev.eval(e)


def _show(v) -> str:
    if isinstance(v, DIST_TYPES):
        return dist_text(v)
    if hasattr(v, "text"):
        return v.text()
    return str(v)


def run_script(source: str, p: int = DEFAULT_P, level: int = DEFAULT_LEVEL) -> dict:
    try:
        script = dsl.parse(source)
    except MotFourierError as exc:
        return {"results": [], "error": {"line": getattr(exc, "line", None), "type": type(exc).__name__,
                                         "message": str(exc)}}
    return Runner(p, level).run(script)


# ---------------------------------------------------------------------------
# argparse front end


def _load_fn(arg: str):
    """A function from a JSON file, or an inline expression when no such file exists."""
    path = Path(arg)
    if path.is_file():
        return dsl.fn_from_json(json.loads(path.read_text()))
    return dsl.eval_expr(arg)


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="motfourier", description="Exact Fourier analysis on wave-packet functions.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("integrate", help="integrate a function (JSON file or expression)")
    sp.add_argument("input")
    sp.add_argument("--order", help="comma separated 1-based variable order")
    sp.add_argument("--with-form", action="store_true")

    sp = sub.add_parser("fourier", help="Fourier transform")
    sp.add_argument("--input", required=True)

    sp = sub.add_parser("convolve", help="convolution of two functions")
    sp.add_argument("--input", required=True)
    sp.add_argument("--input2", required=True)

    sp = sub.add_parser("verify", help="verify a Fourier identity")
    sp.add_argument("identity", choices=IDENTITIES)
    sp.add_argument("--input", required=True)
    sp.add_argument("--input2")
    sp.add_argument("--subgroup", help="polyball expression, e.g. 'cball(0,0) × cball(0,0)'")

    sp = sub.add_parser("weil", help="apply a word in the generators u, s, w")
    sp.add_argument("--word", required=True)
    sp.add_argument("--input", required=True)

    sp = sub.add_parser("weil-verify", help="check the SL2 relations")
    sp.add_argument("--corpus", help="directory of function JSON files (default: built-in corpus)")
    sp.add_argument("--params", help="comma separated parameters, e.g. 't, t^-1, i*t'")

    sp = sub.add_parser("limit-set", help="limit set of the roots of g(x, y) = 0 as x -> 0")
    sp.add_argument("polynomial")

    sp = sub.add_parser("jacobian", help="Jacobian determinant of a polynomial map")
    sp.add_argument("map")
    sp.add_argument("--at", required=True)

    sp = sub.add_parser("oracle", help="compare the symbolic integral with a p-adic sum")
    sp.add_argument("--p", type=int, default=DEFAULT_P)
    sp.add_argument("--level", type=int, default=DEFAULT_LEVEL)
    sp.add_argument("--input", required=True)

    sp = sub.add_parser("dist-eval", help="value of a distribution on a ball")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--at", required=True)
    sp.add_argument("--gamma", required=True)

    sp = sub.add_parser("dist-apply", help="apply a distribution to a Schwartz function")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--input", required=True)

    sp = sub.add_parser("dist-verify", help="coherence and Fourier checks for a distribution")
    sp.add_argument("--dist", required=True)
    sp.add_argument("--input")
    sp.add_argument("--samples", type=int, default=10)

    sp = sub.add_parser("run", help="run a script")
    sp.add_argument("script")
    sp.add_argument("--json", dest="json_out")
    sp.add_argument("--p", type=int, default=DEFAULT_P)
    sp.add_argument("--level", type=int, default=DEFAULT_LEVEL)
    return ap


def _dispatch(a) -> dict:
    if a.cmd == "integrate":
        order = [int(x) - 1 for x in a.order.split(",")] if a.order else None
        return op_integrate(_load_fn(a.input), order, a.with_form)
    if a.cmd == "fourier":
        return op_fourier(_load_fn(a.input))
    if a.cmd == "convolve":
        return op_convolve(_load_fn(a.input), _load_fn(a.input2))
    if a.cmd == "verify":
        g = _load_fn(a.input2) if a.input2 else None
        h = dsl.eval_expr(a.subgroup) if a.subgroup else None
        if h is not None and not isinstance(h, Polyball):
            h = Polyball([h])
        return op_verify(a.identity, _load_fn(a.input), g, h)
    if a.cmd == "weil":
        return op_weil(a.word, _load_fn(a.input))
    if a.cmd == "weil-verify":
        if a.corpus:
            fns = [_load_fn(str(p)) for p in sorted(Path(a.corpus).glob("*.json"))]
        else:
            from .corpus import weil_corpus

            fns = [mf for _, mf in weil_corpus()]
        params = None
        if a.params:
            v = dsl.eval_expr(f"({a.params})")
            params = list(v) if isinstance(v, tuple) else [v]
        return op_weil_verify(fns, params)
    if a.cmd == "limit-set":
        return op_limit_set(a.polynomial)
    if a.cmd == "jacobian":
        return op_jacobian(a.map, a.at)
    if a.cmd == "oracle":
        return op_oracle(_load_fn(a.input), a.p, a.level)
    if a.cmd == "dist-eval":
        return op_dist_eval(dsl.eval_expr(a.dist), dsl.eval_expr(a.at), dsl.eval_expr(a.gamma))
    if a.cmd == "dist-apply":
        return op_dist_apply(dsl.eval_expr(a.dist), _load_fn(a.input))
    if a.cmd == "dist-verify":
        f = _load_fn(a.input) if a.input else None
        return op_dist_verify(dsl.eval_expr(a.dist), f, a.samples)
    raise AssertionError(a.cmd)


def main(argv: Sequence[str] | None = None) -> int:
    a = _parser().parse_args(argv)
    if a.cmd == "run":
        try:
            source = Path(a.script).read_text()
        except OSError as exc:
            print(dumps({"error": {"type": "OSError", "message": str(exc)}}))
            return 2
        doc = run_script(source, a.p, a.level)
        text = dumps(doc)
        if a.json_out:
            Path(a.json_out).write_text(text + "\n")
        print(text)
        return exit_code(doc)
    try:
        doc = _dispatch(a)
    except (MotFourierError, OSError, ValueError) as exc:
        doc = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    print(dumps(doc))
    return exit_code(doc)


if __name__ == "__main__":
    sys.exit(main())
