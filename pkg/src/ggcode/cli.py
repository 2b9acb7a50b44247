"""Command line entry point.

    ggcode graphcode example k777 --format json
    ggcode graphcode build --graph complete:3,7 --inner dsum:hamming:3,hamming:3
    ggcode codes builtin hamming --r 3
    ggcode graph spectrum complete:3,3

The ``graphcode`` group name may be omitted (``ggcode example k333``).

Exit status: 0 success, 1 a published claim or asserted certificate check failed,
2 usage error, 3 capacity or numeric failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .certificate import certify
from .codes import (
    EXHAUSTIVE_LIMIT,
    LinearCode,
    direct_sum,
    dump_code,
    even_weight,
    hamming_binary,
    load_code,
    repetition,
)
from .errors import CapacityError, DomainError, NumericError, UsageError
from .graphcode import (
    FIXTURES,
    PUBLISHED_CLAIMS,
    WITNESSES,
    GeneralizedGraphCode,
    build,
    jsonable,
    load_assignment,
)
from .graphs import (
    ORDERS,
    PartiteGraph,
    complete_multipartite,
    lambda2,
    load_graph,
    spectrum,
    validate_balanced,
)

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

GROUPS = ("codes", "graph", "graphcode")
GRAPHCODE_COMMANDS = ("build", "params", "bound", "verify", "example", "certify")
CODE_KEYWORDS = {"hamming": 1, "even": 1, "rep": 1, "dsum": 2}


@dataclass
class RunConfig:
    group: str
    subcommand: str
    name: str | None = None
    graph: str | None = None
    inner: str | None = None
    order: str = "canonical"
    fmt: str = "text"
    engine: str = "auto"
    workers: int = 1
    report_path: str | None = None
    time_limit: float | None = None
    args: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)

    def exit(self, status=0, message=None):
        if status:
            raise UsageError(message or "usage error")
        if message:
            sys.stderr.write(message)
        raise SystemExit(status)


# --------------------------------------------------------------------------
# builtin spec mini-language


def _tokens(text: str) -> list[str]:
    return [t for t in text.replace(":", ",").split(",") if t != ""]


def _code_from_tokens(toks: list[str], pos: int) -> tuple[LinearCode, int]:
    if pos >= len(toks):
        raise UsageError("code spec ended early")
    head = toks[pos]
    if head in CODE_KEYWORDS and head != "dsum":
        try:
            arg = int(toks[pos + 1])
        except (IndexError, ValueError) as exc:
            raise UsageError(f"code spec {head!r} needs an integer argument") from exc
        maker = {"hamming": hamming_binary, "even": even_weight, "rep": repetition}[head]
        return maker(arg), pos + 2
    if head == "dsum":
        a, pos = _code_from_tokens(toks, pos + 1)
        b, pos = _code_from_tokens(toks, pos)
        return direct_sum(a, b), pos
    if Path(head).is_file():
        return load_code(head), pos + 1
    raise UsageError(f"unknown code spec token {head!r}")


def parse_code_specs(text: str) -> list[LinearCode]:
    """``hamming:<r>``, ``even:<n>``, ``rep:<n>``, ``dsum:<spec>,<spec>`` or a code file; comma separated."""
    if Path(text).is_file():
        return [load_code(text)]
    toks = _tokens(text)
    codes, pos = [], 0
    while pos < len(toks):
        code, pos = _code_from_tokens(toks, pos)
        codes.append(code)
    if not codes:
        raise UsageError("empty code spec")
    return codes


def parse_graph_spec(text: str, order: str = "canonical") -> PartiteGraph:
    """``complete:<ell>,<m>`` or a graph file."""
    if text.startswith("complete:"):
        try:
            ell, m = (int(t) for t in text.split(":", 1)[1].split(","))
        except ValueError as exc:
            raise UsageError(f"graph spec {text!r} must look like complete:<ell>,<m>") from exc
        return complete_multipartite(ell, m)
    if Path(text).is_file():
        return load_graph(text, order=order)
    raise UsageError(f"graph spec {text!r} is neither complete:<ell>,<m> nor an existing file")


# --------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    p.add_argument("--engine", choices=("auto", "exhaustive", "bz"), default="auto")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--report", dest="report_path", default=None)
    p.add_argument("--time-limit", type=float, default=None, help="seconds before a BZ run reports a bracket")


def _code_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph")
    p.add_argument("--inner")
    p.add_argument("--order", choices=ORDERS, default="canonical")
    p.add_argument("--example", choices=sorted(FIXTURES))


def _build_parser() -> _Parser:
    top = _Parser(prog="ggcode", description="Generalized graph codes on balanced multipartite graphs")
    groups = top.add_subparsers(dest="group", parser_class=_Parser)

    codes = groups.add_parser("codes", help="inner linear codes")
    csub = codes.add_subparsers(dest="subcommand", parser_class=_Parser)
    p = csub.add_parser("info")
    p.add_argument("file")
    _common(p)
    p = csub.add_parser("builtin")
    p.add_argument("kind", choices=("hamming", "even", "rep"))
    p.add_argument("--r", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--emit", choices=("generator", "parity"))
    _common(p)
    p = csub.add_parser("dsum")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--emit", choices=("generator", "parity"))
    _common(p)

    graph = groups.add_parser("graph", help="multipartite graphs")
    gsub = graph.add_subparsers(dest="subcommand", parser_class=_Parser)
    for name in ("info", "spectrum", "validate"):
        p = gsub.add_parser(name)
        p.add_argument("spec", help="complete:<ell>,<m> or a graph file")
        p.add_argument("--order", choices=ORDERS, default="canonical")
        if name == "spectrum":
            p.add_argument("--numeric", action="store_true", help="force the Jacobi eigensolver")
        _common(p)

    gc = groups.add_parser("graphcode", help="generalized graph codes")
    xsub = gc.add_subparsers(dest="subcommand", parser_class=_Parser)
    for name in ("build", "params", "bound"):
        p = xsub.add_parser(name)
        _code_source(p)
        _common(p)
    p = xsub.add_parser("verify")
    p.add_argument("assignment")
    _code_source(p)
    _common(p)
    p = xsub.add_parser("example")
    p.add_argument("name", choices=sorted(FIXTURES))
    _common(p)
    p = xsub.add_parser("certify")
    _code_source(p)
    p.add_argument("--codeword", required=True, help="assignment file or a witness name")
    _common(p)
    return top


def parse_config(argv: list[str]) -> RunConfig:
    argv = list(argv)
    if not argv:
        raise UsageError("no command given; try 'ggcode graphcode example k333'")
    if argv[0] not in GROUPS and argv[0] in GRAPHCODE_COMMANDS:
        argv = ["graphcode"] + argv
    ns = _build_parser().parse_args(argv)
    if ns.group is None or getattr(ns, "subcommand", None) is None:
        raise UsageError(f"incomplete command: {' '.join(argv)!r}")
    workers = ns.workers
    if workers is None:
        env = os.environ.get("GGCODE_WORKERS", "1")
        try:
            workers = int(env)
        except ValueError as exc:
            raise UsageError(f"GGCODE_WORKERS must be an integer, got {env!r}") from exc
    if workers < 1:
        raise UsageError("--workers must be at least 1")
    known = {"group", "subcommand", "fmt", "engine", "workers", "report_path", "time_limit",
             "graph", "inner", "order", "name"}
    extra = {k: v for k, v in vars(ns).items() if k not in known}
    return RunConfig(
        group=ns.group,
        subcommand=ns.subcommand,
        name=getattr(ns, "name", None),
        graph=getattr(ns, "graph", None),
        inner=getattr(ns, "inner", None),
        order=getattr(ns, "order", "canonical"),
        fmt=ns.fmt,
        engine=ns.engine,
        workers=workers,
        report_path=ns.report_path,
        time_limit=ns.time_limit,
        args=extra,
    )


# --------------------------------------------------------------------------
# running


def _stderr_progress():
    last = [None]

    def cb(lower, upper):
        if (lower, upper) != last[0]:
            last[0] = (lower, upper)
            print(f"minimum distance in [{lower}, {upper}]", file=sys.stderr)

    return cb


def _code_info(code: LinearCode, cfg: RunConfig) -> dict:
    d = code.min_distance(cfg.engine, workers=cfg.workers)
    engine = cfg.engine
    if engine == "auto":
        engine = "exhaustive" if code.field.q ** code.k <= EXHAUSTIVE_LIMIT or not code.field.is_binary else "bz"
    return {"name": code.name, "q": code.field.q, "n": code.n, "k": code.k, "d": d, "engine": engine}


def _graphcode_from(cfg: RunConfig) -> tuple[GeneralizedGraphCode, str | None]:
    example = cfg.args.get("example")
    if example:
        if cfg.graph or cfg.inner:
            raise UsageError("--example excludes --graph/--inner")
        return FIXTURES[example](), example
    if not cfg.graph or not cfg.inner:
        raise UsageError("give --graph and --inner, or --example")
    graph = parse_graph_spec(cfg.graph, cfg.order)
    inner = parse_code_specs(cfg.inner)
    if len(inner) == 1:
        inner = inner * graph.ell
    return build(graph, inner), None


def _run_codes(cfg: RunConfig) -> tuple[int, dict]:
    a = cfg.args
    if cfg.subcommand == "info":
        code = load_code(a["file"])
    elif cfg.subcommand == "builtin":
        kind = a["kind"]
        if kind == "hamming":
            if a["r"] is None:
                raise UsageError("hamming needs --r")
            code = hamming_binary(a["r"])
        else:
            if a["n"] is None:
                raise UsageError(f"{kind} needs --n")
            code = (even_weight if kind == "even" else repetition)(a["n"])
    else:
        first, second = parse_code_specs(a["file_a"]), parse_code_specs(a["file_b"])
        if len(first) != 1 or len(second) != 1:
            raise UsageError("dsum takes exactly two codes")
        code = direct_sum(first[0], second[0])
    out = _code_info(code, cfg)
    emit = a.get("emit")
    if emit:
        out["file"] = dump_code(code, emit)
    return EXIT_OK, out


def _run_graph(cfg: RunConfig) -> tuple[int, dict]:
    G = parse_graph_spec(cfg.args["spec"], cfg.order)
    rep = validate_balanced(G)
    base = {
        "ell": G.ell,
        "part_sizes": [len(p) for p in G.parts],
        "m": rep.m,
        "n": rep.n,
        "vertices": G.num_vertices,
        "edges": G.num_edges,
        "order_convention": G.order_convention(),
    }
    if cfg.subcommand == "info":
        base["balanced"] = rep.ok
        base["regular_degree"] = (G.ell - 1) * rep.n if rep.ok else None
        return EXIT_OK, base
    if cfg.subcommand == "validate":
        base["valid"] = rep.ok
        base["violations"] = rep.lines()
        return EXIT_OK, base
    numeric = cfg.args.get("numeric", False)
    spec = spectrum(G, numeric=numeric)
    base["method"] = "jacobi" if (numeric or not G.is_complete_multipartite()) else "closed form"
    base["eigenvalues"] = [jsonable(v) if isinstance(v, int) else round(float(v), 12) + 0.0 for v in spec]
    lam2 = lambda2(G, numeric=numeric)
    base["lambda2"] = jsonable(lam2) if not isinstance(lam2, float) else round(lam2, 12) + 0.0
    return EXIT_OK, base


def _run_graphcode(cfg: RunConfig) -> tuple[int, dict]:
    progress = _stderr_progress()
    opts = dict(engine=cfg.engine, workers=cfg.workers, progress=progress, time_limit=cfg.time_limit)
    if cfg.subcommand == "example":
        gc = FIXTURES[cfg.name]()
        out = gc.report(claims=PUBLISHED_CLAIMS[cfg.name], **opts)
        out = {"example": cfg.name, **out}
        failed = [c for c in out["paper_claim_checks"] if not c["match"]]
        out["findings"] = [
            f"claimed {c['name']} = {c['claimed']}, computed {c['computed']}" for c in failed
        ]
        return (EXIT_CLAIM if failed else EXIT_OK), out

    gc, example = _graphcode_from(cfg)
    if cfg.subcommand == "build":
        claims = PUBLISHED_CLAIMS.get(example) if example else None
        out = gc.report(claims=claims, **opts)
        failed = [c for c in out["paper_claim_checks"] if not c["match"]]
        return (EXIT_CLAIM if failed else EXIT_OK), out
    if cfg.subcommand == "params":
        K = gc.dimension()
        out = {"N": gc.N, "K": K, "order_convention": gc.graph.order_convention()}
        if K:
            res = gc.distance_search(cfg.engine, workers=cfg.workers, progress=progress, time_limit=cfg.time_limit)
            out["engine"] = res.engine
            if res.exact:
                out["D"] = res.upper
            else:
                out["D_bracket"] = [res.lower, res.upper]
        else:
            out["D"] = None
        return EXIT_OK, out
    if cfg.subcommand == "bound":
        ok, why = gc.bound_applicability()
        out = {
            "ell": gc.ell,
            "m": gc.m,
            "n": gc.n,
            "d": [c.min_distance() for c in gc.inner],
            "lambda2": jsonable(gc.lambda2()),
            "bound_applicable": ok,
            "bound": jsonable(gc.theorem_bound()) if ok else None,
        }
        if not ok:
            out["reason"] = why
        return EXIT_OK, out
    if cfg.subcommand == "verify":
        c = load_assignment(cfg.args["assignment"], gc.N, gc.field)
        mem = gc.verify_membership(c)
        return EXIT_OK, {
            "N": gc.N,
            "member": mem.ok,
            "failing_vertices": [v + 1 for v in mem.failures],
            "weight": int(np.count_nonzero(c)),
            "order_convention": gc.graph.order_convention(),
        }
    # certify
    source = cfg.args["codeword"]
    witnesses = WITNESSES.get(example or "", {})
    if source in witnesses:
        c = witnesses[source](gc)
    elif source == "witness" and witnesses:
        c = next(iter(witnesses.values()))(gc)
    elif Path(source).is_file():
        c = load_assignment(source, gc.N, gc.field)
    else:
        names = ", ".join(witnesses) or "none"
        raise UsageError(f"--codeword {source!r} is neither a file nor a witness name ({names})")
    cert = certify(gc, c)
    out = {"example": example, "order_convention": gc.graph.order_convention(), "certificate": cert.to_json()}
    return (EXIT_OK if cert.ok() else EXIT_CLAIM), out


def _to_text(out: dict) -> str:
    lines = []
    for key, val in out.items():
        if isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{key}:")
            lines += ["  " + json.dumps(v, sort_keys=True) for v in val]
        elif isinstance(val, dict):
            lines.append(f"{key}:")
            lines += [f"  {k}: {json.dumps(v)}" for k, v in val.items()]
        elif isinstance(val, str) and "\n" in val:
            lines.append(f"{key}:")
            lines.append(val.rstrip("\n"))
        else:
            lines.append(f"{key}: {val if isinstance(val, str) else json.dumps(val)}")
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a parsed config; returns (exit status, rendered report)."""
    runner = {"codes": _run_codes, "graph": _run_graph, "graphcode": _run_graphcode}[cfg.group]
    status, out = runner(cfg)
    out["backend"] = kernels.get_backend()
    text = json.dumps(out, indent=2) + "\n" if cfg.fmt == "json" else _to_text(out)
    if cfg.report_path:
        Path(cfg.report_path).write_text(json.dumps(out, indent=2) + "\n")
    return status, text


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        status, text = run(cfg)
    except (UsageError, DomainError) as exc:
        print(f"ggcode: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, NumericError) as exc:
        print(f"ggcode: error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except OSError as exc:
        print(f"ggcode: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
