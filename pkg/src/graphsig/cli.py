"""Command-line entry point: ``graphsig <verb> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .bands import SgwtSpec, build_band_filters
from .filterbank import check_bipartite, fb_analyze, fb_synthesize, qmf_from_lowpass
from .filters import FilterTaps, apply_taps, denoise, design_response, taubin
from .graph import OperatorKind, is_connected, operator_matrix
from .random_signals import generate_gwss, periodogram
from .sampling import MeasurementSet, mp_recover
from .spectral import basis_of, gdft
from .vertex_frequency import (SpectralExponential, build_window_bank, energy_distribution,
                               hann_vertex_window, lgft_bands, lgft_windowed, local_smoothness,
                               rectangular_vertex_window, rid, sgwt)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNKNOWN_VERB = 64
EXIT_BAD_FILE = 65

VERBS = ("graph", "spectrum", "filter", "denoise", "taubin", "fbank", "cs", "gwss",
         "lgft", "sgwt", "vfd", "smoothness")
_VALUED_GLOBALS = ("--out-dir", "--seed", "--format")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out-dir", default=argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    return p


def _build_parser() -> argparse.ArgumentParser:
    common = _common()
    root = _Parser(prog="graphsig", description="Graph signal processing toolkit.")
    root.add_argument("--out-dir", default=".")
    root.add_argument("--seed", type=int, default=0)
    root.add_argument("--format", choices=("csv", "json"), default="csv")
    verbs = root.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def leaf(parent, name, help_text, graph=True, signal=False, out=True):
        p = parent.add_parser(name, parents=[common], help=help_text)
        if graph:
            p.add_argument("--graph", required=True, help="path or fixture:<name>")
            p.add_argument("--kind", default="laplacian", help="operator matrix kind")
        if signal:
            p.add_argument("--signal", required=True)
        if out:
            p.add_argument("--out")
        return p

    leaf(verbs, "graph", "summarize a graph and write its operator matrix")
    leaf(verbs, "spectrum", "GDFT of a signal", signal=True)

    f = verbs.add_parser("filter", help="filter design and application").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    d = f.add_parser("design", parents=[common])
    d.add_argument("--graph")
    d.add_argument("--kind", default="laplacian")
    d.add_argument("--lambdas")
    d.add_argument("--response", required=True)
    d.add_argument("--order", type=int, required=True)
    d.add_argument("--mode", choices=("ls", "exact"), default="ls")
    d.add_argument("--out")
    a = leaf(f, "apply", "apply vertex-domain taps", signal=True)
    a.add_argument("--taps", required=True)

    p = leaf(verbs, "denoise", "regularized smoothing", signal=True)
    p.add_argument("--alpha", type=float, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--beta", type=float)
    g.add_argument("--quadratic", action="store_true")

    p = leaf(verbs, "taubin", "Taubin smoothing", signal=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--iters", type=int, required=True)

    fb = verbs.add_parser("fbank").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = fb.add_parser("roundtrip", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--signal", required=True)
    p.add_argument("--kind", choices=("sqrt", "cos"), default="sqrt", help="QMF low-pass kind")
    p.add_argument("--out")

    cs = verbs.add_parser("cs").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(cs, "recover", "sparse spectrum recovery from vertex samples")
    p.add_argument("--samples", required=True)
    p.add_argument("--sparsity", type=int, required=True)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--raw-correlation", action="store_true")

    gw = verbs.add_parser("gwss").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = leaf(gw, "generate", "realizations of a stationary signal")
    p.add_argument("--taps", required=True)
    p.add_argument("--count", type=int, required=True)
    p = leaf(gw, "psd", "periodogram of realizations")
    p.add_argument("--realizations", required=True)

    p = leaf(verbs, "lgft", "localized graph Fourier transform", signal=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--windows", help="spectral:tau=T | vertex:hann,D=5 | bands:hann,K=25[,cheb=20]")
    src.add_argument("--bands", help="shorthand for --windows bands:<spec>")
    p.add_argument("--svg")

    p = leaf(verbs, "sgwt", "spectral graph wavelet transform", signal=True)
    p.add_argument("--progression", type=float, default=2.0)
    p.add_argument("--scales", type=int, default=9)
    p.add_argument("--cheb", type=int, help="Chebyshev order instead of exact evaluation")
    p.add_argument("--svg")

    p = leaf(verbs, "vfd", "vertex-frequency energy distribution", signal=True)
    p.add_argument("--dist", choices=("energy", "rid"), default="energy")
    p.add_argument("--svg")

    leaf(verbs, "smoothness", "local smoothness index", signal=True)
    return root


def _fix_vfd_kind(argv: list[str]) -> list[str]:
    # `vfd --kind energy|rid` selects the distribution; --kind elsewhere names the operator
    if _find_verb(argv) == "vfd":
        i = argv.index("vfd")
        out = argv[: i + 1]
        rest = argv[i + 1:]
        j = 0
        while j < len(rest):
            if rest[j] == "--kind" and j + 1 < len(rest) and rest[j + 1] in ("energy", "rid"):
                out += ["--dist", rest[j + 1]]
                j += 2
            else:
                out.append(rest[j])
                j += 1
        return out
    return argv


def _find_verb(argv: list[str]) -> str | None:
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUED_GLOBALS:
            i += 2
            continue
        if tok.startswith("--") and "=" in tok:
            i += 1
            continue
        if tok.startswith("-"):
            i += 1
            continue
        return tok
    return None


def _kv(items: list[str]) -> tuple[list[str], dict[str, str]]:
    flags, params = [], {}
    for it in items:
        if "=" in it:
            k, v = it.split("=", 1)
            params[k.strip()] = v.strip()
        elif it:
            flags.append(it.strip())
    return flags, params


class _Ctx:
    def __init__(self, args):
        self.args = args
        self.out_dir = Path(args.out_dir)
        self.fmt = args.format
        self.outputs: list[str] = []

    def path(self, given: str | None, default: str) -> Path:
        p = Path(given) if given else Path(default + (".json" if self.fmt == "json" else ".csv"))
        return p if p.is_absolute() else self.out_dir / p

    def write_table(self, given, default, m, header=None):
        path = self.path(given, default)
        if self.fmt == "json":
            m = np.asarray(m, dtype=float)
            payload = {"header": None if header is None else [h if isinstance(h, str) else float(h) for h in header],
                       "data": m.tolist()}
            io.atomic_write(path, json.dumps(payload) + "\n")
        elif np.asarray(m).ndim == 1 and header is None:
            io.write_vector(path, m)
        else:
            io.write_matrix(path, m, header)
        self.outputs.append(str(path))
        return path

    def write_svg(self, given, m):
        if given:
            path = Path(given) if Path(given).is_absolute() else self.out_dir / given
            io.atomic_write(path, io.svg_heatmap(m))
            self.outputs.append(str(path))


def _graph_and_basis(args):
    g = io.read_graph(args.graph)
    return g, basis_of(g, OperatorKind(args.kind))


def _signal(args, n: int) -> np.ndarray:
    x = io.read_vector(args.signal)
    if x.size != n:
        raise ValueError(f"signal has {x.size} entries, graph has {n} vertices")
    return x


def _cmd_graph(ctx, args):
    g = io.read_graph(args.graph)
    op = operator_matrix(g, OperatorKind(args.kind))
    ctx.write_table(args.out, "operator", op.values)
    return {"n": g.n, "edges": len(g.edges), "directed": g.directed, "connected": is_connected(g)}


def _cmd_spectrum(ctx, args):
    g, b = _graph_and_basis(args)
    x = _signal(args, g.n)
    X = gdft(x, b)
    table = np.column_stack([np.arange(b.n), b.eigenvalues, X])
    ctx.write_table(args.out, "spectrum", table, ["k", "lambda", "X"])
    return {"n": b.n, "energy": float(np.sum(X ** 2))}


def _cmd_filter(ctx, args):
    if args.action == "design":
        if args.lambdas:
            lam = io.read_vector(args.lambdas)
        elif args.graph:
            lam = basis_of(io.read_graph(args.graph), OperatorKind(args.kind)).eigenvalues
        else:
            raise ValueError("filter design needs --lambdas or --graph")
        g = io.read_vector(args.response)
        taps = design_response(g, lam, args.order, "exact" if args.mode == "exact" else "least_squares")
        ctx.write_table(args.out, "taps", taps.taps)
        fit = taps.response(lam)
        return {"taps": taps.taps.tolist(), "max_error": float(np.max(np.abs(fit - g)))}
    g = io.read_graph(args.graph)
    x = _signal(args, g.n)
    taps = FilterTaps(io.read_vector(args.taps), args.kind)
    y = apply_taps(taps, operator_matrix(g, OperatorKind(args.kind)).values, x)
    ctx.write_table(args.out, "filtered", y)
    return {"order": int(taps.taps.size - 1), "energy_in": float(x @ x), "energy_out": float(y @ y)}


def _cmd_denoise(ctx, args):
    g, b = _graph_and_basis(args)
    x = _signal(args, g.n)
    y = denoise(x, b, args.alpha, args.beta, args.quadratic)
    ctx.write_table(args.out, "denoised", y)
    return {"energy_in": float(x @ x), "energy_out": float(y @ y)}


def _cmd_taubin(ctx, args):
    g = io.read_graph(args.graph)
    x = _signal(args, g.n)
    y = taubin(x, operator_matrix(g, OperatorKind(args.kind)).values, args.alpha, args.beta, args.iters)
    ctx.write_table(args.out, "smoothed", y)
    return {"energy_in": float(x @ x), "energy_out": float(y @ y)}


def _cmd_fbank(ctx, args):
    g = io.read_graph(args.graph)
    part = check_bipartite(g)
    b = basis_of(g, OperatorKind.NORMALIZED_LAPLACIAN)
    x = _signal(args, g.n)
    bank = qmf_from_lowpass(args.kind, b.eigenvalues)
    f_low, f_high = fb_analyze(x, bank, part, b)
    y = fb_synthesize(f_low, f_high)
    ctx.write_table(args.out, "reconstructed", y)
    return {"energy_low": float(f_low @ f_low), "energy_high": float(f_high @ f_high),
            "reconstruction_error": float(np.max(np.abs(y - x))),
            "alias_residual": bank.alias_residual()}


def _cmd_cs(ctx, args):
    g, b = _graph_and_basis(args)
    verts, vals = io.parse_samples_csv(io._read_text(args.samples))
    res = mp_recover(MeasurementSet(verts, vals), b, args.sparsity, args.epsilon, args.raw_correlation)
    ctx.write_table(args.out, "recovered", res.signal)
    return {"support": list(res.support), "residual": res.residual_norms[-1], "stagnated": res.stagnated}


def _cmd_gwss(ctx, args):
    g = io.read_graph(args.graph)
    if args.action == "generate":
        taps = FilterTaps(io.read_vector(args.taps), args.kind)
        r = generate_gwss(taps, operator_matrix(g, OperatorKind(args.kind)).values, args.count, args.seed)
        ctx.write_table(args.out, "realizations", r)
        return {"count": args.count, "n": g.n, "seed": args.seed}
    b = basis_of(g, OperatorKind(args.kind))
    r = io.read_matrix(args.realizations)
    p = periodogram(r, b)
    ctx.write_table(args.out, "psd", np.column_stack([np.arange(b.n), b.eigenvalues, p]), ["k", "lambda", "P"])
    return {"count": int(r.shape[0]), "total_power": float(p.sum())}


def _windows(spec: str, g, b, x, L):
    kind, _, rest = spec.partition(":")
    flags, params = _kv(rest.split(","))
    if kind == "spectral":
        if "tau" not in params:
            raise ValueError("spectral windows need tau=<value>")
        w = build_window_bank(SpectralExponential(float(params["tau"]), float(params.get("C", 1.0))), b,
                              normalize=params.get("norm"))
        m = lgft_windowed(x, w, b)
        return m.values, list(b.eigenvalues)
    if kind == "vertex":
        if "D" not in params:
            raise ValueError("vertex windows need D=<width>")
        width = int(params["D"])
        shape = flags[0] if flags else "hann"
        if shape == "hann":
            win = hann_vertex_window(width)
        elif shape in ("rect", "rectangular"):
            win = rectangular_vertex_window(width)
        else:
            raise ValueError(f"unknown vertex window {shape!r}")
        m = lgft_windowed(x, build_window_bank(win, g=g, normalize=params.get("norm")), b)
        return m.values, list(b.eigenvalues)
    if kind == "bands":
        if "K" not in params:
            raise ValueError("band windows need K=<count>")
        name = {"hann": "raised_cosine", "raised_cosine": "raised_cosine", "meyer": "meyer",
                "binomial": "binomial"}.get(flags[0] if flags else "hann")
        if name is None:
            raise ValueError(f"unknown band family {flags[0]!r}")
        bank = build_band_filters(name, b.eigenvalues, K=int(params["K"]))
        if "cheb" in params:
            m = lgft_bands(x, bank, method="chebyshev", order=int(params["cheb"]), L=L)
        else:
            m = lgft_bands(x, bank, b)
        return m.values, list(range(bank.n_bands))
    raise ValueError(f"unknown window kind {kind!r}")


def _cmd_lgft(ctx, args):
    g, b = _graph_and_basis(args)
    x = _signal(args, g.n)
    spec = args.windows if args.windows else "bands:" + args.bands
    S, header = _windows(spec, g, b, x, operator_matrix(g, OperatorKind(args.kind)).values)
    ctx.write_table(args.out, "lgft", S, header)
    ctx.write_svg(args.svg, S)
    return {"shape": list(S.shape), "energy": float(np.sum(S ** 2))}


def _cmd_sgwt(ctx, args):
    g, b = _graph_and_basis(args)
    x = _signal(args, g.n)
    spec = SgwtSpec(args.progression, args.scales, float(b.eigenvalues[-1]))
    if args.cheb:
        m = sgwt(x, spec, method="chebyshev", order=args.cheb,
                 L=operator_matrix(g, OperatorKind(args.kind)).values)
    else:
        m = sgwt(x, spec, b)
    ctx.write_table(args.out, "sgwt", m.values, list(m.labels))
    ctx.write_svg(args.svg, m.values)
    return {"shape": list(m.values.shape), "energy": float(np.sum(m.values ** 2)), "energy_in": float(x @ x)}


def _cmd_vfd(ctx, args):
    g, b = _graph_and_basis(args)
    x = _signal(args, g.n)
    E = energy_distribution(x, b) if args.dist == "energy" else rid(x, b)
    ctx.write_table(args.out, args.dist, E, list(b.eigenvalues))
    ctx.write_svg(args.svg, E)
    return {"total": float(E.sum()),
            "vertex_marginal_error": float(np.max(np.abs(E.sum(axis=1) - x ** 2)))}


def _cmd_smoothness(ctx, args):
    g = io.read_graph(args.graph)
    x = _signal(args, g.n)
    lam = local_smoothness(x, operator_matrix(g, OperatorKind(args.kind)).values)
    ctx.write_table(args.out, "smoothness", lam)
    return {"defined": int(np.sum(np.isfinite(lam))), "undefined": int(np.sum(~np.isfinite(lam))),
            "global": float(x @ np.asarray(operator_matrix(g, OperatorKind(args.kind)).values @ x) / (x @ x))}


_COMMANDS = {"graph": _cmd_graph, "spectrum": _cmd_spectrum, "filter": _cmd_filter,
             "denoise": _cmd_denoise, "taubin": _cmd_taubin, "fbank": _cmd_fbank, "cs": _cmd_cs,
             "gwss": _cmd_gwss, "lgft": _cmd_lgft, "sgwt": _cmd_sgwt, "vfd": _cmd_vfd,
             "smoothness": _cmd_smoothness}


def _json_safe(v):
    if isinstance(v, float) and not np.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _json_safe(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_safe(x) for x in v]
    return v


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    verb = _find_verb(argv)
    if verb is not None and verb not in VERBS:
        print(f"graphsig: unknown verb {verb!r}; expected one of {', '.join(VERBS)}", file=sys.stderr)
        return EXIT_UNKNOWN_VERB
    try:
        args = _build_parser().parse_args(_fix_vfd_kind(argv))
    except UsageError as e:
        print(f"graphsig: {e}", file=sys.stderr)
        return EXIT_USAGE
    ctx = _Ctx(args)
    try:
        metrics = _COMMANDS[args.verb](ctx, args)
    except io.FileFormatError as e:
        print(f"graphsig: malformed input: {e}", file=sys.stderr)
        return EXIT_BAD_FILE
    except FileNotFoundError as e:
        print(f"graphsig: missing file: {e.filename}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, IndexError, ZeroDivisionError, np.linalg.LinAlgError) as e:
        print(f"graphsig: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps({"ok": True, "metrics": _json_safe(metrics), "outputs": ctx.outputs}))
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
