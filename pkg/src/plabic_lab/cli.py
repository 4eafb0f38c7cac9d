"""Command-line front end.

Exit status: 0 success, 1 domain error (invalid graph, pole, truncated
search with --strict), 2 I/O or parse error, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence, TextIO

from . import __version__
from .boundary_measurement import (
    EdgeWeights,
    OrientationError,
    default_jobs,
    face_coordinates,
    face_labels,
    pairwise_weakly_separated,
    plucker_vector,
    unit_weights,
    weakly_separated,
    weights_from_face_coordinates,
)
from .cluster_engine import PoleError, seed_from_graph
from .conjugate_numerics import ChartError, Grid, convergence_order, phase_crossing_check, verify_exact_lagrangian
from .exchange_explorer import (
    DEFAULT_MAX_NODES,
    TruncatedError,
    count_fillings,
    exchange_graph_to_dot,
    exchange_graph_to_json,
    move_orbit,
    status,
)
from .generators import big_cell_graph, double_word_graph, grid_graph, triangle_graph, wiring_graph
from .plabic_core import GraphError, PlabicGraph, dual_quiver, quiver_to_dot, validate_graph
from .square_move import DomainError, FaceCoordinates, POSITIVE, general_square_move, transport_coords
from .strand_diagrams import is_reduced, stokes_front, strands_to_dot, strands_to_json, zig_zag_strands

EXIT_OK, EXIT_DOMAIN, EXIT_IO, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _read_graph(path: str) -> PlabicGraph:
    with open(path, encoding="utf-8") as fh:
        return PlabicGraph.from_json(json.load(fh))


def _read_weights(path: str) -> EdgeWeights:
    with open(path, encoding="utf-8") as fh:
        return EdgeWeights.from_json(json.load(fh))


def _random_weights(g: PlabicGraph, seed: int) -> EdgeWeights:
    rng = random.Random(seed)
    return EdgeWeights({e: Fraction(rng.randint(1, 9), rng.randint(1, 9)) for e in sorted(g.edges)})


def _weights(args: argparse.Namespace, g: PlabicGraph) -> EdgeWeights:
    if args.weights and args.random_weights:
        raise UsageError("--weights and --random-weights are exclusive")
    if args.random_weights:
        if args.seed is None:
            raise UsageError("--random-weights needs --seed")
        return _random_weights(g, args.seed)
    if args.weights:
        return _read_weights(args.weights)
    return unit_weights(g)


def _emit(text: str, out: TextIO) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def _dump(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, indent=1)


# -- subcommands ----------------------------------------------------------------


def cmd_generate(args: argparse.Namespace, out: TextIO) -> int:
    kind = args.kind
    if kind == "grid":
        g = grid_graph(args.k, args.n)
    elif kind == "big-cell":
        g = big_cell_graph(args.k, args.n)
    elif kind == "wiring":
        g = wiring_graph(args.n, args.word or [])
    elif kind == "triangle":
        g = triangle_graph(args.n)
    else:
        letters = []
        for tok in (args.double_word or "").split(","):
            if not tok:
                continue
            a, _, side = tok.partition(":")
            letters.append((int(a), side or "0"))
        g = double_word_graph(args.n, letters).graph
    _emit(g.dumps(), out)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, out: TextIO) -> int:
    rep = validate_graph(_read_graph(args.graph))
    _emit("ok" if rep.ok else "\n".join(rep.violations), out)
    return EXIT_OK if rep.ok else EXIT_DOMAIN


def cmd_strands(args: argparse.Namespace, out: TextIO) -> int:
    g = _read_graph(args.graph)
    strands, perm = zig_zag_strands(g)
    if args.format == "dot":
        _emit(strands_to_dot(g, strands), out)
    else:
        data = strands_to_json(g, strands)
        data["trip_permutation"] = list(perm.as_tuple())
        _emit(_dump(data), out)
    return EXIT_OK


def cmd_reduced(args: argparse.Namespace, out: TextIO) -> int:
    rep = is_reduced(_read_graph(args.graph))
    _emit("reduced" if rep.ok else "\n".join(rep.violations), out)
    return EXIT_OK if rep.ok else EXIT_DOMAIN


def cmd_quiver(args: argparse.Namespace, out: TextIO) -> int:
    q = dual_quiver(_read_graph(args.graph), include_boundary=args.boundary)
    if args.format == "dot":
        _emit(quiver_to_dot(q), out)
    else:
        _emit(_dump({"vertices": list(q.vertices), "arrow_count": [list(r) for r in q.arrow_count]}), out)
    return EXIT_OK


def cmd_seed(args: argparse.Namespace, out: TextIO) -> int:
    s, faces = seed_from_graph(_read_graph(args.graph), frozenset(args.marked or []))
    data = s.to_json()
    data["faces"] = faces
    _emit(_dump(data), out)
    return EXIT_OK


def cmd_mutate(args: argparse.Namespace, out: TextIO) -> int:
    g = _read_graph(args.graph)
    w = _weights(args, g)
    transcript = []
    for face in args.faces:
        fc = face_coordinates(g, w, include_boundary=True, strict=False)
        q = dual_quiver(g, include_boundary=True)
        moved = transport_coords(FaceCoordinates(fc.values, POSITIVE), face, quiver=q)
        h, new_face = general_square_move(g, face)
        transcript.append(
            {
                "face": face,
                "new_face": new_face,
                "before": {str(f): str(x) for f, x in sorted(fc.values.items())},
                "after": {str(f): str(x) for f, x in sorted(moved.values.items())},
            }
        )
        labels_old, labels_new = face_labels(g), face_labels(h)
        by_label = {lab: f for f, lab in labels_new.items()}
        vals = {(new_face if f == face else by_label[labels_old[f]]): x for f, x in moved.values.items()}
        w = weights_from_face_coordinates(h, FaceCoordinates(vals))
        g = h
    _emit(_dump({"steps": transcript, "graph": g.to_json(), "weights": w.to_json()}), out)
    return EXIT_OK


def cmd_measure(args: argparse.Namespace, out: TextIO) -> int:
    g = _read_graph(args.graph)
    w = _weights(args, g)
    pv = plucker_vector(g, w, jobs=args.jobs)
    _emit(pv.to_csv() if args.format == "csv" else _dump(pv.to_json()), out)
    return EXIT_OK


def cmd_labels(args: argparse.Namespace, out: TextIO) -> int:
    labels = face_labels(_read_graph(args.graph))
    _emit(_dump({str(f): list(lab) for f, lab in sorted(labels.items())}), out)
    return EXIT_OK


def cmd_ws_check(args: argparse.Namespace, out: TextIO) -> int:
    if args.graph:
        g = _read_graph(args.graph)
        ok = pairwise_weakly_separated(face_labels(g).values(), g.n)
    else:
        if args.n is None or args.a is None or args.b is None:
            raise UsageError("ws-check needs a graph or --n, --a and --b")
        ok = weakly_separated(args.a, args.b, args.n)
    _emit("weakly separated" if ok else "not weakly separated", out)
    return EXIT_OK if ok else EXIT_DOMAIN


def cmd_orbit(args: argparse.Namespace, out: TextIO) -> int:
    g = _read_graph(args.graph)
    prog = (lambda c: status(f"{c} nodes")) if args.progress else None
    eg = move_orbit(g, args.max_nodes, prog)
    labels = None
    if args.labels:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                labs = list(ex.map(face_labels, eg.nodes))
        else:
            labs = [face_labels(h) for h in eg.nodes]
        labels = [sorted(list(x) for x in d.values()) for d in labs]
    _emit(exchange_graph_to_dot(eg, labels) if args.format == "dot" else exchange_graph_to_json(eg, labels), out)
    if eg.truncated:
        status(f"orbit truncated after {len(eg)} nodes")
    return EXIT_OK


def cmd_count_fillings(args: argparse.Namespace, out: TextIO) -> int:
    _emit(str(count_fillings(args.k, args.n, args.max_nodes, strict=args.strict)), out)
    return EXIT_OK


def cmd_stokes(args: argparse.Namespace, out: TextIO) -> int:
    sf = stokes_front(args.n, Fraction(args.epsilon), args.samples)
    _emit(f"crossing_count {sf.crossing_count}", out)
    return EXIT_OK


def cmd_verify_lagrangian(args: argparse.Namespace, out: TextIO) -> int:
    grid = Grid(args.s_min, args.s_max, args.t_min, args.t_max, args.ns, args.nt)
    rep = verify_exact_lagrangian(grid, args.h, keep_rows=bool(args.csv))
    order = convergence_order()
    samples = [(a + 0.5) / 10_000 for a in range(10_000)]
    ph = phase_crossing_check(samples)
    lines = [
        f"gradient_s {rep.gradient_s:.3e}",
        f"gradient_t {rep.gradient_t:.3e}",
        f"symplectic {rep.symplectic:.3e}",
        f"proof_identity {rep.proof_identity:.3e}",
        f"convergence_order {order:.3f}",
        f"phase_value_at_half {ph.value_at_half!r}",
        f"phase_negative {ph.all_negative}",
        f"phase_branches {ph.branch_ok and ph.monotone}",
    ]
    _emit("\n".join(lines), out)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(rep.to_csv())
    ok = rep.ok() and 1.8 < order < 2.2 and ph.ok
    return EXIT_OK if ok else EXIT_DOMAIN


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="plabic-lab", description="Plabic graphs, strands, positroids and cluster coordinates.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def graph_cmd(name: str, fn, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph", help="graph JSON file")
        sp.set_defaults(func=fn)
        return sp

    def weight_flags(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--weights", help="edge weights JSON keyed by edge id")
        sp.add_argument("--random-weights", action="store_true", help="draw weights (needs --seed)")
        sp.add_argument("--seed", type=int)

    gen = sub.add_parser("generate", help="emit a generated graph as JSON")
    gen.add_argument("kind", choices=["grid", "wiring", "double-word", "triangle", "big-cell"])
    gen.add_argument("--k", type=int, default=2)
    gen.add_argument("--n", type=int, default=5)
    gen.add_argument("--word", type=_ints, help="wiring word, e.g. 2,1,2")
    gen.add_argument("--double-word", help="letters with sides, e.g. 1:0,2:inf")
    gen.set_defaults(func=cmd_generate)

    graph_cmd("validate", cmd_validate, "check structural invariants")
    sp = graph_cmd("strands", cmd_strands, "trace strands and the trip permutation")
    sp.add_argument("--format", choices=["json", "dot"], default="json")
    graph_cmd("reduced", cmd_reduced, "check reducedness")
    sp = graph_cmd("quiver", cmd_quiver, "dual quiver")
    sp.add_argument("--boundary", action="store_true", help="include boundary faces")
    sp.add_argument("--format", choices=["json", "dot"], default="json")
    sp = graph_cmd("seed", cmd_seed, "seed on the first homology")
    sp.add_argument("--marked", type=_ints, help="face ids without a seed vector")
    sp = graph_cmd("mutate", cmd_mutate, "square moves with coordinate transport")
    sp.add_argument("--face", dest="faces", type=int, action="append", required=True)
    weight_flags(sp)
    sp = graph_cmd("measure", cmd_measure, "Plücker vector by flow sums")
    weight_flags(sp)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--jobs", type=int, default=default_jobs())
    graph_cmd("labels", cmd_labels, "face labels")

    ws = sub.add_parser("ws-check", help="weak separation of two subsets or of a graph's face labels")
    ws.add_argument("graph", nargs="?")
    ws.add_argument("--n", type=int)
    ws.add_argument("--a", type=_ints)
    ws.add_argument("--b", type=_ints)
    ws.set_defaults(func=cmd_ws_check)

    sp = graph_cmd("orbit", cmd_orbit, "square-move orbit")
    sp.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    sp.add_argument("--format", choices=["json", "dot"], default="json")
    sp.add_argument("--labels", action="store_true", help="attach face labels to nodes")
    sp.add_argument("--progress", action="store_true")
    sp.add_argument("--jobs", type=int, default=default_jobs())

    cf = sub.add_parser("count-fillings", help="orbit size of the top-cell graph")
    cf.add_argument("--k", type=int, required=True)
    cf.add_argument("--n", type=int, required=True)
    cf.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    cf.add_argument("--strict", action="store_true", help="fail instead of reporting a lower bound")
    cf.set_defaults(func=cmd_count_fillings)

    st = sub.add_parser("stokes", help="crossings of the Stokes front")
    st.add_argument("--n", type=int, required=True)
    st.add_argument("--epsilon", default="1/2")
    st.add_argument("--samples", type=int)
    st.set_defaults(func=cmd_stokes)

    vl = sub.add_parser("verify-lagrangian", help="finite-difference checks of the local model")
    vl.add_argument("--s-min", type=float, default=-2.0)
    vl.add_argument("--s-max", type=float, default=2.0)
    vl.add_argument("--t-min", type=float, default=0.05)
    vl.add_argument("--t-max", type=float, default=0.95)
    vl.add_argument("--ns", type=int, default=200)
    vl.add_argument("--nt", type=int, default=200)
    vl.add_argument("--h", type=float, default=1e-5)
    vl.add_argument("--csv", help="write per-point residuals here")
    vl.set_defaults(func=cmd_verify_lagrangian)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        return args.func(args, out)
    except UsageError as exc:
        print(f"plabic-lab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"plabic-lab: cannot read input: {exc}", file=sys.stderr)
        return EXIT_IO
    except (GraphError, OrientationError, DomainError, PoleError, TruncatedError, ChartError, ValueError, IndexError) as exc:
        print(f"plabic-lab: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())
