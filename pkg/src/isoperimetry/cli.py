"""Command-line front end.

Exit codes: 0 success, 1 domain error raised by the library, 2 usage error
(bad arguments or malformed input).  Data goes to stdout or ``--out``,
diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import cayley, continuous, exactgeom, extremal, search
from .errors import IsoperimetryError
from .exactgeom import RationalPolytope, format_rational, parse_rational
from .lattice import PointSet, box


class InputError(Exception):
    """Malformed command-line input."""


def _read_source(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    stripped = arg.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        return arg
    try:
        with open(arg) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {arg}: {exc.strerror}") from None


def load_pointset(arg: str) -> PointSet:
    text = _read_source(arg)
    try:
        if text.lstrip().startswith("{"):
            ps = PointSet.from_json(text)
        else:
            ps = PointSet.from_text(text)
    except (ValueError, TypeError, OverflowError, IsoperimetryError) as exc:
        raise InputError(f"malformed point set in {arg}: {exc}") from None
    if not len(ps):
        raise InputError(f"empty point set in {arg}")
    return ps


def load_family(arg: str) -> list:
    text = _read_source(arg)
    try:
        data = json.loads(text)
        return [PointSet.from_dict(item) for item in data]
    except (ValueError, TypeError, KeyError, IsoperimetryError) as exc:
        raise InputError(f"malformed family in {arg}: {exc}") from None


def load_points(arg: str) -> list:
    """Rational points from ``{"d", "points"}`` (ints or 'num/den' strings) or plain text."""
    text = _read_source(arg)
    try:
        if text.lstrip().startswith("{"):
            data = json.loads(text)
            d = int(data["d"])
            pts = [[parse_rational(x) for x in p] for p in data["points"]]
        else:
            pts = [[Fraction(tok) for tok in line.replace(",", " ").split()]
                   for line in text.splitlines() if line.split("#", 1)[0].strip()]
            d = len(pts[0]) if pts else 0
    except (ValueError, TypeError, KeyError, ZeroDivisionError, IndexError) as exc:
        raise InputError(f"malformed points in {arg}: {exc}") from None
    if not pts:
        raise InputError(f"no points in {arg}")
    if any(len(p) != d for p in pts):
        raise InputError("points do not all have dimension d")
    return pts


def load_polytope(arg: str) -> RationalPolytope:
    text = _read_source(arg)
    try:
        return RationalPolytope.from_json(text)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"malformed polytope in {arg}: {exc}") from None


def parse_box(text: str) -> tuple:
    try:
        sides = tuple(int(t) for t in text.lower().split("x"))
    except ValueError:
        raise InputError(f"box must look like 5x5, got {text!r}") from None
    if not sides or any(a < 1 for a in sides):
        raise InputError("box sides must be positive")
    return sides


def parse_rectangles(text: str) -> list:
    return [parse_box(t) for t in text.split(",") if t.strip()]


def polytope_dict(P: RationalPolytope) -> dict:
    out = P.to_dict()
    out["halfspaces"] = [{"a": list(a), "b": format_rational(b)} for a, b in P.halfspaces]
    out["full_dimensional"] = P.full_dimensional
    out["volume"] = format_rational(P.volume)
    return out


# ---------------------------------------------------------------------------
# commands; each returns the text to emit


def cmd_hull(args):
    P = exactgeom.convex_hull(load_points(args.points))
    return json.dumps(polytope_dict(P))


def cmd_zonotope(args):
    B = load_pointset(args.B)
    Z = exactgeom.zonotope(B)
    out = polytope_dict(Z)
    out["determinant_sum"] = exactgeom.determinant_sum(B)
    return json.dumps(out)


def cmd_kappa(args):
    return str(extremal.kappa(load_pointset(args.B), args.n))


def _ball_out(ext, fmt):
    if fmt == "text":
        return ext.points.to_text().rstrip("\n")
    out = ext.points.to_dict()
    out["kappa"] = ext.kappa
    out["target_n"] = ext.target_n
    return json.dumps(out)


def cmd_ball(args):
    return _ball_out(extremal.ball(load_pointset(args.B), args.n), args.format)


def cmd_edge_ball(args):
    return _ball_out(extremal.edge_ball(load_pointset(args.B), args.n), args.format)


def cmd_boundary(args):
    return str(cayley.boundary(load_pointset(args.A), load_pointset(args.B), args.objective))


def cmd_constants(args):
    return json.dumps(extremal.constants(load_pointset(args.B)).to_dict())


def cmd_excess(args):
    rep = extremal.full_report(load_pointset(args.A), load_pointset(args.B), args.objective)
    if args.format == "csv":
        return extremal.report_csv([rep]).rstrip("\n")
    return rep.to_json()


def cmd_symdiff(args):
    v, sd = extremal.best_translate_symdiff(load_pointset(args.A), load_pointset(args.S))
    return json.dumps({"v": list(v), "symdiff": sd})


def cmd_perimeter(args):
    E = continuous.cube_union(load_pointset(args.A))
    return format_rational(continuous.perimeter(E, load_polytope(args.K)))


def cmd_deficit(args):
    E = continuous.cube_union(load_pointset(args.A))
    K = load_polytope(args.K)
    return json.dumps({"delta": continuous.deficit(E, K), "sign": continuous.wulff_sign(E, K)})


def _grid(text):
    try:
        step = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad grid step {text!r}") from None
    if step <= 0:
        raise InputError("grid step must be positive")
    return step


def cmd_asym(args):
    E = continuous.cube_union(load_pointset(args.A))
    res = continuous.asymmetric_index(E, load_polytope(args.K), _grid(args.grid_step))
    return json.dumps(res.to_dict())


def _family(args) -> dict:
    if args.family:
        fam = load_family(args.family)
        return {f"A{i}": A for i, A in enumerate(fam)}
    if args.rectangles:
        return {"x".join(map(str, s)): box(s) for s in parse_rectangles(args.rectangles)}
    raise InputError("give --family or --rectangles")


def cmd_fmp_scatter(args):
    K = load_polytope(args.K)
    bodies = {name: continuous.cube_union(A) for name, A in _family(args).items()}
    rows = continuous.fmp_scatter(bodies, K, _grid(args.grid_step))
    if args.format == "csv":
        return continuous.scatter_csv(rows).rstrip("\n")
    return continuous.scatter_json(rows)


def _config(args, n=None):
    if args.mode == "anneal" and args.seed is None:
        raise InputError("anneal mode is randomized and requires --seed")
    return search.SearchConfig(
        objective=args.objective, n=args.n if n is None else n, box=parse_box(args.box),
        mode=args.mode, budget=args.budget, seed=args.seed or 0)


def cmd_search(args):
    B = load_pointset(args.B)
    return search.min_boundary(B, _config(args)).to_json()


def cmd_verify_plunnecke(args):
    if args.random is not None:
        if args.seed is None:
            raise InputError("--random requires --seed")
        inst = search.random_plunnecke_instances(args.random, args.seed)
        if args.format == "csv":
            return search.plunnecke_csv(inst).rstrip("\n")
        rows = search.plunnecke_rows(inst)
        return json.dumps([dict(zip(search.PLUNNECKE_COLUMNS, r)) for r in rows])
    if not (args.A and args.B and args.k):
        raise InputError("give --A, --B and --k, or --random with --seed")
    res = search.plunnecke_verify(load_pointset(args.A), load_pointset(args.B), args.k)
    return json.dumps({"a_prime": res.a_prime.to_dict(), "ratio_ok": res.ratio_ok,
                       "ratio": format_rational(res.ratio), "alpha_k": format_rational(res.bound)})


def cmd_verify_bm(args):
    U = continuous.cube_union(load_pointset(args.U))
    V = continuous.cube_union(load_pointset(args.V))
    ok = search.brunn_minkowski_check(U, V)
    return json.dumps({"holds": ok, "mu_U": U.measure, "mu_V": V.measure,
                       "mu_sum": search.minkowski_measure(U, V)})


def cmd_stability(args):
    B = load_pointset(args.B)
    if args.cuboids:
        sides = parse_rectangles(args.cuboids)
        fam = [extremal.tight_example(len(s), s)[1] for s in sides]
    else:
        fam = list(_family(args).values())
    reports = search.stability_experiment(B, fam, args.objective)
    if args.format == "json":
        return json.dumps([r.to_dict() for r in reports])
    return extremal.report_csv(reports).rstrip("\n")


def cmd_scan_conjecture(args):
    B = load_pointset(args.B)
    cfg = _config(args, n=args.n_min)
    rows = search.conjecture_scan(B, range(args.n_min, args.n_max + 1), cfg)
    if args.witness_dir:
        os.makedirs(args.witness_dir, exist_ok=True)
        for r in rows:
            if r.gap_sign < 0:
                path = os.path.join(args.witness_dir, f"witness_n{r.n}.json")
                with open(path, "w") as fh:
                    fh.write(r.witness.to_json() + "\n")
                r.witness_file = path
    if args.format == "json":
        return json.dumps([r.to_dict() for r in rows])
    return search.scan_csv(rows).rstrip("\n")


def cmd_tight_example(args):
    try:
        sides = tuple(int(t) for t in args.sides.split(","))
    except ValueError:
        raise InputError("--sides takes comma-separated integers") from None
    B, A = extremal.tight_example(args.d, sides)
    return json.dumps({"B": B.to_dict(), "A": A.to_dict(),
                       "vertex_boundary": cayley.vertex_boundary(A, B)})


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="isoperimetry", description="Exact isoperimetry in Cayley digraphs on Z^d.")
    p.add_argument("--threads", type=int, default=1,
                   help="worker cap (operations currently run single-threaded)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, formats=("json",)):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--out", help="write to this path instead of stdout")
        return sp

    sp = add("hull", cmd_hull, "convex hull of rational points")
    sp.add_argument("--points", required=True)
    sp = add("zonotope", cmd_zonotope, "zonotope of B with volume and determinant sum")
    sp.add_argument("--B", required=True)
    sp = add("kappa", cmd_kappa, "smallest dilation reaching n lattice points", ("text",))
    sp.add_argument("--B", required=True)
    sp.add_argument("--n", type=int, required=True)
    for name, func, text in (("ball", cmd_ball, "extremal lattice ball of C(B)"),
                             ("edge-ball", cmd_edge_ball, "extremal lattice ball of the subset sums [B]")):
        sp = add(name, func, text, ("json", "text"))
        sp.add_argument("--B", required=True)
        sp.add_argument("--n", type=int, required=True)
    sp = add("boundary", cmd_boundary, "vertex or edge boundary of A", ("text",))
    sp.add_argument("--objective", choices=("vertex", "edge"), default="vertex")
    sp.add_argument("--A", required=True)
    sp.add_argument("--B", required=True)
    sp = add("constants", cmd_constants, "volumes and beta constants of B")
    sp.add_argument("--B", required=True)
    sp = add("excess", cmd_excess, "excess report for A", ("json", "csv"))
    sp.add_argument("--objective", choices=("vertex", "edge"), default="vertex")
    sp.add_argument("--A", required=True)
    sp.add_argument("--B", required=True)
    sp = add("symdiff", cmd_symdiff, "best translate of S against A")
    sp.add_argument("--A", required=True)
    sp.add_argument("--S", required=True)
    sp = add("perimeter", cmd_perimeter, "anisotropic perimeter of the cube union of A", ("text",))
    sp.add_argument("--A", required=True)
    sp.add_argument("--K", required=True)
    sp = add("deficit", cmd_deficit, "isoperimetric deficit")
    sp.add_argument("--A", required=True)
    sp.add_argument("--K", required=True)
    sp = add("asym", cmd_asym, "grid upper bound on the asymmetric index")
    sp.add_argument("--A", required=True)
    sp.add_argument("--K", required=True)
    sp.add_argument("--grid-step", default="1/4")
    sp = add("fmp-scatter", cmd_fmp_scatter, "asymmetry against sqrt(deficit)", ("csv", "json"))
    sp.add_argument("--K", required=True)
    sp.add_argument("--family")
    sp.add_argument("--rectangles", help="e.g. 12x12,16x9")
    sp.add_argument("--grid-step", default="1/4")

    def search_args(sp):
        sp.add_argument("--B", required=True)
        sp.add_argument("--objective", choices=("vertex", "edge"), default="vertex")
        sp.add_argument("--box", default="5x5")
        sp.add_argument("--mode", choices=("exhaustive", "anneal"), default="exhaustive")
        sp.add_argument("--budget", type=int, default=10**5)
        sp.add_argument("--seed", type=int)

    sp = add("search", cmd_search, "minimum boundary over n-sets")
    search_args(sp)
    sp.add_argument("--n", type=int, required=True)
    sp = add("verify-plunnecke", cmd_verify_plunnecke, "exhaustive subset check", ("json", "csv"))
    sp.add_argument("--A")
    sp.add_argument("--B")
    sp.add_argument("--k", type=int)
    sp.add_argument("--random", type=int, help="number of random instances")
    sp.add_argument("--seed", type=int)
    sp = add("verify-bm", cmd_verify_bm, "Brunn-Minkowski for two cube unions")
    sp.add_argument("--U", required=True)
    sp.add_argument("--V", required=True)
    sp = add("stability", cmd_stability, "distance-to-ball table", ("csv", "json"))
    sp.add_argument("--B", required=True)
    sp.add_argument("--objective", choices=("vertex", "edge"), default="vertex")
    sp.add_argument("--family")
    sp.add_argument("--rectangles")
    sp.add_argument("--cuboids", help="cuboid sides for the tight family, e.g. 8x8,16x4")
    sp = add("scan-conjecture", cmd_scan_conjecture, "minimum boundary against the bound",
             ("csv", "json"))
    search_args(sp)
    sp.add_argument("--n-min", type=int, default=1)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--witness-dir")
    sp = add("tight-example", cmd_tight_example, "cube-corner B with a cuboid A")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--sides", required=True)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text = args.func(args)
    except InputError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (IsoperimetryError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
