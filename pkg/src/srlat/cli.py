"""Command line interface: ``srlat <command> ...``.

Exit codes: 0 success or all checks pass, 1 a check failed, 2 bad input.
"""
import argparse
import sys

from . import io
from .errors import InputError, LatticeError
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(obj, out=None):
    text = io.dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _state_or_lattice(path):
    state = io.load_state(path)
    return state, (state.current if state is not None else io.load_lattice(path))


def cmd_build(args):
    from .constructions import Recipe, replay

    data = io.read_json(args.recipe)
    # a built file carries its recipe, so rebuilding it is a replay
    state = replay(Recipe.from_json(data.get("recipe", data) if isinstance(data, dict) else data))
    _emit(io.state_to_json(state), args.out)
    return EXIT_OK


def cmd_render(args):
    from .render import render_svg

    svg = render_svg(io.load_lattice(args.lattice))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_lamps(args):
    from .lamps import lamp_poset, lamp_relations, lamps

    L = io.load_lattice(args.lattice)
    found = lamps(L)
    rel = lamp_relations(L, found)
    _emit({"lamps": [lamp.to_json() for lamp in found],
           "poset": lamp_poset(L, found, rel).to_json(),
           "relations_equal": rel.equal})
    return EXIT_OK


def cmd_conlat(args):
    from .congruence import ConLattice, phi_iso
    from .errors import IsoFailure
    from .lamps import lamp_poset

    L = io.load_lattice(args.lattice)
    out, code = {}, EXIT_OK
    if args.mode in ("oracle", "both"):
        con = ConLattice(L)
        out["con_size"] = len(con)
        out["jir_con"] = con.jir_poset().to_json()
        out["jir_con_blocks"] = [c.to_json() for c in con.jir]
    if args.mode in ("lamps", "both"):
        out["lamp_poset"] = lamp_poset(L).to_json()
    if args.mode == "both":
        try:
            image = phi_iso(L)
            out["phi"] = {key: c.to_json() for key, c in image.items()}
            out["iso"] = True
        except IsoFailure as exc:
            out["iso"], out["iso_error"] = False, str(exc)
            code = EXIT_FAIL
    _emit(out)
    return code


def cmd_quotient(args):
    from .congruence import principal_congruence
    from .quotient import quotient_diagram

    L = io.load_lattice(args.lattice)
    if args.edge:
        parts = args.edge.split(",")
        if len(parts) != 2:
            raise InputError("--edge expects two labels separated by a comma")
        alpha = principal_congruence(L, parts[0].strip(), parts[1].strip())
    else:
        alpha = io.partition_from_json(io.read_json(args.partition))
    res = quotient_diagram(L, alpha)
    _emit(res.to_json(), args.out)
    return EXIT_OK if res.passed else EXIT_FAIL


def _realization_json(res):
    out = io.state_to_json(res.state)
    out["lamp_poset"] = res.achieved.to_json()
    out["target_poset"] = res.expected.to_json()
    return out


def _need_state(path):
    from .errors import NoRecipe

    state = io.load_state(path)
    if state is None:
        raise NoRecipe(f"{path}: a recipe or built lattice file is needed")
    return state


def cmd_thrust(args):
    from .constructions import Step, extend_state

    state = _need_state(args.lattice)
    state = extend_state(state, Step("thrust", args.lamp, args.k, args.side))
    _emit(io.state_to_json(state), args.out)
    return EXIT_OK


def cmd_brosum(args):
    from .realize import realize_brosum

    res = realize_brosum(_need_state(args.lattice), args.lamp, args.k, args.side)
    _emit(_realization_json(res), args.out)
    return EXIT_OK


def cmd_jsum(args):
    from .constructions import Recipe
    from .realize import realize_jsum

    recipe_m = Recipe.from_json(io.read_json(args.m))
    res = realize_jsum(_need_state(args.latticeK), args.at, recipe_m, args.side)
    _emit(_realization_json(res), args.out)
    return EXIT_OK


def cmd_check(args):
    from .checks import run_suites
    from .errors import DownwardEdge, NotALattice, NotPlanar

    try:
        state, L = _state_or_lattice(args.path)
    except (NotPlanar, NotALattice, DownwardEdge) as exc:
        # a drawing that is not a lattice diagram fails the structure suite
        rep = Report("check")
        rep.record("structure.builds", False, f"{type(exc).__name__}: {exc}")
        _report(rep, args.json)
        return EXIT_FAIL
    rep = run_suites(L, [args.suite], state=state)
    _report(rep, args.json)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _report(rep, as_json):
    if as_json:
        _emit(rep.to_json())
    else:
        print("\n".join(rep.lines()))


def cmd_corpus(args):
    from .corpus import run_corpus

    summary = run_corpus(args.max_steps, args.max_k, args.max_grid,
                         classes=args.classes, progress=None if args.quiet else sys.stderr,
                         sample=args.sample, seed=args.seed)
    _emit(summary, args.out)
    return EXIT_OK if summary["failed"] == 0 else EXIT_FAIL


def build_parser():
    ap = argparse.ArgumentParser(prog="srlat", description="Slim rectangular lattice diagrams.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="replay a recipe into a lattice file")
    p.add_argument("recipe")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("render", help="draw a lattice as SVG")
    p.add_argument("lattice")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("lamps", help="lamps and the lamp poset")
    p.add_argument("lattice")
    p.set_defaults(func=cmd_lamps)

    p = sub.add_parser("conlat", help="congruence lattice data")
    p.add_argument("lattice")
    mode = p.add_mutually_exclusive_group()
    for name in ("oracle", "lamps", "both"):
        mode.add_argument(f"--{name}", dest="mode", action="store_const", const=name)
    p.set_defaults(func=cmd_conlat, mode="both")

    p = sub.add_parser("quotient", help="quotient diagram by a congruence")
    p.add_argument("lattice")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--edge", help="two labels a,b; quotient by con(a, b)")
    which.add_argument("--partition", help="JSON file with the blocks")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_quotient)

    for name, func, helptext in (("thrust", cmd_thrust, "thrust a new lamp atop a lamp"),
                                 ("brosum", cmd_brosum, "realize a brother sum by thrusting")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("lattice")
        p.add_argument("--lamp", required=True, help="peak label of the lamp")
        p.add_argument("--k", type=int, default=1)
        p.add_argument("--side", choices=("left", "right", "internal"))
        p.add_argument("-o", "--out")
        p.set_defaults(func=func)

    p = sub.add_parser("jsum", help="realize a j-sum of two lamp posets")
    p.add_argument("latticeK")
    p.add_argument("--at", required=True, help="peak label of the internal lamp")
    p.add_argument("--m", required=True, help="recipe of the lattice to glue in")
    p.add_argument("--side", choices=("left", "right", "internal"))
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_jsum)

    p = sub.add_parser("check", help="run invariant suites")
    p.add_argument("path")
    p.add_argument("--suite", default="all",
                   choices=("structure", "lamps", "congruence", "quotient", "representability", "all"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("corpus", help="check every lattice within a construction budget")
    p.add_argument("--max-steps", type=int, default=1)
    p.add_argument("--max-k", type=int, default=2)
    p.add_argument("--max-grid", type=int, default=2)
    p.add_argument("--classes", action="store_true", help="one lattice per isomorphism class")
    p.add_argument("--sample", type=int, help="check this many random walks instead")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quiet", action="store_true")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_corpus)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LatticeError as exc:
        print(f"failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
