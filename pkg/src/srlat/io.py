"""JSON formats for lattices, recipes, posets and partitions."""
import json

from .constructions import Recipe
from .diagram import LatticeDiagram
from .errors import InputError
from .exact import fmt, frac
from .posets import Poset


def lattice_to_json(L):
    return {"vertices": [{"id": v, "p": fmt(L.coords[v][0]), "q": fmt(L.coords[v][1])}
                         for v in L.labels],
            "covers": sorted([a, b] for a, b in L.covers)}


def lattice_from_json(data):
    try:
        verts = [(str(v["id"]), (frac(v["p"]), frac(v["q"]))) for v in data["vertices"]]
        covers = [(str(a), str(b)) for a, b in data["covers"]]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed lattice JSON: {exc}") from None
    return LatticeDiagram(verts, covers)


def dumps(obj):
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def write_json(path, obj):
    with open(path, "w") as fh:
        fh.write(dumps(obj))


def is_recipe(data):
    return isinstance(data, dict) and "base" in data


def load_lattice(path):
    """A lattice JSON file, or a recipe file (replayed)."""
    from .constructions import replay

    data = read_json(path)
    if is_recipe(data):
        return replay(Recipe.from_json(data)).current
    return lattice_from_json(data)


def load_state(path):
    """BuildState for a recipe file or a built lattice file; None for a bare lattice."""
    from .constructions import replay

    data = read_json(path)
    if is_recipe(data):
        return replay(Recipe.from_json(data))
    if isinstance(data, dict) and "recipe" in data:
        return replay(Recipe.from_json(data["recipe"]))
    return None


def state_to_json(state):
    """Final lattice plus the recipe, birth map and every snapshot."""
    out = lattice_to_json(state.current)
    out["recipe"] = state.recipe.to_json()
    out["birth"] = dict(sorted(state.birth.items()))
    out["snapshots"] = [lattice_to_json(L) for L in state.snapshots]
    return out


def poset_to_json(P):
    return P.to_json()


def poset_from_json(data):
    return Poset.from_json(data)


def partition_from_json(data):
    """Either {"blocks": [[...], ...]} or a bare list of blocks."""
    blocks = data["blocks"] if isinstance(data, dict) else data
    return [[str(v) for v in b] for b in blocks]
