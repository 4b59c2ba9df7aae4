"""Named instances used by the suites, the tests and the benchmarks.

Everything here is built on demand from the construction functions; the
registries map short names to zero-argument (or truncation-taking) builders.
"""
from __future__ import annotations

from . import constructions as cons
from .category import (ReedyData, chain, contractible_groupoid, cyclic_group, free_category,
                       poset_category, walking_retraction)
from .diagrams import (DiagramMap, SimplicialDiagram, constant_diagram, from_key_actions,
                       identity_map, representable_diagram, terminal_diagram)
from .simplicial import OverObject, SimplicialMap


# ------------------------------------------------------------- categories
def square():
    """The commutative square 00 -> 01, 10 -> 11 as a poset."""
    return poset_category(["00", "01", "10", "11"],
                          [("00", "01"), ("00", "10"), ("01", "11"), ("10", "11")], name="square")


def cospan():
    """a -> b <- c."""
    return poset_category(["a", "b", "c"], [("a", "b"), ("c", "b")], name="cospan")


def free_composites():
    """Free category on a -f-> b -g-> c and h: a -> c, so A(a, c) = {h, f.g}."""
    return free_category(["a", "b", "c"], {"f": ("a", "b"), "g": ("b", "c"), "h": ("a", "c")},
                         name="free")


CATEGORIES = {
    "chain-0": lambda: chain(0),
    "chain-1": lambda: chain(1),
    "chain-2": lambda: chain(2),
    "chain-3": lambda: chain(3),
    "square": square,
    "cospan": cospan,
    "free-composites": free_composites,
    "z2": lambda: cyclic_group(2),
    "retraction": walking_retraction,
    "iso-pair": contractible_groupoid,
}

# Categories whose nerves are finite-dimensional (posets and free categories).
FINITE_NERVE = ("chain-0", "chain-1", "chain-2", "chain-3", "square", "cospan", "free-composites")


def category(name):
    return CATEGORIES[name]()


def chain_reedy(n):
    """[n] with degree = position, every arrow in the plus class."""
    A = chain(n)
    ids = [A.identity(a) for a in A.objects]
    return ReedyData(A, {a: int(a) for a in A.objects}, set(A.morphisms), set(ids))


def retraction_reedy():
    """The walking retraction with i raising and p lowering degree; e = i.p factors uniquely."""
    A = walking_retraction()
    return ReedyData(A, {"c0": 0, "c1": 1}, {"id0", "id1", "i"}, {"id0", "id1", "p"})


# --------------------------------------------------------- simplicial sets
SIMPLICIAL_SETS = {
    "point": lambda N: cons.point(N),
    "simplex-1": lambda N: cons.standard_simplex(1, N),
    "simplex-2": lambda N: cons.standard_simplex(2, N),
    "simplex-3": lambda N: cons.standard_simplex(3, N),
    "boundary-2": lambda N: cons.boundary(2, N).obj,
    "horn-2-1": lambda N: cons.horn(2, 1, N).obj,
    "square-prism": lambda N: cons.product(cons.standard_simplex(1, N), cons.standard_simplex(1, N)).obj,
    "nerve-chain-2": lambda N: chain(2).nerve(N),
    "nerve-z2": lambda N: cyclic_group(2).nerve(N),
}


def simplicial_set(name, N):
    return SIMPLICIAL_SETS[name](N)


# ----------------------------------------------------------------- diagrams
def discrete_swap(A, N, swap=None):
    """The constant diagram {x, y} where the arrows listed in ``swap`` exchange x and y.

    ``swap`` is a predicate on morphisms; it must be compatible with composition
    (a homomorphism to Z/2).  Every action is a bijection of 0-truncated Kan complexes.
    """
    swap = swap or (lambda f: False)
    K = cons.discrete(["x", "y"], N, name="{x,y}")
    other = {"x": "y", "y": "x"}

    def act(f, n, key):
        return other[key] if swap(f) else key

    return from_key_actions(A, {a: K for a in A.objects}, act, name="swap")


def groupoid_collapse(N):
    """Over [1]: N(J) -> point, a Kan diagram whose action is a homotopy equivalence."""
    A = chain(1)
    J = contractible_groupoid().nerve(N)
    pt = cons.point(N)
    values = {"0": J, "1": pt}
    return SimplicialDiagram(A, values, {"id:0": SimplicialMap.identity(J), "id:1": SimplicialMap.identity(pt),
                                         "0->1": cons.to_point(J)}, name="J->pt")


def left_only_fixture(N):
    """G = (empty, point) -> F = (point, point) over [1]; pointwise a Kan fibration."""
    A = chain(1)
    F = terminal_diagram(A, N)
    G = from_key_actions(A, {"0": cons.empty(N), "1": cons.point(N)}, lambda f, n, k: k, name="G")
    m = DiagramMap(G, F, {"0": cons.from_empty(F["0"]),
                          "1": SimplicialMap(G["1"], F["1"], [(0,)] * (N + 1))}, name="G->F")
    return m


def to_terminal(F):
    """The unique map F -> *."""
    T = terminal_diagram(F.shape, F.N)
    return DiagramMap(F, T, {a: cons.to_point(F[a]) for a in F.shape.objects}, validate=False, name="!")


def pointwise_kan_maps(N):
    """Corpus diagram maps that are pointwise Kan fibrations, with their names.

    Returns ``[(name, map, also_trivial)]``.
    """
    out = []
    for cname in ("chain-1", "chain-2", "cospan", "z2"):
        A = category(cname)
        for a in A.objects[:2]:
            R = representable_diagram(A, a, cons.point(N))
            out.append((f"{cname}:rep({a})->*", to_terminal(R), False))
        out.append((f"{cname}:id(*)", identity_map(terminal_diagram(A, N)), True))
    A = chain(1)
    out.append(("chain-1:swap->*", to_terminal(discrete_swap(A, N)), False))
    out.append(("chain-1:J->pt->*", to_terminal(groupoid_collapse(N)), True))
    Z = cyclic_group(2)
    out.append(("z2:swap->*", to_terminal(discrete_swap(Z, N, lambda f: f == "g1")), False))
    out.append(("chain-1:left-only", left_only_fixture(N), False))
    return out


def kan_diagrams(N):
    """Diagrams of Kan complexes whose actions are homotopy equivalences."""
    return [
        ("chain-1:swap", discrete_swap(chain(1), N)),
        ("chain-2:const{x,y}", discrete_swap(chain(2), N)),
        ("z2:swap", discrete_swap(cyclic_group(2), N, lambda f: f == "g1")),
        ("chain-1:J->pt", groupoid_collapse(N)),
        ("iso-pair:const{x,y}", constant_diagram(contractible_groupoid(), cons.discrete(["x", "y"], N))),
    ]


# ------------------------------------------------------------- JSON fixtures
def write_fixtures(directory, N=3):
    """Write a small set of input documents, including path references and one corrupted file.

    Returns the list of written paths.
    """
    from pathlib import Path

    from . import serialize

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []

    def put(name, doc):
        p = d / name
        p.write_text(serialize.canonical(doc))
        written.append(p)

    A1 = chain(1)
    put("simplex-2.json", serialize.to_doc(cons.standard_simplex(2, N)))
    put("chain-1.json", serialize.to_doc(A1))
    put("chain-2.json", serialize.to_doc(chain(2)))
    put("square.json", serialize.to_doc(square()))
    put("z2.json", serialize.to_doc(cyclic_group(2)))
    put("retraction-reedy.json", serialize.to_doc(retraction_reedy()))
    K = cons.discrete(["x", "y"], N, name="{x,y}")
    put("pair.json", serialize.to_doc(K))
    swap = serialize.to_doc(discrete_swap(A1, N))
    # the same diagram, with its category and values given by reference
    swap["category"] = "chain-1.json"
    swap["values"] = {a: "pair.json" for a in swap["values"]}
    put("swap-over-chain-1.json", swap)
    put("left-only-map.json", serialize.to_doc(left_only_fixture(N)))
    put("rep-to-terminal.json", serialize.to_doc(to_terminal(representable_diagram(chain(2), "0", cons.point(N)))))
    B = cons.standard_simplex(2, 5)
    v = cons.vertex_map(B, 0)
    put("vertex-over-simplex-2.json", serialize.to_doc(OverObject(v.source, v)))
    broken = serialize.to_doc(cons.standard_simplex(2, N))
    row = broken["faces"]["2"][0]
    row[0], row[1] = row[1], row[0]
    put("broken-identity.json", broken)
    (d / "not-json.json").write_text("{\"type\": \"simplicial_set\", ")
    written.append(d / "not-json.json")
    return written
