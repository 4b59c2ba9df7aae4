"""Named verification suites and the report format.

A suite is a registry entry: a description, the document types it accepts
as inputs, the name of the instance builder and the list of check names it
runs per instance.  Builders and checks are looked up in tables, so a new
suite is a new registry entry over existing checks.

Every check returns an outcome (``holds``, ``fails``, ``skipped``) and a
JSON-safe detail dict; the check passes when the outcome matches what the
suite expects.  Timings live outside the canonical report.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import __version__
from . import constructions as cons
from . import corpus, homology, lifting, transport
from .category import component_has_initial_and_terminal, factorization_category, monotone_functor
from .diagrams import enumerate_diagram_maps, pointwise_check, representable_diagram, terminal_diagram
from .errors import BudgetExceeded, HocolimError, TruncationError
from .search import enumerate_maps_over
from .serialize import _plain, canonical, label
from .simplicial import OverObject, SimplicialMap

PASS, FAIL, BUDGET, SKIP, INPUT_ERROR = "pass", "fail", "budget_exceeded", "skipped", "input_error"


def jsonable(v):
    """Tuples to lists, non-string dict keys to labels, no floats."""
    if isinstance(v, dict):
        return {k if isinstance(k, str) else label(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, float):
        raise TypeError("reports carry no floats")
    if v is None or isinstance(v, (bool, int, str)):
        return v
    return _plain(v) if isinstance(v, frozenset) else str(v)


# ------------------------------------------------------------------ context
@dataclass
class Context:
    N: int = 3
    budget: int | None = None
    certificates: list = field(default_factory=list)

    def record(self, kind, obj, cert):
        """Keep a certificate with the map it certifies, for later cross-checks."""
        self.certificates.append((kind, obj, cert))
        return cert


@dataclass
class Instance:
    name: str
    data: dict


def _spent(*verdicts):
    """Raise when any verdict ran out of budget, so the check is reported as such."""
    for v in verdicts:
        if v.result == lifting.BUDGET:
            raise BudgetExceeded(v.nodes, f"{v.kind} verdict")


def _fib(v):
    d = {"result": v.result, "checked": [list(c) for c in v.checked]}
    if v.witness is not None:
        d["witness"] = v.witness.label
        d["witness_rechecked"] = v.witness.rechecked
    return d


def _cert(c):
    return {"tier": c.tier, "range": list(c.valid_degree_range), "range_limited": c.range_limited,
            "comparison": jsonable({k: v for k, v in c.comparison.items()})}


def _overs(A, N, dims=(1, 2), limit=2):
    """NA over itself plus a few representable simplices."""
    NA = transport.register_nerve(A, N)
    out = [("NA", OverObject(NA, SimplicialMap.identity(NA)))]
    for n in dims:
        for x in NA.nondegenerate(n)[:limit]:
            out.append((f"simplex{label(NA.keys[n][x])}", transport.representable_over(A, n, NA.keys[n][x], N)))
    return out


def _category_inputs(inputs, default):
    from .category import FiniteCategory
    from .diagrams import SimplicialDiagram

    cats = []
    for name, obj in inputs:
        if isinstance(obj, FiniteCategory):
            cats.append((name, obj))
        elif isinstance(obj, SimplicialDiagram):
            cats.append((name, obj.shape))
        elif hasattr(obj, "category") and isinstance(getattr(obj, "category"), FiniteCategory):
            cats.append((name, obj.category))
        else:
            raise TypeError(f"{name}: expected a category, a Reedy category or a diagram")
    if not inputs:
        cats = [(c, corpus.category(c)) for c in default]
    return cats


# ----------------------------------------------------------- instance builders
def inst_adjunction(ctx, inputs):
    from .diagrams import SimplicialDiagram

    out = []
    if inputs:
        for name, F in inputs:
            if not isinstance(F, SimplicialDiagram):
                raise TypeError(f"{name}: expected a diagram")
            for xn, X in _overs(F.shape, F.N):
                out.append(Instance(f"{name} | X={xn}", {"A": F.shape, "X": X, "F": F}))
        return out
    N = ctx.N
    for cname in ("chain-1", "chain-2", "cospan", "z2"):
        A = corpus.category(cname)
        a = A.objects[0]
        Fs = [("terminal", terminal_diagram(A, N)),
              (f"rep({a})xD0", representable_diagram(A, a, cons.point(N))),
              (f"rep({a})xD1", representable_diagram(A, a, cons.standard_simplex(1, N)))]
        for xn, X in _overs(A, N, dims=(1,), limit=1) + _overs(A, N, dims=(2,), limit=1)[1:]:
            for fn, F in Fs:
                out.append(Instance(f"{cname} | X={xn} | F={fn}", {"A": A, "X": X, "F": F}))
    return out


def inst_formulas(ctx, inputs):
    N = ctx.N
    M = min(N, 2)
    out = []
    for cname in _category_names(inputs, ("chain-1", "chain-2", "cospan", "z2")):
        A = corpus.category(cname) if isinstance(cname, str) else cname[1]
        nm = cname if isinstance(cname, str) else cname[0]
        for xn, X in _overs(A, N):
            out.append(Instance(f"r-formulas {nm} | X={xn}", {"kind": "r-formulas", "X": X}))
        for xn, X in _overs(A, 2 * M + 1, dims=(1,), limit=1):
            out.append(Instance(f"hr-diag {nm} | X={xn}", {"kind": "hr-diag", "X": X, "M": M}))
    for bname in ("simplex-1", "simplex-2"):
        B = corpus.simplicial_set(bname, 2 * M + 1)
        for v in range(B.size(0))[:2]:
            out.append(Instance(f"interval {bname} | vertex {v}",
                                {"kind": "interval", "pi": cons.vertex_map(B, v), "M": M}))
        out.append(Instance(f"interval {bname} | identity",
                            {"kind": "interval", "pi": SimplicialMap.identity(B), "M": M}))
    for n in (1, 2):
        A = corpus.category(f"chain-{n}")
        for Fn, F in (("rep(0)xD1", representable_diagram(A, "0", cons.standard_simplex(1, N))),
                      ("terminal", terminal_diagram(A, N))):
            for theta in _monotone_maps(n):
                out.append(Instance(f"pullback [{n}] {Fn} | theta={list(theta)}",
                                    {"kind": "pullback", "F": F, "theta": theta, "n": n}))
            for k in range(n + 1):
                out.append(Instance(f"horn-pushout [{n}] {Fn} | k={k}",
                                    {"kind": "horn-pushout", "F": F, "k": k, "n": n}))
    return out


def _monotone_maps(n):
    from . import ops

    return [t for m in range(n + 1) for t in ops.monotone_maps(m, n)]


def _category_names(inputs, default):
    if not inputs:
        return list(default)
    return _category_inputs(inputs, default)


def inst_left_transfer(ctx, inputs):
    from .diagrams import DiagramMap, SimplicialDiagram

    if inputs:
        out = []
        for name, m in inputs:
            if isinstance(m, SimplicialDiagram):
                m = corpus.to_terminal(m)
            if not isinstance(m, DiagramMap):
                raise TypeError(f"{name}: expected a diagram or a diagram map")
            out.append(Instance(name, {"m": m}))
        return out
    return [Instance(name, {"m": m}) for name, m, _ in corpus.pointwise_kan_maps(ctx.N)]


def inst_counterexample(ctx, inputs):
    return [Instance("G=(empty,point) -> F=(point,point) over [1]", {"m": corpus.left_only_fixture(ctx.N)})]


def inst_generators(ctx, inputs):
    out = []
    for nm, A in _category_inputs(inputs, ("chain-1", "chain-2", "chain-3", "square", "cospan",
                                            "free-composites", "z2")):
        for n in range(1, 4):
            for k in range(n + 1):
                for b in A.objects:
                    out.append(Instance(f"{nm} | horn({n},{k}) | b={b}", {"A": A, "n": n, "k": k, "b": b}))
    return out


def inst_retracts(ctx, inputs):
    N = ctx.N
    out = []
    for bname in ("simplex-2", "nerve-chain-2", "square-prism", "nerve-z2"):
        B = corpus.simplicial_set(bname, N + 1)
        for b in range(B.size(0)):
            out.append(Instance(f"under-slice {bname} | b={label(B.keys[0][b])}",
                                {"case": "under-slice", "args": (B, b)}))
    for bname in ("simplex-2", "nerve-chain-2", "square-prism"):
        B = corpus.simplicial_set(bname, N)
        for n in (1, 2):
            for beta in B.nondegenerate(n)[:3]:
                out.append(Instance(f"simplex-vertex {bname} | beta={label(B.keys[n][beta])}",
                                    {"case": "simplex-vertex", "args": (B, n, beta)}))
    M = min(N, 2)
    for bname in ("simplex-1", "simplex-2", "nerve-chain-2", "horn-2-1", "boundary-2"):
        B = corpus.simplicial_set(bname, M + 1)
        pis = [("identity", SimplicialMap.identity(B)), ("vertex 0", cons.vertex_map(B, 0))]
        if B.size(0) > 2:
            edge = cons.simplex_map(B, 1, B.nondegenerate(1)[0])
            pis.append(("edge", edge))
        for pn, pi in pis:
            out.append(Instance(f"constant-path {bname} | X={pn}", {"case": "constant-path", "args": (pi, M)}))
    for bname in ("simplex-1", "simplex-2", "nerve-chain-2", "horn-2-1"):
        B = corpus.simplicial_set(bname, 2 * M + 1)
        for b in range(B.size(0)):
            out.append(Instance(f"vertex-diagonal {bname} | b={label(B.keys[0][b])}",
                                {"case": "vertex-diagonal", "args": (B, b, M)}))
    return out


def inst_tau(ctx, inputs):
    out = []
    for nm, A in _category_inputs(inputs, ("chain-2", "square", "cospan", "free-composites", "z2",
                                            "retraction")):
        for a in A.objects:
            out.append(Instance(f"{nm} | a={a}", {"A": A, "a": a}))
    return out


def inst_kan(ctx, inputs):
    from .diagrams import SimplicialDiagram

    if inputs:
        out = []
        for name, F in inputs:
            if not isinstance(F, SimplicialDiagram):
                raise TypeError(f"{name}: expected a diagram")
            out.append(Instance(name, {"F": F}))
        return out
    return [Instance(name, {"F": F}) for name, F in corpus.kan_diagrams(ctx.N)]


def inst_pipeline(ctx, inputs):
    M = max(1, min(ctx.N - 1, 2))
    out = []
    for n in (1, 2, 3):
        B = corpus.category(f"chain-{n}").nerve(M + 4)
        ident = SimplicialMap.identity(B)
        xs = [("identity", ident), ("vertex 0", cons.vertex_map(B, 0)), (f"vertex {n}", cons.vertex_map(B, n)),
              ("edge 0->1", cons.simplex_map(B, 1, B.index(1, ("0", ("0->1",)))))]
        out.append(Instance(f"[{n}]", {"B": B, "xs": xs, "M": M, "n": n}))
    return out


def inst_zigzag(ctx, inputs):
    M = min(ctx.N, 2)
    if inputs:
        out = []
        for name, ov in inputs:
            if not isinstance(ov, OverObject):
                raise TypeError(f"{name}: expected an over document")
            out.append(Instance(name, {"pi": ov.structure, "M": min(M, (ov.base.N - 1) // 2)}))
        return out
    out = []
    for bname in ("simplex-1", "simplex-2", "nerve-chain-2", "nerve-z2"):
        B = corpus.simplicial_set(bname, 2 * M + 1)
        out.append(Instance(f"{bname} | identity", {"pi": SimplicialMap.identity(B), "M": M}))
        out.append(Instance(f"{bname} | vertex 0", {"pi": cons.vertex_map(B, 0), "M": M}))
    B = corpus.simplicial_set("simplex-2", 2 * M + 1)
    for name, sub in (("horn(2,1)", cons.horn(2, 1, 2 * M + 1)), ("boundary", cons.boundary(2, 2 * M + 1))):
        out.append(Instance(f"simplex-2 | {name}", {"pi": sub.inclusion, "M": M}))
    return out


# ------------------------------------------------------------------- checks
def chk_r_adjunction(ctx, d):
    X, F = d["X"], d["F"]
    RX, RF = transport.r_shriek_pairs(X), transport.r_star(F)
    left = enumerate_diagram_maps(RX, F, budget=ctx.budget)
    right = enumerate_maps_over(X, RF, budget=ctx.budget)
    images = {tuple(transport.r_adjoint_from(phi, X, F, RX, RF).components) for phi in left}
    back = all(transport.r_adjoint_of(transport.r_adjoint_from(phi, X, F, RX, RF), X, F, RX, RF).same_as(phi)
               for phi in left)
    ok = len(left) == len(right) == len(images) and images == {tuple(p.components) for p in right} and back
    return ("holds" if ok else "fails"), {"hom_r_shriek_X_F": len(left), "hom_X_r_star_F": len(right),
                                          "bijection": ok}


def chk_h_adjunction(ctx, d):
    from .category import is_poset

    A, X, F = d["A"], d["X"], d["F"]
    if not is_poset(A):
        return "skipped", {"reason": "h^* needs a finite-dimensional nerve of under-categories; "
                                     "the h^+ adjunction is checked instead"}
    HF = transport.h_shriek(F)
    HXd = transport.h_star(X)
    HX = HXd[0]
    left = enumerate_maps_over(HF, X, budget=ctx.budget)
    Ft = F.truncated(HX.N)
    right = enumerate_diagram_maps(Ft, HX, budget=ctx.budget)

    def key(m):
        return tuple((a, tuple(m[a].components)) for a in sorted(m.components))

    images = {key(transport.h_adjoint_of(phi, F, X, HF, HXd)) for phi in left}
    back = all(tuple(transport.h_adjoint_from(transport.h_adjoint_of(phi, F, X, HF, HXd), F, X, HF,
                                              HXd).components) == tuple(phi.truncated(HX.N).components)
               for phi in left)
    ok = len(left) == len(right) == len(images) and images == {key(p) for p in right} and back
    return ("holds" if ok else "fails"), {"hom_h_shriek_F_X": len(left), "hom_F_h_star_X": len(right),
                                          "bijection": ok, "levels": HX.N}


def chk_h_plus_adjunction(ctx, d):
    X, F = d["X"], d["F"]
    HF, Hp = transport.h_shriek(F), transport.h_plus(X)
    left = enumerate_diagram_maps(Hp, F, budget=ctx.budget)
    right = enumerate_maps_over(X, HF, budget=ctx.budget)

    def key(m):
        return tuple((a, tuple(m[a].components)) for a in sorted(m.components))

    images = {tuple(transport.h_plus_adjoint_of(phi, X, F, HF).components) for phi in left}
    back = all(key(transport.h_plus_adjoint_from(transport.h_plus_adjoint_of(phi, X, F, HF), X, F, Hp))
               == key(phi) for phi in left)
    ok = len(left) == len(right) == len(images) and images == {tuple(p.components) for p in right} and back
    return ("holds" if ok else "fails"), {"hom_h_plus_X_F": len(left), "hom_X_h_shriek_F": len(right),
                                          "bijection": ok}


def _iso(ctx, cert, what):
    ctx.record("iso", what, cert)
    return "holds" if cert.check() else "fails"


def chk_formula_iso(ctx, d):
    kind = d["kind"]
    if kind == "r-formulas":
        R = transport.r_shriek(d["X"])
        return _iso(ctx, R.iso, "r_shriek"), {"formula": "pairs vs fibre products"}
    if kind == "hr-diag":
        iso, H, D = transport.hr_vs_diag_iso(d["X"], d["M"])
        return _iso(ctx, iso, "hr_diag"), {"formula": "h_! r_! X vs diag(X//NA)", "sizes": list(H.total.sizes())}
    if kind == "interval":
        iso = transport.interval_product_iso(d["pi"], d["M"])
        return _iso(ctx, iso, "interval"), {"formula": "diag((D1 x X)//B) vs D1 x diag(X//B)",
                                            "sizes": list(iso.forward.source.sizes())}
    if kind == "pullback":
        n, theta = d["n"], d["theta"]
        G = monotone_functor(theta, n)
        ih, _, _ = transport.pullback_to_simplex_iso_h(d["F"], G, theta)
        ir, _, _ = transport.pullback_to_simplex_iso_r(d["F"], G, theta)
        a, b = _iso(ctx, ih, "pullback_h"), _iso(ctx, ir, "pullback_r")
        return ("holds" if a == b == "holds" else "fails"), {"h_shriek": a, "r_star": b}
    if kind == "horn-pushout":
        sq = transport.horn_pushout_square(d["F"], d["k"])
        inner = 0 < d["k"] < d["n"]
        return ("holds" if sq.iso else "fails"), {"pushout": sq.iso, "inner_horn": inner}
    raise ValueError(kind)


def chk_pointwise_kan(ctx, d):
    m = d["m"]
    v = pointwise_check(m, "fibration", budget=ctx.budget)
    _spent(*v.values())
    ok = all(x.holds for x in v.values())
    return ("holds" if ok else "fails"), {"per_object": {label(a): x.result for a, x in v.items()}}


def _transfer(ctx, d, kind, pointwise_kind):
    m = d["m"]
    pv = pointwise_check(m, pointwise_kind, budget=ctx.budget)
    _spent(*pv.values())
    if not all(x.holds for x in pv.values()):
        return "skipped", {"reason": f"not pointwise a {pointwise_kind}",
                           "per_object": {label(a): x.result for a, x in pv.items()}}
    v = lifting.classify_fibration(transport.r_star_map(m), kind, budget=ctx.budget)
    _spent(v)
    return v.result, _fib(v)


def chk_left_transfer(ctx, d):
    return _transfer(ctx, d, "left", "fibration")


def chk_trivial_transfer(ctx, d):
    return _transfer(ctx, d, "trivial", "trivial-fibration")


def _verdict(ctx, d, kind):
    v = lifting.classify_fibration(transport.r_star_map(d["m"]), kind, budget=ctx.budget)
    _spent(v)
    return v


def chk_right_fails_at_horn11(ctx, d):
    v = _verdict(ctx, d, "right")
    found = v.fails and v.witness.label == "horn(1,1)" and v.witness.rechecked
    return ("fails" if found else "holds"), _fib(v)


def chk_kan_fails(ctx, d):
    v = _verdict(ctx, d, "kan")
    return v.result, _fib(v)


def chk_generator_image(ctx, d):
    A, n, k, b = d["A"], d["n"], d["k"], d["b"]
    i = cons.horn(n, k, max(n, ctx.N)).inclusion
    src, tgt, square = transport.generator_image_iso(A, b, i)
    a, c = _iso(ctx, src, "generator source"), _iso(ctx, tgt, "generator target")
    ok = a == c == "holds" and square
    return ("holds" if ok else "fails"), {"source_iso": a, "target_iso": c, "square_commutes": square}


def chk_retract(ctx, d):
    r = lifting.build_retract(d["case"], *d["args"])
    v = lifting.verify_retract(r)
    if v.passed:
        cert = homology.certify_equivalence(r.i, "retract", r)
        ctx.record("retract", r.i, cert)
        return "holds", {"checks": v.checks, "tier": cert.tier}
    return "fails", {"checks": v.checks}


def chk_reversed_retract(ctx, d):
    d0 = lifting.build_retract(d["case"], *d["args"])
    if d0.i.is_iso():
        return "skipped", {"reason": "i is an isomorphism, so the homotopy is constant and symmetric"}
    r = lifting.reversed_retract(d0)
    v = lifting.verify_retract(r)
    return ("holds" if v.passed else "fails"), {"checks": v.checks}


def chk_tau(ctx, d):
    A, a = d["A"], d["a"]
    N = ctx.N
    F = representable_diagram(A, a, cons.point(N))
    transport.register_nerve(A, N)
    HF = transport.h_shriek(F)
    RH = transport.r_shriek_pairs(HF)
    t = transport.tau(F, RH)
    per_b = {}
    ok = True
    for b in A.objects:
        C, _ = factorization_category(A, a, b)
        comps = component_has_initial_and_terminal(C)
        comp_ok = all(c["initial"] and c["terminal"] for c in comps)
        iso = transport.tau_factorization_iso(A, a, b, RH, C)
        iso_ok = _iso(ctx, iso, "factorization") == "holds"
        NC = C.nerve(N)
        top = homology.sound_top(NC)
        degrees = range(0, top + 1) if top is not None else range(N + 1)
        groups = homology.homology(NC, degrees)
        hom = len(A.hom(a, b))
        discrete_ok = groups[0] == homology.Group(hom) and all(g == homology.ZERO for g in groups[1:])
        cert = ctx.record("homology", t[b], homology.certify_equivalence(t[b], "homology"))
        ok = ok and comp_ok and iso_ok and discrete_ok and cert.certified
        per_b[label(b)] = {"components_with_initial_and_terminal": comp_ok, "factorization_iso": iso_ok,
                           "homology": [str(g) for g in groups], "hom_set_size": hom,
                           "range_limited": homology.range_limited(NC),
                           "tau_certificate": _cert(cert)}
    return ("holds" if ok else "fails"), {"per_object": per_b}


def chk_kan_values(ctx, d):
    F = d["F"]
    vals = {}
    ok = True
    for a in F.shape.objects:
        v = lifting.classify_fibration(cons.to_point(F[a]), "kan", budget=ctx.budget)
        _spent(v)
        vals[label(a)] = v.result
        ok = ok and v.holds
    acts = {}
    for f, (s, t) in F.shape.morphisms.items():
        if F.shape.is_identity(f):
            continue
        c = ctx.record("homology", F.actions[f], homology.certify_equivalence(F.actions[f], "homology"))
        acts[label(f)] = c.tier
        ok = ok and c.certified
    return ("holds" if ok else "fails"), {"values_kan": vals, "actions": acts}


def chk_kan_transfer(ctx, d):
    v = lifting.classify_fibration(transport.r_star(d["F"]).structure, "kan", budget=ctx.budget)
    _spent(v)
    return v.result, _fib(v)


def chk_base_quasicategory(ctx, d):
    v = lifting.is_quasicategory(d["B"], budget=ctx.budget)
    _spent(v)
    return v.result, _fib(v)


def chk_face_maps(ctx, d):
    from .slices import slice_face_map

    B, M = d["B"], d["M"]
    rows, ok = [], True
    for xn, pi in d["xs"]:
        for k in range(1, 4):
            for beta in B.nondegenerate(k):
                v = lifting.classify_fibration(slice_face_map(pi, k, beta, M), "trivial", M, ctx.budget)
                _spent(v)
                rows.append([xn, label(B.keys[k][beta]), v.result])
                ok = ok and v.holds
    return ("holds" if ok else "fails"), {"verdicts": rows}


def _pipeline(ctx, d, which):
    B, M, n = d["B"], d["M"], d["n"]
    ident = SimplicialMap.identity(B)
    pX = cons.vertex_map(B, 0 if which == "initial" else n)
    v = homology.quillen_a_pipeline(pX, pX, ident, M, budget=ctx.budget)
    if v.quasicategory is not None:
        _spent(v.quasicategory)
    if any(r == lifting.BUDGET for _, _, r in v.face_maps):
        raise BudgetExceeded(ctx.budget, "slice face map verdict")
    return v, v.to_dict()


def chk_pipeline_initial(ctx, d):
    v, info = _pipeline(ctx, d, "initial")
    return ("holds" if v.status == "conclusion-certified" else "fails"), info


def chk_pipeline_final(ctx, d):
    v, info = _pipeline(ctx, d, "final")
    ok = v.status == "inapplicable" and v.witness is not None
    return ("fails" if ok else "holds"), info


def chk_iota(ctx, d):
    r = lifting.build_retract("constant-path", d["pi"], d["M"])
    v = lifting.verify_retract(r)
    cert = ctx.record("retract", r.i, homology.certify_equivalence(r.i, "retract", r))
    ok = v.passed and cert.tier == homology.RETRACT
    return ("holds" if ok else "fails"), {"checks": v.checks, "certificate": _cert(cert)}


def chk_gamma(ctx, d):
    pi, M = d["pi"], d["M"]
    g, lad, dg = transport.gamma(pi, M)
    valid = g.is_valid()
    over = lad.over.structure.compose(g).components == dg.structure.components
    info = {"valid": valid, "over_base": over}
    ok = valid and over
    A = pi.target.category
    if A is not None:
        info["ladder_verticals"] = transport.gamma_ladder_check(A, pi, M, g)
        ok = ok and info["ladder_verticals"]
    cert = ctx.record("homology", g, homology.certify_equivalence(g, "homology"))
    info["certificate"] = _cert(cert)
    ok = ok and cert.certified
    return ("holds" if ok else "fails"), info


# ------------------------------------------------------------------ registry
BUILDERS = {
    "adjunction": inst_adjunction, "formulas": inst_formulas, "left-transfer": inst_left_transfer,
    "counterexample": inst_counterexample, "generators": inst_generators, "retracts": inst_retracts,
    "tau": inst_tau, "kan": inst_kan, "pipeline": inst_pipeline, "zigzag": inst_zigzag,
}

CHECKS = {
    "r-adjunction": chk_r_adjunction,
    "h-adjunction": chk_h_adjunction,
    "h-plus-adjunction": chk_h_plus_adjunction,
    "formula-iso": chk_formula_iso,
    "pointwise-kan": chk_pointwise_kan,
    "left-fibration": chk_left_transfer,
    "trivial-fibration": chk_trivial_transfer,
    "right-fibration-fails-at-horn-1-1": chk_right_fails_at_horn11,
    "kan-fibration-fails": chk_kan_fails,
    "generator-image": chk_generator_image,
    "retract-verifies": chk_retract,
    "reversed-mutant": chk_reversed_retract,
    "tau-components": chk_tau,
    "values-and-actions": chk_kan_values,
    "kan-fibration": chk_kan_transfer,
    "base-quasicategory": chk_base_quasicategory,
    "slice-face-maps-trivial": chk_face_maps,
    "pipeline-initial-vertex": chk_pipeline_initial,
    "pipeline-final-vertex": chk_pipeline_final,
    "iota-retract": chk_iota,
    "gamma-comparison": chk_gamma,
}

# (check name, expected outcome); "holds" unless a failure is the point of the check.
SUITES = {
    "adjunction-bijections": {
        "description": "Hom-set counts and explicit natural bijections for the r and h adjunctions",
        "inputs": ("diagram",), "builder": "adjunction",
        "checks": [("r-adjunction", "holds"), ("h-adjunction", "holds"), ("h-plus-adjunction", "holds")]},
    "formula-isomorphisms": {
        "description": "r_! formulas, h_!r_! vs the diagonal of X//NA, the interval product, "
                       "pullbacks along simplices and the horn pushout square",
        "inputs": ("category",), "builder": "formulas", "checks": [("formula-iso", "holds")]},
    "left-fibration-transfer": {
        "description": "pointwise Kan (trivial) fibrations of diagrams go to left (trivial) fibrations under r^*",
        "inputs": ("diagram_map", "diagram"), "builder": "left-transfer",
        "checks": [("pointwise-kan", "holds"), ("left-fibration", "holds"), ("trivial-fibration", "holds")]},
    "left-only-counterexample": {
        "description": "r^* of a pointwise Kan fibration need not be a Kan (or right) fibration",
        "inputs": (), "builder": "counterexample",
        "checks": [("pointwise-kan", "holds"), ("left-fibration", "holds"),
                   ("right-fibration-fails-at-horn-1-1", "fails"), ("kan-fibration-fails", "fails")]},
    "generator-images": {
        "description": "h_! of horn x A(b,-) -> simplex x A(b,-) is the product with N(b/A)",
        "inputs": ("category",), "builder": "generators", "checks": [("generator-image", "holds")]},
    "explicit-retracts": {
        "description": "explicit covariant deformation retracts verify; orientation-reversed mutants fail",
        "inputs": (), "builder": "retracts",
        "checks": [("retract-verifies", "holds"), ("reversed-mutant", "fails")]},
    "tau-components": {
        "description": "tau on representables: factorization categories and their homology",
        "inputs": ("category",), "builder": "tau", "checks": [("tau-components", "holds")]},
    "kan-transfer": {
        "description": "Kan diagrams with invertible-up-to-homotopy actions give Kan fibrations r^*F",
        "inputs": ("diagram",), "builder": "kan",
        "checks": [("values-and-actions", "holds"), ("kan-fibration", "holds")]},
    "slice-pipeline": {
        "description": "slice face maps are trivial fibrations over nerves of [n]; the slice-wise "
                       "equivalence pipeline certifies or rejects with a witness",
        "inputs": (), "builder": "pipeline",
        "checks": [("base-quasicategory", "holds"), ("slice-face-maps-trivial", "holds"),
                   ("pipeline-initial-vertex", "holds"), ("pipeline-final-vertex", "fails")]},
    "zigzag": {
        "description": "X -> L(X) <- diag(X//B): iota is a deformation retract, gamma compares homology",
        "inputs": ("over",), "builder": "zigzag",
        "checks": [("iota-retract", "holds"), ("gamma-comparison", "holds")]},
}


# -------------------------------------------------------------------- runner
def _status(outcome, expected):
    if outcome == "skipped":
        return SKIP
    return PASS if outcome == expected else FAIL


def run_suite(name, inputs=(), *, N=3, budget=None, ctx=None, input_digests=()):
    """Run a registry suite; returns ``(report, timings)``.

    ``inputs`` is a list of ``(name, object)`` pairs already loaded and validated.
    """
    spec = SUITES[name]
    ctx = ctx or Context(N, budget)
    timings = {}
    checks = []
    t0 = time.perf_counter()
    instances = BUILDERS[spec["builder"]](ctx, list(inputs))
    for inst in instances:
        for cname, expected in spec["checks"]:
            t = time.perf_counter()
            try:
                outcome, details = CHECKS[cname](ctx, inst.data)
                status = _status(outcome, expected)
            except BudgetExceeded as exc:
                outcome, details, status = BUDGET, {"error": str(exc)}, BUDGET
            except TruncationError as exc:
                outcome, details, status = "error", {"error": str(exc)}, INPUT_ERROR
            except HocolimError as exc:
                outcome, details, status = "error", {"error": f"{type(exc).__name__}: {exc}"}, FAIL
            if outcome == "skipped":
                status = SKIP
            checks.append({"instance": inst.name, "check": cname, "expected": expected,
                           "outcome": outcome, "status": status, "details": jsonable(details)})
            timings[f"{inst.name} :: {cname}"] = round((time.perf_counter() - t) * 1000)
    timings["total_ms"] = round((time.perf_counter() - t0) * 1000)
    summary = {s: sum(1 for c in checks if c["status"] == s) for s in (PASS, FAIL, BUDGET, SKIP, INPUT_ERROR)}
    report = {
        "suite": name,
        "description": spec["description"],
        "tool_version": __version__,
        "truncation": N,
        "budget": budget,
        "inputs": [{"name": n, "sha256": h} for n, h in input_digests],
        "checks": checks,
        "summary": summary,
        "passed": summary[FAIL] == 0 and summary[BUDGET] == 0 and summary[INPUT_ERROR] == 0,
    }
    return report, timings


def exit_code(report):
    s = report["summary"]
    if s[INPUT_ERROR]:
        return 2
    if s[FAIL]:
        return 1
    if s[BUDGET]:
        return 3
    return 0


def canonical_report(report):
    return canonical(report)
