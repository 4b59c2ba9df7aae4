"""Integer homology, components and tiered equivalence certificates.

Chains are normalized (degenerate simplices are killed), so the basis in
degree q is the set of nondegenerate q-simplices.  Homology in degree q is
only reported where the truncation cannot have changed it: q <= N - 1 in
general, every degree once the object is certified exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .errors import SimplicialError, SoundRangeError
from .simplicial import SimplicialMap

ISO, RETRACT, HOMOLOGY = "ISO", "DEFORMATION_RETRACT", "HOMOLOGY_EQUIV"
TIER_ORDER = (ISO, RETRACT, HOMOLOGY)


@dataclass(frozen=True)
class Group:
    """A finitely generated abelian group Z^rank + sum Z/t."""

    rank: int
    torsion: tuple = ()

    def __str__(self):
        parts = ["Z" if self.rank == 1 else f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"

    def to_list(self):
        return [self.rank, list(self.torsion)]


ZERO = Group(0)


@dataclass
class ChainComplex:
    """Normalized chains: ``basis[q]`` lists simplex indices, ``boundary[q]`` maps degree q to q-1.

    ``boundary[q]`` is a list of sparse rows, one per basis element of degree q.
    """

    basis: list
    boundary: list

    @property
    def ranks(self):
        return [len(b) for b in self.basis]

    def check_d2(self):
        for q in range(2, len(self.basis)):
            for row in self.boundary[q]:
                acc = {}
                for c, v in row.items():
                    for c2, w in self.boundary[q - 1][c].items():
                        acc[c2] = acc.get(c2, 0) + v * w
                if any(acc.values()):
                    return False
        return True

    def dense(self, q):
        """Matrix of d_q with rows indexed by degree q-1 (column convention)."""
        m = [[0] * len(self.basis[q]) for _ in range(len(self.basis[q - 1]))]
        for j, row in enumerate(self.boundary[q]):
            for c, v in row.items():
                m[c][j] = v
        return m


def chain_complex(X, top=None):
    top = X.N if top is None else top
    basis = [list(X.nondegenerate(q)) for q in range(top + 1)]
    pos = [{x: j for j, x in enumerate(b)} for b in basis]
    boundary = [[{} for _ in basis[0]]]
    for q in range(1, top + 1):
        rows = []
        for x in basis[q]:
            row = {}
            for i in range(q + 1):
                j = pos[q - 1].get(X.faces[q][i][x])
                if j is not None:
                    row[j] = row.get(j, 0) + (-1) ** i
            rows.append({c: v for c, v in row.items() if v})
        boundary.append(rows)
    return ChainComplex(basis, boundary)


def sound_top(X):
    """Largest degree whose homology the truncation determines (None: every degree)."""
    if X.exact_dim is not None:
        return None
    return X.N - 1


def range_limited(X):
    return X.exact_dim is None


def _check_range(X, degrees):
    top = sound_top(X)
    if top is not None:
        bad = [q for q in degrees if q > top]
        if bad:
            raise SoundRangeError(f"degree {bad[0]} is above the sound range (<= {top}) of {X.name}")


def _rank_and_torsion(rows, ncols):
    inv = kernels.smith_invariants(rows, ncols)
    return len(inv), tuple(v for v in inv if v != 1)


def homology(X, degrees=None):
    """Groups H_q(X) for q in ``degrees`` (default: the whole sound range)."""
    if degrees is None:
        top = sound_top(X)
        degrees = range(X.N + 1 if top is None else top + 1)
    degrees = list(degrees)
    _check_range(X, degrees)
    if not degrees:
        return []
    need = min(max(degrees) + 1, X.N)
    C = chain_complex(X, need)
    cache = {}

    def snf(q):
        if q not in cache:
            if q < 1 or q > need:
                cache[q] = (0, ())
            else:
                cache[q] = _rank_and_torsion(C.boundary[q], len(C.basis[q - 1]))
        return cache[q]

    out = []
    for q in degrees:
        if q > need:
            out.append(ZERO)
            continue
        r_out, _ = snf(q)
        r_in, tors = snf(q + 1)
        out.append(Group(len(C.basis[q]) - r_out - r_in, tors))
    return out


def euler_characteristic(X):
    """Alternating count of nondegenerate simplices (meaningful on exact objects)."""
    return sum((-1) ** q * len(X.nondegenerate(q)) for q in range(X.N + 1))


def pi0(X):
    """Components as sorted lists of vertex indices, ordered by their least vertex."""
    parent = list(range(X.size(0)))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    if X.N >= 1:
        for e in range(X.size(1)):
            a, b = find(X.faces[1][1][e]), find(X.faces[1][0][e])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for v in range(X.size(0)):
        groups.setdefault(find(v), []).append(v)
    return [groups[k] for k in sorted(groups)]


def pi0_map(f):
    """The induced map on components, as a list indexed by source components."""
    cs, ct = pi0(f.source), pi0(f.target)
    where = {v: k for k, comp in enumerate(ct) for v in comp}
    return [where[f.components[0][comp[0]]] for comp in cs], len(ct)


# ------------------------------------------------------------- certificates
@dataclass
class EquivalenceCertificate:
    tier: str | None
    witness: object = None
    valid_degree_range: tuple = ()
    range_limited: bool = False
    notes: list = field(default_factory=list)
    comparison: dict = field(default_factory=dict)

    @property
    def certified(self):
        return self.tier is not None

    def to_dict(self):
        return {"tier": self.tier, "valid_degree_range": list(self.valid_degree_range),
                "range_limited": self.range_limited, "notes": list(self.notes),
                "comparison": self.comparison}


def _common_top(X, Y):
    tx, ty = sound_top(X), sound_top(Y)
    if tx is None and ty is None:
        return max(X.N, Y.N), False
    tops = [t for t in (tx, ty) if t is not None]
    return min(tops), True


def cone_complex(f, top):
    """Mapping cone of f on normalized chains, degrees 0..top+1."""
    X, Y = f.source, f.target
    CX, CY = chain_complex(X, min(X.N, top + 1)), chain_complex(Y, min(Y.N, top + 1))
    posY = [{y: j for j, y in enumerate(b)} for b in CY.basis]

    def fx(q, j):
        y = f.components[q][CX.basis[q][j]]
        k = posY[q].get(y)
        return {} if k is None else {k: 1}

    basis, boundary = [], []
    for q in range(top + 2):
        nx = len(CX.basis[q - 1]) if 0 <= q - 1 < len(CX.basis) else 0
        ny = len(CY.basis[q]) if q < len(CY.basis) else 0
        basis.append([("x", j) for j in range(nx)] + [("y", j) for j in range(ny)])
        rows = []
        # degree q-1 of the cone is C_{q-2}(X) + C_{q-1}(Y): x-part first, then y-part
        nx_prev = len(CX.basis[q - 2]) if 0 <= q - 2 < len(CX.basis) else 0
        for j in range(nx):
            row = {}
            if q - 1 >= 1:
                for c, v in CX.boundary[q - 1][j].items():
                    row[c] = row.get(c, 0) - v
            for c, v in fx(q - 1, j).items():
                row[nx_prev + c] = row.get(nx_prev + c, 0) + v
            rows.append({c: v for c, v in row.items() if v})
        for j in range(ny):
            row = {}
            if q >= 1:
                for c, v in CY.boundary[q][j].items():
                    row[nx_prev + c] = v
            rows.append(row)
        boundary.append(rows)
    return ChainComplex(basis, boundary)


def cone_homology(f, top):
    C = cone_complex(f, top)
    out = []
    for q in range(top + 1):
        r_out = len(kernels.smith_invariants(C.boundary[q], len(C.basis[q - 1]))) if q >= 1 else 0
        r_in, tors = (_rank_and_torsion(C.boundary[q + 1], len(C.basis[q]))
                      if q + 1 < len(C.basis) else (0, ()))
        out.append(Group(len(C.basis[q]) - r_out - r_in, tors))
    return out


def homology_comparison(f):
    """Compare f on pi_0 and on homology in the common sound range.

    Passes when f is a bijection on components, the groups agree, and the
    mapping cone is acyclic through the top degree (so f_* is injective
    below the top and surjective at it; with equal finitely generated groups
    surjectivity forces bijectivity).
    """
    X, Y = f.source, f.target
    top, limited = _common_top(X, Y)
    if top < 0:
        return {"passed": True, "range": [], "range_limited": limited}
    hx, hy = homology(X, range(top + 1)), homology(Y, range(top + 1))
    comp, nt = pi0_map(f)
    bij = sorted(comp) == list(range(nt))
    cone = cone_homology(f, top)
    acyclic = all(g == ZERO for g in cone)
    same = hx == hy
    return {"passed": bij and same and acyclic, "range": [0, top], "range_limited": limited,
            "pi0_bijection": bij, "groups_equal": same, "cone_acyclic": acyclic,
            "source": [str(g) for g in hx], "target": [str(g) for g in hy]}


def certify_equivalence(f, strategy="homology", retract=None):
    """Highest tier reachable for f; ``tier=None`` is a refusal carrying the comparison.

    strategy: 'iso-search' (iso only), 'retract' (needs RetractData with i = f), 'homology'.
    The iso check always runs first, since it is cheap and strongest.
    """
    from .lifting import verify_retract
    from .transport import IsoCertificate

    X, Y = f.source, f.target
    if strategy not in ("iso-search", "retract", "homology"):
        raise SimplicialError(f"unknown strategy {strategy!r}")
    if f.is_valid() and f.is_iso():
        inv = f.inverse()
        cert = IsoCertificate(f, inv)
        top, limited = _common_top(X, Y)
        return EquivalenceCertificate(ISO, cert, (0, top), limited, ["inverse pair"])
    if strategy == "iso-search":
        return EquivalenceCertificate(None, None, (), False, ["not an isomorphism"])
    if strategy == "retract":
        if retract is None:
            raise SimplicialError("the retract strategy needs RetractData")
        if retract.i.components != f.components:
            return EquivalenceCertificate(None, None, (), False, ["retract data is for a different map"])
        v = verify_retract(retract)
        if v.passed:
            cmp = homology_comparison(f)
            return EquivalenceCertificate(RETRACT, retract, tuple(cmp["range"]), cmp["range_limited"],
                                          ["covariant deformation retract"], cmp)
        return EquivalenceCertificate(None, v, (), False, [f"retract check failed: {v.checks}"])
    cmp = homology_comparison(f)
    tier = HOMOLOGY if cmp["passed"] else None
    notes = ["homology proxy for weak equivalence"]
    return EquivalenceCertificate(tier, cmp, tuple(cmp["range"]), cmp["range_limited"], notes, cmp)


# -------------------------------------------------------- fiberwise checks
@dataclass
class FiberwiseReport:
    per_vertex: dict
    verdicts: dict
    witness: object = None

    @property
    def passed(self):
        return self.witness is None and all(c.certified for c in self.per_vertex.values())


def restricted_to_fibers(f, pX, pY, v):
    """The map of fibres over the base vertex v."""
    from .transport import fiber_over_vertex
    from .simplicial import OverObject

    FX, ix = fiber_over_vertex(OverObject(f.source, pX), v)
    FY, iy = fiber_over_vertex(OverObject(f.target, pY), v)
    pos = [{y: j for j, y in enumerate(iy.components[n])} for n in range(FY.N + 1)]
    comps = [tuple(pos[n][f.components[n][x]] for x in ix.components[n]) for n in range(FX.N + 1)]
    return SimplicialMap(FX, FY, comps, validate=False)


def fiberwise_equivalence(f, pX, pY, *, N=None, budget=None, require_fibrant=True):
    """Certify f: X -> Y over B fibre by fibre; both sides must be left fibrations."""
    from .lifting import classify_fibration

    verdicts = {}
    if require_fibrant:
        for name, p in (("source", pX), ("target", pY)):
            v = classify_fibration(p, "left", N, budget)
            verdicts[name] = v
            if not v.holds:
                raise SimplicialError(f"{name} structure map is not a left fibration ({v.result})")
    B = pX.target
    out = {}
    witness = None
    for b in range(B.size(0)):
        g = restricted_to_fibers(f, pX, pY, b)
        c = certify_equivalence(g, "homology")
        out[B.keys[0][b]] = c
        if not c.certified and witness is None:
            witness = {"vertex": B.keys[0][b], "source_components": len(pi0(g.source)),
                       "target_components": len(pi0(g.target))}
    return FiberwiseReport(out, verdicts, witness)


# ------------------------------------------------------- slice pipeline
@dataclass
class PipelineVerdict:
    status: str  # conclusion-certified | hypothesis-holds | inapplicable
    hypothesis: dict
    quasicategory: object = None
    face_maps: list = field(default_factory=list)
    pointwise: dict = field(default_factory=dict)
    diagonal: object = None
    squares: dict = field(default_factory=dict)
    witness: object = None

    def to_dict(self):
        return {"status": self.status,
                "hypothesis": {str(k): v.tier for k, v in self.hypothesis.items()},
                "quasicategory": None if self.quasicategory is None else self.quasicategory.result,
                "face_maps": [[str(b), d, r] for b, d, r in self.face_maps],
                "pointwise": {str(k): v.tier for k, v in self.pointwise.items()},
                "diagonal": None if self.diagonal is None else self.diagonal.tier,
                "squares": dict(self.squares), "witness": self.witness}


def quillen_a_pipeline(f, pX, pY, M, *, max_dim=None, budget=None):
    """Slice-wise hypothesis, face-map trivial fibrations, and the diagonal comparison.

    ``f: X -> Y`` over B with structure maps pX, pY.  ``M`` is the working
    level of slices and diagonals; B must reach 2M+1 and M + max_dim + 1.
    """
    from .lifting import classify_fibration, is_quasicategory
    from .slices import induced_slice_map, slice_face_map
    from .transport import diag_over, gamma, ladder_functor, over_construction_map

    B = pX.target
    max_dim = min(3, B.N - M - 1) if max_dim is None else max_dim
    hyp = {}
    witness = None
    for b in range(B.size(0)):
        g = induced_slice_map(f, pX, pY, 0, b, M)
        c = certify_equivalence(g, "homology")
        hyp[B.keys[0][b]] = c
        if not c.certified and witness is None:
            witness = {"vertex": B.keys[0][b], "source_slice_sizes": list(g.source.sizes()),
                       "target_slice_sizes": list(g.target.sizes())}
    if witness is not None:
        return PipelineVerdict("inapplicable", hyp, witness=witness)
    qc = is_quasicategory(B, min(B.N, 2 * M + 1), budget)
    faces, point = [], {}
    ok = qc.holds
    for k in range(1, max_dim + 1):
        for beta in B.nondegenerate(k):
            for pi in (pX, pY):
                v = classify_fibration(slice_face_map(pi, k, beta, M), "trivial", M, budget)
                faces.append((B.keys[k][beta], k, v.result))
                ok = ok and v.holds
    for k in range(0, max_dim + 1):
        for beta in B.nondegenerate(k):
            c = certify_equivalence(induced_slice_map(f, pX, pY, k, beta, M), "homology")
            point[B.keys[k][beta]] = c
            ok = ok and c.certified
    dmap, WX, WY = over_construction_map(f, pX, pY, M)
    DX, _ = diag_over(pX, M, WX)
    DY, _ = diag_over(pY, M, WY)
    diag_f = dmap.diagonal(DX.total, DY.total)
    dcert = certify_equivalence(diag_f, "homology")
    ok = ok and dcert.certified
    # the two squares of the zigzag commute
    lx, ly = ladder_functor(pX, M), ladder_functor(pY, M)
    Lf = SimplicialMap.from_keys(lx.over.total, ly.over.total,
                                 lambda n, k: (f.key_image(n, k[0]), k[1]), validate=False)
    fM = f.truncated(M)
    sq_iota = Lf.compose(lx.iota).components == ly.iota.compose(fM).components
    gx, _, _ = gamma(pX, M, lx, DX)
    gy, _, _ = gamma(pY, M, ly, DY)
    sq_gamma = Lf.compose(gx).components == gy.compose(diag_f).components
    squares = {"iota": sq_iota, "gamma": sq_gamma, "iota_valid": lx.iota.is_valid() and ly.iota.is_valid(),
               "gamma_valid": gx.is_valid() and gy.is_valid()}
    ok = ok and all(squares.values())
    status = "conclusion-certified" if ok else "hypothesis-holds"
    return PipelineVerdict(status, hyp, qc, faces, point, dcert, squares)
