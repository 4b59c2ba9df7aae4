"""Acceptance criteria, run over the full built-in corpus at truncation 3.

Each test prints one ``PASS criterion k`` or ``FAIL criterion k`` line (shown
even without ``-s``) and then asserts.  Run this file alone with
``pytest tests/test_acceptance.py -v``.
"""
import re
from collections import defaultdict

import pytest

from hocolim import homology, suites
from hocolim.transport import IsoCertificate
from oracles import sympy_homology

N = 3


@pytest.fixture(scope="module")
def corpus_run():
    """Every suite once, with each suite's certificates kept alongside its report."""
    out = {}
    for name in suites.SUITES:
        ctx = suites.Context(N, None)
        report, _ = suites.run_suite(name, N=N, ctx=ctx)
        out[name] = (report, ctx)
    return out


def verdict(capsys, k, text, ok, detail=""):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {text}" + (f" [{detail}]" if detail else ""))
    assert ok, f"criterion {k}: {detail}"


def checks(run, suite):
    return run[suite][0]["checks"]


def no_failures(cs):
    return [(c["instance"], c["check"], c["status"]) for c in cs if c["status"] not in (suites.PASS, suites.SKIP)]


def test_criterion_1_adjunction_bijections(corpus_run, capsys):
    cs = checks(corpus_run, "adjunction-bijections")
    by = defaultdict(dict)
    for c in cs:
        by[c["instance"]][c["check"]] = c
    exact = True
    for inst in by.values():
        r = inst["r-adjunction"]["details"]
        exact &= r["hom_r_shriek_X_F"] == r["hom_X_r_star_F"] and r["bijection"]
        h = inst["h-adjunction"]
        if h["status"] == suites.PASS:
            exact &= h["details"]["hom_h_shriek_F_X"] == h["details"]["hom_F_h_star_X"] and h["details"]["bijection"]
    both = [n for n, inst in by.items()
            if inst["r-adjunction"]["status"] == inst["h-adjunction"]["status"] == suites.PASS]
    bad = no_failures(cs)
    verdict(capsys, 1, "r and h adjunction hom-sets in explicit bijection",
            exact and not bad and len(both) >= 10, f"{len(both)} triples with both, {len(by)} total, bad={bad[:3]}")


def test_criterion_2_formula_isomorphisms(corpus_run, capsys):
    cs = checks(corpus_run, "formula-isomorphisms")
    kinds = {c["instance"].split(" ")[0] for c in cs}
    need = {"r-formulas", "hr-diag", "interval", "pullback", "horn-pushout"}
    pull_both = all(c["details"]["h_shriek"] == c["details"]["r_star"] == "holds"
                    for c in cs if c["instance"].startswith("pullback"))
    pushouts = all(c["details"]["pushout"] for c in cs if c["instance"].startswith("horn-pushout"))
    bad = no_failures(cs)
    verdict(capsys, 2, "formula isomorphisms are exact",
            need <= kinds and pull_both and pushouts and not bad,
            f"{len(cs)} isomorphisms over {sorted(kinds)}, bad={bad[:3]}")


def test_criterion_3_left_transfer_and_counterexample(corpus_run, capsys):
    cs = checks(corpus_run, "left-fibration-transfer")
    left = [c for c in cs if c["check"] == "left-fibration"]
    trivial = [c for c in cs if c["check"] == "trivial-fibration" and c["status"] == suites.PASS]
    bad = no_failures(cs)
    ce = {c["check"]: c for c in checks(corpus_run, "left-only-counterexample")}
    horn = ce["right-fibration-fails-at-horn-1-1"]
    found = (horn["outcome"] == "fails" and horn["details"]["witness"] == "horn(1,1)"
             and horn["details"]["witness_rechecked"] and ce["left-fibration"]["outcome"] == "holds")
    verdict(capsys, 3, "pointwise Kan maps give left fibrations; the horn(1,1) counterexample is found",
            not bad and all(c["status"] == suites.PASS for c in left) and trivial and found,
            f"{len(left)} left, {len(trivial)} trivial, counterexample={found}, bad={bad[:3]}")


def test_criterion_4_generator_images(corpus_run, capsys):
    cs = checks(corpus_run, "generator-images")
    seen = defaultdict(set)
    for c in cs:
        cat, horn, b = c["instance"].split(" | ")
        n, k = map(int, re.match(r"horn\((\d),(\d)\)", horn).groups())
        seen[cat].add((n, k, b[2:]))
    from hocolim import corpus
    complete = all(seen[cat] == {(n, k, b) for n in range(1, 4) for k in range(n + 1)
                                 for b in corpus.category(cat).objects} for cat in seen)
    bad = no_failures(cs)
    verdict(capsys, 4, "h_! of each projective trivial generator is horn x N(b/A) -> simplex x N(b/A)",
            complete and not bad and len(seen) >= 7, f"{len(cs)} generators over {len(seen)} categories")


def test_criterion_5_explicit_retracts(corpus_run, capsys):
    cs = checks(corpus_run, "explicit-retracts")
    ok_by_case, mutants = defaultdict(int), defaultdict(int)
    for c in cs:
        case = c["instance"].split(" ")[0]
        if c["check"] == "retract-verifies" and c["status"] == suites.PASS:
            ok_by_case[case] += 1
        if c["check"] == "reversed-mutant" and c["status"] == suites.PASS:
            assert c["outcome"] == "fails"
            mutants[case] += 1
    cases = ("under-slice", "simplex-vertex", "constant-path", "vertex-diagonal")
    bad = no_failures(cs)
    verdict(capsys, 5, "explicit deformation retracts verify and reversed mutants fail",
            all(ok_by_case[c] >= 10 and mutants[c] > 0 for c in cases) and not bad,
            f"verified={dict(ok_by_case)}, mutants rejected={dict(mutants)}")


def _discrete_homology(size, top):
    return (["0"] if size == 0 else ["Z" if size == 1 else f"Z^{size}"]) + ["0"] * top


def test_criterion_6_tau_components(corpus_run, capsys):
    cs = checks(corpus_run, "tau-components")
    ok, count = True, 0
    for c in cs:
        for b, v in c["details"]["per_object"].items():
            count += 1
            top = len(v["homology"]) - 1
            ok &= v["components_with_initial_and_terminal"] and v["factorization_iso"]
            ok &= v["homology"] == _discrete_homology(v["hom_set_size"], top)
            ok &= v["range_limited"] or top >= N - 1
    bad = no_failures(cs)
    verdict(capsys, 6, "tau components have initial and terminal objects and discrete homology",
            ok and not bad, f"{count} (a, b) pairs over {len(cs)} representables")


def test_criterion_7_kan_transfer(corpus_run, capsys):
    cs = checks(corpus_run, "kan-transfer")
    kan = [c for c in cs if c["check"] == "kan-fibration"]
    verdict(capsys, 7, "r^*F is a Kan fibration for Kan diagrams with equivalence actions",
            not no_failures(cs) and kan and all(c["status"] == suites.PASS for c in kan),
            f"{len(kan)} diagrams")


def test_criterion_8_slice_pipeline(corpus_run, capsys):
    cs = checks(corpus_run, "slice-pipeline")
    by = {(c["instance"], c["check"]): c for c in cs}
    bases = sorted({c["instance"] for c in cs})
    ok = bases == ["[1]", "[2]", "[3]"]
    for b in bases:
        ok &= by[(b, "base-quasicategory")]["outcome"] == "holds"
        ok &= all(v[-1] == "holds" for v in by[(b, "slice-face-maps-trivial")]["details"]["verdicts"])
        ok &= by[(b, "pipeline-initial-vertex")]["details"]["status"] == "conclusion-certified"
        fin = by[(b, "pipeline-final-vertex")]["details"]
        ok &= fin["status"] == "inapplicable" and fin["witness"] is not None
    verdict(capsys, 8, "slice face maps are trivial fibrations; pipeline certifies and refuses with a witness",
            ok and not no_failures(cs), f"bases {bases}")


def test_criterion_9_determinism(corpus_run, capsys):
    differ = []
    for name, (report, _) in corpus_run.items():
        again, _ = suites.run_suite(name, N=N)
        if suites.canonical_report(again) != suites.canonical_report(report):
            differ.append(name)
    verdict(capsys, 9, "suite reports are byte-identical across runs", not differ,
            f"{len(corpus_run)} suites, differing={differ}")


def test_criterion_10_certificate_consistency(corpus_run, capsys):
    counts, bad = defaultdict(int), []
    for name, (_, ctx) in corpus_run.items():
        for kind, obj, cert in ctx.certificates:
            if isinstance(cert, IsoCertificate):
                counts["ISO"] += 1
                if not cert.check():
                    bad.append((name, kind, "iso"))
            elif cert.tier == homology.ISO:
                counts["ISO"] += 1
                if not cert.witness.check():
                    bad.append((name, kind, "iso"))
            elif cert.tier == homology.RETRACT:
                counts["RETRACT"] += 1
                cmp = homology.homology_comparison(obj)
                lo_hi = cmp["range"]
                top = lo_hi[1] if lo_hi else -1
                same = top < 0 or sympy_homology(obj.source, top) == sympy_homology(obj.target, top)
                if not (cmp["passed"] and same):
                    bad.append((name, kind, "retract"))
            elif cert.tier == homology.HOMOLOGY:
                counts["HOMOLOGY"] += 1
                if not homology.homology_comparison(obj)["passed"]:
                    bad.append((name, kind, "homology"))
    verdict(capsys, 10, "every certificate agrees with its oracle",
            not bad and counts["ISO"] and counts["RETRACT"], f"{dict(counts)}, inconsistencies={bad[:3]}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
