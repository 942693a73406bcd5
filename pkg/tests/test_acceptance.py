"""The ten acceptance criteria; each test records one PASS/FAIL line."""

import itertools
import json
import random
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from nearvec import charmix, fbar, gf, logic
from nearvec.logic.corpus import CorpusConfig, generate
from nearvec.space import (
    TwistedSpace, compatible, decompose_blocks, in_quasi_kernel, induced_addition,
    is_regular, make_space, morley_report, quasi_kernel, scalar_act, validate_fgroup,
)

import mutations

BLOCK_SPACES = [
    (make_space(5, (1, 3)), 2),
    (make_space(7, (1, 5)), 2),
    (make_space(2, (1, 2), n=2), 1),
    (make_space(3, (1, 3), n=2), 1),
]


def test_c01_worked_example(criterion):
    S = make_space(5, (1, 3))
    act = scalar_act(S, 3, (2, 2))
    axes = {S.axis(i, a) for i in range(2) for a in range(5)}
    qk = quasi_kernel(S)
    criterion(1, act == (1, 4) and qk == axes and len(qk) == 9,
              f"3(2,2) = {act}; |Q(V)| = {len(qk)}, equal to the axis vectors: {qk == axes}")


def test_c02_axioms(criterion):
    checked = 0
    failures = []
    for p, n in ((2, 2), (5, 1), (7, 1), (3, 2)):
        F = gf.field_make(p, n)
        for m in (1, 2, 3):
            for ts in itertools.product(gf.mult_twists(F), repeat=m):
                S = TwistedSpace(F, ts)
                if not validate_fgroup(S).ok:
                    failures.append(str(S))
                checked += 1
    muts = mutations.all_mutations()
    wrong = [m.name for m in muts
             if validate_fgroup(m.group).violated != {m.target} or not mutations.NAIVE[m.target](m.group)]
    criterion(2, not failures and not wrong and len(muts) == 50,
              f"{checked} spaces pass F1-F4 ({len(failures)} fail); "
              f"{len(muts) - len(wrong)}/{len(muts)} mutations flag exactly their axiom")


def test_c03_blocks(criterion):
    ok = True
    parts = []
    for S, expected in BLOCK_SPACES:
        n = decompose_blocks(S).count
        good = n == expected and morley_report(S) == (n, 1) and is_regular(S) == (n == 1)
        ok &= good
        parts.append(f"{S.field.q}{S.twists}:{n}")
    extra = [make_space(5, (1, 3, 3)), make_space(5, (1, 1)), make_space(7, (1, 5, 1))]
    ok &= all(is_regular(S) == (decompose_blocks(S).count == 1) for S in extra)
    criterion(3, ok, "blocks " + ", ".join(parts) + "; Morley (n,1); regular iff one block")


def test_c04_induced_additions(criterion):
    pairs = 0
    ok = True
    for S, _ in BLOCK_SPACES:
        qk = [u for u in sorted(quasi_kernel(S)) if any(u)]
        for u in qk:
            plus = induced_addition(S, u)
            ok &= all(induced_addition(S, scalar_act(S, lam, u)) == plus for lam in range(1, S.field.q))
        for u, v in itertools.product(qk, repeat=2):
            compatible(S, u, v)  # raises if the two characterisations disagree
            pairs += 1
    criterion(4, ok, f"+_(lam u) = +_u on every quasi-kernel element; {pairs} compatible pairs agree")


def test_c05_ring(criterion):
    sizes = [len(fbar.image_ring(make_space(5, (1, 3)))), len(fbar.image_ring(make_space(7, (1, 5)))),
             len(fbar.image_ring(make_space(5, (1, 1))))]
    S = make_space(5, (1, 3))
    F = S.field
    n = decompose_blocks(S).count
    es = [fbar.separating_idempotent(S, j) for j in range(n)]
    phis = [fbar.phi_eval(S, e).components for e in es]
    ok = sizes == [25, 49, 5]
    for i, j in itertools.product(range(n), repeat=2):
        prod = fbar.tuple_mul(S, phis[i], phis[j])
        want = phis[i] if i == j else (0,) * n
        ok &= prod == want
        act = fbar.sum_act_table(S, es[i].compose(es[j], F))
        ok &= np.array_equal(act, fbar.sum_act_table(S, es[i]) if i == j else np.zeros(S.size, dtype=np.int64))
    total = phis[0]
    for p in phis[1:]:
        total = fbar.tuple_add(S, total, p)
    ok &= total == (1,) * n
    sum_all = es[0]
    for e in es[1:]:
        sum_all = sum_all.concat(e)
    ok &= np.array_equal(fbar.sum_act_table(S, sum_all), np.arange(S.size))
    ring = fbar.image_ring(S)
    agree = 0
    for t in ring:
        w = ring.witnesses[t]
        bij = len(np.unique(fbar.sum_act_table(S, w))) == S.size
        agree += fbar.is_automorphism(S, w) == bij == all(t)
    ok &= agree == 25
    criterion(5, ok, f"ring sizes {sizes}; idempotent laws hold; automorphism test agrees on {agree}/25")


def test_c06_aut_block_type(criterion):
    base = make_space(5, (1, 3))
    cases = [(make_space(5, (3, 1)), True), (make_space(5, (1, 3, 3)), True), (make_space(5, (1, 1)), False)]
    got = [fbar.aut_set_equal(base, other) for other, _ in cases]
    bt = [fbar.block_type(base) == fbar.block_type(other) for other, _ in cases]
    criterion(6, got == [w for _, w in cases] == bt, f"aut_set_equal {got}, block types equal {bt}")


def test_c07_qe_soundness(criterion):
    S = make_space(5, (1, 3), block_card="infinite")
    small = generate(CorpusConfig(atoms=(1, 4)), 200, seed=7)
    large = generate(CorpusConfig(atoms=(5, 12), max_depth=1), 40, seed=8)
    failures, dims_used = [], set()
    for f in small + large:
        elim = logic.QuantifierEliminator(S)
        g = elim(f)
        if not logic.is_quantifier_free(g):
            failures.append(logic.format_formula(f))
            continue
        rep = logic.equivalent(S, f, g, exclusions=elim.max_exclusions)
        atoms = logic.count_atoms(f)
        if not rep.ok or 5 ** rep.dims[0] <= atoms:
            failures.append(logic.format_formula(f))
        dims_used.add(rep.dims[0])
    criterion(7, not failures,
              f"{len(small) + len(large)} formulas, {len(failures)} failures, dimensions {sorted(dims_used)}")


def test_c08_degenerate(criterion):
    S = make_space(5, (1, 3), block_card="infinite")
    out = logic.eliminate_quantifiers(S, "E w. w+w+w+w+w = v")
    rep = logic.equivalent(S, out, "v = 0")
    form = logic.normalize_term(S, logic.parse_term("2*v + 3*v"))
    atom = logic.normalize_atom(S, logic.parse_formula("2*v + 3*v = 0"))
    criterion(8, rep.ok and form == {} and atom.is_constant and atom.eq,
              f"QE gives {logic.format_formula(out)!r}, equivalent to v = 0: {rep.ok}; "
              f"2*v + 3*v has form {form or 'zero'}")


def test_c09_mixed(criterion):
    demo = charmix.fbar_demo("1+.1+.1", charmix.mixed_vector(1, "t"))
    ok_demo = str(demo.image) == "(3, 0)" and not demo.automorphism
    rng = random.Random(9)

    def rat():
        return Fraction(rng.choice([-1, 1]) * rng.randint(1, 100), rng.randint(1, 100))

    s = charmix.sigma
    ok_mult = all(s(a * b) == s(a) * s(b) for a, b in ((rat(), rat()) for _ in range(1000)))
    ok_mult &= s(1) == charmix.RatFunc3.const(1) and s(-1) == charmix.RatFunc3.const(2)
    polys = [charmix.RatFunc3(p) for p in gf.irreducibles_enum(3, 2)] + [charmix.RatFunc3((1,)),
                                                                          charmix.RatFunc3((2, 0, 1))]
    vecs = [charmix.MixedVector(rat(), rng.choice(polys) * charmix.RatFunc3.const(rng.choice([1, 2])))
            for _ in range(100)]
    refuted = sum(charmix.qk_refute(v, 2) is not None for v in vecs)
    axes = [charmix.MixedVector(rat(), charmix.RatFunc3(())) for _ in range(20)]
    axes += [charmix.MixedVector(Fraction(0), p) for p in polys]
    ok_axes = all(charmix.qk_refute(v, 2) is None for v in axes)
    criterion(9, ok_demo and ok_mult and refuted == 100 and ok_axes,
              f"(1+.1+.1)(1,t) = {demo.image}, automorphism {demo.automorphism}; sigma multiplicative on "
              f"1000 pairs: {ok_mult}; {refuted}/100 refuted; axis vectors unrefuted: {ok_axes}")


def test_c10_determinism(criterion, tmp_path):
    desc = tmp_path / "space.json"
    desc.write_text(json.dumps({"field": {"p": 5, "n": 1}, "twists": [1, 3], "block_card": "infinite"}))
    runs = [["ring", str(desc)], ["idem", str(desc), "--block", "2"],
            ["qe", str(desc), "--formula", "E w. (w != v & 3*w = u + v)"]]
    same = 0
    for argv in runs:
        outs = [subprocess.run([sys.executable, "-m", "nearvec.cli", *argv, "--json"],
                               capture_output=True, check=True).stdout for _ in range(2)]
        same += outs[0] == outs[1] and bool(outs[0])
    criterion(10, same == len(runs), f"{same}/{len(runs)} commands byte-identical across runs")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
