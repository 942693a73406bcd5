"""Soundness sweep: eliminate quantifiers on a random corpus and check each result with the oracle."""

import argparse
import time
from collections import Counter

from nearvec import logic
from nearvec.errors import CapacityExceeded
from nearvec.logic.corpus import CorpusConfig, generate
from nearvec.space import make_space


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--twists", default="1,3")
    ap.add_argument("--card", choices=("infinite", "finite"), default="infinite")
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--atoms", default="1,4", help="min,max atoms per formula")
    ap.add_argument("--max-depth", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    S = make_space(args.p, tuple(int(k) for k in args.twists.split(",")), n=args.n, block_card=args.card)
    lo, hi = (int(a) for a in args.atoms.split(","))
    corpus = generate(CorpusConfig(atoms=(lo, hi), max_depth=args.max_depth), args.count, seed=args.seed)
    start = time.perf_counter()
    failures, dims, capacity = [], Counter(), 0
    for f in corpus:
        elim = logic.QuantifierEliminator(S)
        try:
            g = elim(f)
        except CapacityExceeded:
            capacity += 1
            continue
        exclusions = elim.max_exclusions if args.card == "infinite" else None
        rep = logic.equivalent(S, f, g, exclusions=exclusions, on_space=args.card == "finite")
        dims[rep.dims] += 1
        if not rep.ok:
            failures.append((logic.format_formula(f), logic.format_formula(g), rep.counterexample))
    elapsed = time.perf_counter() - start
    print(f"{S}: {len(corpus)} formulas, {len(failures)} failures, {capacity} over capacity, {elapsed:.1f}s")
    print("model dimensions:", dict(sorted(dims.items())))
    for f, g, cex in failures:
        print(f"  FAIL {f}\n       -> {g}\n       counterexample {cex}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
