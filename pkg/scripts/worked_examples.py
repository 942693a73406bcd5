"""Print the standard worked examples: F_5 with twists (1, 3) and the mixed-characteristic demo."""

from nearvec import charmix, fbar, logic
from nearvec.space import decompose_blocks, induced_addition, make_space, quasi_kernel, scalar_act


def main():
    S = make_space(5, (1, 3), block_card="infinite")
    F = S.field
    print(f"space {S}")
    print(f"  3 * (2,2) = {scalar_act(S, 3, (2, 2))}")
    print(f"  |Q(V)| = {len(quasi_kernel(S))}")
    print(f"  1 +_(0,1) 1 = {induced_addition(S, (0, 1))(1, 1)}")
    print(f"  blocks {decompose_blocks(S).blocks}")
    ring = fbar.image_ring(S)
    print(f"  |Phi(Fbar)| = {len(ring)}")
    for text in ("1+.1", "1+.1+.1", "1+.1+.1+.3", "1+.1+.1+.1+.1"):
        s = fbar.parse_formal_sum(text, F)
        print(f"  Phi({text}) = {fbar.phi_eval(S, s).components}, automorphism {fbar.is_automorphism(S, s)}")
    for j in range(decompose_blocks(S).count):
        e = fbar.separating_idempotent(S, j)
        print(f"  e_{j + 1} = {e.format(F)}  ->  {fbar.phi_eval(S, e).components}")
    for text in ("E w. 2*w = v", "E w. (w = v & w = u)", "E w. w+w+w+w+w = v", "E w. w != v"):
        print(f"  QE[{text}] = {logic.format_formula(logic.eliminate_quantifiers(S, text))}")

    print("mixed characteristic Q x F_3(t)")
    for q in ("2", "6", "-1/2"):
        print(f"  sigma({q}) = {charmix.sigma(charmix.parse_rational(q))}")
    for terms, v in (("1+.1", (1, "1")), ("1+.1+.1", (1, "t"))):
        d = charmix.fbar_demo(terms, charmix.mixed_vector(*v))
        print(f"  ({terms}) * {charmix.mixed_vector(*v)} = {d.image}, automorphism {d.automorphism}")
    a, b = charmix.qk_refute(charmix.mixed_vector(1, 1))
    print(f"  (1, 1) is outside Q(V): alpha = {a}, beta = {b}")


if __name__ == "__main__":
    main()
