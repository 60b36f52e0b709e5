"""The order-3 picture: the Steiner cubic factors as s * g, and its nullvariety
is cut out by those two polynomials.

Walk-through on one tree:
  * p = s * g with s = sum x_r and g = 3 * sum d(i,j) x_i x_j;
  * Euler-type identity sum_r x_r D_r p = 3 s g;
  * s^3 = sum_r f_r D_r p with explicit degree-based cofactors, so any point
    killing the gradient also kills s -- coordinates of nullvectors sum to 0;
  * no single D_r p is divisible by s;
  * membership (s = 0 and g = 0) is equivalent to gradient vanishing;
  * any n-2 coordinates extend to a nullvector by solving one quadratic.
"""

from fractions import Fraction

from steinerdh import (SparsePoly, complete_nullvector, distance_quadratic,
                       divide_by_linear, membership_sg, order3_form,
                       random_tree, s3_cofactors, s_form, verify_nullvector,
                       verify_not_divisible, verify_s3_decomposition)


def main():
    t = random_tree(6, seed=3)
    n = t.n
    print("tree edges:", list(t.edges))

    p = order3_form(t)
    s = s_form(n)
    g = distance_quadratic(t)
    print(f"\nSteiner cubic has {len(p.terms)} terms")
    print("p == s * g:", p == s * g)
    print("p / s recovers g:", divide_by_linear(p, s) == g)

    euler = SparsePoly.zero(n)
    for r in range(1, n + 1):
        euler = euler + SparsePoly.variable(n, r) * p.partial(r)
    print("sum_r x_r D_r p == 3 s g:", euler == 3 * s * g)

    total = SparsePoly.zero(n)
    for r, f in enumerate(s3_cofactors(t), start=1):
        total = total + f * p.partial(r)
    print("s^3 == sum_r f_r D_r p:", total == s ** 3,
          "| helper:", verify_s3_decomposition(t))
    print("no D_r p divisible by s:", verify_not_divisible(t))

    print("\ncompletion: fix coordinates 3..n, solve a quadratic for the rest")
    tail = [Fraction(1), Fraction(-2), Fraction(1, 3), Fraction(0)][: n - 2]
    for cand in complete_nullvector(t, tail):
        a, b, c = cand.quadratic
        print(f"  quadratic {a} * a1^2 + ({b}) * a1 + ({c}) = 0")
        if cand.exact:
            print("    exact root , membership (s=0, g=0):",
                  membership_sg(t, cand.point),
                  "| gradient vanishes:",
                  verify_nullvector(t, 3, cand.point).exact_zero)
        else:
            print(f"    root leaves the field; 128-bit residual {cand.residual:.3g}")

    print("\nzero-sum: every nullvector has coordinates summing to 0")
    from steinerdh import canonical_odd_nullvector
    y = canonical_odd_nullvector(t, 3)
    total = y[0]
    for x in y[1:]:
        total = total + x
    print("  canonical certificate:", {v + 1: str(y[v]) for v in range(n)
                                       if not y[v].is_zero()})
    print("  sum of coordinates is zero:", total.is_zero())


if __name__ == "__main__":
    main()
