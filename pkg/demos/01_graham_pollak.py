"""Distance matrices of trees: exact determinants, the closed-form inverse,
and the row vector that sums every row of D to 1.

The punch line: det(D) depends on the tree only through its vertex count.
"""

from fractions import Fraction

from steinerdh import (c_coefficients, determinant_exact, distance_matrix,
                       gl_inverse, graham_pollak_value, path_tree, random_tree,
                       star_tree)


def show(t, name):
    D = distance_matrix(t)
    det = determinant_exact(D)
    predicted = graham_pollak_value(t.n)
    print(f"{name} (n={t.n})")
    for row in D.rows:
        print("   ", [int(x) for x in row])
    print(f"    det = {det}, closed form -(n-1)(-2)^(n-2) = {predicted}",
          "OK" if det == predicted else "MISMATCH")

    inv = gl_inverse(t)
    print("    degree/adjacency inverse * D == I:",
          (inv @ D).is_identity())

    c = c_coefficients(t)
    print(f"    c = {[str(x) for x in c]}")
    print("    c * D == all-ones row:", D.row_times(c) == [Fraction(1)] * t.n,
          f"; sum(c) = {sum(c)} = 2/(n-1)")
    print()


def main():
    print("=== determinants that only see the vertex count ===\n")
    show(path_tree(3), "path 1-2-3")
    show(star_tree(4), "star K_{1,3}")
    show(path_tree(6), "path on 6")

    print("same n, different shapes, same determinant:")
    for seed in range(4):
        t = random_tree(9, seed)
        det = determinant_exact(distance_matrix(t))
        degs = sorted(t.degrees[1:], reverse=True)
        print(f"    seed {seed}: degree sequence {degs}  det = {det}")
    print(f"    closed form for n=9: {graham_pollak_value(9)}")


if __name__ == "__main__":
    main()
