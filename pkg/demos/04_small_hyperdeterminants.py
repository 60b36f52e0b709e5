"""The hyperdeterminants we can actually evaluate, and what they say.

Order 2 is the classical determinant.  For order 3 in dimension 2 there is
Cayley's closed formula.  Everything larger is certified indirectly, through
nullvectors -- including the surprise at order 7: the two-vertex tree, whose
hyperdeterminant is nonzero for k = 2..6 and 8..12, *does* admit an exact
nullvector whenever k = 1 (mod 6).
"""

from steinerdh import (build_steiner, cayley_222, det_order2, prufer_decode,
                       two_vertex_nullvector_witness, verify_k2_no_nullvector,
                       verify_form_nullvector, verify_nullvector,
                       degenerate_nullvector, zero_degenerate)


def main():
    k2 = prufer_decode(2, [])

    print("order 2: determinant of the 2x2 distance matrix:", det_order2(k2))

    h = build_steiner(k2, 3)
    print("\n2x2x2 Steiner hypermatrix entries:", h.flat())
    print("Cayley hyperdeterminant:", cayley_222(h), "(nonzero: no nullvector)")

    hz = zero_degenerate(h)
    print("\nafter zeroing degenerate entries:", hz.flat())
    print("Cayley hyperdeterminant:", cayley_222(hz))
    pt = degenerate_nullvector(hz)
    print("unit-vector nullvector verifies:",
          verify_form_nullvector(hz, pt).exact_zero,
          "(degenerate-zeroed matrices always vanish for order >= 3)")

    print("\ntwo-vertex nonvanishing scan, orders 2..13:")
    for k in range(2, 14):
        ok = verify_k2_no_nullvector(k)
        if ok:
            print(f"  k={k:2d}: no root of unity survives -> hyperdeterminant nonzero")
        else:
            witness = two_vertex_nullvector_witness(k)
            rep = verify_nullvector(k2, k, witness)
            print(f"  k={k:2d}: (1, zeta_3) survives -- (1+zeta_3)^{k - 1} = 1 -- "
                  f"exact nullvector verified: {rep.exact_zero}"
                  " -> hyperdeterminant ZERO")


if __name__ == "__main__":
    main()
