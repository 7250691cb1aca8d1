"""A fake weighted projective plane of Gorenstein index 6.

X is the order-4 quotient of P(1,3,4). Its covering has index 3, so the
factor is 2, and the factor-2 extension of the weight group is where the
classification of such quotients lives. The unitary 1-covering recovers
the intermediate factor-1 quotient.

Run with: python3 demos/fake_wps_index_six.py
"""

from toriq import (
    IntMatrix,
    analyze,
    enumerate_qgorenstein_family,
    face_fan,
    fmatrix_index,
    snf,
    unitary_cover,
)

V = IntMatrix([[1, 9, -7], [0, 16, -12]])


def main():
    fan = face_fan(V)
    cd = analyze(V, fan)
    print("weights:", list(cd.Q.data[0]))
    print("index k =", cd.k, "  covering index =", cd.k_hat, "  factor h =", cd.h)
    print("multiplicity =", cd.mult, " covering group =", cd.G)
    print("weight group =", cd.weight_group_type)
    print("factor-2 extension =", cd.h_extension_type)
    print("normal forms:",
          snf(cd.B.t()).diagonal, snf(cd.A.t()).diagonal, snf((cd.A * 2).t()).diagonal)
    print()

    v1 = unitary_cover(V, fan)
    print("unitary 1-covering fan matrix:", [list(r) for r in v1.data])
    print("its index:", fmatrix_index(v1), "(factor 1, as it must be)")
    print()

    fam = enumerate_qgorenstein_family(cd.Q, 1)
    print("factor-1 subgroups:", [s.order for (s, _, _) in fam.kept])
    for sub, mat, witness in fam.rejected:
        print(
            f"rejected subgroup of order {sub.order}: column {witness + 1} of",
            [list(r) for r in mat.data], "is not primitive",
        )


if __name__ == "__main__":
    main()
