"""Walk through the quotient family of a small contraction of the
blow-up of P^3 in two points.

The variety X is Gorenstein Fano with free class group, so it is its own
universal 1-covering; its weight group has order four, and the four
subgroup classes give the complete list of Fano varieties sharing its
weight matrix, paired with their polar partners by complementary
multiplicities.

Run with: python3 demos/blowup_quotient_family.py
"""

from toriq import (
    FanData,
    IntMatrix,
    analyze,
    enumerate_fano_family,
    subgroups,
)

V = IntMatrix(
    [[1, 0, 0, 0, -1, 1], [0, 1, 0, 0, -1, 1], [0, 0, 1, -1, -1, 1]]
)
SIGMA = [
    (1, 3, 4), (1, 2, 4), (0, 3, 4), (0, 2, 4), (0, 1, 3, 5), (1, 2, 5), (0, 2, 5),
]


def main():
    fan = FanData(V, SIGMA)
    cd = analyze(V, fan)
    print("dim n =", cd.n, " rank r =", cd.r, " dual rank r0 =", cd.r_polar)
    print("weight matrix Q =")
    for row in cd.Q.data:
        print("   ", list(row))
    print("multiplicity     =", cd.mult)
    print("weight group     =", cd.weight_group_type, " (order", cd.weight_order, ")")
    print("modulus |Q|      =", cd.modulus, "   polar modulus |Q0| =", cd.modulus_polar)
    print("degree (-K_X)^3  =", cd.degree_scaled)
    print("dual cover degree =", cd.dual_cover_degree)
    print()

    print(len(subgroups(cd.weight_group_type)), "subgroups of the weight group")
    fam = enumerate_fano_family(cd.Q)
    print(len(fam), "families up to lattice equivalence:")
    for sub, mat, mult in fam:
        cdq = analyze(mat, FanData(mat, fan.max_cones))
        polar_degree = cdq.mult * cdq.modulus  # degree of the polar partner
        print(
            f"  mult {mult}: degree {cdq.degree_scaled}, "
            f"polar degree {polar_degree}, "
            f"fan matrix rows {[list(r) for r in mat.data]}"
        )
    print()
    print("multiplicity pairs multiply to the weight order:", cd.weight_order)


if __name__ == "__main__":
    main()
