"""Secondary-fan geometry of an ambient Mori-dream-space completion.

The sharp completion Z of the ambient variety puts the anticanonical
class on the boundary of its nef cone, so no anticanonical multiple is
ample there. Walking to the secondary-fan cell that contains the class
in its relative interior produces the small modification Z' that carries
the polarization, merging four simplicial cones into one.

Run with: python3 demos/secondary_fan_walk.py
"""

from toriq import (
    FanData,
    IntMatrix,
    analyze,
    eff_cone,
    fan_from_point,
    gale_dual,
    is_qfano_weight,
    mds_multiplicity,
    mov_cone,
    nef_cone,
    qgorenstein_bound,
)

V = IntMatrix([[1, 0, 5, -2, -3], [0, 1, 3, -3, -2], [0, 0, 6, -3, -3]])
FAN_Z = [(2, 3, 4), (1, 2, 4), (0, 3, 4), (0, 1, 4), (0, 1, 2), (0, 2, 3)]


def main():
    q = gale_dual(V)
    print("weight matrix rows:", [list(r) for r in q.data])
    print("effective cone:", eff_cone(q).generators)
    print("moving cone:   ", mov_cone(q).generators)
    anti = tuple(sum(r) for r in q.data)
    print("anticanonical class:", anti)
    print()

    fan_z = FanData(V, FAN_Z)
    print("completion Z: nef cone:", nef_cone(q, fan_z).generators)
    print("  anticanonically polarized:", is_qfano_weight(q, fan_z))

    fan_zp = fan_from_point(q, anti, fan_matrix=V)
    print("cell fan Z':", fan_zp.cones_1based())
    print("  nef cone:", nef_cone(q, fan_zp).generators)
    print("  anticanonically polarized:", is_qfano_weight(q, fan_zp))
    print()

    cd = analyze(V, fan_zp)
    print("weight group:", cd.weight_group_type, "of order", cd.weight_order)
    print("multiplicity of the completion:", mds_multiplicity(q, fan_zp))
    print(
        "rank-stratified canonical bound at index 6:",
        qgorenstein_bound(3, max(cd.r, cd.r_polar), 6),
    )


if __name__ == "__main__":
    main()
