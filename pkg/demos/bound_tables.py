"""Print the multiplicity bound tables across dimension, rank and index.

Run with: python3 demos/bound_tables.py
"""

from toriq import akln_bound, conjecture_bound, fake_wps_bound, fano_bound, mcmullen, qgorenstein_bound, sylvester


def main():
    print("Sylvester numbers:", [sylvester(n) for n in range(1, 7)])
    print()

    print("index-1 multiplicity bounds (rows: dim, cols: rank 1..6)")
    for n in (2, 3, 4, 5):
        row = [fano_bound(n, r) for r in range(1, 7)]
        print(f"  n={n}:", row, "  (minimum facet counts:", [mcmullen(n, r) for r in range(1, 7)], ")")
    print("  sharp rank-1 values:", {n: akln_bound(n) for n in (2, 3, 4, 5)})
    print()

    print("canonical bounds at higher index (dim 3, rank 2)")
    for k in (1, 2, 3, 6):
        print(f"  k={k}:", qgorenstein_bound(3, 2, k))
    print()

    print("rank-1 bounds without the canonical assumption (dim 2 and 3)")
    for k in (1, 2, 3, 6):
        print(f"  k={k}:", fake_wps_bound(2, k), fake_wps_bound(3, k))
    print()

    print("conjectural rank-stratified bounds at index 2")
    for n in (2, 3):
        print(f"  n={n}:", [conjecture_bound(n, r, 2) for r in range(1, 5)])


if __name__ == "__main__":
    main()
