"""Regularity of a join against the regularities of its two factors.

Checks, over every pair of small graphs, that the initial ideal of the join
has regularity max(reg G1, reg G2, 3), or 2 when both factors are complete.
"""

from beireg import enumerate_small_graphs, verify_join_regularity


def main(max_n: int = 3, p: int = 2) -> None:
    small = [G for n in range(1, max_n + 1) for G in enumerate_small_graphs(n)]
    failures = 0
    for G1 in small:
        for G2 in small:
            rep = verify_join_regularity(G1, G2, p=p)
            failures += not rep.passed
            d = rep.details
            print(f"{d['G1']:>4} * {d['G2']:<4} reg {d['join']}  predicted {d['predicted']}")
    print(f"{len(small) ** 2} pairs, {failures} failures")


if __name__ == "__main__":
    main()
