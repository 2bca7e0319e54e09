"""Which small graphs have binomial edge ideals of regularity 3?

Walks through the isomorphism classes on n vertices, classifies each one
combinatorially and compares with the regularity of the lex initial ideal.
"""

import sys

from beireg import RegClass, enumerate_small_graphs, join_decompose, regularity_class, to_graph6
from beireg.oracle import regularity_initial


def census(n: int) -> None:
    print(f"graphs on {n} vertices")
    for G in enumerate_small_graphs(n):
        cls = regularity_class(G)
        ini = regularity_initial(G)
        flag = "" if (cls == RegClass.THREE) == (ini == 3) else "  <-- mismatch"
        print(f"  {to_graph6(G):6} {str(cls):12} ini reg {ini}{flag}")
        if cls == RegClass.THREE:
            print(f"         {join_decompose(G)}")


if __name__ == "__main__":
    census(int(sys.argv[1]) if len(sys.argv) > 1 else 4)
