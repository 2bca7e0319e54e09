"""A weakly closed graph whose regularity is far above the longest induced path.

The cone over q disjoint paths is weakly closed, yet its regularity grows
like the total number of path vertices while the longest induced path stays
as long as the longest single path.
"""

from beireg import build_counterexample, regularity_certified
from beireg.graph import is_weakly_closed, longest_induced_path_length


def show(q: int, t: tuple[int, ...], confirm: bool) -> None:
    ce = build_counterexample(q, t)
    wc = is_weakly_closed(ce.graph)
    ell = longest_induced_path_length(ce.graph)
    print(f"q={q} t={t}: n={ce.graph.n}, weakly closed {wc.weakly_closed}, "
          f"l+1 = {ell + 1}, reg = {ce.predicted_reg}")
    if confirm:
        r = regularity_certified(ce.graph)
        print(f"  initial ideal route: {r.initial_values}, status {r.status}")


if __name__ == "__main__":
    show(2, (3, 3), confirm=True)
    show(2, (4, 4), confirm=False)
    for q in range(2, 6):
        ce = build_counterexample(q, [q * q] * q)
        print(f"q={q}: reg / (l+1) = {ce.predicted_reg / ce.ell_plus_1:.2f}")
