"""Brute-force oracles, deliberately independent of the library's algorithms."""

from itertools import combinations

from latsum import Group


def trial_division_sigma(n: int) -> int:
    """Divisor sum by direct scan of every candidate divisor."""
    return sum(d for d in range(1, n + 1) if n % d == 0)


def brute_force_subgroup_masks(group: Group) -> set[int]:
    """All subgroup bitmasks by testing every identity-containing subset.

    Only subset sizes dividing the order are tried (Lagrange); intended for
    orders up to about 16.
    """
    n = group.order
    table = group.table
    masks = set()
    rest = list(range(1, n))
    for size in range(1, n + 1):
        if n % size != 0:
            continue
        for extra in combinations(rest, size - 1):
            subset = (0,) + extra
            member = set(subset)
            if all(table[a][b] in member for a in subset for b in subset):
                mask = 0
                for a in subset:
                    mask |= 1 << a
                masks.add(mask)
    return masks


def naive_permutation_closure(degree: int, gens) -> set[tuple[int, ...]]:
    """Repeated pairwise composition until the set stabilizes."""
    elems = {tuple(range(degree))}
    elems.update(tuple(g) for g in gens)
    while True:
        new = {tuple(a[x] for x in b) for a in elems for b in elems}
        if new <= elems:
            return elems
        elems |= new


def naive_order_census(group: Group) -> dict[int, int]:
    """Subgroup census via the brute-force subset oracle."""
    census: dict[int, int] = {}
    for mask in brute_force_subgroup_masks(group):
        size = mask.bit_count()
        census[size] = census.get(size, 0) + 1
    return dict(sorted(census.items()))
