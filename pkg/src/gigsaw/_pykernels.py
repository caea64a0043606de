"""Pure-Python versions of the hot loops; the compiled module mirrors these."""

from __future__ import annotations


def connected_subsets(adj: list[list[int]], cap: int) -> list[tuple[int, ...]]:
    """Every connected vertex set of size <= cap, each exactly once, sorted.

    Grows sets from their smallest vertex, extending only through vertices
    that are larger and not already adjacent to the set (ESU enumeration).
    """
    n = len(adj)
    nbr = [0] * n
    for v, ws in enumerate(adj):
        for w in ws:
            nbr[v] |= 1 << w
    out: list[int] = []

    def grow(members: int, size: int, ext: int, closed: int, low: int) -> None:
        out.append(members)
        if size == cap:
            return
        while ext:
            w = ext.bit_length() - 1
            ext &= ~(1 << w)
            fresh = nbr[w] & ~closed & ~((1 << (low + 1)) - 1)
            grow(members | 1 << w, size + 1, ext | fresh, closed | nbr[w], low)

    for v in range(n):
        if cap < 1:
            break
        ext = nbr[v] & ~((1 << (v + 1)) - 1)
        grow(1 << v, 1, ext, nbr[v] | 1 << v, v)
    sets = [tuple(i for i in range(n) if m >> i & 1) for m in out]
    sets.sort(key=lambda s: (len(s), s))
    return sets


def summand_search(target: tuple[int, ...], cands: list[tuple[int, ...]], ids: list[int]):
    """Multiplicities ``{id: n}`` with the candidates summing to ``target``, else None."""
    keep = [j for j, c in enumerate(cands) if any(c)]
    cands = [cands[j] for j in keep]
    ids = [ids[j] for j in keep]
    pivots: dict[int, list[int]] = {}
    firsts = []
    for j, c in enumerate(cands):
        first = next(i for i, x in enumerate(c) if x)
        firsts.append(first)
    for i in range(len(target)):
        pivots[i] = [j for j, c in enumerate(cands) if c[i]]
    failed: set[tuple[int, ...]] = set()
    chosen: list[int] = []

    def dfs(rem: tuple[int, ...]) -> bool:
        i = next((k for k, x in enumerate(rem) if x), None)
        if i is None:
            return True
        if rem in failed:
            return False
        for j in pivots[i]:
            # coordinates before i are already zero, so c must start at i
            if firsts[j] != i:
                continue
            c = cands[j]
            if all(x <= r for x, r in zip(c, rem)):
                chosen.append(j)
                if dfs(tuple(r - x for r, x in zip(rem, c))):
                    return True
                chosen.pop()
        failed.add(rem)
        return False

    if not any(target) or not dfs(tuple(target)):
        return None
    out: dict[int, int] = {}
    for j in chosen:
        out[ids[j]] = out.get(ids[j], 0) + 1
    return dict(sorted(out.items()))
