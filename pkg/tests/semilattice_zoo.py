"""Exhaustive generation of all meet-semilattices with zero, up to iso.

Posets on {0..n-1} with 0 as bottom are generated with labels forming a
linear extension (up-sets only point at higher indices), every pair is
required to have a greatest lower bound, and the resulting meet tables are
deduplicated by canonical relabeling.  Adjoining a top to such a
semilattice gives a lattice and vice versa, so the per-size counts must
match the known unlabeled lattice counts (OEIS A006966, shifted by one).
"""

from itertools import permutations

from ample import validate_inverse_semigroup

EXPECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 5, 5: 15, 6: 53}


def _posets_with_bottom(n):
    """Yield up-set masks (up[i] = {j : i <= j}) for posets with bottom 0."""
    full = (1 << n) - 1
    up = [0] * n

    def rec(i):
        if i < 0:
            if up[0] == full:
                yield tuple(up)
            return
        if i == 0:
            up[0] = full
            for j in range(1, n):
                if up[j] & ~full:
                    return
            yield from rec(-1)
            return
        base = 1 << i
        higher = full & ~((1 << (i + 1)) - 1)
        free = higher
        sub = free
        while True:
            mask = base | sub
            ok = True
            rest = sub
            while rest:
                low = rest & -rest
                j = low.bit_length() - 1
                if up[j] & ~mask:
                    ok = False
                    break
                rest ^= low
            if ok:
                up[i] = mask
                yield from rec(i - 1)
            if sub == 0:
                break
            sub = (sub - 1) & free

    yield from rec(n - 1)


def _meet_table(up, n):
    """Meet table from up-sets, or None when some pair lacks a glb."""
    low = [0] * n
    for i in range(n):
        for k in range(n):
            if up[k] >> i & 1:
                low[i] |= 1 << k
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            common = low[i] & low[j]
            maximal = [
                k
                for k in range(n)
                if common >> k & 1 and up[k] & common == 1 << k
            ]
            if len(maximal) != 1:
                return None
            table[i][j] = maximal[0]
    return table


def _canonical(table, n):
    best = None
    for perm in permutations(range(1, n)):
        relabel = (0,) + perm
        inverse = [0] * n
        for new, old in enumerate(relabel):
            inverse[old] = new
        candidate = tuple(
            tuple(inverse[table[relabel[i]][relabel[j]]] for j in range(n))
            for i in range(n)
        )
        if best is None or candidate < best:
            best = candidate
    return best


def all_semilattices_upto(max_size):
    """All semilattices with zero of each size, as validated semigroups."""
    out = {}
    for n in range(1, max_size + 1):
        seen = set()
        tables = []
        for up in _posets_with_bottom(n):
            table = _meet_table(up, n)
            if table is None:
                continue
            canon = _canonical(table, n)
            if canon not in seen:
                seen.add(canon)
                tables.append(canon)
        out[n] = [
            validate_inverse_semigroup([f"e{i}" for i in range(n)], rows)
            for rows in sorted(tables)
        ]
    return out
