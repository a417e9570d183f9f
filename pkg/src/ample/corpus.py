"""Built-in groupoid family: the instances every check suite runs over.

Spans units-only, principal (pair groupoids), and isotropy-rich (groups,
group bundle) cases, plus disjoint unions mixing them.
"""

from __future__ import annotations

from .groupoids import FiniteGroupoid, validate_groupoid


def pair_groupoid(n: int, prefix: str = "") -> FiniteGroupoid:
    """Arrows (i -> j) between n units; a{i}{j} has source u{i} and range u{j}."""
    units = [f"{prefix}u{i}" for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    names = units + [f"{prefix}a{i}{j}" for i, j in pairs]
    idx = {(i, i): i for i in range(n)}
    for k, (i, j) in enumerate(pairs):
        idx[(i, j)] = n + k
    all_pairs = sorted(idx, key=idx.get)
    d = [idx[(i, i)] for (i, j) in all_pairs]
    r = [idx[(j, j)] for (i, j) in all_pairs]
    compose = {}
    for (si, sj) in all_pairs:
        for (ti, tj) in all_pairs:
            if si == tj:  # d(sigma) = r(tau)
                compose[(idx[(si, sj)], idx[(ti, tj)])] = idx[(ti, sj)]
    inverse = [idx[(j, i)] for (i, j) in all_pairs]
    return validate_groupoid(names, range(n), d, r, compose, inverse)


def group_groupoid(k: int, prefix: str = "") -> FiniteGroupoid:
    """The cyclic group of order k as a one-unit groupoid."""
    names = [f"{prefix}e"] + [f"{prefix}c{i}" for i in range(1, k)]
    d = [0] * k
    r = [0] * k
    compose = {(a, b): (a + b) % k for a in range(k) for b in range(k)}
    inverse = [(-a) % k for a in range(k)]
    return validate_groupoid(names, [0], d, r, compose, inverse)


def units_groupoid(n: int, prefix: str = "") -> FiniteGroupoid:
    """n isolated units and nothing else."""
    names = [f"{prefix}u{i}" for i in range(n)]
    compose = {(i, i): i for i in range(n)}
    return validate_groupoid(names, range(n), range(n), range(n), compose, range(n))


def group_bundle_z2() -> FiniteGroupoid:
    """Two units, each carrying a Z/2 isotropy arrow; nothing crosses over."""
    names = ["u0", "u1", "f0", "f1"]
    d = [0, 1, 0, 1]
    r = [0, 1, 0, 1]
    compose = {
        (0, 0): 0,
        (1, 1): 1,
        (0, 2): 2,
        (2, 0): 2,
        (1, 3): 3,
        (3, 1): 3,
        (2, 2): 0,
        (3, 3): 1,
    }
    inverse = [0, 1, 2, 3]
    return validate_groupoid(names, [0, 1], d, r, compose, inverse)


def disjoint_union(a: FiniteGroupoid, b: FiniteGroupoid) -> FiniteGroupoid:
    """Side-by-side union; arrow names get A./B. prefixes, units stay first."""
    a_units = [a.arrows[u] for u in a.units]
    b_units = [b.arrows[u] for u in b.units]
    a_rest = [a.arrows[x] for x in range(len(a.arrows)) if not a.is_unit(x)]
    b_rest = [b.arrows[x] for x in range(len(b.arrows)) if not b.is_unit(x)]
    names = (
        [f"A.{x}" for x in a_units]
        + [f"B.{x}" for x in b_units]
        + [f"A.{x}" for x in a_rest]
        + [f"B.{x}" for x in b_rest]
    )
    index = {name: i for i, name in enumerate(names)}

    def amap(x: int) -> int:
        return index[f"A.{a.arrows[x]}"]

    def bmap(x: int) -> int:
        return index[f"B.{b.arrows[x]}"]

    n = len(names)
    d = [0] * n
    r = [0] * n
    inverse = [0] * n
    for x in range(len(a.arrows)):
        d[amap(x)] = amap(a.d[x])
        r[amap(x)] = amap(a.r[x])
        inverse[amap(x)] = amap(a.inverse[x])
    for x in range(len(b.arrows)):
        d[bmap(x)] = bmap(b.d[x])
        r[bmap(x)] = bmap(b.r[x])
        inverse[bmap(x)] = bmap(b.inverse[x])
    compose = {}
    for (x, y), z in a.compose.items():
        compose[(amap(x), amap(y))] = amap(z)
    for (x, y), z in b.compose.items():
        compose[(bmap(x), bmap(y))] = bmap(z)
    units = [amap(u) for u in a.units] + [bmap(u) for u in b.units]
    return validate_groupoid(names, units, d, r, compose, inverse)


def corpus() -> dict[str, FiniteGroupoid]:
    """Name -> groupoid for the whole built-in family, in a fixed order."""
    out: dict[str, FiniteGroupoid] = {}
    for n in (1, 2, 3, 4):
        out[f"units{n}"] = units_groupoid(n)
    for n in (2, 3, 4):
        out[f"pair{n}"] = pair_groupoid(n)
    for k in (2, 3, 4):
        out[f"z{k}"] = group_groupoid(k)
    out["pair2+units1"] = disjoint_union(pair_groupoid(2), units_groupoid(1))
    out["pair2+pair2"] = disjoint_union(pair_groupoid(2), pair_groupoid(2))
    out["pair2+z2"] = disjoint_union(pair_groupoid(2), group_groupoid(2))
    out["bundle2xZ2"] = group_bundle_z2()
    return out
