"""Filters, characters, and the tight spectrum of a finite semilattice.

A filter and the {0,1}-valued character it induces are stored as one and
the same int bitmask over carrier positions: bit p set means the character
takes value 1 at carrier element p, equivalently that element belongs to
the filter.  Points of a spectrum are listed in ascending bitmask order,
which makes every result of this module canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import BoundExceeded, TightUltraMismatch
from .semigroups import Semilattice

EXHAUSTIVE_BOUND = 20


def char_value(E: Semilattice, bits: int, e: int) -> int:
    """Value of the character at ambient idempotent e."""
    E._require_idempotent(e)
    return bits >> E.position[e] & 1


def principal_filter(E: Semilattice, p: int) -> int:
    """Everything above the carrier element at position p, as a bitmask."""
    return E.up_masks[p]


def filter_minimum(E: Semilattice, bits: int) -> int:
    """Position of the least member (the meet of all members)."""
    acc = None
    for p in range(len(E)):
        if bits >> p & 1:
            acc = p if acc is None else E.meet_pos(acc, p)
    if acc is None:
        raise ValueError("empty mask has no minimum")
    return acc


def is_filter(E: Semilattice, bits: int) -> bool:
    """Nonempty, zero-free, closed under meets, and upward hereditary."""
    if bits == 0 or bits >> E.zero_pos & 1:
        return False
    members = [p for p in range(len(E)) if bits >> p & 1]
    for p in members:
        if E.up_masks[p] & ~bits:
            return False
        for q in members:
            if not bits >> E.meet_pos(p, q) & 1:
                return False
    return True


def is_character(E: Semilattice, bits: int) -> bool:
    """Multiplicative on all of E, vanishing at zero, not identically zero."""
    if bits == 0 or bits >> E.zero_pos & 1:
        return False
    m = len(E)
    for p in range(m):
        vp = bits >> p & 1
        for q in range(m):
            if bits >> E.meet_pos(p, q) & 1 != (vp & (bits >> q & 1)):
                return False
    return True


def enumerate_filters(
    E: Semilattice, exhaustive: bool = False, bound: int = EXHAUSTIVE_BOUND
) -> tuple[int, ...]:
    """All filters of E as ascending bitmasks.

    The default generates the principal filters up from each nonzero
    idempotent and re-checks the filter laws on each one; in a finite
    semilattice every filter is principal on its minimum, so nothing is
    missed.  Exhaustive mode scans every subset instead and refuses
    carriers larger than ``bound``.
    """
    if exhaustive:
        if len(E) > bound:
            raise BoundExceeded(
                f"exhaustive filter scan over {len(E)} idempotents exceeds bound {bound}"
            )
        return tuple(
            bits for bits in range(1, 1 << len(E)) if is_filter(E, bits)
        )
    out = set()
    for p in range(len(E)):
        if p == E.zero_pos:
            continue
        bits = principal_filter(E, p)
        assert is_filter(E, bits)
        out.add(bits)
    return tuple(sorted(out))


def ultrafilters(E: Semilattice, **kwargs) -> tuple[int, ...]:
    """Filters not properly contained in any other filter."""
    filters = enumerate_filters(E, **kwargs)
    return tuple(
        f
        for f in filters
        if not any(g != f and g & f == f for g in filters)
    )


def find_tightness_violation(
    E: Semilattice, bits: int, audit: bool = False, bound: int = EXHAUSTIVE_BOUND
) -> tuple[int | None, int, int] | None:
    """First (x, Y) pair at which the cover-sup condition fails, or None.

    For a character the condition can only fail on instances whose
    right-hand side is 1, and it fails there exactly when Z0, the part of
    E^{x,Y} the character kills, is itself a cover of E^{x,Y}.  So the scan
    walks x over members of the filter (or nothing) and Y over antichains
    of nonzero idempotents the character kills, and tests that complement
    cover; no cover enumeration is needed.  Witnesses come back as
    (x position or None, Y position mask, Z0 position mask).

    Audit mode drops every reduction and scans all (x, Y) literally,
    including right-hand side 0 instances; it refuses carriers past
    ``bound``.
    """
    assert is_filter(E, bits), "tightness is defined for characters only"
    m = len(E)
    down = E.down_masks
    isect = E.intersect_masks
    orth = E.orth_masks
    nonzero = E.nonzero_mask
    full = E.full_mask

    def complement_covers(exy: int) -> bool:
        z0 = exy & ~bits
        live = exy & nonzero
        while live:
            low = live & -live
            if not isect[low.bit_length() - 1] & z0:
                return False
            live ^= low
        return True

    if audit:
        if m > bound:
            raise BoundExceeded(
                f"audit tightness scan over {m} idempotents exceeds bound {bound}"
            )
        for x in [None, *range(m)]:
            base = full if x is None else down[x]
            x_val = 1 if x is None else bits >> x & 1
            for y_mask in range(1 << m):
                exy = base
                rest = y_mask
                while rest:
                    low = rest & -rest
                    exy &= orth[low.bit_length() - 1]
                    rest ^= low
                if x_val and not y_mask & bits:
                    if complement_covers(exy):
                        return (x, y_mask, exy & ~bits)
                elif exy & bits:
                    # rhs is 0, so the character must vanish on E^{x,Y};
                    # impossible for a genuine character, checked literally here.
                    return (x, y_mask, exy & ~bits)
        return None

    # Y only needs to range over antichains of killed nonzero idempotents:
    # comparable or value-1 members never change a rhs-1 instance.
    candidates = [
        q
        for q in range(m)
        if q != E.zero_pos and not bits >> q & 1
    ]

    def scan(x_base: int, start: int, y_mask: int, exy: int, blocked: int):
        if complement_covers(exy):
            return (y_mask, exy & ~bits)
        for j in range(start, len(candidates)):
            q = candidates[j]
            if blocked >> q & 1:
                continue
            hit = scan(
                x_base,
                j + 1,
                y_mask | 1 << q,
                exy & orth[q],
                blocked | down[q] | E.up_masks[q],
            )
            if hit is not None:
                return hit
        return None

    for x in [None, *(p for p in range(m) if bits >> p & 1)]:
        base = full if x is None else down[x]
        hit = scan(base, 0, 0, base, 0)
        if hit is not None:
            y_mask, z0 = hit
            return (x, y_mask, z0)
    return None


def is_tight_character(E: Semilattice, bits: int, audit: bool = False) -> bool:
    """Whether the cover-sup condition holds at every (X, Y) instance."""
    return find_tightness_violation(E, bits, audit=audit) is None


@dataclass(frozen=True)
class TightSpectrum:
    """The tight characters of a finite semilattice, canonically ordered."""

    semilattice: Semilattice
    points: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def point_index(self) -> dict[int, int]:
        return {bits: i for i, bits in enumerate(self.points)}

    @cached_property
    def basic_sets(self) -> dict[int, tuple[int, ...]]:
        """D_e for every ambient idempotent e: indices of points alive at e."""
        E = self.semilattice
        out = {}
        for p, e in enumerate(E.carrier):
            out[e] = tuple(
                i for i, bits in enumerate(self.points) if bits >> p & 1
            )
        return out


def tight_spectrum(E: Semilattice) -> TightSpectrum:
    """All tight characters; certifies they coincide with the ultrafilters.

    A finite spectrum is discrete, so the closure of the ultra-characters
    is just the ultra-characters; a mismatch would falsify that and raises
    TightUltraMismatch as a bug trap.
    """
    filters = enumerate_filters(E)
    tight = tuple(b for b in filters if is_tight_character(E, b))
    ultra = ultrafilters(E)
    if set(tight) != set(ultra):
        raise TightUltraMismatch(
            f"tight characters {tight!r} differ from ultrafilters {ultra!r}"
        )
    return TightSpectrum(E, tight)
