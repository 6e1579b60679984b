"""Programmatic diagram builders: braid closures, rational knots, fixtures.

Braid closures are the workhorse for generated corpora (planarity is
automatic).  Rational knots C(a1,...,ak) supply the standard reduced
alternating table diagrams: the continued fraction

    p/q = ak + 1/(a(k-1) + 1/(... + 1/a1))

gives the knot determinant p, which pins each construction against the
published tables.
"""

from __future__ import annotations

from fractions import Fraction

from .maps import (
    CombinatorialMap,
    DiagramError,
    genus,
    parse_pd,
    tau,
)

# Standard right-handed trefoil PD code, as tabulated.
TREFOIL_PD = "X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)"


def orient_by_traversal(
    alpha: tuple[int, ...], over_axis: tuple[int, ...]
) -> CombinatorialMap:
    """Orient an unoriented knot map by walking its traversal from dart 0."""
    m = CombinatorialMap(alpha, over_axis)
    m.require_knot()
    outgoing = [False] * len(alpha)
    for d in m.knot_passes():
        outgoing[tau(d)] = True
    return CombinatorialMap(alpha, over_axis, tuple(outgoing))


# ---------------------------------------------------------------------------
# braid closures
# ---------------------------------------------------------------------------


def braid_permutation(word: list[tuple[int, int]], strands: int) -> list[int]:
    perm = list(range(strands))
    for i, _ in word:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return perm


def braid_closure_components(word: list[tuple[int, int]], strands: int) -> int:
    perm = braid_permutation(word, strands)
    seen = [False] * strands
    cycles = 0
    for s0 in range(strands):
        if seen[s0]:
            continue
        cycles += 1
        s = s0
        while not seen[s]:
            seen[s] = True
            s = perm[s]
    return cycles


def braid_closure(word: list[tuple[int, int]], strands: int) -> CombinatorialMap:
    """Closure of a braid word as an oriented planar map.

    ``word`` lists (generator index i in 1..strands-1, sign +1/-1) from
    bottom to top; strands run upward and close off around the side.  A
    positive letter is the crossing of positive sign (writhe +1).

    Crossing dart positions are counterclockwise from the southwest:
    0 = in from the left column, 1 = in from the right column,
    2 = out to the right column, 3 = out to the left column.
    """
    if strands < 2:
        raise DiagramError("a braid needs at least two strands")
    used = {i for i, _ in word}
    if used != set(range(1, strands)):
        missing = sorted(set(range(1, strands)) - used)
        raise DiagramError(f"closure is disconnected: unused generators {missing}")
    n = len(word)
    alpha = [-1] * (4 * n)

    def glue(d1: int, d2: int) -> None:
        alpha[d1], alpha[d2] = d2, d1

    first: dict[int, int] = {}
    open_dart: dict[int, int] = {}
    over_axis = []
    for j, (i, e) in enumerate(word):
        left, right = i - 1, i
        for col, bottom in ((left, 4 * j), (right, 4 * j + 1)):
            if col in open_dart:
                glue(open_dart.pop(col), bottom)
            else:
                first[col] = bottom
        open_dart[left] = 4 * j + 3
        open_dart[right] = 4 * j + 2
        # sign +1: the strand from the right column passes over
        over_axis.append(1 if e > 0 else 0)
    for col in range(strands):
        glue(open_dart[col], first[col])

    outgoing = tuple(p in (2, 3) for d in range(4 * n) for p in (d % 4,))
    m = CombinatorialMap(tuple(alpha), tuple(over_axis), outgoing)
    if genus(m) != 0:
        raise DiagramError("braid closure failed to close up planar")
    return m


# ---------------------------------------------------------------------------
# rational (2-bridge) knots
# ---------------------------------------------------------------------------


def continued_fraction(partials: list[int]) -> Fraction:
    """p/q with p the determinant of the rational knot C(a1,...,ak)."""
    value = Fraction(partials[0])
    for a in partials[1:]:
        value = a + 1 / value
    return value


class _Tangle:
    """Four-ended tangle under construction; ends are pending darts."""

    def __init__(self) -> None:
        self.alpha: list[int] = []
        self.over: list[int] = []
        self.nw = self.ne = self.sw = self.se = -1

    def _new_crossing(self, over_axis: int) -> int:
        c = len(self.over)
        self.over.append(over_axis)
        self.alpha.extend([-1] * 4)
        return c

    def _glue(self, d1: int, d2: int) -> None:
        if d1 >= 0 and d2 >= 0:
            self.alpha[d1], self.alpha[d2] = d2, d1

    def twist_right(self, over_axis: int) -> None:
        """Add a crossing between the two right-hand ends.

        The crossing's west darts catch the old ne/se ends; its east
        darts become the new ones.  Positions counterclockwise from the
        southwest: 0 = SW, 1 = SE, 2 = NE, 3 = NW.
        """
        c = self._new_crossing(over_axis)
        old_ne, old_se = self.ne, self.se
        self.ne, self.se = 4 * c + 2, 4 * c + 1
        if old_ne < 0:  # first crossing ever: west darts become west ends
            self.nw, self.sw = 4 * c + 3, 4 * c
        else:
            self._glue(4 * c + 3, old_ne)
            self._glue(4 * c, old_se)

    def twist_bottom(self, over_axis: int) -> None:
        """Add a crossing below the two bottom ends."""
        c = self._new_crossing(over_axis)
        old_sw, old_se = self.sw, self.se
        self.sw, self.se = 4 * c, 4 * c + 1
        if old_sw < 0:
            self.nw, self.ne = 4 * c + 3, 4 * c + 2
        else:
            self._glue(4 * c + 3, old_sw)
            self._glue(4 * c + 2, old_se)

    def numerator_closure(self) -> CombinatorialMap:
        self._glue(self.nw, self.ne)
        self._glue(self.sw, self.se)
        return orient_by_traversal(tuple(self.alpha), tuple(self.over))


# Over-strand conventions inside twist regions, chosen so that every
# all-positive C(a1,...,ak) comes out alternating and C(3) matches the
# tabulated trefoil chirality (writhe +3); see tests/test_construct.py.
_RIGHT_TWIST_OVER = 0
_BOTTOM_TWIST_OVER = 0


def rational_knot(partials: list[int]) -> CombinatorialMap:
    """Standard reduced alternating diagram of C(a1,...,ak), all ai >= 1.

    Twist groups are applied innermost (a1) outward, alternating between
    right-side and bottom twists so that the outermost group ak always
    sits on the right; a numerator closure then joins top to top and
    bottom to bottom.  With that parity rule the closure realizes the
    continued fraction ak + 1/(...+ 1/a1), whose numerator is the knot
    determinant.
    """
    if not partials or any(a < 1 for a in partials):
        raise DiagramError("rational construction expects positive twist counts")
    t = _Tangle()
    k = len(partials)
    for depth, a in enumerate(partials):
        right = depth % 2 == (k - 1) % 2
        for _ in range(a):
            if right:
                t.twist_right(_RIGHT_TWIST_OVER)
            else:
                t.twist_bottom(_BOTTOM_TWIST_OVER)
    m = t.numerator_closure()
    m.require_knot()
    if genus(m) != 0:
        raise DiagramError("rational construction failed to close planar")
    return m


# ---------------------------------------------------------------------------
# named fixtures
# ---------------------------------------------------------------------------


def trefoil() -> CombinatorialMap:
    """Right-handed trefoil from the tabulated PD code."""
    return parse_pd(TREFOIL_PD)


def figure_eight() -> CombinatorialMap:
    return rational_knot([2, 2])


def positive_kink() -> CombinatorialMap:
    """One-crossing unknot diagram with writhe +1."""
    return parse_pd("X(1,2,2,1)")


def negative_kink() -> CombinatorialMap:
    return parse_pd("X(1,1,2,2)")


def torus_knot_8_19() -> CombinatorialMap:
    """Standard non-alternating diagram of 8_19, the (3,4) torus knot."""
    return braid_closure([(1, 1), (2, 1)] * 4, 3)


def one_face_torus_shadow() -> CombinatorialMap:
    """One-crossing, one-face map on the torus.

    This is a two-strand link shadow (not a knot); it is the minimal
    witness of a cellular map whose single face meets itself across every
    edge, hence admits no checkerboard coloring.
    """
    return CombinatorialMap((2, 3, 0, 1), (0,))


# The standard Conway symbols of the knot table through 7 crossings,
# with published determinants (continued-fraction numerators).
TABLE_KNOTS: dict[str, tuple[list[int], int]] = {
    "3_1": ([3], 3),
    "4_1": ([2, 2], 5),
    "5_1": ([5], 5),
    "5_2": ([3, 2], 7),
    "6_1": ([4, 2], 9),
    "6_2": ([3, 1, 2], 11),
    "6_3": ([2, 1, 1, 2], 13),
    "7_1": ([7], 7),
    "7_2": ([5, 2], 11),
    "7_3": ([4, 3], 13),
    "7_4": ([3, 1, 3], 15),
    "7_5": ([3, 2, 2], 17),
    "7_6": ([2, 2, 1, 2], 19),
    "7_7": ([2, 1, 1, 1, 2], 21),
}


def table_knot(name: str) -> CombinatorialMap:
    partials, _ = TABLE_KNOTS[name]
    return rational_knot(partials)
