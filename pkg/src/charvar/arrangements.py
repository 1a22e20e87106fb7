"""Fundamental groups of complements of real line arrangements via wiring diagrams.

Lines are given homogeneously as (a, b, c), meaning ax + by + cz = 0.  In
affine mode the chart z = 1 is used.  In projective mode a generic line
(one missing every multiple point) is sent to infinity first, so the
affine picture carries all the intersection points and the product of all
meridians is trivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .words import GroupPresentation, Word

Line = tuple[Fraction, Fraction, Fraction]


def _line(v) -> Line:
    if len(v) != 3:
        raise ValueError(f"a line needs three coefficients, got {v!r}")
    a, b, c = (Fraction(x) for x in v)
    if a == b == c == 0:
        raise ValueError("the zero triple is not a line")
    return a, b, c


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _proportional(u, v) -> bool:
    return not any(_cross(u, v))


def _check_distinct(lines: Sequence[Line]):
    for i, j in combinations(range(len(lines)), 2):
        if _proportional(lines[i], lines[j]):
            raise ValueError(f"lines {i + 1} and {j + 1} coincide")


def intersection_points(lines: Sequence[Line]) -> list[tuple[tuple, frozenset]]:
    """Projective multiple points: (normalized homogeneous point, set of line indices)."""
    pts: dict[tuple, set] = {}
    for i, j in combinations(range(len(lines)), 2):
        p = _cross(lines[i], lines[j])
        k = next(x for x in p if x)
        key = tuple(x / k for x in p)
        pts.setdefault(key, set()).update((i, j))
    return [(p, frozenset(s)) for p, s in pts.items()]


def generic_chart(lines: Sequence[Line], bound: int = 4) -> tuple[int, int, int]:
    """A small integer line ux + vy + wz (w != 0) through no intersection point."""
    pts = [p for p, _ in intersection_points(lines)]
    cands = [(u, v, w) for u, v, w in product(range(-bound, bound + 1), repeat=3) if w]
    cands.sort(key=lambda t: (max(map(abs, t)), abs(t[0]) + abs(t[1]) + abs(t[2]), [-x for x in t]))
    for u, v, w in cands:
        if any(_proportional((u, v, w), l) for l in lines):
            continue
        if all(u * p[0] + v * p[1] + w * p[2] for p in pts):
            return u, v, w
    raise ValueError("no generic line at infinity found with small coefficients")


def to_affine(lines: Sequence[Line], chart: tuple[int, int, int] = (0, 0, 1)) -> list[Line]:
    """Coefficients (a', b', c') with a'x + b'y + c' = 0 in the chart where the chart line is at infinity."""
    u, v, w = chart
    out = []
    for k, (a, b, c) in enumerate(lines):
        aa, bb, cc = a - c * u / w, b - c * v / w, c / w
        if aa == 0 and bb == 0:
            raise ValueError(f"line {k + 1} is the line at infinity of the chosen chart")
        out.append((aa, bb, cc))
    return out


@dataclass(frozen=True)
class CrossingEvent:
    x: Fraction
    y: Fraction
    lines: frozenset


@dataclass
class WiringDiagram:
    lines: list[Line]          # affine (a, b, c) after shear
    shear: int
    chart: tuple[int, int, int] | None
    initial_order: list[int]   # line indices from bottom to top left of all events
    events: list[CrossingEvent]

    @property
    def nlines(self) -> int:
        return len(self.lines)


def _affine_events(aff: Sequence[Line]) -> list[CrossingEvent]:
    pts: dict[tuple, set] = {}
    for i, j in combinations(range(len(aff)), 2):
        a1, b1, c1 = aff[i]
        a2, b2, c2 = aff[j]
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue  # parallel
        x = (b1 * c2 - b2 * c1) / det
        y = (a2 * c1 - a1 * c2) / det
        pts.setdefault((x, y), set()).update((i, j))
    return [CrossingEvent(x, y, frozenset(s)) for (x, y), s in pts.items()]


def _y_at(line: Line, x: Fraction) -> Fraction:
    a, b, c = line
    return -(a * x + c) / b


def wiring_diagram(lines: Sequence, projective: bool = True, max_shear: int = 1000,
                   skip: int = 0) -> WiringDiagram:
    """Exact crossing data of a real arrangement, sheared x -> x + lambda*y if needed.

    The smallest admissible lambda >= 0 is used; ``skip`` passes over that
    many admissible values first (the group does not depend on the choice).
    """
    L = [_line(l) for l in lines]
    _check_distinct(L)
    chart = generic_chart(L) if projective else None
    aff = to_affine(L, chart) if projective else to_affine(L)
    base_events = _affine_events(aff)
    for lam in range(max_shear + 1):
        sheared = [(a, b - lam * a, c) for a, b, c in aff]
        if any(b == 0 for _, b, _ in sheared):
            continue
        xs = [e.x + lam * e.y for e in base_events]
        if len(set(xs)) != len(xs):
            continue
        if skip:
            skip -= 1
            continue
        events = sorted((CrossingEvent(e.x + lam * e.y, e.y, e.lines) for e in base_events), key=lambda e: e.x)
        x0 = (events[0].x if events else Fraction(0)) - 1
        order = sorted(range(len(L)), key=lambda i: _y_at(sheared[i], x0))
        return WiringDiagram(sheared, lam, chart, order, events)
    raise ValueError("no admissible shear found")


def arrangement_presentation(w: WiringDiagram, projective: bool = True,
                             names: Sequence[str] | None = None) -> GroupPresentation:
    """Presentation with one meridian generator per line (input order).

    At a crossing of the strands at positions p..p+k-1 the local relators
    say that D = W[p+k-1] ... W[p] commutes with each W[q]; afterwards the
    strands reverse and their meridians are conjugated by the partial
    products of the half twist.  In projective mode the product of the
    base-fiber meridians W[r-1] ... W[0] is added.
    """
    r = w.nlines
    names = tuple(names) if names else tuple(f"l{i + 1}" for i in range(r))
    order = list(w.initial_order)
    W = [Word.gen(order[p]) for p in range(r)]
    pos_of_line = {l: p for p, l in enumerate(order)}
    relators: list[Word] = []
    for ev in w.events:
        ps = sorted(pos_of_line[l] for l in ev.lines)
        p, k = ps[0], len(ps)
        if ps != list(range(p, p + k)):
            raise RuntimeError(f"lines {sorted(ev.lines)} are not adjacent at x = {ev.x}")
        delta = Word()
        for q in range(p + k - 1, p - 1, -1):
            delta = delta * W[q]
        for q in range(p, p + k):
            rel = (delta * W[q] * delta.inverse() * W[q].inverse())
            if rel:
                relators.append(rel)
        old = W[p:p + k]
        new: list[Word] = []
        prefix = Word()
        for j in range(k):
            new.append(prefix * old[k - 1 - j] * prefix.inverse())
            prefix = new[j] * prefix
        W[p:p + k] = new
        seg = order[p:p + k]
        order[p:p + k] = seg[::-1]
        for q in range(p, p + k):
            pos_of_line[order[q]] = q
    degrees = None
    if projective:
        prod_word = Word()
        for l in reversed(w.initial_order):
            prod_word = prod_word * Word.gen(l)
        relators.append(prod_word)
        degrees = (1,) * r
    return GroupPresentation(names, tuple(relators), degrees)


def presentation_from_lines(lines: Sequence, projective: bool = True) -> GroupPresentation:
    return arrangement_presentation(wiring_diagram(lines, projective), projective)


def parse_line_file(text: str) -> list[Line]:
    """One line per row: 'a b c' as exact rationals; '#' starts a comment."""
    out = []
    for k, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        parts = s.split()
        if len(parts) != 3:
            raise ValueError(f"row {k}: expected three coefficients, found {len(parts)}")
        if any("j" in p or "i" in p for p in parts):
            raise ValueError(f"row {k}: only real lines are supported (wiring diagrams need real arrangements)")
        try:
            coeffs = [Fraction(p) for p in parts]
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"row {k}: malformed rational in {s!r}") from None
        out.append(_line(coeffs))
    return out


SC_LINES: tuple[tuple[int, int, int], ...] = (
    (1, 0, 0), (0, 1, 0), (0, 0, 1),
    (0, 1, -1), (1, 0, -1), (1, -1, 0),
    (1, -1, -1), (-1, 1, -1), (-1, -1, 1),
)


__all__ = [
    "intersection_points", "generic_chart", "to_affine", "CrossingEvent", "WiringDiagram",
    "wiring_diagram", "arrangement_presentation", "presentation_from_lines", "parse_line_file",
    "SC_LINES",
]
