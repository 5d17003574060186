"""1-in-3 satisfiability, rectilinear layouts and the monotone conversion.

A layout puts the variables on a horizontal line (``order[i]`` is the
variable at position ``i``) and draws each clause above or below it as a
horizontal bar at integer height ``level`` with a vertical leg down (or up)
to each of its three variables.  Validity is purely combinatorial: two
clauses on the same side must span disjoint (possibly touching) position
intervals or strictly nested ones; in the nested case the inner clause is
lower and the outer clause's middle leg may not fall strictly inside the
inner span.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .config import DEFAULT_LIMITS, Limits
from .exceptions import InputFormatError, ScaleGuardError

ABOVE, BELOW = "above", "below"


@dataclass(frozen=True, order=True)
class Literal:
    var: int
    negated: bool = False

    def __invert__(self):
        return Literal(self.var, not self.negated)

    def value(self, assignment) -> bool:
        return assignment[self.var] != self.negated

    def __str__(self):
        return f"{'~' if self.negated else ''}x{self.var}"


def lit(v: int) -> Literal:
    """Signed-integer shorthand: ``lit(3)`` is x3, ``lit(-3)`` its negation.

    Only usable for variables >= 1; variable 0 has to be built directly.
    """
    return Literal(abs(v), v < 0)


@dataclass(frozen=True)
class Formula:
    """Conjunction of clauses with exactly three literals over distinct variables."""

    num_vars: int
    clauses: tuple

    def __post_init__(self):
        clauses = []
        for i, c in enumerate(self.clauses):
            c = tuple(x if isinstance(x, Literal) else Literal(int(x[0]), bool(x[1])) for x in c)
            if len(c) != 3:
                raise ValueError(f"clause {i} has {len(c)} literals, expected exactly 3")
            vs = [x.var for x in c]
            if len(set(vs)) != 3:
                raise ValueError(f"clause {i} repeats a variable: {vs}")
            for v in vs:
                if not 0 <= v < self.num_vars:
                    raise ValueError(f"clause {i} uses variable {v} outside 0..{self.num_vars - 1}")
            clauses.append(c)
        object.__setattr__(self, "clauses", tuple(clauses))

    @property
    def m(self) -> int:
        return len(self.clauses)

    def __str__(self):
        return " & ".join("(" + " | ".join(map(str, c)) + ")" for c in self.clauses)


def eval_1in3(F: Formula, assignment) -> bool:
    """True iff every clause has exactly one true literal."""
    if len(assignment) != F.num_vars:
        raise ValueError(f"assignment has {len(assignment)} values for {F.num_vars} variables")
    return all(sum(x.value(assignment) for x in c) == 1 for c in F.clauses)


def brute_force_1in3(F: Formula, limits: Limits = DEFAULT_LIMITS):
    """Plain enumeration in lexicographic order (False < True, variable 0 first)."""
    if F.num_vars > limits.sat_bruteforce_max_vars:
        raise ScaleGuardError(f"enumeration limited to {limits.sat_bruteforce_max_vars} variables")
    for a in product((False, True), repeat=F.num_vars):
        if eval_1in3(F, a):
            return a
    return None


def solve_1in3(F: Formula, limits: Limits = DEFAULT_LIMITS):
    """Lexicographically first 1-in-3 satisfying assignment, or ``None``.

    Exhaustive depth-first search over variables in index order trying
    False first.  Propagation (one true literal forces the other two false;
    two false literals force the third true) only discards branches that
    contain no solution, so the first solution found is the lexicographic
    minimum.
    """
    n = F.num_vars
    if n > limits.sat_max_vars:
        raise ScaleGuardError(f"solver limited to {limits.sat_max_vars} variables (got {n})")
    occurs = [[] for _ in range(n)]
    for ci, c in enumerate(F.clauses):
        for x in c:
            occurs[x.var].append(ci)
    value = [None] * n

    def assign(var, val, trail):
        queue = [(var, val)]
        while queue:
            v, b = queue.pop()
            if value[v] is not None:
                if value[v] != b:
                    return False
                continue
            value[v] = b
            trail.append(v)
            for ci in occurs[v]:
                true = 0
                open_lits = []
                for x in F.clauses[ci]:
                    xv = value[x.var]
                    if xv is None:
                        open_lits.append(x)
                    elif xv != x.negated:
                        true += 1
                if true > 1:
                    return False
                if true == 1:
                    queue.extend((x.var, x.negated) for x in open_lits)
                elif not open_lits:
                    return False
                elif len(open_lits) == 1:
                    x = open_lits[0]
                    queue.append((x.var, not x.negated))
        return True

    def undo(trail):
        for v in trail:
            value[v] = None

    def search(i):
        while i < n and value[i] is not None:
            i += 1
        if i == n:
            return True
        for b in (False, True):
            trail = []
            if assign(i, b, trail) and search(i + 1):
                return True
            undo(trail)
        return False

    if search(0):
        return tuple(value)
    return None


def is_monotone(F: Formula) -> bool:
    """No clause mixes positive and negative literals."""
    return all(len({x.negated for x in c}) == 1 for c in F.clauses)


# ---------------------------------------------------------------------------
# layouts

@dataclass(frozen=True)
class RectilinearLayout:
    order: tuple
    sides: tuple
    levels: tuple

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(v) for v in self.order))
        object.__setattr__(self, "sides", tuple(self.sides))
        object.__setattr__(self, "levels", tuple(self.levels))

    @cached_property
    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.order)}


@dataclass(frozen=True)
class Violation:
    kind: str
    clauses: tuple
    detail: str


def _span(F, L, ci):
    ps = sorted(L.position[x.var] for x in F.clauses[ci])
    return ps[0], ps[1], ps[2]


def validate_layout(F: Formula, L: RectilinearLayout) -> list:
    """Return the list of violations; an empty list means the layout is valid."""
    out = []
    if sorted(L.order) != list(range(F.num_vars)):
        out.append(Violation("order", (), "order is not a permutation of the variables"))
        return out
    if len(L.sides) != F.m or len(L.levels) != F.m:
        out.append(Violation("arity", (), "need one side and one level per clause"))
        return out
    for i in range(F.m):
        if L.sides[i] not in (ABOVE, BELOW):
            out.append(Violation("side", (i,), f"side must be above/below, got {L.sides[i]!r}"))
        lv = L.levels[i]
        if not isinstance(lv, int) or isinstance(lv, bool) or lv < 1:
            out.append(Violation("level", (i,), f"level must be a positive integer, got {lv!r}"))
    if out:
        return out
    spans = [_span(F, L, i) for i in range(F.m)]
    for i in range(F.m):
        for j in range(i + 1, F.m):
            if L.sides[i] != L.sides[j]:
                continue
            li, mi, ri = spans[i]
            lj, mj, rj = spans[j]
            if ri <= lj or rj <= li:
                continue
            if li <= lj and rj <= ri:
                outer, inner = i, j
            elif lj <= li and ri <= rj:
                outer, inner = j, i
            else:
                out.append(Violation("crossing", (i, j), "interleaving clause spans"))
                continue
            lo, mo, ro = spans[outer]
            lin, _, rin = spans[inner]
            if (lo, ro) == (lin, rin) or lin < mo < rin:
                out.append(Violation("crossing", (outer, inner), "outer middle leg crosses inner bar"))
            elif L.levels[inner] >= L.levels[outer]:
                out.append(Violation("level order", (outer, inner), "nested clause is not strictly lower"))
    return out


def nesting_levels(F: Formula, order, sides) -> tuple:
    """Smallest valid levels: 1 + the highest clause nested inside."""
    pos = {v: i for i, v in enumerate(order)}
    spans = []
    for c in F.clauses:
        ps = sorted(pos[x.var] for x in c)
        spans.append((ps[0], ps[2]))
    idx = sorted(range(F.m), key=lambda i: spans[i][1] - spans[i][0])
    levels = [1] * F.m
    for a, i in enumerate(idx):
        li, ri = spans[i]
        for j in idx[:a]:
            lj, rj = spans[j]
            if sides[j] == sides[i] and li <= lj and rj <= ri and (lj, rj) != (li, ri):
                levels[i] = max(levels[i], levels[j] + 1)
    return tuple(levels)


def find_inconsistent_pairs(F: Formula, L: RectilinearLayout) -> list:
    """Negative literals above the line and positive literals below it.

    Sorted in processing order: above before below, then by the clause's
    leftmost position, clause index, and the literal's position.
    """
    problems = validate_layout(F, L)
    if problems:
        raise ValueError(f"invalid layout: {problems[0].kind}: {problems[0].detail}")
    pairs = []
    for ci, c in enumerate(F.clauses):
        side = L.sides[ci]
        left = min(L.position[x.var] for x in c)
        for x in c:
            if (side == ABOVE and x.negated) or (side == BELOW and not x.negated):
                key = (side != ABOVE, left, ci, L.position[x.var])
                pairs.append((key, (x, ci)))
    pairs.sort(key=lambda p: p[0])
    return [p for _, p in pairs]


def inequality_gadget(x: int, y: int, fresh, existing_vars: int | None = None):
    """Clauses forcing exactly one of x, y true, plus a monotone layout piece.

    Returns ``(clauses, fragment)``; the fragment orders the variables
    ``x a b c d y`` and lists ``(side, level)`` per clause.
    """
    a, b, c, d = fresh
    used = [x, y, a, b, c, d]
    if len(set(used)) != 6:
        raise ValueError("gadget variables must be distinct")
    if existing_vars is not None and min(fresh) < existing_vars:
        raise ValueError("fresh gadget variables collide with existing ones")
    clauses = (
        (Literal(x), Literal(a), Literal(y)),
        (Literal(a), Literal(b), Literal(c)),
        (Literal(b, True), Literal(c, True), Literal(d, True)),
    )
    fragment = {
        "order": (x, a, b, c, d, y),
        "placement": ((ABOVE, 2), (ABOVE, 1), (BELOW, 1)),
    }
    return clauses, fragment


def _leg_rank(span, var_pos, level):
    """Left-to-right order of legs sharing one variable (same side)."""
    left, mid, right = span
    if var_pos == right:
        return (0, level)
    if var_pos == mid:
        return (1, 0)
    return (2, -level)


def remove_inconsistent_pair(F: Formula, L: RectilinearLayout, pair):
    """Remove one inconsistent pair with two inequality gadgets.

    For ``(~xi, Cj)`` above: new x, y; Cj uses x instead of ~xi; gadgets
    xi != x and x != y; every above clause attached to xi to the right of
    Cj's leg switches to y (keeping its sign).  The below case mirrors it
    with ~x.  The ten new variables go right after xi:
    ``xi a b c d x a' b' c' d' y``.
    """
    literal, j = pair
    if pair not in find_inconsistent_pairs(F, L):
        raise ValueError(f"{literal} in clause {j} is not an inconsistent pair")
    xi = literal.var
    side = L.sides[j]
    n = F.num_vars
    x, y = n, n + 1
    g1 = (n + 2, n + 3, n + 4, n + 5)
    g2 = (n + 6, n + 7, n + 8, n + 9)
    p = L.position[xi]
    attached = [
        ci for ci in range(F.m)
        if L.sides[ci] == side and any(t.var == xi for t in F.clauses[ci])
    ]
    attached.sort(key=lambda ci: _leg_rank(_span(F, L, ci), p, L.levels[ci]))
    right_of = set(attached[attached.index(j) + 1:])

    clauses = []
    for ci, c in enumerate(F.clauses):
        if ci == j:
            c = tuple(Literal(x, not t.negated) if t == literal else t for t in c)
        elif ci in right_of:
            c = tuple(Literal(y, t.negated) if t.var == xi else t for t in c)
        clauses.append(c)
    gad1, _ = inequality_gadget(xi, x, g1, n)
    gad2, frag = inequality_gadget(x, y, g2, n)
    clauses.extend(gad1)
    clauses.extend(gad2)
    sides = list(L.sides) + [s for s, _ in frag["placement"]] * 2

    order = list(L.order)
    order[p + 1:p + 1] = [*g1, x, *g2, y]
    F2 = Formula(n + 10, tuple(clauses))
    L2 = RectilinearLayout(tuple(order), tuple(sides), nesting_levels(F2, order, sides))
    return F2, L2


@dataclass(frozen=True)
class MonotoneStep:
    literal: Literal
    clause: int
    new_vars: tuple

    def to_json(self):
        return {
            "literal": [self.literal.var, self.literal.negated],
            "clause": self.clause,
            "new_vars": list(self.new_vars),
        }


def make_monotone(F: Formula, L: RectilinearLayout):
    """Repeatedly remove the first inconsistent pair; returns ``(F', L', steps)``."""
    problems = validate_layout(F, L)
    if problems:
        raise ValueError(f"invalid layout: {problems[0].kind}: {problems[0].detail}")
    steps = []
    limit = 3 * F.m
    while True:
        pairs = find_inconsistent_pairs(F, L)
        if not pairs:
            break
        if len(steps) >= limit:
            raise AssertionError("more removal steps than inconsistent pairs in the input")
        literal, ci = pairs[0]
        n, m = F.num_vars, F.m
        F, L = remove_inconsistent_pair(F, L, pairs[0])
        if F.num_vars != n + 10 or F.m != m + 6:
            raise AssertionError("a removal step must add 10 variables and 6 clauses")
        steps.append(MonotoneStep(literal, ci, tuple(range(n, n + 10))))
    return F, L, steps


# ---------------------------------------------------------------------------
# serialisation

def formula_to_dict(F: Formula, L: RectilinearLayout | None = None) -> dict:
    out = {"num_vars": F.num_vars}
    clauses = []
    for i, c in enumerate(F.clauses):
        entry = {"lits": [[x.var, x.negated] for x in c]}
        if L is not None:
            entry["side"] = L.sides[i]
            entry["level"] = L.levels[i]
        clauses.append(entry)
    out["clauses"] = clauses
    if L is not None:
        out["order"] = list(L.order)
    return out


def formula_from_dict(data: dict, source=None):
    """Returns ``(formula, layout_or_None)``."""
    try:
        num_vars = data["num_vars"]
        raw = data["clauses"]
    except (KeyError, TypeError):
        raise InputFormatError('formula JSON needs "num_vars" and "clauses"', source=source) from None
    clauses, sides, levels = [], [], []
    for i, c in enumerate(raw):
        try:
            lits = tuple(Literal(int(v), bool(neg)) for v, neg in c["lits"])
        except (KeyError, TypeError, ValueError):
            raise InputFormatError(f"clause {i}: malformed literal list", source=source) from None
        clauses.append(lits)
        sides.append(c.get("side"))
        levels.append(c.get("level"))
    try:
        F = Formula(num_vars, tuple(clauses))
    except ValueError as exc:
        raise InputFormatError(str(exc), source=source) from None
    if "order" not in data:
        return F, None
    if any(s is None for s in sides) or any(lv is None for lv in levels):
        raise InputFormatError("layout given but some clause lacks side/level", source=source)
    return F, RectilinearLayout(tuple(data["order"]), tuple(sides), tuple(levels))


def read_formula_json(text: str, source=None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc.msg}", exc.lineno, source) from None
    return formula_from_dict(data, source)


def read_cnf_dimacs(text: str, source=None) -> Formula:
    """DIMACS CNF with exactly three literals per clause (no layout)."""
    num_vars = num_clauses = None
    header = None
    clauses = []
    pending = []
    pending_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InputFormatError(f"expected 'p cnf N M', got {line!r}", lineno, source)
            num_vars, num_clauses = int(parts[2]), int(parts[3])
            header = lineno
            continue
        if num_vars is None:
            raise InputFormatError("clause before 'p cnf' header", lineno, source)
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise InputFormatError(f"bad literal {tok!r}", lineno, source) from None
            if pending_line is None:
                pending_line = lineno
            if v == 0:
                if len(pending) != 3:
                    raise InputFormatError(f"clause has {len(pending)} literals, expected 3", pending_line, source)
                if len({abs(t) for t in pending}) != 3:
                    raise InputFormatError("clause repeats a variable", pending_line, source)
                if any(abs(t) > num_vars for t in pending):
                    raise InputFormatError("literal exceeds declared variable count", pending_line, source)
                clauses.append(tuple(Literal(abs(t) - 1, t < 0) for t in pending))
                pending, pending_line = [], None
            else:
                pending.append(v)
    if num_vars is None:
        raise InputFormatError("missing 'p cnf' header", source=source)
    if pending:
        raise InputFormatError("last clause is not terminated by 0", pending_line, source)
    if len(clauses) != num_clauses:
        raise InputFormatError(f"header declares {num_clauses} clauses, found {len(clauses)}", header, source)
    return Formula(num_vars, tuple(clauses))
