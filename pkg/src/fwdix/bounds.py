"""Catalog of published bounds, relations and closed-form minima.

Every entry carries a theorem id (``"T2.3"``, ``"T3.1a"``, ...), the index it
constrains (``xi``, ``xi_m``, ``pi``, ``pi_m``), an applicability predicate
evaluated on the supplied parameters, and its citation. Entries whose printed
formula contradicts brute-force values are kept as printed and flagged
``disputed``; entries valid only for "sufficiently large" orders are
``advisory``. Neither kind is used in verification assertions.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import Graph, connectivity, distances, enumerate_connected_graphs
from .solver import (EDGE, GENERAL, VERTEX, SearchLimits, exact_index, lower_bound_A,
                     lower_bound_B)

LOWER = "lower"
UPPER = "upper"
EQUALITY = "equality"
RELATION = "relation"

# printed formulas that the brute-force oracle contradicts on small graphs
DISPUTED = {
    "T3.4c": "fails on cycles, e.g. C5 gives 5 < pi(C5) = 6",
    "T3.5pi": "fails on cycles, e.g. C4 gives 2 < pi(C4) = 4",
    "T3.13c": "fails on directed cycles, e.g. C5 gives 7 < pi_m = 10",
    "T4.3a": "printed floor((n-1)^2/4) disagrees with xi(C3)=0, xi(C4)=1, xi(C5)=2",
    "T4.7b": "an irregular (5,3)-graph attains pi = 4 = ceil(16/3) - 2",
}


class OutOfCatalog(LookupError):
    def __init__(self, message, generic=None):
        super().__init__(message)
        self.generic = generic


def _ceil_div(a, b) -> int:
    return -(-a // b)


@dataclass
class BoundEntry:
    theorem: str
    kind: str
    index: str
    condition: str
    applicable: bool
    citation: str
    value: int | None = None
    holds: bool | None = None
    advisory: bool = False
    disputed: bool = False
    skipped: str | None = None

    def to_json(self) -> dict:
        data = asdict(self)
        return {k: v for k, v in data.items() if v is not None}


@dataclass
class BoundReport:
    entries: list = field(default_factory=list)

    def add(self, theorem, kind, index, condition, applicable, citation, value=None,
            holds=None, advisory=False, failed=None):
        skipped = None if applicable else (failed or condition)
        entry = BoundEntry(theorem, kind, index, condition, bool(applicable), citation,
                           value if applicable else None, holds if applicable else None,
                           advisory, theorem in DISPUTED, skipped)
        self.entries.append(entry)
        return entry

    def extend(self, other: "BoundReport") -> "BoundReport":
        self.entries.extend(other.entries)
        return self

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, theorem: str) -> BoundEntry:
        for e in self.entries:
            if e.theorem == theorem:
                return e
        raise KeyError(theorem)

    def applicable(self) -> list:
        return [e for e in self.entries if e.applicable]

    def assertable(self) -> list:
        """Applicable entries that are neither advisory nor disputed."""
        return [e for e in self.entries if e.applicable and not e.advisory and not e.disputed]

    def upper(self, index: str) -> int | None:
        values = [e.value for e in self.assertable() if e.kind == UPPER and e.index == index]
        return min(values) if values else None

    def violations(self, values: dict) -> list:
        """Entries contradicted by solved index values ``{"xi": 5, ...}``."""
        bad = []
        for e in self.applicable():
            if e.kind not in (UPPER, LOWER) or values.get(e.index) is None:
                continue
            v = values[e.index]
            if (e.kind == UPPER and v > e.value) or (e.kind == LOWER and v < e.value):
                bad.append(e)
        return bad

    def to_json(self) -> dict:
        return {"entries": [e.to_json() for e in self.entries]}


def trivial_bounds(n: int) -> tuple[int, int]:
    """Upper bounds ``((n-1)(n-2), floor(n^2/2))`` valid for every connected graph."""
    if n < 2:
        raise ValueError("order must be at least 2")
    return (n - 1) * (n - 2), n * n // 2


def relation_check(xi=None, pi=None, xim=None, pim=None, *, n: int, max_degree: int,
                   min_degree: int) -> BoundReport:
    rep = BoundReport()
    have = xi is not None and pi is not None
    rep.add("T2.6a", RELATION, "xi,pi", "xi and pi known", have, "Thm 2.6(a)",
            holds=have and 2 * xi + 2 * (n - 1) <= max_degree * pi,
            value=have and max_degree * pi - 2 * xi - 2 * (n - 1))
    have_m = xim is not None and pim is not None
    rep.add("T2.6a_m", RELATION, "xi_m,pi_m", "xi_m and pi_m known", have_m, "Thm 2.6 (minimal routings)",
            holds=have_m and 2 * xim + 2 * (n - 1) <= max_degree * pim,
            value=have_m and max_degree * pim - 2 * xim - 2 * (n - 1))
    rep.add("T2.6b", RELATION, "xi,pi", "xi and pi known", have, "Thm 2.6(b)",
            holds=have and pi <= xi + 2 * (n - 1), value=have and xi + 2 * (n - 1) - pi)
    rep.add("T2.6c", RELATION, "xi_m,pi_m", "xi_m and pi_m known", have_m, "Thm 2.6(c)",
            holds=have_m and pim <= xim + 2 * (n - min_degree),
            value=have_m and xim + 2 * (n - min_degree) - pim)
    return rep


def product_upper(n_g: int, n_h: int, xi_g: int, xi_h: int, pi_g: int, pi_h: int) -> tuple[int, int]:
    if n_g < 2 or n_h < 2:
        raise ValueError("product factors must have at least two vertices")
    return (n_g * xi_h + n_h * xi_g + (n_g - 1) * (n_h - 1),
            max(n_g * pi_h, n_h * pi_g))


def product_optimal(factors: Sequence[tuple[int, int, int]]) -> tuple[int, int]:
    """Indices of a product of vertex-/edge-optimal factors ``(n_i, xi_i, pi_i)``."""
    k = len(factors)
    if k == 0:
        raise ValueError("need at least one factor")
    if k == 1:
        return factors[0][1], factors[0][2]
    total = math.prod(f[0] for f in factors)
    xi = sum(total // n_i * (xi_i - 1) for n_i, xi_i, _ in factors) + (k - 1) * total + 1
    pi = max(total // n_i * pi_i for n_i, _, pi_i in factors)
    return xi, pi


def _best_k(kappa, ok):
    ks = [k for k in range(1, kappa + 1) if ok(k)]
    return max(ks) if ks else None


def connectivity_bounds(n: int, kappa: int, lam: int, max_degree: int, regular3: bool = False,
                        diameter: int | None = None) -> BoundReport:
    rep = BoundReport()
    k2 = kappa >= 2
    rep.add("T3.1a", UPPER, "xi", "2-connected", k2, "Thm 3.1(a)", (n - 2) * (n - 3) // 2)
    rep.add("T3.1b", UPPER, "xi_m", "2-connected, n >= 6, diameter 2",
            k2 and n >= 6 and diameter == 2, "Thm 3.1(b)", n * n - 7 * n + 12)
    rep.add("T3.1c", UPPER, "xi_m", "2-connected, n >= 7", k2 and n >= 7, "Thm 3.1(c)",
            n * n - 7 * n + 12)
    rep.add("T3.1d", UPPER, "pi", "2-connected", k2, "Thm 3.1(d)", n * n // 4)

    k = _best_k(kappa, lambda k: k >= 3 and n >= 8 * k - 10)
    rep.add("T3.2", UPPER, "xi", "k-connected, k >= 3, n >= 8k-10", k is not None, "Thm 3.2",
            k and n * n - (2 * k + 1) * n + 2 * k)

    k = kappa
    ok = k >= 1
    steps = _ceil_div(n - k - 1, k) if ok else 0
    rep.add("T3.4a", UPPER, "xi", "k-connected, k >= 1", ok, "Thm 3.4(a)", (n - 1) * steps)
    rep.add("T3.4b", UPPER, "xi_m", "k-connected, n substantially larger than k", ok,
            "Thm 3.4(b)", math.floor(Fraction(n * n, 2) - (k - 1) * n + Fraction(3, 8) * (k - 1) ** 2),
            advisory=True)
    rep.add("T3.4c", UPPER, "pi", "k-connected, k >= 1", ok, "Thm 3.4(c)", n * steps)
    rep.add("T3.5xi", UPPER, "xi", "k-connected, k >= 1", ok, "Thm 3.5",
            (n - 1) * steps - (n - max_degree - 1))
    rep.add("T3.5pi", UPPER, "pi", "k-connected, k >= 1", ok, "Thm 3.5",
            n * steps - (n - max_degree))
    rep.add("T3.7", UPPER, "xi", "3-regular, 3-connected, n >= 4",
            regular3 and kappa >= 3 and n >= 4, "Thm 3.7", _ceil_div((n - 3) * (n - 4), 3))

    l2 = lam >= 2
    rep.add("T3.8a", UPPER, "pi_m", "2-edge-connected", l2, "Thm 3.8(a)",
            math.floor(Fraction(n * n, 2) - n + Fraction(1, 2)))
    rep.add("T3.8b", UPPER, "pi", "2-edge-connected", l2, "Thm 3.8(b)", n * n // 4)
    lk = _best_k(lam, lambda l: l >= 3 and n >= max(3 * l + 3, Fraction((l + 1) ** 2, 2)))
    rep.add("T3.11", UPPER, "xi_m", "lambda-edge-connected, lambda >= 3, n >= max(3l+3, (l+1)^2/2)",
            lk is not None, "Thm 3.11", lk and _ceil_div(n * n, 2) - n - 2 * (lk - 1) ** 2)
    return rep


def digraph_bounds(n: int, k: int, min_degree: int) -> BoundReport:
    rep = BoundReport()
    rep.add("T3.12", UPPER, "pi_m", "strong digraph", n >= 2, "Thm 3.12", (n - 1) * (n - 2) + 1)
    ok = k >= 1 and n >= 3
    rep.add("T3.13a", UPPER, "pi", "k-connected digraph, n >= 3", ok, "Thm 3.13(a)",
            ok and (n - 1) * _ceil_div(n - k - 1, k) + 1)
    rep.add("T3.13b", UPPER, "xi_m", "k-connected digraph, n >= 2k+1", ok and n >= 2 * k + 1,
            "Thm 3.13(b)", n * n - (2 * k + 1) * n + 2 * k)
    rep.add("T3.13c", UPPER, "pi_m", "k-connected digraph, n >= 4k-1", ok and n >= 4 * k - 1,
            "Thm 3.13(c)", n * n - (3 * k + 2) * n + 4 * k + 3)
    d = min_degree
    rep.add("T4.15a", UPPER, "xi_m", "strong digraph", n >= 2, "Thm 4.15(a)",
            n * n - (d + 2) * n + d + 1)
    rep.add("T4.15b", UPPER, "pi_m", "strong digraph, n sufficiently large", n >= 2, "Thm 4.15(b)",
            max(n * n - 3 * n * d + 2 * d * d + d, n * n - (2 * d + 3) * n + d * d + 4 * d + 3),
            advisory=True)
    return rep


def degree_bounds(n: int, max_degree: int, diameter: int, num_edges: int,
                  min_degree: int | None = None) -> BoundReport:
    rep = BoundReport()
    D = max_degree
    q = (n - 1) // D
    rep.add("T4.12", UPPER, "xi", "connected", True, "Thm 4.12",
            (n - 1) * (n - 2) - (2 * n - 2 - D * ((D + n - 1) // D)) * q)
    rep.add("T4.13a", UPPER, "xi_m", "connected", True, "Thm 4.13(a)",
            (n - 1) * (n - 2) - 2 * (num_edges - D))
    d = diameter
    rep.add("T4.13b", UPPER, "xi_m", "connected", True, "Thm 4.13(b)",
            n * n - 3 * n - (d // 2) ** 2 - _ceil_div(d, 2) ** 2 + d + 2)
    rep.add("T4.14", UPPER, "pi_m", "diameter 2, no end vertex",
            diameter == 2 and min_degree is not None and min_degree >= 2, "Thm 4.14", 2 * n - 4)
    return rep


def graph_bounds(g: Graph) -> BoundReport:
    """Every catalog entry evaluated on the parameters of ``g``."""
    dist = distances(g)
    n = g.n
    conn = connectivity(g)
    a, a_ceil = lower_bound_A(g, dist)
    b, b_ceil = lower_bound_B(g, dist)
    rep = BoundReport()
    rep.add("T2.3", LOWER, "xi", "connected", True, "Thm 2.3", a_ceil)
    rep.add("T2.4", LOWER, "pi", "connected", True, "Thm 2.4", b_ceil)
    if g.directed:
        rep.add("T3.12lo", LOWER, "pi", "strong digraph", True, "Thm 3.12", b_ceil)
        return rep.extend(digraph_bounds(n, conn.kappa, g.min_degree))
    xi_up, pi_up = trivial_bounds(n)
    rep.add("T2.3up", UPPER, "xi", "connected", True, "Thm 2.3", xi_up)
    rep.add("T2.4up", UPPER, "pi", "connected", True, "Thm 2.4", pi_up)
    regular3 = g.is_regular() and g.max_degree == 3
    rep.extend(connectivity_bounds(n, conn.kappa, conn.lam, g.max_degree, regular3, dist.diameter))
    rep.extend(degree_bounds(n, g.max_degree, dist.diameter, g.num_edges, g.min_degree))
    return rep


# ---------------------------------------------------------------------------
# minimum indices over (n, degree)-graphs
# ---------------------------------------------------------------------------

@dataclass
class Claim:
    kind: str
    value: int
    citation: str
    disputed: bool = False


@dataclass
class IndexClaims:
    index: str
    claims: list = field(default_factory=list)

    def add(self, kind, value, citation, disputed=False):
        self.claims.append(Claim(kind, int(value), citation, disputed))

    def _values(self, kind):
        return [c.value for c in self.claims if c.kind == kind and not c.disputed]

    @property
    def exact(self) -> int | None:
        values = set(self._values(EQUALITY))
        return values.pop() if len(values) == 1 else None

    @property
    def conflicting(self) -> bool:
        return len(set(self._values(EQUALITY))) > 1

    @property
    def lower(self) -> int | None:
        values = self._values(LOWER) + self._values(EQUALITY)
        return max(values) if values else None

    @property
    def upper(self) -> int | None:
        values = self._values(UPPER) + self._values(EQUALITY)
        return min(values) if values else None

    @property
    def interval(self) -> tuple:
        return (self.lower, self.upper)

    def citations(self) -> list:
        return [c.citation for c in self.claims]


@dataclass
class MinIndexClaims:
    n: int
    constraint: str
    degree: int
    xi: IndexClaims
    pi: IndexClaims


GENERIC = {"T4.5d", "T4.5f", "T4.7a", "T4.7c", "T4.12", "T4.7d", "T2.3", "T2.4"}


def min_index_closed_forms(n: int, constraint: str, degree: int) -> MinIndexClaims:
    """Catalogued values of ``xi_{D,n}``/``pi_{D,n}`` (``constraint="max"``) or
    ``xi_{d,n}``/``pi_{d,n}`` (``constraint="min"``).

    Raises :class:`OutOfCatalog` when only generic bounds apply; the generic
    claims are attached to the exception.
    """
    if constraint not in ("max", "min"):
        raise ValueError("constraint must be 'max' or 'min'")
    if not 1 <= degree <= n - 1:
        raise ValueError(f"degree {degree} impossible for a connected graph of order {n}")
    xi = IndexClaims("xi")
    pi = IndexClaims("pi")
    result = MinIndexClaims(n, constraint, degree, xi, pi)
    if constraint == "min":
        xi.add(EQUALITY, _ceil_div(2 * (n - 1 - degree), degree), "T4.16")
        pi.add(EQUALITY, _ceil_div(2 * (n - 1), degree), "T4.16")
        return result

    D = degree
    if D >= n - 1:
        xi.add(EQUALITY, 0, "S4.1")
        pi.add(EQUALITY, 2, "S4.1")
        return result
    xi.add(LOWER, n - 1 - D, "T4.5d")
    xi.add(UPPER, (n - 1) * (n - 2) - (2 * n - 2 - D * ((D + n - 1) // D)) * ((n - 1) // D), "T4.12")
    if n % 2 == 1 and D % 2 == 1:
        xi.add(LOWER, n - D, "T4.5f")
    if D == 2:
        xi.add(EQUALITY, (n - 1) ** 2 // 4, "T4.3a", disputed=True)
        pi.add(EQUALITY, n * n // 4, "T4.3b")
    else:
        pi.add(LOWER, _ceil_div(4 * (n - 1), D) - 2, "T4.7a")
        if n % 2 == 1 and D % 2 == 1:
            pi.add(LOWER, _ceil_div(4 * n - 2, D) - 2, "T4.7c")
        pi.add(UPPER, n * n // 4, "T4.7d")
        if n % 2 == 0 or D % 2 == 0:
            if 3 * D >= n + 1 or (n in (12, 13) and D == 4):
                xi.add(EQUALITY, n - 1 - D, "T4.4a")
        elif 3 * D >= n + 4 or (n == 13 and D == 5):
            xi.add(EQUALITY, n - D, "T4.4b")
        if D % 2 == 1:
            p = (D - 1) // 2
            if p >= 1 and n % 2 == 1 and 2 * p + 1 <= n <= 6 * p - 1:
                xi.add(EQUALITY, n - 2 * p - 1, "T4.5b")
        else:
            p = D // 2
            if p >= 3 and 2 * p + 1 <= n <= 6 * p - 1:
                xi.add(EQUALITY, n - 2 * p - 1, "T4.5c")
    if (n - D - 1) % 2 == 0 and n - D - 1 >= 2:
        p = (n - D - 1) // 2
        if n >= 3 * p + 2:
            xi.add(EQUALITY, 2 * p, "T4.5a")
        _pi_odd_gap(pi, n, p)
    if (n - D) % 2 == 0 and n - D >= 2:
        p = (n - D) // 2
        if n >= 10 * p - 2 or n == 10 * p - 4:
            pi.add(EQUALITY, 3, "T4.10")
        elif 6 * p + 1 <= n < 10 * p - 4 or n == 10 * p - 3:
            pi.add(EQUALITY, 4, "T4.10")
        elif 4 * p + 1 <= n <= 4 * p + _ceil_div(2 * p - 1, 3) - 2:
            pi.add(EQUALITY, 6, "T4.10")
    if D == n - 2 and n >= 4:
        if n >= 6 and n != 7:
            pi.add(EQUALITY, 3, "S4.3-bs93")
        elif n in (4, 5, 7):
            pi.add(EQUALITY, 4, "S4.3-bs93")

    specific = [c for c in xi.claims + pi.claims if c.citation not in GENERIC]
    if not specific:
        raise OutOfCatalog(f"no catalogued value for n={n}, max degree {D}", result)
    return result


def _pi_odd_gap(pi: IndexClaims, n: int, p: int) -> None:
    # maximum degree n - 2p - 1
    if p >= 2 and 3 * p + _ceil_div(p, 3) + 1 <= n <= 3 * p + _ceil_div(3 * p, 5):
        pi.add(EQUALITY, 8, "S4.3-xhx04")
    if n >= 10 * p + 1:
        pi.add(EQUALITY, 3, "T4.8")
    elif 6 * p + 1 <= n:
        pi.add(EQUALITY, 4, "T4.8")
    elif 4 * p + 2 * _ceil_div(p, 3) + 1 <= n <= 6 * p:
        pi.add(EQUALITY, 5, "T4.8")
    elif 4 * p + 1 <= n <= 4 * p + _ceil_div(2 * p, 3):
        pi.add(EQUALITY, 6, "T4.8")
    elif 4 * p + _ceil_div(2 * p, 3) + 1 <= n <= 4 * p + 2 * _ceil_div(p, 3):
        pi.add(LOWER, 5, "T4.8gap")
        pi.add(UPPER, 6, "T4.8gap")


def attainment_check(g: Graph, value: int, objective: str = VERTEX) -> BoundEntry:
    """Structure forced on a graph whose index meets the generic lower bound.

    For the vertex index the bound is ``n-1-D``; for the edge index it is
    ``ceil(4(n-1)/D) - 2`` (``D >= 3``). A graph attaining it must be
    ``D``-regular of diameter 2. Only applicable when ``D <= n-2``, since
    complete graphs attain the bound with diameter 1.
    """
    n, D = g.n, g.max_degree
    if objective == VERTEX:
        theorem, bound, ok = "T4.5e", n - 1 - D, True
    else:
        theorem, bound, ok = "T4.7b", _ceil_div(4 * (n - 1), D) - 2, D >= 3
    rep = BoundReport()
    applicable = ok and not g.directed and D <= n - 2 and value == bound
    holds = g.is_regular() and distances(g).diameter == 2
    return rep.add(theorem, RELATION, "xi" if objective == VERTEX else "pi",
                   "index equals the generic lower bound, D <= n-2", applicable,
                   "Thm 4.5(e)" if objective == VERTEX else "Thm 4.7(b)", value=bound, holds=holds)


@dataclass
class EnumerativeMinimum:
    n: int
    degree: int
    constraint: str
    objective: str
    value: int | None
    witness: Graph | None
    graphs: int
    optimal: bool


def enumerative_min_index(n: int, degree: int, objective: str = VERTEX, constraint: str = "max",
                          limits: SearchLimits | None = None,
                          enumeration_limit: int = 6) -> EnumerativeMinimum:
    """Minimum exact general-mode index over all connected graphs of order ``n``
    whose maximum (or minimum) degree equals ``degree``."""
    kwargs = {"max_degree": degree} if constraint == "max" else {"min_degree": degree}
    graphs = list(enumerate_connected_graphs(n, limit=enumeration_limit, **kwargs))
    lb_of = lower_bound_A if objective == VERTEX else lower_bound_B
    graphs.sort(key=lambda g: lb_of(g)[0])
    best = None
    witness = None
    optimal = True
    for g in graphs:
        if best is not None and lb_of(g)[1] >= best:
            continue
        res = exact_index(g, objective, GENERAL, limits)
        if not res.optimal:
            optimal = False
        if best is None or res.value < best:
            best, witness = res.value, g
    return EnumerativeMinimum(n, degree, constraint, objective, best, witness, len(graphs), optimal)
