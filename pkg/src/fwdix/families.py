"""Named graph families, their closed-form index claims, and claim verification.

Vertices are always dense integers; human-readable coordinates are attached
as ``Graph.labels``: bit strings for cubes, tuples for meshes and butterflies,
permutations for the star and complete-transposition graphs, and digit
strings for de Bruijn and Kautz graphs.

Adjacency rules for the cube variants:

* folded cube ``FQ_n``: ``Q_n`` plus an edge between every string and its
  complement.
* augmented cube ``AQ_n``: ``u ~ v`` when they differ in exactly one bit, or
  when they differ in exactly the lowest ``i`` bits for some ``i >= 2``.
* crossed cube ``CQ_n``: ``u ~ v`` when for some ``l`` the bits above ``l``
  agree, bit ``l`` differs, bit ``l-1`` agrees if ``l`` is odd, and every
  lower bit pair ``(u_{2i+1}u_{2i}, v_{2i+1}v_{2i})`` with ``i < l//2`` is
  pair-related (``00-00``, ``10-10``, ``01-11``, ``11-01``).

The wrapped butterfly is directed. Undirected de Bruijn and Kautz graphs are
the underlying simple graphs of the shift digraphs (loops dropped,
antiparallel arcs merged).
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .graph import Graph, build_graph, distances, product_of
from .routing import LOAD_AWARE, load_profile, shortest_path_routing
from .solver import (EDGE, GENERAL, MINIMAL, VERTEX, BudgetExhausted, SearchLimits,
                     exact_index, heuristic_index, lower_bound_A, lower_bound_B)

INDEX_MODES = {"xi": (VERTEX, GENERAL), "xi_m": (VERTEX, MINIMAL),
               "pi": (EDGE, GENERAL), "pi_m": (EDGE, MINIMAL)}

CONFIRMED = "confirmed"
REFUTED = "refuted"
BOUND_CONSISTENT = "bound-consistent"
BOUND_INCONSISTENT = "bound-inconsistent"
SKIPPED = "skipped"

CSV_COLUMNS = ["family", "params", "objective", "mode", "claimed", "computed", "verdict", "citation"]


class BadParams(ValueError):
    pass


class NoClaim(LookupError):
    pass


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def _bits(i: int, n: int) -> str:
    return format(i, f"0{n}b") if n else ""


def complete(n: int) -> Graph:
    return build_graph(n, itertools.combinations(range(n), 2), name=f"K{n}")


def star(n: int) -> Graph:
    """``K_{1,n-1}``: centre 0 and leaves 1..n-1."""
    return build_graph(n, [(0, v) for v in range(1, n)], name=f"K1,{n - 1}")


def path(n: int) -> Graph:
    return build_graph(n, [(v, v + 1) for v in range(n - 1)], name=f"P{n}")


def cycle(d: int) -> Graph:
    return build_graph(d, [(v, (v + 1) % d) for v in range(d)], name=f"C{d}")


def directed_cycle(d: int) -> Graph:
    return build_graph(d, [(v, (v + 1) % d) for v in range(d)], directed=True, name=f"DC{d}")


def complete_bipartite(m: int, n: int) -> Graph:
    """Parts ``0..m-1`` and ``m..m+n-1``."""
    return build_graph(m + n, [(u, m + v) for u in range(m) for v in range(n)], name=f"K{m},{n}")


def wheel(n: int) -> Graph:
    """Rim cycle ``0..n-2`` and hub ``n-1``."""
    rim = n - 1
    arcs = [(v, (v + 1) % rim) for v in range(rim)] + [(v, rim) for v in range(rim)]
    return build_graph(n, arcs, name=f"W{n}")


def _mesh(dims: Sequence[int], factor: Callable[[int], Graph], name: str) -> Graph:
    g = product_of([factor(d) for d in dims])
    labels = list(itertools.product(*[range(d) for d in dims]))
    return g.relabeled(name, labels)


def toroidal_mesh(*dims: int) -> Graph:
    return _mesh(dims, cycle, "C(" + ",".join(map(str, dims)) + ")")


def directed_toroidal_mesh(*dims: int) -> Graph:
    return _mesh(dims, directed_cycle, "DC(" + ",".join(map(str, dims)) + ")")


def d_ary_n_cube(n: int, d: int) -> Graph:
    return toroidal_mesh(*([d] * n)).relabeled(f"C{n}({d})")


def generalized_hypercube(*dims: int) -> Graph:
    return _mesh(dims, complete, "Q(" + ",".join(map(str, dims)) + ")")


def hypercube(n: int) -> Graph:
    if n == 1:
        return build_graph(2, [(0, 1)], name="Q1", labels=["0", "1"])
    g = product_of([complete(2)] * n)
    return g.relabeled(f"Q{n}", [_bits(i, n) for i in range(2 ** n)])


def _bit_graph(n: int, adjacent: Callable[[int, int], bool], name: str) -> Graph:
    size = 2 ** n
    arcs = [(u, v) for u in range(size) for v in range(u + 1, size) if adjacent(u, v)]
    return build_graph(size, arcs, name=name, labels=[_bits(i, n) for i in range(size)])


def folded_cube(n: int) -> Graph:
    full = 2 ** n - 1

    def adjacent(u, v):
        x = u ^ v
        return x == full or x & (x - 1) == 0

    return _bit_graph(n, adjacent, f"FQ{n}")


def augmented_cube(n: int) -> Graph:
    low = {(1 << i) - 1 for i in range(2, n + 1)}

    def adjacent(u, v):
        x = u ^ v
        return x & (x - 1) == 0 or x in low

    return _bit_graph(n, adjacent, f"AQ{n}")


_PAIR_RELATED = {(0b00, 0b00), (0b10, 0b10), (0b01, 0b11), (0b11, 0b01)}


def _crossed_adjacent(u: int, v: int) -> bool:
    x = u ^ v
    l = x.bit_length() - 1
    if l < 0:
        return False
    if l % 2 == 1 and (x >> (l - 1)) & 1:
        return False
    return all(((u >> 2 * i) & 3, (v >> 2 * i) & 3) in _PAIR_RELATED for i in range(l // 2))


def crossed_cube(n: int) -> Graph:
    return _bit_graph(n, _crossed_adjacent, f"CQ{n}")


def cube_connected_cycles(n: int) -> Graph:
    """Vertex ``(x, i)`` has label ``x * n + i``."""
    arcs = []
    for x in range(2 ** n):
        for i in range(n):
            arcs.append((x * n + i, x * n + (i + 1) % n))
            arcs.append((x * n + i, (x ^ (1 << i)) * n + i))
    labels = [(_bits(x, n), i) for x in range(2 ** n) for i in range(n)]
    return build_graph(n * 2 ** n, arcs, name=f"CCC{n}", labels=labels)


def wrapped_butterfly(k: int, n: int) -> Graph:
    """Directed wrapped butterfly: arcs ``(x, l) -> (x', l+1 mod n)`` where ``x'``
    may differ from ``x`` only in coordinate ``l``. Out- and in-degree are ``k``;
    vertex ``(x, l)`` has label ``rank(x) * n + l``."""
    words = list(itertools.product(range(k), repeat=n))
    pos = {w: i for i, w in enumerate(words)}
    arcs = []
    for w in words:
        for l in range(n):
            for a in range(k):
                w2 = w[:l] + (a,) + w[l + 1:]
                arcs.append((pos[w] * n + l, pos[w2] * n + (l + 1) % n))
    labels = [("".join(map(str, w)), l) for w in words for l in range(n)]
    return build_graph(len(words) * n, arcs, directed=True, name=f"WB{k}({n})", labels=labels)


def _shift_graph(words: list, letters: int, allowed: Callable[[tuple, int], bool], name: str) -> Graph:
    pos = {w: i for i, w in enumerate(words)}
    arcs = set()
    for w in words:
        for a in range(letters):
            if allowed(w, a):
                u, v = pos[w], pos[w[1:] + (a,)]
                if u != v:
                    arcs.add((min(u, v), max(u, v)))
    labels = ["".join(map(str, w)) for w in words]
    return build_graph(len(words), sorted(arcs), name=name, labels=labels)


def de_bruijn(d: int, n: int) -> Graph:
    words = list(itertools.product(range(d), repeat=n))
    return _shift_graph(words, d, lambda w, a: True, f"UB({d},{n})")


def kautz(d: int, n: int) -> Graph:
    words = [w for w in itertools.product(range(d + 1), repeat=n)
             if all(a != b for a, b in zip(w, w[1:]))]
    return _shift_graph(words, d + 1, lambda w, a: a != w[-1], f"UK({d},{n})")


def _permutation_graph(n: int, swaps: list, name: str) -> Graph:
    perms = list(itertools.permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    arcs = set()
    for p in perms:
        for i, j in swaps:
            q = list(p)
            q[i], q[j] = q[j], q[i]
            u, v = pos[p], pos[tuple(q)]
            arcs.add((min(u, v), max(u, v)))
    return build_graph(len(perms), sorted(arcs), name=name, labels=perms)


def star_graph(n: int) -> Graph:
    """Permutations adjacent when they differ by swapping the first entry with another."""
    return _permutation_graph(n, [(0, i) for i in range(1, n)], f"S{n}")


def complete_transposition(n: int) -> Graph:
    return _permutation_graph(n, list(itertools.combinations(range(n), 2)), f"CT{n}")


# ---------------------------------------------------------------------------
# claims
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    """``lower <= index <= upper``; an equality when both are equal."""
    index: str
    lower: int | None
    upper: int | None
    citation: str
    disputed: bool = False

    @property
    def exact(self) -> bool:
        return self.lower is not None and self.lower == self.upper

    def describe(self) -> str:
        if self.exact:
            return str(self.lower)
        if self.lower is None:
            return f"<={self.upper}"
        if self.upper is None:
            return f">={self.lower}"
        return f"[{self.lower},{self.upper}]"

    def to_json(self) -> dict:
        return {"index": self.index, "lower": self.lower, "upper": self.upper,
                "citation": self.citation, "disputed": self.disputed}


def _int(x) -> int:
    x = Fraction(x)
    if x.denominator != 1:
        raise ArithmeticError(f"closed form produced non-integer {x}")
    return int(x)


def _eq(index, value, cite, disputed=False):
    v = _int(value)
    return Claim(index, v, v, cite, disputed)


def _cite(item: int) -> str:
    return f"§6-item{item}"


def _claims_complete(n):
    return [_eq("xi", 0, _cite(1)), _eq("pi", 2, _cite(1))]


def _claims_star(n):
    return [_eq("xi", (n - 1) * (n - 2), _cite(2)), _eq("pi", 2 * (n - 1), _cite(2))]


def _claims_path(n):
    f, c = n // 2, -(-n // 2)
    return [_eq("xi", 2 * f * (c - 1), _cite(3)), _eq("pi", 2 * f * c, _cite(3))]


def _claims_bipartite(m, n):
    xi = -(-m * (m - 1) // n)
    out = [_eq("xi", xi, _cite(4)), _eq("xi_m", xi, _cite(4))]
    if n == 1:
        out.append(_eq("pi_m", 2 * m, _cite(4)))
        return out
    lo = -(-(2 * m * (m - 1) + 2 * n * (n - 1)) // (m * n)) + 2
    out.append(Claim("pi_m", lo, None, _cite(4)))
    out.append(Claim("pi_m", None, -(-(m - 1) // n), _cite(4), disputed=True))
    if m == n:
        v = 4 if n == 2 else 5 if n in (3, 4) else 6
        out += [_eq("pi", v, _cite(4)), _eq("pi_m", v, _cite(4))]
    return out


def _claims_cycle(d):
    printed = (d - 1) ** 2 // 4
    torus = d * d // 4 - d + 1
    return [_eq("xi", printed, _cite(5), disputed=printed != torus),
            _eq("xi_m", printed, _cite(5), disputed=printed != torus),
            _eq("pi", d * d // 4, _cite(5)), _eq("pi_m", d * d // 4, _cite(5)),
            _eq("xi", torus, _cite(6)), _eq("xi_m", torus, _cite(6))]


def _claims_directed_cycle(d):
    return [_eq("xi", Fraction((d - 1) * (d - 2), 2), _cite(5)),
            _eq("pi", Fraction(d * (d - 1), 2), _cite(7))]


def _claims_torus(*dims):
    total = math.prod(dims)
    terms = [total // d * (d * d // 4) for d in dims]
    return [_eq("xi", sum(terms) - total + 1, _cite(6)), _eq("pi", max(terms), _cite(6))]


def _claims_d_ary(n, d):
    return [_eq("xi", n * d ** (n - 1) * (d * d // 4) - (d ** n - 1), _cite(6)),
            _eq("pi", d ** (n - 1) * (d * d // 4), _cite(6))]


def _claims_directed_torus(*dims):
    total = math.prod(dims)
    n = len(dims)
    xi = Fraction(sum(d - 3 for d in dims) * total, 2) + (n - 1) * total + 1
    pi = max(Fraction(total * (d - 1), 2) for d in dims)
    return [_eq("xi", xi, _cite(7)), _eq("pi", pi, _cite(7))]


def _claims_generalized_hypercube(*dims):
    total = math.prod(dims)
    n = len(dims)
    xi = -sum(total // d for d in dims) + (n - 1) * total + 1
    pi = max(2 * total // d for d in dims)
    return [_eq("xi", xi, _cite(8)), _eq("pi", pi, _cite(8))]


def _claims_hypercube(n):
    return [_eq("xi", (n - 2) * 2 ** (n - 1) + 1, _cite(8)), _eq("pi", 2 ** n, _cite(8))]


def _claims_crossed(n):
    return [_eq("pi", 2 ** n, _cite(9)), _eq("pi_m", 2 ** n, _cite(9))]


def _claims_folded(n):
    c = math.comb(n, -(-n // 2))
    xi = (n - 1) * 2 ** (n - 1) + 1 - Fraction(n + 1, 2) * c
    pi = 2 ** n - c
    return [_eq("xi", xi, _cite(10)), _eq("xi_m", xi, _cite(10)),
            _eq("pi", pi, _cite(10)), _eq("pi_m", pi, _cite(10))]


def _claims_augmented(n):
    p = 2 ** n
    xi = Fraction(p, 9) + Fraction((-1) ** (n + 1), 9) + Fraction(n * p, 3) - p + 1
    return [_eq("xi", xi, _cite(11)), _eq("pi", 2 ** (n - 1), _cite(11))]


def _claims_butterfly(k, n):
    kn = k ** n
    xi = Fraction(3 * n * (n - 1), 2) * kn - Fraction(n * (kn - 1), k - 1) + 1
    return [_eq("xi", xi, _cite(12))]


def _claims_star_graph(n):
    alpha = math.factorial(n - 2) * sum(Fraction(n - i, i) for i in range(2, n))
    base = 2 * math.factorial(n - 1) * (n - 1)
    return [Claim("pi", base + math.ceil(2 * alpha), base + 2 * math.ceil(alpha), _cite(13))]


def _claims_complete_transposition(n):
    beta = 2 * math.factorial(n - 2) * sum(Fraction(1, i) for i in range(3, n + 1))
    base = 2 * math.factorial(n - 2) * (2 * n - 3)
    return [Claim("pi", base - math.floor(2 * beta), base - 2 * math.floor(beta), _cite(14))]


def _claims_de_bruijn(d, n):
    return [Claim("xi", None, (n - 1) * d ** n, _cite(15)),
            Claim("pi", None, 2 * n * d ** (n - 1), _cite(15))]


def _claims_kautz(d, n):
    return [Claim("xi", None, (n - 1) * d ** n, _cite(15)),
            Claim("pi", None, 2 * (n - 1) * d ** (n - 2) * (d + 1), _cite(15))]


@dataclass(frozen=True)
class _Family:
    generator: Callable
    claims: Callable | None
    arity: int | None  # None: any number of params >= 1
    minimum: tuple
    transitive: Callable[[tuple], bool]


_ALWAYS = lambda p: True
_NEVER = lambda p: False

FAMILIES = {
    "complete": _Family(complete, _claims_complete, 1, (2,), _ALWAYS),
    "star": _Family(star, _claims_star, 1, (3,), _NEVER),
    "path": _Family(path, _claims_path, 1, (2,), lambda p: p[0] == 2),
    "cycle": _Family(cycle, _claims_cycle, 1, (3,), _ALWAYS),
    "directed-cycle": _Family(directed_cycle, _claims_directed_cycle, 1, (3,), _ALWAYS),
    "complete-bipartite": _Family(complete_bipartite, _claims_bipartite, 2, (1, 1), lambda p: p[0] == p[1]),
    "wheel": _Family(wheel, None, 1, (4,), lambda p: p[0] == 4),
    "hypercube": _Family(hypercube, _claims_hypercube, 1, (1,), _ALWAYS),
    "generalized-hypercube": _Family(generalized_hypercube, _claims_generalized_hypercube, None, (2,), _ALWAYS),
    "d-ary-n-cube": _Family(d_ary_n_cube, _claims_d_ary, 2, (1, 3), _ALWAYS),
    "toroidal-mesh": _Family(toroidal_mesh, _claims_torus, None, (3,), _ALWAYS),
    "directed-toroidal-mesh": _Family(directed_toroidal_mesh, _claims_directed_torus, None, (3,), _ALWAYS),
    "folded-cube": _Family(folded_cube, _claims_folded, 1, (2,), _ALWAYS),
    "augmented-cube": _Family(augmented_cube, _claims_augmented, 1, (2,), _ALWAYS),
    "crossed-cube": _Family(crossed_cube, _claims_crossed, 1, (2,), _ALWAYS),
    "cube-connected-cycles": _Family(cube_connected_cycles, None, 1, (3,), _ALWAYS),
    "wrapped-butterfly": _Family(wrapped_butterfly, _claims_butterfly, 2, (2, 2), _ALWAYS),
    "de-bruijn": _Family(de_bruijn, _claims_de_bruijn, 2, (2, 2), _NEVER),
    "kautz": _Family(kautz, _claims_kautz, 2, (2, 2), _NEVER),
    "star-graph": _Family(star_graph, _claims_star_graph, 1, (3,), _ALWAYS),
    "complete-transposition": _Family(complete_transposition, _claims_complete_transposition, 1, (3,), _ALWAYS),
}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple
    claims: tuple | None = None  # overrides the catalogued claims
    transitive: bool | None = None

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        fam = FAMILIES.get(self.family)
        if fam is None:
            raise BadParams(f"unknown family {self.family!r}; known: {', '.join(FAMILIES)}")
        p = self.params
        if fam.arity is None:
            if not p or any(x < fam.minimum[0] for x in p):
                raise BadParams(f"{self.family} needs one or more parameters >= {fam.minimum[0]}")
        else:
            if len(p) != fam.arity:
                raise BadParams(f"{self.family} takes {fam.arity} parameter(s), got {len(p)}")
            bad = [f"{x} < {lo}" for x, lo in zip(p, fam.minimum) if x < lo]
            if bad:
                raise BadParams(f"{self.family} parameters out of range: {', '.join(bad)}")
        if self.family == "complete-bipartite" and p[0] < p[1]:
            raise BadParams("complete-bipartite expects m >= n")
        if self.transitive is None:
            object.__setattr__(self, "transitive", fam.transitive(p))

    @property
    def label(self) -> str:
        return ";".join(map(str, self.params))

    def to_json(self) -> dict:
        out = {"family": self.family, "params": list(self.params)}
        if self.claims is not None:
            out["claims"] = [c.to_json() for c in self.claims]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FamilySpec":
        claims = data.get("claims")
        if claims is not None:
            claims = tuple(Claim(c["index"], c.get("lower"), c.get("upper"),
                                 c.get("citation", "manifest"), c.get("disputed", False))
                           for c in claims)
        return cls(data["family"], tuple(data.get("params", ())), claims, data.get("transitive"))


def parse_params(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(";", ",").split(",") if x.strip())
    except ValueError as exc:
        raise BadParams(f"parameters must be integers: {text!r}") from exc


def generate(spec: FamilySpec) -> Graph:
    return FAMILIES[spec.family].generator(*spec.params)


def closed_form(spec: FamilySpec) -> list:
    if spec.claims is not None:
        return list(spec.claims)
    fn = FAMILIES[spec.family].claims
    if fn is None:
        raise NoClaim(f"no closed-form claims catalogued for {spec.family}")
    return fn(*spec.params)


def load_manifest(path) -> list:
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data.get("specs", [])
    return [FamilySpec.from_json(item) for item in data]


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerifyLimits:
    """Largest orders solved exactly; larger graphs only get bound checks."""
    general_max_n: int = 9
    minimal_max_n: int = 12
    heuristic_max_n: int = 64
    search: SearchLimits = field(default_factory=lambda: SearchLimits(time_budget=60.0))


@dataclass
class Computed:
    value: int | None  # exact value when optimal
    lower: int
    upper: int | None
    status: str

    def describe(self) -> str:
        if self.value is not None:
            return str(self.value)
        return f"[{self.lower},{'' if self.upper is None else self.upper}]"


@dataclass
class VerificationRow:
    family: str
    params: str
    objective: str
    mode: str
    claimed: str
    computed: str
    verdict: str
    citation: str
    disputed: bool = False
    reason: str = ""

    def as_list(self) -> list:
        return [getattr(self, c) for c in CSV_COLUMNS]

    def to_json(self) -> dict:
        out = {c: getattr(self, c) for c in CSV_COLUMNS}
        out["disputed"] = self.disputed
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class VerificationRecord:
    spec: FamilySpec
    claims: list
    computed: dict
    rows: list

    @property
    def verdict(self) -> str:
        verdicts = {r.verdict for r in self.rows}
        for v in (REFUTED, BOUND_INCONSISTENT, CONFIRMED, BOUND_CONSISTENT):
            if v in verdicts:
                return v
        return SKIPPED

    @property
    def failed(self) -> bool:
        return any(r.verdict in (REFUTED, BOUND_INCONSISTENT) for r in self.rows)


def _compute(g: Graph, index: str, limits: VerifyLimits, dist) -> Computed:
    objective, mode = INDEX_MODES[index]
    exact_cap = limits.general_max_n if mode == GENERAL else limits.minimal_max_n
    lb = (lower_bound_A if objective == VERTEX else lower_bound_B)(g, dist)[1]
    if g.n <= exact_cap:
        res = exact_index(g, objective, mode, limits.search, dist)
        if res.optimal:
            return Computed(res.value, res.value, res.value, res.status)
        return Computed(None, max(lb, res.lower_bound), res.value, res.status)
    prof = load_profile(g, shortest_path_routing(g, LOAD_AWARE, dist), validate=False)
    upper = prof.xi if objective == VERTEX else prof.pi
    if mode == GENERAL and g.n <= limits.heuristic_max_n:
        upper = min(upper, heuristic_index(g, objective, dist=dist).value)
    if lb == upper:
        return Computed(lb, lb, upper, "optimal")
    return Computed(None, lb, upper, "bounds")


def _judge(claim: Claim, c: Computed) -> tuple[str, str]:
    lo = claim.lower if claim.lower is not None else -math.inf
    hi = claim.upper if claim.upper is not None else math.inf
    if c.value is not None:
        inside = lo <= c.value <= hi
        if claim.exact:
            return (CONFIRMED if inside else REFUTED), ""
        return (BOUND_CONSISTENT if inside else REFUTED), ""
    upper = c.upper if c.upper is not None else math.inf
    if max(lo, c.lower) <= min(hi, upper):
        return BOUND_CONSISTENT, "graph too large for exact solve"
    return BOUND_INCONSISTENT, "claim lies outside proven bounds"


def verify_family(spec: FamilySpec, limits: VerifyLimits | None = None) -> VerificationRecord:
    limits = limits or VerifyLimits()
    try:
        claims = closed_form(spec)
    except NoClaim as exc:
        row = VerificationRow(spec.family, spec.label, "", "", "", "", SKIPPED, "", reason=str(exc))
        return VerificationRecord(spec, [], {}, [row])
    g = generate(spec)
    dist = distances(g)
    computed = {}
    rows = []
    for claim in claims:
        objective, mode = INDEX_MODES[claim.index]
        try:
            if claim.index not in computed:
                computed[claim.index] = _compute(g, claim.index, limits, dist)
            c = computed[claim.index]
            verdict, reason = _judge(claim, c)
            shown = c.describe()
        except (BudgetExhausted, ValueError, MemoryError) as exc:
            verdict, reason, shown = SKIPPED, str(exc), ""
        rows.append(VerificationRow(spec.family, spec.label, objective, mode, claim.describe(),
                                    shown, verdict, claim.citation, claim.disputed, reason))
    return VerificationRecord(spec, claims, computed, rows)


def verify_many(specs: Sequence[FamilySpec], limits: VerifyLimits | None = None,
                workers: int = 1) -> list:
    """Verify each spec; records come back in input order regardless of ``workers``."""
    if workers <= 1 or len(specs) <= 1:
        return [verify_family(s, limits) for s in specs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(verify_family, specs, [limits] * len(specs)))


def report_csv(records: Sequence[VerificationRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in records:
        for row in rec.rows:
            w.writerow(row.as_list())
    return buf.getvalue()


def report_json(records: Sequence[VerificationRecord]) -> dict:
    return {"records": [{"spec": rec.spec.to_json(), "verdict": rec.verdict,
                         "rows": [r.to_json() for r in rec.rows]} for rec in records]}
