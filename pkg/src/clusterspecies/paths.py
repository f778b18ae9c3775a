"""Arrows and truncated elements of the complete path algebra.

In the character basis the path algebra of a group species is the path
algebra of an ordinary quiver whose vertices are (vertex, character) pairs;
an arrow is one copy of an irreducible character-pair summand of a bimodule.
Truncated elements are finite rational combinations of composable paths of
bounded length.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .species import Bimodule, CharacterIndex, GroupSpecies, char_key


@dataclass(frozen=True, order=True)
class Arrow:
    source: CharacterIndex
    target: CharacterIndex
    copy: int
    name: str

    def __repr__(self):
        return self.name


def make_arrow(source: CharacterIndex, target: CharacterIndex, copy: int) -> Arrow:
    name = f"{source.vertex}:{char_key(source.char)}→{target.vertex}:{char_key(target.char)}#{copy}"
    return Arrow(source, target, copy, name)


def species_arrows(sp: GroupSpecies) -> tuple[Arrow, ...]:
    """The canonical arrow basis of a species, in deterministic order."""
    out = []
    for b in sp.bimodules:
        if b.is_zero():
            continue
        schars = b.source_group.characters()
        tchars = b.target_group.characters()
        for r, rho in enumerate(schars):
            for c, sig in enumerate(tchars):
                for copy in range(b.mult[r][c]):
                    out.append(make_arrow(CharacterIndex(b.source, rho), CharacterIndex(b.target, sig), copy))
    return tuple(out)


def arrows_to_species(vertices, groups, arrows) -> GroupSpecies:
    """Rebuild the species multiplicity data from an arrow list."""
    gidx = dict(zip(vertices, groups))
    mults = {}
    for a in arrows:
        g_s, g_t = gidx[a.source.vertex], gidx[a.target.vertex]
        key = (a.source.vertex, a.target.vertex)
        m = mults.setdefault(key, [[0] * g_t.order for _ in range(g_s.order)])
        r = g_s.characters().index(a.source.char)
        c = g_t.characters().index(a.target.char)
        m[r][c] += 1
    return GroupSpecies.build(vertices, [gidx[v] for v in vertices], mults)


def canonical_arrows(vertices, groups, raw_arrows) -> tuple[tuple[Arrow, ...], dict]:
    """Relabel arbitrary arrows into the canonical naming scheme.

    Returns (new arrows, mapping old -> new).  Old arrows are grouped by
    endpoint characters and renumbered in their existing deterministic order.
    """
    counters: dict[tuple, int] = {}
    mapping = {}
    out = []
    for a in sorted(raw_arrows):
        key = (a.source, a.target)
        n = counters.get(key, 0)
        counters[key] = n + 1
        na = make_arrow(a.source, a.target, n)
        mapping[a] = na
        out.append(na)
    return tuple(out), mapping


Path = tuple  # tuple of Arrow


def path_ok(path: Path) -> bool:
    return all(path[t].target == path[t + 1].source for t in range(len(path) - 1))


def path_source(path: Path) -> CharacterIndex:
    return path[0].source


def path_target(path: Path) -> CharacterIndex:
    return path[-1].target


def is_cycle(path: Path) -> bool:
    return bool(path) and path_source(path) == path_target(path)


class TruncatedElement:
    """Finite rational combination of composable paths, truncated at degree N."""

    __slots__ = ("terms", "N")

    def __init__(self, N: int, terms=None):
        self.N = int(N)
        clean: dict[Path, Fraction] = {}
        if terms:
            for path, coeff in terms.items():
                path = tuple(path)
                c = Fraction(coeff)
                if not c or len(path) > self.N:
                    continue
                if not path_ok(path):
                    raise ValueError(f"non-composable path {path}")
                clean[path] = clean.get(path, Fraction(0)) + c
                if not clean[path]:
                    del clean[path]
        self.terms = clean

    @classmethod
    def zero(cls, N):
        return cls(N, {})

    @classmethod
    def of_path(cls, N, path, coeff=1):
        return cls(N, {tuple(path): Fraction(coeff)})

    def is_zero(self):
        return not self.terms

    def min_degree(self):
        return min((len(p) for p in self.terms), default=0)

    def max_degree(self):
        return max((len(p) for p in self.terms), default=0)

    def __add__(self, other):
        t = dict(self.terms)
        for p, c in other.terms.items():
            t[p] = t.get(p, Fraction(0)) + c
            if not t[p]:
                del t[p]
        out = TruncatedElement(self.N, {})
        out.terms = t
        return out

    def __neg__(self):
        out = TruncatedElement(self.N, {})
        out.terms = {p: -c for p, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return TruncatedElement.zero(self.N)
        out = TruncatedElement(self.N, {})
        out.terms = {p: x * c for p, x in self.terms.items()}
        return out

    def __mul__(self, other):
        """Concatenation product, dropping non-composable pairs and deep terms."""
        t: dict[Path, Fraction] = {}
        for p1, c1 in self.terms.items():
            for p2, c2 in other.terms.items():
                if len(p1) + len(p2) > self.N:
                    continue
                if p1 and p2 and p1[-1].target != p2[0].source:
                    continue
                p = p1 + p2
                t[p] = t.get(p, Fraction(0)) + c1 * c2
                if not t[p]:
                    del t[p]
        out = TruncatedElement(self.N, {})
        out.terms = t
        return out

    def __eq__(self, other):
        return isinstance(other, TruncatedElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for p, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            word = "".join(f"({a.name})" for a in p) or "1"
            bits.append(f"{c}*{word}")
        return " + ".join(bits)


def enumerate_paths(arrows, max_len: int, start=None, end=None, cap: int = 500_000):
    """All composable paths of length 1..max_len, optionally endpoint-filtered."""
    by_source: dict[CharacterIndex, list[Arrow]] = {}
    for a in arrows:
        by_source.setdefault(a.source, []).append(a)
    for v in by_source.values():
        v.sort()
    out = []
    frontier: list[Path] = [(a,) for a in sorted(arrows) if start is None or a.source == start]
    while frontier:
        nxt = []
        for p in frontier:
            if end is None or path_target(p) == end:
                out.append(p)
            if len(out) > cap:
                raise RuntimeError("path enumeration exceeded cap")
            if len(p) < max_len:
                for a in by_source.get(path_target(p), ()):
                    nxt.append(p + (a,))
        frontier = nxt
    return out
