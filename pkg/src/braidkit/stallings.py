"""
Stallings folding for finitely generated subgroups of free groups.

A subgroup given by a list of generator words is turned into its folded core
graph: edges are labeled by alphabet symbols and no vertex carries two equal
labels in the same direction. Membership is path reading from the base
vertex; the rank of the subgroup is the first Betti number of the graph.

Every edge carries a provenance word over the input generators. Folding
re-attaches edges between merged vertices and corrects their provenance so
that for any closed path at the base vertex, the provenance product maps to
the path word under substitution of the input generators. That makes
`express` exact: the returned (generator index, sign) sequence re-multiplies
to the query word, and this is re-checked before returning.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .words import Alphabet, Word

GenLetter = tuple[int, int]  # (input generator index, sign)


class NotAMember(Exception):
    """Raised by express() when the word is not in the subgroup."""


def _greduce(letters: tuple[GenLetter, ...]) -> tuple[GenLetter, ...]:
    out: list[GenLetter] = []
    for idx, sign in letters:
        if out and out[-1][0] == idx and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((idx, sign))
    return tuple(out)


def _gmul(a: tuple[GenLetter, ...], b: tuple[GenLetter, ...]) -> tuple[GenLetter, ...]:
    return _greduce(a + b)


def _ginv(a: tuple[GenLetter, ...]) -> tuple[GenLetter, ...]:
    return tuple((i, -s) for i, s in reversed(a))


@dataclass
class SubgroupGraph:
    """Folded core graph of a subgroup, base vertex 0."""

    alphabet: Alphabet
    generators: tuple[Word, ...]
    # out[v][symbol] = head vertex, inc[v][symbol] = tail vertex
    out: list[dict[str, int]] = field(default_factory=list)
    inc: list[dict[str, int]] = field(default_factory=list)
    # provenance of the edge out[v][symbol], as a reduced generator word
    prov: list[dict[str, tuple[GenLetter, ...]]] = field(default_factory=list)

    def vertex_count(self) -> int:
        return len(self.out)

    def edge_count(self) -> int:
        return sum(len(d) for d in self.out)

    def to_json(self) -> dict:
        """Adjacency form for debugging."""
        return {
            "alphabet": list(self.alphabet.symbols),
            "generators": [str(g) for g in self.generators],
            "edges": [
                {"from": v, "label": s, "to": t}
                for v, d in enumerate(self.out)
                for s, t in sorted(d.items())
            ],
        }


class _Builder:
    """Mutable multigraph that folds down to a SubgroupGraph."""

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        # edges[eid] = (tail, symbol, head, prov) or None once deleted
        self.edges: list[tuple[int, str, int, tuple[GenLetter, ...]] | None] = []
        self.at: list[list[int]] = [[]]  # vertex -> incident edge ids (stale ids allowed)
        self.alive: list[bool] = [True]

    def new_vertex(self) -> int:
        self.at.append([])
        self.alive.append(True)
        return len(self.at) - 1

    def add_edge(self, tail: int, symbol: str, head: int, prov: tuple[GenLetter, ...]) -> None:
        eid = len(self.edges)
        self.edges.append((tail, symbol, head, prov))
        self.at[tail].append(eid)
        if head != tail:
            self.at[head].append(eid)

    def add_generator_loop(self, index: int, w: Word) -> None:
        # Trivial generators contribute nothing to the graph.
        if w.is_identity():
            return
        cur = 0
        n = len(w.letters)
        for pos, (sym, sign) in enumerate(w.letters):
            nxt = 0 if pos == n - 1 else self.new_vertex()
            prov: tuple[GenLetter, ...] = ((index, 1),) if pos == 0 else ()
            if sign > 0:
                self.add_edge(cur, sym, nxt, prov)
            else:
                # store positively oriented; provenance follows the orientation
                self.add_edge(nxt, sym, cur, _ginv(prov))
            cur = nxt

    def _merge_vertices(self, keep: int, drop: int, delta: tuple[GenLetter, ...]) -> None:
        """
        Identify `drop` into `keep`. Every edge leaving `drop` gets its
        provenance left-multiplied by delta, every edge entering it gets
        delta^-1 appended, preserving provenance of all rerouted paths.
        """
        if keep == drop:
            return
        for eid in self.at[drop]:
            e = self.edges[eid]
            if e is None:
                continue
            tail, sym, head, prov = e
            if tail == drop:
                tail, prov = keep, _gmul(delta, prov)
            if head == drop:
                head, prov = keep, _gmul(prov, _ginv(delta))
            self.edges[eid] = (tail, sym, head, prov)
            self.at[keep].append(eid)
        self.at[drop] = []
        self.alive[drop] = False

    def fold(self) -> None:
        """Merge equal-label edge pairs until the graph is folded."""
        dirty = [0] + list(range(1, len(self.at)))
        while dirty:
            v = dirty.pop()
            if not self.alive[v]:
                continue
            seen_out: dict[str, int] = {}
            seen_in: dict[str, int] = {}
            visited: set[int] = set()
            for eid in list(self.at[v]):
                if eid in visited:
                    continue
                visited.add(eid)
                e = self.edges[eid]
                if e is None or (e[0] != v and e[2] != v):
                    continue
                tail, sym, head, prov = e
                clash = None
                if tail == v:
                    other = seen_out.get(sym)
                    if other is None:
                        seen_out[sym] = eid
                    else:
                        clash = (other, eid, True)
                if clash is None and head == v:
                    other = seen_in.get(sym)
                    if other is None:
                        seen_in[sym] = eid
                    else:
                        clash = (other, eid, False)
                if clash is None:
                    continue
                kid, did, outgoing = clash
                ke = self.edges[kid]
                de = self.edges[did]
                assert ke is not None and de is not None
                t_keep = ke[2] if outgoing else ke[0]
                t_drop = de[2] if outgoing else de[0]
                # never merge the base vertex away
                if t_drop == 0 and t_keep != 0:
                    kid, did = did, kid
                    ke, de = de, ke
                    t_keep, t_drop = t_drop, t_keep
                pk, pd = ke[3], de[3]
                # rerouting paths from the dropped edge onto the kept one
                delta = _gmul(_ginv(pk), pd) if outgoing else _gmul(pk, _ginv(pd))
                # drop the duplicate edge; parallel edges have equal images
                self.edges[did] = None
                if t_keep != t_drop:
                    self._merge_vertices(t_keep, t_drop, delta)
                    dirty.append(t_keep)
                dirty.append(v)
                break

    def finish(self, generators: tuple[Word, ...]) -> SubgroupGraph:
        # compact live vertices, base first, then by old id (first appearance)
        live = [v for v in range(len(self.at)) if self.alive[v]]
        remap = {v: i for i, v in enumerate(live)}
        g = SubgroupGraph(self.alphabet, generators)
        g.out = [{} for _ in live]
        g.inc = [{} for _ in live]
        g.prov = [{} for _ in live]
        for e in self.edges:
            if e is None:
                continue
            tail, sym, head, prov = e
            t, h = remap[tail], remap[head]
            g.out[t][sym] = h
            g.inc[h][sym] = t
            g.prov[t][sym] = prov
        return g


def fold(generators: list[Word] | tuple[Word, ...], alphabet: Alphabet | None = None) -> SubgroupGraph:
    """Folded core graph of the subgroup generated by the given words."""
    generators = tuple(generators)
    if alphabet is None:
        if not generators:
            raise ValueError("need an alphabet for the trivial subgroup")
        alphabet = generators[0].alphabet
    for w in generators:
        if w.alphabet != alphabet:
            raise ValueError("generators over different alphabets")
    b = _Builder(alphabet)
    for i, w in enumerate(generators):
        b.add_generator_loop(i, w)
    b.fold()
    return b.finish(generators)


def _trace(g: SubgroupGraph, w: Word) -> tuple[int, tuple[GenLetter, ...]] | None:
    """Read w from the base vertex; return (end vertex, provenance) or None."""
    v = 0
    acc: tuple[GenLetter, ...] = ()
    for sym, sign in w.letters:
        if sign > 0:
            nxt = g.out[v].get(sym)
            if nxt is None:
                return None
            acc = _gmul(acc, g.prov[v][sym])
            v = nxt
        else:
            prv = g.inc[v].get(sym)
            if prv is None:
                return None
            acc = _gmul(acc, _ginv(g.prov[prv][sym]))
            v = prv
    return v, acc


def contains(g: SubgroupGraph, w: Word) -> bool:
    """Membership: w reads as a closed path at the base vertex."""
    if w.alphabet != g.alphabet:
        raise ValueError("word over a different alphabet")
    res = _trace(g, w)
    return res is not None and res[0] == 0


def rank(g: SubgroupGraph) -> int:
    """Free rank: edges - vertices + 1 of the (connected) core graph."""
    return g.edge_count() - g.vertex_count() + 1


def express(g: SubgroupGraph, w: Word) -> list[GenLetter]:
    """
    Write w as a product of the input generators: a list of 1-based
    (generator index, sign) pairs whose product reduces to w.

    Raises NotAMember if w is not in the subgroup. The expression is verified
    by re-multiplication before it is returned.
    """
    if w.alphabet != g.alphabet:
        raise ValueError("word over a different alphabet")
    res = _trace(g, w)
    if res is None or res[0] != 0:
        raise NotAMember(str(w))
    _, gword = res
    check = Word.identity(g.alphabet)
    for idx, sign in gword:
        factor = g.generators[idx]
        check = check * (factor if sign > 0 else factor.inverse())
    if check != w:
        raise AssertionError(f"provenance failed to verify for {w} (got {check})")
    return [(idx + 1, sign) for idx, sign in gword]
