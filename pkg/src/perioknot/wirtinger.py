"""Wirtinger presentations of diagram groups, with peripheral words.

One generator per arc (an arc runs from one under pass to the next),
one relator per crossing.  At a crossing with sign e whose over pass
lies on arc b, the incoming under arc x and outgoing under arc y
satisfy y = b^-e x b^e, recorded as the length-4 relator
b^-e x b^e y^-1.

For a p-periodic code with the canonical (i, j) labeling the arcs are
named ``a{i}_{j}`` and the relator of crossing (i, j) ends in the
inverse of the next arc along the strand: a_{i+1,j} for i < n, and
a_{1,j+1} when i = n, since that is the arc beginning at c(n, j).

The meridian is the generator of the arc containing the basepoint.  The
longitude is read off by walking the diagram once from the basepoint,
recording b^e at each under pass, and then appending the meridian to
the power -m where m is the exponent sum of the walk (the writhe), so
the result has total exponent sum zero.
"""

from __future__ import annotations

import dataclasses

from .gauss import OVER, UNDER, GaussCode
from .periodic import PeriodicGaussCode, PeriodicStructure


@dataclasses.dataclass(frozen=True)
class Word:
    """A word in free-group generators: a tuple of (generator, +-1) letters."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        for g, e in self.letters:
            if e not in (1, -1):
                raise ValueError(f"letter exponent must be +-1, got {g}^{e}")

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "Word":
        """The word name^exp, expanded into |exp| single letters."""
        if exp == 0:
            return cls()
        e = 1 if exp > 0 else -1
        return cls(((name, e),) * abs(exp))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def reduced(self) -> "Word":
        """Freely reduce; idempotent."""
        out: list[tuple[str, int]] = []
        for g, e in self.letters:
            if out and out[-1][0] == g and out[-1][1] == -e:
                out.pop()
            else:
                out.append((g, e))
        return Word(tuple(out))

    def is_trivial(self) -> bool:
        """True when the word freely reduces to the empty word."""
        return not self.reduced().letters

    def exponent_sum(self, gen: str | None = None) -> int:
        if gen is None:
            return sum(e for _, e in self.letters)
        return sum(e for g, e in self.letters if g == gen)

    def generators_used(self) -> set[str]:
        return {g for g, _ in self.letters}

    def to_json(self) -> list[list]:
        return [[g, e] for g, e in self.letters]

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts = []
        run_gen, run_exp = None, 0
        for g, e in self.letters + (("", 0),):
            if g == run_gen and (e > 0) == (run_exp > 0):
                run_exp += e
            else:
                if run_gen is not None:
                    parts.append(run_gen if run_exp == 1 else f"{run_gen}^{run_exp}")
                run_gen, run_exp = g, e
        return " ".join(parts)


@dataclasses.dataclass(frozen=True)
class Presentation:
    """A finite group presentation: ordered generators, ordered relators."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        declared = set(self.generators)
        for r in self.relators:
            undeclared = r.generators_used() - declared
            if undeclared:
                raise ValueError(f"relator uses undeclared generators {sorted(undeclared)}")

    def to_json_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [r.to_json() for r in self.relators],
        }

    def __str__(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {gens} | {rels} >"


@dataclasses.dataclass(frozen=True)
class PeripheralPair:
    """Meridian and longitude words, plus the raw walk ``omega``.

    ``longitude`` is omega * meridian^-m with m the exponent sum of
    omega, so its total exponent sum is 0.  Words are kept as
    constructed; call ``.reduced()`` when a normal form is needed.
    """

    meridian: Word
    longitude: Word
    omega: Word

    def framing(self) -> int:
        return self.omega.exponent_sum()


@dataclasses.dataclass
class GeneratorMap:
    """A map of presentations given by generator images.

    ``verified`` is True when every relator of the source maps to a word
    that freely reduces to a target relator or to the empty word, which
    is a structural proof that the map defines a homomorphism.
    """

    source: Presentation
    target: Presentation
    images: dict[str, Word]
    verified: bool = False

    def apply(self, word: Word) -> Word:
        out: list[tuple[str, int]] = []
        for g, e in word.letters:
            img = self.images[g] if e > 0 else self.images[g].inverse()
            out.extend(img.letters)
        return Word(tuple(out))

    def to_json_dict(self) -> dict:
        return {
            "images": {g: self.images[g].to_json() for g in self.source.generators},
            "verified": self.verified,
        }


def structurally_verified(gmap: GeneratorMap) -> bool:
    """Check that relators map to relators (up to free reduction) or vanish."""
    targets = {r.reduced().letters for r in gmap.target.relators}
    targets.add(())
    return all(
        gmap.apply(r).reduced().letters in targets for r in gmap.source.relators
    )


# ---------------------------------------------------------------------------
# arc bookkeeping shared by the plain and periodic constructions


def _arc_tables(seq: tuple) -> tuple[list[int], list[int]]:
    """Return (under positions, arc index of every position).

    Arc k ends at the k-th under pass; positions after the last under
    pass wrap onto arc 0.
    """
    under = [t for t, ps in enumerate(seq) if ps.strand == UNDER]
    arc_of_pos = [0] * len(seq)
    start = 0
    for k, pos in enumerate(under):
        for q in range(start, pos + 1):
            arc_of_pos[q] = k
        start = pos + 1
    # tail of the traversal belongs to the arc the basepoint sits on
    for q in range(start, len(seq)):
        arc_of_pos[q] = 0
    return under, arc_of_pos


def _build(seq: tuple, arc_names: list[str]) -> tuple[tuple[Word, ...], PeripheralPair]:
    under, arc_of_pos = _arc_tables(seq)
    over_pos = {ps.crossing: t for t, ps in enumerate(seq) if ps.strand == OVER}
    m = len(under)
    relators: list[Word] = []
    walk: list[tuple[str, int]] = []
    for t, pos in enumerate(under):
        eps = seq[pos].sign
        b = arc_names[arc_of_pos[over_pos[seq[pos].crossing]]]
        x = arc_names[t]
        y = arc_names[(t + 1) % m]
        relators.append(
            Word(((b, -eps), (x, 1), (b, eps), (y, -1)))
        )
        walk.append((b, eps))
    omega = Word(tuple(walk))
    meridian = Word.gen(arc_names[0])
    longitude = omega * meridian ** (-omega.exponent_sum())
    return tuple(relators), PeripheralPair(meridian, longitude, omega)


def presentation(code: GaussCode) -> tuple[Presentation, PeripheralPair]:
    """Wirtinger presentation of a diagram group, with its peripheral pair.

    Arcs are numbered 1..m from the basepoint (arc k ends at the k-th
    under pass) and named ``a1`` .. ``am``.  The zero-crossing code gets
    the free presentation on one generator with an empty longitude.
    """
    seq = code.traversal()
    if not seq:
        mu = Word.gen("a1")
        return (
            Presentation(("a1",), ()),
            PeripheralPair(mu, Word(), Word()),
        )
    m = len(seq) // 2
    names = [f"a{k + 1}" for k in range(m)]
    relators, pair = _build(seq, names)
    return Presentation(tuple(names), relators), pair


def _periodic_names(pcode: PeriodicGaussCode) -> list[str]:
    return [
        f"a{i}_{j}" for j in range(pcode.p) for i in range(1, pcode.n + 1)
    ]


def periodic_presentation(pcode: PeriodicGaussCode) -> Presentation:
    """Wirtinger presentation in the periodic generators ``a{i}_{j}``.

    Generators and relators are both ordered by (j, i); the relator of
    crossing (i, j) is b^-e a_{i,j} b^e a_{i+1,j}^-1 with the i = n
    wraparound ending in a_{1,j+1}^-1.
    """
    names = _periodic_names(pcode)
    relators, _ = _build(pcode.code.traversal(), names)
    return Presentation(tuple(names), relators)


def peripheral_pair(pcode: PeriodicGaussCode, pres: Presentation) -> PeripheralPair:
    """Meridian a1_0 and the longitude read from the basepoint.

    ``pres`` must be the periodic presentation of ``pcode``; the pair is
    expressed over its generators.
    """
    names = _periodic_names(pcode)
    if tuple(names) != pres.generators:
        raise ValueError("presentation does not match the periodic labeling")
    _, pair = _build(pcode.code.traversal(), names)
    return pair


def induced_automorphism(pcode: PeriodicGaussCode) -> GeneratorMap:
    """The shift automorphism a{i}_{j} -> a{i}_{j+1} of the periodic
    presentation; it permutes the relators letter for letter."""
    pres = periodic_presentation(pcode)
    images = {
        f"a{i}_{j}": Word.gen(f"a{i}_{(j + 1) % pcode.p}")
        for j in range(pcode.p)
        for i in range(1, pcode.n + 1)
    }
    gmap = GeneratorMap(pres, pres, images)
    gmap.verified = structurally_verified(gmap)
    return gmap


def quotient_presentation(
    pres: Presentation, ps: PeriodicStructure
) -> tuple[Presentation, GeneratorMap]:
    """Presentation of the quotient group and the collapse map onto it.

    ``pres`` must be a periodic presentation (generators ``a{i}_{j}``
    for the n and p recorded in ``ps``).  Quotient generators are
    ``a{i}`` for i = 1..n; the relators of domain 0 are rewritten by
    dropping the domain index, then deduplicated: freely trivial
    relators and repeats (up to free reduction) go away, so at most n
    relators remain.  The returned map sends a{i}_{j} to a{i}.
    """
    n, p = ps.n, ps.p
    expected = tuple(f"a{i}_{j}" for j in range(p) for i in range(1, n + 1))
    if pres.generators != expected:
        raise ValueError("presentation does not match the periodic structure")
    collapse = {
        f"a{i}_{j}": Word.gen(f"a{i}")
        for j in range(p)
        for i in range(1, n + 1)
    }
    names = tuple(f"a{i}" for i in range(1, n + 1))
    kept: list[Word] = []
    seen: set[tuple] = set()
    for r in pres.relators[:n]:
        word = Word(tuple((collapse[g].letters[0][0], e) for g, e in r.letters))
        key = word.reduced().letters
        if not key or key in seen:
            continue
        seen.add(key)
        kept.append(word)
    qpres = Presentation(names, tuple(kept))
    pi = GeneratorMap(pres, qpres, collapse)
    pi.verified = structurally_verified(pi)
    return qpres, pi
