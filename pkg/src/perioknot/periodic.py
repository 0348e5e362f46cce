"""Rotational symmetry of Gauss codes: detection, labeling, quotients.

A diagram with n*p crossings is p-periodic when a 1/p turn maps it to
itself.  Combinatorially the turn is a cyclic shift of the pass
sequence by 2n positions together with the relabeling of crossings that
the shift forces.  A p-periodic code factors through a quotient code
with n crossings; each quotient crossing carries a voltage in Z/p
recording how many fundamental domains lie between its over and under
passes in the big diagram.  :func:`symmetrize` rebuilds the p-periodic
code from the quotient data.
"""

from __future__ import annotations

import dataclasses
import math
import random

from .gauss import OVER, UNDER, GaussCode, GaussCodeError, Pass, validate


@dataclasses.dataclass
class PeriodicStructure:
    """Witness that a code is p-periodic.

    ``shift`` is the pass-sequence shift realizing the 1/p turn (always
    2n after normalization) and ``sigma`` the crossing relabeling it
    forces; sigma has order exactly p and no fixed point.
    """

    p: int
    n: int
    shift: int
    sigma: dict[int, int]


def _order(perm: dict[int, int]) -> int:
    seen: set[int] = set()
    order = 1
    for start in perm:
        if start in seen:
            continue
        length = 0
        c = start
        while True:
            seen.add(c)
            c = perm[c]
            length += 1
            if c == start:
                break
        order = math.lcm(order, length)
    return order


def detect_periodicity(code: GaussCode, p: int) -> PeriodicStructure | None:
    """Return the periodic structure of ``code`` for period ``p``, or None.

    Invariance under any shift 2n*k with gcd(k, p) = 1 implies invariance
    under the whole shift subgroup, so only the generator shift 2n is
    tested; the structure returned therefore always stores the smallest
    shift.  The unknot (no crossings) is not periodic here, and p must be
    at least 2.
    """
    if p < 2:
        raise ValueError("period must be at least 2")
    seq = code.traversal()
    total = len(seq)
    if total == 0:
        return None
    crossings = total // 2
    if crossings % p:
        return None
    n = crossings // p
    shift = 2 * n
    sigma: dict[int, int] = {}
    for t, ps in enumerate(seq):
        q = seq[(t + shift) % total]
        if q.strand != ps.strand or q.sign != ps.sign:
            return None
        if sigma.setdefault(ps.crossing, q.crossing) != q.crossing:
            return None
    # Both conditions below already follow from strand-preserving
    # invariance, but they are cheap and the contract states them.
    if any(a == b for a, b in sigma.items()):
        return None
    if _order(sigma) != p:
        return None
    return PeriodicStructure(p=p, n=n, shift=shift, sigma=sigma)


@dataclasses.dataclass
class PeriodicGaussCode:
    """A p-periodic code with its crossings labeled (i, j).

    Labels follow the traversal: the under passes appear in the order
    c(1,0) ... c(n,0), c(1,1) ... c(n,p-1), the basepoint sits at the
    start of the arc ending at c(1,0), and sigma advances every label by
    one domain: sigma(c(i,j)) = c(i,j+1).  Arc (i,j) is the pass
    interval ending at the under pass of c(i,j).  Fundamental domain j
    is the block of positions [2n*j, 2n*(j+1)).
    """

    code: GaussCode  # rotated so the basepoint is at index 0
    p: int
    n: int
    structure: PeriodicStructure
    labels: dict[int, tuple[int, int]]  # crossing id -> (i, j)
    crossings: dict[tuple[int, int], int]  # (i, j) -> crossing id
    signs: dict[int, int]  # i -> shared sign of the orbit c(i, *)
    arc_of_pos: tuple[tuple[int, int], ...]  # position -> arc label
    under_pos: dict[tuple[int, int], int]
    over_pos: dict[tuple[int, int], int]
    over_arc: dict[tuple[int, int], tuple[int, int]]  # crossing -> arc its over pass lies on

    def domain_of(self, position: int) -> int:
        return position // (2 * self.n)


def canonical_labeling(code: GaussCode, structure: PeriodicStructure) -> PeriodicGaussCode:
    """Label the crossings of a periodic code and normalize its basepoint."""
    seq = list(code.traversal())
    total = len(seq)
    n, p = structure.n, structure.p
    # Slide the basepoint back to the start of the arc it lies on, i.e.
    # just past the nearest preceding under pass.
    back = next(d for d in range(total) if seq[total - 1 - d].strand == UNDER)
    if back:
        seq = seq[total - back:] + seq[: total - back]
    under = [t for t, ps in enumerate(seq) if ps.strand == UNDER]
    labels: dict[int, tuple[int, int]] = {}
    for t, pos in enumerate(under):
        labels[seq[pos].crossing] = (t % n + 1, t // n)
    for c, (i, j) in labels.items():
        if labels[structure.sigma[c]] != (i, (j + 1) % p):
            raise ValueError("relabeling does not advance labels by one domain")
    if under[n - 1] != 2 * n - 1:
        raise ValueError("fundamental domain is not an aligned 2n block")
    crossings = {lab: c for c, lab in labels.items()}
    signs: dict[int, int] = {}
    for i in range(1, n + 1):
        orbit = {seq[under[j * n + i - 1]].sign for j in range(p)}
        if len(orbit) != 1:
            raise ValueError(f"sign of crossing orbit {i} depends on the domain")
        signs[i] = orbit.pop()
    arc_of_pos: list[tuple[int, int]] = [None] * total  # type: ignore[list-item]
    start = 0
    for t, pos in enumerate(under):
        lab = (t % n + 1, t // n)
        for q in range(start, pos + 1):
            arc_of_pos[q] = lab
        start = pos + 1
    under_pos = {labels[seq[pos].crossing]: pos for pos in under}
    over_pos = {
        labels[ps.crossing]: t for t, ps in enumerate(seq) if ps.strand == OVER
    }
    over_arc = {lab: arc_of_pos[pos] for lab, pos in over_pos.items()}
    return PeriodicGaussCode(
        code=GaussCode(tuple(seq), 0),
        p=p,
        n=n,
        structure=structure,
        labels=labels,
        crossings=crossings,
        signs=signs,
        arc_of_pos=tuple(arc_of_pos),
        under_pos=under_pos,
        over_pos=over_pos,
        over_arc=over_arc,
    )


@dataclasses.dataclass
class VoltageGaussCode:
    """A quotient code: base diagram, period p, and one voltage per crossing.

    The base is kept in the normal form produced by :func:`quotient`:
    crossings are numbered 1..n in the order of their under passes, and
    the traversal ends with an under pass (the basepoint marks an arc
    start).  Voltages live in Z/p.
    """

    base: GaussCode
    p: int
    voltages: dict[int, int]

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "code": " ".join(ps.render() for ps in self.base.traversal()),
            "voltage": {str(c): self.voltages[c] for c in sorted(self.voltages)},
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "VoltageGaussCode":
        from .gauss import parse_gauss

        for key in ("code", "p", "voltage"):
            if key not in data:
                raise GaussCodeError(f"voltage document is missing {key!r}")
        try:
            p = int(data["p"])
            voltages = {int(k): int(val) for k, val in data["voltage"].items()}
        except (TypeError, ValueError, AttributeError) as exc:
            raise GaussCodeError(f"malformed voltage document: {exc}") from exc
        v = cls(base=parse_gauss(data["code"]), p=p, voltages=voltages)
        validate_voltage_code(v)
        return v


def validate_voltage_code(vcode: VoltageGaussCode) -> None:
    """Check the :class:`VoltageGaussCode` normal form (see class docstring)."""
    validate(vcode.base)
    if vcode.p < 2:
        raise GaussCodeError("voltage code period must be at least 2")
    seq = vcode.base.traversal()
    if not seq:
        raise GaussCodeError("voltage code base must have at least one crossing")
    under_ids = [ps.crossing for ps in seq if ps.strand == UNDER]
    if under_ids != list(range(1, len(under_ids) + 1)):
        raise GaussCodeError(
            "base crossings must be numbered 1..n in under-pass order"
        )
    if seq[-1].strand != UNDER:
        raise GaussCodeError("base traversal must end with an under pass")
    if set(vcode.voltages) != set(under_ids):
        raise GaussCodeError("voltages must be keyed by the base crossing ids")
    for c, v in vcode.voltages.items():
        if not 0 <= v < vcode.p:
            raise GaussCodeError(f"voltage of crossing {c} must lie in [0, p)")


def quotient(pcode: PeriodicGaussCode) -> VoltageGaussCode:
    """Collapse a labeled p-periodic code to its quotient voltage code.

    The base is the first fundamental domain with crossing labels
    reduced to their class i; the voltage of class i counts, mod p, how
    many domains ahead of its under pass the over pass sits.
    """
    two_n = 2 * pcode.n
    base = tuple(
        Pass(pcode.labels[ps.crossing][0], ps.strand, ps.sign)
        for ps in pcode.code.passes[:two_n]
    )
    voltages = {
        i: pcode.over_pos[(i, 0)] // two_n for i in range(1, pcode.n + 1)
    }
    return VoltageGaussCode(base=GaussCode(base, 0), p=pcode.p, voltages=voltages)


def symmetrize(vcode: VoltageGaussCode) -> PeriodicGaussCode:
    """Expand a voltage code to the labeled p-periodic code it describes.

    Crossing class i in copy j becomes crossing i + n*j; a class with
    voltage v has the under pass of copy j in domain j and the over pass
    in domain j + v (mod p), so the over pass written while emitting
    domain j belongs to copy j - v.  The result carries the canonical
    labeling, under which crossing i + n*j is exactly c(i, j), so
    ``quotient`` inverts this map without renaming.
    """
    validate_voltage_code(vcode)
    base = vcode.base.traversal()
    n = vcode.base.crossing_count()
    out: list[Pass] = []
    for j in range(vcode.p):
        for ps in base:
            if ps.strand == UNDER:
                out.append(Pass(ps.crossing + n * j, UNDER, ps.sign))
            else:
                jj = (j - vcode.voltages[ps.crossing]) % vcode.p
                out.append(Pass(ps.crossing + n * jj, OVER, ps.sign))
    code = GaussCode(tuple(out), 0)
    structure = detect_periodicity(code, vcode.p)
    if structure is None:
        raise GaussCodeError("symmetrized code failed its own periodicity check")
    return canonical_labeling(code, structure)


def enumerate_voltage_codes(n: int, p: int):
    """Yield every valid voltage code with exactly ``n`` base crossings.

    Exhaustive over the normal form: every placement of over passes
    among the 2n slots (the last slot is an under pass), every pairing
    of over to under slots, every sign vector, every voltage vector.
    Crossing i is by definition the i-th under pass.
    """
    import itertools

    slots = 2 * n
    for over_slots in itertools.combinations(range(slots - 1), n):
        over_set = set(over_slots)
        under_slots = [s for s in range(slots) if s not in over_set]
        for pairing in itertools.permutations(range(n)):
            # over slot over_slots[k] belongs to crossing pairing[k] + 1
            for sign_bits in itertools.product((1, -1), repeat=n):
                passes: list[Pass | None] = [None] * slots
                for idx, s in enumerate(under_slots):
                    passes[s] = Pass(idx + 1, UNDER, sign_bits[idx])
                for k, s in enumerate(over_slots):
                    c = pairing[k] + 1
                    passes[s] = Pass(c, OVER, sign_bits[c - 1])
                base = GaussCode(tuple(passes), 0)  # type: ignore[arg-type]
                for volts in itertools.product(range(p), repeat=n):
                    yield VoltageGaussCode(
                        base=base,
                        p=p,
                        voltages={i + 1: volts[i] for i in range(n)},
                    )


def random_voltage_code(rng: random.Random, n: int, p: int) -> VoltageGaussCode:
    """A uniformly scrambled valid voltage code, for randomized tests."""
    slots = 2 * n
    over_slots = sorted(rng.sample(range(slots - 1), n))
    over_set = set(over_slots)
    under_slots = [s for s in range(slots) if s not in over_set]
    pairing = list(range(n))
    rng.shuffle(pairing)
    signs = [rng.choice((1, -1)) for _ in range(n)]
    passes: list[Pass | None] = [None] * slots
    for idx, s in enumerate(under_slots):
        passes[s] = Pass(idx + 1, UNDER, signs[idx])
    for k, s in enumerate(over_slots):
        c = pairing[k] + 1
        passes[s] = Pass(c, OVER, signs[c - 1])
    return VoltageGaussCode(
        base=GaussCode(tuple(passes), 0),  # type: ignore[arg-type]
        p=p,
        voltages={i + 1: rng.randrange(p) for i in range(n)},
    )
