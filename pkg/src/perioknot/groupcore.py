"""Finite and abelian invariants of finitely presented groups.

Everything here is exact integer arithmetic:

* permutation representations found by backtracking search, used as a
  nontriviality oracle and to measure the action of an endomorphism on
  the finite-quotient landscape;
* abelianization via Smith normal form over the integers;
* the one-variable Alexander polynomial via Fox calculus, defined when
  the abelianization is infinite cyclic.

Permutations of degree d are tuples of length d over 0..d-1, composed
left to right: ``perm_mul(p, q)[i] == q[p[i]]``, so the image of a word
under a homomorphism is the product of the letter images in reading
order.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from collections.abc import Iterable, Sequence

from .wirtinger import GeneratorMap, Presentation, Word

Perm = tuple[int, ...]


# ---------------------------------------------------------------------------
# permutations


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def perm_mul(p: Perm, q: Perm) -> Perm:
    """Compose left to right: apply p, then q."""
    return tuple(q[i] for i in p)


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_conj(s: Perm, x: Perm) -> Perm:
    """s x s^-1 in the left-to-right composition."""
    return perm_mul(perm_mul(s, x), perm_inv(s))


def perm_order(p: Perm) -> int:
    return math.lcm(*(len(c) for c in _cycles(p)))


def _cycles(p: Perm) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        cur = p[start]
        while cur != start:
            seen[cur] = True
            cyc.append(cur)
            cur = p[cur]
        if len(cyc) > 1:
            out.append(tuple(cyc))
    return out


def cycle_notation(p: Perm) -> str:
    """1-indexed cycle form, fixed points omitted; identity renders ()."""
    cycles = _cycles(p)
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)


# ---------------------------------------------------------------------------
# homomorphisms into symmetric groups

Hom = dict[str, Perm]


@dataclasses.dataclass(frozen=True)
class OracleLimits:
    """Resource bounds for the finite-quotient search."""

    max_degree: int = 6
    node_budget: int = 10_000_000


class OracleBudgetError(RuntimeError):
    """Raised when the backtracking search exceeds its node budget."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


def word_image(hom: Hom, word: Word, degree: int) -> Perm:
    """Image of a word: product of letter images, leftmost applied first."""
    out = identity_perm(degree)
    for g, e in word.letters:
        p = hom[g] if e == 1 else perm_inv(hom[g])
        out = perm_mul(out, p)
    return out


def enumerate_homs(
    pres: Presentation, degree: int, limits: OracleLimits | None = None
) -> list[Hom]:
    """All homomorphisms of the presented group into S_degree.

    Deterministic: the result is sorted lexicographically by the tuple
    of generator images in presentation order.  Backtracking assigns
    generators in presentation order and propagates relators in which a
    single unassigned generator occurs exactly once, solving for it
    instead of branching.  Raises OracleBudgetError past the node
    budget and ValueError past the degree bound.
    """
    limits = limits or OracleLimits()
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    if degree > limits.max_degree:
        raise ValueError(
            f"degree {degree} exceeds the oracle bound {limits.max_degree}"
        )
    gens = pres.generators
    if not gens:
        return [{}]
    ident = identity_perm(degree)
    candidates = list(itertools.permutations(range(degree)))
    relators = [r.letters for r in pres.relators]
    found: list[Hom] = []
    nodes = [0]

    def eval_partial(letters, hom) -> Perm:
        out = ident
        for g, e in letters:
            p = hom[g] if e == 1 else perm_inv(hom[g])
            out = perm_mul(out, p)
        return out

    def propagate(hom: Hom, trail: list[str]) -> bool:
        # solve relators that pin down one remaining generator
        progress = True
        while progress:
            progress = False
            for letters in relators:
                missing = [g for g, _ in letters if g not in hom]
                if not missing:
                    if eval_partial(letters, hom) != ident:
                        return False
                    continue
                distinct = set(missing)
                if len(distinct) == 1 and len(missing) == 1:
                    target = missing[0]
                    at = next(
                        i for i, (g, _) in enumerate(letters) if g == target
                    )
                    before = eval_partial(letters[:at], hom)
                    after = eval_partial(letters[at + 1 :], hom)
                    forced = perm_mul(perm_inv(before), perm_inv(after))
                    if letters[at][1] == -1:
                        forced = perm_inv(forced)
                    nodes[0] += 1
                    if nodes[0] > limits.node_budget:
                        raise OracleBudgetError(nodes[0])
                    hom[target] = forced
                    trail.append(target)
                    progress = True
        return True

    def search(hom: Hom):
        pending = [g for g in gens if g not in hom]
        if not pending:
            if all(eval_partial(r, hom) == ident for r in relators):
                found.append(dict(hom))
            return
        g = pending[0]
        for cand in candidates:
            nodes[0] += 1
            if nodes[0] > limits.node_budget:
                raise OracleBudgetError(nodes[0])
            hom[g] = cand
            trail = [g]
            if propagate(hom, trail):
                search(hom)
            for name in trail:
                del hom[name]

    root: Hom = {}
    trail: list[str] = []
    if propagate(root, trail):
        search(root)
    found.sort(key=lambda h: tuple(h[g] for g in gens))
    return found


@dataclasses.dataclass(frozen=True)
class Witness:
    """A finite quotient in which a word acts nontrivially."""

    degree: int
    hom: Hom
    image: Perm


def nontriviality_witness(
    pres: Presentation,
    word: Word,
    dmax: int = 5,
    limits: OracleLimits | None = None,
) -> Witness | None:
    """Smallest-degree symmetric-group witness that a word is nontrivial.

    Scans degrees 2..dmax (degree 1 can never separate) and homs in
    their deterministic order, returning the first hom whose image of
    the word is not the identity.  Returns None when every image up to
    dmax is trivial; that outcome is inconclusive, not a triviality
    proof.
    """
    limits = limits or OracleLimits()
    if dmax > limits.max_degree:
        limits = dataclasses.replace(limits, max_degree=dmax)
    for degree in range(2, dmax + 1):
        for hom in enumerate_homs(pres, degree, limits):
            img = word_image(hom, word, degree)
            if img != identity_perm(degree):
                return Witness(degree, hom, img)
    return None


# ---------------------------------------------------------------------------
# action of an endomorphism on the finite-quotient landscape


@dataclasses.dataclass
class OrderCertificate:
    """Bound on the order of an automorphism with a claimed order.

    ``structural_identity_power`` confirms phi^claimed = identity on
    free words, so the true order divides ``claimed``.  ``action_order``
    is the order of the induced permutation of Hom(G, S_d) across the
    scanned degrees; it divides the true order.  ``certified`` means the
    lower bound reaches the claim.
    """

    claimed: int
    structural_identity_power: bool
    action_order: int
    certified: bool
    degrees: tuple[int, ...]
    hom_counts: dict[int, int]
    orbit_sizes: dict[int, dict[int, int]]


def _is_identity_power(endo: GeneratorMap, p: int) -> bool:
    gens = endo.source.generators
    cur = {g: Word.gen(g) for g in gens}
    for _ in range(p):
        cur = {g: endo.apply(cur[g]).reduced() for g in gens}
    return all(cur[g].letters == ((g, 1),) for g in gens)


def endo_order_bound(
    pres: Presentation,
    endo: GeneratorMap,
    p: int,
    degrees: Iterable[int] = (2, 3),
    limits: OracleLimits | None = None,
) -> OrderCertificate:
    """Certify that an automorphism has order exactly p.

    phi^p = identity on generators gives the upper bound; the lcm of the
    orders of the permutations that precomposition induces on
    Hom(G, S_d) over the requested degrees gives the lower bound.  The
    claim is certified when the lower bound equals p.
    """
    limits = limits or OracleLimits()
    if endo.source.generators != pres.generators:
        raise ValueError("endomorphism is not defined on this presentation")
    structural = _is_identity_power(endo, p)
    degrees = tuple(sorted(set(degrees)))
    hom_counts: dict[int, int] = {}
    orbit_sizes: dict[int, dict[int, int]] = {}
    action = 1
    for d in degrees:
        homs = enumerate_homs(pres, d, limits)
        hom_counts[d] = len(homs)
        index = {
            tuple(h[g] for g in pres.generators): i for i, h in enumerate(homs)
        }
        succ = []
        for h in homs:
            moved = tuple(
                word_image(h, endo.images[g], d) for g in pres.generators
            )
            succ.append(index[moved])
        sizes: dict[int, int] = {}
        seen = [False] * len(homs)
        for start in range(len(homs)):
            if seen[start]:
                continue
            size = 0
            cur = start
            while not seen[cur]:
                seen[cur] = True
                size += 1
                cur = succ[cur]
            sizes[size] = sizes.get(size, 0) + 1
            action = math.lcm(action, size)
        orbit_sizes[d] = sizes
    return OrderCertificate(
        claimed=p,
        structural_identity_power=structural,
        action_order=action,
        certified=structural and action == p,
        degrees=degrees,
        hom_counts=hom_counts,
        orbit_sizes=orbit_sizes,
    )


# ---------------------------------------------------------------------------
# peripheral conjugacy


@dataclasses.dataclass
class ConjugacyCheck:
    """Per-degree check that one conjugator aligns both peripheral images."""

    degree: int
    hom_count: int
    all_conjugate: bool
    identity_count: int
    first_failure: int | None


def find_conjugator(
    pairs: Sequence[tuple[Perm, Perm]], degree: int
) -> Perm | None:
    """First s in lex order with s src s^-1 = dst for every pair."""
    for s in itertools.permutations(range(degree)):
        if all(perm_conj(s, src) == dst for src, dst in pairs):
            return s
    return None


def peripheral_conjugacy_check(
    pres: Presentation,
    endo: GeneratorMap,
    meridian: Word,
    longitude: Word,
    degree: int,
    limits: OracleLimits | None = None,
) -> ConjugacyCheck:
    """For every hom into S_degree, look for one permutation conjugating
    the meridian image to its endomorphism image and simultaneously the
    longitude image to its endomorphism image.

    A simultaneous conjugator per hom is the finite shadow of the map
    preserving the peripheral pair: composing with that inner
    automorphism fixes both words.  ``identity_count`` counts the homs
    where the identity permutation already works, i.e. both peripheral
    images are literally fixed by precomposition.
    """
    phi_mu = endo.apply(meridian)
    phi_la = endo.apply(longitude)
    homs = enumerate_homs(pres, degree, limits)
    failures = 0
    first_failure = None
    ident_count = 0
    for idx, hom in enumerate(homs):
        pairs = (
            (word_image(hom, meridian, degree), word_image(hom, phi_mu, degree)),
            (word_image(hom, longitude, degree), word_image(hom, phi_la, degree)),
        )
        if pairs[0][0] == pairs[0][1] and pairs[1][0] == pairs[1][1]:
            ident_count += 1
            continue
        s = find_conjugator(pairs, degree)
        if s is None:
            failures += 1
            if first_failure is None:
                first_failure = idx
    return ConjugacyCheck(
        degree=degree,
        hom_count=len(homs),
        all_conjugate=failures == 0,
        identity_count=ident_count,
        first_failure=first_failure,
    )


# ---------------------------------------------------------------------------
# Smith normal form and abelianization


def smith_normal_form(
    mat: Sequence[Sequence[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (D, U, V) with U mat V = D, D diagonal with d1 | d2 | ...

    U and V are unimodular; all arithmetic is exact.  Accepts matrices
    with zero rows or columns.
    """
    A = [list(row) for row in mat]
    m = len(A)
    k = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(k)] for i in range(k)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, k):
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, k):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < best):
                    best = abs(A[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                while A[i][t] != 0:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, k):
                while A[t][j] != 0:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty and all(A[i][t] == 0 for i in range(t + 1, m)):
                break
        # enforce divisibility of later entries by the pivot
        culprit = None
        for i in range(t + 1, m):
            for j in range(t + 1, k):
                if A[i][j] % A[t][t] != 0:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            add_row(culprit, t, 1)
            continue
        t += 1
    for i in range(min(m, k)):
        if A[i][i] < 0:
            A[i] = [-x for x in A[i]]
            U[i] = [-x for x in U[i]]
    return A, U, V


@dataclasses.dataclass(frozen=True)
class AbelianStructure:
    """Z^free_rank plus the listed cyclic torsion factors."""

    free_rank: int
    torsion: tuple[int, ...]

    def is_infinite_cyclic(self) -> bool:
        return self.free_rank == 1 and not self.torsion

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def relation_matrix(pres: Presentation) -> list[list[int]]:
    """Exponent-sum matrix, one row per relator, one column per generator."""
    return [
        [r.exponent_sum(g) for g in pres.generators] for r in pres.relators
    ]


def abelianization(pres: Presentation) -> AbelianStructure:
    k = len(pres.generators)
    if not pres.relators:
        return AbelianStructure(k, ())
    D, _, _ = smith_normal_form(relation_matrix(pres))
    diag = [D[i][i] for i in range(min(len(D), k))]
    free = k - sum(1 for d in diag if d != 0)
    torsion = tuple(d for d in diag if d > 1)
    return AbelianStructure(free, torsion)


def generator_weights(pres: Presentation) -> list[int]:
    """Images of the generators under the map onto the abelianization,
    which must be infinite cyclic; raises ValueError otherwise.

    The returned vector is primitive and its first nonzero entry is
    positive.
    """
    k = len(pres.generators)
    M = relation_matrix(pres) if pres.relators else [[0] * k]
    D, _, V = smith_normal_form(M)
    diag = [D[i][i] for i in range(min(len(D), k))]
    free_cols = [
        j for j in range(k) if j >= len(diag) or diag[j] == 0
    ]
    torsion = [d for d in diag if d > 1]
    if len(free_cols) != 1 or torsion:
        raise ValueError(
            "abelianization is not infinite cyclic: "
            f"{AbelianStructure(len(free_cols), tuple(torsion))}"
        )
    f = free_cols[0]
    weights = [V[c][f] for c in range(k)]
    lead = next((w for w in weights if w != 0), 0)
    if lead < 0:
        weights = [-w for w in weights]
    return weights


# ---------------------------------------------------------------------------
# Laurent polynomials over Z


class LaurentPoly:
    """Z[t, t^-1] element as a sparse exponent -> coefficient map."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def t_power(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    @property
    def min_exp(self) -> int | None:
        return min(self.terms) if self.terms else None

    @property
    def max_exp(self) -> int | None:
        return max(self.terms) if self.terms else None

    def shifted(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def normalized(self) -> "LaurentPoly":
        """Unit normal form: lowest exponent 0, top coefficient positive."""
        if not self.terms:
            return LaurentPoly()
        out = self.shifted(-min(self.terms))
        if out.terms[max(out.terms)] < 0:
            out = -out
        return out

    def coeff_list(self) -> list[int]:
        """Dense little-endian coefficients from the lowest exponent."""
        if not self.terms:
            return []
        lo, hi = min(self.terms), max(self.terms)
        return [self.terms.get(e, 0) for e in range(lo, hi + 1)]

    def to_json_dict(self) -> dict[str, int]:
        return {str(e): self.terms[e] for e in sorted(self.terms)}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                body = str(abs(c))
            else:
                tpow = "t" if e == 1 else f"t^{e}"
                body = tpow if abs(c) == 1 else f"{abs(c)}*{tpow}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.terms!r})"


def _strip(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _content(coeffs: list[int]) -> int:
    return math.gcd(*coeffs) if coeffs else 0


def _primitive(coeffs: list[int]) -> list[int]:
    c = _content(coeffs)
    return [x // c for x in coeffs] if c else []


def _pseudo_rem(f: list[int], g: list[int]) -> list[int]:
    # remainder of lc(g)^k * f by g, enough for a primitive Euclid step
    f = f[:]
    dg = len(g) - 1
    lg = g[-1]
    while len(f) - 1 >= dg and f:
        df = len(f) - 1
        lf = f[-1]
        f = [lg * c for c in f]
        for i, c in enumerate(g):
            f[df - dg + i] -= lf * c
        f = _strip(f)
    return f


def _poly_gcd(f: list[int], g: list[int]) -> list[int]:
    f, g = _strip(f[:]), _strip(g[:])
    if not f:
        return _positive(g)
    if not g:
        return _positive(f)
    content = math.gcd(_content(f), _content(g))
    f, g = _primitive(f), _primitive(g)
    while g:
        f, g = g, _primitive(_pseudo_rem(f, g))
    return _positive([content * c for c in f])


def _positive(coeffs: list[int]) -> list[int]:
    if coeffs and coeffs[-1] < 0:
        return [-c for c in coeffs]
    return coeffs


def laurent_gcd(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    """Gcd in Z[t] up to units, each input first shifted to exponent 0."""
    acc: list[int] = []
    for p in polys:
        acc = _poly_gcd(acc, p.normalized().coeff_list())
        if acc == [1]:
            break
    return LaurentPoly(dict(enumerate(acc))).normalized()


# ---------------------------------------------------------------------------
# Fox calculus and the Alexander polynomial


def fox_matrix(
    pres: Presentation, weights: Sequence[int]
) -> list[list[LaurentPoly]]:
    """Abelianized Jacobian: entry (r, g) is the Fox derivative of
    relator r by generator g, with every generator h sent to t^w_h."""
    wt = dict(zip(pres.generators, weights))
    rows = []
    for rel in pres.relators:
        row = {g: {} for g in pres.generators}
        prefix = 0
        for h, e in rel.letters:
            if e == 1:
                row[h][prefix] = row[h].get(prefix, 0) + 1
                prefix += wt[h]
            else:
                prefix -= wt[h]
                row[h][prefix] = row[h].get(prefix, 0) - 1
        rows.append([LaurentPoly(row[g]) for g in pres.generators])
    return rows


def _det(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    """Determinant by first-row expansion, memoized on the column mask."""
    n = len(rows)
    if n == 0:
        return LaurentPoly.one()
    memo: dict[int, LaurentPoly] = {}

    def rec(r: int, mask: int) -> LaurentPoly:
        if r == n:
            return LaurentPoly.one()
        if mask in memo:
            return memo[mask]
        total = LaurentPoly.zero()
        sign = 1
        m = mask
        while m:
            j_bit = m & -m
            j = j_bit.bit_length() - 1
            entry = rows[r][j]
            if entry:
                sub = rec(r + 1, mask ^ j_bit)
                term = entry * sub
                total = total + term if sign > 0 else total - term
            sign = -sign
            m ^= j_bit
        memo[mask] = total
        return total

    return rec(0, (1 << n) - 1)


def alexander_polynomial(pres: Presentation) -> LaurentPoly:
    """First Alexander polynomial of a presented group whose
    abelianization is infinite cyclic; unit-normalized.

    When every generator maps to t^{+-1} the first column of the Fox
    matrix may be dropped (any single column spans the same ideal), and
    the gcd runs over the square minors of what remains.  For general
    weights no column deletion is valid, so the gcd runs over all
    square minors of one size less than the generator count.
    """
    gens = pres.generators
    k = len(gens)
    if k == 0:
        return LaurentPoly.one()
    weights = generator_weights(pres)
    size = k - 1
    if size == 0:
        return LaurentPoly.one()
    rows = fox_matrix(pres, weights)
    if len(rows) < size:
        return LaurentPoly.zero()
    if all(abs(w) == 1 for w in weights):
        col_sets = [tuple(range(1, k))]
    else:
        col_sets = list(itertools.combinations(range(k), size))
    minors = []
    for row_idx in itertools.combinations(range(len(rows)), size):
        for col_idx in col_sets:
            minors.append(
                _det([[rows[i][j] for j in col_idx] for i in row_idx])
            )
    return laurent_gcd(minors)
