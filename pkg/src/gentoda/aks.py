"""Reduction of the commuting family to the Borel subalgebra.

``gl_n = so_n + b`` with b the lower-triangular matrices.  In the mixed PBW
basis an element splits as ``a = a_plus + a_minus`` where ``a_plus`` keeps
the monomials without F-generators (the U(b) part) and ``a_minus`` lies in
``so_n U(gl_n)``.  Classically the same split sends ``x_ij -> x_ji`` for
``i < j``.

Each level ``k`` of the family transforms under b by a character ``chi_k``:
``[X, a] = chi_k(X) a``.  Hence ``m a = a eta_k(m)`` where ``eta_k`` shifts
every Borel generator ``X`` by ``chi_k(X)``.  The reduced family consists of
the ratios ``a_plus / c`` with ``c`` the level's top entry; their
commutativity is checked through denominator-free identities only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra.basis import MixedGenerator, mixed_basis
from .algebra.commutative import (
    borel_restrict,
    classical_ring,
    poisson_bracket,
)
from .algebra.uea import UEAElement, commutator
from .spectral import GradedFamily, PairResult, Report, classical_family, family, quantum_family


class CharacterError(RuntimeError):
    """A level of the family is not an eigenvector of ad_X for some X in b."""


def borel_generators(n: int) -> list[MixedGenerator]:
    return [g for g in mixed_basis(n).generators if g.kind == "E"]


# -- split ---------------------------------------------------------------------


def split(a):
    """Return ``(a_plus, a_minus)`` with ``a = a_plus + a_minus``."""
    if isinstance(a, UEAElement):
        nf = mixed_basis(a.n).num_f
        plus = {k: v for k, v in a.terms.items() if not k[0] or k[0][0] >= nf}
        minus = {k: v for k, v in a.terms.items() if k[0] and k[0][0] < nf}
        return UEAElement(a.n, plus), UEAElement(a.n, minus)
    plus = borel_restrict(a)
    return plus, a - plus


def plus_part(a):
    return split(a)[0]


# -- characters ----------------------------------------------------------------


@dataclass
class Character:
    k: int
    values: dict  # MixedGenerator -> Fraction

    def __call__(self, g: MixedGenerator) -> Fraction:
        return self.values.get(g, Fraction(0))

    def __add__(self, other: "Character") -> "Character":
        keys = set(self.values) | set(other.values)
        return Character(-1, {g: self(g) + other(g) for g in keys})

    def to_dict(self) -> dict:
        return {str(g): str(v) for g, v in sorted(self.values.items())}


def _proportionality(action, entry):
    """Scalar ``c`` with ``action == c * entry``, or None."""
    if not action:
        return Fraction(0)
    if isinstance(entry, UEAElement):
        key, val = next(iter(entry.terms.items()))
        c = Fraction(action.terms.get(key, 0)) / val
        return c if action == entry * c else None
    mon, val = next(iter(entry.items()))
    c = Fraction(str(action.get(mon, 0))) / Fraction(str(val))
    R = entry.ring
    from sympy.polys.domains import QQ

    return c if action == entry * R(QQ(c.numerator, c.denominator)) else None


def ad(X: MixedGenerator, a):
    """Adjoint (quantum) or coadjoint (classical) action of a mixed generator."""
    if isinstance(a, UEAElement):
        return commutator(UEAElement.generator(a.n, X), a)
    from .algebra.commutative import rank_of

    R = classical_ring(rank_of(a))
    if X.kind == "E":
        lin = R.x(X.i, X.j)
    else:
        lin = R.x(X.i, X.j) - R.x(X.j, X.i)
    return poisson_bracket(lin, a)


def compute_character(F: GradedFamily, k: int) -> Character:
    """Character of level ``k`` on the Borel basis, found by direct action.

    Raises ``CharacterError`` if some ``ad_X`` is not proportional to an
    entry with one scalar shared across the level.
    """
    level = F.level(k)
    if not level:
        raise KeyError(f"level {k} is empty")
    values: dict = {}
    for X in borel_generators(F.n):
        chi = None
        for i, entry in level.items():
            c = _proportionality(ad(X, entry), entry)
            if c is None:
                raise CharacterError(f"ad_{X} of entry ({k},{i}) is not proportional to it")
            if chi is None:
                chi = c
            elif c != chi:
                raise CharacterError(f"ad_{X} scales level {k} by different factors ({chi}, {c})")
        values[X] = chi
    return Character(k, values)


def expected_character(n: int, k: int) -> Character:
    """``chi_k(E_aa) = [a > k] - [a <= n-k]``, zero on strictly lower generators.

    Closed form for cross-checking the computed characters: the level-k
    entries are minors on rows ``k+1..n`` and columns ``1..n-k``.
    """
    values = {}
    for g in borel_generators(n):
        if g.i == g.j:
            values[g] = Fraction(int(g.i > k) - int(g.i <= n - k))
        else:
            values[g] = Fraction(0)
    return Character(k, values)


# -- eta -----------------------------------------------------------------------


def eta_map(m: UEAElement, k: int | None, chi: Character | None = None) -> UEAElement:
    """``b_1...b_s -> (b_1 + chi(b_1))...(b_s + chi(b_s))``, extended linearly.

    ``chi`` defaults to the quantum character of level ``k``; pass ``k=None``
    with an explicit (e.g. summed) character.
    """
    n = m.n
    if chi is None:
        if k is None:
            raise ValueError("need a level or a character")
        chi = characters(n, "quantum")[k]
    gens = mixed_basis(n).generators
    if not m.in_borel() or not m.is_pure():
        raise ValueError("eta is defined on U(b) elements without spectral variables")
    one = UEAElement.one(n)
    shifted = {}
    out = UEAElement.zero(n)
    for (mono, _, _, _), coef in m.terms.items():
        term = one
        for g in mono:
            s = shifted.get(g)
            if s is None:
                s = shifted[g] = UEAElement(n, {((g,), 0, 0, 0): 1}) + chi(gens[g])
            term = term * s
        out = out + term * coef
    return out


# -- reduced family ------------------------------------------------------------


@dataclass
class ReducedFamily:
    n: int
    numerators: dict  # (k, i) -> a_plus in U(b)
    denominators: dict  # k -> top entry of level k, in U(b)
    denominator_index: dict  # k -> u-power of the denominator entry
    characters: dict  # k -> Character
    family: GradedFamily = field(repr=False, default=None)


@lru_cache(maxsize=None)
def characters(n: int, mode: str) -> dict:
    F = family(n, mode)
    return {k: compute_character(F, k) for k in F.levels()}


@lru_cache(maxsize=None)
def reduce_family(n: int) -> ReducedFamily:
    """Project the quantum family to U(b) and attach denominators and characters."""
    F = quantum_family(n)
    chars = characters(n, "quantum")
    nums = {key: plus_part(v) for key, v in F.entries.items()}
    dens, idx = {}, {}
    for k in F.levels():
        c = F.top(k)
        if not c.in_borel():
            raise CharacterError(f"top entry of level {k} leaves U(b)")
        dens[k] = c
        idx[k] = F.top_index(k)
    return ReducedFamily(n, {k: v for k, v in nums.items() if v}, dens, idx, chars, F)


# -- checks --------------------------------------------------------------------


def _residual(r) -> tuple[bool, str]:
    return (not r, "0" if not r else str(r))


def aks_identity_check(F: GradedFamily, pairs=None) -> Report:
    """``a_plus eta_k(b_plus) - b_plus eta_l(a_plus)`` for family pairs."""
    if F.mode != "quantum":
        raise ValueError("the AKS identity is checked on the quantum family")
    chars = characters(F.n, "quantum")
    report = Report("aks-identity", F.n, "quantum")
    keys = F.keys()
    if pairs is None:
        pairs = [(keys[x], keys[y]) for x in range(len(keys)) for y in range(x, len(keys))]
    plus = {key: plus_part(F.entries[key]) for key in keys}
    for ka, kb in pairs:
        a, b = plus[ka], plus[kb]
        r = a * eta_map(b, ka[0], chars[ka[0]]) - b * eta_map(a, kb[0], chars[kb[0]])
        ok, res = _residual(r)
        report.pairs.append(PairResult(ka, kb, ok, res))
    return report


def ratio_commutativity_check(R: ReducedFamily) -> Report:
    """Denominator-free form of ``[a_plus c^-1, b_plus d^-1] = 0``.

    Checks (1) the AKS identity on numerators, (2) ``[c, d] = 0`` for all
    denominators, (3) ``m c = c eta_k(m)`` for every numerator ``m`` and
    every level ``k``.  Pair labels carry the sub-identity name.
    """
    report = Report("ratio-commutativity", R.n, "quantum")
    keys = sorted(R.numerators)
    for x in range(len(keys)):
        for y in range(x + 1, len(keys)):
            ka, kb = keys[x], keys[y]
            a, b = R.numerators[ka], R.numerators[kb]
            r = a * eta_map(b, ka[0], R.characters[ka[0]]) - b * eta_map(a, kb[0], R.characters[kb[0]])
            ok, res = _residual(r)
            report.pairs.append(PairResult(("aks",) + ka, ("aks",) + kb, ok, res))
    levels = sorted(R.denominators)
    for x in range(len(levels)):
        for y in range(x + 1, len(levels)):
            r = commutator(R.denominators[levels[x]], R.denominators[levels[y]])
            ok, res = _residual(r)
            report.pairs.append(PairResult(("den", levels[x]), ("den", levels[y]), ok, res))
    for key in keys:
        m = R.numerators[key]
        for k in levels:
            c = R.denominators[k]
            r = m * c - c * eta_map(m, k, R.characters[k])
            ok, res = _residual(r)
            report.pairs.append(PairResult(("eta",) + key, ("den", k), ok, res))
    return report


def classical_ratio_check(n: int) -> Report:
    """``{a/c, b/d} = 0`` in Frac S(b), multiplied through by ``c^2 d^2``.

    ``a = (I[k,i])_plus``, ``c`` the top entry of level ``k``; the cleared
    identity is ``cd{a,b} - bc{a,d} - ad{c,b} + ab{c,d} = 0``.
    """
    F = classical_family(n)
    report = Report("classical-ratio-commutativity", n, "classical")
    plus = {key: borel_restrict(v) for key, v in F.entries.items()}
    tops = {k: borel_restrict(F.top(k)) for k in F.levels()}
    keys = [k for k in F.keys() if plus[k]]
    pb = _memo_bracket()
    for x in range(len(keys)):
        for y in range(x + 1, len(keys)):
            (k, _), (m, _) = keys[x], keys[y]
            a, b = plus[keys[x]], plus[keys[y]]
            c, d = tops[k], tops[m]
            r = c * d * pb(a, b) - b * c * pb(a, d) - a * d * pb(c, b) + a * b * pb(c, d)
            ok, res = _residual(r)
            report.pairs.append(PairResult(keys[x], keys[y], ok, res))
    return report


def _memo_bracket():
    cache = {}

    def pb(f, g):
        key = (f, g)
        if key not in cache:
            cache[key] = poisson_bracket(f, g)
        return cache[key]

    return pb


def default_ore_samples(n: int) -> list[UEAElement]:
    gens = [UEAElement.generator(n, g) for g in borel_generators(n)]
    out = [UEAElement.one(n)] + gens
    out += [gens[i] * gens[j] for i in range(len(gens)) for j in range(i, len(gens))]
    return out


@dataclass
class OreWitness:
    a: UEAElement
    s_levels: tuple
    a_prime: UEAElement
    s_prime: UEAElement
    ok: bool


def ore_condition_check(R: ReducedFamily, samples=None, max_factors: int = 2) -> Report:
    """Exhibit ``s' = s`` and ``a' = eta_s(a)`` with ``s a' = a s'``.

    ``s`` runs over products of up to ``max_factors`` denominators; the
    character of a product is the sum of the factors' characters.
    """
    import itertools

    samples = default_ore_samples(R.n) if samples is None else samples
    report = Report("ore", R.n, "quantum")
    levels = sorted(R.denominators)
    products = []
    for r in range(1, max_factors + 1):
        products += list(itertools.combinations_with_replacement(levels, r))
    for idx, a in enumerate(samples):
        for combo in products:
            s = UEAElement.one(R.n)
            chi = Character(-1, {})
            for k in combo:
                s = s * R.denominators[k]
                chi = chi + R.characters[k]
            a_prime = eta_map(a, None, chi)
            r = s * a_prime - a * s
            ok, res = _residual(r)
            report.pairs.append(PairResult(("sample", idx), ("s",) + combo, ok, res))
    return report


def ore_witness(R: ReducedFamily, a: UEAElement, levels) -> OreWitness:
    s = UEAElement.one(R.n)
    chi = Character(-1, {})
    for k in levels:
        s = s * R.denominators[k]
        chi = chi + R.characters[k]
    a_prime = eta_map(a, None, chi)
    return OreWitness(a, tuple(levels), a_prime, s, s * a_prime == a * s)


# -- parabolic -----------------------------------------------------------------


def designated_parabolic_roots(n: int, k: int) -> list[int]:
    """Simple roots ``alpha_m`` (``m = k .. n-k-1``) named for the parabolic ``p_k``."""
    return [m for m in range(max(k, 1), n - k) if 1 <= m <= n - 1]


def parabolic_invariance_check(n: int, k: int, roots=None) -> Report:
    """``ad_X(I[k,i]) I[k,j] - I[k,i] ad_X(I[k,j]) = 0`` for X in the parabolic.

    X runs over the Borel basis plus the upper simple root vectors
    ``e_{m,m+1}`` for the given roots (default: the designated range).
    """
    F = classical_family(n)
    Rg = classical_ring(n)
    roots = designated_parabolic_roots(n, k) if roots is None else list(roots)
    report = Report("parabolic", n, "classical")
    level = F.level(k)
    idx = sorted(level)
    gens = [("E", g.i, g.j) for g in borel_generators(n)] + [("root", m, m + 1) for m in roots]
    for tag, a, b in gens:
        lin = Rg.x(a, b)
        acts = {i: poisson_bracket(lin, level[i]) for i in idx}
        for x in range(len(idx)):
            for y in range(x + 1, len(idx)):
                i, j = idx[x], idx[y]
                r = acts[i] * level[j] - level[i] * acts[j]
                ok, res = _residual(r)
                report.pairs.append(PairResult((tag, a, b), (k, i, j), ok, res))
    report.notes.append(f"designated roots {designated_parabolic_roots(n, k)}")
    report.notes.append(f"ratio-preserving simple roots {preserving_simple_roots(n, k)}")
    return report


def preserving_simple_roots(n: int, k: int) -> list[int]:
    """Simple roots ``m`` whose upper root vector preserves every ratio at level k."""
    F = classical_family(n)
    Rg = classical_ring(n)
    level = F.level(k)
    idx = sorted(level)
    out = []
    for m in range(1, n):
        lin = Rg.x(m, m + 1)
        acts = {i: poisson_bracket(lin, level[i]) for i in idx}
        if all(
            not (acts[i] * level[j] - level[i] * acts[j]) for i in idx for j in idx if i < j
        ):
            out.append(m)
    return out


def character_on_bracket(n: int, chi: Character, X: MixedGenerator, Y: MixedGenerator) -> Fraction:
    """``chi([X, Y])`` using the mixed-basis structure constants."""
    b = mixed_basis(n)
    total = Fraction(0)
    for c, coef in b.bracket[b.index[X]][b.index[Y]]:
        total += coef * chi(b.generators[c])
    return total
