"""Mora normal form and standard bases for ideals and submodules of free modules.

Vectors are tuples of polynomials; rank 1 degenerates to the ideal case.  The
module ordering is position-over-term with lower component index first, so a
standard basis doubles as a component-elimination basis for syzygy extraction.
"""

from __future__ import annotations

import itertools
import os

from .ring import GermRing, Polynomial, mono_deg, mono_div, mono_lcm, mono_mul


class Infinite:
    """Sentinel for an infinite colength."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"


class Inconclusive:
    """Sentinel for an oracle run that hit its cap without stabilizing."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INCONCLUSIVE"


INFINITE = Infinite()
INCONCLUSIVE = Inconclusive()


class DegreeCapExceeded(RuntimeError):
    """A standard-basis run produced a leading term above the safety cap."""


DEFAULT_DEGREE_CAP = 30
DEFAULT_STEP_BUDGET = 50_000


def degree_cap() -> int:
    return int(os.environ.get("GERMCALC_DEGREE_CAP", DEFAULT_DEGREE_CAP))


def step_budget() -> int:
    return int(os.environ.get("GERMCALC_STEP_BUDGET", DEFAULT_STEP_BUDGET))


class _Budget:
    """Deterministic countdown of reduction steps across one basis run."""

    __slots__ = ("remaining",)

    def __init__(self, remaining: int):
        self.remaining = remaining

    def spend(self):
        self.remaining -= 1
        if self.remaining < 0:
            raise DegreeCapExceeded(
                "reduction step budget exceeded; set GERMCALC_STEP_BUDGET to raise")


class Vector:
    """Element of a free module O^r, stored as r polynomials."""

    __slots__ = ("components",)

    def __init__(self, components):
        self.components = tuple(components)
        if not self.components:
            raise ValueError("rank must be at least 1")

    @classmethod
    def ideal(cls, p: Polynomial) -> "Vector":
        return cls((p,))

    @classmethod
    def unit(cls, ring: GermRing, rank: int, i: int) -> "Vector":
        return cls(tuple(ring.one if j == i else ring.zero for j in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.components)

    @property
    def ring(self) -> GermRing:
        return self.components[0].ring

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self.components)

    def lead(self):
        """(component, monomial, coefficient) of the POT-leading term."""
        for i, p in enumerate(self.components):
            if not p.is_zero:
                m, c = p.lead()
                return i, m, c
        raise ValueError("zero vector has no leading term")

    def max_degree(self) -> int:
        return max((p.max_degree() for p in self.components), default=-1)

    def ecart(self) -> int:
        _, m, _ = self.lead()
        return self.max_degree() - mono_deg(m)

    def __add__(self, other):
        return Vector(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other):
        return Vector(tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return Vector(tuple(-a for a in self.components))

    def mul_term(self, m, c) -> "Vector":
        return Vector(tuple(p.mul_term(m, c) for p in self.components))

    def scale(self, c) -> "Vector":
        return Vector(tuple(p.scale(c) for p in self.components))

    def mul_poly(self, q: Polynomial) -> "Vector":
        return Vector(tuple(p * q for p in self.components))

    def normalizing_scale(self):
        """Constant making the vector monic over F_p, or of integer content 1
        with positive leading coefficient over Q."""
        ring = self.ring
        F = ring.field
        if F.p is not None:
            _, _, c = self.lead()
            return F.inv(c)
        from math import gcd
        num = 0
        den = 1
        for p in self.components:
            for _, c in p.terms:
                num = gcd(num, c.numerator)
                den = den * c.denominator // gcd(den, c.denominator)
        _, _, lc = self.lead()
        return F.from_fraction(den, num) if lc > 0 else F.from_fraction(-den, num)

    def normalized(self) -> "Vector":
        """Scale by a constant: monic over F_p, integer content 1 and positive
        leading coefficient over Q."""
        if self.is_zero:
            return self
        return self.scale(self.normalizing_scale())

    def __eq__(self, other):
        return isinstance(other, Vector) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        from .ring import render
        return "Vector(" + ", ".join(render(p) for p in self.components) + ")"


def _lead_reducible_by(h_lead, g_lead):
    ci, mi, _ = h_lead
    cj, mj, _ = g_lead
    if ci != cj:
        return None
    return mono_div(mi, mj)


def _reduce_step(h: Vector, g: Vector) -> Vector:
    """Cancel the leading term of h against g."""
    ch, mh, ah = h.lead()
    cg, mg, ag = g.lead()
    assert ch == cg
    q = mono_div(mh, mg)
    F = h.ring.field
    return h - g.mul_term(q, F.div(ah, ag))


def mora_normal_form(v: Vector, basis: list[Vector], cap: int | None = None,
                     budget: _Budget | None = None) -> Vector:
    """Mora's weak normal form with minimal-ecart reducer selection.

    Returns r with u*v = (combination of basis) + r for some unit u of the
    local ring; r is 0 exactly when v lies in the localized submodule.
    """
    if cap is None:
        cap = degree_cap()
    h = v
    T = [(g, g.lead(), g.ecart()) for g in basis if not g.is_zero]
    while not h.is_zero:
        h_lead = h.lead()
        candidates = [(e, i) for i, (g, gl, e) in enumerate(T)
                      if _lead_reducible_by(h_lead, gl) is not None]
        if not candidates:
            break
        _, idx = min(candidates)
        g, _, eg = T[idx]
        if eg > h.ecart():
            T.append((h, h_lead, h.ecart()))
        if budget is not None:
            budget.spend()
        h = _reduce_step(h, g)
        if not h.is_zero:
            # content renormalization keeps rational coefficients small
            h = h.normalized()
            if mono_deg(h.lead()[1]) > cap:
                raise DegreeCapExceeded(
                    f"leading degree exceeded safety cap {cap}; set GERMCALC_DEGREE_CAP to raise")
    return h


def mora_divide(v: Vector, basis: list[Vector], cap: int | None = None):
    """Weak normal form with cofactor tracking.

    Returns (r, u, q) with u*v = sum(q_i * basis_i) + r and u a unit.
    """
    if cap is None:
        cap = degree_cap()
    ring = v.ring
    nb = len(basis)
    zero_q = tuple(ring.zero for _ in range(nb))
    # each reducer carries a representation t = a*v - sum(c_i * basis_i)
    T = []
    for i, g in enumerate(basis):
        if g.is_zero:
            continue
        c = list(zero_q)
        c[i] = -ring.one
        T.append((g, g.lead(), g.ecart(), ring.zero, tuple(c)))
    h, ah, ch = v, ring.one, zero_q
    while not h.is_zero:
        h_lead = h.lead()
        candidates = [(e, i) for i, (g, gl, e, _, _) in enumerate(T)
                      if _lead_reducible_by(h_lead, gl) is not None]
        if not candidates:
            break
        _, idx = min(candidates)
        g, gl, eg, ag, cg = T[idx]
        if eg > h.ecart():
            T.append((h, h_lead, h.ecart(), ah, ch))
        _, mh, coh = h_lead
        _, mg, cog = gl
        F = ring.field
        qm = mono_div(mh, mg)
        qc = F.div(coh, cog)
        factor = ring.monomial(qm, 1).scale(qc)
        h = h - g.mul_term(qm, qc)
        ah = ah - factor * ag
        ch = tuple(c - factor * c2 for c, c2 in zip(ch, cg))
        if not h.is_zero:
            s = h.normalizing_scale()
            h, ah = h.scale(s), ah.scale(s)
            ch = tuple(c.scale(s) for c in ch)
            if mono_deg(h.lead()[1]) > cap:
                raise DegreeCapExceeded(
                    f"leading degree exceeded safety cap {cap}; set GERMCALC_DEGREE_CAP to raise")
    if not ah.is_unit:
        raise AssertionError("Mora division produced a non-unit cofactor")
    return h, ah, ch


class StandardBasis:
    """Mora-computed standard basis of a submodule, with its leading structure."""

    def __init__(self, generators: list[Vector], rank: int):
        self.generators = list(generators)
        self.rank = rank

    @property
    def ring(self) -> GermRing:
        return self.generators[0].ring

    def leading_module(self):
        return [(g.lead()[0], g.lead()[1]) for g in self.generators]

    def normal_form(self, v: Vector) -> Vector:
        return mora_normal_form(v, self.generators)

    def contains(self, v: Vector) -> bool:
        if v.is_zero:
            return True
        if v.rank != self.rank:
            raise ValueError("rank mismatch")
        return self.normal_form(v).is_zero


def _spair(f: Vector, g: Vector) -> Vector:
    cf, mf, af = f.lead()
    cg, mg, ag = g.lead()
    assert cf == cg
    L = mono_lcm(mf, mg)
    F = f.ring.field
    return f.mul_term(mono_div(L, mf), ag) - g.mul_term(mono_div(L, mg), af)


def standard_basis(gens: list[Vector], cap: int | None = None) -> StandardBasis:
    """Mora's algorithm: Buchberger completion with the local weak normal form.

    Deterministic: normal pair selection (minimal lcm under the ordering),
    ties broken by generator index.
    """
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    rank = gens[0].rank
    if any(g.rank != rank for g in gens):
        raise ValueError("generators of mixed rank")
    ring = gens[0].ring
    if cap is None:
        cap = degree_cap()

    G = [g.normalized() for g in gens]
    budget = _Budget(step_budget())
    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))
             if G[i].lead()[0] == G[j].lead()[0]}

    def pair_key(p):
        i, j = p
        L = mono_lcm(G[i].lead()[1], G[j].lead()[1])
        # lowest-degree lcm first keeps local computations shallow; the
        # ordering key and the input indices make the choice deterministic
        return (mono_deg(L), ring.mono_key(L), i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        _, mi, _ = G[i].lead()
        _, mj, _ = G[j].lead()
        if rank == 1 and mono_lcm(mi, mj) == mono_mul(mi, mj):
            continue  # product criterion (ideal case only)
        h = mora_normal_form(_spair(G[i], G[j]), G, cap=cap, budget=budget)
        if h.is_zero:
            continue
        h = h.normalized()
        G.append(h)
        k = len(G) - 1
        for i2 in range(k):
            if G[i2].lead()[0] == h.lead()[0]:
                pairs.add((i2, k))

    # minimalize: drop generators whose lead term another one divides
    keep = []
    leads = [g.lead() for g in G]
    for i, g in enumerate(G):
        redundant = False
        for j, h in enumerate(G):
            if i == j:
                continue
            q = _lead_reducible_by(leads[i], leads[j])
            if q is not None and (q != (0,) * ring.nvars or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    return StandardBasis(keep, rank)


def ideal_basis(polys: list[Polynomial], cap: int | None = None) -> StandardBasis:
    return standard_basis([Vector.ideal(p) for p in polys], cap=cap)


def colength(basis: StandardBasis):
    """Number of standard monomials outside the leading module, or INFINITE.

    Exact for local orderings: finite iff each component's leading ideal
    contains a pure power of every variable.
    """
    ring = basis.ring
    if not ring.order.is_local:
        raise ValueError("colength requires a local ordering")
    n = ring.nvars
    by_comp = {c: [] for c in range(basis.rank)}
    for c, m in basis.leading_module():
        by_comp[c].append(m)
    total = 0
    for c in range(basis.rank):
        leads = by_comp[c]
        bounds = []
        for i in range(n):
            pure = [m[i] for m in leads if all(m[j] == 0 for j in range(n) if j != i)]
            if not pure:
                return INFINITE
            bounds.append(min(pure))
        for mono in itertools.product(*(range(b) for b in bounds)):
            if not any(mono_div(mono, m) is not None for m in leads):
                total += 1
    return total


def is_member(v: Vector, basis: StandardBasis) -> bool:
    return basis.contains(v)


# ---------------------------------------------------------------------------
# independent oracle: degree-truncated dense linear algebra

def _monomials_below(n: int, d: int):
    """All exponent vectors of total degree < d, in a fixed deterministic order."""
    out = []

    def rec(prefix, remaining, budget):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in range(budget + 1):
            rec(prefix + [e], remaining - 1, budget - e)

    rec([], n, d - 1)
    return out


def _row_rank(rows, field):
    """Rank by Gaussian elimination over the coefficient field."""
    rows = [list(r) for r in rows if any(c != field.zero for c in r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != field.zero), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        pinv = field.inv(prow[col])
        for i in range(rank + 1, len(rows)):
            r = rows[i]
            if r[col] != field.zero:
                factor = field.mul(r[col], pinv)
                for j in range(col, ncols):
                    r[j] = field.sub(r[j], field.mul(factor, prow[j]))
        rank += 1
        if rank == len(rows):
            break
    return rank


def _truncated_quotient_dim(gens: list[Polynomial], D: int) -> int:
    """dim of (polynomials of degree < D) / (degree-<D span of monomial*generator)."""
    ring = gens[0].ring
    n = ring.nvars
    monos = _monomials_below(n, D)
    index = {m: i for i, m in enumerate(monos)}
    field = ring.field
    rows = []
    for g in gens:
        if g.is_zero:
            continue
        gmin = min(mono_deg(m) for m, _ in g.terms)
        for m in _monomials_below(n, D - gmin):
            row = [field.zero] * len(monos)
            hit = False
            for gm, gc in g.terms:
                prod = mono_mul(m, gm)
                i = index.get(prod)
                if i is not None:
                    row[i] = field.add(row[i], gc)
                    hit = True
            if hit:
                rows.append(row)
    rank = _row_rank(rows, field) if rows else 0
    return len(monos) - rank


def oracle_colength(gens: list[Polynomial], truncation: int | None = None):
    """Colength of an ideal by dense truncated Gaussian elimination.

    Independent of the standard-basis route.  Increases the truncation degree
    until two consecutive values agree (exact by Nakayama); at the cap,
    persistent growth reports INFINITE, anything else INCONCLUSIVE.
    """
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        return INFINITE
    cap = truncation if truncation is not None else 16
    values = []
    for D in range(1, cap + 1):
        values.append(_truncated_quotient_dim(gens, D))
        if len(values) >= 2 and values[-1] == values[-2]:
            return values[-1]
    if len(values) >= 3 and values[-1] > values[-2] > values[-3]:
        return INFINITE
    return INCONCLUSIVE
