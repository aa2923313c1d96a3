"""Degree-truncated quotient of a free Lie algebra by the ideal of a presentation."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import freelie
from .freelie import LiePoly, bracket, bracket_string
from .linalg import RatMatrix, invert
from .presentation import Presentation
from .table import StructureTable


class NamesNotBasisError(ValueError):
    """The provided named elements do not form a basis of the computed quotient."""


def _content_strip(vec: dict) -> dict:
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            return vec
    if g > 1:
        return {k: v // g for k, v in vec.items()}
    return vec


class _IntRref:
    """Sparse incremental RREF over Z: rows are content-stripped, tails pivot-free.

    The pivot of a row is its maximum coordinate index.  Full back-substitution is
    maintained on every insertion, so reduction of any vector is a single pass over
    its initial support (eliminating one pivot only ever introduces non-pivot
    coordinates).
    """

    def __init__(self):
        self.rows: dict = {}            # pivot index -> {index: int}
        self.containing: dict = {}      # index -> set of pivots whose row touches it

    def reduce(self, vec: dict) -> dict:
        vec = dict(vec)
        rows = self.rows
        for p in sorted((i for i in vec if i in rows), reverse=True):
            vp = vec.get(p)
            if not vp:
                continue
            row = rows[p]
            rp = row[p]
            g = gcd(vp, rp)
            mv, mr = rp // g, vp // g
            if mv != 1:
                for k in vec:
                    vec[k] *= mv
            for k, rv in row.items():
                nv = vec.get(k, 0) - mr * rv
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
        return _content_strip(vec)

    def _register(self, p: int, row: dict) -> None:
        for k in row:
            self.containing.setdefault(k, set()).add(p)

    def _unregister(self, p: int, row: dict) -> None:
        for k in row:
            s = self.containing.get(k)
            if s:
                s.discard(p)

    def add(self, vec: dict) -> int | None:
        """Reduce vec and, if independent, insert it; returns the new pivot or None."""
        rem = self.reduce(vec)
        if not rem:
            return None
        p = max(rem)
        for q in list(self.containing.get(p, ())):
            row = self.rows[q]
            self._unregister(q, row)
            rp, qv = rem[p], row[p]
            g = gcd(rp, qv)
            mq, mr = rp // g, qv // g
            new = {k: v * mq for k, v in row.items()}
            for k, rv in rem.items():
                nv = new.get(k, 0) - mr * rv
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            new = _content_strip(new)
            self.rows[q] = new
            self._register(q, new)
        self.rows[p] = rem
        self._register(p, rem)
        return p


@dataclass
class TruncationEvent:
    """A consequence all of whose children exceeded the bound and were dropped."""
    relation_index: int
    kept_degrees: tuple  # within-bound component degrees the dropped children had


@dataclass
class QuotientBasis:
    """Reduced model of L/(ideal + components above degree_bound)."""
    degree_bound: int
    alphabet: int
    generator_names: tuple
    representatives: tuple           # Lyndon words, increasing (degree, lex)
    stabilized: bool
    truncation_events: tuple
    dim_at_lower: int | None         # quotient dimension at degree_bound - 1, if computable
    _rep_index: dict = field(repr=False, default_factory=dict)
    _monic_rows: dict = field(repr=False, default_factory=dict)
    _word_index: dict = field(repr=False, default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def reduce(self, p: LiePoly) -> tuple:
        """Coordinates of p over the representatives."""
        vec: dict = {}
        for w, c in p.terms.items():
            idx = self._word_index.get(w)
            if idx is None:
                raise ValueError(f"monomial degree {len(w)} exceeds bound {self.degree_bound} or bad alphabet: {w}")
            vec[idx] = c
        rows = self._monic_rows
        for piv in sorted((i for i in vec if i in rows), reverse=True):
            coeff = vec.pop(piv, None)
            if not coeff:
                continue
            for k, rv in rows[piv].items():
                if k == piv:
                    continue
                nv = vec.get(k, 0) - coeff * rv
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
        out = [Fraction(0)] * len(self.representatives)
        for idx, c in vec.items():
            out[self._rep_index[idx]] = c
        return tuple(out)

    def representative_name(self, i: int) -> str:
        return bracket_string(self.representatives[i], self.generator_names)

    def dims_by_degree(self) -> dict:
        out: dict = {}
        for w in self.representatives:
            out[len(w)] = out.get(len(w), 0) + 1
        return out

    def degree_images(self, degree: int) -> list:
        """(word, coordinates) for every Lyndon monomial of the given degree."""
        out = []
        for w in freelie.lyndon_words(self.alphabet, degree)[degree]:
            out.append((w, self.reduce(LiePoly.monomial(w))))
        return out


def _int_terms(p: LiePoly) -> dict:
    denom = 1
    for c in p.terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    return {w: int(c * denom) for w, c in p.terms.items()}


def quotient_closure(pres: Presentation, degree_bound: int, _with_stability: bool = True) -> QuotientBasis:
    """Close the relation ideal under ad(generator) up to degree_bound and quotient.

    Consequences are the full finite tree of ad(x_g) monomials applied to each
    relation.  A consequence whose children would carry a component above the bound
    stops there: the children are dropped whole (never partially truncated, which
    would inject spurious low-degree vectors) and a TruncationEvent records which
    within-bound degrees the drop touched, so stabilization is certified, not assumed.
    """
    n = len(pres.generators)
    max_rel_deg = pres.max_relation_degree()
    if degree_bound < 1:
        raise ValueError("degree bound must be positive")
    if max_rel_deg > degree_bound:
        raise ValueError(f"degree bound {degree_bound} below max relation degree {max_rel_deg}")

    by_degree = freelie.lyndon_words(n, degree_bound)
    flat = [w for d in range(1, degree_bound + 1) for w in by_degree[d]]
    word_index = {w: i for i, w in enumerate(flat)}

    # expansion cache: [x_g, b_w] as integer term lists
    exp_cache: dict = {}

    def expansion(g: int, w: tuple) -> list:
        key = (g, w)
        hit = exp_cache.get(key)
        if hit is None:
            terms = freelie._bracket_words((g,), w)
            hit = [(w2, int(c)) for w2, c in terms.items()]
            exp_cache[key] = hit
        return hit

    elim = _IntRref()
    events = []

    for ridx, rel in enumerate(pres.relations):
        seed = _int_terms(rel)
        if not seed:
            continue
        stack = [seed]
        while stack:
            node = stack.pop()
            elim.add({word_index[w]: c for w, c in node.items()})
            top = max(len(w) for w in node)
            if top + 1 > degree_bound:
                kept = tuple(sorted({len(w) + 1 for w in node if len(w) + 1 <= degree_bound}))
                if kept:
                    events.append(TruncationEvent(ridx, kept))
                continue
            for g in range(n - 1, -1, -1):
                child: dict = {}
                for w, c in node.items():
                    for w2, k in expansion(g, w):
                        nv = child.get(w2, 0) + c * k
                        if nv:
                            child[w2] = nv
                        else:
                            child.pop(w2, None)
                if child:
                    stack.append(child)

    pivots = set(elim.rows)
    reps = tuple(flat[i] for i in range(len(flat)) if i not in pivots)
    monic = {
        p: {k: Fraction(v, row[p]) for k, v in row.items()}
        for p, row in elim.rows.items()
    }

    dim_at_lower = None
    stabilized = False
    if _with_stability and degree_bound - 1 >= max_rel_deg:
        lower = quotient_closure(pres, degree_bound - 1, _with_stability=False)
        dim_at_lower = lower.dim
        threshold = degree_bound - max_rel_deg
        events_ok = all(min(e.kept_degrees) > threshold for e in events)
        stabilized = (dim_at_lower == len(reps)) and events_ok

    qb = QuotientBasis(
        degree_bound=degree_bound,
        alphabet=n,
        generator_names=pres.names,
        representatives=reps,
        stabilized=stabilized,
        truncation_events=tuple(events),
        dim_at_lower=dim_at_lower,
        _rep_index={word_index[w]: i for i, w in enumerate(reps)},
        _monic_rows=monic,
        _word_index=word_index,
    )
    return qb


def default_names(qb: QuotientBasis) -> dict:
    """Representative monomials named by their bracket strings."""
    return {qb.representative_name(i): LiePoly.monomial(w) for i, w in enumerate(qb.representatives)}


def structure_table(pres: Presentation, names: dict | None = None,
                    degree_bound: int = 8, qb: QuotientBasis | None = None) -> StructureTable:
    """Bracket table of the quotient over named elements (default: the representatives).

    names maps name -> LiePoly in the free algebra, in the desired basis order.
    Raises NamesNotBasisError if they do not form a basis of the quotient.
    """
    if qb is None:
        qb = quotient_closure(pres, degree_bound)
    if names is None:
        names = default_names(qb)
    name_list = tuple(names)
    exprs = [names[n] for n in name_list]
    if len(exprs) != qb.dim:
        raise NamesNotBasisError(
            f"{len(exprs)} names for a quotient of dimension {qb.dim}")
    cols = [qb.reduce(e) for e in exprs]
    m = RatMatrix.from_rows([[cols[j][i] for j in range(len(cols))] for i in range(qb.dim)])
    minv = invert(m)
    if minv is None:
        raise NamesNotBasisError("the names do not form a basis of the quotient")

    def fn(i, j):
        br = bracket(exprs[i], exprs[j])
        try:
            reduced = qb.reduce(br)
        except ValueError as exc:
            raise ValueError(
                f"degree bound {qb.degree_bound} is too small to bracket "
                f"{name_list[i]} with {name_list[j]}: {exc}") from exc
        return minv.apply(reduced)

    return StructureTable.from_bracket_fn(name_list, fn)


@dataclass
class CrossCheckReport:
    rewriter_applicable: bool
    reason: str
    closure_dim: int
    stabilized: bool
    names_ok: bool
    mismatches: tuple
    closure_table: StructureTable | None
    rewriter_table: StructureTable | None

    @property
    def ok(self) -> bool:
        if not self.stabilized:
            return False
        if not self.rewriter_applicable:
            return True
        return self.names_ok and not self.mismatches


def rewriter_applicable(pres: Presentation) -> bool:
    """The rewriter path is specific to quadruple presentations on three generators."""
    return (
        len(pres.generators) == 3
        and len(pres.relations) > 0
        and all(r.max_degree() == 4 for r in pres.relations)
    )


def cross_validate(pres: Presentation, degree_bound: int = 8,
                   qb: QuotientBasis | None = None) -> CrossCheckReport:
    """Run the closure engine and, when the shape fits, the quadruple rewriter; compare."""
    from .g2 import named_basis_free, rewriter_structure_table

    if qb is None:
        qb = quotient_closure(pres, degree_bound)
    applicable = rewriter_applicable(pres)
    if not qb.stabilized:
        return CrossCheckReport(
            rewriter_applicable=applicable,
            reason="closure did not stabilize at this bound; no table was built",
            closure_dim=qb.dim, stabilized=False, names_ok=True,
            mismatches=(), closure_table=None, rewriter_table=None,
        )
    if not applicable:
        closure_tab = structure_table(pres, None, degree_bound, qb=qb)
        return CrossCheckReport(
            rewriter_applicable=False,
            reason="rewriter needs 3 generators and relations with top degree 4",
            closure_dim=qb.dim, stabilized=qb.stabilized, names_ok=True,
            mismatches=(), closure_table=closure_tab, rewriter_table=None,
        )

    rew = rewriter_structure_table()
    names_ok = True
    closure_tab = None
    mismatches: list = []
    try:
        closure_tab = structure_table(pres, named_basis_free(), degree_bound, qb=qb)
    except NamesNotBasisError:
        names_ok = False
    if closure_tab is not None:
        for i, j, cmap, rmap in closure_tab.diff(rew):
            mismatches.append((closure_tab.names[i], closure_tab.names[j], cmap, rmap))
    return CrossCheckReport(
        rewriter_applicable=True,
        reason="quadruple presentation: both engines ran",
        closure_dim=qb.dim, stabilized=qb.stabilized, names_ok=names_ok,
        mismatches=tuple(mismatches), closure_table=closure_tab, rewriter_table=rew,
    )
