"""Grothendieck constructions (homotopy colimits) of diagrams of finite
categories, finite cell models encoded as spectra of per-object cell counts,
and the executable cross-check of the homotopy colimit formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .errors import EulcatError, ValidationError
from .eulerchar import chi_scwol, chi2_free_EI, groupoid_chi2
from .fincat import (
    CatFunctor,
    FinCat,
    Morphism,
    NatIso,
    NotNatural,
    NotScwol,
    classify,
    path_counts,
    skeleton,
)
from .ratlin import Weighting, chi_L

INVARIANTS = ("chiL", "chi2", "chi_scwol")


class CoherenceFailure(ValidationError):
    """Pseudofunctor coherence (naturality, units, or cocycle) fails."""


class MissingValue(EulcatError):
    """A per-object value required by a formula is absent."""


class UnknownKind(EulcatError):
    """No built-in cell model with that name."""


@dataclass(frozen=True, eq=False)
class StrictDiagram:
    """A strict functor from a finite index category into finite categories."""

    index: FinCat
    vertex: Mapping[str, FinCat]
    edge: Mapping[str, CatFunctor]

    def __post_init__(self):
        idx = self.index
        for i in idx.objects:
            if i not in self.vertex:
                raise ValidationError(f"no vertex category at {i!r}")
        for m in idx.morphisms:
            fun = self.edge.get(m.name)
            if fun is None:
                raise ValidationError(f"no functor along {m.name!r}")
            if fun.source is not self.vertex[m.source] or fun.target is not self.vertex[m.target]:
                raise ValidationError(f"functor along {m.name!r} has wrong endpoints")
        for i in idx.objects:
            if not self.edge[idx.identity[i]].same_maps_as(
                CatFunctor.identity_functor(self.vertex[i])
            ):
                raise ValidationError(f"edge at id_{i!r} is not the identity functor")
        for (v, u), vu in idx.composition.items():
            if not self.edge[u].then(self.edge[v]).same_maps_as(self.edge[vu]):
                raise ValidationError(
                    f"strictness fails: edge({vu!r}) != edge({v!r}) o edge({u!r})"
                )


@dataclass(frozen=True, eq=False)
class PseudoDiagram:
    """A pseudo functor: vertex/edge data plus coherence isomorphisms.

    ``comp[(v, u)]`` is a natural isomorphism C(v) o C(u) => C(v o u) and
    ``unit[i]`` a natural isomorphism Id => C(id_i); both are required to
    satisfy the pseudofunctor unit and associativity axioms, checked on
    every composable pair and triple.
    """

    index: FinCat
    vertex: Mapping[str, FinCat]
    edge: Mapping[str, CatFunctor]
    comp: Mapping[tuple[str, str], NatIso]
    unit: Mapping[str, NatIso]

    def __post_init__(self):
        idx = self.index
        for i in idx.objects:
            if i not in self.vertex:
                raise ValidationError(f"no vertex category at {i!r}")
        for m in idx.morphisms:
            fun = self.edge.get(m.name)
            if fun is None:
                raise ValidationError(f"no functor along {m.name!r}")
            if fun.source is not self.vertex[m.source] or fun.target is not self.vertex[m.target]:
                raise ValidationError(f"functor along {m.name!r} has wrong endpoints")

        for i in idx.objects:
            iso = self.unit.get(i)
            if iso is None:
                raise CoherenceFailure(f"no unit isomorphism at {i!r}")
            if not iso.f.same_maps_as(CatFunctor.identity_functor(self.vertex[i])):
                raise CoherenceFailure(f"unit at {i!r} does not start at the identity functor")
            if not iso.g.same_maps_as(self.edge[idx.identity[i]]):
                raise CoherenceFailure(f"unit at {i!r} does not land in C(id_{i})")
        for (v, u), iso in self.comp.items():
            if (v, u) not in idx.composition:
                raise CoherenceFailure(f"comp given for non-composable pair ({v!r}, {u!r})")
            if not iso.f.same_maps_as(self.edge[u].then(self.edge[v])):
                raise CoherenceFailure(f"comp at ({v!r}, {u!r}) has wrong source functor")
            if not iso.g.same_maps_as(self.edge[idx.composition[(v, u)]]):
                raise CoherenceFailure(f"comp at ({v!r}, {u!r}) has wrong target functor")
        for (v, u) in idx.composition:
            if (v, u) not in self.comp:
                raise CoherenceFailure(f"no comp isomorphism at ({v!r}, {u!r})")

        self._check_unit_axioms()
        self._check_associativity_axiom()

    def comp_component(self, v: str, u: str, c: str) -> str:
        """Component of C(v) o C(u) => C(vu) at the object c of C(source(u))."""
        return self.comp[(v, u)].components[c]

    def _check_unit_axioms(self):
        idx = self.index
        for m in idx.morphisms:
            u = m.name
            tgt_cat = self.vertex[m.target]
            for c in self.vertex[m.source].objects:
                # C_{u, id} o (C(u) . unit_source) = 1
                left = tgt_cat.compose(
                    self.comp_component(u, idx.identity[m.source], c),
                    self.edge[u].mor_map[self.unit[m.source].components[c]],
                )
                if left != tgt_cat.identity[self.edge[u].obj_map[c]]:
                    raise CoherenceFailure(
                        f"right unit axiom fails for {u!r} at object {c!r}"
                    )
                # C_{id, u} o (unit_target at C(u)c) = 1
                left2 = tgt_cat.compose(
                    self.comp_component(idx.identity[m.target], u, c),
                    self.unit[m.target].components[self.edge[u].obj_map[c]],
                )
                if left2 != tgt_cat.identity[self.edge[u].obj_map[c]]:
                    raise CoherenceFailure(
                        f"left unit axiom fails for {u!r} at object {c!r}"
                    )

    def _check_associativity_axiom(self):
        idx = self.index
        for u in idx.morphism_names():
            for v in idx.morphisms_from(idx.target(u)):
                vu = idx.compose(v, u)
                for w in idx.morphisms_from(idx.target(v)):
                    wv = idx.compose(w, v)
                    cat = self.vertex[idx.target(w)]
                    for c in self.vertex[idx.source(u)].objects:
                        lhs = cat.compose(
                            self.comp_component(w, vu, c),
                            self.edge[w].mor_map[self.comp_component(v, u, c)],
                        )
                        rhs = cat.compose(
                            self.comp_component(wv, u, c),
                            self.comp_component(w, v, self.edge[u].obj_map[c]),
                        )
                        if lhs != rhs:
                            raise CoherenceFailure(
                                f"associativity coherence fails on triple "
                                f"({w!r}, {v!r}, {u!r}) at object {c!r}"
                            )

    @staticmethod
    def from_strict(d: StrictDiagram) -> "PseudoDiagram":
        """View a strict diagram as a pseudo diagram with identity coherences."""
        comp = {}
        for (v, u), vu in d.index.composition.items():
            fun = d.edge[u].then(d.edge[v])
            comp[(v, u)] = NatIso(
                fun,
                d.edge[vu],
                {
                    c: d.vertex[d.index.target(v)].identity[fun.obj_map[c]]
                    for c in d.vertex[d.index.source(u)].objects
                },
            )
        unit = {
            i: NatIso(
                CatFunctor.identity_functor(d.vertex[i]),
                d.edge[d.index.identity[i]],
                {c: d.vertex[i].identity[c] for c in d.vertex[i].objects},
            )
            for i in d.index.objects
        }
        return PseudoDiagram(d.index, d.vertex, d.edge, comp, unit)


Diagram = Union[StrictDiagram, PseudoDiagram]


def _pair_obj(i: str, c: str) -> str:
    return f"({i},{c})"


def _triple_mor(u: str, f: str, c: str) -> str:
    # the source vertex object c is needed for uniqueness: distinct sources
    # can share (u, f) when C(u) is not injective on objects
    return f"({u},{f})@{c}"


@dataclass(frozen=True, eq=False)
class GrothendieckResult:
    category: FinCat
    alphas: Mapping[str, CatFunctor]


def grothendieck(d: StrictDiagram, verify: bool = False) -> GrothendieckResult:
    """Homotopy colimit of a strict diagram.

    Objects are pairs (i, c); a morphism (i,c) -> (j,d) is a pair (u, f)
    with u: i -> j and f: C(u)(c) -> d, composed by
    (v, g) o (u, f) = (v o u, g o C(v)(f)).

    The construction is lawful for any valid strict diagram; set ``verify``
    to re-run the full exhaustive FinCat validation on the output anyway.
    """
    idx = d.index
    objs = []
    vertex_of: dict[str, tuple[str, str]] = {}
    for i in idx.objects:
        for c in d.vertex[i].objects:
            name = _pair_obj(i, c)
            objs.append(name)
            vertex_of[name] = (i, c)

    mors = []
    data: dict[str, tuple[str, str, str]] = {}  # name -> (u, f, c)
    ident = {}
    for i in idx.objects:
        ci = d.vertex[i]
        for c in ci.objects:
            for u in idx.morphisms_from(i):
                j = idx.target(u)
                cj = d.vertex[j]
                uc = d.edge[u].obj_map[c]
                for dd in cj.objects:
                    for f in cj.hom(uc, dd):
                        name = _triple_mor(u, f, c)
                        mors.append(Morphism(name, _pair_obj(i, c), _pair_obj(j, dd)))
                        data[name] = (u, f, c)
                        if u == idx.identity[i] and f == ci.identity[c]:
                            ident[_pair_obj(i, c)] = name

    comp = {}
    by_source: dict[str, list[str]] = {o: [] for o in objs}
    for m in mors:
        by_source[m.source].append(m.name)
    target_of = {m.name: m.target for m in mors}
    for m in mors:
        u, f, c = data[m.name]
        j = idx.target(u)
        for m2 in by_source[target_of[m.name]]:
            v, g, _ = data[m2]
            k = idx.target(v)
            vu = idx.compose(v, u)
            gf = d.vertex[k].compose(g, d.edge[v].mor_map[f])
            comp[(m2, m.name)] = _triple_mor(vu, gf, c)

    cat = FinCat(
        tuple(objs), tuple(mors), ident, comp, name=f"hocolim({idx.name})", check=verify
    )

    alphas = {}
    for i in idx.objects:
        ci = d.vertex[i]
        alphas[i] = CatFunctor(
            ci,
            cat,
            {c: _pair_obj(i, c) for c in ci.objects},
            {
                m.name: _triple_mor(idx.identity[i], m.name, m.source)
                for m in ci.morphisms
            },
        )
    return GrothendieckResult(cat, alphas)


def grothendieck_pseudo(d: PseudoDiagram) -> FinCat:
    """Homotopy colimit of a pseudo diagram.

    Same objects and morphisms as the strict case; composition picks up the
    inverse coherence component,
    (v, g) o (u, f) = (v o u, g o C(v)(f) o comp_{v,u}^{-1}(c)),
    and the identity of (i, c) is (id_i, unit_i^{-1}(c)).  The output is
    re-validated exhaustively as a finite category.
    """
    idx = d.index
    objs = []
    for i in idx.objects:
        for c in d.vertex[i].objects:
            objs.append(_pair_obj(i, c))

    mors = []
    data: dict[str, tuple[str, str, str]] = {}
    ident = {}
    for i in idx.objects:
        ci = d.vertex[i]
        for c in ci.objects:
            for u in idx.morphisms_from(i):
                j = idx.target(u)
                cj = d.vertex[j]
                uc = d.edge[u].obj_map[c]
                for dd in cj.objects:
                    for f in cj.hom(uc, dd):
                        name = _triple_mor(u, f, c)
                        mors.append(Morphism(name, _pair_obj(i, c), _pair_obj(j, dd)))
                        data[name] = (u, f, c)
            unit_inv = ci.inverse(d.unit[i].components[c])
            ident[_pair_obj(i, c)] = _triple_mor(idx.identity[i], unit_inv, c)

    comp = {}
    by_source: dict[str, list[str]] = {o: [] for o in objs}
    for m in mors:
        by_source[m.source].append(m.name)
    target_of = {m.name: m.target for m in mors}
    for m in mors:
        u, f, c = data[m.name]
        for m2 in by_source[target_of[m.name]]:
            v, g, _ = data[m2]
            k = idx.target(v)
            ck = d.vertex[k]
            vu = idx.compose(v, u)
            tw_inv = ck.inverse(d.comp_component(v, u, c))
            gf = ck.compose(g, ck.compose(d.edge[v].mor_map[f], tw_inv))
            comp[(m2, m.name)] = _triple_mor(vu, gf, c)

    try:
        return FinCat(tuple(objs), tuple(mors), ident, comp, name=f"hocolim({idx.name})")
    except ValidationError as exc:
        raise CoherenceFailure(f"pseudo homotopy colimit is not a category: {exc}") from exc


# -- cell spectra --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CellSpectrum:
    """Per-object, per-dimension cell counts of a finite cell model.

    The derived alternating sums q^i = sum_n (-1)^n cells[i][n] must form a
    weighting on the index category; this is verified at construction and is
    the only certificate we can check for a user-supplied model.
    """

    index: FinCat
    cells: Mapping[str, tuple[int, ...]]

    def __post_init__(self):
        for i in self.cells:
            self.index.require_object(i)
            if any(n < 0 for n in self.cells[i]):
                raise ValidationError(f"negative cell count at {i!r}")
        self.derived_weighting()  # raises NoWeighting if the equation fails

    def count(self, i: str, n: int) -> int:
        vec = self.cells.get(i, ())
        return vec[n] if n < len(vec) else 0

    def alternating_sum(self, i: str) -> Fraction:
        return sum(
            (Fraction((-1) ** n * c) for n, c in enumerate(self.cells.get(i, ()))),
            Fraction(0),
        )

    def derived_weighting(self) -> Weighting:
        values = {i: self.alternating_sum(i) for i in self.index.objects}
        return Weighting(self.index, values, side="weighting", unique=False)

    def objects_with_cells(self) -> tuple[str, ...]:
        return tuple(i for i in self.index.objects if any(self.cells.get(i, ())))


def bar_spectrum(cat: FinCat) -> CellSpectrum:
    """Cell counts of the bar model: one n-cell based at x per path of n
    non-identity morphisms starting at x, computed on the skeleton."""
    if not classify(cat).is_scwol:
        raise NotScwol(f"{cat.name} has a non-identity endomorphism")
    gamma = skeleton(cat).category
    pc = path_counts(gamma)
    return CellSpectrum(gamma, {x: pc.starts[x] for x in gamma.objects})


def builtin_spectrum(kind: str, **kwargs) -> CellSpectrum:
    """Hand-built minimal cell models for the standard index categories.

    Kinds: "terminal" (args: cat, obj), "parallel_pair", "pushout",
    "subsets_poset" (arg: q).
    """
    from . import zoo

    if kind == "terminal":
        cat: Optional[FinCat] = kwargs.get("cat")
        obj = kwargs.get("obj")
        if cat is None or obj is None:
            raise UnknownKind("terminal spectrum needs cat=... and obj=...")
        cat.require_object(obj)
        return CellSpectrum(cat, {obj: (1,)})
    if kind == "parallel_pair":
        return CellSpectrum(zoo.parallel_pair_scwol(), {"k": (1,), "j": (0, 1)})
    if kind == "pushout":
        return CellSpectrum(zoo.pushout_scwol(), {"k": (1,), "l": (1,), "j": (0, 1)})
    if kind == "subsets_poset":
        q = kwargs.get("q")
        if q is None:
            raise UnknownKind("subsets_poset spectrum needs q=...")
        import itertools as _it

        cat = zoo.subsets_poset_opposite(q)
        cells = {}
        for r in range(1, q + 2):
            for s in _it.combinations(range(q + 1), r):
                cells[zoo.subset_label(s)] = tuple([0] * (r - 1) + [1])
        return CellSpectrum(cat, cells)
    raise UnknownKind(f"no built-in spectrum named {kind!r}")


def formula_value(spectrum: CellSpectrum, vals: Mapping[str, Fraction]) -> Fraction:
    """sum_n (-1)^n sum_{n-cells at i} vals(i)  =  sum_i q^i vals(i)."""
    total = Fraction(0)
    for i in spectrum.objects_with_cells():
        if i not in vals:
            raise MissingValue(f"no value supplied at {i!r}")
        total += spectrum.alternating_sum(i) * Fraction(vals[i])
    return total


# -- the homotopy colimit formula, executably ----------------------------------


def chi2_of(cat: FinCat) -> Fraction:
    """L2-Euler characteristic in the computable regimes.

    Dispatches: groupoid cardinality for groupoids, path counting for
    scwols, and the free-EI path sum otherwise.
    """
    report = classify(cat)
    if report.is_groupoid:
        return groupoid_chi2(cat)
    if report.is_scwol:
        return Fraction(chi_scwol(cat))
    return chi2_free_EI(cat)


def _invariant_fn(invariant: str):
    if invariant == "chiL":
        return chi_L
    if invariant == "chi2":
        return chi2_of
    if invariant == "chi_scwol":
        return lambda cat: Fraction(chi_scwol(cat))
    raise EulcatError(f"unknown invariant {invariant!r}; pick one of {INVARIANTS}")


@dataclass(frozen=True)
class FormulaReport:
    invariant: str
    lhs: Fraction
    rhs: Fraction
    vertex_values: Mapping[str, Fraction]
    equal: bool


def check_hocolim_formula(
    d: Diagram,
    invariant: str = "chiL",
    spectrum: Optional[CellSpectrum] = None,
) -> FormulaReport:
    """Compare invariant(hocolim) with the cell-model formula, exactly.

    LHS: the invariant of the Grothendieck construction, computed directly.
    RHS: formula_value over the bar spectrum of the index (which must then
    be a finite scwol) or over an explicitly supplied, verified spectrum.
    """
    fn = _invariant_fn(invariant)
    if isinstance(d, PseudoDiagram):
        total_cat = grothendieck_pseudo(d)
    else:
        total_cat = grothendieck(d).category
    lhs = Fraction(fn(total_cat))

    spec = spectrum if spectrum is not None else bar_spectrum(d.index)
    vals = {}
    for i in spec.objects_with_cells():
        if i not in d.vertex:
            raise MissingValue(f"spectrum object {i!r} is not an index object")
        vals[i] = Fraction(fn(d.vertex[i]))
    rhs = formula_value(spec, vals)
    return FormulaReport(invariant, lhs, rhs, vals, lhs == rhs)


def homotopy_orbit_chi(chi_bg, vertex: FinCat, invariant: str = "chiL") -> Fraction:
    """Invariant of the homotopy orbit of a group action on a category.

    Classifying spaces of nontrivial finite groups admit no finite cell
    model, so ``chi_bg`` (the Euler characteristic of the acting group's
    classifying space) is taken on trust from the caller; the result
    chi_bg * invariant(vertex) is reported without independent verification.
    """
    return Fraction(chi_bg) * Fraction(_invariant_fn(invariant)(vertex))


def constant_diagram(index: FinCat, cat: FinCat) -> StrictDiagram:
    ident = CatFunctor.identity_functor(cat)
    return StrictDiagram(
        index,
        {i: cat for i in index.objects},
        {m.name: ident for m in index.morphisms},
    )


def trivial_diagram(index: FinCat) -> StrictDiagram:
    from .zoo import terminal_category

    return constant_diagram(index, terminal_category())


def set_diagram(index: FinCat, sets: Mapping[str, Sequence[str]],
                maps: Mapping[str, Mapping[str, str]]) -> StrictDiagram:
    """Diagram of sets encoded as a diagram of discrete categories.

    ``maps[u]`` sends elements of sets[source(u)] to sets[target(u)]; maps
    for identities may be omitted.
    """
    from .zoo import discrete_category

    vertex = {i: discrete_category(sets[i], name=f"set[{i}]") for i in index.objects}
    edge = {}
    for m in index.morphisms:
        if index.is_identity(m.name) and m.name not in maps:
            edge[m.name] = CatFunctor.identity_functor(vertex[m.source])
            continue
        fn = maps[m.name]
        src, tgt = vertex[m.source], vertex[m.target]
        edge[m.name] = CatFunctor(
            src,
            tgt,
            {x: fn[x] for x in src.objects},
            {src.identity[x]: tgt.identity[fn[x]] for x in src.objects},
        )
    return StrictDiagram(index, vertex, edge)
