"""Splitting verdicts for group extensions of surface groups by flat-fibre
groups: the relator obstruction, its quotient, the abelianization test, and
the degree-1/degree-2 cohomology of the base.

A bundle is described by an affine representation of the free group on the
base generators (the set-theoretic lifts), plus one fibre offset per base
relator: the presented extension is (fibre x| F(X)) / << r . offset^-1 >>.
The obstruction s(r) is the fibre value of the relator word under the lifts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .groupring import (
    AffineRep,
    KbAut,
    KbElement,
    LinearRep,
    evaluate_linear,
    fox_derivative,
    kb_center_component,
    kb_inverse,
    kb_multiply,
)
from .words import Presentation, Word, abelianization, exponent_sum
from .zlinalg import (
    AbelianGroup,
    IntMatrix,
    Vector,
    cokernel,
    direct_sum,
    kernel_basis,
    solve,
)

VERDICT_SPLITS = "SPLITS"
VERDICT_NO_SECTION = "NO_SECTION"
VERDICT_NO_SPLITTING = "NO_SPLITTING"
VERDICT_ACTION_DOES_NOT_LIFT = "ACTION_DOES_NOT_LIFT"


class MalformedSpec(ValueError):
    """Raised when bundle data is structurally invalid."""


def _zero(n: int) -> Vector:
    return tuple(0 for _ in range(n))


@dataclass(frozen=True)
class TorusBundleSpec:
    """A Z^m-fibre bundle datum over a presented base."""

    base: Presentation
    fibre_rank: int
    action_cocycle: AffineRep
    relator_offsets: Tuple[Vector, ...] = ()

    def __post_init__(self) -> None:
        if not self.base.relators:
            raise MalformedSpec("base presentation needs at least one relator")
        if self.action_cocycle.dim != self.fibre_rank:
            raise MalformedSpec("affine data does not match the fibre rank")
        for g in self.base.generators:
            if g not in self.action_cocycle.assignment:
                raise MalformedSpec(f"no affine pair for base generator {g!r}")
        offs = self.relator_offsets or tuple(_zero(self.fibre_rank) for _ in self.base.relators)
        if len(offs) != len(self.base.relators):
            raise MalformedSpec("need one fibre offset per base relator")
        for v in offs:
            if len(v) != self.fibre_rank:
                raise MalformedSpec("offset has wrong fibre dimension")
        object.__setattr__(self, "relator_offsets", tuple(tuple(v) for v in offs))


@dataclass(frozen=True)
class KbBundleSpec:
    """A Klein-bottle-fibre bundle datum over a presented base."""

    base: Presentation
    action_cocycle: Mapping[str, Tuple[KbAut, KbElement]]
    relator_offsets: Tuple[KbElement, ...] = ()

    def __post_init__(self) -> None:
        if not self.base.relators:
            raise MalformedSpec("base presentation needs at least one relator")
        for g in self.base.generators:
            if g not in self.action_cocycle:
                raise MalformedSpec(f"no Klein-bottle pair for base generator {g!r}")
        offs = self.relator_offsets or tuple(KbElement.identity() for _ in self.base.relators)
        if len(offs) != len(self.base.relators):
            raise MalformedSpec("need one fibre offset per base relator")
        object.__setattr__(self, "relator_offsets", tuple(offs))


@dataclass(frozen=True)
class ObstructionReport:
    lifted: bool
    s_of_r: Tuple[Vector, ...]
    jw_generators: Tuple[Vector, ...]
    quotient: AbelianGroup
    class_coordinates: Tuple[Vector, ...]
    verdict: str
    nonstandard_quotient: bool = False

    def to_json_dict(self) -> dict:
        return {
            "lifted": self.lifted,
            "s_of_r": [list(v) for v in self.s_of_r],
            "jw": [list(v) for v in self.jw_generators],
            "quotient": str(self.quotient),
            "class": [list(v) for v in self.class_coordinates],
            "verdict": self.verdict,
        }


def s_of_r(spec: TorusBundleSpec, relator_index: int = 0) -> Tuple[IntMatrix, Vector]:
    """Full affine value of a base relator under the lifts, offset included.

    The matrix part must be the identity for the action to lift; the vector
    part is then the obstruction element in the fibre.
    """
    from .groupring import evaluate_affine, affine_multiply

    r = spec.base.relators[relator_index]
    m, t = evaluate_affine(r, spec.action_cocycle)
    g = spec.relator_offsets[relator_index]
    return affine_multiply((m, t), (IntMatrix.identity(spec.fibre_rank), g))


def jw_submodule(spec: TorusBundleSpec) -> Tuple[Vector, ...]:
    """Generators of J_w . fibre: theta(d r / d x) applied to basis vectors."""
    rep = spec.action_cocycle.linear_part()
    gens: List[Vector] = []
    basis = [tuple(1 if i == j else 0 for j in range(spec.fibre_rank))
             for i in range(spec.fibre_rank)]
    for r in spec.base.relators:
        for x in spec.base.generators:
            m = evaluate_linear(fox_derivative(r, x), rep)
            for e in basis:
                gens.append(m.apply(e))
    return tuple(gens)


def _kb_zeta_rep(spec: KbBundleSpec) -> LinearRep:
    """The induced +-1 action on the centre of the Klein-bottle group."""
    return LinearRep(
        {g: IntMatrix.from_rows([[aut.center_action()]])
         for g, (aut, _) in spec.action_cocycle.items()},
        1,
    )


def _kb_evaluate(spec: KbBundleSpec, w: Word) -> Tuple[KbElement, KbAut]:
    """Value of a base word under the lifts in fibre x| Aut(fibre)."""
    elem = KbElement.identity()
    aut = KbAut.identity()
    for g, s in w.letters:
        a, k = spec.action_cocycle[g]
        if s == -1:
            a = a.inverse()
            k = kb_inverse(a.apply(k))
        elem = kb_multiply(elem, aut.apply(k))
        aut = aut.compose(a)
    return elem, aut


def obstruction_class(spec) -> ObstructionReport:
    if isinstance(spec, TorusBundleSpec):
        return _torus_obstruction(spec)
    if isinstance(spec, KbBundleSpec):
        return _kb_obstruction(spec)
    raise MalformedSpec(f"unsupported bundle spec {type(spec).__name__}")


def _torus_obstruction(spec: TorusBundleSpec) -> ObstructionReport:
    values = [s_of_r(spec, i) for i in range(len(spec.base.relators))]
    lifted = all(m.is_identity() for m, _ in values)
    svecs = tuple(t for _, t in values)
    jw = jw_submodule(spec)
    quotient = cokernel(IntMatrix.from_columns(list(jw), rows=spec.fibre_rank))
    coords = tuple(quotient.project(v) for v in svecs)
    nonstandard = len(spec.base.relators) > 1
    nonzero_fibre = spec.fibre_rank == 2
    if not lifted:
        verdict = VERDICT_ACTION_DOES_NOT_LIFT
    elif all(all(c == 0 for c in cs) for cs in coords):
        verdict = VERDICT_SPLITS
    else:
        verdict = VERDICT_NO_SECTION if nonzero_fibre else VERDICT_NO_SPLITTING
    return ObstructionReport(lifted, svecs, jw, quotient, coords, verdict, nonstandard)


def _kb_obstruction(spec: KbBundleSpec) -> ObstructionReport:
    svals: List[KbElement] = []
    lifted = True
    for r, off in zip(spec.base.relators, spec.relator_offsets):
        elem, aut = _kb_evaluate(spec, r)
        total = kb_multiply(elem, aut.apply(off))
        if aut != KbAut.identity() or not total.is_central():
            lifted = False
        svals.append(total)
    zeta = _kb_zeta_rep(spec)
    jw: List[Vector] = []
    for r in spec.base.relators:
        for x in spec.base.generators:
            m = evaluate_linear(fox_derivative(r, x), zeta)
            jw.append((m.data[0][0],))
    quotient = cokernel(IntMatrix.from_columns(jw, rows=1))
    if lifted:
        svecs = tuple((kb_center_component(v),) for v in svals)
        coords = tuple(quotient.project(v) for v in svecs)
    else:
        svecs = tuple((v.a, v.b) for v in svals)
        coords = ()
    nonstandard = len(spec.base.relators) > 1
    if not lifted:
        verdict = VERDICT_ACTION_DOES_NOT_LIFT
    elif all(all(c == 0 for c in cs) for cs in coords):
        verdict = VERDICT_SPLITS
    else:
        verdict = VERDICT_NO_SECTION
    return ObstructionReport(lifted, svecs, tuple(jw), quotient, coords, verdict, nonstandard)


def coinvariants(fibre_rank: int, mats: Sequence[IntMatrix]) -> AbelianGroup:
    """Largest quotient of Z^rank on which all the matrices act trivially."""
    cols: List[Vector] = []
    eye = IntMatrix.identity(fibre_rank)
    for m in mats:
        if m.rows != fibre_rank or m.cols != fibre_rank:
            raise ValueError("matrix size does not match the fibre rank")
        diff = m - eye
        cols.extend(diff.columns())
    return cokernel(IntMatrix.from_columns(cols, rows=fibre_rank))


@dataclass(frozen=True)
class Lemma2Report:
    is_isomorphic: bool
    group_ab: AbelianGroup
    fibre_coinvariants: AbelianGroup
    base_ab: AbelianGroup
    expected: AbelianGroup


def lemma2_check(
    pi: Presentation,
    fibre_gens: Sequence[str],
    base: Presentation,
    action: LinearRep,
) -> Lemma2Report:
    """Abelianization splitting test: compare the abelianization of the whole
    group with (fibre coinvariants) + (base abelianization).

    The fibre coinvariants are computed from the relators of pi supported on
    the fibre generators together with the (theta(x) - I) columns.
    """
    fibre_gens = list(fibre_gens)
    for g in fibre_gens:
        if g not in pi.generators:
            raise ValueError(f"fibre generator {g!r} is not a generator of the group")
    k = len(fibre_gens)
    if action.dim != k:
        raise ValueError("action dimension must equal the number of fibre generators")

    group_ab = abelianization(pi)

    fibre_set = set(fibre_gens)
    cols: List[Vector] = []
    for r in pi.relators:
        used = set(g for g, _ in r.letters)
        if used and used <= fibre_set:
            cols.append(tuple(exponent_sum(r, g) for g in fibre_gens))
    eye = IntMatrix.identity(k)
    for x in base.generators:
        diff = action.matrix(x) - eye
        cols.extend(diff.columns())
    fibre_coinv = cokernel(IntMatrix.from_columns(cols, rows=k))

    base_ab = abelianization(base)
    expected = direct_sum(fibre_coinv, base_ab)
    ok = group_ab.invariant_factors == expected.invariant_factors
    return Lemma2Report(ok, group_ab, fibre_coinv, base_ab, expected)


def h1_h2_base(base: Presentation, module: LinearRep) -> Tuple[AbelianGroup, AbelianGroup]:
    """H^1 and H^2 of the base with coefficients in the given Z^m module,
    from the presentation cochain complex.

    delta1 : A -> A^X,  a |-> ((theta(x) - I) a)_x
    delta2 : A^X -> A^R, (a_x) |-> (sum_x theta(d r / d x) a_x)_r
    """
    m = module.dim
    gens = base.generators
    rels = base.relators
    eye = IntMatrix.identity(m)

    # delta2 as a block matrix (m|R| x m|X|)
    blocks = [[evaluate_linear(fox_derivative(r, x), module) for x in gens] for r in rels]
    d2_rows: List[Tuple[int, ...]] = []
    for bi, row_blocks in enumerate(blocks):
        for i in range(m):
            row: List[int] = []
            for blk in row_blocks:
                row.extend(blk.data[i])
            d2_rows.append(tuple(row))
    d2 = IntMatrix(m * len(rels), m * len(gens), tuple(d2_rows))

    # delta1 columns: one per fibre basis vector
    d1_cols: List[Vector] = []
    for j in range(m):
        e = tuple(1 if i == j else 0 for i in range(m))
        col: List[int] = []
        for x in gens:
            col.extend((module.matrix(x) - eye).apply(e))
        d1_cols.append(tuple(col))

    for r in rels:
        if not module.evaluate_word(r).is_identity():
            raise ValueError(f"module matrices do not kill the relator {r}")

    kb = kernel_basis(d2)
    kmat = IntMatrix.from_columns(list(kb), rows=m * len(gens))
    coeff_cols: List[Vector] = []
    for col in d1_cols:
        x = solve(kmat, col)
        if x is None:
            raise AssertionError("image of delta1 fell outside the kernel of delta2")
        coeff_cols.append(x)
    h1 = cokernel(IntMatrix.from_columns(coeff_cols, rows=len(kb)))
    h2 = cokernel(d2)
    return h1, h2


def semidirect_presentation(
    base: Presentation,
    action: LinearRep,
    fibre_names: Optional[Sequence[str]] = None,
    offsets: Optional[Sequence[Vector]] = None,
) -> Presentation:
    """Present the extension (Z^m x|_theta F(X)) / << r . offset^-1 >>.

    Relators: fibre commutators, conjugation relators g f g^-1 = theta(g)(f),
    and each base relator divided by its fibre offset.
    """
    m = action.dim
    if fibre_names is None:
        fibre_names = [f"f{i}" for i in range(m)]
    fibre_names = list(fibre_names)
    if len(fibre_names) != m:
        raise ValueError("need one fibre name per fibre rank")
    if offsets is None:
        offsets = [_zero(m) for _ in base.relators]

    def fibre_word(vec: Sequence[int]) -> Word:
        out = Word.identity()
        for name, e in zip(fibre_names, vec):
            out = out * Word.gen(name, e)
        return out

    relators: List[Word] = []
    for i in range(m):
        for j in range(i + 1, m):
            relators.append(
                Word.gen(fibre_names[i]) * Word.gen(fibre_names[j])
                * Word.gen(fibre_names[i], -1) * Word.gen(fibre_names[j], -1))
    for g in base.generators:
        mat = action.matrix(g)
        for j in range(m):
            image = fibre_word(mat.column(j))
            relators.append(
                Word.gen(g) * Word.gen(fibre_names[j]) * Word.gen(g, -1) * image.inverse())
    for r, off in zip(base.relators, offsets):
        relators.append(r * fibre_word(off).inverse())

    return Presentation(tuple(base.generators) + tuple(fibre_names), tuple(relators))
