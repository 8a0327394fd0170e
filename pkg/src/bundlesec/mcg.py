"""Homology-level mapping-class computations on the genus-3 double.

The surface is the boundary of (4-holed sphere) x [0,1]: two copies of the
holed sphere glued along the four boundary circles, a closed orientable
surface of genus 3.  H_1 carries the intersection pairing; Dehn twists act
by transvections.  Everything here happens in H_1 = Z^6, which is all the
splitting criterion for the associated Jacobian bundle needs.

Coordinate conventions.  Basis (b1, b2, b3, a1, a2, a3): b_i is the class of
the i-th glued boundary circle, a_i the class of a loop crossing that circle
once (through one hole and back around the double).  The curve constants
below are derived from an explicit triangulated model of the double; the
test suite rebuilds that model from scratch and recomputes every vector and
the pairing matrix, so none of the constants is taken on trust.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .zlinalg import AbelianGroup, IntMatrix
from .extensions import coinvariants

RANK = 6

_I3 = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
_Z3 = [[0, 0, 0] for _ in range(3)]

#: Intersection form on H_1 in the (b1,b2,b3,a1,a2,a3) basis: <a_i, b_i> = 1.
PAIRING = IntMatrix.from_rows(
    [row_z + [-v for v in row_i] for row_z, row_i in zip(_Z3, _I3)]
    + [row_i + row_z for row_i, row_z in zip(_I3, _Z3)]
)


def pairing(v: Sequence[int], w: Sequence[int]) -> int:
    """Algebraic intersection number <v, w>."""
    jw = PAIRING.apply(tuple(w))
    return sum(vi * ji for vi, ji in zip(v, jw))


@dataclass(frozen=True)
class SymplecticSpace:
    rank: int
    form: IntMatrix

    def __post_init__(self) -> None:
        if self.form.rows != self.rank or self.form.cols != self.rank:
            raise ValueError("form size does not match rank")
        if self.form.transpose() != IntMatrix.from_rows(
            [[-e for e in row] for row in self.form.data]
        ):
            raise ValueError("form is not skew-symmetric")
        if self.form.determinant() not in (1, -1):
            raise ValueError("form is not unimodular")


@dataclass(frozen=True)
class CurveClass:
    name: str
    vector: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vector) != RANK:
            raise ValueError("curve class must live in Z^6")
        if pairing(self.vector, self.vector) != 0:
            raise ValueError("self-intersection must vanish")


@dataclass(frozen=True)
class MappingClass:
    """An automorphism of H_1 scaling the intersection form by a sign.

    Orientation-preserving classes are symplectic (sign +1); the reflection
    across the gluing circles reverses the form (sign -1).
    """

    matrix: IntMatrix

    def __post_init__(self) -> None:
        got = self.matrix.transpose() @ PAIRING @ self.matrix
        minus = IntMatrix.from_rows([[-e for e in row] for row in PAIRING.data])
        if got != PAIRING and got != minus:
            raise ValueError("matrix does not scale the intersection form by +-1")

    @property
    def sign(self) -> int:
        return 1 if self.matrix.transpose() @ PAIRING @ self.matrix == PAIRING else -1

    @staticmethod
    def identity() -> "MappingClass":
        return MappingClass(IntMatrix.identity(RANK))

    def __matmul__(self, other: "MappingClass") -> "MappingClass":
        return MappingClass(self.matrix @ other.matrix)

    def inverse(self) -> "MappingClass":
        return MappingClass(self.matrix.inverse_unimodular())

    def apply(self, v: Sequence[int]) -> Tuple[int, ...]:
        return self.matrix.apply(tuple(v))

    def is_identity(self) -> bool:
        return self.matrix.is_identity()


def commutator_class(p: MappingClass, q: MappingClass) -> MappingClass:
    return p @ q @ p.inverse() @ q.inverse()


# --- the curve dictionary ----------------------------------------------------

_B1 = (1, 0, 0, 0, 0, 0)
_B2 = (0, 1, 0, 0, 0, 0)
_B3 = (0, 0, 1, 0, 0, 0)
_B4 = (-1, -1, -1, 0, 0, 0)


def _add(*vs: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(sum(col) for col in zip(*vs))


def _neg(v: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(-e for e in v)


#: Homology classes of the named curves.  x0, y0, z0 are the lantern curves
#: on the 0-side copy of the holed sphere: x0 encircles holes 1 and 2, y0
#: holes 2 and 3, z0 holes 1 and 3.  d_i0 and d_i1 are parallel to the i-th
#: boundary circle on either side.  The mirror classes x1, y1, z1 are the
#: images under the side swap, which acts as -1 on homology.
CURVE_VECTORS: Dict[str, Tuple[int, ...]] = {
    "b1": _B1,
    "b2": _B2,
    "b3": _B3,
    "b4": _B4,
    "d10": _B1, "d20": _B2, "d30": _B3, "d40": _B4,
    "d11": _B1, "d21": _B2, "d31": _B3, "d41": _B4,
    "x0": _add(_B1, _B2),
    "y0": _add(_B2, _B3),
    "z0": _add(_B1, _B3),
    "x1": _neg(_add(_B1, _B2)),
    "y1": _neg(_add(_B2, _B3)),
    "z1": _neg(_add(_B1, _B3)),
}


def build_double_model() -> Tuple[SymplecticSpace, Dict[str, CurveClass]]:
    space = SymplecticSpace(RANK, PAIRING)
    curves = {name: CurveClass(name, vec) for name, vec in CURVE_VECTORS.items()}
    return space, curves


def transvection(c: CurveClass) -> MappingClass:
    """Homology action of the left Dehn twist about c: v -> v + <v,c> c."""
    cols = []
    for j in range(RANK):
        e = tuple(1 if i == j else 0 for i in range(RANK))
        coeff = pairing(e, c.vector)
        cols.append(tuple(ei + coeff * ci for ei, ci in zip(e, c.vector)))
    return MappingClass(IntMatrix.from_columns(cols, rows=RANK))


def hyperelliptic() -> MappingClass:
    """The hyperelliptic involution swapping the two sides: -1 on H_1."""
    return MappingClass(IntMatrix.from_rows(
        [[-1 if i == j else 0 for j in range(RANK)] for i in range(RANK)]
    ))


def reflection() -> MappingClass:
    """Reflection across the gluing circles: fixes the b_i, negates the a_i."""
    diag = [1, 1, 1, -1, -1, -1]
    return MappingClass(IntMatrix.from_rows(
        [[diag[i] if i == j else 0 for j in range(RANK)] for i in range(RANK)]
    ))


def lantern_check(curves: Mapping[str, CurveClass] = None) -> bool:
    """The lantern relation on homology:
    t_x0 t_y0 t_z0 = t_d10 t_d20 t_d30 t_d40 as automorphisms of H_1."""
    if curves is None:
        curves = build_double_model()[1]
    lhs = MappingClass.identity()
    for name in ("x0", "y0", "z0"):
        lhs = lhs @ transvection(curves[name])
    rhs = MappingClass.identity()
    for name in ("d10", "d20", "d30", "d40"):
        rhs = rhs @ transvection(curves[name])
    return lhs.matrix == rhs.matrix


@dataclass(frozen=True)
class EndoData:
    """Monodromy of the genus-3 example: images of the six standard base
    generators, and the obstruction class g = [b1]."""

    matrices: Tuple[MappingClass, ...]
    g_class: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.matrices) != 6:
            raise ValueError("expected six monodromy matrices")


def endo_monodromy() -> EndoData:
    """The six generator images: t_x0, t_y0 t_z0 f, t_y0, t_z0 f, t_z0, f t_y0."""
    _, curves = build_double_model()
    tx = transvection(curves["x0"])
    ty = transvection(curves["y0"])
    tz = transvection(curves["z0"])
    f = hyperelliptic()
    mats = (tx, ty @ tz @ f, ty, tz @ f, tz, f @ ty)
    return EndoData(mats, curves["b1"].vector)


def endo_relation_check(data: EndoData) -> bool:
    """The product [m1,m2][m3,m4][m5,m6] must be the identity on H_1:
    it represents an inner automorphism of the fibre group."""
    total = MappingClass.identity()
    for i in range(0, 6, 2):
        total = total @ commutator_class(data.matrices[i], data.matrices[i + 1])
    return total.is_identity()


def jacobian_obstruction(
    monodromy: Iterable[MappingClass], g_class: Sequence[int]
) -> Tuple[AbelianGroup, Tuple[int, ...]]:
    """Coinvariants of H_1 under the monodromy group, and the class of g.

    The Jacobian bundle splits over the abelianized fibre if and only if the
    class of g vanishes here; a nonzero class rules out a section of the
    surface bundle itself.
    """
    group = coinvariants(RANK, [m.matrix for m in monodromy])
    return group, group.project(tuple(g_class))


def endo_verdict() -> Tuple[AbelianGroup, Tuple[int, ...], str]:
    """Run the full genus-3 example: the monodromy image is generated by
    t_x0, t_y0, t_z0 and the hyperelliptic involution."""
    _, curves = build_double_model()
    gens = [
        transvection(curves["x0"]),
        transvection(curves["y0"]),
        transvection(curves["z0"]),
        hyperelliptic(),
    ]
    group, coords = jacobian_obstruction(gens, curves["b1"].vector)
    verdict = "SPLITS" if all(c == 0 for c in coords) else "NO_SECTION"
    return group, coords, verdict


def kb_base_variant() -> Tuple[AbelianGroup, Tuple[int, ...], str]:
    """The variant over the Klein bottle: monodromy generated by
    t_x0 t_y0 t_z0 and the reflection across the gluing circles."""
    _, curves = build_double_model()
    product = (
        transvection(curves["x0"])
        @ transvection(curves["y0"])
        @ transvection(curves["z0"])
    )
    gens = [product, reflection()]
    group, coords = jacobian_obstruction(gens, curves["b1"].vector)
    verdict = "SPLITS" if all(c == 0 for c in coords) else "NO_SECTION"
    return group, coords, verdict


def torus_pullback_info() -> Tuple[AbelianGroup, Tuple[int, ...]]:
    """Pulling the Klein-bottle variant back to the orientation torus cover
    leaves cyclic monodromy.  On H_1 that generator is trivial, so the
    homology criterion sees no obstruction; this is informational only — a
    zero class here does not by itself produce a section.
    """
    _, curves = build_double_model()
    product = (
        transvection(curves["x0"])
        @ transvection(curves["y0"])
        @ transvection(curves["z0"])
    )
    rho = reflection()
    generator = product @ rho @ product @ rho.inverse()
    return jacobian_obstruction([generator], curves["b1"].vector)
