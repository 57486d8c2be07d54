"""Worked examples shared by the test suite and the CLI fixtures.

Everything here is a small exact object: quadratic and cubic field
extensions, regular self-extensions of a Hopf algebra, trivial-coaction
counterexamples, and the relative Hopf modules used to exercise the
compatibility checks.
"""

from __future__ import annotations

from .exact_linear import Field, Mat, QQ, Subspace, flip, permute_legs
from .hopf_core import (
    AlgebraData,
    Group,
    HopfData,
    HopfMap,
    build_dual_group_algebra,
    build_group_algebra,
    counit_map,
    group_algebra_map,
    sweedler_h4,
    tensor_names,
    unit_map,
    with_antipode_inverse,
)
from .comodule import ComoduleAlgebra, Extension, RelativeHopfModule, change_basis
from .extension import ExtensionMorphism, identity_cover


def quadratic_field_algebra(d: int, field: Field = QQ, names=("1", "s")) -> AlgebraData:
    """k[s]/(s^2 - d) with basis {1, s}."""
    mult = Mat.from_rows(
        field,
        [
            [1, 0, 0, d],
            [0, 1, 1, 0],
        ],
    )
    unit = Mat.basis_vector(field, 2, 0)
    return AlgebraData(field, 2, list(names), mult, unit)


def q_sqrt2_extension() -> Extension:
    """Q(sqrt 2) over Q as a Q^{Z/2}-comodule algebra.

    The nontrivial group element acts by s |-> -s; the coaction dual to the
    action is a |-> sum_g g(a) (x) delta_g.
    """
    a = quadratic_field_algebra(2)
    h = build_dual_group_algebra(Group.cyclic(2))
    # rho(1) = 1 (x) (d_e + d_g), rho(s) = s (x) (d_e - d_g)
    rho = Mat.from_rows(
        QQ,
        [
            [1, 0],
            [1, 0],
            [0, 1],
            [0, -1],
        ],
    )
    c = ComoduleAlgebra(a, h, coaction=rho)
    base = Subspace.from_spanning_columns(QQ, 2, [Mat.basis_vector(QQ, 2, 0)])
    return Extension(c, base)


def cubic_radical_algebra(field: Field = QQ) -> AlgebraData:
    """k[s]/(s^3 - 2) with basis {1, s, s^2}."""
    mult = Mat.zeros(field, 3, 9)
    vals = {
        (0, 0): (0, 1),
        (0, 1): (1, 1),
        (0, 2): (2, 1),
        (1, 0): (1, 1),
        (1, 1): (2, 1),
        (1, 2): (0, 2),
        (2, 0): (2, 1),
        (2, 1): (0, 2),
        (2, 2): (1, 2),
    }
    for (i, j), (k, v) in vals.items():
        mult._rows[k][i * 3 + j] = field.of(v)
    unit = Mat.basis_vector(field, 3, 0)
    return AlgebraData(field, 3, ["1", "s", "s2"], mult, unit)


def q_cbrt2_extension() -> Extension:
    """Q(cbrt 2) over Q with Q^{Z/3}: the classical non-Galois control.

    The only algebra action of Z/3 on this field is trivial (it has no
    automorphism of order three), so the only available coaction is
    a |-> a (x) 1. The coinvariants are then all of A, not Q.
    """
    a = cubic_radical_algebra()
    h = build_dual_group_algebra(Group.cyclic(3))
    rho = Mat.identity(QQ, 3).kron(h.unit)
    c = ComoduleAlgebra(a, h, coaction=rho)
    base = Subspace.from_spanning_columns(QQ, 3, [Mat.basis_vector(QQ, 3, 0)])
    return Extension(c, base)


def trivial_coaction_extension(algebra: AlgebraData | None = None, hopf: HopfData | None = None) -> Extension:
    """A counterexample: trivial coaction with a declared base of scalars."""
    if algebra is None:
        algebra = quadratic_field_algebra(2)
    if hopf is None:
        hopf = build_dual_group_algebra(Group.cyclic(2), algebra.field)
    rho = Mat.identity(algebra.field, algebra.dim).kron(hopf.unit)
    c = ComoduleAlgebra(algebra, hopf, coaction=rho)
    base = Subspace.from_spanning_columns(
        algebra.field, algebra.dim, [algebra.unit]
    )
    return Extension(c, base)


def regular_extension(h: HopfData) -> Extension:
    """A = H with the regular coaction Delta; base is the scalars."""
    c = ComoduleAlgebra(h.algebra, h, coaction=h.comult)
    base = Subspace.from_spanning_columns(h.field, h.dim, [h.unit])
    return Extension(c, base)


def module_self(c: ComoduleAlgebra) -> RelativeHopfModule:
    """M = A with right multiplication and the coaction itself."""
    c = c.materialize()
    return RelativeHopfModule(
        c, c.dim, c.algebra.mult, c.coaction, names=c.basis_names
    )


def module_diagonal(c: ComoduleAlgebra) -> RelativeHopfModule:
    """M = H (x) A: action on the A leg, diagonal coaction.

    delta(h (x) a) = (h_(1) (x) a_(0)) (x) h_(2) a_(1), realized as
    Delta (x) rho, a middle flip, then multiplication of the two H legs.
    """
    c = c.materialize()
    h, a = c.hopf, c.algebra
    field = c.field
    dh, da = h.dim, a.dim
    dm = dh * da
    action = Mat.identity(field, dh).kron(a.mult)
    spread = h.comult.kron(c.coaction)  # legs (h1, h2, a0, a1) sized [dh,dh,da,dh]
    merge = Mat.identity(field, dm).kron(h.mult)
    coaction = merge.mul(permute_legs(spread, [dh, dh, da, dh], [0, 2, 1, 3]))
    names = [f"({hn},{an})" for hn in h.basis_names for an in a.basis_names]
    return RelativeHopfModule(c, dm, action, coaction, names=names)


def tensor_square_algebra(h: HopfData) -> AlgebraData:
    """H (x) H with the componentwise product."""
    d = h.dim
    field = h.field
    mult = permute_legs(
        h.mult.kron(h.mult).transpose(), [d, d, d, d], [0, 2, 1, 3]
    ).transpose()
    unit = h.unit.kron(h.unit)
    names = tensor_names(h.basis_names, h.basis_names)
    return AlgebraData(field, d * d, names, mult, unit)


def self_galois_morphism(h: HopfData) -> ExtensionMorphism:
    """The regular extension mapped into H (x) H coacting on its right leg.

    chi is the identity and alpha the comultiplication; the declared target
    base H (x) 1 pairs off with the distributive law's closed form, the
    braiding a (x) b' |-> a_(1) b' S(a_(2)) (x) a_(3).
    """
    h = with_antipode_inverse(h)
    src = regular_extension(h)
    d = h.dim
    field = h.field
    alg2 = tensor_square_algebra(h)
    rho2 = Mat.identity(field, d).kron(h.comult)
    c2 = ComoduleAlgebra(alg2, h, coaction=rho2)
    base_cols = [
        Mat.basis_vector(field, d, j).kron(h.unit) for j in range(d)
    ]
    base2 = Subspace.from_spanning_columns(field, d * d, base_cols)
    tgt = Extension(c2, base2)
    return ExtensionMorphism(HopfMap.identity(h), h.comult, src, tgt)


def yd_phi_expected(h: HopfData) -> Mat:
    """a (x) b' |-> a_(1) b' S(a_(2)) (x) a_(3) on H (x) H, as one matrix."""
    d = h.dim
    field = h.field
    eye = Mat.identity
    triple = h.comult.kron(eye(field, d)).mul(h.comult)  # (a1, a2, a3)
    chain = triple.kron(eye(field, d))  # (a1, a2, a3, b')
    chain = permute_legs(chain, [d, d, d, d], [0, 3, 1, 2])  # (a1, b', a2, a3)
    chain = eye(field, d * d).kron(h.antipode).kron(eye(field, d)).mul(chain)
    chain = h.mult.kron(eye(field, d * d)).mul(chain)  # (a1 b', S(a2), a3)
    return h.mult.kron(eye(field, d)).mul(chain)


def cyclic_group_change(n: int, d: int) -> ExtensionMorphism:
    """Coarsen the regular extension of k[Z/n] along Z/n -> Z/d (d | n)."""
    if n % d:
        raise ValueError("d must divide n")
    gn, gd = Group.cyclic(n), Group.cyclic(d)
    hn = build_group_algebra(gn)
    chi = group_algebra_map(gn, gd, [k % d for k in range(n)])
    src = regular_extension(hn)
    rho2 = Mat.identity(QQ, n).kron(chi.matrix).mul(hn.comult)
    c2 = ComoduleAlgebra(hn.algebra, chi.target, coaction=rho2)
    tgt = Extension(c2)  # base defaults to the coinvariants span{g^k : d | k}
    return ExtensionMorphism(chi, Mat.identity(QQ, n), src, tgt)


def to_trivial_morphism(e: Extension) -> ExtensionMorphism:
    """Collapse the structure Hopf algebra of an extension with the counit.

    The target is the underlying algebra as a cover of itself.
    """
    e = e.materialize()
    tgt = identity_cover(e.algebra)
    return ExtensionMorphism(
        counit_map(e.hopf), Mat.identity(e.field, e.dim), e, tgt
    )


def base_to_cover_morphism(e: Extension) -> ExtensionMorphism:
    """The inclusion of the base, from the identity cover of B into (H, A).

    Cartesian exactly when B exhausts the coinvariants of A.
    """
    e = e.materialize()
    src = identity_cover(e.base_algebra())
    return ExtensionMorphism(unit_map(e.hopf), e.inclusion, src, e)


def iso_morphism(e: Extension, p: Mat) -> ExtensionMorphism:
    """Transport along an invertible change of basis, as a morphism."""
    e = e.materialize()
    return ExtensionMorphism(
        HopfMap.identity(e.hopf), p, e, change_basis(e, p)
    )


GALOIS_HOPF_EXAMPLES = [
    ("QZ2", lambda: build_group_algebra(Group.cyclic(2))),
    ("QZ4", lambda: build_group_algebra(Group.cyclic(4))),
    ("sweedler", lambda: sweedler_h4()),
]
