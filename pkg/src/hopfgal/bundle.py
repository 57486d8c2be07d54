"""Left comodules acting on relative Hopf modules, and cotensor bundles.

A left H-comodule V acts on the category of relative (A, H)-Hopf modules by
M <| V = M (x) V with action (m (x) v)a = ma (x) v and coaction

    (m (x) v)_(0) (x) (m (x) v)_(1) = (m_(0) (x) v_(0)) (x) S^{-1}(v_(-1)) m_(1).

For an extension B in A the associated bundle A box^H V is computed twice,
as the kernel of the cotensor constraints and as the coinvariants of A <| V,
and the two answers are asserted equal. The bundle carries both B-actions;
its right-module class is certified exactly where the base is recognizably
nice (the ground field, or commutative split semisimple), and reported as
assumed otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import itertools
import math

from .exact_linear import (
    InputError,
    InvariantViolation,
    Mat,
    PreconditionError,
    Subspace,
    is_bijective,
    inverse,
    kernel,
    permute_legs,
    solve,
)
from .hopf_core import (
    AlgebraData,
    AxiomCheck,
    GradedHopfShortcut,
    HopfData,
    antipode_inverse,
    hopf_equal,
    tensor_names,
    _check_eq,
)
from .comodule import BalancedTensor, Extension, RelativeHopfModule
from .extension import extension_equal


class LeftComodule:
    """A left H-comodule: coaction V -> H (x) V, or degrees under a grading."""

    def __init__(self, hopf, dim: int, coaction: Mat | None = None, degrees=None, names=None):
        self.hopf = hopf
        self.dim = dim
        if isinstance(hopf, GradedHopfShortcut):
            if coaction is not None or degrees is None:
                raise InputError("graded left comodule takes degrees, not a coaction matrix")
            if len(degrees) != dim:
                raise InputError("one degree per basis vector required")
            self.degrees = [hopf.grading_group.normalize(d) for d in degrees]
            self.coaction = None
        else:
            if degrees is not None or coaction is None:
                raise InputError("matrix left comodule takes a coaction, not degrees")
            if (coaction.rows, coaction.cols) != (hopf.dim * dim, dim):
                raise InputError(f"coaction must be {hopf.dim * dim}x{dim}")
            self.coaction = coaction
            self.degrees = None
        self.names = list(names) if names is not None else [f"v{i}" for i in range(dim)]

    @property
    def is_graded(self) -> bool:
        return self.degrees is not None

    def materialize(self, field=None) -> "LeftComodule":
        if not self.is_graded:
            return self
        hopf, elems = self.hopf.materialize(field) if field else self.hopf.materialize()
        index = {e: i for i, e in enumerate(elems)}
        dh = hopf.dim
        lam = Mat.zeros(hopf.field, dh * self.dim, self.dim)
        for i, deg in enumerate(self.degrees):
            lam._rows[index[deg] * self.dim + i][i] = hopf.field.one()
        return LeftComodule(hopf, self.dim, coaction=lam, names=self.names)


def check_left_comodule(v: LeftComodule) -> list[AxiomCheck]:
    if v.is_graded:
        return [AxiomCheck("left_comodule_graded", True, None)]
    h = v.hopf
    field = h.field
    eye_v = Mat.identity(field, v.dim)
    eye_h = Mat.identity(field, h.dim)
    v_names = tensor_names(v.names)
    return [
        _check_eq(
            "left_coassociative",
            h.comult.kron(eye_v).mul(v.coaction),
            eye_h.kron(v.coaction).mul(v.coaction),
            v_names,
            tensor_names(h.basis_names, h.basis_names, v.names),
        ),
        _check_eq(
            "left_counital",
            h.counit.kron(eye_v).mul(v.coaction),
            eye_v,
            v_names,
            v_names,
        ),
    ]


def trivial_left_comodule(h, dim: int = 1) -> LeftComodule:
    if isinstance(h, GradedHopfShortcut):
        return LeftComodule(h, dim, degrees=[h.grading_group.zero()] * dim)
    return LeftComodule(h, dim, coaction=h.unit.kron(Mat.identity(h.field, dim)))


def left_regular_comodule(h: HopfData) -> LeftComodule:
    return LeftComodule(h, h.dim, coaction=h.comult, names=list(h.basis_names))


def grouplike_character(h: HopfData, g: Mat) -> LeftComodule:
    """The one-dimensional comodule v |-> g (x) v of a grouplike element."""
    if (g.rows, g.cols) != (h.dim, 1):
        raise InputError("grouplike must be a column of H")
    if h.comult.mul(g) != g.kron(g) or h.counit.mul(g) != Mat.identity(h.field, 1):
        raise InputError("element is not grouplike")
    return LeftComodule(h, 1, coaction=g)


def comodule_tensor(v: LeftComodule, w: LeftComodule) -> LeftComodule:
    """V (x) W with coaction v_(-1) w_(-1) (x) (v_(0) (x) w_(0))."""
    if v.is_graded and w.is_graded:
        if v.hopf != w.hopf:
            raise InputError("graded comodules over different grading groups")
        gg = v.hopf.grading_group
        degrees = [gg.add(a, b) for a in v.degrees for b in w.degrees]
        return LeftComodule(v.hopf, v.dim * w.dim, degrees=degrees)
    fld = v.hopf.field if not v.is_graded else w.hopf.field
    v, w = v.materialize(fld), w.materialize(fld)
    if not hopf_equal(v.hopf, w.hopf):
        raise InputError("comodules over different Hopf algebras")
    h = v.hopf
    field = h.field
    dh, dv, dw = h.dim, v.dim, w.dim
    spread = permute_legs(
        v.coaction.kron(w.coaction), [dh, dv, dh, dw], [0, 2, 1, 3]
    )
    lam = h.mult.kron(Mat.identity(field, dv * dw)).mul(spread)
    names = tensor_names(v.names, w.names)
    return LeftComodule(h, dv * dw, coaction=lam, names=names)


def comodule_direct_sum(v: LeftComodule, w: LeftComodule) -> LeftComodule:
    if v.is_graded and w.is_graded:
        if v.hopf != w.hopf:
            raise InputError("graded comodules over different grading groups")
        return LeftComodule(v.hopf, v.dim + w.dim, degrees=v.degrees + w.degrees)
    fld = v.hopf.field if not v.is_graded else w.hopf.field
    v, w = v.materialize(fld), w.materialize(fld)
    if not hopf_equal(v.hopf, w.hopf):
        raise InputError("comodules over different Hopf algebras")
    h = v.hopf
    field = h.field
    total = v.dim + w.dim
    lam = Mat.zeros(field, h.dim * total, total)
    for r in range(h.dim * v.dim):
        hh, x = divmod(r, v.dim)
        for c in range(v.dim):
            val = v.coaction.entry(r, c)
            if val:
                lam._rows[hh * total + x][c] = val
    for r in range(h.dim * w.dim):
        hh, x = divmod(r, w.dim)
        for c in range(w.dim):
            val = w.coaction.entry(r, c)
            if val:
                lam._rows[hh * total + v.dim + x][v.dim + c] = val
    return LeftComodule(h, total, coaction=lam, names=v.names + w.names)


def triangle_action(m: RelativeHopfModule, v: LeftComodule) -> RelativeHopfModule:
    """M <| V, the tensor-product module with the antipode-twisted coaction."""
    c = m.base
    v = v.materialize(c.field)
    h = c.hopf
    if not hopf_equal(h, v.hopf):
        raise InputError("module and comodule have different structure Hopf algebras")
    s_inv = h.antipode_inv if h.antipode_inv is not None else antipode_inverse(h)
    if s_inv is None:
        raise PreconditionError("the action twist needs an invertible antipode")
    field = c.field
    dm, dv, dh, da = m.dim, v.dim, h.dim, c.dim
    eye_v = Mat.identity(field, dv)

    swap = permute_legs(
        Mat.identity(field, dm * dv * da), [dm, dv, da], [0, 2, 1]
    )
    action = m.action.kron(eye_v).mul(swap)

    spread = m.coaction.kron(v.coaction)  # (m0, m1, v-1, v0)
    spread = Mat.identity(field, dm * dh).kron(s_inv).kron(eye_v).mul(spread)
    spread = permute_legs(spread, [dm, dh, dh, dv], [0, 3, 2, 1])
    coaction = Mat.identity(field, dm * dv).kron(h.mult).mul(spread)

    names = [f"({mn},{vn})" for mn in m.names for vn in v.names]
    return RelativeHopfModule(c, dm * dv, action, coaction, names=names)


class AssociatedBundle:
    """A box^H V with both B-actions, realized inside A (x) V."""

    def __init__(
        self,
        extension: Extension,
        rep: LeftComodule,
        space: Subspace,
        left_action: Mat,
        right_action: Mat,
    ):
        self.extension = extension
        self.rep = rep
        self.space = space
        self.left_action = left_action
        self.right_action = right_action

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def embed(self) -> Mat:
        return self.space.mat

    @property
    def base_dim(self) -> int:
        return self.extension.base_dim

    def right_op(self, j: int) -> Mat:
        field = self.extension.field
        sel = Mat.identity(field, self.dim).kron(Mat.basis_vector(field, self.base_dim, j))
        return self.right_action.mul(sel)

    def left_op(self, j: int) -> Mat:
        field = self.extension.field
        sel = Mat.basis_vector(field, self.base_dim, j).kron(Mat.identity(field, self.dim))
        return self.left_action.mul(sel)


def cotensor_bundle(e: Extension, v: LeftComodule) -> AssociatedBundle:
    """Compute A box^H V twice and install the B-bimodule structure.

    The kernel of the cotensor constraints must coincide with the
    coinvariants of A <| V; a mismatch raises.
    """
    e = e.materialize()
    v = v.materialize(e.field)
    c = e.comodule_algebra
    if not hopf_equal(c.hopf, v.hopf):
        raise InputError("extension and comodule have different structure Hopf algebras")
    a, h = e.algebra, c.hopf
    field = e.field
    da, dv = a.dim, v.dim
    eye_a = Mat.identity(field, da)
    eye_v = Mat.identity(field, dv)

    space = kernel(c.coaction.kron(eye_v) - eye_a.kron(v.coaction))
    self_module = RelativeHopfModule(c, da, a.mult, c.coaction, names=a.basis_names)
    twisted = triangle_action(self_module, v)
    coinv = kernel(twisted.coaction - Mat.identity(field, twisted.dim).kron(h.unit))
    if space != coinv:
        raise InvariantViolation(
            "cotensor and coinvariant computations of the bundle disagree"
        )

    db = e.base_dim
    dim = space.dim
    right_ops = []
    left_ops = []
    for j, col in enumerate(e.base_basis_columns()):
        amb_r = a.right_mult(col).kron(eye_v)
        rop = solve(space.mat, amb_r.mul(space.mat))
        if rop is None:
            raise InvariantViolation("bundle is not closed under the right base action")
        right_ops.append(rop)
        amb_l = a.left_mult(col).kron(eye_v)
        lop = solve(space.mat, amb_l.mul(space.mat))
        if lop is None:
            raise InvariantViolation("bundle is not closed under the left base action")
        left_ops.append(lop)

    right_action = Mat.zeros(field, dim, dim * db)
    left_action = Mat.zeros(field, dim, db * dim)
    for j in range(db):
        for x in range(dim):
            for r in range(dim):
                val = right_ops[j].entry(r, x)
                if val:
                    right_action._rows[r][x * db + j] = val
                val = left_ops[j].entry(r, x)
                if val:
                    left_action._rows[r][j * dim + x] = val
    return AssociatedBundle(e, v, space, left_action, right_action)


def check_associated_bundle(b: AssociatedBundle) -> list[AxiomCheck]:
    e = b.extension
    field = e.field
    base = e.base_algebra()
    db, dim = base.dim, b.dim
    eye_x = Mat.identity(field, dim)
    eye_b = Mat.identity(field, db)
    x_names = [f"x{i}" for i in range(dim)]
    xb_names = tensor_names(x_names, base.basis_names)
    bx_names = tensor_names(base.basis_names, x_names)
    return [
        _check_eq(
            "right_unital",
            b.right_action.mul(eye_x.kron(base.unit)),
            eye_x,
            x_names,
            x_names,
        ),
        _check_eq(
            "right_associative",
            b.right_action.mul(b.right_action.kron(eye_b)),
            b.right_action.mul(eye_x.kron(base.mult)),
            tensor_names(x_names, base.basis_names, base.basis_names),
            x_names,
        ),
        _check_eq(
            "left_unital",
            b.left_action.mul(base.unit.kron(eye_x)),
            eye_x,
            x_names,
            x_names,
        ),
        _check_eq(
            "left_associative",
            b.left_action.mul(eye_b.kron(b.left_action)),
            b.left_action.mul(base.mult.kron(eye_x)),
            tensor_names(base.basis_names, base.basis_names, x_names),
            x_names,
        ),
        _check_eq(
            "bimodule_compatible",
            b.left_action.mul(eye_b.kron(b.right_action)),
            b.right_action.mul(b.left_action.kron(eye_b)),
            tensor_names(base.basis_names, x_names, base.basis_names),
            x_names,
        ),
    ]


@dataclass(frozen=True)
class FgpReport:
    """Right-module certificate of an associated bundle."""

    kind: str  # "field" | "semisimple" | "assumed"
    rank: int | None
    multiplicities: tuple[int, ...] | None
    note: str


def _min_poly(t: Mat) -> list:
    """Monic minimal polynomial of a square matrix, coefficients low to high."""
    field = t.field
    cols = Mat.zeros(field, t.rows * t.rows, 0)
    power = Mat.identity(field, t.rows)
    while True:
        v = Mat.column(field, power.entries())
        if cols.cols:
            sol = solve(cols, v)
            if sol is not None:
                return [-sol.entry(i, 0) for i in range(cols.cols)] + [field.one()]
        cols = cols.hstack(v)
        power = power.mul(t)


def _poly_roots(coeffs, field) -> list:
    """All roots in the field of an exactly-represented polynomial."""

    def value_at(r):
        acc = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            acc = acc * r + c
        return acc

    if field.is_rational:
        denom = 1
        for c in coeffs:
            denom = denom * Fraction(c).denominator // math.gcd(denom, Fraction(c).denominator)
        ints = [int(Fraction(c) * denom) for c in coeffs]
        while ints and ints[-1] == 0:
            ints.pop()
        candidates = set()
        if ints and ints[0] == 0:
            candidates.add(Fraction(0))
        lead = abs(ints[-1])
        const = abs(ints[0]) if ints[0] else abs(next((c for c in ints if c), 1))
        p_divs = [d for d in range(1, const + 1) if const % d == 0]
        q_divs = [d for d in range(1, lead + 1) if lead % d == 0]
        for p in p_divs:
            for q in q_divs:
                candidates.add(Fraction(p, q))
                candidates.add(Fraction(-p, q))
        return [field.of(r) for r in sorted(candidates) if value_at(field.of(r)) == field.zero()]
    return [field.of(i) for i in range(field.p) if value_at(field.of(i)) == field.zero()]


def _split_characters(base: AlgebraData) -> list[Mat] | None:
    """Joint eigen-decomposition of a commutative algebra into characters.

    Returns one row functional per one-dimensional joint eigenspace, or None
    when some generator fails to split over the field.
    """
    field = base.field
    subspaces = [Subspace.from_spanning_columns(
        field, base.dim, [Mat.basis_vector(field, base.dim, i) for i in range(base.dim)]
    )]
    for j in range(base.dim):
        op = base.right_mult(Mat.basis_vector(field, base.dim, j))
        refined = []
        for s in subspaces:
            if s.dim == 1:
                refined.append(s)
                continue
            t = solve(s.mat, op.mul(s.mat))
            if t is None:
                return None
            roots = _poly_roots(_min_poly(t), field)
            pieces = []
            for r in roots:
                eig = kernel(t - Mat.identity(field, s.dim).scale(r))
                if eig.dim:
                    cols = [s.mat.mul(c) for c in eig.basis_columns()]
                    pieces.append(Subspace.from_spanning_columns(field, base.dim, cols))
            if sum(p.dim for p in pieces) != s.dim:
                return None
            refined.extend(pieces)
        subspaces = refined
    if any(s.dim != 1 for s in subspaces):
        return None
    chars = []
    for s in subspaces:
        w = s.mat.col_vector(0)
        lead = next(i for i in range(base.dim) if w.entry(i, 0) != field.zero())
        row = []
        for j in range(base.dim):
            image = base.right_mult(Mat.basis_vector(field, base.dim, j)).mul(w)
            row.append(image.entry(lead, 0) / w.entry(lead, 0))
        chars.append(Mat.from_rows(field, [row]))
    return chars


def certify_fgp(b: AssociatedBundle) -> FgpReport:
    """Certify the right B-module class of the bundle where possible.

    Over the ground field the rank is the dimension; over a commutative base
    that splits into characters the multiplicity of each simple summand is
    the rank of the action of its idempotent. Anything else is reported as
    assumed rather than silently trusted.
    """
    base = b.extension.base_algebra()
    field = base.field
    if base.dim == 1:
        return FgpReport(
            "field", b.dim, None, "base is the ground field; the bundle is free"
        )
    if base.is_commutative():
        chars = _split_characters(base)
        if chars is not None:
            lam = chars[0]
            for row in chars[1:]:
                lam = lam.vstack(row)
            idem = inverse(lam)
            if idem is not None:
                mults = []
                for i in range(base.dim):
                    op = b.right_action.mul(
                        Mat.identity(field, b.dim).kron(idem.col_vector(i))
                    )
                    mults.append(op.rank())
                return FgpReport(
                    "semisimple",
                    None,
                    tuple(mults),
                    "split semisimple base; multiplicities of the simple summands",
                )
    return FgpReport(
        "assumed",
        None,
        None,
        "projectivity assumed from the Galois structure; base not recognized "
        "as split semisimple",
    )


def _bimodule_intertwiners(dom_ops, cod_ops, dim: int, field) -> list[Mat]:
    """Basis of maps f with f dom_op = cod_op f for every paired operator."""
    columns = []
    for i in range(dim):
        for c in range(dim):
            unit_mat = Mat.zeros(field, dim, dim)
            unit_mat._rows[i][c] = field.one()
            flat = []
            for d_op, c_op in zip(dom_ops, cod_ops):
                defect = unit_mat.mul(d_op) - c_op.mul(unit_mat)
                flat.extend(defect.entries())
            columns.append(Mat.column(field, flat))
    big = columns[0]
    for col in columns[1:]:
        big = big.hstack(col)
    mats = []
    for v in kernel(big).basis_columns():
        f = Mat.zeros(field, dim, dim)
        for i in range(dim):
            for c in range(dim):
                f._rows[i][c] = v.entry(i * dim + c, 0)
        mats.append(f)
    return mats


def _search_iso(dom_ops, cod_ops, dim: int, field, budget: int) -> Mat | None:
    mats = _bimodule_intertwiners(dom_ops, cod_ops, dim, field)
    if not mats:
        return None
    for f in mats:
        if is_bijective(f):
            return f
    values = list(range(dim + 1)) if field.is_rational else list(range(field.p))
    if len(values) ** len(mats) > budget:
        raise PreconditionError(
            f"bimodule isomorphism search needs {len(values) ** len(mats)} "
            f"grid evaluations, budget is {budget}"
        )
    for coeffs in itertools.product(values, repeat=len(mats)):
        f = Mat.zeros(field, dim, dim)
        for cf, mbasis in zip(coeffs, mats):
            if cf:
                f = f + mbasis.scale(cf)
        if is_bijective(f):
            return f
    return None


@dataclass
class BundleTensorData:
    bundle: AssociatedBundle
    quotient: BalancedTensor
    iso: Mat  # quotient -> bundle coordinates


def bundle_tensor_data(
    b1: AssociatedBundle, b2: AssociatedBundle, budget: int = 200000
) -> BundleTensorData:
    """(A box V1) (x)_B (A box V2) compared with A box (V1 (x) V2).

    The multiplication map is the canonical candidate isomorphism; when it is
    not bijective, a bounded search over the bimodule intertwiner space runs,
    and failure to find any isomorphism raises.
    """
    if b1.extension is not b2.extension and not extension_equal(
        b1.extension, b2.extension
    ):
        raise InputError("bundles live over different extensions")
    e = b1.extension
    a = e.algebra
    field = e.field
    v12 = comodule_tensor(b1.rep, b2.rep)
    b12 = cotensor_bundle(e, v12)

    right_ops = [b1.right_op(j) for j in range(e.base_dim)]
    left_ops = [b2.left_op(j) for j in range(e.base_dim)]
    qt = BalancedTensor(field, b1.dim, b2.dim, right_ops, left_ops)
    if qt.dim != b12.dim:
        raise InvariantViolation(
            f"balanced tensor has dimension {qt.dim}, cotensor bundle {b12.dim}"
        )

    dv1, dv2 = b1.rep.dim, b2.rep.dim
    raw = a.mult.kron(Mat.identity(field, dv1 * dv2)).mul(
        permute_legs(b1.embed.kron(b2.embed), [a.dim, dv1, a.dim, dv2], [0, 2, 1, 3])
    )
    cand = solve(b12.embed, qt.descend(raw))
    if cand is None:
        raise InvariantViolation("product of bundle sections leaves the cotensor bundle")
    if is_bijective(cand):
        return BundleTensorData(b12, qt, cand)

    dom_ops = []
    cod_ops = []
    for j in range(e.base_dim):
        dom_ops.append(qt.descend(qt.projector.mul(
            Mat.identity(field, b1.dim).kron(b2.right_op(j))
        )))
        cod_ops.append(b12.right_op(j))
        dom_ops.append(qt.descend(qt.projector.mul(
            b1.left_op(j).kron(Mat.identity(field, b2.dim))
        )))
        cod_ops.append(b12.left_op(j))
    iso = _search_iso(dom_ops, cod_ops, qt.dim, field, budget)
    if iso is None:
        raise InvariantViolation(
            "no bimodule isomorphism between the balanced tensor and the "
            "cotensor bundle was found"
        )
    return BundleTensorData(b12, qt, iso)


def bundle_tensor(
    b1: AssociatedBundle, b2: AssociatedBundle, budget: int = 200000
) -> AssociatedBundle:
    return bundle_tensor_data(b1, b2, budget).bundle
