"""Right comodule algebras, coinvariants, and the classical Galois verdict.

A right H-comodule algebra is an algebra A with a coaction rho: A -> A (x) H
that is an algebra map. The base of the extension is a declared subalgebra
B inside the coinvariants A^{co H}; the canonical map

    can: A (x)_B A -> A (x) H,   a (x) a' |-> a a'_(0) (x) a'_(1)

is bijective exactly when the extension is Hopf-Galois. The balanced tensor
is realized as an explicit quotient with a chosen section, so "bijective" is
an exact rank computation.

When the structure Hopf algebra is a GradedHopfShortcut, the coaction is a
degree assignment per basis vector and the comodule-algebra axioms become
degree bookkeeping; operations that genuinely need matrices materialize the
group algebra (finite grading groups only).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
import itertools

from .exact_linear import (
    Field,
    InputError,
    InvariantViolation,
    Mat,
    Subspace,
    flip,
    inverse,
    is_bijective,
    kernel,
    permute_legs,
    quotient,
    solve,
)
from .hopf_core import (
    AlgebraData,
    AxiomCheck,
    GradedHopfShortcut,
    HopfData,
    check_algebra,
    tensor_names,
    _check_eq,
)


@dataclass(frozen=True)
class Verdict:
    """A tri-state answer: True, False, or None for undecided."""

    value: bool | None
    reasons: tuple[str, ...] = ()

    def with_reason(self, reason: str) -> "Verdict":
        return Verdict(self.value, self.reasons + (reason,))

    def __repr__(self):
        tag = {True: "true", False: "false", None: "undecided"}[self.value]
        return f"Verdict({tag}; {'; '.join(self.reasons)})"


class ComoduleAlgebra:
    """An algebra with a right coaction of a Hopf algebra.

    For HopfData the coaction is a (dim A * dim H) x (dim A) matrix. For a
    GradedHopfShortcut it is a list of group elements, the degree of each
    basis vector.
    """

    def __init__(self, algebra: AlgebraData, hopf, coaction=None, degrees=None):
        self.algebra = algebra
        self.hopf = hopf
        if isinstance(hopf, GradedHopfShortcut):
            if coaction is not None or degrees is None:
                raise InputError("graded comodule algebra takes degrees, not a coaction matrix")
            if len(degrees) != algebra.dim:
                raise InputError("one degree per basis vector required")
            self.degrees = [hopf.grading_group.normalize(d) for d in degrees]
            self.coaction = None
        else:
            if degrees is not None or coaction is None:
                raise InputError("matrix comodule algebra takes a coaction, not degrees")
            da, dh = algebra.dim, hopf.dim
            if (coaction.rows, coaction.cols) != (da * dh, da):
                raise InputError(f"coaction must be {da * dh}x{da}")
            if hopf.field != algebra.field:
                raise InputError("algebra and Hopf algebra over different fields")
            self.coaction = coaction
            self.degrees = None

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def is_graded(self) -> bool:
        return self.degrees is not None

    @property
    def basis_names(self):
        return self.algebra.basis_names

    def materialize(self) -> "ComoduleAlgebra":
        """Matrix form; identity when the Hopf algebra is already matrices."""
        if not self.is_graded:
            return self
        hopf, elems = self.hopf.materialize(self.field)
        index = {e: i for i, e in enumerate(elems)}
        da, dh = self.dim, hopf.dim
        rho = Mat.zeros(self.field, da * dh, da)
        for i, deg in enumerate(self.degrees):
            rho._rows[i * dh + index[deg]][i] = self.field.one()
        return ComoduleAlgebra(self.algebra, hopf, coaction=rho)


def check_comodule_algebra(c: ComoduleAlgebra) -> list[AxiomCheck]:
    out = check_algebra(c.algebra)
    if c.is_graded:
        out.extend(_check_grading(c))
        return out
    a, h, rho = c.algebra, c.hopf, c.coaction
    field, da, dh = c.field, c.dim, h.dim
    eye_a = Mat.identity(field, da)
    eye_h = Mat.identity(field, dh)
    a_names = tensor_names(a.basis_names)
    ah_names = tensor_names(a.basis_names, h.basis_names)
    aa_names = tensor_names(a.basis_names, a.basis_names)
    out.append(
        _check_eq(
            "coaction_coassociative",
            rho.kron(eye_h).mul(rho),
            eye_a.kron(h.comult).mul(rho),
            a_names,
            tensor_names(a.basis_names, h.basis_names, h.basis_names),
        )
    )
    out.append(
        _check_eq(
            "coaction_counital",
            eye_a.kron(h.counit).mul(rho),
            eye_a,
            a_names,
            a_names,
        )
    )
    # rho is an algebra map into A (x) H with its tensor-product multiplication.
    out.append(
        _check_eq(
            "coaction_multiplicative",
            rho.mul(a.mult),
            a.mult.kron(h.mult).mul(
                permute_legs(rho.kron(rho), [da, dh, da, dh], [0, 2, 1, 3])
            ),
            aa_names,
            ah_names,
        )
    )
    out.append(
        _check_eq(
            "coaction_unital",
            rho.mul(a.unit),
            a.unit.kron(h.unit),
            ["(1)"],
            ah_names,
        )
    )
    return out


def _check_grading(c: ComoduleAlgebra) -> list[AxiomCheck]:
    a = c.algebra
    gg = c.hopf.grading_group
    names = a.basis_names
    bad = None
    for i in range(a.dim):
        for j in range(a.dim):
            want = gg.add(c.degrees[i], c.degrees[j])
            col = i * a.dim + j
            for k in range(a.dim):
                if a.mult.entry(k, col) and c.degrees[k] != want:
                    bad = (
                        f"grading_multiplicative fails at basis ({names[i]},{names[j]}): "
                        f"component {names[k]} has degree {c.degrees[k]}, expected {want}"
                    )
                    break
            if bad:
                break
        if bad:
            break
    checks = [AxiomCheck("grading_multiplicative", bad is None, bad)]
    zero = gg.zero()
    bad_unit = None
    for k in range(a.dim):
        if a.unit.entry(k, 0) and c.degrees[k] != zero:
            bad_unit = (
                f"grading_unital fails at basis (1): component {names[k]} "
                f"has degree {c.degrees[k]}, expected {zero}"
            )
            break
    checks.append(AxiomCheck("grading_unital", bad_unit is None, bad_unit))
    return checks


def coinvariants(c: ComoduleAlgebra) -> Subspace:
    """A^{co H} = {a : rho(a) = a (x) 1}, certified to be a unital subalgebra."""
    field, da = c.field, c.dim
    if c.is_graded:
        zero = c.hopf.grading_group.zero()
        cols = [
            Mat.basis_vector(field, da, i)
            for i in range(da)
            if c.degrees[i] == zero
        ]
        sub = Subspace.from_spanning_columns(field, da, cols)
    else:
        sub = kernel(c.coaction - Mat.identity(field, da).kron(c.hopf.unit))
    _assert_unital_subalgebra(c.algebra, sub)
    return sub


def _assert_unital_subalgebra(a: AlgebraData, sub: Subspace):
    if not sub.contains(a.unit):
        raise InvariantViolation("coinvariants do not contain the unit")
    basis = sub.basis_columns()
    for u in basis:
        for v in basis:
            if not sub.contains(a.multiply(u, v)):
                raise InvariantViolation("coinvariants are not closed under multiplication")


class Extension:
    """A comodule algebra with a declared base B inside the coinvariants.

    B is a subspace of A carrying the induced multiplication; the inclusion
    matrix just lists its basis columns.
    """

    def __init__(
        self,
        comodule_algebra: ComoduleAlgebra,
        invariant_subalgebra: Subspace | None = None,
        inclusion: Mat | None = None,
    ):
        self.comodule_algebra = comodule_algebra
        if invariant_subalgebra is None:
            invariant_subalgebra = coinvariants(comodule_algebra)
        self.invariant_subalgebra = invariant_subalgebra
        if inclusion is None:
            cols = invariant_subalgebra.basis_columns()
            inclusion = Mat.zeros(comodule_algebra.field, comodule_algebra.dim, 0)
            for c in cols:
                inclusion = inclusion.hstack(c)
        if (inclusion.rows, inclusion.cols) != (
            comodule_algebra.dim,
            invariant_subalgebra.dim,
        ):
            raise InputError("inclusion shape does not match the base subspace")
        self.inclusion = inclusion

    @property
    def algebra(self) -> AlgebraData:
        return self.comodule_algebra.algebra

    @property
    def hopf(self):
        return self.comodule_algebra.hopf

    @property
    def field(self) -> Field:
        return self.comodule_algebra.field

    @property
    def dim(self) -> int:
        return self.comodule_algebra.dim

    @property
    def base_dim(self) -> int:
        return self.invariant_subalgebra.dim

    def base_basis_columns(self) -> list[Mat]:
        return [self.inclusion.col_vector(j) for j in range(self.inclusion.cols)]

    def base_mult(self) -> Mat:
        """Multiplication of B in the basis given by the inclusion columns."""
        a = self.algebra
        field, db = self.field, self.base_dim
        cols = self.base_basis_columns()
        out = Mat.zeros(field, db, db * db)
        for i, u in enumerate(cols):
            for j, v in enumerate(cols):
                prod = a.multiply(u, v)
                coords = solve(self.inclusion, prod)
                if coords is None:
                    raise InvariantViolation("base is not closed under multiplication")
                for k in range(db):
                    out._rows[k][i * db + j] = coords.entry(k, 0)
        return out

    def base_unit(self) -> Mat:
        coords = solve(self.inclusion, self.algebra.unit)
        if coords is None:
            raise InvariantViolation("base does not contain the unit")
        return coords

    def base_algebra(self) -> AlgebraData:
        names = [f"b{j}" for j in range(self.base_dim)]
        return AlgebraData(self.field, self.base_dim, names, self.base_mult(), self.base_unit())

    def materialize(self) -> "Extension":
        if not self.comodule_algebra.is_graded:
            return self
        return Extension(
            self.comodule_algebra.materialize(), self.invariant_subalgebra, self.inclusion
        )


def check_extension(e: Extension) -> list[AxiomCheck]:
    out = []
    coinv = coinvariants(e.comodule_algebra)
    bad = None
    for j, col in enumerate(e.base_basis_columns()):
        if not coinv.contains(col):
            bad = f"inclusion column {j} is not coinvariant"
            break
    out.append(AxiomCheck("base_in_coinvariants", bad is None, bad))
    a = e.algebra
    unit_ok = e.invariant_subalgebra.contains(a.unit)
    out.append(
        AxiomCheck(
            "base_contains_unit",
            unit_ok,
            None if unit_ok else "unit of A is outside the declared base",
        )
    )
    bad = None
    cols = e.base_basis_columns()
    for i, u in enumerate(cols):
        for j, v in enumerate(cols):
            if not e.invariant_subalgebra.contains(a.multiply(u, v)):
                bad = f"product of base columns {i} and {j} leaves the base"
                break
        if bad:
            break
    out.append(AxiomCheck("base_closed_under_mult", bad is None, bad))
    return out


class BalancedTensor:
    """X (x)_B Y as an explicit quotient of X (x) Y.

    right_ops[k] is the action of the k-th base vector on X from the right,
    left_ops[k] its action on Y from the left; the balancing relations are
    the columns of kron(R_b, id) - kron(id, L_b).
    """

    def __init__(self, field: Field, dim_x: int, dim_y: int, right_ops, left_ops):
        if len(right_ops) != len(left_ops):
            raise InputError("one right and one left operator per base vector")
        for r in right_ops:
            if (r.rows, r.cols) != (dim_x, dim_x):
                raise InputError("right operator shape mismatch")
        for l in left_ops:
            if (l.rows, l.cols) != (dim_y, dim_y):
                raise InputError("left operator shape mismatch")
        self.field = field
        self.dim_x = dim_x
        self.dim_y = dim_y
        self.ambient_dim = dim_x * dim_y
        eye_x = Mat.identity(field, dim_x)
        eye_y = Mat.identity(field, dim_y)
        spans = []
        for r, l in zip(right_ops, left_ops):
            diff = r.kron(eye_y) - eye_x.kron(l)
            spans.extend(diff.col_vector(j) for j in range(diff.cols))
        self.relations = Subspace.from_spanning_columns(field, self.ambient_dim, spans)
        self.dim, self.projector, self.section = quotient(self.ambient_dim, self.relations)

    def descend(self, raw: Mat) -> Mat:
        """Factor a map X (x) Y -> W through the quotient (raw must kill relations)."""
        if raw.cols != self.ambient_dim:
            raise InputError("map does not start on the ambient tensor product")
        if self.relations.dim and not raw.mul(self.relations.mat).is_zero():
            raise InvariantViolation("map does not vanish on the balancing relations")
        return raw.mul(self.section)


def balanced_self_tensor(e: Extension) -> BalancedTensor:
    """A (x)_B A over the declared base."""
    a = e.algebra
    cols = e.base_basis_columns()
    right_ops = [a.right_mult(b) for b in cols]
    left_ops = [a.left_mult(b) for b in cols]
    return BalancedTensor(e.field, a.dim, a.dim, right_ops, left_ops)


def canonical_map(e: Extension) -> tuple[Mat, BalancedTensor]:
    """can: A (x)_B A -> A (x) H, together with the quotient model of its domain."""
    e = e.materialize()
    a, h, rho = e.algebra, e.hopf, e.comodule_algebra.coaction
    field = e.field
    bt = balanced_self_tensor(e)
    raw = a.mult.kron(Mat.identity(field, h.dim)).mul(
        Mat.identity(field, a.dim).kron(rho)
    )
    return bt.descend(raw), bt


def is_hopf_galois(e: Extension) -> Verdict:
    """Coinvariants equal the declared base and the canonical map is bijective."""
    axioms = check_comodule_algebra(e.comodule_algebra) + check_extension(e)
    bad = [c for c in axioms if not c.ok]
    if bad:
        return Verdict(False, tuple(c.witness or c.name for c in bad))
    coinv = coinvariants(e.comodule_algebra)
    reasons = []
    if coinv != e.invariant_subalgebra:
        reasons.append(
            f"coinvariants have dimension {coinv.dim}, declared base has dimension {e.base_dim}"
            if coinv.dim != e.base_dim
            else "coinvariants differ from the declared base"
        )
        return Verdict(False, tuple(reasons))
    reasons.append(f"coinvariants match the declared base (dimension {coinv.dim})")
    can, bt = canonical_map(e)
    rank = can.rank()
    if is_bijective(can):
        reasons.append(f"canonical map is bijective ({can.rows}x{can.cols}, rank {rank})")
        return Verdict(True, tuple(reasons))
    reasons.append(
        f"canonical map is not bijective ({can.rows}x{can.cols}, rank {rank})"
    )
    return Verdict(False, tuple(reasons))


def _intertwiner_space(e: Extension) -> tuple[list[Mat], int, int]:
    """Basis of {f: B (x) H -> A : right B-linear H-comodule maps}."""
    e = e.materialize()
    a, h, rho = e.algebra, e.hopf, e.comodule_algebra.coaction
    field = e.field
    da, dh, db = a.dim, h.dim, e.base_dim
    dom = db * dh
    eye_h = Mat.identity(field, dh)
    eye_b = Mat.identity(field, db)
    base_alg = e.base_algebra()
    base_cols = e.base_basis_columns()

    # Each constraint is linear in f; apply it to the matrix units to build
    # one homogeneous system over the da*dom unknowns (row-major flattening).
    def comodule_defect(f: Mat) -> Mat:
        return rho.mul(f) - f.kron(eye_h).mul(eye_b.kron(h.comult))

    module_pairs = []
    for j in range(db):
        r_on_b = base_alg.right_mult(Mat.basis_vector(field, db, j))
        r_on_a = a.right_mult(base_cols[j])
        module_pairs.append((r_on_b.kron(eye_h), r_on_a))

    def defects(f: Mat) -> list[Mat]:
        out = [comodule_defect(f)]
        for dom_op, cod_op in module_pairs:
            out.append(f.mul(dom_op) - cod_op.mul(f))
        return out

    columns = []
    for i in range(da):
        for c in range(dom):
            unit_mat = Mat.zeros(field, da, dom)
            unit_mat._rows[i][c] = field.one()
            flat = []
            for d in defects(unit_mat):
                flat.extend(d.entries())
            columns.append(Mat.column(field, flat))
    big = columns[0]
    for col in columns[1:]:
        big = big.hstack(col)
    sol = kernel(big)
    mats = []
    for v in sol.basis_columns():
        m = Mat.zeros(field, da, dom)
        for i in range(da):
            for c in range(dom):
                m._rows[i][c] = v.entry(i * dom + c, 0)
        mats.append(m)
    return mats, da, dom


def has_normal_basis(e: Extension, budget: int = 200000) -> Verdict:
    """Search for an invertible right-B-linear H-comodule map B (x) H -> A.

    The solution space of the linear constraints is computed exactly; on it,
    invertibility of a combination sum(c_k f_k) is a determinant polynomial of
    per-variable degree at most dim A, so evaluating on the integer grid
    {0..dim A}^s decides nonvanishing. If the grid exceeds the budget the
    verdict is undecided rather than guessed.
    """
    e_mat = e.materialize()
    da = e_mat.dim
    dom = e_mat.base_dim * e_mat.hopf.dim
    if dom != da:
        return Verdict(
            False,
            (f"dimension mismatch: B (x) H has dimension {dom}, A has dimension {da}",),
        )
    mats, _, _ = _intertwiner_space(e)
    s = len(mats)
    if s == 0:
        return Verdict(False, ("only the zero intertwiner exists",))
    for f in mats:
        if is_bijective(f):
            return Verdict(True, (f"invertible intertwiner found (solution space dimension {s})",))
    field = e_mat.field
    if field.is_rational:
        values = list(range(da + 1))
        decisive = True
    else:
        # Iterating over all of F_p^s enumerates every map in the space.
        values = list(range(field.p))
        decisive = True
    total = len(values) ** s
    if total > budget:
        return Verdict(
            None,
            (
                f"solution space dimension {s} needs {total} grid evaluations, "
                f"budget is {budget}",
            ),
        )
    for coeffs in itertools.product(values, repeat=s):
        f = Mat.zeros(field, da, dom)
        for c, m in zip(coeffs, mats):
            if c:
                f = f + m.scale(c)
        if is_bijective(f):
            return Verdict(True, (f"invertible combination at coefficients {coeffs}",))
    if decisive:
        return Verdict(
            False,
            (
                f"determinant vanishes on the full certificate grid "
                f"({total} points, solution space dimension {s})",
            ),
        )
    return Verdict(None, ("search exhausted without certificate",))


class RelativeHopfModule:
    """A right A-module and right H-comodule with the compatibility law.

    action: M (x) A -> M, coaction: M -> M (x) H over the comodule algebra's
    Hopf datum (matrix form required).
    """

    def __init__(self, base: ComoduleAlgebra, dim: int, action: Mat, coaction: Mat, names=None):
        if base.is_graded:
            base = base.materialize()
        self.base = base
        da, dh = base.dim, base.hopf.dim
        if (action.rows, action.cols) != (dim, dim * da):
            raise InputError(f"action must be {dim}x{dim * da}")
        if (coaction.rows, coaction.cols) != (dim * dh, dim):
            raise InputError(f"coaction must be {dim * dh}x{dim}")
        self.dim = dim
        self.action = action
        self.coaction = coaction
        self.names = list(names) if names is not None else [f"m{i}" for i in range(dim)]


def check_relative_hopf_module(m: RelativeHopfModule) -> list[AxiomCheck]:
    c = m.base
    a, h, rho = c.algebra, c.hopf, c.coaction
    field = c.field
    dm, da, dh = m.dim, a.dim, h.dim
    eye_m = Mat.identity(field, dm)
    eye_a = Mat.identity(field, da)
    eye_h = Mat.identity(field, dh)
    m_names = tensor_names(m.names)
    ma_names = tensor_names(m.names, a.basis_names)
    out = [
        _check_eq(
            "module_associative",
            m.action.mul(m.action.kron(eye_a)),
            m.action.mul(eye_m.kron(a.mult)),
            tensor_names(m.names, a.basis_names, a.basis_names),
            m_names,
        ),
        _check_eq(
            "module_unital",
            m.action.mul(eye_m.kron(a.unit)),
            eye_m,
            m_names,
            m_names,
        ),
        _check_eq(
            "comodule_coassociative",
            m.coaction.kron(eye_h).mul(m.coaction),
            eye_m.kron(h.comult).mul(m.coaction),
            m_names,
            tensor_names(m.names, h.basis_names, h.basis_names),
        ),
        _check_eq(
            "comodule_counital",
            eye_m.kron(h.counit).mul(m.coaction),
            eye_m,
            m_names,
            m_names,
        ),
    ]
    # (ma)_(0) (x) (ma)_(1) = m_(0) a_(0) (x) m_(1) a_(1)
    out.append(
        _check_eq(
            "hopf_compatibility",
            m.coaction.mul(m.action),
            m.action.kron(h.mult).mul(
                permute_legs(m.coaction.kron(rho), [dm, dh, da, dh], [0, 2, 1, 3])
            ),
            ma_names,
            tensor_names(m.names, h.basis_names),
        )
    )
    return out


def change_basis(e: Extension, p: Mat) -> Extension:
    """Transport an extension along an invertible change of basis of A."""
    c = e.comodule_algebra.materialize()
    a = c.algebra
    field, da = c.field, c.dim
    p_inv = inverse(p)
    if p_inv is None or (p.rows, p.cols) != (da, da):
        raise InputError("change of basis must be an invertible dim A square matrix")
    mult2 = p.mul(a.mult).mul(p_inv.kron(p_inv))
    unit2 = p.mul(a.unit)
    names2 = [f"v{i}" for i in range(da)]
    alg2 = AlgebraData(field, da, names2, mult2, unit2)
    rho2 = p.kron(Mat.identity(field, c.hopf.dim)).mul(c.coaction).mul(p_inv)
    base2 = Subspace.from_spanning_columns(
        field, da, [p.mul(col) for col in e.base_basis_columns()]
    )
    return Extension(ComoduleAlgebra(alg2, c.hopf, coaction=rho2), base2)
