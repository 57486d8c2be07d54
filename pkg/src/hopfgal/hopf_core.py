"""Finite-dimensional Hopf algebras as structure constants.

An algebra is a pair of matrices (mult: A(x)A -> A, unit: k -> A) in a fixed
basis; a Hopf algebra adds comult, counit and antipode. Every axiom is a
matrix identity in the tensor indexing of exact_linear, so verification is
exact and produces a localized witness (the first basis tuple where the two
sides differ).

The module also provides the builders for the standard examples: group
algebras kG, their function-algebra duals k^G, the four-dimensional Sweedler
algebra, and the graded shortcut that stands in for the function Hopf algebra
of the circle (an honest materialization would be infinite-dimensional; its
comodules are just integer gradings, which is all later modules need).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exact_linear import (
    Field,
    InputError,
    InvariantViolation,
    Mat,
    QQ,
    flip,
    inverse,
    permute_legs,
)


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    ok: bool
    witness: str | None = None


def report_ok(report: list[AxiomCheck]) -> bool:
    return all(c.ok for c in report)


def tensor_names(*name_lists) -> list[str]:
    """Labels for a tensor-product basis, left factor slowest."""
    return [
        "(" + ",".join(combo) + ")"
        for combo in itertools.product(*name_lists)
    ]


def _diff_witness(name, lhs: Mat, rhs: Mat, domain_names, codomain_names):
    """First entry where lhs and rhs differ, phrased in basis labels."""
    for j in range(lhs.cols):
        for i in range(lhs.rows):
            a, b = lhs.entry(i, j), rhs.entry(i, j)
            if a != b:
                fmt = lhs.field.format
                return (
                    f"{name} fails at basis {domain_names[j]}: "
                    f"coefficient of {codomain_names[i]} is {fmt(a)} on the left, {fmt(b)} on the right"
                )
    return None


def _check_eq(name, lhs, rhs, domain_names, codomain_names) -> AxiomCheck:
    if lhs == rhs:
        return AxiomCheck(name, True)
    return AxiomCheck(name, False, _diff_witness(name, lhs, rhs, domain_names, codomain_names))


class AlgebraData:
    """A finite-dimensional unital associative algebra by structure constants.

    mult has shape dim x dim^2 (column i*dim+j holds the coordinates of
    e_i * e_j), unit is a dim x 1 column.
    """

    def __init__(self, field: Field, dim: int, basis_names, mult: Mat, unit: Mat):
        if len(list(basis_names)) != dim:
            raise InputError("basis_names length differs from dim")
        if (mult.rows, mult.cols) != (dim, dim * dim):
            raise InputError(f"mult must be {dim}x{dim * dim}")
        if (unit.rows, unit.cols) != (dim, 1):
            raise InputError(f"unit must be {dim}x1")
        if mult.field != field or unit.field != field:
            raise InputError("mixed fields in algebra data")
        self.field = field
        self.dim = dim
        self.basis_names = list(basis_names)
        self.mult = mult
        self.unit = unit

    def multiply(self, v: Mat, w: Mat) -> Mat:
        return self.mult.mul(v.kron(w))

    def left_mult(self, v: Mat) -> Mat:
        """Matrix of a |-> v*a."""
        return self.mult.mul(v.kron(Mat.identity(self.field, self.dim)))

    def right_mult(self, v: Mat) -> Mat:
        """Matrix of a |-> a*v."""
        return self.mult.mul(Mat.identity(self.field, self.dim).kron(v))

    def is_commutative(self) -> bool:
        return self.mult == self.mult.mul(flip(self.field, self.dim, self.dim))

    def basis_vector(self, i: int) -> Mat:
        return Mat.basis_vector(self.field, self.dim, i)


def check_algebra(a: AlgebraData) -> list[AxiomCheck]:
    field, d = a.field, a.dim
    eye = Mat.identity(field, d)
    names1 = tensor_names(a.basis_names)
    names3 = tensor_names(a.basis_names, a.basis_names, a.basis_names)
    out = [
        _check_eq(
            "associativity",
            a.mult.mul(a.mult.kron(eye)),
            a.mult.mul(eye.kron(a.mult)),
            names3,
            names1,
        ),
        _check_eq("left_unit", a.mult.mul(a.unit.kron(eye)), eye, names1, names1),
        _check_eq("right_unit", a.mult.mul(eye.kron(a.unit)), eye, names1, names1),
    ]
    return out


class HopfData:
    """Hopf algebra: an AlgebraData plus comult, counit, antipode.

    antipode_inv is optional; antipode_inverse() computes it on demand.
    rep_hint tags builder provenance ("group_algebra", Group) and similar so
    the K-ring layer can attach representation rings to recognized families.
    """

    def __init__(
        self,
        algebra: AlgebraData,
        comult: Mat,
        counit: Mat,
        antipode: Mat,
        antipode_inv: Mat | None = None,
        rep_hint=None,
    ):
        d = algebra.dim
        if (comult.rows, comult.cols) != (d * d, d):
            raise InputError(f"comult must be {d * d}x{d}")
        if (counit.rows, counit.cols) != (1, d):
            raise InputError(f"counit must be 1x{d}")
        if (antipode.rows, antipode.cols) != (d, d):
            raise InputError(f"antipode must be {d}x{d}")
        if antipode_inv is not None and (antipode_inv.rows, antipode_inv.cols) != (d, d):
            raise InputError(f"antipode_inv must be {d}x{d}")
        self.algebra = algebra
        self.comult = comult
        self.counit = counit
        self.antipode = antipode
        self.antipode_inv = antipode_inv
        self.rep_hint = rep_hint

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def basis_names(self):
        return self.algebra.basis_names

    @property
    def mult(self) -> Mat:
        return self.algebra.mult

    @property
    def unit(self) -> Mat:
        return self.algebra.unit

    def is_commutative(self) -> bool:
        return self.algebra.is_commutative()

    def is_cocommutative(self) -> bool:
        return self.comult == flip(self.field, self.dim, self.dim).mul(self.comult)


def check_hopf(h: HopfData) -> list[AxiomCheck]:
    """Verify every Hopf axiom; each line carries a witness on failure."""
    field, d = h.field, h.dim
    eye = Mat.identity(field, d)
    raw = h.basis_names
    names1 = tensor_names(raw)
    names2 = tensor_names(raw, raw)
    scalar_name = ["(1)"]
    out = check_algebra(h.algebra)

    out.append(
        _check_eq(
            "coassociativity",
            h.comult.kron(eye).mul(h.comult),
            eye.kron(h.comult).mul(h.comult),
            names1,
            tensor_names(raw, raw, raw),
        )
    )
    out.append(
        _check_eq("left_counit", h.counit.kron(eye).mul(h.comult), eye, names1, names1)
    )
    out.append(
        _check_eq("right_counit", eye.kron(h.counit).mul(h.comult), eye, names1, names1)
    )

    # Bialgebra axiom: comult and counit are algebra maps.
    out.append(
        _check_eq(
            "comult_multiplicative",
            h.comult.mul(h.mult),
            h.mult.kron(h.mult).mul(
                permute_legs(h.comult.kron(h.comult), [d, d, d, d], [0, 2, 1, 3])
            ),
            names2,
            names2,
        )
    )
    out.append(
        _check_eq(
            "comult_unital",
            h.comult.mul(h.unit),
            h.unit.kron(h.unit),
            scalar_name,
            names2,
        )
    )
    out.append(
        _check_eq(
            "counit_multiplicative",
            h.counit.mul(h.mult),
            h.counit.kron(h.counit),
            names2,
            scalar_name,
        )
    )
    out.append(
        _check_eq(
            "counit_unital",
            h.counit.mul(h.unit),
            Mat.identity(field, 1),
            scalar_name,
            scalar_name,
        )
    )

    unit_counit = h.unit.mul(h.counit)
    out.append(
        _check_eq(
            "antipode_left",
            h.mult.mul(h.antipode.kron(eye)).mul(h.comult),
            unit_counit,
            names1,
            names1,
        )
    )
    out.append(
        _check_eq(
            "antipode_right",
            h.mult.mul(eye.kron(h.antipode)).mul(h.comult),
            unit_counit,
            names1,
            names1,
        )
    )
    if h.antipode_inv is not None:
        out.append(
            _check_eq(
                "antipode_inverse",
                h.antipode_inv.mul(h.antipode),
                eye,
                names1,
                names1,
            )
        )
    return out


def antipode_inverse(h: HopfData) -> Mat | None:
    """S^{-1} when the antipode is invertible, with the flipped identities.

    S^{-1} is the antipode of the co-opposite Hopf algebra, so it must satisfy
    m(S^{-1} (x) id)(flip Delta) = u eps = m(id (x) S^{-1})(flip Delta).
    For valid input these hold automatically; a failure means the data was
    not a Hopf algebra to begin with.
    """
    s_inv = inverse(h.antipode)
    if s_inv is None:
        return None
    field, d = h.field, h.dim
    eye = Mat.identity(field, d)
    cop = flip(field, d, d).mul(h.comult)
    ue = h.unit.mul(h.counit)
    if h.mult.mul(s_inv.kron(eye)).mul(cop) != ue or h.mult.mul(eye.kron(s_inv)).mul(cop) != ue:
        raise InvariantViolation("antipode inverse exists but flipped antipode identities fail")
    return s_inv


def with_antipode_inverse(h: HopfData) -> HopfData:
    """Copy of h with antipode_inv filled in (error if S is singular)."""
    if h.antipode_inv is not None:
        return h
    s_inv = antipode_inverse(h)
    if s_inv is None:
        raise InputError("antipode is not invertible")
    return HopfData(h.algebra, h.comult, h.counit, h.antipode, s_inv, rep_hint=h.rep_hint)


class HopfMap:
    """A linear map between Hopf algebras, claimed to respect all structure."""

    def __init__(self, source: HopfData, target: HopfData, matrix: Mat):
        if (matrix.rows, matrix.cols) != (target.dim, source.dim):
            raise InputError(
                f"map must be {target.dim}x{source.dim}, got {matrix.rows}x{matrix.cols}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix

    @staticmethod
    def identity(h: HopfData) -> "HopfMap":
        return HopfMap(h, h, Mat.identity(h.field, h.dim))


def check_hopf_map(f: HopfMap) -> list[AxiomCheck]:
    src, tgt, m = f.source, f.target, f.matrix
    names1 = tensor_names(src.basis_names)
    names2 = tensor_names(src.basis_names, src.basis_names)
    tgt_names = tensor_names(tgt.basis_names)
    tgt2 = tensor_names(tgt.basis_names, tgt.basis_names)
    scalar = ["(1)"]
    return [
        _check_eq(
            "map_multiplicative",
            m.mul(src.mult),
            tgt.mult.mul(m.kron(m)),
            names2,
            tgt_names,
        ),
        _check_eq("map_unital", m.mul(src.unit), tgt.unit, scalar, tgt_names),
        _check_eq(
            "map_comultiplicative",
            tgt.comult.mul(m),
            m.kron(m).mul(src.comult),
            names1,
            tgt2,
        ),
        _check_eq("map_counital", tgt.counit.mul(m), src.counit, names1, scalar),
        _check_eq(
            "map_antipode", m.mul(src.antipode), tgt.antipode.mul(m), names1, tgt_names
        ),
    ]


class Group:
    """A finite group as labels plus a multiplication table of indices."""

    def __init__(self, labels, table):
        self.labels = list(labels)
        self.table = [list(r) for r in table]
        n = len(self.labels)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise InputError("multiplication table shape mismatch")
        if any(x < 0 or x >= n for r in self.table for x in r):
            raise InputError("table entry out of range")
        self.identity = self._find_identity()
        self.inv = self._find_inverses()

    @property
    def order(self) -> int:
        return len(self.labels)

    def _find_identity(self) -> int:
        n = self.order
        for e in range(n):
            if all(self.table[e][j] == j and self.table[j][e] == j for j in range(n)):
                return e
        raise InputError("presentation has no identity element")

    def _find_inverses(self):
        n, e = self.order, self.identity
        inv = [None] * n
        for i in range(n):
            for j in range(n):
                if self.table[i][j] == e and self.table[j][i] == e:
                    inv[i] = j
                    break
            if inv[i] is None:
                raise InputError(f"element {self.labels[i]} has no inverse")
        return inv

    def is_abelian(self) -> bool:
        n = self.order
        return all(
            self.table[i][j] == self.table[j][i] for i in range(n) for j in range(n)
        )

    @staticmethod
    def cyclic(n: int) -> "Group":
        if n < 1:
            raise InputError("cyclic group order must be positive")
        labels = ["e"] + [f"g{k}" if k > 1 else "g" for k in range(1, n)]
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return Group(labels, table)

    @staticmethod
    def trivial() -> "Group":
        return Group.cyclic(1)

    @staticmethod
    def symmetric(n: int) -> "Group":
        perms = sorted(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        labels = ["s" + "".join(str(x) for x in p) for p in perms]
        # table[i][j] = p_i after p_j (apply j first).
        table = [
            [index[tuple(pi[pj[x]] for x in range(n))] for pj in perms] for pi in perms
        ]
        return Group(labels, table)


def build_group_algebra(g: Group, field: Field = QQ, max_order: int = 512) -> HopfData:
    """The group algebra kG: basis g, grouplike comultiplication, S(g)=g^{-1}."""
    n = g.order
    if n > max_order:
        raise InputError(f"group order {n} exceeds bound {max_order}")
    mult = Mat.zeros(field, n, n * n)
    one = field.one()
    for i in range(n):
        for j in range(n):
            mult._rows[g.table[i][j]][i * n + j] = one
    unit = Mat.basis_vector(field, n, g.identity)
    comult = Mat.zeros(field, n * n, n)
    for i in range(n):
        comult._rows[i * n + i][i] = one
    counit = Mat(field, 1, n, [1] * n)
    antipode = Mat.zeros(field, n, n)
    for i in range(n):
        antipode._rows[g.inv[i]][i] = one
    algebra = AlgebraData(field, n, g.labels, mult, unit)
    return HopfData(
        algebra, comult, counit, antipode, antipode, rep_hint=("group_algebra", g)
    )


def build_dual_group_algebra(g: Group, field: Field = QQ, max_order: int = 512) -> HopfData:
    """The function algebra k^G: delta-function basis, convolution comult."""
    n = g.order
    if n > max_order:
        raise InputError(f"group order {n} exceeds bound {max_order}")
    labels = [f"d_{lbl}" for lbl in g.labels]
    mult = Mat.zeros(field, n, n * n)
    one = field.one()
    for i in range(n):
        mult._rows[i][i * n + i] = one
    unit = Mat(field, n, 1, [1] * n)
    comult = Mat.zeros(field, n * n, n)
    for i in range(n):
        for j in range(n):
            comult._rows[i * n + j][g.table[i][j]] = one
    counit = Mat.zeros(field, 1, n)
    counit._rows[0][g.identity] = one
    antipode = Mat.zeros(field, n, n)
    for i in range(n):
        antipode._rows[g.inv[i]][i] = one
    algebra = AlgebraData(field, n, labels, mult, unit)
    return HopfData(
        algebra, comult, counit, antipode, antipode, rep_hint=("dual_group_algebra", g)
    )


def sweedler_h4(field: Field = QQ) -> HopfData:
    """The four-dimensional Sweedler algebra over a field of char != 2.

    Basis 1, g, x, gx with g^2=1, x^2=0, xg=-gx; Delta(g)=g(x)g,
    Delta(x)=x(x)1+g(x)x; S(g)=g, S(x)=-gx. The smallest Hopf algebra whose
    antipode is not an involution: S^2 != id, S^4 = id.
    """
    if field.p == 2:
        raise InputError("needs char != 2")
    names = ["1", "g", "x", "gx"]
    d = 4
    # products[i][j] = list of (basis index, coefficient) for e_i * e_j
    products = [
        [[(0, 1)], [(1, 1)], [(2, 1)], [(3, 1)]],
        [[(1, 1)], [(0, 1)], [(3, 1)], [(2, 1)]],
        [[(2, 1)], [(3, -1)], [], []],
        [[(3, 1)], [(2, -1)], [], []],
    ]
    mult = Mat.zeros(field, d, d * d)
    for i in range(d):
        for j in range(d):
            for k, c in products[i][j]:
                mult._rows[k][i * d + j] = field.of(c)
    unit = Mat.basis_vector(field, d, 0)
    coproducts = [
        [(0, 0, 1)],
        [(1, 1, 1)],
        [(2, 0, 1), (1, 2, 1)],
        [(3, 1, 1), (0, 3, 1)],
    ]
    comult = Mat.zeros(field, d * d, d)
    for col, terms in enumerate(coproducts):
        for a, b, c in terms:
            comult._rows[a * d + b][col] = field.of(c)
    counit = Mat(field, 1, d, [1, 1, 0, 0])
    antipode = Mat.zeros(field, d, d)
    antipode._rows[0][0] = field.one()
    antipode._rows[1][1] = field.one()
    antipode._rows[3][2] = field.of(-1)
    antipode._rows[2][3] = field.one()
    algebra = AlgebraData(field, d, names, mult, unit)
    h = HopfData(algebra, comult, counit, antipode, rep_hint=("sweedler", None))
    return with_antipode_inverse(h)


def trivial_hopf(field: Field = QQ) -> HopfData:
    """The ground field as a one-dimensional Hopf algebra."""
    one = Mat.identity(field, 1)
    algebra = AlgebraData(field, 1, ["1"], one, one)
    return HopfData(algebra, one, one, one, one, rep_hint=("group_algebra", Group.trivial()))


def counit_map(h: HopfData) -> HopfMap:
    """The counit as a Hopf algebra map H -> k."""
    return HopfMap(h, trivial_hopf(h.field), h.counit)


def unit_map(h: HopfData) -> HopfMap:
    """The unit as a Hopf algebra map k -> H."""
    return HopfMap(trivial_hopf(h.field), h, h.unit)


def hopf_equal(h1: HopfData, h2: HopfData) -> bool:
    """Structural equality of Hopf data (same matrices in the same basis)."""
    return (
        h1.field == h2.field
        and h1.dim == h2.dim
        and h1.mult == h2.mult
        and h1.unit == h2.unit
        and h1.comult == h2.comult
        and h1.counit == h2.counit
        and h1.antipode == h2.antipode
    )


def group_algebra_map(g_src: Group, g_tgt: Group, index_map, field: Field = QQ) -> HopfMap:
    """Hopf map kG -> kG' induced by a group homomorphism given on indices."""
    src = build_group_algebra(g_src, field)
    tgt = build_group_algebra(g_tgt, field)
    m = Mat.zeros(field, g_tgt.order, g_src.order)
    for i in range(g_src.order):
        m._rows[index_map[i]][i] = field.one()
    return HopfMap(src, tgt, m)


def _primitive_root(p: int) -> int:
    for g in range(2, p):
        seen = set()
        x = 1
        for _ in range(p - 1):
            x = x * g % p
            seen.add(x)
        if len(seen) == p - 1:
            return g
    raise InputError(f"no primitive root mod {p}")


def fourier_iso(p: int) -> HopfMap:
    """Character-table isomorphism kG -> k^G for G = Z/(p-1) over F_p.

    F_p contains all (p-1)-th roots of unity, so the evaluation map
    e_k |-> sum_j w^{jk} delta_j (w a primitive root) is a Hopf isomorphism.
    """
    field = Field(p)
    g = Group.cyclic(p - 1)
    src = build_group_algebra(g, field)
    tgt = build_dual_group_algebra(g, field)
    w = _primitive_root(p)
    n = p - 1
    m = Mat.zeros(field, n, n)
    for k in range(n):
        for j in range(n):
            m._rows[j][k] = field.of(pow(w, (j * k) % n, p))
    return HopfMap(src, tgt, m)


class AbelianGroup:
    """Finitely generated abelian group Z^r x Z/d_1 x ... x Z/d_s.

    Elements are integer tuples of length r+s; torsion coordinates are kept
    reduced. This is the grading datum behind GradedHopfShortcut.
    """

    def __init__(self, free_rank: int = 0, torsion=()):
        if free_rank < 0 or any(d < 1 for d in torsion):
            raise InputError("bad abelian group signature")
        self.free_rank = free_rank
        self.torsion = tuple(torsion)

    @property
    def ndim(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        if not self.is_finite:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def normalize(self, elem) -> tuple:
        elem = tuple(elem)
        if len(elem) != self.ndim:
            raise InputError(f"element length {len(elem)}, expected {self.ndim}")
        free = elem[: self.free_rank]
        tors = tuple(x % d for x, d in zip(elem[self.free_rank:], self.torsion))
        return free + tors

    def zero(self) -> tuple:
        return (0,) * self.ndim

    def add(self, a, b) -> tuple:
        return self.normalize(tuple(x + y for x, y in zip(self.normalize(a), self.normalize(b))))

    def neg(self, a) -> tuple:
        return self.normalize(tuple(-x for x in self.normalize(a)))

    def elements(self) -> list[tuple]:
        if not self.is_finite:
            raise InputError("infinite group has no element list")
        return [tuple(c) for c in itertools.product(*(range(d) for d in self.torsion))]

    def to_group(self) -> Group:
        elems = self.elements()
        index = {e: i for i, e in enumerate(elems)}
        labels = ["t" + "_".join(str(x) for x in e) for e in elems]
        table = [[index[self.add(a, b)] for b in elems] for a in elems]
        return Group(labels, table)

    def __eq__(self, other):
        return (
            isinstance(other, AbelianGroup)
            and self.free_rank == other.free_rank
            and self.torsion == other.torsion
        )

    def __repr__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "0"


CIRCLE = AbelianGroup(free_rank=1)


class GradedHopfShortcut:
    """Stand-in for the group-algebra Hopf structure of an abelian group.

    Comodules over a group algebra k[Gamma] are Gamma-graded vector spaces,
    so for grading purposes no Hopf data needs to be materialized; for
    operations that genuinely need matrices, materialize() builds k[Gamma]
    when Gamma is finite.
    """

    def __init__(self, grading_group: AbelianGroup):
        self.grading_group = grading_group

    def materialize(self, field: Field = QQ) -> tuple[HopfData, list[tuple]]:
        """(k[Gamma], element order) for finite Gamma; error otherwise."""
        gg = self.grading_group
        if not gg.is_finite:
            raise InputError(
                "grading group is infinite; this operation needs finite-dimensional Hopf data"
            )
        return build_group_algebra(gg.to_group(), field), gg.elements()

    def __eq__(self, other):
        return isinstance(other, GradedHopfShortcut) and self.grading_group == other.grading_group

    def __repr__(self):
        return f"GradedHopfShortcut({self.grading_group!r})"


def is_cosemisimple_certified(h) -> tuple[bool, str]:
    """Conservative cosemisimplicity certificate for recognized families.

    Group algebras are cosemisimple over any field (their comodules are group
    gradings); the graded shortcut likewise. Dual group algebras are
    cosemisimple exactly when kG is semisimple, certified here under the
    Maschke condition char(k) does not divide |G|. Anything else is reported
    as not certified, which downstream code surfaces as "coflatness assumed,
    not verified".
    """
    if isinstance(h, GradedHopfShortcut):
        return True, "graded shortcut: comodules are gradings"
    hint = getattr(h, "rep_hint", None)
    if hint is None:
        return False, "no recognized cosemisimple structure"
    kind = hint[0]
    if kind == "group_algebra":
        return True, "group algebra: comodules are group gradings"
    if kind == "dual_group_algebra":
        g: Group = hint[1]
        p = h.field.p
        if p is None or g.order % p != 0:
            return True, "dual group algebra with invertible group order"
        return False, f"char {p} divides group order {g.order}"
    return False, "no recognized cosemisimple structure"
