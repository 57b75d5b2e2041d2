"""Commutative graded algebra structures with odd-part antisymmetry, their
defining identities, modules, semidirect sums, and dual modules.

A structure is stored as a completed ordered product table over a
`core.GradedSpace`.  Two independent validity checks are provided: the
identity-by-identity checker and the square-zero test of the associated
odd element under the alternated bracket.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Mapping

from .core import GradedSpace, MultiMap, Vector, complete_product_table, scalar
from . import brackets

__all__ = [
    "CheckReport",
    "Violation",
    "AntialgebraStructure",
    "ModuleStructure",
    "check_axioms",
    "check_axioms_v2",
    "zero_square_check",
    "semidirect",
    "adjoint_module",
    "trivial_module",
    "dual_module",
    "dual_label",
]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

class Violation:
    __slots__ = ("kind", "instance", "residual")

    def __init__(self, kind, instance, residual):
        self.kind = kind
        self.instance = instance
        self.residual = residual

    def __repr__(self):
        return f"Violation({self.kind}, {self.instance}, {self.residual!r})"


class CheckReport:
    """Outcome of an identity check: counters plus every violated instance."""

    def __init__(self, title: str):
        self.title = title
        self.checked = 0
        self.skipped = 0
        self.violations: list[Violation] = []
        self.extras: dict = {}

    def record(self, kind, instance, residual) -> None:
        """Count one instance; a nonzero/None-free residual is a violation."""
        if residual is None:
            self.skipped += 1
            return
        self.checked += 1
        if isinstance(residual, Vector):
            nonzero = not residual.is_zero()
        elif isinstance(residual, dict):
            nonzero = any(residual.values())
        else:
            nonzero = bool(residual)
        if nonzero:
            self.violations.append(Violation(kind, instance, residual))

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "CheckReport") -> None:
        self.checked += other.checked
        self.skipped += other.skipped
        self.violations.extend(other.violations)
        self.extras.update(other.extras)

    def lines(self) -> list:
        out = [
            ("report", self.title),
            ("status", "pass" if self.ok else "fail"),
            ("checked", self.checked),
            ("skipped", self.skipped),
            ("violations", len(self.violations)),
        ]
        for key in sorted(self.extras, key=str):
            out.append((f"extra.{key}", self.extras[key]))
        for v in self.violations:
            out.append(("violation", f"{v.kind} at {v.instance}: {v.residual!r}"))
        return out

    def text(self) -> str:
        return "\n".join(f"{k}: {v}" for k, v in self.lines())

    def __repr__(self):
        word = "ok" if self.ok else f"{len(self.violations)} violations"
        return f"CheckReport({self.title!r}, {word})"


# ---------------------------------------------------------------------------
# structures
# ---------------------------------------------------------------------------

class AntialgebraStructure:
    """A graded-commutative product table on a graded space.

    The constructor symmetrises a partial table (mirror pairs filled with the
    sign (-1)^{|a||b|}) and validates grading closure: a product of basis
    vectors of parities i and j must be supported in parity i+j (mod 2).
    """

    def __init__(self, space: GradedSpace, products: Mapping, name: str = ""):
        self.space = space
        self.name = name
        self.products = complete_product_table(space, products)
        for (a, b), coeffs in self.products.items():
            want = (space.parity(a) + space.parity(b)) % 2
            for l in coeffs:
                if space.parity(l) != want:
                    raise ValueError(
                        f"product {a!r} * {b!r} is not parity-preserving")

    @classmethod
    def from_file_doc(cls, doc) -> "AntialgebraStructure":
        return cls(doc.space, doc.products, name=doc.name)

    def mul(self, a, b) -> Vector:
        """Product of two basis labels."""
        return Vector(self.space, self.products.get((a, b), {}))

    def mul_vec(self, u: Vector, v: Vector) -> Vector:
        out = Vector.zero(self.space)
        for la, ca in u.items():
            for lb, cb in v.items():
                out = out.add(self.mul(la, lb).scale(ca * cb))
        return out

    def product_map(self) -> dict:
        """The full product as raw {(a, b): {label: coeff}} (ordered pairs)."""
        return {k: dict(v) for k, v in self.products.items()}

    def m_blocks(self) -> brackets.BlockMap:
        """The structure as an odd element of the alternated algebra.

        Three blocks: the even-even part carries the extra factor 1/2, the
        mixed part is taken in the (x, y) order, the odd-odd part verbatim.
        """
        sp = self.space
        b20: dict = {}
        for a in sp.even:
            for b in sp.even:
                for l, c in self.mul(a, b).items():
                    b20[((a, b), (), l)] = c / 2
        b11: dict = {}
        for a in sp.even:
            for y in sp.odd:
                for l, c in self.mul(a, y).items():
                    b11[((a,), (y,), l)] = c
        b02: dict = {}
        for y1 in sp.odd:
            for y2 in sp.odd:
                for l, c in self.mul(y1, y2).items():
                    b02[((), (y1, y2), l)] = c
        blocks = {
            (2, 0): MultiMap(sp, 2, 0, b20),
            (1, 1): MultiMap(sp, 1, 1, b11),
            (0, 2): MultiMap(sp, 0, 2, b02),
        }
        return brackets.BlockMap(sp, 2, blocks)

    def __repr__(self):
        return (f"AntialgebraStructure({self.name or '?'}, "
                f"dim {self.space.dim0}|{self.space.dim1})")


class ModuleStructure:
    """A graded module over an antialgebra, given by its action table.

    The action must be parity-preserving: rho_a(b) lies in the module
    component of parity |a| + |b| (mod 2).  Full module validity is the
    statement that the semidirect sum passes the axiom check; see
    `semidirect`.
    """

    def __init__(self, base: AntialgebraStructure, space: GradedSpace,
                 action: Mapping, name: str = ""):
        self.base = base
        self.space = space
        self.name = name
        table: dict = {}
        for (a, b), coeffs in action.items():
            base.space.parity(a)
            want = (base.space.parity(a) + space.parity(b)) % 2
            cleaned = {l: scalar(c) for l, c in coeffs.items() if scalar(c)}
            for l in cleaned:
                if space.parity(l) != want:
                    raise ValueError(
                        f"action {a!r} . {b!r} is not parity-preserving")
            if cleaned:
                table[(a, b)] = cleaned
        self.action = table

    def act(self, a, b) -> Vector:
        """rho_a applied to the module basis label b."""
        return Vector(self.space, self.action.get((a, b), {}))

    def act_vec(self, u: Vector, v: Vector) -> Vector:
        out = Vector.zero(self.space)
        for la, ca in u.items():
            for lb, cb in v.items():
                out = out.add(self.act(la, lb).scale(ca * cb))
        return out

    def __repr__(self):
        return (f"ModuleStructure({self.name or '?'}, "
                f"dim {self.space.dim0}|{self.space.dim1})")


# ---------------------------------------------------------------------------
# the identity checkers
# ---------------------------------------------------------------------------

def _sym_residual(space, table, a, b):
    """Graded-commutativity residual a.b - (-1)^{|a||b|} b.a on a raw table."""
    sign = -1 if (space.parity(a) == 1 and space.parity(b) == 1) else 1
    ab = Vector(space, table.get((a, b), {}))
    ba = Vector(space, table.get((b, a), {}))
    return ab.sub(ba.scale(sign))


def check_axioms(space: GradedSpace, table: Mapping,
                 title: str = "axioms") -> CheckReport:
    """Check the defining identities on every basis instance.

    ``table`` is a raw ordered product table {(a, b): {label: coeff}}; the
    graded-commutativity rule itself is checked first and reported as its own
    failure class, as are grading violations.  The four identities:

      assoc      x1.(x2.x3) = (x1.x2).x3             on even triples
      half_unit  x1.(x2.y) = (1/2)(x1.x2).y          even, even, odd
      leibniz    x.(y1.y2) = (x.y1).y2 + y1.(x.y2)   even, odd, odd
      cyclic     y1.(y2.y3) + y2.(y3.y1) + y3.(y1.y2) = 0   odd triples
    """
    rep = CheckReport(title)
    table = {k: {l: scalar(c) for l, c in v.items()} for k, v in table.items()}

    def mul(a, b) -> Vector:
        return Vector(space, table.get((a, b), {}))

    def mul_v(u: Vector, v_label) -> Vector:
        out = Vector.zero(space)
        for l, c in u.items():
            out = out.add(mul(l, v_label).scale(c))
        return out

    def v_mul(u_label, v: Vector) -> Vector:
        out = Vector.zero(space)
        for l, c in v.items():
            out = out.add(mul(u_label, l).scale(c))
        return out

    labels = space.labels()
    for a in labels:
        for b in labels:
            rep.record("commutativity", (a, b), _sym_residual(space, table, a, b))
            want = (space.parity(a) + space.parity(b)) % 2
            bad = {l: c for l, c in table.get((a, b), {}).items()
                   if space.parity(l) != want and c}
            rep.record("grading", (a, b), Vector(space, bad))
    ev, od = space.even, space.odd
    for x1 in ev:
        for x2 in ev:
            for x3 in ev:
                res = v_mul(x1, mul(x2, x3)).sub(mul_v(mul(x1, x2), x3))
                rep.record("assoc", (x1, x2, x3), res)
    for x1 in ev:
        for x2 in ev:
            for y in od:
                res = v_mul(x1, mul(x2, y)).sub(
                    mul_v(mul(x1, x2), y).scale(Fraction(1, 2)))
                rep.record("half_unit", (x1, x2, y), res)
    for x in ev:
        for y1 in od:
            for y2 in od:
                res = v_mul(x, mul(y1, y2)).sub(
                    mul_v(mul(x, y1), y2)).sub(v_mul(y1, mul(x, y2)))
                rep.record("leibniz", (x, y1, y2), res)
    for y1 in od:
        for y2 in od:
            for y3 in od:
                res = v_mul(y1, mul(y2, y3)).add(
                    v_mul(y2, mul(y3, y1))).add(v_mul(y3, mul(y1, y2)))
                rep.record("cyclic", (y1, y2, y3), res)
    return rep


def check_axioms_v2(space: GradedSpace, table: Mapping,
                    title: str = "axioms-v2") -> CheckReport:
    """The equivalent reformulated system:

      assoc       the even part is associative
      even_comm   left multiplications by even elements commute on everything
      odd_deriv   right multiplication by an odd element is an odd derivation:
                  (a.b).y = (a.y).b + (-1)^{|a|} a.(b.y)

    Graded commutativity and grading closure are checked as before.
    """
    rep = CheckReport(title)
    table = {k: {l: scalar(c) for l, c in v.items()} for k, v in table.items()}

    def mul(a, b) -> Vector:
        return Vector(space, table.get((a, b), {}))

    def vec_mul_vec(u: Vector, v: Vector) -> Vector:
        out = Vector.zero(space)
        for la, ca in u.items():
            for lb, cb in v.items():
                out = out.add(mul(la, lb).scale(ca * cb))
        return out

    def bv(label) -> Vector:
        return Vector.basis(space, label)

    labels = space.labels()
    for a in labels:
        for b in labels:
            rep.record("commutativity", (a, b), _sym_residual(space, table, a, b))
            want = (space.parity(a) + space.parity(b)) % 2
            bad = {l: c for l, c in table.get((a, b), {}).items()
                   if space.parity(l) != want and c}
            rep.record("grading", (a, b), Vector(space, bad))
    ev, od = space.even, space.odd
    for x1 in ev:
        for x2 in ev:
            for x3 in ev:
                res = vec_mul_vec(bv(x1), mul(x2, x3)).sub(
                    vec_mul_vec(mul(x1, x2), bv(x3)))
                rep.record("assoc", (x1, x2, x3), res)
    for x1 in ev:
        for x2 in ev:
            for a in labels:
                res = vec_mul_vec(bv(x1), mul(x2, a)).sub(
                    vec_mul_vec(bv(x2), mul(x1, a)))
                rep.record("even_comm", (x1, x2, a), res)
    for a in labels:
        for b in labels:
            for y in od:
                sign = Fraction(-1) ** space.parity(a)
                res = vec_mul_vec(mul(a, b), bv(y)).sub(
                    vec_mul_vec(mul(a, y), bv(b))).sub(
                    vec_mul_vec(bv(a), mul(b, y)).scale(sign))
                rep.record("odd_deriv", (a, b, y), res)
    return rep


# ---------------------------------------------------------------------------
# the square-zero test
# ---------------------------------------------------------------------------

def zero_square_check(structure: AntialgebraStructure,
                      cross_check: bool = True):
    """Compute [m, m] under the alternated bracket for the structure's odd
    element m and report every nonzero entry.

    Returns (report, block_map).  With ``cross_check`` the four blocks are
    additionally compared against directly expanded identity combinations;
    a mismatch there means a transcription bug in the bracket engine itself
    and raises AssertionError.
    """
    m = structure.m_blocks()
    square = brackets.al_bracket_blocks(m, m)
    rep = CheckReport(f"zero-square[{structure.name or '?'}]")
    sp = structure.space
    shapes = [(3, 0), (2, 1), (1, 2), (0, 3)]
    for (p, q) in shapes:
        mm = square.block(p, q)
        for xs in itertools.product(sp.even, repeat=p):
            for ys in itertools.combinations(sp.odd, q):
                rep.record(f"square[{p},{q}]", (xs, ys), mm.value(xs, ys))
    if cross_check:
        expected = _expanded_identity_blocks(structure)
        for (p, q) in shapes:
            got = square.block(p, q)
            want = expected.block(p, q)
            assert got == want, (
                f"bracket engine disagrees with direct expansion on block "
                f"({p},{q})")
    return rep, square


def _expanded_identity_blocks(structure: AntialgebraStructure) -> brackets.BlockMap:
    """[m, m] written out by hand:

      (3,0):  2 [ m(m(x1,x2),x3) - m(x1,m(x2,x3)) ]
      (2,1):  2 [ m(m(x1,x2),y)  - m(x1,m(x2,y))  ]
      (1,2):  m(m(x,y1),y2) - m(m(x,y2),y1) - 2 m(x,m(y1,y2))
      (0,3):  (2/3) [ m(m(y1,y2),y3) + m(m(y2,y3),y1) + m(m(y3,y1),y2) ]

    where m carries the 1/2 on even-even pairs.
    """
    sp = structure.space
    half = Fraction(1, 2)

    def m(u: Vector, v: Vector) -> Vector:
        out = Vector.zero(sp)
        for la, ca in u.items():
            for lb, cb in v.items():
                w = structure.mul(la, lb).scale(ca * cb)
                if sp.parity(la) == 0 and sp.parity(lb) == 0:
                    w = w.scale(half)
                out = out.add(w)
        return out

    def bv(l) -> Vector:
        return Vector.basis(sp, l)

    e30: dict = {}
    for xs in itertools.product(sp.even, repeat=3):
        v = m(m(bv(xs[0]), bv(xs[1])), bv(xs[2])).sub(
            m(bv(xs[0]), m(bv(xs[1]), bv(xs[2])))).scale(2)
        for l, c in v.items():
            e30[(xs, (), l)] = c
    e21: dict = {}
    for xs in itertools.product(sp.even, repeat=2):
        for y in sp.odd:
            v = m(m(bv(xs[0]), bv(xs[1])), bv(y)).sub(
                m(bv(xs[0]), m(bv(xs[1]), bv(y)))).scale(2)
            for l, c in v.items():
                e21[(xs, (y,), l)] = c
    e12: dict = {}
    for x in sp.even:
        for y1 in sp.odd:
            for y2 in sp.odd:
                v = m(m(bv(x), bv(y1)), bv(y2)).sub(
                    m(m(bv(x), bv(y2)), bv(y1))).sub(
                    m(bv(x), m(bv(y1), bv(y2))).scale(2))
                for l, c in v.items():
                    e12[((x,), (y1, y2), l)] = c
    e03: dict = {}
    for ys in itertools.product(sp.odd, repeat=3):
        v = m(m(bv(ys[0]), bv(ys[1])), bv(ys[2])).add(
            m(m(bv(ys[1]), bv(ys[2])), bv(ys[0]))).add(
            m(m(bv(ys[2]), bv(ys[0])), bv(ys[1]))).scale(Fraction(2, 3))
        for l, c in v.items():
            e03[(ys, (), l)] = c
    blocks = {
        (3, 0): MultiMap(sp, 3, 0, e30),
        (2, 1): MultiMap(sp, 2, 1, e21),
        (1, 2): MultiMap(sp, 1, 2, e12),
        (0, 3): brackets.alt(MultiMap(sp, 0, 3,
                                      {((), k[0], k[2]): c
                                       for k, c in e03.items()})),
    }
    return brackets.BlockMap(sp, 3, blocks)


# ---------------------------------------------------------------------------
# semidirect sums and duals
# ---------------------------------------------------------------------------

def semidirect(module: ModuleStructure,
               name: str = "") -> AntialgebraStructure:
    """The semidirect sum a |x B: products

      (a, b).(a', b') = (a.a', rho_a b' + (-1)^{|a'||b|} rho_{a'} b).

    Requires disjoint basis labels.  The result is a valid structure exactly
    when the module axioms hold; run `check_axioms` on it to find out.
    """
    base = module.base
    clash = set(base.space.labels()) & set(module.space.labels())
    if clash:
        raise ValueError(f"algebra and module labels overlap: {sorted(map(str, clash))}")
    space = GradedSpace(base.space.even + module.space.even,
                        base.space.odd + module.space.odd)
    products: dict = {}

    def put(a, b, coeffs: Mapping):
        coeffs = {l: scalar(c) for l, c in coeffs.items() if scalar(c)}
        if coeffs:
            products[(a, b)] = coeffs

    for (a, b), coeffs in base.products.items():
        put(a, b, coeffs)
    for a in base.space.labels():
        pa = base.space.parity(a)
        for v in module.space.labels():
            pv = module.space.parity(v)
            acted = module.act(a, v)
            put(a, v, dict(acted.items()))
            sign = Fraction(-1) ** (pa * pv)
            put(v, a, {l: sign * c for l, c in acted.items()})
    # B.B = 0: omitted entries are zero
    return AntialgebraStructure(space, products,
                                name=name or f"{base.name}|x{module.name}")


def _relabelled_space(space: GradedSpace, tag) -> GradedSpace:
    return GradedSpace(tuple((tag, l) for l in space.even),
                       tuple((tag, l) for l in space.odd))


def adjoint_module(structure: AntialgebraStructure,
                   tag="ad") -> ModuleStructure:
    """The algebra acting on a relabelled copy of itself by multiplication."""
    mspace = _relabelled_space(structure.space, tag)
    action: dict = {}
    for a in structure.space.labels():
        for b in structure.space.labels():
            coeffs = {(tag, l): c for l, c in structure.mul(a, b).items()}
            if coeffs:
                action[(a, (tag, b))] = coeffs
    return ModuleStructure(structure, mspace, action,
                           name=f"ad({structure.name})")


def trivial_module(structure: AntialgebraStructure, even_labels=("triv",),
                   odd_labels=()) -> ModuleStructure:
    """A module with identically zero action."""
    mspace = GradedSpace(even_labels, odd_labels)
    return ModuleStructure(structure, mspace, {}, name="trivial")


def dual_label(label):
    return ("dual", label)


def dual_module(module: ModuleStructure) -> ModuleStructure:
    """The dual module: (rho*_a u)(b) = (-1)^{|u||a|} u(rho_a b).

    Dual basis labels carry the parity of their underlying labels.  Under the
    canonical signed identification e -> (-1)^{|e|} e** the double dual
    returns the original action.
    """
    base = module.base
    dspace = GradedSpace(tuple(dual_label(l) for l in module.space.even),
                         tuple(dual_label(l) for l in module.space.odd))
    action: dict = {}
    for a in base.space.labels():
        pa = base.space.parity(a)
        for l in module.space.labels():
            pl = module.space.parity(l)
            sign = Fraction(-1) ** (pl * pa)
            coeffs: dict = {}
            for k in module.space.labels():
                c = module.act(a, k).coeff(l)
                if c:
                    coeffs[dual_label(k)] = sign * c
            if coeffs:
                action[(a, dual_label(l))] = coeffs
    return ModuleStructure(base, dspace, action,
                           name=f"dual({module.name})")
