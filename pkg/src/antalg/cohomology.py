"""The coboundary operator on parity-preserving cochains, its exact matrix
model, derivation spaces, and abelian extensions from 2-cocycles.

A k-cochain with coefficients in a module B is a sum of (p,q)-blocks,
p + q = k, each a map V0^p x V1^q -> B that is antisymmetric in the odd
arguments and valued in the module component of parity q (mod 2).  The
coboundary has three components moving a block (p,q) to (p+1,q), (p,q+1)
and (p-1,q+2); their instance formulas are implemented verbatim in
`delta10_value`, `delta01_value`, `delta_12_value`.

Products or action values that are unknown (None) -- which happens for
truncated windows of infinite-dimensional algebras -- propagate to None
results, so callers can skip exactly the undecidable instances.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from . import brackets, linalg
from .antialgebra import (AntialgebraStructure, CheckReport, ModuleStructure,
                          check_axioms, semidirect)
from .core import GradedSpace, MultiMap, Vector

__all__ = [
    "DeltaContext",
    "Cochain",
    "CochainBasis",
    "DifferentialMatrix",
    "delta_instance",
    "delta_component_value",
    "DeltaCochain",
    "apply_delta",
    "apply_delta_component",
    "delta_via_bracket",
    "assemble_complex",
    "cohomology_dims",
    "derivation_space",
    "kernel_of_delta1",
    "extension_from_cocycle",
    "solve_coboundary",
    "random_cochain",
]

COMPONENTS = ((1, 0), (0, 1), (-1, 2))


class DeltaContext:
    """Multiplication data entering the coboundary formulas.

    The three methods may return None to flag an unknown (out-of-window)
    value; for finite structures they are total.

      m_alg(a, b)      the distinguished odd element on algebra arguments:
                       half the product on even-even pairs, the product
                       otherwise; a Vector over the algebra space.
      m_x_val(x, v)    product of an even algebra element with a module
                       value: half the action on the even module component,
                       the action on the odd one.
      m_val_y(v, y)    product of a module value with an odd algebra
                       element: the action on the even component, minus the
                       action on the odd one.
    """

    def __init__(self, alg: AntialgebraStructure, mod: ModuleStructure):
        self.alg = alg
        self.mod = mod
        self.alg_space = alg.space
        self.mod_space = mod.space

    def zero(self) -> Vector:
        return Vector.zero(self.mod_space)

    def m_alg(self, a, b):
        v = self.alg.mul(a, b)
        if self.alg_space.parity(a) == 0 and self.alg_space.parity(b) == 0:
            v = v.scale(Fraction(1, 2))
        return v

    def _act_weighted(self, a, v: Vector, w0, w1):
        out = self.zero()
        for l, c in v.items():
            w = w0 if self.mod_space.parity(l) == 0 else w1
            if w:
                out = out.add(self.mod.act(a, l).scale(w * c))
        return out

    def m_x_val(self, x, v):
        if v is None:
            return None
        return self._act_weighted(x, v, Fraction(1, 2), Fraction(1))

    def m_val_y(self, v, y):
        if v is None:
            return None
        return self._act_weighted(y, v, Fraction(1), Fraction(-1))


# ---------------------------------------------------------------------------
# cochains
# ---------------------------------------------------------------------------

def _canonical_ys(space: GradedSpace, ys):
    """Sort odd labels into basis order; returns (sorted tuple, sign) or
    (None, 0) when a label repeats."""
    idx = [space.index(y) for y in ys]
    if len(set(idx)) != len(idx):
        return None, 0
    order = sorted(range(len(ys)), key=lambda t: idx[t])
    sign = brackets._perm_sign(tuple(order))
    return tuple(ys[t] for t in order), sign


class Cochain:
    """A degree-k cochain: blocks keyed (p,q), entries keyed by canonical
    argument tuples (even labels; strictly increasing odd labels)."""

    def __init__(self, alg: AntialgebraStructure, mod: ModuleStructure,
                 degree: int, blocks=None):
        if degree < 1:
            raise ValueError("cochains have degree >= 1; there is no C^0")
        self.alg = alg
        self.mod = mod
        self.degree = degree
        self._blocks: dict = {}
        for (p, q), table in (blocks or {}).items():
            if p < 0 or q < 0 or p + q != degree:
                raise ValueError(f"block ({p},{q}) does not fit degree {degree}")
            want_parity = q % 2
            clean = {}
            for (xs, ys), vec in table.items():
                xs = tuple(xs)
                ys = tuple(ys)
                for x in xs:
                    if alg.space.parity(x) != 0:
                        raise ValueError(f"x-argument {x!r} is not even")
                cys, sign = _canonical_ys(alg.space, ys)
                if cys != ys or sign != 1:
                    raise ValueError(
                        "block entries must use strictly increasing odd "
                        "arguments")
                if not isinstance(vec, Vector):
                    vec = Vector(mod.space, vec)
                bad = {l for l, _ in vec.items()
                       if mod.space.parity(l) != want_parity}
                if bad:
                    raise ValueError(
                        f"({p},{q})-block values must lie in the module "
                        f"component of parity {want_parity}")
                if not vec.is_zero():
                    clean[(xs, ys)] = vec
            if clean:
                self._blocks[(p, q)] = clean

    # structure ------------------------------------------------------------

    def shapes(self):
        return sorted(self._blocks, key=lambda pq: (-pq[0], pq[1]))

    def block(self, p, q) -> dict:
        return self._blocks.get((p, q), {})

    def is_zero(self) -> bool:
        return not self._blocks

    def scale(self, c) -> "Cochain":
        return Cochain(self.alg, self.mod, self.degree,
                       {pq: {k: v.scale(c) for k, v in tbl.items()}
                        for pq, tbl in self._blocks.items()})

    def add(self, other: "Cochain") -> "Cochain":
        assert self.degree == other.degree
        blocks: dict = {pq: dict(tbl) for pq, tbl in self._blocks.items()}
        for pq, tbl in other._blocks.items():
            mine = blocks.setdefault(pq, {})
            for k, v in tbl.items():
                mine[k] = mine[k].add(v) if k in mine else v
        return Cochain(self.alg, self.mod, self.degree, blocks)

    def sub(self, other: "Cochain") -> "Cochain":
        return self.add(other.scale(-1))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and self._blocks == other._blocks
        )

    def __repr__(self):
        sizes = {pq: len(tbl) for pq, tbl in self._blocks.items()}
        return f"Cochain(degree={self.degree}, blocks={sizes})"

    # evaluation -----------------------------------------------------------

    def value(self, p, q, xs, ys):
        """Evaluate the (p,q)-block at basis labels, resolving the odd-
        argument sign; repeated odd labels give zero."""
        table = self._blocks.get((p, q))
        if table is None:
            return Vector.zero(self.mod.space)
        cys, sign = _canonical_ys(self.alg.space, tuple(ys))
        if cys is None:
            return Vector.zero(self.mod.space)
        vec = table.get((tuple(xs), cys))
        if vec is None:
            return Vector.zero(self.mod.space)
        return vec if sign == 1 else vec.scale(sign)

    def eval(self, p, q, xs, ys):
        """Multilinear evaluation of the (p,q)-block; arguments may be
        Vectors over the algebra space (supported in the right grading)."""
        return _expand_args(self.alg.space, xs, ys,
                            lambda bxs, bys: self.value(p, q, bxs, bys),
                            Vector.zero(self.mod.space))


def _expand_args(space: GradedSpace, xs, ys, basis_fn, zero):
    """Expand Vector arguments multilinearly through basis_fn; None results
    propagate.  ``zero`` is returned when a vector argument has empty
    support."""
    xs = tuple(xs)
    ys = tuple(ys)
    for i, a in enumerate(xs):
        if isinstance(a, Vector):
            if a.gradings() - {0}:
                raise ValueError("even slot fed a vector with odd support")
            total = None
            for label, c in a.items():
                v = _expand_args(space, xs[:i] + (label,) + xs[i + 1:], ys,
                                 basis_fn, zero)
                if v is None:
                    return None
                v = v.scale(c)
                total = v if total is None else total.add(v)
            return total if total is not None else zero
    for j, a in enumerate(ys):
        if isinstance(a, Vector):
            if a.gradings() - {1}:
                raise ValueError("odd slot fed a vector with even support")
            total = None
            for label, c in a.items():
                v = _expand_args(space, xs, ys[:j] + (label,) + ys[j + 1:],
                                 basis_fn, zero)
                if v is None:
                    return None
                v = v.scale(c)
                total = v if total is None else total.add(v)
            return total if total is not None else zero
    return basis_fn(xs, ys)


# ---------------------------------------------------------------------------
# the three coboundary components, instance by instance
# ---------------------------------------------------------------------------

def delta10_value(ctx: DeltaContext, coch, p, q, xs, ys):
    """Contribution of the (p,q)-block to the (p+1,q)-block of the
    coboundary, evaluated at xs (p+1 even labels) and ys (q odd labels):

      - m(x0, c(x1..xp; ys))
      + sum_i (-1)^i c(x0.., m(xi,x_{i+1}), ..xp; ys)
      + (-1)^p m(c(x0..x_{p-1}), xp)                        if q = 0
      + (1/q) sum_j (-1)^{p+j} c(x0..x_{p-1}; m(xp,yj), ys\\yj)   if q > 0
    """
    inner = coch.eval(p, q, xs[1:], ys)
    if inner is None:
        return None
    total = ctx.m_x_val(xs[0], inner)
    if total is None:
        return None
    total = total.scale(-1)
    for i in range(p):
        prod = ctx.m_alg(xs[i], xs[i + 1])
        if prod is None:
            return None
        v = coch.eval(p, q, xs[:i] + (prod,) + xs[i + 2:], ys)
        if v is None:
            return None
        total = total.add(v.scale(Fraction(-1) ** i))
    if q == 0:
        inner = coch.eval(p, q, xs[:p], ())
        if inner is None:
            return None
        v = ctx.m_x_val(xs[p], inner)
        if v is None:
            return None
        total = total.add(v.scale(Fraction(-1) ** p))
    else:
        for j in range(q):
            prod = ctx.m_alg(xs[p], ys[j])
            if prod is None:
                return None
            v = coch.eval(p, q, xs[:p], (prod,) + ys[:j] + ys[j + 1:])
            if v is None:
                return None
            total = total.add(
                v.scale(Fraction(-1) ** (p + j) * Fraction(1, q)))
    return total


def delta01_value(ctx: DeltaContext, coch, p, q, xs, ys):
    """Contribution of the (p,q)-block to the (p,q+1)-block, at xs (p even
    labels) and ys (q+1 odd labels):

      (2/(q+1)) sum_j (-1)^j     m(c(ys\\yj), yj)        if p = 0, q odd
      (1/(q+1)) sum_j (-1)^{p+j} m(c(xs; ys\\yj), yj)    otherwise
    """
    total = ctx.zero()
    special = (p == 0 and q % 2 == 1)
    norm = Fraction(2 if special else 1, q + 1)
    for j in range(q + 1):
        inner = coch.eval(p, q, xs, ys[:j] + ys[j + 1:])
        if inner is None:
            return None
        v = ctx.m_val_y(inner, ys[j])
        if v is None:
            return None
        sign = Fraction(-1) ** (j if special else p + j)
        total = total.add(v.scale(sign * norm))
    return total


def delta_12_value(ctx: DeltaContext, coch, p, q, xs, ys):
    """Contribution of the (p,q)-block, p >= 1, to the (p-1,q+2)-block, at
    xs (p-1 even labels) and ys (q+2 odd labels):

      (2/((q+1)(q+2))) sum_{i<j} (-1)^{p+i+j}
                       c(xs, m(yi,yj); ys\\{yi,yj})
    """
    if p < 1:
        return ctx.zero()
    total = ctx.zero()
    norm = Fraction(2, (q + 1) * (q + 2))
    for i in range(q + 2):
        for j in range(i + 1, q + 2):
            prod = ctx.m_alg(ys[i], ys[j])
            if prod is None:
                return None
            rest = tuple(y for t, y in enumerate(ys) if t not in (i, j))
            v = coch.eval(p, q, xs + (prod,), rest)
            if v is None:
                return None
            total = total.add(v.scale(Fraction(-1) ** (p + i + j) * norm))
    return total


def delta_component_value(ctx, coch, comp, P, Q, xs, ys):
    """The comp-component contribution to block (P,Q) of the coboundary."""
    dp, dq = comp
    p, q = P - dp, Q - dq
    if p < 0 or q < 0:
        return ctx.zero()
    if comp == (1, 0):
        return delta10_value(ctx, coch, p, q, xs, ys)
    if comp == (0, 1):
        return delta01_value(ctx, coch, p, q, xs, ys)
    if comp == (-1, 2):
        return delta_12_value(ctx, coch, p, q, xs, ys)
    raise ValueError(f"unknown component {comp}")


def delta_instance(ctx, coch, P, Q, xs, ys, components=COMPONENTS):
    """Value of the chosen components of the coboundary at one basis
    instance of the target block (P,Q); None if any ingredient is unknown."""
    total = ctx.zero()
    for comp in components:
        v = delta_component_value(ctx, coch, comp, P, Q, xs, ys)
        if v is None:
            return None
        total = total.add(v)
    return total


class DeltaCochain:
    """The coboundary of a cochain as a lazily evaluated cochain: usable with
    windowed contexts where materialising every entry is impossible."""

    def __init__(self, ctx, base, components=COMPONENTS):
        self.ctx = ctx
        self.base = base
        self.components = components
        self.degree = base.degree + 1
        shapes = set()
        for (p, q) in base.shapes():
            for (dp, dq) in components:
                if p + dp >= 0:
                    shapes.add((p + dp, q + dq))
        self._shapes = sorted(shapes, key=lambda pq: (-pq[0], pq[1]))

    def shapes(self):
        return self._shapes

    def value(self, p, q, xs, ys):
        cys, sign = _canonical_ys(self.ctx.alg_space, tuple(ys))
        if cys is None:
            return self.ctx.zero()
        v = delta_instance(self.ctx, self.base, p, q, tuple(xs), cys,
                          self.components)
        if v is None:
            return None
        return v if sign == 1 else v.scale(sign)

    def eval(self, p, q, xs, ys):
        return _expand_args(self.ctx.alg_space, xs, ys,
                            lambda bxs, bys: self.value(p, q, bxs, bys),
                            self.ctx.zero())


def _target_shapes(degree: int, dim1: int):
    return [(p, degree - p) for p in range(degree, -1, -1)
            if degree - p <= dim1]


def apply_delta(coch: Cochain) -> Cochain:
    """The full coboundary of a finite-structure cochain."""
    ctx = DeltaContext(coch.alg, coch.mod)
    return _materialise_delta(ctx, coch, COMPONENTS)


def apply_delta_component(coch: Cochain, comp) -> Cochain:
    ctx = DeltaContext(coch.alg, coch.mod)
    return _materialise_delta(ctx, coch, (comp,))


def _materialise_delta(ctx, coch, components) -> Cochain:
    sp = ctx.alg_space
    degree = coch.degree + 1
    blocks: dict = {}
    for (P, Q) in _target_shapes(degree, sp.dim1):
        table = {}
        for xs in itertools.product(sp.even, repeat=P):
            for ys in itertools.combinations(sp.odd, Q):
                v = delta_instance(ctx, coch, P, Q, xs, ys, components)
                assert v is not None, "finite structures cannot be unknown"
                if not v.is_zero():
                    table[(xs, ys)] = v
        if table:
            blocks[(P, Q)] = table
    return Cochain(coch.alg, coch.mod, degree, blocks)


# ---------------------------------------------------------------------------
# the independent route: alternated adjoint action of m on the semidirect sum
# ---------------------------------------------------------------------------

def delta_via_bracket(coch: Cochain) -> Cochain:
    """Compute the coboundary as Alt [m, c] on the semidirect sum, with the
    bracket engine, then restrict to algebra arguments.

    This shares no formula code with `apply_delta`; agreement of the two is
    the structural consistency check for the operator.
    """
    s = semidirect(coch.mod)
    m_bm = s.m_blocks()
    # embed the cochain: extension by zero, with the odd-argument
    # antisymmetry written out entry by entry
    sp = s.space
    blocks: dict = {}
    for (p, q) in coch.shapes():
        entries: dict = {}
        for (xs, ys), vec in coch.block(p, q).items():
            for perm in itertools.permutations(range(q)):
                sign = brackets._perm_sign(perm)
                pys = tuple(ys[t] for t in perm)
                for out, c in vec.items():
                    entries[(xs, pys, out)] = sign * c
        if entries:
            blocks[(p, q)] = MultiMap(sp, p, q, entries)
    phi_bm = brackets.BlockMap(sp, coch.degree, blocks)
    result = brackets.al_bracket_blocks(m_bm, phi_bm)
    # restrict to entries whose arguments all lie in the algebra
    alg_labels = set(coch.alg.space.labels())
    mod_labels = set(coch.mod.space.labels())
    degree = coch.degree + 1
    out_blocks: dict = {}
    for (p, q), mm in result.items():
        table: dict = {}
        for (xs, ys, out), c in mm.entries():
            if not all(l in alg_labels for l in xs + ys):
                continue
            assert out in mod_labels, "algebra-argument entries must be module-valued"
            cys, sign = _canonical_ys(coch.alg.space, ys)
            if cys != ys:
                continue  # keep one representative per orbit
            key = (xs, ys)
            prev = table.get(key, {})
            prev[out] = prev.get(out, Fraction(0)) + c
            table[key] = prev
        cleaned = {k: Vector(coch.mod.space, v) for k, v in table.items()}
        cleaned = {k: v for k, v in cleaned.items() if not v.is_zero()}
        if cleaned:
            out_blocks[(p, q)] = cleaned
    return Cochain(coch.alg, coch.mod, degree, out_blocks)


# ---------------------------------------------------------------------------
# bases and matrices
# ---------------------------------------------------------------------------

class CochainBasis:
    """The ordered basis of C^k: blocks in decreasing p, x-tuples in
    lexicographic basis order, odd tuples as increasing combinations, output
    labels in module order."""

    def __init__(self, alg: AntialgebraStructure, mod: ModuleStructure,
                 degree: int):
        if degree < 1:
            raise ValueError("cochain bases start at degree 1")
        self.alg = alg
        self.mod = mod
        self.degree = degree
        self.keys = []  # (p, q, xs, ys, out)
        sp = alg.space
        for (p, q) in _target_shapes(degree, sp.dim1):
            outs = mod.space.even if q % 2 == 0 else mod.space.odd
            for xs in itertools.product(sp.even, repeat=p):
                for ys in itertools.combinations(sp.odd, q):
                    for out in outs:
                        self.keys.append((p, q, xs, ys, out))
        self._index = {k: i for i, k in enumerate(self.keys)}

    @property
    def dim(self) -> int:
        return len(self.keys)

    def block_dim(self, p, q) -> int:
        sp = self.alg.space
        outs = self.mod.space.even if q % 2 == 0 else self.mod.space.odd
        return sp.dim0 ** p * comb(sp.dim1, q) * len(outs)

    def index(self, key) -> int:
        return self._index[key]

    def unit(self, key) -> Cochain:
        p, q, xs, ys, out = key
        vec = Vector.basis(self.mod.space, out)
        return Cochain(self.alg, self.mod, self.degree,
                       {(p, q): {(xs, ys): vec}})

    def coeff_vector(self, coch: Cochain) -> list:
        vec = [Fraction(0)] * self.dim
        for (p, q) in coch.shapes():
            for (xs, ys), val in coch.block(p, q).items():
                for out, c in val.items():
                    vec[self._index[(p, q, xs, ys, out)]] = c
        return vec

    def from_coeff_vector(self, vec) -> Cochain:
        blocks: dict = {}
        for c, key in zip(vec, self.keys):
            if not c:
                continue
            p, q, xs, ys, out = key
            tbl = blocks.setdefault((p, q), {})
            entry = tbl.setdefault((xs, ys), {})
            entry[out] = c
        return Cochain(self.alg, self.mod, self.degree,
                       {pq: {k: Vector(self.mod.space, v)
                             for k, v in tbl.items()}
                        for pq, tbl in blocks.items()})


class DifferentialMatrix:
    """delta^k : C^k -> C^{k+1} with its three component matrices."""

    def __init__(self, k, source: CochainBasis, target: CochainBasis,
                 comp: dict):
        self.k = k
        self.source = source
        self.target = target
        self.comp = comp
        n, m = target.dim, source.dim
        full = linalg.mat_zero(n, m)
        for mat in comp.values():
            for i in range(n):
                for j in range(m):
                    full[i][j] += mat[i][j]
        self.full = full

    def __repr__(self):
        return (f"DifferentialMatrix(k={self.k}, "
                f"{self.target.dim}x{self.source.dim})")


def _delta_matrix(alg, mod, k) -> DifferentialMatrix:
    source = CochainBasis(alg, mod, k)
    target = CochainBasis(alg, mod, k + 1)
    comp = {}
    for component in COMPONENTS:
        mat = linalg.mat_zero(target.dim, source.dim)
        for j, key in enumerate(source.keys):
            image = apply_delta_component(source.unit(key), component)
            for c, i in zip(target.coeff_vector(image), range(target.dim)):
                if c:
                    mat[i][j] = c
        comp[component] = mat
    return DifferentialMatrix(k, source, target, comp)


def assemble_complex(alg, mod, kmax, verify=True) -> list:
    """Matrices of delta^k for k = 1..kmax.  With ``verify`` the square-zero
    law, its five component identities, and (for trivial coefficients) the
    bicomplex relations are asserted exactly."""
    mats = [_delta_matrix(alg, mod, k) for k in range(1, kmax + 1)]
    if verify:
        verify_complex(mats, trivial=not mod.action)
    return mats


def verify_complex(mats, trivial=False) -> None:
    for cur, nxt in zip(mats, mats[1:]):
        assert linalg.mat_is_zero(linalg.mat_mul(nxt.full, cur.full)), (
            f"delta^{nxt.k} after delta^{cur.k} is nonzero")
        d10a, d01a, dm12a = (cur.comp[c] for c in COMPONENTS)
        d10b, d01b, dm12b = (nxt.comp[c] for c in COMPONENTS)
        mul = linalg.mat_mul

        def add(a, b):
            return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

        checks = [
            ("d10.d10", mul(d10b, d10a)),
            ("d10.d01+d01.d10", add(mul(d10b, d01a), mul(d01b, d10a))),
            ("d01.d01+d10.d-12+d-12.d10",
             add(add(mul(d01b, d01a), mul(d10b, dm12a)), mul(dm12b, d10a))),
            ("d01.d-12+d-12.d01", add(mul(d01b, dm12a), mul(dm12b, d01a))),
            ("d-12.d-12", mul(dm12b, dm12a)),
        ]
        for name, mat in checks:
            assert linalg.mat_is_zero(mat), (
                f"component identity {name} fails at k={cur.k}")
        if trivial:
            assert linalg.mat_is_zero(cur.comp[(0, 1)]), (
                "trivial coefficients must kill the (0,1)-component")
            assert linalg.mat_is_zero(
                add(mul(d10b, dm12a), mul(dm12b, d10a))), (
                "bicomplex anticommutator fails with trivial coefficients")
    if trivial and mats:
        assert linalg.mat_is_zero(mats[-1].comp[(0, 1)])


def cohomology_dims(alg, mod, kmax) -> list:
    """[(k, dim C^k, rank delta^k, dim H^k)] for k = 1..kmax.

    H^1 is the full kernel of delta^1 (the complex starts at C^1)."""
    mats = assemble_complex(alg, mod, kmax)
    out = []
    prev_rank = 0
    for mat in mats:
        dim = mat.source.dim
        r = linalg.rank(mat.full)
        h = (dim - r) - prev_rank
        out.append((mat.k, dim, r, h))
        prev_rank = r
    return out


# ---------------------------------------------------------------------------
# derivations
# ---------------------------------------------------------------------------

def derivation_space(alg: AntialgebraStructure, mod: ModuleStructure) -> dict:
    """Parity-preserving module-valued derivations:

      c(u.v) = rho_u c(v) + (-1)^{|u||v|} rho_v c(u)

    over all ordered basis pairs.  Returns the solution space as 1-cochains
    plus the canonical (RREF) coefficient matrix of the space.
    """
    basis = CochainBasis(alg, mod, 1)
    rows = []
    sp = alg.space
    for u in sp.labels():
        for v in sp.labels():
            pu, pv = sp.parity(u), sp.parity(v)
            sign = Fraction(-1) ** (pu * pv)
            for out in mod.space.labels():
                row = [Fraction(0)] * basis.dim
                for j, key in enumerate(basis.keys):
                    c = basis.unit(key)
                    val = _derivation_residual(alg, mod, c, u, v, sign)
                    row[j] = val.coeff(out)
                rows.append(row)
    kernel = linalg.nullspace(rows, basis.dim)
    rref_mat, _ = linalg.rref(kernel) if kernel else ([], [])
    return {
        "basis": [basis.from_coeff_vector(v) for v in kernel],
        "coeff_basis": kernel,
        "rref": rref_mat,
        "cochain_basis": basis,
    }


def _derivation_residual(alg, mod, c: Cochain, u, v, sign) -> Vector:
    def c_of(label_or_vec):
        # evaluate the 1-cochain on an algebra vector, block by parity
        if isinstance(label_or_vec, Vector):
            out = Vector.zero(mod.space)
            for l, co in label_or_vec.items():
                out = out.add(c_of(l).scale(co))
            return out
        l = label_or_vec
        if alg.space.parity(l) == 0:
            return c.value(1, 0, (l,), ())
        return c.value(0, 1, (), (l,))
    res = c_of(alg.mul(u, v))
    res = res.sub(mod.act_vec(Vector.basis(alg.space, u), c_of(v)))
    res = res.sub(mod.act_vec(Vector.basis(alg.space, v), c_of(u)).scale(sign))
    return res


def kernel_of_delta1(alg, mod) -> dict:
    """ker delta^1 in the same canonical form as `derivation_space`."""
    mat = _delta_matrix(alg, mod, 1)
    kernel = linalg.nullspace(mat.full, mat.source.dim)
    rref_mat, _ = linalg.rref(kernel) if kernel else ([], [])
    return {
        "basis": [mat.source.from_coeff_vector(v) for v in kernel],
        "coeff_basis": kernel,
        "rref": rref_mat,
        "cochain_basis": mat.source,
    }


# ---------------------------------------------------------------------------
# extensions by 2-cocycles
# ---------------------------------------------------------------------------

def extension_from_cocycle(coch: Cochain, name: str = "") -> tuple:
    """The abelian extension attached to a 2-cochain c:

      (a, b) . (a', b') = (a.a', rho_a b' + (-1)^{|a'||b|} rho_{a'} b
                                  + c(a, a'))

    Returns (structure, validity report); the report collects every
    identity violation of the extended product table.  Validity is close
    to, but not identical with, closedness of c: per instance the
    coboundary value differs from the corresponding residual by terms that
    feed the even-even block of c through the action (so the two kernels
    agree except across that block).  The even-even block of c must be
    symmetric, otherwise the product cannot be graded-commutative.
    """
    if coch.degree != 2:
        raise ValueError("extensions need a 2-cochain")
    alg, mod = coch.alg, coch.mod
    for (xs, ys), vec in coch.block(2, 0).items():
        if coch.value(2, 0, (xs[1], xs[0]), ()) != vec:
            raise ValueError("the even-even block of the cocycle must be "
                             "symmetric")
    base = semidirect(mod, name=name or "extension")
    products = base.product_map()

    def correct(a, b, vec: Vector):
        if vec.is_zero():
            return
        tbl = products.setdefault((a, b), {})
        for l, c in vec.items():
            tbl[l] = tbl.get(l, Fraction(0)) + c
            if not tbl[l]:
                del tbl[l]

    sp = alg.space
    for x1 in sp.even:
        for x2 in sp.even:
            correct(x1, x2, coch.value(2, 0, (x1, x2), ()))
    for x in sp.even:
        for y in sp.odd:
            v = coch.value(1, 1, (x,), (y,))
            correct(x, y, v)
            correct(y, x, v)  # mixed pairs are symmetric
    for y1 in sp.odd:
        for y2 in sp.odd:
            correct(y1, y2, coch.value(0, 2, (), (y1, y2)))
    products = {k: v for k, v in products.items() if v}
    structure = AntialgebraStructure(base.space, products,
                                     name=name or "extension")
    report = check_axioms(structure.space, structure.product_map(),
                          title=f"extension[{structure.name}]")
    return structure, report


def solve_coboundary(coch: Cochain):
    """A cochain L with delta L = coch, or None if there is none."""
    if coch.degree == 1:
        return None  # C^0 is empty: only the zero 1-cochain is a coboundary
    mat = _delta_matrix(coch.alg, coch.mod, coch.degree - 1)
    rhs = mat.target.coeff_vector(coch)
    sol = linalg.solve(mat.full, rhs)
    if sol is None:
        return None
    return mat.source.from_coeff_vector(sol)


def random_cochain(alg, mod, degree, rng, density=0.5, bound=9) -> Cochain:
    """A random cochain with exact small-rational coefficients."""
    basis = CochainBasis(alg, mod, degree)
    vec = []
    for _ in range(basis.dim):
        if rng.random() < density:
            num = rng.randint(-bound, bound)
            den = rng.randint(1, 4)
            vec.append(Fraction(num, den))
        else:
            vec.append(Fraction(0))
    return basis.from_coeff_vector(vec)
