"""The coboundary operator, its complex, and the attached solvers."""

import itertools
import random
from fractions import Fraction
from pathlib import Path

import pytest

from antalg import linalg, zoo
from antalg.antialgebra import (
    AntialgebraStructure,
    adjoint_module,
    dual_module,
    semidirect,
    trivial_module,
)
from antalg.cohomology import (
    COMPONENTS,
    Cochain,
    CochainBasis,
    apply_delta,
    apply_delta_component,
    assemble_complex,
    cohomology_dims,
    delta_instance,
    delta_via_bracket,
    derivation_space,
    extension_from_cocycle,
    kernel_of_delta1,
    random_cochain,
    solve_coboundary,
    _delta_matrix,
)
from antalg.core import Vector, parse_algebra_text
from antalg.zoo import DictVec, WindowCochain

F = Fraction

DATA = Path(__file__).resolve().parents[1] / "src" / "antalg" / "data"
K3 = AntialgebraStructure.from_file_doc(
    parse_algebra_text((DATA / "k3.alg").read_text()))
ADJ = adjoint_module(K3)
TRIV = trivial_module(K3)


# ---------------------------------------------------------------------------
# cochains
# ---------------------------------------------------------------------------

def test_cochain_validation():
    with pytest.raises(ValueError):
        Cochain(K3, ADJ, 0, {})
    with pytest.raises(ValueError):
        # odd arguments must be strictly increasing
        Cochain(K3, ADJ, 2, {(0, 2): {((), ("b", "a")): {("ad", "eps"): F(1)}}})
    with pytest.raises(ValueError):
        # a q=1 block must take odd values
        Cochain(K3, ADJ, 2, {(1, 1): {(("eps",), ("a",)): {("ad", "eps"): F(1)}}})


def test_random_cochain_reproducibility():
    a = random_cochain(K3, ADJ, 2, random.Random(17))
    b = random_cochain(K3, ADJ, 2, random.Random(17))
    c = random_cochain(K3, ADJ, 2, random.Random(18))
    assert a == b
    assert a != c


# ---------------------------------------------------------------------------
# one operator, three routes
# ---------------------------------------------------------------------------

def _modules():
    return (TRIV, ADJ, dual_module(ADJ))


def test_apply_delta_agrees_with_matrix_action():
    rng = random.Random(23)
    for mod in _modules():
        for degree in (1, 2, 3):
            mat = _delta_matrix(K3, mod, degree)
            for _ in range(4):
                c = random_cochain(K3, mod, degree, rng)
                image = apply_delta(c)
                vec = linalg.mat_vec(mat.full, mat.source.coeff_vector(c))
                assert mat.target.coeff_vector(image) == vec


def test_apply_delta_agrees_with_the_bracket_route():
    rng = random.Random(24)
    for mod in _modules():
        for degree in (1, 2, 3):
            for _ in range(4):
                c = random_cochain(K3, mod, degree, rng)
                assert apply_delta(c) == delta_via_bracket(c)


def test_delta_splits_into_the_three_components():
    rng = random.Random(25)
    for mod in _modules():
        for degree in (1, 2):
            for _ in range(4):
                c = random_cochain(K3, mod, degree, rng)
                total = None
                for comp in COMPONENTS:
                    part = apply_delta_component(c, comp)
                    total = part if total is None else total.add(part)
                assert total == apply_delta(c)


def test_full_delta_matrix_is_the_sum_of_component_matrices():
    mat = _delta_matrix(K3, ADJ, 2)
    n, m = mat.target.dim, mat.source.dim
    summed = linalg.mat_zero(n, m)
    for comp in COMPONENTS:
        block = mat.comp[comp]
        for i in range(n):
            for j in range(m):
                summed[i][j] += block[i][j]
    assert summed == mat.full


# ---------------------------------------------------------------------------
# the complex and its bidegree structure
# ---------------------------------------------------------------------------

# composites grouped by total bidegree shift; each group must cancel on its
# own because the shifts land in different blocks of the target
COMPOSITE_GROUPS = {
    (2, 0): [((1, 0), (1, 0))],
    (1, 1): [((0, 1), (1, 0)), ((1, 0), (0, 1))],
    (0, 2): [((0, 1), (0, 1)), ((-1, 2), (1, 0)), ((1, 0), (-1, 2))],
    (-1, 3): [((0, 1), (-1, 2)), ((-1, 2), (0, 1))],
    (-2, 4): [((-1, 2), (-1, 2))],
}


def test_component_composites_cancel_groupwise():
    rng = random.Random(31)
    for mod in (TRIV, ADJ):
        for degree in (1, 2):
            for _ in range(3):
                c = random_cochain(K3, mod, degree, rng)
                for pairs in COMPOSITE_GROUPS.values():
                    total = None
                    for inner, outer in pairs:
                        part = apply_delta_component(
                            apply_delta_component(c, inner), outer)
                        total = part if total is None else total.add(part)
                    assert total.is_zero()


def test_assemble_complex_verifies_square_zero():
    for mod in _modules():
        mats = assemble_complex(K3, mod, 4, verify=True)
        for cur, nxt in zip(mats, mats[1:]):
            assert linalg.mat_is_zero(linalg.mat_mul(nxt.full, cur.full))


def test_cohomology_dimension_tables():
    assert cohomology_dims(K3, TRIV, 4) == [
        (1, 1, 1, 0), (2, 2, 1, 0), (3, 2, 1, 0), (4, 2, 1, 0)]
    adj_dims = [(1, 5, 2, 3), (2, 6, 4, 0), (3, 6, 2, 0), (4, 6, 4, 0)]
    assert cohomology_dims(K3, ADJ, 4) == adj_dims
    assert cohomology_dims(K3, dual_module(ADJ), 4) == adj_dims


# ---------------------------------------------------------------------------
# degree one: derivations
# ---------------------------------------------------------------------------

def _is_module_derivation(c, alg, mod):
    def c_of(vec):
        out = Vector.zero(mod.space)
        for l, co in vec.items():
            if alg.space.parity(l) == 0:
                out = out.add(c.value(1, 0, (l,), ()).scale(co))
            else:
                out = out.add(c.value(0, 1, (), (l,)).scale(co))
        return out

    for u in alg.space.labels():
        for v in alg.space.labels():
            sign = F(-1) ** (alg.space.parity(u) * alg.space.parity(v))
            res = c_of(alg.mul(u, v))
            res = res.sub(mod.act_vec(Vector.basis(alg.space, u),
                                      c_of(Vector.basis(alg.space, v))))
            res = res.sub(mod.act_vec(Vector.basis(alg.space, v),
                                      c_of(Vector.basis(alg.space, u)))
                          .scale(sign))
            if not res.is_zero():
                return False
    return True


def test_derivations_coincide_with_the_degree_one_kernel():
    der = derivation_space(K3, ADJ)
    ker = kernel_of_delta1(K3, ADJ)
    assert len(der["coeff_basis"]) == 3
    assert len(ker["coeff_basis"]) == 3
    assert der["rref"] == ker["rref"]
    for c in der["basis"]:
        assert _is_module_derivation(c, K3, ADJ)
    for c in ker["basis"]:
        assert _is_module_derivation(c, K3, ADJ)
        assert apply_delta(c).is_zero()


# ---------------------------------------------------------------------------
# extensions by 2-cochains: the report kernel vs the cocycle kernel
# ---------------------------------------------------------------------------

def _extension_residual_matrix(basis):
    """The extension axiom residuals as a linear map of the cochain."""
    cols, keys = [], set()
    for i in range(basis.dim):
        unit = [F(0)] * basis.dim
        unit[i] = F(1)
        _, rep = extension_from_cocycle(basis.from_coeff_vector(unit))
        col = {}
        for v in rep.violations:
            for l, val in v.residual.items():
                col[(v.kind, v.instance, l)] = val
        cols.append(col)
        keys |= set(col)
    keys = sorted(keys, key=repr)
    return [[cols[j].get(k, F(0)) for j in range(basis.dim)] for k in keys]


def test_valid_extensions_are_not_exactly_the_cocycles():
    """Both kernels are 2-dimensional but they differ: being a cocycle
    neither implies nor is implied by the extension product satisfying the
    axioms.  Witnesses in both directions, plus the exact row spaces."""
    basis = CochainBasis(K3, ADJ, 2)
    assert basis.dim == 6
    dmat = _delta_matrix(K3, ADJ, 2)
    ker_delta = linalg.nullspace(dmat.full, basis.dim)
    ker_ext = linalg.nullspace(_extension_residual_matrix(basis), basis.dim)
    assert len(ker_delta) == len(ker_ext) == 2
    r_delta, _ = linalg.rref(ker_delta)
    r_ext, _ = linalg.rref(ker_ext)
    assert r_delta == [
        [F(1), F(1), F(0), F(0), F(1), F(0)],
        [F(0), F(0), F(0), F(0), F(0), F(1)]]
    assert r_ext == [
        [F(1), F(1, 2), F(0), F(0), F(1, 2), F(0)],
        [F(0), F(0), F(0), F(0), F(0), F(1)]]
    assert linalg.rank(ker_delta + ker_ext) == 3  # they share only one line

    # a cocycle whose extension violates the axioms
    closed = basis.from_coeff_vector(r_delta[0])
    assert apply_delta(closed).is_zero()
    _, rep = extension_from_cocycle(closed)
    assert not rep.ok and len(rep.violations) == 4

    # a non-cocycle whose extension passes every axiom
    loose = basis.from_coeff_vector(r_ext[0])
    assert not apply_delta(loose).is_zero()
    _, rep = extension_from_cocycle(loose)
    assert rep.ok


def test_extension_requires_a_symmetric_even_block():
    sd = semidirect(adjoint_module(K3, tag="ad2"))
    mod = adjoint_module(sd, tag="x")
    e0, e1 = sd.space.even
    out = mod.space.odd[0]
    asym = Cochain(sd, mod, 2, {(1, 1): {}})
    assert extension_from_cocycle(asym)[1] is not None  # zero cochain is fine
    bad = Cochain(sd, mod, 2, {(2, 0): {((e0, e1), ()): {mod.space.even[0]: F(1)}}})
    with pytest.raises(ValueError):
        extension_from_cocycle(bad)


# ---------------------------------------------------------------------------
# solving for primitives
# ---------------------------------------------------------------------------

def test_solve_coboundary_round_trip():
    rng = random.Random(37)
    for mod in (ADJ, TRIV):
        for degree in (1, 2, 3):
            for _ in range(4):
                base = random_cochain(K3, mod, degree, rng)
                target = apply_delta(base)
                if target.is_zero():
                    continue
                found = solve_coboundary(target)
                assert found is not None
                assert apply_delta(found) == target


def test_solve_coboundary_edge_cases():
    # degree-one targets have no primitives at all (the complex starts at 1)
    one = random_cochain(K3, ADJ, 1, random.Random(2))
    assert solve_coboundary(one) is None
    # a non-closed cochain is never a coboundary
    rng = random.Random(3)
    while True:
        c = random_cochain(K3, ADJ, 2, rng)
        if not apply_delta(c).is_zero():
            break
    assert solve_coboundary(c) is None


# ---------------------------------------------------------------------------
# the operator on a truncated infinite family
# ---------------------------------------------------------------------------

class LazyDelta:
    """Coboundary of a windowed cochain, evaluated instance by instance;
    None marks values that the truncation cannot decide."""

    def __init__(self, ctx, base):
        self.ctx = ctx
        self.base = base
        self.degree = base.degree + 1

    def value(self, p, q, xs, ys):
        cys, sign = zoo._sort_ys(tuple(ys))
        if cys is None:
            return DictVec()
        v = delta_instance(self.ctx, self.base, p, q, tuple(xs), cys)
        if v is None:
            return None
        return v if sign == 1 else v.scale(sign)

    def eval(self, p, q, xs, ys):
        xs, ys = tuple(xs), tuple(ys)
        for i, a in enumerate(xs):
            if isinstance(a, DictVec):
                total = DictVec()
                for label, c in a.items():
                    v = self.eval(p, q, xs[:i] + (label,) + xs[i + 1:], ys)
                    if v is None:
                        return None
                    total = total.add(v.scale(c))
                return total
        for j, a in enumerate(ys):
            if isinstance(a, DictVec):
                total = DictVec()
                for label, c in a.items():
                    v = self.eval(p, q, xs, ys[:j] + (label,) + ys[j + 1:])
                    if v is None:
                        return None
                    total = total.add(v.scale(c))
                return total
        return self.value(p, q, xs, ys)


def test_windowed_adjoint_delta_squares_to_zero_where_decidable():
    ctx, w = zoo.ak1_adjoint_ctx(3)
    ident = WindowCochain(1, {
        (1, 0): {((l,), ()): DictVec({l: F(1)}) for l in w.even},
        (0, 1): {((), (l,)): DictVec({l: F(1)}) for l in w.odd},
    })
    dd = LazyDelta(ctx, LazyDelta(ctx, ident))
    decided = bad = unknown = 0
    for p, q in ((3, 0), (2, 1), (1, 2), (0, 3)):
        for xs in itertools.product(w.even, repeat=p):
            for ys in itertools.combinations(w.odd, q):
                v = dd.value(p, q, xs, ys)
                if v is None:
                    unknown += 1
                else:
                    decided += 1
                    if v.c:
                        bad += 1
    assert (decided, bad, unknown) == (370, 0, 392)
