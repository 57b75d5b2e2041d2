"""Exact scalars, graded spaces, sparse multilinear maps, parity bookkeeping,
and the structure-constant file format.

Everything is over Q: scalars are `fractions.Fraction` throughout, so all
arithmetic in the package is bit-exact.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "Scalar",
    "scalar",
    "format_scalar",
    "GradedSpace",
    "Vector",
    "MultiMap",
    "INHOMOGENEOUS",
    "parity_of",
    "is_parity_preserving",
    "AlgebraFile",
    "complete_product_table",
    "parse_algebra_text",
    "parse_algebra_file",
    "serialize_algebra",
    "ParseError",
]

# A scalar is an exact rational number.  The stdlib Fraction already keeps
# lowest terms with a positive denominator and never rounds, which is the
# whole contract; we only add parsing/printing helpers for the file format.
Scalar = Fraction


def scalar(value) -> Fraction:
    """Coerce ints, strings like '-3/4', or Fractions to an exact scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class GradedSpace:
    """A finite-dimensional Z2-graded vector space with named basis vectors.

    `even` and `odd` are ordered tuples of distinct, hashable labels.
    """

    __slots__ = ("even", "odd", "_parity", "_index")

    def __init__(self, even: Iterable, odd: Iterable):
        even = tuple(even)
        odd = tuple(odd)
        labels = even + odd
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be unique across both gradings")
        self.even = even
        self.odd = odd
        self._parity = {}
        self._index = {}
        for i, l in enumerate(even):
            self._parity[l] = 0
            self._index[l] = i
        for i, l in enumerate(odd):
            self._parity[l] = 1
            self._index[l] = i

    @property
    def dim0(self) -> int:
        return len(self.even)

    @property
    def dim1(self) -> int:
        return len(self.odd)

    def parity(self, label) -> int:
        """Algebra grading of a basis label: 0 for even, 1 for odd."""
        try:
            return self._parity[label]
        except KeyError:
            raise KeyError(f"unknown basis label: {label!r}") from None

    def index(self, label) -> int:
        """Position of the label inside its grading component."""
        self.parity(label)
        return self._index[label]

    def __contains__(self, label) -> bool:
        return label in self._parity

    def labels(self):
        return self.even + self.odd

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedSpace)
            and self.even == other.even
            and self.odd == other.odd
        )

    def __hash__(self):
        return hash((self.even, self.odd))

    def __repr__(self):
        return f"GradedSpace(even={list(self.even)}, odd={list(self.odd)})"


class Vector:
    """A sparse vector: a map from basis labels to nonzero exact scalars."""

    __slots__ = ("space", "_coeffs")

    def __init__(self, space: GradedSpace, coeffs: Mapping | None = None):
        self.space = space
        store = {}
        for label, c in (coeffs or {}).items():
            if label not in space:
                raise ValueError(f"label {label!r} not in the ambient space")
            c = scalar(c)
            if c:
                store[label] = c
        self._coeffs = store

    @classmethod
    def basis(cls, space: GradedSpace, label) -> "Vector":
        return cls(space, {label: Fraction(1)})

    @classmethod
    def zero(cls, space: GradedSpace) -> "Vector":
        return cls(space, {})

    def coeff(self, label) -> Fraction:
        return self._coeffs.get(label, Fraction(0))

    def items(self):
        return self._coeffs.items()

    def support(self):
        return set(self._coeffs)

    def gradings(self) -> set:
        """The set of gradings (0/1) met by the support."""
        return {self.space.parity(l) for l in self._coeffs}

    def is_zero(self) -> bool:
        return not self._coeffs

    def add(self, other: "Vector") -> "Vector":
        assert self.space == other.space
        out = dict(self._coeffs)
        for l, c in other._coeffs.items():
            out[l] = out.get(l, Fraction(0)) + c
        return Vector(self.space, out)

    def sub(self, other: "Vector") -> "Vector":
        return self.add(other.scale(-1))

    def scale(self, c) -> "Vector":
        c = scalar(c)
        return Vector(self.space, {l: c * v for l, v in self._coeffs.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Vector)
            and self.space == other.space
            and self._coeffs == other._coeffs
        )

    def __repr__(self):
        if not self._coeffs:
            return "Vector(0)"
        parts = [f"{format_scalar(c)}*{l}" for l, c in sorted(
            self._coeffs.items(), key=lambda kv: str(kv[0]))]
        return "Vector(" + " + ".join(parts) + ")"


INHOMOGENEOUS = "inhomogeneous"


class MultiMap:
    """A sparse (p,q)-linear map V0^p x V1^q -> V.

    Entries are keyed by (x-multi-index, y-multi-index, output label) where
    x-multi-indices run over the even basis and y-multi-indices over the odd
    basis.  Arguments are never mixed between the gradings.
    """

    __slots__ = ("space", "p", "q", "_entries")

    def __init__(self, space: GradedSpace, p: int, q: int,
                 entries: Mapping | None = None):
        if p < 0 or q < 0:
            raise ValueError("argument counts must be non-negative")
        self.space = space
        self.p = p
        self.q = q
        store = {}
        for (xs, ys, out), c in (entries or {}).items():
            xs = tuple(xs)
            ys = tuple(ys)
            if len(xs) != p or len(ys) != q:
                raise ValueError(f"entry arity mismatch: {(xs, ys)}")
            for l in xs:
                if space.parity(l) != 0:
                    raise ValueError(f"x-argument {l!r} is not even")
            for l in ys:
                if space.parity(l) != 1:
                    raise ValueError(f"y-argument {l!r} is not odd")
            space.parity(out)  # raises on unknown label
            c = scalar(c)
            if c:
                store[(xs, ys, out)] = c
        self._entries = store

    # -- basic structure ---------------------------------------------------

    @classmethod
    def zero(cls, space: GradedSpace, p: int, q: int) -> "MultiMap":
        return cls(space, p, q)

    def entries(self):
        return self._entries.items()

    def is_zero(self) -> bool:
        return not self._entries

    def coeff(self, xs, ys, out) -> Fraction:
        return self._entries.get((tuple(xs), tuple(ys), out), Fraction(0))

    def add(self, other: "MultiMap") -> "MultiMap":
        assert (self.space, self.p, self.q) == (other.space, other.p, other.q)
        out = dict(self._entries)
        for k, c in other._entries.items():
            out[k] = out.get(k, Fraction(0)) + c
        return MultiMap(self.space, self.p, self.q, out)

    def sub(self, other: "MultiMap") -> "MultiMap":
        return self.add(other.scale(-1))

    def scale(self, c) -> "MultiMap":
        c = scalar(c)
        return MultiMap(self.space, self.p, self.q,
                        {k: c * v for k, v in self._entries.items()})

    def part(self, i: int) -> "MultiMap":
        """The homogeneous part with values in V_i (i = 0 or 1)."""
        return MultiMap(self.space, self.p, self.q,
                        {k: c for k, c in self._entries.items()
                         if self.space.parity(k[2]) == i})

    def output_gradings(self) -> set:
        return {self.space.parity(out) for (_, _, out) in self._entries}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiMap)
            and self.space == other.space
            and (self.p, self.q) == (other.p, other.q)
            and self._entries == other._entries
        )

    def __repr__(self):
        return (f"MultiMap(p={self.p}, q={self.q}, "
                f"{len(self._entries)} entries)")

    # -- evaluation --------------------------------------------------------

    def value(self, xs, ys) -> Vector:
        """Evaluate at basis labels (table lookup)."""
        xs = tuple(xs)
        ys = tuple(ys)
        out = {}
        for (exs, eys, l), c in self._entries.items():
            if exs == xs and eys == ys:
                out[l] = out.get(l, Fraction(0)) + c
        return Vector(self.space, out)

    def eval(self, xs, ys) -> Vector:
        """Multilinear evaluation.  Arguments may be basis labels or Vectors.

        Vector arguments must be supported in the correct grading component.
        """
        if len(xs) != self.p or len(ys) != self.q:
            raise ValueError(
                f"arity mismatch: expected ({self.p},{self.q}), "
                f"got ({len(xs)},{len(ys)})")
        factors = []  # per slot: list of (label, coefficient)
        for slot, grading in ((xs, 0), (ys, 1)):
            for a in slot:
                if isinstance(a, Vector):
                    bad = a.gradings() - {grading}
                    if bad:
                        raise ValueError(
                            "vector argument supported in the wrong grading "
                            "component")
                    factors.append(list(a.items()))
                else:
                    if self.space.parity(a) != grading:
                        raise ValueError(
                            f"argument {a!r} lies in the wrong grading "
                            "component")
                    factors.append([(a, Fraction(1))])
        total = Vector.zero(self.space)
        # expand multilinearly over the supports of vector arguments
        def rec(i, labels, coeff):
            nonlocal total
            if i == len(factors):
                xs_l = tuple(labels[: self.p])
                ys_l = tuple(labels[self.p:])
                v = self.value(xs_l, ys_l)
                if not v.is_zero():
                    total = total.add(v.scale(coeff))
                return
            for label, c in factors[i]:
                rec(i + 1, labels + [label], coeff * c)
        rec(0, [], Fraction(1))
        return total


def multimap_eval(phi: MultiMap, xs, ys) -> Vector:
    """Functional form of MultiMap.eval."""
    return phi.eval(xs, ys)


def parity_of(phi: MultiMap):
    """Parity of a map: p + i + 1 (mod 2) for a map valued in V_i.

    For a map with both output parts present and of different parities the
    string ``"inhomogeneous"`` is returned.  The zero map is reported with the
    parity-preserving value p + q + 1 (mod 2).
    """
    gradings = phi.output_gradings()
    if not gradings:
        return (phi.p + phi.q + 1) % 2
    parities = {(phi.p + i + 1) % 2 for i in gradings}
    if len(parities) == 1:
        return parities.pop()
    return INHOMOGENEOUS


def is_parity_preserving(phi: MultiMap) -> bool:
    """True iff the V0-part vanishes for odd q and the V1-part for even q."""
    if phi.q % 2 == 0:
        return phi.part(1).is_zero()
    return phi.part(0).is_zero()


# ---------------------------------------------------------------------------
# structure-constant files
# ---------------------------------------------------------------------------

class ParseError(ValueError):
    """Raised on malformed structure-constant input; carries a line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class AlgebraFile:
    """Parsed content of a structure-constant document.

    ``products`` maps ordered basis pairs to coefficient dicts and is already
    completed under the graded-commutativity rule
    a.b = (-1)^{|a||b|} b.a.  ``module`` is None or a triple
    (module_space, action) with ``action`` mapping (algebra label, module
    label) to coefficient dicts over the module space.
    """

    def __init__(self, name, space, products, module_space=None, action=None):
        self.name = name
        self.space = space
        self.products = products
        self.module_space = module_space
        self.action = action


_LABEL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def _check_label(tok: str, lineno: int) -> str:
    if not _LABEL_RE.match(tok):
        raise ParseError(lineno, f"invalid basis label {tok!r}")
    return tok


def _parse_expr(text: str, space: GradedSpace, lineno: int) -> dict:
    """Parse c1*l1 + c2*l2 - ... into {label: Fraction}."""
    out: dict = {}
    # split into signed terms
    terms = re.findall(r"[+-]?[^+-]+", text.replace(" ", " "))
    stripped = text.strip()
    if stripped == "0":
        return out
    for raw in terms:
        term = raw.strip()
        if not term:
            continue
        sign = Fraction(1)
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:].strip()
        if not term:
            raise ParseError(lineno, "dangling sign in expression")
        if "*" in term:
            coeff_txt, _, label = term.partition("*")
            coeff_txt = coeff_txt.strip()
            label = label.strip()
        else:
            pieces = term.split()
            if len(pieces) == 2:
                coeff_txt, label = pieces
            elif len(pieces) == 1:
                piece = pieces[0]
                if re.match(r"^\d", piece):
                    if piece.strip() in ("0",):
                        continue
                    raise ParseError(lineno, f"numeric term {piece!r} without label")
                coeff_txt, label = "1", piece
            else:
                raise ParseError(lineno, f"cannot parse term {raw.strip()!r}")
        try:
            coeff = sign * Fraction(coeff_txt)
        except (ValueError, ZeroDivisionError):
            raise ParseError(lineno, f"bad rational coefficient {coeff_txt!r}")
        if label not in space:
            raise ParseError(lineno, f"unknown label {label!r} in expression")
        if coeff:
            out[label] = out.get(label, Fraction(0)) + coeff
    return {l: c for l, c in out.items() if c}


def complete_product_table(space: GradedSpace, given: Mapping) -> dict:
    """Complete an ordered product table under a.b = (-1)^{|a||b|} b.a.

    ``given`` maps ordered pairs to coefficient dicts.  Missing mirror pairs
    are filled in with the graded-commutativity sign; conflicting explicit
    values raise ValueError.  Omitted products are zero and are not stored.
    """
    table: dict = {}
    for (a, b), coeffs in given.items():
        coeffs = {l: scalar(c) for l, c in coeffs.items() if scalar(c)}
        sign = -1 if (space.parity(a) == 1 and space.parity(b) == 1) else 1
        mirror = {l: sign * c for l, c in coeffs.items()}
        for key, val in (((a, b), coeffs), ((b, a), mirror)):
            if key in table and table[key] != val:
                raise ValueError(
                    f"conflicting product values for {key[0]!r} * {key[1]!r}")
            table[key] = val
    return {k: v for k, v in table.items() if v}


def parse_algebra_text(text: str) -> AlgebraFile:
    name = None
    even: list = []
    odd: list = []
    mod_even: list = []
    mod_odd: list = []
    product_lines = []  # (lineno, lhs_a, lhs_b, rhs_text)
    action_lines = []
    in_module = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        if head == "algebra":
            if len(toks) != 2:
                raise ParseError(lineno, "expected: algebra <name>")
            name = toks[1]
        elif head == "module":
            in_module = True
        elif head == "even":
            target = mod_even if in_module else even
            target.extend(_check_label(t, lineno) for t in toks[1:])
        elif head == "odd":
            target = mod_odd if in_module else odd
            target.extend(_check_label(t, lineno) for t in toks[1:])
        elif "=" in line:
            lhs, _, rhs = line.partition("=")
            if "*" in lhs and not in_module:
                a, _, b = lhs.partition("*")
                product_lines.append((lineno, a.strip(), b.strip(), rhs.strip()))
            elif "." in lhs and in_module:
                a, _, b = lhs.partition(".")
                action_lines.append((lineno, a.strip(), b.strip(), rhs.strip()))
            else:
                raise ParseError(lineno, f"cannot parse statement {line!r}")
        else:
            raise ParseError(lineno, f"cannot parse statement {line!r}")
    if name is None:
        raise ParseError(1, "missing 'algebra <name>' header")
    try:
        space = GradedSpace(even, odd)
    except ValueError as exc:
        raise ParseError(1, str(exc))
    raw_products: dict = {}
    for lineno, a, b, rhs in product_lines:
        if a not in space or b not in space:
            raise ParseError(lineno, f"unknown label in product {a!r} * {b!r}")
        key = (a, b)
        coeffs = _parse_expr(rhs, space, lineno)
        if key in raw_products:
            raise ParseError(lineno, f"duplicate product line for {a!r} * {b!r}")
        raw_products[key] = coeffs
    try:
        products = complete_product_table(space, raw_products)
    except ValueError as exc:
        raise ParseError(1, str(exc))
    module_space = None
    action = None
    if in_module:
        try:
            module_space = GradedSpace(mod_even, mod_odd)
        except ValueError as exc:
            raise ParseError(1, str(exc))
        action = {}
        for lineno, a, b, rhs in action_lines:
            if a not in space:
                raise ParseError(lineno, f"unknown algebra label {a!r} in action")
            if b not in module_space:
                raise ParseError(lineno, f"unknown module label {b!r} in action")
            if (a, b) in action:
                raise ParseError(lineno, f"duplicate action line for {a!r} . {b!r}")
            coeffs = _parse_expr(rhs, module_space, lineno)
            if coeffs:
                action[(a, b)] = coeffs
    return AlgebraFile(name, space, products, module_space, action)


def parse_algebra_file(path) -> AlgebraFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_algebra_text(fh.read())


def _format_expr(coeffs: Mapping) -> str:
    if not coeffs:
        return "0"
    parts = []
    for label in sorted(coeffs, key=str):
        c = coeffs[label]
        txt = label if c == 1 else f"{format_scalar(c)}*{label}"
        parts.append(txt)
    return " + ".join(parts).replace("+ -", "- ")


def serialize_algebra(doc: AlgebraFile) -> str:
    """Render an AlgebraFile back to text; rationals round-trip losslessly."""
    lines = [f"algebra {doc.name}"]
    if doc.space.even:
        lines.append("even " + " ".join(doc.space.even))
    if doc.space.odd:
        lines.append("odd " + " ".join(doc.space.odd))
    lines.append("")
    order = {l: i for i, l in enumerate(doc.space.labels())}
    seen = set()
    for (a, b) in sorted(doc.products, key=lambda ab: (order[ab[0]], order[ab[1]])):
        if (b, a) in seen:
            continue
        seen.add((a, b))
        lines.append(f"{a} * {b} = {_format_expr(doc.products[(a, b)])}")
    if doc.module_space is not None:
        lines.append("")
        lines.append("module")
        if doc.module_space.even:
            lines.append("even " + " ".join(doc.module_space.even))
        if doc.module_space.odd:
            lines.append("odd " + " ".join(doc.module_space.odd))
        morder = {l: i for i, l in enumerate(doc.module_space.labels())}
        for (a, b) in sorted(doc.action or {},
                             key=lambda ab: (order[ab[0]], morder[ab[1]])):
            lines.append(f"{a} . {b} = {_format_expr(doc.action[(a, b)])}")
    return "\n".join(lines) + "\n"
