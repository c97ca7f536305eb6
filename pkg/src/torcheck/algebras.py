"""Finite-dimensional local algebras given by structure constants, and their
finitely generated modules realized as vector spaces with one action operator
per algebra basis element.

Algebras here are commutative, associative, unital and local with residue
field K: basis element 0 is the unit, the remaining basis elements span the
Jacobson radical, and the radical is nilpotent.  All of this is brute-force
checked at construction (dimensions never exceed a handful), which turns the
type invariants into runtime guarantees.  The length of a module over such an
algebra equals its K-dimension, because the only simple module is the
1-dimensional residue field.
"""

from __future__ import annotations

from .linalg import Matrix, ShapeError, same_span, subspace_leq


class ArtinAlgebra:
    """Commutative local K-algebra with unit basis element 0.

    ``mult[i][j]`` is the coordinate vector of the product of basis elements
    i and j.  ``radical_indices`` must list every non-unit basis index: the
    quotient by the radical is the 1-dimensional residue field.
    """

    def __init__(self, field, basis_names, mult, radical_indices):
        basis_names = tuple(basis_names)
        n = len(basis_names)
        if n == 0 or basis_names[0] != "1":
            raise ValueError("basis must start with the unit element named '1'")
        if len(set(basis_names)) != n:
            raise ValueError("duplicate basis names")
        table = tuple(
            tuple(tuple(field.normalize(c) for c in mult[i][j]) for j in range(n))
            for i in range(n)
        )
        for i in range(n):
            for j in range(n):
                if len(table[i][j]) != n:
                    raise ValueError("structure constant vector of wrong length")
        self.field = field
        self.dim = n
        self.basis_names = basis_names
        self.mult = table
        self.radical_indices = tuple(sorted(radical_indices))
        self._validate()

    def _validate(self):
        f, n = self.field, self.dim
        unit = tuple(
            tuple(f.one() if k == j else f.zero() for k in range(n)) for j in range(n)
        )
        for j in range(n):
            if self.mult[0][j] != unit[j] or self.mult[j][0] != unit[j]:
                raise ValueError("basis element 0 is not a two-sided unit")
        for i in range(n):
            for j in range(i + 1, n):
                if self.mult[i][j] != self.mult[j][i]:
                    raise ValueError("multiplication is not commutative at (%d, %d)" % (i, j))
        # associativity on all basis triples
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = self._combine(self.mult[i][j], k, left=True)
                    rhs = self._combine(self.mult[j][k], i, left=False)
                    if lhs != rhs:
                        raise ValueError(
                            "multiplication is not associative at (%d, %d, %d)" % (i, j, k)
                        )
        if self.radical_indices != tuple(range(1, n)):
            raise ValueError(
                "algebra must be local with 1-dimensional residue field: "
                "radical must be spanned by every non-unit basis element"
            )
        # radical is an ideal: products never re-enter the span of the unit
        for i in range(n):
            for r in self.radical_indices:
                if not f.is_zero(self.mult[i][r][0]):
                    raise ValueError("radical span is not an ideal")
        # radical is nilpotent: iterated products shrink to zero
        span = Matrix.from_cols(
            f,
            [[f.one() if k == r else f.zero() for k in range(n)] for r in self.radical_indices],
            nrows=n,
        )
        for _ in range(n + 1):
            if span.ncols == 0:
                break
            cols = []
            for r in self.radical_indices:
                prod = self.left_mult_matrix(r) @ span
                cols.extend(prod.columns())
            span = Matrix.from_cols(f, cols, nrows=n).image_basis()
        else:
            raise ValueError("radical is not nilpotent")

    def _combine(self, coords, idx, left):
        # coords . (e_* e_idx)  or  e_idx . (e_* coords)
        f, n = self.field, self.dim
        acc = [f.zero()] * n
        for m in range(n):
            c = coords[m]
            if f.is_zero(c):
                continue
            prod = self.mult[m][idx] if left else self.mult[idx][m]
            for k in range(n):
                acc[k] = f.add(acc[k], f.mul(c, prod[k]))
        return tuple(acc)

    # -- elements -------------------------------------------------------

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, coords)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, [self.field.zero()] * self.dim)

    def one(self) -> "AlgebraElement":
        coords = [self.field.zero()] * self.dim
        coords[0] = self.field.one()
        return AlgebraElement(self, coords)

    def basis_element(self, i) -> "AlgebraElement":
        coords = [self.field.zero()] * self.dim
        coords[i] = self.field.one()
        return AlgebraElement(self, coords)

    def generator(self, name) -> "AlgebraElement":
        return self.basis_element(self.basis_names.index(name))

    def left_mult_matrix(self, i) -> Matrix:
        """Matrix of multiplication by basis element i on the algebra itself."""
        cols = [self.mult[i][j] for j in range(self.dim)]
        return Matrix.from_cols(self.field, cols, nrows=self.dim)

    def __eq__(self, other):
        return (
            isinstance(other, ArtinAlgebra)
            and self.field == other.field
            and self.basis_names == other.basis_names
            and self.mult == other.mult
        )

    def __hash__(self):
        return hash((self.field, self.basis_names))

    def __repr__(self):
        return "ArtinAlgebra(%s over %r)" % (", ".join(self.basis_names), self.field)


class AlgebraElement:
    """Element of an :class:`ArtinAlgebra`, stored as a coordinate vector."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        coords = tuple(algebra.field.normalize(c) for c in coords)
        if len(coords) != algebra.dim:
            raise ValueError("coordinate vector of wrong length")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    def _check(self, other):
        if self.algebra != other.algebra:
            raise ValueError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        f = self.algebra.field
        return AlgebraElement(self.algebra, [f.add(a, b) for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        f = self.algebra.field
        return AlgebraElement(self.algebra, [f.neg(a) for a in self.coords])

    def __mul__(self, other):
        f = self.algebra.field
        if not isinstance(other, AlgebraElement):
            c = f.normalize(other)
            return AlgebraElement(self.algebra, [f.mul(c, a) for a in self.coords])
        self._check(other)
        n = self.algebra.dim
        acc = [f.zero()] * n
        for i, a in enumerate(self.coords):
            if f.is_zero(a):
                continue
            for j, b in enumerate(other.coords):
                if f.is_zero(b):
                    continue
                ab = f.mul(a, b)
                for k, c in enumerate(self.algebra.mult[i][j]):
                    acc[k] = f.add(acc[k], f.mul(ab, c))
        return AlgebraElement(self.algebra, acc)

    __rmul__ = __mul__

    def __pow__(self, exp):
        if not isinstance(exp, int) or exp < 0:
            raise ValueError("exponent must be a non-negative integer")
        out = self.algebra.one()
        for _ in range(exp):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.algebra == other.algebra
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        f = self.algebra.field
        return all(f.is_zero(c) for c in self.coords)

    def constant_term(self):
        """Coefficient on the unit basis element."""
        return self.coords[0]

    def in_radical(self) -> bool:
        return self.algebra.field.is_zero(self.coords[0])

    def __repr__(self):
        f = self.algebra.field
        parts = []
        for name, c in zip(self.algebra.basis_names, self.coords):
            if f.is_zero(c):
                continue
            parts.append(f.format(c) if name == "1" else "%s*%s" % (f.format(c), name))
        return " + ".join(parts) if parts else "0"


def monomial_square_zero_algebra(field, generator_names) -> ArtinAlgebra:
    """K[g_1, ..., g_r] modulo all degree-2 monomials in the generators.

    The product of any two generators is zero, so the radical (spanned by the
    generators) squares to zero.
    """
    generator_names = list(generator_names)
    if not generator_names:
        raise ValueError("at least one generator is required")
    names = ["1"] + generator_names
    n = len(names)
    f = field
    zero_vec = [f.zero()] * n

    def unit_vec(j):
        v = list(zero_vec)
        v[j] = f.one()
        return v

    mult = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == 0:
                mult[i][j] = unit_vec(j)
            elif j == 0:
                mult[i][j] = unit_vec(i)
            else:
                mult[i][j] = list(zero_vec)
    return ArtinAlgebra(field, names, mult, range(1, n))


def _block_diag(field, blocks, nrows, ncols):
    rows = []
    r_off = 0
    total_cols = sum(b.ncols for b in blocks)
    for b in blocks:
        for i in range(b.nrows):
            row = [field.zero()] * total_cols
            row[r_off : r_off + b.ncols] = list(b.entries[i])
            rows.append(row)
        r_off += b.ncols
    return Matrix(field, rows, ncols=ncols)


class FDModule:
    """Finite-dimensional module over an :class:`ArtinAlgebra`.

    The module is a K-space of dimension ``dim`` together with one ``dim x
    dim`` operator per algebra basis element.  Construction verifies the
    module axioms against the structure constants (which also forces the
    operators to commute, the algebra being commutative).
    """

    def __init__(self, algebra, actions):
        actions = tuple(actions)
        if len(actions) != algebra.dim:
            raise ValueError("need one action operator per algebra basis element")
        dim = actions[0].nrows
        f = algebra.field
        for a in actions:
            if a.field != f or a.nrows != dim or a.ncols != dim:
                raise ValueError("action operators must be square over the algebra field")
        if actions[0] != Matrix.identity(f, dim):
            raise ValueError("unit must act as the identity")
        for i in range(algebra.dim):
            for j in range(i, algebra.dim):
                lhs = actions[i] @ actions[j]
                rhs = Matrix.zeros(f, dim, dim)
                for k, c in enumerate(algebra.mult[i][j]):
                    if not f.is_zero(c):
                        rhs = rhs + actions[k].scaled(c)
                if lhs != rhs:
                    raise ValueError(
                        "actions violate the structure constants at (%d, %d)" % (i, j)
                    )
        self.algebra = algebra
        self.dim = dim
        self.actions = actions
        self._power_cache = {}

    def __eq__(self, other):
        return (
            isinstance(other, FDModule)
            and self.algebra == other.algebra
            and self.dim == other.dim
            and self.actions == other.actions
        )

    def __hash__(self):
        return hash((self.algebra, self.dim))

    def __repr__(self):
        return "FDModule(dim %d over %r)" % (self.dim, self.algebra)

    # -- structure -------------------------------------------------------

    def element_action(self, elem: AlgebraElement) -> Matrix:
        """Operator by which an algebra element acts on the module."""
        if elem.algebra != self.algebra:
            raise ValueError("element of a different algebra")
        f = self.algebra.field
        out = Matrix.zeros(f, self.dim, self.dim)
        for i, c in enumerate(elem.coords):
            if not f.is_zero(c):
                out = out + self.actions[i].scaled(c)
        return out

    def length(self) -> int:
        """Composition length; equals dim_K because the algebra is local with
        residue field K."""
        return self.dim

    def standard_basis(self):
        return Matrix.identity(self.algebra.field, self.dim).columns()

    def submodule_generated(self, gens) -> "Subspace":
        """Smallest action-closed subspace containing the given vectors."""
        f = self.algebra.field
        cols = []
        for g in gens:
            g = list(g)
            if len(g) != self.dim:
                raise ShapeError("generator of wrong length (%d != %d)" % (len(g), self.dim))
            for a in self.actions:
                cols.append(a.apply(g))
        basis = Matrix.from_cols(f, cols, nrows=self.dim).image_basis()
        return Subspace(self, basis)

    def radical_submodule(self) -> "Subspace":
        return self.radical_power_subspace(1)

    def radical_power_subspace(self, k: int) -> "Subspace":
        """rad(A)^k . M as a subspace (k = 0 gives the whole module)."""
        if k < 0:
            raise ValueError("power must be non-negative")
        f = self.algebra.field
        span = Matrix.identity(f, self.dim)
        for _ in range(k):
            cols = []
            for r in self.algebra.radical_indices:
                cols.extend((self.actions[r] @ span).columns())
            span = Matrix.from_cols(f, cols, nrows=self.dim).image_basis()
        return Subspace(self, span)

    def quotient_module(self, sub: "Subspace"):
        """Quotient by an action-closed subspace.

        Returns ``(Q, projection)`` where ``projection`` is the surjective
        coordinate map of shape ``Q.dim x self.dim`` with kernel exactly the
        subspace.  The complement basis is chosen greedily from the standard
        basis in index order, so the construction is deterministic.
        """
        if sub.module is not self:
            raise ValueError("subspace of a different module")
        f = self.algebra.field
        w = sub.basis
        completion = []
        cur = w
        cur_rank = cur.rank()
        for j in range(self.dim):
            e = [f.zero()] * self.dim
            e[j] = f.one()
            cand = cur.hstack(Matrix.from_cols(f, [e]))
            if cand.rank() > cur_rank:
                completion.append(tuple(e))
                cur = cand
                cur_rank += 1
        section = Matrix.from_cols(f, completion, nrows=self.dim)
        change = w.hstack(section)
        inv = change.inverse()
        proj = Matrix(f, inv.entries[w.ncols :], ncols=self.dim)
        actions = [proj @ a @ section for a in self.actions]
        return FDModule(self.algebra, actions), proj

    def direct_sum_power(self, k: int) -> "FDModule":
        if k < 0:
            raise ValueError("power must be non-negative")
        if k not in self._power_cache:
            f = self.algebra.field
            actions = [
                _block_diag(f, [a] * k, self.dim * k, self.dim * k) for a in self.actions
            ]
            self._power_cache[k] = FDModule(self.algebra, actions)
        return self._power_cache[k]


class Subspace:
    """Action-closed subspace of an :class:`FDModule`, held as a column basis."""

    def __init__(self, module, basis: Matrix):
        if basis.field != module.algebra.field or basis.nrows != module.dim:
            raise ShapeError("basis matrix does not match the ambient module")
        if basis.rank() != basis.ncols:
            raise ValueError("basis columns are dependent")
        for a in module.actions:
            if not subspace_leq(a @ basis, basis):
                raise ValueError("subspace is not closed under the algebra action")
        self.module = module
        self.basis = basis

    @property
    def dim(self) -> int:
        return self.basis.ncols

    def contains(self, other: "Subspace") -> bool:
        return subspace_leq(other.basis, self.basis)

    def same_as(self, other: "Subspace") -> bool:
        return same_span(self.basis, other.basis)

    def __repr__(self):
        return "Subspace(dim %d of %r)" % (self.dim, self.module)


def free_module(algebra: ArtinAlgebra, rank: int) -> FDModule:
    """Free module of the given rank; actions are block-diagonal copies of the
    regular representation."""
    if rank < 0:
        raise ValueError("rank must be non-negative")
    f = algebra.field
    n = algebra.dim
    actions = []
    for i in range(algebra.dim):
        reg = algebra.left_mult_matrix(i)
        actions.append(_block_diag(f, [reg] * rank, n * rank, n * rank))
    return FDModule(algebra, actions)
