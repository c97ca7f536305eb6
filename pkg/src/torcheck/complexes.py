"""Matrices over an Artinian algebra, the module maps they induce, chain
complexes and their homology, and Tor computed from a specialized free
resolution.

Row-vector convention throughout: a p x q algebra matrix ``a`` sends an
element (n_1, ..., n_p) of N^p to (sum_i a_i1 . n_i, ..., sum_i a_iq . n_i)
in N^q.  This matches resolutions written left to right as

    0 -> R^2 --X--> R^4 --Y--> R^8

with X of shape 2 x 4.  The mirror-image column convention is isomorphic but
must not be mixed with this one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebras import AlgebraElement, FDModule
from .linalg import Matrix, ShapeError, same_span


class NotAComplexError(ValueError):
    """Consecutive differentials do not compose to zero."""

    def __init__(self, message, position=None, entry=None):
        super().__init__(message)
        self.position = position
        self.entry = entry


class AlgebraMatrix:
    """Dense matrix of :class:`AlgebraElement` entries over one algebra."""

    __slots__ = ("algebra", "nrows", "ncols", "entries")

    def __init__(self, algebra, entries):
        rows = tuple(tuple(row) for row in entries)
        width = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != width:
                raise ShapeError("ragged rows")
            for e in row:
                if not isinstance(e, AlgebraElement) or e.algebra != algebra:
                    raise ValueError("entry is not an element of the given algebra")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", width)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraMatrix is immutable")

    @classmethod
    def zeros(cls, algebra, nrows, ncols):
        z = algebra.zero()
        return cls(algebra, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, algebra, n):
        one, zero = algebra.one(), algebra.zero()
        return cls(algebra, [[one if i == j else zero for j in range(n)] for i in range(n)])

    def entry(self, i, j):
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraMatrix)
            and self.algebra == other.algebra
            and self.entries == other.entries
            and self.ncols == other.ncols
        )

    def __hash__(self):
        return hash((self.algebra, self.nrows, self.ncols))

    def __matmul__(self, other):
        if self.algebra != other.algebra:
            raise ValueError("matrices over different algebras")
        if self.ncols != other.nrows:
            raise ShapeError(
                "product shape mismatch: %dx%d @ %dx%d"
                % (self.nrows, self.ncols, other.nrows, other.ncols)
            )
        rows = []
        for i in range(self.nrows):
            row = []
            for k in range(other.ncols):
                acc = self.algebra.zero()
                for j in range(self.ncols):
                    acc = acc + self.entries[i][j] * other.entries[j][k]
                row.append(acc)
            rows.append(row)
        return AlgebraMatrix(self.algebra, rows)

    def __repr__(self):
        return "AlgebraMatrix(%dx%d over %r)" % (self.nrows, self.ncols, self.algebra)


def substitute_matrix(m, assignment, algebra) -> AlgebraMatrix:
    """Entrywise polynomial substitution into the algebra."""
    return AlgebraMatrix(
        algebra,
        [[p.substitute(assignment, algebra) for p in row] for row in m.entries],
    )


class ModuleMap:
    """K-linear map between modules over one algebra, commuting with the action.

    ``matrix`` has shape ``target.dim x source.dim`` and acts on coordinate
    column vectors.  Commutation with every action operator is checked at
    construction.
    """

    def __init__(self, source: FDModule, target: FDModule, matrix: Matrix):
        if source.algebra != target.algebra:
            raise ValueError("source and target over different algebras")
        if matrix.nrows != target.dim or matrix.ncols != source.dim:
            raise ShapeError(
                "matrix shape %dx%d does not map dim %d to dim %d"
                % (matrix.nrows, matrix.ncols, source.dim, target.dim)
            )
        for a_src, a_tgt in zip(source.actions, target.actions):
            if matrix @ a_src != a_tgt @ matrix:
                raise ValueError("map does not commute with the algebra action")
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, Matrix.zeros(source.algebra.field, target.dim, source.dim))

    @classmethod
    def identity(cls, module):
        return cls(module, module, Matrix.identity(module.algebra.field, module.dim))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def image_dim(self) -> int:
        return self.matrix.rank()

    def kernel_dim(self) -> int:
        return self.source.dim - self.matrix.rank()

    def __repr__(self):
        return "ModuleMap(%d -> %d)" % (self.source.dim, self.target.dim)


def induced_map(a: AlgebraMatrix, module: FDModule) -> ModuleMap:
    """Map N^p -> N^q induced by a p x q algebra matrix under the row-vector
    convention; the underlying K-matrix is the q x p grid of action operators
    with block (k, i) the action of a[i][k]."""
    if a.algebra != module.algebra:
        raise ValueError("matrix and module over different algebras")
    f = module.algebra.field
    d = module.dim
    source = module.direct_sum_power(a.nrows)
    target = module.direct_sum_power(a.ncols)
    rows = []
    for k in range(a.ncols):
        blocks = [module.element_action(a.entries[i][k]) for i in range(a.nrows)]
        for r in range(d):
            row = []
            for b in blocks:
                row.extend(b.entries[r])
            rows.append(row)
    matrix = Matrix(f, rows, ncols=d * a.nrows)
    return ModuleMap(source, target, matrix)


def compose(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    """f after g."""
    if g.target != f.source:
        raise ShapeError("compose: target of second argument must equal source of first")
    return ModuleMap(g.source, f.target, f.matrix @ g.matrix)


@dataclass(frozen=True)
class HomologySummary:
    length: int
    kernel_dim: int
    image_dim: int


def homology_at(incoming, outgoing) -> HomologySummary:
    """Homology at the middle module of ``incoming: A -> B``, ``outgoing: B -> C``.

    Either map may be ``None`` for the zero map at an end of a complex.  The
    homology subquotient is automatically action-closed, so only its length
    (= kernel dim - image dim) and the two dimensions are reported.
    """
    if incoming is None and outgoing is None:
        raise ValueError("at least one map is required")
    if incoming is not None and outgoing is not None:
        if incoming.target != outgoing.source:
            raise ShapeError("maps do not meet at a common module")
        if not compose(outgoing, incoming).is_zero():
            raise NotAComplexError("composite of consecutive maps is nonzero")
    middle = outgoing.source if outgoing is not None else incoming.target
    ker = outgoing.kernel_dim() if outgoing is not None else middle.dim
    im = incoming.image_dim() if incoming is not None else 0
    return HomologySummary(ker - im, ker, im)


class ChainComplex:
    """Bounded complex M_k -> ... -> M_0; ``maps[j]`` sends ``modules[j]`` to
    ``modules[j+1]`` (modules are listed from homological degree k down to 0).
    Consecutive composites are checked to vanish."""

    def __init__(self, modules, maps):
        modules = list(modules)
        maps = list(maps)
        if len(modules) != len(maps) + 1:
            raise ShapeError("a complex with %d maps needs %d modules" % (len(maps), len(maps) + 1))
        for j, f in enumerate(maps):
            if f.source != modules[j] or f.target != modules[j + 1]:
                raise ShapeError("map %d does not match the adjacent modules" % j)
        for j in range(len(maps) - 1):
            comp = compose(maps[j + 1], maps[j])
            if not comp.is_zero():
                raise NotAComplexError(
                    "composite of maps %d and %d is nonzero" % (j, j + 1), position=j
                )
        self.modules = modules
        self.maps = maps

    @property
    def top_degree(self) -> int:
        return len(self.maps)

    def homology(self):
        """Summaries listed from the left end (degree k) to degree 0."""
        out = []
        for pos in range(len(self.modules)):
            incoming = self.maps[pos - 1] if pos > 0 else None
            outgoing = self.maps[pos] if pos < len(self.maps) else None
            if incoming is None and outgoing is None:
                m = self.modules[pos]
                out.append(HomologySummary(m.length(), m.dim, 0))
            else:
                out.append(homology_at(incoming, outgoing))
        return out


@dataclass
class TorReport:
    """Homology of a specialized resolution tensored with a module.

    ``degrees[i]`` is the summary in homological degree i (degree 0 is the
    cokernel end).  ``image_checks`` carries named image-identity flags
    contributed by callers that know the expected images.
    """

    degrees: tuple
    image_checks: dict = field(default_factory=dict)

    def lengths(self):
        return tuple(h.length for h in self.degrees)

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * h.length for i, h in enumerate(self.degrees))


def tor_from_resolution(resolution, assignment, module, tail_rank=None) -> TorReport:
    """Tor of the module presented by a free resolution against ``module``.

    ``resolution`` lists the differentials of ``0 -> R^a --d_k--> ... --d_1-->
    R^z`` left to right as polynomial matrices with chaining shapes; each is
    specialized through ``assignment`` into the module's algebra, induced on
    powers of ``module``, and the homology of the resulting complex is
    returned with degree 0 at the cokernel end.

    Consecutive symbolic products must substitute to zero entrywise;
    otherwise :class:`NotAComplexError` reports which composite and entry
    failed.  An empty resolution needs ``tail_rank`` for the rank of the
    lone free module.
    """
    algebra = module.algebra
    resolution = list(resolution)
    if not resolution:
        if tail_rank is None:
            raise ValueError("empty resolution requires tail_rank")
        m0 = module.direct_sum_power(tail_rank)
        return TorReport((HomologySummary(m0.length(), m0.dim, 0),))
    for i in range(len(resolution) - 1):
        if resolution[i].ncols != resolution[i + 1].nrows:
            raise ShapeError(
                "resolution matrices %d and %d do not chain: %dx%d then %dx%d"
                % (
                    i,
                    i + 1,
                    resolution[i].nrows,
                    resolution[i].ncols,
                    resolution[i + 1].nrows,
                    resolution[i + 1].ncols,
                )
            )
        product = resolution[i] @ resolution[i + 1]
        for r in range(product.nrows):
            for c in range(product.ncols):
                value = product.entry(r, c).substitute(assignment, algebra)
                if not value.is_zero():
                    raise NotAComplexError(
                        "composite of resolution matrices %d and %d substitutes to a "
                        "nonzero element at entry (%d, %d)" % (i, i + 1, r, c),
                        position=i,
                        entry=(r, c),
                    )
    specialized = [substitute_matrix(m, assignment, algebra) for m in resolution]
    maps = [induced_map(a, module) for a in specialized]
    modules = [maps[0].source] + [f.target for f in maps]
    cx = ChainComplex(modules, maps)
    return TorReport(tuple(reversed(cx.homology())))


def image_equals_radical_power(f: ModuleMap, k: int = 1) -> bool:
    """Does the image of ``f`` equal rad^k of its target, as subspaces?

    Checked by mutual containment of spans, never by comparing bases.
    """
    image = f.matrix.image_basis()
    rad = f.target.radical_power_subspace(k)
    return same_span(image, rad.basis)
