"""Sparse multivariate polynomials with a positive integer weight per variable.

Variables live in a shared append-only table; each carries a weight, and the
weighted degree of a monomial is the weight-dot-exponent sum.  Polynomials
identify variables by table index internally, so the table may keep growing
after a polynomial is created (generic matrices extend it); names matter only
for input, output and substitution.

Coefficients are exact field values from :mod:`torcheck.linalg`.
"""

from __future__ import annotations

from itertools import combinations


class VarTable:
    """Ordered table of (name, weight) variables over a coefficient field."""

    def __init__(self, field):
        self.field = field
        self._names = []
        self._weights = []
        self._index = {}

    def add_var(self, name: str, weight: int) -> int:
        if name in self._index:
            raise ValueError("variable name collision: %r" % name)
        if not isinstance(weight, int) or weight < 1:
            raise ValueError("weight must be a positive integer; got %r" % (weight,))
        idx = len(self._names)
        self._names.append(name)
        self._weights.append(weight)
        self._index[name] = idx
        return idx

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError("unknown variable %r" % name) from None

    def name_of(self, idx: int) -> str:
        return self._names[idx]

    def weight_of(self, idx: int) -> int:
        return self._weights[idx]

    def names(self):
        return tuple(self._names)

    def __contains__(self, name):
        return name in self._index

    def __len__(self):
        return len(self._names)


def _normalize_terms(field, raw):
    """Drop zero coefficients; keys are sorted tuples of (var index, exponent>0)."""
    out = {}
    for key, coeff in raw.items():
        if not field.is_zero(coeff):
            out[key] = coeff
    return out


class WeightedPoly:
    """Immutable sparse polynomial over a shared :class:`VarTable`."""

    __slots__ = ("table", "terms")

    def __init__(self, table, terms):
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "terms", dict(terms))

    def __setattr__(self, name, value):
        raise AttributeError("WeightedPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, table):
        return cls(table, {})

    @classmethod
    def constant(cls, table, c):
        c = table.field.normalize(c)
        if table.field.is_zero(c):
            return cls(table, {})
        return cls(table, {(): c})

    @classmethod
    def variable(cls, table, name):
        idx = table.index_of(name) if isinstance(name, str) else name
        return cls(table, {((idx, 1),): table.field.one()})

    @classmethod
    def monomial(cls, table, exponents, coeff=1):
        """``exponents`` maps variable index (or name) to a positive exponent."""
        coeff = table.field.normalize(coeff)
        if table.field.is_zero(coeff):
            return cls(table, {})
        pairs = []
        for var, exp in exponents.items():
            idx = table.index_of(var) if isinstance(var, str) else var
            if not isinstance(exp, int) or exp < 1:
                raise ValueError("exponent must be a positive integer; got %r" % (exp,))
            pairs.append((idx, exp))
        return cls(table, {tuple(sorted(pairs)): coeff})

    # -- ring operations ----------------------------------------------

    def _check_table(self, other):
        if self.table is not other.table:
            raise ValueError("polynomials use different variable tables")

    def __add__(self, other):
        self._check_table(other)
        f = self.table.field
        acc = dict(self.terms)
        for key, c in other.terms.items():
            acc[key] = f.add(acc.get(key, f.zero()), c)
        return WeightedPoly(self.table, _normalize_terms(f, acc))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        f = self.table.field
        return WeightedPoly(self.table, {k: f.neg(c) for k, c in self.terms.items()})

    def __mul__(self, other):
        f = self.table.field
        if not isinstance(other, WeightedPoly):
            c = f.normalize(other)
            if f.is_zero(c):
                return WeightedPoly.zero(self.table)
            return WeightedPoly(self.table, {k: f.mul(c, v) for k, v in self.terms.items()})
        self._check_table(other)
        acc = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                exps = dict(ka)
                for idx, e in kb:
                    exps[idx] = exps.get(idx, 0) + e
                key = tuple(sorted(exps.items()))
                c = f.mul(ca, cb)
                acc[key] = f.add(acc.get(key, f.zero()), c)
        return WeightedPoly(self.table, _normalize_terms(f, acc))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, WeightedPoly)
            and self.table is other.table
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.table), tuple(sorted(self.terms.items()))))

    # -- queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self):
        return self.terms.get((), self.table.field.zero())

    def variables_used(self):
        return {idx for key in self.terms for idx, _ in key}

    def term_count(self) -> int:
        return len(self.terms)

    def weighted_degree(self):
        """Classify against the table weights.

        Returns ``("zero", None)``, ``("homogeneous", d)`` with every term of
        weighted degree ``d``, or ``("inhomogeneous", None)``.
        """
        if not self.terms:
            return ("zero", None)
        degrees = {
            sum(self.table.weight_of(idx) * e for idx, e in key) for key in self.terms
        }
        if len(degrees) == 1:
            return ("homogeneous", degrees.pop())
        return ("inhomogeneous", None)

    def min_factor_count(self) -> int:
        """Minimum over terms of the number of variable factors (with multiplicity)."""
        if not self.terms:
            raise ValueError("zero polynomial has no factor count")
        return min(sum(e for _, e in key) for key in self.terms)

    def substitute(self, assignment, algebra):
        """Evaluate by sending each variable to its assigned algebra element.

        ``assignment`` maps variable names to elements of ``algebra``.  Being
        defined on generators, the evaluation is a ring homomorphism by
        construction.  Raises if a variable occurring in the polynomial has
        no image.
        """
        result = algebra.zero()
        for key, coeff in self.terms.items():
            value = algebra.one()
            for idx, exp in key:
                name = self.table.name_of(idx)
                try:
                    image = assignment[name]
                except KeyError:
                    raise ValueError("no image assigned for variable %r" % name) from None
                value = value * image**exp
            result = result + coeff * value
        return result

    def __repr__(self):
        if not self.terms:
            return "0"
        f = self.table.field
        parts = []
        for key in sorted(self.terms):
            factors = [f.format(self.terms[key])]
            for idx, e in key:
                name = self.table.name_of(idx)
                factors.append(name if e == 1 else "%s^%d" % (name, e))
            parts.append("*".join(factors))
        return " + ".join(parts)


class PolyMatrix:
    """Dense matrix of :class:`WeightedPoly` entries over one shared table."""

    __slots__ = ("table", "nrows", "ncols", "entries")

    def __init__(self, table, entries):
        rows = tuple(tuple(entries[i]) for i in range(len(entries)))
        width = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != width:
                raise ValueError("ragged rows")
            for p in row:
                if p.table is not table:
                    raise ValueError("entry uses a different variable table")
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", width)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @classmethod
    def generic(cls, table, prefix, nrows, ncols, weight):
        """Extend ``table`` with ``nrows*ncols`` fresh variables ``prefix<i><j>``
        (1-based) of the given weight; entry (i, j) is the corresponding
        monomial."""
        rows = []
        for i in range(1, nrows + 1):
            row = []
            for j in range(1, ncols + 1):
                idx = table.add_var("%s%d%d" % (prefix, i, j), weight)
                row.append(WeightedPoly.variable(table, idx))
            rows.append(row)
        return cls(table, rows)

    @classmethod
    def zeros(cls, table, nrows, ncols):
        z = WeightedPoly.zero(table)
        return cls(table, [[z] * ncols for _ in range(nrows)])

    def entry(self, i, j):
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.table is other.table
            and self.entries == other.entries
            and self.ncols == other.ncols
        )

    def __hash__(self):
        return hash((id(self.table), self.nrows, self.ncols))

    def __matmul__(self, other):
        if self.table is not other.table:
            raise ValueError("matrices use different variable tables")
        if self.ncols != other.nrows:
            raise ValueError(
                "product shape mismatch: %dx%d @ %dx%d"
                % (self.nrows, self.ncols, other.nrows, other.ncols)
            )
        rows = []
        for i in range(self.nrows):
            row = []
            for k in range(other.ncols):
                acc = WeightedPoly.zero(self.table)
                for j in range(self.ncols):
                    acc = acc + self.entries[i][j] * other.entries[j][k]
                row.append(acc)
            rows.append(row)
        return PolyMatrix(self.table, rows)

    def minor(self, row_idx, col_idx):
        """Determinant of the selected square submatrix (plain sign convention,
        rows and columns taken in increasing order)."""
        row_idx, col_idx = list(row_idx), list(col_idx)
        if len(row_idx) != len(col_idx):
            raise ValueError("row and column index lists must have equal length")
        for idx, bound, kind in ((row_idx, self.nrows, "row"), (col_idx, self.ncols, "column")):
            if any(not 0 <= i < bound for i in idx):
                raise ValueError("%s index out of range: %r" % (kind, idx))
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError("%s indices must be strictly increasing: %r" % (kind, idx))
        sub = [[self.entries[i][j] for j in col_idx] for i in row_idx]
        return _det(self.table, sub)

    def all_minors(self, size):
        """All ``size x size`` minors as ``(row_idx, col_idx, poly)`` triples,
        in lexicographic order of the index tuples."""
        if size > min(self.nrows, self.ncols):
            raise ValueError("minor size %d exceeds matrix dimensions" % size)
        out = []
        for rows in combinations(range(self.nrows), size):
            for cols in combinations(range(self.ncols), size):
                out.append((rows, cols, self.minor(rows, cols)))
        return out

    def __repr__(self):
        return "PolyMatrix(%dx%d)" % (self.nrows, self.ncols)


def _det(table, grid):
    n = len(grid)
    if n == 0:
        return WeightedPoly.constant(table, 1)
    if n == 1:
        return grid[0][0]
    acc = WeightedPoly.zero(table)
    for j in range(n):
        sub = [row[:j] + row[j + 1 :] for row in grid[1:]]
        term = grid[0][j] * _det(table, sub)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc
