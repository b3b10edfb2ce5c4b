"""Exact dense linear algebra over any field in the coefficient tower.

Everything is plain Gaussian elimination with exact division; pivots are
the first nonzero entry in column order, so results are deterministic.
A cofactor determinant is kept alongside the elimination determinant as
an independent cross-check.
"""

from __future__ import annotations


class DimensionMismatch(ValueError):
    pass


class NonSquareDet(ValueError):
    pass


class ExactMatrix:
    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, data):
        self.field = field
        self.data = [[field.coerce(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise DimensionMismatch("ragged rows")

    @classmethod
    def zero(cls, field, rows, cols):
        return cls(field, [[field.zero] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n):
        m = cls.zero(field, n, n)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    def copy(self) -> "ExactMatrix":
        out = ExactMatrix.__new__(ExactMatrix)
        out.field = self.field
        out.rows = self.rows
        out.cols = self.cols
        out.data = [row[:] for row in self.data]
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.data[i][j] == other.data[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.data))

    def _is_zero(self, x) -> bool:
        z = getattr(self.field, "is_zero", None)
        if z is not None:
            return z(x)
        return x == self.field.zero

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return ExactMatrix(
            self.field,
            [
                [self.data[i][j] + other.data[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix subtraction shape mismatch")
        return ExactMatrix(
            self.field,
            [
                [self.data[i][j] - other.data[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch("matrix product shape mismatch")
            zero = self.field.zero
            out = []
            for i in range(self.rows):
                row = []
                for j in range(other.cols):
                    acc = zero
                    for k in range(self.cols):
                        acc = acc + self.data[i][k] * other.data[k][j]
                    row.append(acc)
                out.append(row)
            return ExactMatrix(self.field, out)
        c = self.field.coerce(other)
        return ExactMatrix(
            self.field, [[x * c for x in row] for row in self.data]
        )

    __rmul__ = __mul__

    def scale(self, c):
        c = self.field.coerce(c)
        return ExactMatrix(self.field, [[x * c for x in row] for row in self.data])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.field,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    # -- elimination ------------------------------------------------------

    def rref(self, with_transform: bool = False):
        """Reduced row echelon form.

        Returns (R, pivots) or (R, pivots, T) with T @ self == R.
        """
        R = self.copy()
        T = ExactMatrix.identity(self.field, self.rows) if with_transform else None
        pivots = []
        pr = 0
        for col in range(self.cols):
            pivot_row = None
            for i in range(pr, self.rows):
                if not self._is_zero(R.data[i][col]):
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            R.data[pr], R.data[pivot_row] = R.data[pivot_row], R.data[pr]
            if T is not None:
                T.data[pr], T.data[pivot_row] = T.data[pivot_row], T.data[pr]
            inv = self.field.one / R.data[pr][col]
            R.data[pr] = [x * inv for x in R.data[pr]]
            if T is not None:
                T.data[pr] = [x * inv for x in T.data[pr]]
            for i in range(self.rows):
                if i == pr:
                    continue
                f = R.data[i][col]
                if self._is_zero(f):
                    continue
                R.data[i] = [a - f * b for a, b in zip(R.data[i], R.data[pr])]
                if T is not None:
                    T.data[i] = [a - f * b for a, b in zip(T.data[i], T.data[pr])]
            pivots.append(col)
            pr += 1
            if pr == self.rows:
                break
        if with_transform:
            return R, pivots, T
        return R, pivots

    def rank(self) -> int:
        _, pivots = self.rref()
        return len(pivots)

    def det(self, method: str = "elimination"):
        if self.rows != self.cols:
            raise NonSquareDet(f"{self.rows}x{self.cols} matrix has no determinant")
        if method == "cofactor":
            return self._det_cofactor()
        M = self.copy()
        n = self.rows
        det = self.field.one
        for col in range(n):
            pivot_row = None
            for i in range(col, n):
                if not self._is_zero(M.data[i][col]):
                    pivot_row = i
                    break
            if pivot_row is None:
                return self.field.zero
            if pivot_row != col:
                M.data[col], M.data[pivot_row] = M.data[pivot_row], M.data[col]
                det = -det
            p = M.data[col][col]
            det = det * p
            inv = self.field.one / p
            for i in range(col + 1, n):
                f = M.data[i][col]
                if self._is_zero(f):
                    continue
                f = f * inv
                M.data[i] = [a - f * b for a, b in zip(M.data[i], M.data[col])]
        return det

    def _det_cofactor(self):
        n = self.rows
        if n == 1:
            return self.data[0][0]
        acc = self.field.zero
        sign = self.field.one
        for j in range(n):
            c = self.data[0][j]
            if not self._is_zero(c):
                minor = ExactMatrix(
                    self.field,
                    [
                        [self.data[i][k] for k in range(n) if k != j]
                        for i in range(1, n)
                    ],
                )
                acc = acc + sign * c * minor._det_cofactor()
            sign = -sign
        return acc

    def inverse(self) -> "ExactMatrix":
        if self.rows != self.cols:
            raise NonSquareDet("only square matrices invert")
        R, pivots, T = self.rref(with_transform=True)
        if len(pivots) != self.rows:
            raise ZeroDivisionError("singular matrix")
        return T

    def kernel(self) -> list:
        """Basis of the right kernel, as lists of field elements."""
        R, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        for f in free:
            v = [self.field.zero] * self.cols
            v[f] = self.field.one
            for row, p in enumerate(pivots):
                v[p] = -R.data[row][f]
            basis.append(v)
        return basis

    def solve(self, rhs: list):
        """Solve self @ x = rhs.

        Returns (particular, kernel_basis, certificate): certificate is
        None when solvable, otherwise a row combination lam with
        lam @ self == 0 and lam @ rhs != 0 (and particular is None).
        """
        if len(rhs) != self.rows:
            raise DimensionMismatch("rhs length mismatch")
        aug = ExactMatrix(
            self.field,
            [self.data[i] + [self.field.coerce(rhs[i])] for i in range(self.rows)],
        )
        R, pivots, T = aug.rref(with_transform=True)
        if pivots and pivots[-1] == self.cols:
            bad_row = len(pivots) - 1
            certificate = T.data[bad_row]
            return None, None, certificate
        x = [self.field.zero] * self.cols
        for row, p in enumerate(pivots):
            x[p] = R.data[row][self.cols]
        return x, self.kernel(), None

    def to_lists(self):
        return [row[:] for row in self.data]

    def __repr__(self):
        body = "; ".join(
            "[" + ", ".join(str(x) for x in row) + "]" for row in self.data
        )
        return f"ExactMatrix({self.rows}x{self.cols}: {body})"
