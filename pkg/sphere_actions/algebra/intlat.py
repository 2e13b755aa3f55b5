"""Exact integer lattice linear algebra.

Matrices are numpy object arrays of Python ints while being worked on and
frozen tuples of rows at rest. Nothing in this module touches floating point.
"""

import itertools
import logging
import operator
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import sympy

from ..core.constants import FALLBACK_MAX_RANK, FALLBACK_SEARCH_RANGE
from ..core.exceptions import (
    CanonicalFormError, InvalidInputError, NormalFormError, NotAnInvolutionError,
    NotUnimodularError, TypeValidationError
)
from ..utils.validation import AlgebraValidator

logger = logging.getLogger(__name__)


def _to_int(value, where: str) -> int:
    if isinstance(value, bool):
        raise TypeValidationError(
            f"{where} must be an integer, got bool",
            error_code="TYPE_MISMATCH", context={"field": where}
        )
    try:
        return operator.index(value)
    except TypeError:
        raise TypeValidationError(
            f"{where} must be an integer, got {type(value).__name__}",
            error_code="TYPE_MISMATCH", context={"field": where}
        )


@dataclass(frozen=True)
class IntMatrix:
    """An exact integer matrix. ncols is explicit so that n x 0 matrices exist."""

    rows: Tuple[Tuple[int, ...], ...]
    ncols: Optional[int] = None

    def __post_init__(self):
        rows = tuple(
            tuple(_to_int(entry, f"matrix[{i}][{j}]") for j, entry in enumerate(row))
            for i, row in enumerate(self.rows)
        )
        ncols = self.ncols
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise InvalidInputError(
                    f"Row {i} has {len(row)} entries, expected {ncols}",
                    error_code="RAGGED_MATRIX", context={"row": i}
                )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    # Construction

    @classmethod
    def from_array(cls, array: np.ndarray) -> "IntMatrix":
        nrows, ncols = array.shape
        return cls(tuple(tuple(int(x) for x in array[i]) for i in range(nrows)), ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        """Assemble a matrix whose j-th column is columns[j]."""
        columns = [tuple(column) for column in columns]
        for j, column in enumerate(columns):
            AlgebraValidator.validate_list_length(column, nrows, nrows, f"column[{j}]")
        return cls(tuple(tuple(column[i] for column in columns) for i in range(nrows)),
                   len(columns))

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        return cls.from_array(np.eye(size, dtype=object))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls.from_array(np.zeros((nrows, ncols), dtype=object))

    @classmethod
    def block_diagonal(cls, blocks: Iterable["IntMatrix"]) -> "IntMatrix":
        blocks = list(blocks)
        nrows = sum(block.nrows for block in blocks)
        ncols = sum(block.ncols for block in blocks)
        out = np.zeros((nrows, ncols), dtype=object)
        i = j = 0
        for block in blocks:
            out[i:i + block.nrows, j:j + block.ncols] = block.array
            i += block.nrows
            j += block.ncols
        return cls.from_array(out)

    # Shape and access

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def array(self) -> np.ndarray:
        """A fresh object-dtype copy safe to mutate."""
        out = np.zeros((self.nrows, self.ncols), dtype=object)
        for i, row in enumerate(self.rows):
            for j, entry in enumerate(row):
                out[i, j] = entry
        return out

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def to_lists(self) -> List[List[int]]:
        return [list(row) for row in self.rows]

    # Arithmetic

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise InvalidInputError(
                f"Cannot multiply {self.shape} by {other.shape}",
                error_code="SHAPE_MISMATCH"
            )
        if self.ncols == 0:
            return IntMatrix.zeros(self.nrows, other.ncols)
        return IntMatrix.from_array(self.array.dot(other.array))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix.from_array(self.array + other.array)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix.from_array(self.array - other.array)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix.from_array(-self.array)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.nrows != other.nrows:
            raise InvalidInputError("hstack needs equal row counts", error_code="SHAPE_MISMATCH")
        return IntMatrix(tuple(a + b for a, b in zip(self.rows, other.rows)),
                         self.ncols + other.ncols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(self.columns()), self.nrows)

    def trace(self) -> int:
        self._check_square("trace")
        return sum(self.rows[i][i] for i in range(self.nrows))

    def det(self) -> int:
        self._check_square("det")
        return int(self._sympy().det())

    def inverse(self) -> "IntMatrix":
        """Exact inverse; only unimodular matrices have one over the integers."""
        if not self.is_unimodular():
            raise NotUnimodularError(
                f"Matrix {self} is not unimodular",
                error_code="NOT_UNIMODULAR", context={"det": self.det() if self.is_square else None}
            )
        inv = self._sympy().inv()
        return IntMatrix(tuple(tuple(int(inv[i, j]) for j in range(self.ncols))
                               for i in range(self.nrows)), self.ncols)

    def is_unimodular(self) -> bool:
        return self.is_square and self.det() in (1, -1)

    def is_identity(self) -> bool:
        return self == IntMatrix.identity(self.nrows)

    def _sympy(self) -> sympy.Matrix:
        return sympy.Matrix(self.nrows, self.ncols, [x for row in self.rows for x in row])

    def _check_same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise InvalidInputError(
                f"Shape mismatch {self.shape} vs {other.shape}", error_code="SHAPE_MISMATCH"
            )

    def _check_square(self, operation: str) -> None:
        if not self.is_square:
            raise InvalidInputError(
                f"{operation} needs a square matrix, got {self.shape}",
                error_code="NOT_SQUARE"
            )

    def __str__(self) -> str:
        return "; ".join(" ".join(str(x) for x in row) for row in self.rows)


class SmithForm(NamedTuple):
    """U @ M @ V == D with U, V unimodular and D diagonal, d1 | d2 | ..."""
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> Tuple[int, ...]:
        """Nonzero diagonal entries of D."""
        size = min(self.D.shape)
        return tuple(self.D.rows[i][i] for i in range(size) if self.D.rows[i][i] != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _smallest_pivot(D: np.ndarray, t: int) -> Optional[Tuple[int, int]]:
    best = None
    nrows, ncols = D.shape
    for i in range(t, nrows):
        for j in range(t, ncols):
            value = abs(D[i, j])
            if value and (best is None or value < best[0]):
                best = (value, i, j)
    return None if best is None else (best[1], best[2])


def _first_non_multiple(D: np.ndarray, t: int) -> Optional[int]:
    pivot = D[t, t]
    nrows, ncols = D.shape
    for i in range(t + 1, nrows):
        for j in range(t + 1, ncols):
            if D[i, j] % pivot:
                return i
    return None


def smith_normal_form(M: IntMatrix) -> SmithForm:
    """Smith normal form with smallest-absolute-value pivoting.

    Ties go to the lowest row, then the lowest column. Rows and columns are
    cleared with floor-division remainders; when the pivot fails to divide an
    entry of the remaining block, that entry's row is added to the pivot row and
    the step repeats. The identity U @ M @ V == D is checked before returning.
    """
    nrows, ncols = M.shape
    D = M.array
    U = np.eye(nrows, dtype=object)
    V = np.eye(ncols, dtype=object)

    t = 0
    while t < min(nrows, ncols):
        pivot = _smallest_pivot(D, t)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            D[[t, pi]] = D[[pi, t]]
            U[[t, pi]] = U[[pi, t]]
        if pj != t:
            D[:, [t, pj]] = D[:, [pj, t]]
            V[:, [t, pj]] = V[:, [pj, t]]

        p = D[t, t]
        clean = True
        for i in range(t + 1, nrows):
            q = D[i, t] // p
            if q:
                D[i] -= q * D[t]
                U[i] -= q * U[t]
            clean = clean and D[i, t] == 0
        for j in range(t + 1, ncols):
            q = D[t, j] // p
            if q:
                D[:, j] -= q * D[:, t]
                V[:, j] -= q * V[:, t]
            clean = clean and D[t, j] == 0
        if not clean:
            continue

        offender = _first_non_multiple(D, t)
        if offender is not None:
            D[t] += D[offender]
            U[t] += U[offender]
            continue

        if D[t, t] < 0:
            D[t] = -D[t]
            U[t] = -U[t]
        t += 1

    form = SmithForm(IntMatrix.from_array(U), IntMatrix.from_array(D), IntMatrix.from_array(V))
    _verify_smith(M, form)
    return form


def _verify_smith(M: IntMatrix, form: SmithForm) -> None:
    U, D, V = form
    diagonal_only = all(
        D.rows[i][j] == 0 for i in range(D.nrows) for j in range(D.ncols) if i != j
    )
    factors = form.invariant_factors
    divides = all(b % a == 0 for a, b in zip(factors, factors[1:]))
    positive = all(d > 0 for d in factors)
    if not (U @ M @ V == D and diagonal_only and divides and positive):
        logger.error("Smith normal form post-condition failed for %s", M)
        raise NormalFormError(
            "Smith normal form verification failed",
            error_code="SNF_POSTCONDITION", context={"matrix": str(M)}
        )


@dataclass(frozen=True)
class LatticeBasis:
    """A sublattice of Z^ambient_dimension given by independent basis vectors."""

    ambient_dimension: int
    vectors: Tuple[Tuple[int, ...], ...]
    saturated: bool = False

    def __post_init__(self):
        vectors = tuple(tuple(int(x) for x in vector) for vector in self.vectors)
        for j, vector in enumerate(vectors):
            AlgebraValidator.validate_list_length(
                vector, self.ambient_dimension, self.ambient_dimension, f"vectors[{j}]"
            )
        object.__setattr__(self, "vectors", vectors)

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def as_matrix(self) -> IntMatrix:
        """Basis vectors as the columns of an ambient x dimension matrix."""
        return IntMatrix.from_columns(self.vectors, self.ambient_dimension)

    def check_saturated(self) -> bool:
        """True when the basis-inclusion matrix has all invariant factors 1."""
        form = smith_normal_form(self.as_matrix())
        return form.invariant_factors == (1,) * self.dimension

    def left_inverse(self) -> IntMatrix:
        """Integer L with L @ B == I, where B is as_matrix(). Needs a saturated basis."""
        B = self.as_matrix()
        U, _, V = smith_normal_form(B)
        d = self.dimension
        top = IntMatrix(U.rows[:d], self.ambient_dimension)
        L = V @ top
        if L @ B != IntMatrix.identity(d):
            raise CanonicalFormError(
                "Basis is not saturated; no integer left inverse",
                error_code="NOT_SATURATED", context={"vectors": self.vectors}
            )
        return L

    def coordinates(self, vector: Sequence[int]) -> Tuple[int, ...]:
        L = self.left_inverse()
        column = IntMatrix.from_columns([vector], self.ambient_dimension)
        return (L @ column).column(0)


def kernel_lattice(M: IntMatrix) -> LatticeBasis:
    """Saturated basis of {v in Z^n : M v = 0}: the trailing columns of V."""
    form = smith_normal_form(M)
    rank = form.rank
    vectors = tuple(form.V.column(j) for j in range(rank, M.ncols))
    basis = LatticeBasis(M.ncols, vectors, saturated=True)
    if basis.dimension and (M @ basis.as_matrix() != IntMatrix.zeros(M.nrows, basis.dimension)):
        raise NormalFormError("Kernel basis is not annihilated", error_code="KERNEL_POSTCONDITION")
    return basis


@dataclass(frozen=True)
class CanonicalInvolution:
    """The triple (k, r, s) naming A(k, r, s): k swap blocks, then +I_r, then -I_s."""

    k: int
    r: int
    s: int

    def __post_init__(self):
        for name in ("k", "r", "s"):
            AlgebraValidator.validate_type(getattr(self, name), int, name)
            AlgebraValidator.validate_non_negative(getattr(self, name), name)

    @property
    def m(self) -> int:
        return 2 * self.k + self.r + self.s

    @property
    def minus_block(self) -> range:
        """1-based generator indices of the -1 block."""
        return range(2 * self.k + self.r + 1, self.m + 1)

    def matrix(self) -> IntMatrix:
        swap = IntMatrix(((0, 1), (1, 0)))
        blocks = [swap] * self.k
        blocks.append(IntMatrix.identity(self.r))
        blocks.append(-IntMatrix.identity(self.s))
        return IntMatrix.block_diagonal(blocks)

    def to_dict(self) -> dict:
        return {"k": self.k, "r": self.r, "s": self.s}


def canonical_matrix(k: int, r: int, s: int) -> IntMatrix:
    return CanonicalInvolution(k, r, s).matrix()


def match_canonical_form(M: IntMatrix) -> Optional[CanonicalInvolution]:
    """(k, r, s) when M is literally A(k, r, s), else None."""
    if not M.is_square:
        return None
    m = M.nrows
    for k in range(m // 2 + 1):
        for r in range(m - 2 * k + 1):
            candidate = CanonicalInvolution(k, r, m - 2 * k - r)
            if candidate.matrix() == M:
                return candidate
    return None


def random_unimodular(size: int, steps: int, rng: np.random.Generator, entry_range: int = 2
                      ) -> Tuple[IntMatrix, IntMatrix]:
    """Product Q of up to `steps` elementary matrices I + c e_ij, with its inverse.

    c is drawn from [-entry_range, entry_range].
    """
    Q = np.eye(size, dtype=object)
    Q_inv = np.eye(size, dtype=object)
    if size < 2:
        return IntMatrix.from_array(Q), IntMatrix.from_array(Q_inv)
    for _ in range(int(rng.integers(0, steps + 1))):
        i, j = (int(x) for x in rng.choice(size, size=2, replace=False))
        c = int(rng.integers(-entry_range, entry_range + 1))
        Q[i] += c * Q[j]
        Q_inv[:, j] -= c * Q_inv[:, i]
    return IntMatrix.from_array(Q), IntMatrix.from_array(Q_inv)


def _check_involution(M: IntMatrix) -> None:
    if not M.is_square:
        raise NotAnInvolutionError(
            f"Matrix of shape {M.shape} is not square", error_code="NOT_SQUARE"
        )
    if M @ M != IntMatrix.identity(M.nrows):
        raise NotAnInvolutionError(
            f"Matrix {M} does not square to the identity",
            error_code="NOT_INVOLUTION", context={"matrix": str(M)}
        )
    if M.det() not in (1, -1):
        raise NotUnimodularError(
            f"Matrix {M} is not unimodular", error_code="NOT_UNIMODULAR"
        )


def _count_twos(factors: Sequence[int]) -> int:
    return sum(1 for d in factors if d == 2)


def involution_invariants(M: IntMatrix) -> CanonicalInvolution:
    """Conjugacy invariants (k, r, s) of an integral involution.

    r is the 2-rank of Fix / (M + I)Z^m and s the 2-rank of Anti / (M - I)Z^m,
    where Fix = ker(M - I) and Anti = ker(M + I). k is what remains of m and is
    cross-checked against the index of Fix + Anti in Z^m.
    """
    _check_involution(M)
    m = M.nrows
    identity = IntMatrix.identity(m)
    fix = kernel_lattice(M - identity)
    anti = kernel_lattice(M + identity)

    r = _count_twos(smith_normal_form(fix.left_inverse() @ (M + identity)).invariant_factors)
    s = _count_twos(smith_normal_form(anti.left_inverse() @ (M - identity)).invariant_factors)
    if (m - r - s) % 2:
        raise CanonicalFormError(
            f"Invariants r={r}, s={s} are inconsistent with m={m}", error_code="PARITY"
        )
    k = (m - r - s) // 2

    joint = fix.as_matrix().hstack(anti.as_matrix())
    index_twos = _count_twos(smith_normal_form(joint).invariant_factors)
    if (index_twos != k or fix.dimension != k + r or anti.dimension != k + s
            or M.trace() != r - s):
        logger.error("Involution invariant cross-check failed for %s", M)
        raise CanonicalFormError(
            "Involution invariants failed their cross-check",
            error_code="INVARIANT_MISMATCH",
            context={"k": k, "r": r, "s": s, "index_twos": index_twos}
        )
    return CanonicalInvolution(k, r, s)


def _mod2_lift(C: IntMatrix) -> Tuple[IntMatrix, IntMatrix]:
    """Unimodular R (with inverse) such that R @ C == [I_k; 0] modulo 2.

    Row operations are done over the integers while pivots are read mod 2.
    """
    a, k = C.shape
    work = C.array % 2
    R = np.eye(a, dtype=object)
    R_inv = np.eye(a, dtype=object)
    for col in range(k):
        pivot = next((i for i in range(col, a) if work[i, col] % 2), None)
        if pivot is None:
            raise CanonicalFormError(
                "Swap-block images are dependent modulo 2", error_code="MOD2_RANK"
            )
        if pivot != col:
            work[[col, pivot]] = work[[pivot, col]]
            R[[col, pivot]] = R[[pivot, col]]
            R_inv[:, [col, pivot]] = R_inv[:, [pivot, col]]
        for i in range(a):
            if i != col and work[i, col] % 2:
                work[i] = (work[i] - work[col]) % 2
                R[i] -= R[col]
                R_inv[:, col] += R_inv[:, i]
    return IntMatrix.from_array(R), IntMatrix.from_array(R_inv)


def _adjusted_side(z: IntMatrix, images: IntMatrix, side: LatticeBasis, k: int
                   ) -> Tuple[IntMatrix, IntMatrix]:
    """Move the z columns by side-lattice vectors so images land on new basis vectors.

    images holds (I +/- M) z. Returns the adjusted z and the new side basis
    B @ R_inv, whose first k columns equal the adjusted images.
    """
    a = side.dimension
    B = side.as_matrix()
    C = side.left_inverse() @ images
    R, R_inv = _mod2_lift(C)
    target = IntMatrix(tuple(IntMatrix.identity(a).rows[i][:k] for i in range(a)), k)
    residue = (target - R @ C).array
    if any(x % 2 for x in residue.flat):
        raise CanonicalFormError("Mod-2 lift left an odd residue", error_code="MOD2_LIFT")
    shift = IntMatrix.from_array(residue // 2)
    new_basis = B @ R_inv
    return z + new_basis @ shift, new_basis


def _conjugator_verified(M: IntMatrix, P: IntMatrix, target: IntMatrix) -> bool:
    return P.is_unimodular() and M @ P == P @ target


def _constructive_conjugator(M: IntMatrix, invariants: CanonicalInvolution) -> IntMatrix:
    m = M.nrows
    k = invariants.k
    identity = IntMatrix.identity(m)
    fix = kernel_lattice(M - identity)
    anti = kernel_lattice(M + identity)

    # Z^m / (Fix + Anti) is (Z/2)^k; its generators are the columns of U^-1
    # sitting at the diagonal 2s of the Smith form.
    joint = fix.as_matrix().hstack(anti.as_matrix())
    form = smith_normal_form(joint)
    U_inv = form.U.inverse()
    twos = [i for i in range(min(form.D.shape)) if form.D.rows[i][i] == 2]
    z = IntMatrix.from_columns([U_inv.column(i) for i in twos], m)

    z, fix_basis = _adjusted_side(z, (identity + M) @ z, fix, k)
    z, anti_basis = _adjusted_side(z, (identity - M) @ z, anti, k)

    Mz = M @ z
    columns: List[Tuple[int, ...]] = []
    for i in range(k):
        columns.append(z.column(i))
        columns.append(Mz.column(i))
    columns.extend(fix_basis.column(j) for j in range(k, fix_basis.ncols))
    columns.extend(anti_basis.column(j) for j in range(k, anti_basis.ncols))
    return IntMatrix.from_columns(columns, m)


def _bounded_search(M: IntMatrix, invariants: CanonicalInvolution) -> Optional[IntMatrix]:
    """Search conjugators with entries in the fallback range, column by column."""
    m = M.nrows
    bound = FALLBACK_SEARCH_RANGE
    candidates = [
        IntMatrix.from_columns([v], m) for v in itertools.product(range(-bound, bound + 1), repeat=m)
    ]
    nonzero = [v for v in candidates if any(v.column(0))]
    fixed = [v for v in nonzero if M @ v == v]
    negated = [v for v in nonzero if M @ v == -v]
    pools = [nonzero] * invariants.k + [fixed] * invariants.r + [negated] * invariants.s
    target = invariants.matrix()
    for choice in itertools.product(*pools):
        columns: List[Tuple[int, ...]] = []
        for position, v in enumerate(choice):
            columns.append(v.column(0))
            if position < invariants.k:
                columns.append((M @ v).column(0))
        P = IntMatrix.from_columns(columns, m)
        if _conjugator_verified(M, P, target):
            return P
    return None


def canonicalize_involution(M: IntMatrix) -> Tuple[CanonicalInvolution, IntMatrix]:
    """(k, r, s) together with a unimodular P satisfying P^-1 M P = A(k, r, s)."""
    invariants = involution_invariants(M)
    target = invariants.matrix()
    if M == target:
        return invariants, IntMatrix.identity(M.nrows)

    P = None
    try:
        P = _constructive_conjugator(M, invariants)
    except CanonicalFormError as e:
        logger.warning("Constructive conjugator failed for %s: %s", M, e)
    if P is not None and _conjugator_verified(M, P, target):
        return invariants, P

    if M.nrows <= FALLBACK_MAX_RANK:
        logger.warning("Falling back to bounded conjugator search for %s", M)
        P = _bounded_search(M, invariants)
        if P is not None:
            return invariants, P

    logger.error("No verified conjugator for %s", M)
    raise CanonicalFormError(
        f"Could not conjugate {M} to A{(invariants.k, invariants.r, invariants.s)}",
        error_code="NO_CONJUGATOR", context={"matrix": str(M)}
    )
