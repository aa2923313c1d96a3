"""Certification of structure tables: Jacobi, Killing form, root systems, subalgebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .linalg import RatMatrix, invert, kernel_basis, rank, rref, solve_in_span
from .table import StructureTable


def check_jacobi(t: StructureTable) -> list:
    """All triples i < j < k where [[bi,bj],bk] cycling fails; empty means it holds."""
    n = t.dim
    ads = [t.ad_matrix(i) for i in range(n)]
    pair = {}
    for i in range(n):
        for j in range(i + 1, n):
            pair[(i, j)] = t.bracket_vector(i, j)
    violations = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                v = ads[i].apply(pair[(j, k)])
                w = ads[k].apply(pair[(i, j)])
                u = ads[j].apply(pair[(i, k)])
                total = [a + b - c for a, b, c in zip(v, w, u)]  # jac(i,j,k) with [b_j,[b_k,b_i]] = -ad_j [b_i,b_k]
                if any(x != 0 for x in total):
                    violations.append((i, j, k, tuple(total)))
    return violations


@dataclass
class DerivedCenter:
    derived_dim: int
    center_dim: int
    derived_basis: tuple
    center_basis: tuple


def derived_subalgebra_and_center(t: StructureTable) -> DerivedCenter:
    n = t.dim
    brackets = [t.bracket_vector(i, j) for i in range(n) for j in range(i + 1, n)]
    if brackets:
        red, pivots = rref(RatMatrix.from_rows(brackets))
        derived = tuple(tuple(red.row(r)) for r in range(len(pivots)))
    else:
        derived = ()
    stacked = [row for i in range(n) for row in t.ad_matrix(i).row_list()]
    if stacked:
        center = tuple(tuple(v) for v in kernel_basis(RatMatrix.from_rows(stacked)))
    else:
        center = tuple(tuple(v) for v in RatMatrix.identity(n).row_list())
    return DerivedCenter(len(derived), len(center), derived, center)


def killing_form(t: StructureTable) -> RatMatrix:
    """K_ij = trace(ad b_i . ad b_j); symmetric by construction, verified anyway."""
    n = t.dim
    ads = [t.ad_matrix(i) for i in range(n)]
    entries = []
    for i in range(n):
        for j in range(n):
            entries.append(ads[i].matmul(ads[j]).trace())
    K = RatMatrix(n, n, entries)
    if K != K.transpose():
        raise RuntimeError("Killing form came out asymmetric; table is inconsistent")
    return K


def killing_invariance_violations(t: StructureTable, K: RatMatrix) -> list:
    """Triples where K([bi,bj],bk) + K(bj,[bi,bk]) != 0."""
    n = t.dim
    out = []
    for i in range(n):
        for j in range(n):
            vij = t.bracket_vector(i, j)
            for k in range(n):
                vik = t.bracket_vector(i, k)
                lhs = sum((vij[m] * K[m, k] for m in range(n)), Fraction(0))
                rhs = sum((K[j, m] * vik[m] for m in range(n)), Fraction(0))
                if lhs + rhs != 0:
                    out.append((i, j, k))
    return out


@dataclass
class CartanCheck:
    ok: bool
    abelian: bool
    self_normalizing: bool
    normalizer_dim: int
    witness: tuple | None  # offending pair or normalizer vector outside the span


def cartan_check(t: StructureTable, indices) -> CartanCheck:
    """Verify a set of basis indices spans an abelian self-normalizing subalgebra."""
    indices = list(indices)
    n = t.dim
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            if any(x != 0 for x in t.bracket_vector(indices[a], indices[b])):
                return CartanCheck(False, False, False, 0, (indices[a], indices[b]))
    inside = set(indices)
    cond_rows = []
    for h in indices:
        adh = t.ad_matrix(h)
        for k in range(n):
            if k not in inside:
                cond_rows.append([-adh[k, j] for j in range(n)])  # row k of ad(b_h) applied to v
    if cond_rows:
        normalizer = kernel_basis(RatMatrix.from_rows(cond_rows))
    else:
        normalizer = RatMatrix.identity(n).row_list()
    ndim = len(normalizer)
    if ndim != len(indices):
        witness = next(
            (tuple(v) for v in normalizer if any(v[k] != 0 for k in range(n) if k not in inside)),
            None,
        )
        return CartanCheck(False, True, False, ndim, witness)
    return CartanCheck(True, True, True, ndim, None)


# --- exact eigen machinery ----------------------------------------------------

def char_poly(m: RatMatrix) -> list:
    """Coefficients of det(xI - M), highest power first, by Faddeev-LeVerrier."""
    n = m.rows
    coeffs = [Fraction(1)]
    Mk = m
    I = RatMatrix.identity(n)
    for k in range(1, n + 1):
        ck = Mk.trace() / k
        coeffs.append(-ck)
        if k < n:
            shifted = RatMatrix(n, n, [Mk.entries[idx] - (ck if idx % (n + 1) == 0 else 0)
                                       for idx in range(n * n)])
            Mk = m.matmul(shifted)
    return coeffs


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_eigenvalues(m: RatMatrix) -> list:
    """All rational eigenvalues, exactly.

    Scaling by the common denominator makes the matrix integral, whose monic integer
    characteristic polynomial confines rational roots to integer divisors of its
    constant term.
    """
    n = m.rows
    if n == 0:
        return []
    D = 1
    for x in m.entries:
        D = D * x.denominator // gcd(D, x.denominator)
    scaled = RatMatrix(n, n, [x * D for x in m.entries])
    coeffs = char_poly(scaled)
    ints = [int(c) for c in coeffs]
    # strip x^k factor: zero eigenvalues
    k = 0
    while ints[-1] == 0 and len(ints) > 1:
        ints.pop()
        k += 1
    found = []
    if k:
        found.append(Fraction(0))
    if len(ints) > 1:
        a0 = ints[-1]
        for d in _divisors(a0):
            for cand in (d, -d):
                acc = 0
                for c in ints:
                    acc = acc * cand + c
                if acc == 0:
                    found.append(Fraction(cand, D))
    return sorted(set(found))


def _restriction(op: RatMatrix, space: list) -> RatMatrix:
    """Matrix of op on the subspace spanned by space, in that basis."""
    cols = []
    for v in space:
        img = op.apply(v)
        coords = solve_in_span(space, img)
        if coords is None:
            raise ValueError("operator does not preserve the subspace")
        cols.append(coords)
    k = len(space)
    return RatMatrix.from_rows([[cols[j][i] for j in range(k)] for i in range(k)])


def simultaneous_eigenspaces(mats: list, dim: int) -> list:
    """Common eigenspace decomposition: list of (eigenvalue tuple, basis vectors).

    Errors with "not simultaneously diagonalizable over the rationals" when any
    restriction fails to split into rational eigenspaces of full total dimension.
    """
    spaces = [((), [list(r) for r in RatMatrix.identity(dim).row_list()])]
    for op in mats:
        refined = []
        for prefix, space in spaces:
            R = _restriction(op, space)
            eigs = rational_eigenvalues(R)
            total = 0
            for lam in eigs:
                shifted = RatMatrix(R.rows, R.cols,
                                    [R.entries[idx] - (lam if idx % (R.cols + 1) == 0 else 0)
                                     for idx in range(R.rows * R.cols)])
                for kv in kernel_basis(shifted):
                    lifted = [sum((kv[a] * space[a][b] for a in range(len(space))), Fraction(0))
                              for b in range(dim)]
                    refined.append((prefix + (lam,), lifted, lam))
                total += R.rows - rank(shifted)
            if total != len(space):
                raise ValueError("not simultaneously diagonalizable over the rationals")
        regrouped: dict = {}
        for prefix, vec, _ in refined:
            regrouped.setdefault(prefix, []).append(vec)
        spaces = [(prefix, vecs) for prefix, vecs in sorted(regrouped.items())]
    return spaces


@dataclass
class RootDatum:
    cartan_indices: tuple
    roots: tuple                 # sorted tuples of Fractions, zero excluded
    root_spaces: dict            # root -> tuple of basis indices
    cartan_killing: RatMatrix    # Killing form restricted to the Cartan indices


def root_decomposition(t: StructureTable, cartan_indices) -> RootDatum:
    """Split the table basis into simultaneous ad-eigenspaces of the Cartan elements.

    The zero-weight space must contain the Cartan span, and every root space must be
    spanned by table basis elements (all tables in scope are split in their own basis).
    """
    cartan_indices = tuple(cartan_indices)
    n = t.dim
    mats = [t.ad_matrix(h) for h in cartan_indices]
    spaces = simultaneous_eigenspaces(mats, n)
    root_spaces: dict = {}
    for weight, vecs in spaces:
        members = []
        for j in range(n):
            e = [Fraction(int(j == b)) for b in range(n)]
            if solve_in_span(vecs, e) is not None:
                members.append(j)
        if len(members) != len(vecs):
            raise ValueError("root spaces are not aligned with the table basis")
        root_spaces[weight] = tuple(members)
    zero = tuple(Fraction(0) for _ in cartan_indices)
    zero_members = root_spaces.get(zero, ())
    if not set(cartan_indices) <= set(zero_members):
        raise ValueError("Cartan elements do not lie in the zero weight space")
    K = killing_form(t)
    ck = RatMatrix.from_rows([[K[a, b] for b in cartan_indices] for a in cartan_indices])
    roots = tuple(sorted(w for w in root_spaces if w != zero))
    return RootDatum(cartan_indices, roots, root_spaces, ck)


_CATALOG = (
    ("A1", ((2,),)),
    ("A1xA1", ((2, 0), (0, 2))),
    ("A2", ((2, -1), (-1, 2))),
    ("B2", ((2, -1), (-2, 2))),
    ("G2", ((2, -1), (-3, 2))),
)
_CATALOG_ROOT_COUNT = {"A1": 2, "A1xA1": 4, "A2": 6, "B2": 8, "G2": 12}


def cartan_matrix_and_type(rd: RootDatum) -> tuple:
    """Cartan matrix from simple roots plus the catalog type, or "unrecognized".

    Inner products use the inverse of the Killing form restricted to the Cartan;
    positivity is lexicographic on the root's coordinate tuple; simple roots are the
    indecomposable positive roots, ordered by squared length then lexicographically.
    """
    kinv = invert(rd.cartan_killing)
    if kinv is None:
        raise ValueError("Killing form is degenerate on the Cartan subalgebra")

    def inner(a, b):
        return sum((a[i] * kinv[i, j] * b[j] for i in range(len(a)) for j in range(len(b))), Fraction(0))

    def positive(a):
        for x in a:
            if x != 0:
                return x > 0
        return False

    pos = [r for r in rd.roots if positive(r)]
    if 2 * len(pos) != len(rd.roots):
        return None, "unrecognized"
    pos_set = set(pos)
    simple = []
    for a in pos:
        decomposable = any(
            tuple(x - y for x, y in zip(a, b)) in pos_set for b in pos_set if b != a
        )
        if not decomposable:
            simple.append(a)
    simple.sort(key=lambda a: (inner(a, a), a))
    rank_ = len(rd.cartan_indices)
    if len(simple) != rank_:
        return None, "unrecognized"
    A = tuple(
        tuple(2 * inner(ai, aj) / inner(aj, aj) for aj in simple) for ai in simple
    )
    if any(x.denominator != 1 for row in A for x in row):
        return None, "unrecognized"
    A = tuple(tuple(int(x) for x in row) for row in A)
    for name, ref in _CATALOG:
        if len(ref) != rank_ or _CATALOG_ROOT_COUNT[name] != len(rd.roots):
            continue
        for perm in itertools.permutations(range(rank_)):
            permuted = tuple(tuple(A[perm[i]][perm[j]] for j in range(rank_)) for i in range(rank_))
            transposed = tuple(tuple(permuted[j][i] for j in range(rank_)) for i in range(rank_))
            if permuted == ref or transposed == ref:
                return A, name
    return A, "unrecognized"


def find_cartan_candidate(t: StructureTable) -> list:
    """Greedy maximal set of commuting basis elements with rationally diagonalizable ad."""
    n = t.dim
    chosen = []
    for i in range(n):
        adi = t.ad_matrix(i)
        total = 0
        for lam in rational_eigenvalues(adi):
            shifted = RatMatrix(n, n, [adi.entries[idx] - (lam if idx % (n + 1) == 0 else 0)
                                       for idx in range(n * n)])
            total += n - rank(shifted)
        if total != n:
            continue
        if all(not any(x != 0 for x in t.bracket_vector(i, j)) for j in chosen):
            chosen.append(i)
    return chosen


def lower_central_dims(t: StructureTable) -> list:
    """Dimensions of the lower central series g, [g,g], [g,[g,g]], ... until stable."""
    n = t.dim
    current = [list(r) for r in RatMatrix.identity(n).row_list()]
    dims = [n]
    while True:
        images = []
        for i in range(n):
            for v in current:
                images.append(t.ad_matrix(i).apply(v))
        if not images or all(all(x == 0 for x in v) for v in images):
            dims.append(0)
            return dims
        red, pivots = rref(RatMatrix.from_rows(images))
        nxt = [red.row(r) for r in range(len(pivots))]
        dims.append(len(nxt))
        if len(nxt) == dims[-2]:
            return dims
        current = nxt


@dataclass
class Sl3Verdict:
    ok: bool
    closure_failures: tuple   # pairs whose bracket leaves the subalgebra span
    model_failures: tuple     # pairs where the 3x3 matrix model disagrees
    invariance_failures: tuple  # (subalgebra name, module name) pairs


_SL3_NAMES = ("h1", "h2", "a12", "a13", "a23", "a21", "a31", "a32")


def _e(i, j):
    m = [[Fraction(0)] * 3 for _ in range(3)]
    m[i - 1][j - 1] = Fraction(1)
    return RatMatrix.from_rows(m)


def verify_sl3_subalgebra(t: StructureTable) -> Sl3Verdict:
    """Check h and a elements realize 3x3 traceless matrices and x, y spans are modules.

    a_ij maps to the elementary matrix E_ij, h1 to E11 - E22, h2 to E22 - E33.
    """
    idx = {name: t.index_of(name) for name in _SL3_NAMES}

    def msub(a, b):
        return RatMatrix(3, 3, [x - y for x, y in zip(a.entries, b.entries)])
    model = {
        "h1": msub(_e(1, 1), _e(2, 2)),
        "h2": msub(_e(2, 2), _e(3, 3)),
        "a12": _e(1, 2), "a13": _e(1, 3), "a23": _e(2, 3),
        "a21": _e(2, 1), "a31": _e(3, 1), "a32": _e(3, 2),
    }
    x_idx = {t.index_of(n) for n in ("x1", "x2", "x3")}
    y_idx = {t.index_of(n) for n in ("y1", "y2", "y3")}
    sub_idx = {idx[n]: n for n in _SL3_NAMES}

    closure_failures, model_failures = [], []
    names = list(_SL3_NAMES)
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            na, nb = names[a], names[b]
            bmap = t.bracket_map(idx[na], idx[nb])
            if any(k not in sub_idx for k in bmap):
                closure_failures.append((na, nb))
                continue
            commutator = msub(model[na].matmul(model[nb]), model[nb].matmul(model[na]))
            recon = RatMatrix.zeros(3, 3)
            for k, c in bmap.items():
                recon = RatMatrix(3, 3, [x + c * y for x, y in zip(recon.entries, model[sub_idx[k]].entries)])
            if recon != commutator:
                model_failures.append((na, nb))

    invariance_failures = []
    for na in names:
        for vset, vnames, label in ((x_idx, ("x1", "x2", "x3"), "x"), (y_idx, ("y1", "y2", "y3"), "y")):
            for vn in vnames:
                bmap = t.bracket_map(idx[na], t.index_of(vn))
                if any(k not in vset for k in bmap):
                    invariance_failures.append((na, vn))

    return Sl3Verdict(
        ok=not (closure_failures or model_failures or invariance_failures),
        closure_failures=tuple(closure_failures),
        model_failures=tuple(model_failures),
        invariance_failures=tuple(invariance_failures),
    )
