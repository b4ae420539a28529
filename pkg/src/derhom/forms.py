"""Automorphisms of graded hyperbolic modules: membership, generators,
stabilization, coinvariants, and stability-bound arithmetic.

An automorphism candidate stores one integer matrix M^p per degree p < n/2
(the degree n-p action is the inverse transpose, so it is not stored) and,
for n even, a middle block (A, B, C, D) of size g_{n/2} acting on the middle
homology in the basis (a_1..a_g, b_1..b_g).

Membership is the hyperbolic-automorphism condition list with
lambda = (-1)^{n/2} and form parameter Lambda = lambda_parameter(n):
    D^T A + lambda B^T C = 1
    D^T B + lambda B^T D = 0
    A^T C + lambda C^T A = 0
    C^T A and D^T B have diagonal entries in Lambda,
while realization_conditions evaluates the equivalent list arising from
realizing automorphisms by diffeomorphisms:
    (M^l)^T M^{n-l} = id   for l != n/2, and for the middle block
    A^T D + lambda C^T B = 1
    A^T C + lambda C^T A = 0
    B^T D + lambda D^T B = 0
    A^T C and B^T D have diagonal entries in Lambda.
The two lists are term-by-term transposes of each other; their agreement on
all inputs is part of the test suite, not assumed here.

Generator sets: GL_g(Z) and Sp_2g(Z) factors have built-in generators; the
O_{g,g}(Z) and even-subgroup (Lambda = 2Z) factors need an external
generator file (JSON list of {"group": "O_gg"|"Sp2g_even", "g": ...,
"matrix": [[...]]}); a default file for small g ships with the package.
"""

import json
import os
from dataclasses import dataclass
from fractions import Fraction

from .linalg import RationalMatrix, rank
from .manifolds import ManifoldSpec, check_stabilization

DEFAULT_GENERATOR_FILE = os.path.join(os.path.dirname(__file__), "data",
                                      "hyperbolic_generators.json")


class ShapeMismatch(Exception):
    pass


class NotAMember(Exception):
    pass


class MissingGeneratorFile(Exception):
    pass


class NotInverseClosed(Exception):
    pass


# ---------------------------------------------------------------------------
# small dense integer/rational matrix helpers (plain lists of lists)

def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_transpose(M):
    return tuple(tuple(row[i] for row in M) for i in range(len(M[0]))) if M \
        else ()


def mat_mul(X, Y):
    return tuple(tuple(sum(X[i][k] * Y[k][j] for k in range(len(Y)))
                       for j in range(len(Y[0]))) for i in range(len(X)))


def mat_add(X, Y, coeff=1):
    return tuple(tuple(X[i][j] + coeff * Y[i][j] for j in range(len(X[0])))
                 for i in range(len(X)))


def mat_scale(X, c):
    return tuple(tuple(c * v for v in row) for row in X)


def mat_eq(X, Y):
    return all(X[i][j] == Y[i][j]
               for i in range(len(X)) for j in range(len(X[0])))


def rational_inverse(M):
    """Inverse of a square matrix over Q (tuples of Fractions), or None."""
    n = len(M)
    if n == 0:
        return ()
    aug = [[Fraction(M[i][j]) for j in range(n)]
           + [Fraction(1 if i == j else 0) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        lead = aug[col][col]
        aug[col] = [v / lead for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [a - c * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def integer_inverse(M):
    """Inverse as an integer matrix; raises ValueError if M is not in GL(Z)."""
    inv = rational_inverse(M)
    if inv is None:
        raise ValueError("matrix is singular")
    out = []
    for row in inv:
        orow = []
        for v in row:
            if v.denominator != 1:
                raise ValueError("inverse is not integral")
            orow.append(int(v))
        out.append(tuple(orow))
    return tuple(out)


def is_unimodular(M):
    try:
        integer_inverse(M)
        return True
    except ValueError:
        return False


def transpose_inverse(M):
    """(M^T)^{-1} over Q (entries Fractions); raises if singular."""
    inv = rational_inverse(mat_transpose(M))
    if inv is None:
        raise ValueError("matrix is singular")
    return inv


def block_matrix(A, B, C, D):
    g = len(A)
    top = [tuple(A[i]) + tuple(B[i]) for i in range(g)]
    bot = [tuple(C[i]) + tuple(D[i]) for i in range(g)]
    return tuple(top + bot)


def split_blocks(M):
    g = len(M) // 2
    A = tuple(tuple(row[:g]) for row in M[:g])
    B = tuple(tuple(row[g:]) for row in M[:g])
    C = tuple(tuple(row[:g]) for row in M[g:])
    D = tuple(tuple(row[g:]) for row in M[g:])
    return A, B, C, D


# ---------------------------------------------------------------------------
# form parameters

LAMBDA_NONE = "none"
LAMBDA_ZERO = "0"
LAMBDA_Z = "Z"
LAMBDA_2Z = "2Z"


def lambda_parameter(n):
    """The form parameter forced by the dimension."""
    assert n >= 6
    if n % 2 == 1:
        return LAMBDA_NONE
    d = n // 2
    if d % 2 == 0:
        return LAMBDA_ZERO
    if d in (3, 7):
        return LAMBDA_Z
    return LAMBDA_2Z


def in_lambda(value, param):
    if param == LAMBDA_ZERO:
        return value == 0
    if param == LAMBDA_Z:
        return True
    if param == LAMBDA_2Z:
        return value % 2 == 0
    raise ValueError("no form parameter for odd n")


# ---------------------------------------------------------------------------
# group elements

@dataclass(frozen=True)
class GammaElement:
    blocks: tuple   # tuple of (p, matrix) for p < n/2, sorted by p
    middle: object  # (A, B, C, D) or None

    @classmethod
    def make(cls, blocks=None, middle=None):
        items = []
        for p, M in sorted((blocks or {}).items()):
            items.append((p, tuple(tuple(int(v) for v in row) for row in M)))
        mid = None
        if middle is not None:
            mid = tuple(tuple(tuple(int(v) for v in row) for row in Mx)
                        for Mx in middle)
        return cls(tuple(items), mid)

    def block_dict(self):
        return dict(self.blocks)

    @classmethod
    def identity(cls, I: ManifoldSpec):
        n = I.n
        blocks = {}
        middle = None
        for p in sorted({pp for pp, _ in I.pairs}):
            g = I.genus(p)
            if 2 * p != n:
                blocks[p] = mat_identity(g)
            else:
                middle = (mat_identity(g), mat_scale(mat_identity(g), 0),
                          mat_scale(mat_identity(g), 0), mat_identity(g))
        return cls.make(blocks, middle)

    def multiply(self, other):
        """Group product: the automorphism of self applied after the one of
        other.  In the row convention phi_M(a_i) = sum_j M[i][j] a_j the
        composite phi_self o phi_other has matrix (other * self)."""
        blocks = {}
        sb, ob = self.block_dict(), other.block_dict()
        assert set(sb) == set(ob)
        for p, M in sb.items():
            blocks[p] = mat_mul(ob[p], M)
        middle = None
        if self.middle is not None:
            assert other.middle is not None
            M = mat_mul(block_matrix(*other.middle),
                        block_matrix(*self.middle))
            middle = split_blocks(M)
        return GammaElement.make(blocks, middle)

    def inverse(self):
        blocks = {p: integer_inverse(M) for p, M in self.blocks}
        middle = None
        if self.middle is not None:
            middle = split_blocks(integer_inverse(block_matrix(*self.middle)))
        return GammaElement.make(blocks, middle)


def _check_shapes(g: GammaElement, I: ManifoldSpec):
    n = I.n
    expected = {}
    for p, _ in I.pairs:
        if 2 * p != n:
            expected[p] = I.genus(p)
    got = g.block_dict()
    if set(got) != set(expected):
        raise ShapeMismatch("blocks for degrees %s, expected %s"
                            % (sorted(got), sorted(expected)))
    for p, M in got.items():
        sz = expected[p]
        if len(M) != sz or any(len(row) != sz for row in M):
            raise ShapeMismatch("block %d is not %dx%d" % (p, sz, sz))
    gmid = I.genus(n // 2) if n % 2 == 0 else 0
    if gmid:
        if g.middle is None:
            raise ShapeMismatch("missing middle block")
        for M in g.middle:
            if len(M) != gmid or any(len(row) != gmid for row in M):
                raise ShapeMismatch("middle blocks are not %dx%d"
                                    % (gmid, gmid))
    elif g.middle is not None:
        raise ShapeMismatch("unexpected middle block")


def _middle_member(A, B, C, D, lam, param):
    g = len(A)
    one = mat_identity(g)
    At, Bt, Ct, Dt = (mat_transpose(X) for X in (A, B, C, D))
    if not mat_eq(mat_add(mat_mul(Dt, A), mat_mul(Bt, C), lam), one):
        return False
    if any(v for row in mat_add(mat_mul(Dt, B), mat_mul(Bt, D), lam)
           for v in row):
        return False
    if any(v for row in mat_add(mat_mul(At, C), mat_mul(Ct, A), lam)
           for v in row):
        return False
    CtA = mat_mul(Ct, A)
    DtB = mat_mul(Dt, B)
    return all(in_lambda(CtA[i][i], param) and in_lambda(DtB[i][i], param)
               for i in range(g))


def _middle_realization(A, B, C, D, lam, param):
    g = len(A)
    one = mat_identity(g)
    At, Bt, Ct, Dt = (mat_transpose(X) for X in (A, B, C, D))
    if not mat_eq(mat_add(mat_mul(At, D), mat_mul(Ct, B), lam), one):
        return False
    if any(v for row in mat_add(mat_mul(At, C), mat_mul(Ct, A), lam)
           for v in row):
        return False
    if any(v for row in mat_add(mat_mul(Bt, D), mat_mul(Dt, B), lam)
           for v in row):
        return False
    AtC = mat_mul(At, C)
    BtD = mat_mul(Bt, D)
    return all(in_lambda(AtC[i][i], param) and in_lambda(BtD[i][i], param)
               for i in range(g))


def is_member(g: GammaElement, I: ManifoldSpec) -> bool:
    _check_shapes(g, I)
    n = I.n
    for _, M in g.blocks:
        if not is_unimodular(M):
            return False
    if g.middle is not None:
        lam = (-1) ** (n // 2)
        return _middle_member(*g.middle, lam, lambda_parameter(n))
    return True


def realization_conditions(g: GammaElement, I: ManifoldSpec) -> bool:
    _check_shapes(g, I)
    n = I.n
    for _, M in g.blocks:
        # (M^l)^T M^{n-l} = id with M^{n-l} required integral: the stored
        # degree-(n-l) action is ((M^l)^T)^{-1}, so the condition is exactly
        # that this inverse exists over Z.
        try:
            integer_inverse(mat_transpose(M))
        except ValueError:
            return False
    if g.middle is not None:
        lam = (-1) ** (n // 2)
        return _middle_realization(*g.middle, lam, lambda_parameter(n))
    return True


# ---------------------------------------------------------------------------
# generators

def _gl_generators(g):
    """Inverse-closed generating set of GL_g(Z)."""
    out = []
    if g == 1:
        out.append(((-1,),))
        return out
    for i in range(g - 1):
        for (r, c) in ((i, i + 1), (i + 1, i)):
            for val in (1, -1):
                E = [[1 if a == b else 0 for b in range(g)] for a in range(g)]
                E[r][c] = val
                out.append(tuple(tuple(row) for row in E))
    flip = [[1 if a == b else 0 for b in range(g)] for a in range(g)]
    flip[0][0] = -1
    out.append(tuple(tuple(row) for row in flip))
    return out


def _sp_generators(g):
    """Inverse-closed generators of Sp_2g(Z) as (A, B, C, D) tuples."""
    one = mat_identity(g)
    zero = mat_scale(one, 0)
    out = []
    for i in range(g):
        for val in (1, -1):
            E = [[0] * g for _ in range(g)]
            E[i][i] = val
            E = tuple(tuple(row) for row in E)
            out.append((one, E, zero, one))
            out.append((one, zero, E, one))
    for M in _gl_generators(g):
        Minvt = tuple(tuple(int(v) for v in row)
                      for row in transpose_inverse(M))
        out.append((M, zero, zero, Minvt))
    return out


def _load_generator_file(path, group, g):
    if path is None or not os.path.exists(path):
        raise MissingGeneratorFile(
            "a generator file is required for the %s factor (g = %d)"
            % (group, g))
    with open(path) as f:
        data = json.load(f)
    mats = [tuple(tuple(int(v) for v in row) for row in entry["matrix"])
            for entry in data
            if entry.get("group") == group and int(entry.get("g", -1)) == g]
    if not mats:
        raise MissingGeneratorFile(
            "no %s entries of genus %d in %s" % (group, g, path))
    # close under inverses
    have = set(mats)
    for M in list(mats):
        inv = integer_inverse(M)
        if inv not in have:
            mats.append(inv)
            have.add(inv)
    return [split_blocks(M) for M in mats]


def gamma_generators(I: ManifoldSpec, generators_path=None):
    """A finite inverse-closed list of group elements, one factor at a time,
    each embedded in the identity of the other factors."""
    n = I.n
    ident = GammaElement.identity(I)
    out = []
    for p in sorted({pp for pp, _ in I.pairs}):
        g = I.genus(p)
        if 2 * p != n:
            for M in _gl_generators(g):
                blocks = ident.block_dict()
                blocks[p] = M
                out.append(GammaElement.make(blocks, ident.middle))
        else:
            param = lambda_parameter(n)
            if param == LAMBDA_Z:
                mids = _sp_generators(g)
            else:
                group = "O_gg" if param == LAMBDA_ZERO else "Sp2g_even"
                if generators_path is None \
                        and os.path.exists(DEFAULT_GENERATOR_FILE):
                    generators_path = DEFAULT_GENERATOR_FILE
                mids = _load_generator_file(generators_path, group, g)
            for mid in mids:
                out.append(GammaElement.make(ident.block_dict(), mid))
    for el in out:
        assert is_member(el, I), "generator fails the membership conditions"
    return out


def stabilize_element(g: GammaElement, I: ManifoldSpec,
                      Iprime: ManifoldSpec) -> GammaElement:
    """Extension by 1 in the slot of the new summand."""
    p, _q = check_stabilization(I, Iprime)
    n = I.n
    blocks = g.block_dict()
    middle = g.middle
    if 2 * p != n:
        M = blocks.get(p, ())
        sz = len(M)
        ext = [list(row) + [0] for row in M]
        ext.append([0] * sz + [1])
        blocks[p] = tuple(tuple(row) for row in ext)
    else:
        if middle is None:
            zero1 = ((0,),)
            middle = (((1,),), zero1, zero1, ((1,),))
        else:
            A, B, C, D = middle

            def ext(M, corner):
                sz = len(M)
                rows = [list(row) + [0] for row in M]
                rows.append([0] * sz + [corner])
                return tuple(tuple(r) for r in rows)

            middle = (ext(A, 1), ext(B, 0), ext(C, 0), ext(D, 1))
    return GammaElement.make(blocks, middle)


# ---------------------------------------------------------------------------
# coinvariants and bounds

def coinvariants_dim(generators, actions) -> int:
    """dim of the coinvariants W / span{(rho(gamma) - 1) w}.

    actions: one RationalMatrix per generator, all square of the same size.
    The generator list must be closed under inverses (checked on the action
    matrices), which makes the difference span equal to the augmentation
    ideal image for the whole group generated.
    """
    assert len(generators) == len(actions)
    if not actions:
        return 0
    dim = actions[0].rows
    for A in actions:
        assert A.rows == A.cols == dim
    for A in actions:
        if not any(A.matmul(B) == RationalMatrix.identity(dim)
                   for B in actions):
            raise NotInverseClosed(
                "an action matrix has no inverse in the list")
    diff = RationalMatrix(dim, dim * len(actions))
    col = 0
    for A in actions:
        for (r, c), v in A.entries.items():
            diff.add_entry(r, col + c, v)
        for j in range(dim):
            diff.add_entry(j, col + j, -1)
        col += dim
    return dim - rank(diff)


def stability_bound(i, k, p, n) -> int:
    """Smallest genus from which the stabilization in homological degree i
    with coefficients of polynomial degree k is guaranteed an isomorphism."""
    assert 3 <= p <= n / 2
    if 2 * p == n:
        return 2 * i + k + 5
    return 2 * i + k + 3
