"""Chevalley-Eilenberg chains of a positively graded Lie algebra, bigraded by
word length p and internal degree q, with the differential induced by the
bracket.

A chain generator is a graded-commutative word in suspended basis classes.  A
letter is a pair (d, i): the i-th basis class of the algebra in degree d; its
suspended degree is d + 1, so letters with even d are odd after suspension
and may appear at most once.  Words are kept sorted by (d, i).  The internal
degree of a word is q = sum of the letter degrees d, the word length is p,
and the homological degree is r = p + q (the total suspended degree).

The differential contracts one pair of letters into their bracket:
    delta(sx_1 ^ ... ^ sx_p) =
        sum_{i<j} +- s[x_i, x_j] ^ (the word without letters i and j),
with the sign obtained by Koszul-transporting sx_i and then sx_j to the
front (using suspended degrees), applying the two-letter rule
delta(sx ^ sy) = (-1)^{|x|} s[x, y], and sorting the bracket letter back in.
delta^2 = 0 is checked bit-exactly by the test suite and by
ce_homology_table at build time.

The main instance is the positive-degree omega-preserving derivation algebra
of a connected sum of sphere products; its homology table gives the rational
homology of the corresponding block-automorphism classifying space.  All
windows are exact (generators have degree >= 2, so each graded piece is
finite-dimensional), hence every reported bidegree is certified.
"""

from fractions import Fraction

from .linalg import (RationalMatrix, ColumnSolver, homology_dim,
                     kernel_basis, rank)
from .manifolds import ManifoldSpec
from .derivations import DerOmegaSpace, der_bracket, gamma_act_derivation, \
    stabilize_derivation


class NotAChainMap(Exception):
    pass


class GradedLieData:
    """A positively graded Lie algebra presented by per-degree dimensions and
    a bracket on basis classes.

    bracket_fn((d1, i1), (d2, i2)) returns {j: coeff} for the component of
    the bracket in degree d1 + d2; it is consulted only when d1 + d2 is
    within the stored degree range.
    """

    def __init__(self, dims, bracket_fn):
        self.dims = {int(d): int(m) for d, m in dims.items() if m}
        self._bracket_fn = bracket_fn
        self._cache = {}

    @property
    def max_degree(self):
        return max(self.dims) if self.dims else 0

    def dim(self, d):
        return self.dims.get(d, 0)

    def bracket(self, x, y):
        key = (x, y)
        if key not in self._cache:
            self._cache[key] = {j: Fraction(c)
                                for j, c in self._bracket_fn(x, y).items()
                                if c}
        return self._cache[key]


def abelian_lie(dims):
    return GradedLieData(dims, lambda x, y: {})


def der_omega_lie(I: ManifoldSpec, dmax):
    """Der^+_omega(L_I) in degrees 1..dmax, with brackets coordinatized in
    the canonical reduced kernel bases."""
    spaces = {k: DerOmegaSpace(I, k) for k in range(1, dmax + 1)}
    dims = {k: sp.dim() for k, sp in spaces.items()}

    def bracket_fn(x, y):
        (d1, i1), (d2, i2) = x, y
        d = d1 + d2
        if d not in spaces:
            return {}
        th = der_bracket(spaces[d1].basis_derivation(i1),
                         spaces[d2].basis_derivation(i2))
        coords = spaces[d].coordinates(th)
        return {j: c for j, c in enumerate(coords) if c}

    lie = GradedLieData(dims, bracket_fn)
    lie.spaces = spaces
    return lie


# ---------------------------------------------------------------------------
# words

def ce_basis(g: GradedLieData, p, q):
    """All length-p internal-degree-q words, sorted lexicographically."""
    if p == 0:
        return [()] if q == 0 else []
    if p < 0 or q < p:
        return []
    letters = [(d, i) for d in sorted(g.dims) for i in range(g.dim(d))]
    out = []

    def rec(start, left_p, left_q, acc):
        if left_p == 0:
            if left_q == 0:
                out.append(tuple(acc))
            return
        for li in range(start, len(letters)):
            d, i = letters[li]
            if d > left_q - (left_p - 1):
                break
            acc.append((d, i))
            # a letter of even degree is odd after suspension: no repeats
            nxt = li if d % 2 == 1 else li + 1
            rec(nxt, left_p - 1, left_q - d, acc)
            acc.pop()

    rec(0, p, q, [])
    return out


def insert_letter(word, letter):
    """Sorted insertion with the Koszul sign in suspended degrees; returns
    (new_word, sign) or None when an odd suspended letter repeats."""
    d, _ = letter
    if d % 2 == 0 and letter in word:
        return None
    pos = 0
    sign = 1
    s_new = d + 1
    for let in word:
        if let < letter:
            pos += 1
            if (s_new * (let[0] + 1)) % 2:
                sign = -sign
        else:
            break
    return word[:pos] + (letter,) + word[pos:], sign


def boundary_of_word(g: GradedLieData, word):
    """delta of a single word as {word: coeff}."""
    out = {}
    p = len(word)
    susp = [d + 1 for d, _ in word]
    for i in range(p):
        for j in range(i + 1, p):
            sign = 1
            if (susp[i] * sum(susp[:i])) % 2:
                sign = -sign
            if (susp[j] * (sum(susp[:j]) - susp[i])) % 2:
                sign = -sign
            if word[i][0] % 2:
                sign = -sign
            br = g.bracket(word[i], word[j])
            if not br:
                continue
            rest = word[:i] + word[i + 1:j] + word[j + 1:]
            d = word[i][0] + word[j][0]
            for m, c in br.items():
                ins = insert_letter(rest, (d, m))
                if ins is None:
                    continue
                w2, s2 = ins
                out[w2] = out.get(w2, Fraction(0)) + sign * s2 * c
    return {w: c for w, c in out.items() if c}


def ce_boundary(g: GradedLieData, p, q):
    """Matrix of delta: (p, q) -> (p-1, q) in the canonical bases."""
    cols = ce_basis(g, p, q)
    rows = ce_basis(g, p - 1, q) if p >= 1 else []
    rindex = {w: r for r, w in enumerate(rows)}
    M = RationalMatrix(len(rows), len(cols))
    if p >= 2:
        for c, word in enumerate(cols):
            for w2, coeff in boundary_of_word(g, word).items():
                M.set_entry(rindex[w2], c, coeff)
    return M


def ce_homology_dims(g: GradedLieData, cutoff, check_d2=True):
    """{(p, q): dim H_{p,q}} for p + q <= cutoff."""
    out = {}
    for q in range(0, cutoff + 1):
        for p in range(0, cutoff - q + 1):
            d_out = ce_boundary(g, p, q)
            d_in = ce_boundary(g, p + 1, q)
            if check_d2 and p >= 1:
                assert ce_boundary(g, p - 1, q).matmul(d_out).is_zero(), \
                    "delta^2 != 0 at bidegree (%d, %d)" % (p, q)
            out[(p, q)] = homology_dim(d_in, d_out)
    return out


def ce_homology_table(I: ManifoldSpec, total_degree_cutoff):
    """Rows (p, q, dim, certified) for p + q <= cutoff, computed from the
    omega-preserving derivation algebra of the manifold."""
    assert total_degree_cutoff >= 1
    g = der_omega_lie(I, total_degree_cutoff)
    dims = ce_homology_dims(g, total_degree_cutoff)
    return [(p, q, dims[(p, q)], True) for (p, q) in sorted(dims)]


# ---------------------------------------------------------------------------
# induced maps

def lambda_map_matrix(phi, src: GradedLieData, tgt: GradedLieData, p, q):
    """Matrix of the p-th exterior power of a degree-0 map phi between the
    suspended algebras, from src bidegree (p, q) to tgt bidegree (p, q).

    phi: {degree: RationalMatrix} with column i holding the image of the
    i-th src class of that degree in the tgt basis.
    """
    cols = ce_basis(src, p, q)
    rows = ce_basis(tgt, p, q)
    rindex = {w: r for r, w in enumerate(rows)}
    M = RationalMatrix(len(rows), len(cols))
    for c, word in enumerate(cols):
        images = {(): Fraction(1)}
        # right-to-left so sorted insertion crosses exactly the smaller
        # letters originally to the right
        for d, i in reversed(word):
            phid = phi.get(d)
            col = {} if phid is None else \
                {r: phid.entry(r, i) for r in range(phid.rows)
                 if phid.entry(r, i)}
            nxt = {}
            for w, coeff in images.items():
                for j, v in col.items():
                    ins = insert_letter(w, (d, j))
                    if ins is None:
                        continue
                    w2, s = ins
                    nxt[w2] = nxt.get(w2, Fraction(0)) + coeff * v * s
            images = {w: v for w, v in nxt.items() if v}
        for w, v in images.items():
            M.set_entry(rindex[w], c, v)
    return M


def induced_homology_map(phi, source: GradedLieData, target: GradedLieData,
                         cutoff):
    """Per-bidegree matrices on homology induced by a degree-0 Lie map given
    on bases.  Raises NotAChainMap if the exterior powers of phi fail to
    commute with the differentials."""
    chain = {}
    for q in range(0, cutoff + 1):
        for p in range(0, cutoff - q + 2):
            chain[(p, q)] = lambda_map_matrix(phi, source, target, p, q)
    for q in range(0, cutoff + 1):
        for p in range(1, cutoff - q + 2):
            lhs = ce_boundary(target, p, q).matmul(chain[(p, q)])
            rhs = chain[(p - 1, q)].matmul(ce_boundary(source, p, q))
            if lhs != rhs:
                raise NotAChainMap(
                    "fails to commute with delta at bidegree (%d, %d)"
                    % (p, q))
    out = {}
    for q in range(0, cutoff + 1):
        for p in range(0, cutoff - q + 1):
            s_reps, _ = _homology_reps(source, p, q)
            t_reps, t_solver = _homology_reps(target, p, q)
            M = RationalMatrix(len(t_reps), len(s_reps))
            for c, z in enumerate(s_reps):
                img = _apply_matrix(chain[(p, q)], z)
                combo = t_solver.coefficients(img)
                assert combo is not None, "image of a cycle is not a cycle"
                for tag, v in combo.items():
                    if isinstance(tag, int):
                        M.set_entry(tag, c, v)
            out[(p, q)] = M
    return out


def _apply_matrix(M, vec):
    out = {}
    for (r, c), v in M.entries.items():
        w = vec.get(c)
        if w:
            out[r] = out.get(r, Fraction(0)) + v * w
    return {r: v for r, v in out.items() if v}


def _homology_reps(g: GradedLieData, p, q):
    """Cycle representatives of H_{p,q} plus a solver whose integer tags are
    the representative indices (boundary columns carry string tags)."""
    d_out = ce_boundary(g, p, q)
    d_in = ce_boundary(g, p + 1, q)
    solver = ColumnSolver()
    for c in range(d_in.cols):
        col = {r: d_in.entry(r, c) for r in range(d_in.rows)
               if d_in.entry(r, c)}
        solver.add(col, "b%d" % c)
    reps = []
    for z in kernel_basis(d_out):
        zv = {i: v for i, v in enumerate(z) if v}
        if solver.add(zv, len(reps)):
            reps.append(zv)
    return reps, solver


# ---------------------------------------------------------------------------
# maps coming from the geometry

def gamma_phi(gamma, I: ManifoldSpec, lie: GradedLieData):
    """Per-degree matrices of the action of a group element on the
    omega-preserving derivations, in the canonical bases of `lie`."""
    phi = {}
    for k, sp in lie.spaces.items():
        M = RationalMatrix(sp.dim(), sp.dim())
        for c in range(sp.dim()):
            th = gamma_act_derivation(gamma, sp.basis_derivation(c), I)
            for r, v in enumerate(sp.coordinates(th)):
                if v:
                    M.set_entry(r, c, v)
        phi[k] = M
    return phi


def stabilization_phi(I: ManifoldSpec, Iprime: ManifoldSpec,
                      src: GradedLieData, tgt: GradedLieData):
    """Per-degree matrices of the extension-by-zero map Der_omega(I) ->
    Der_omega(I')."""
    phi = {}
    for k, sp in src.spaces.items():
        tsp = tgt.spaces[k]
        M = RationalMatrix(tsp.dim(), sp.dim())
        for c in range(sp.dim()):
            th = stabilize_derivation(sp.basis_derivation(c), I, Iprime)
            for r, v in enumerate(tsp.coordinates(th)):
                if v:
                    M.set_entry(r, c, v)
        phi[k] = M
    return phi


# ---------------------------------------------------------------------------
# coinvariant genus scans

def chain_coefficient_blocks(l):
    """The bidegrees (p, q) contributing to the homological-degree-l chains."""
    if l == 0:
        return [(0, 0)]
    return [(p, l - p) for p in range(1, l + 1) if l - p >= p]


def chain_action_matrix(phi, lie: GradedLieData, l):
    """Block-diagonal matrix of the exterior-power action on the degree-l
    chain group."""
    blocks = [lambda_map_matrix(phi, lie, lie, p, q)
              for p, q in chain_coefficient_blocks(l)]
    return _block_diag(blocks)


def chain_map_matrix(phi, src: GradedLieData, tgt: GradedLieData, l):
    blocks = [lambda_map_matrix(phi, src, tgt, p, q)
              for p, q in chain_coefficient_blocks(l)]
    return _block_diag(blocks)


def _block_diag(blocks):
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    M = RationalMatrix(rows, cols)
    r0 = c0 = 0
    for b in blocks:
        for (r, c), v in b.entries.items():
            M.set_entry(r0 + r, c0 + c, v)
        r0 += b.rows
        c0 += b.cols
    return M


def coinvariant_scan(base: ManifoldSpec, p_stab, l, genus_max,
                     generators_path=None):
    """For g = 1..genus_max, the coinvariant dimension of the degree-l chain
    group under the mapping class group, plus surjectivity of each
    stabilization map on coinvariants.

    Returns (dims, surjective) where dims[g-1] is the coinvariant dimension
    at genus g and surjective[g-1] says whether the map from genus g to
    genus g+1 is onto on coinvariants (one entry per map inside the scan
    range, so the list is one shorter than dims).
    """
    from . import forms
    # letters in a degree-l word have internal degree at most l - 1
    dmax = max(1, l - 1)
    specs = {}
    I = base
    for g in range(1, genus_max + 1):
        specs[g] = I
        I = I.stabilized(p_stab)
    lies = {}
    diff_cols = {}
    dims = []
    for g in range(1, genus_max + 1):
        I = specs[g]
        lie = der_omega_lie(I, dmax)
        lies[g] = lie
        gens = forms.gamma_generators(I, generators_path)
        W = sum(len(ce_basis(lie, p, q))
                for p, q in chain_coefficient_blocks(l))
        cols = []
        for gamma in gens:
            phi = gamma_phi(gamma, I, lie)
            A = chain_action_matrix(phi, lie, l)
            for w in range(W):
                col = {r: A.entry(r, w) for r in range(W) if A.entry(r, w)}
                if w in col:
                    col[w] -= 1
                    if not col[w]:
                        del col[w]
                else:
                    col[w] = Fraction(-1)
                if col:
                    cols.append(col)
        diff_cols[g] = (W, cols)
        D = RationalMatrix(W, len(cols))
        for c, col in enumerate(cols):
            for r, v in col.items():
                D.set_entry(r, c, v)
        dims.append(W - rank(D))
    surjective = []
    for g in range(1, genus_max):
        I, J = specs[g], specs[g + 1]
        phi = stabilization_phi(I, J, lies[g], lies[g + 1])
        S = chain_map_matrix(phi, lies[g], lies[g + 1], l)
        W2, cols2 = diff_cols[g + 1]
        M = RationalMatrix(W2, S.cols + len(cols2))
        for (r, c), v in S.entries.items():
            M.set_entry(r, c, v)
        for c, col in enumerate(cols2):
            for r, v in col.items():
                M.set_entry(r, S.cols + c, v)
        surjective.append(rank(M) == W2)
    return dims, surjective
