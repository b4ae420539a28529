"""Derivations of the free graded Lie algebra and the omega-kernel.

A degree-k derivation is stored by its values on generators; freeness makes
this lossless.  All computations here are exact: generator degrees are >= 1,
so the value of a derivation on any finite element involves only finitely
many weights and no truncation error can occur.  The weight_cutoff arguments
are honored as declared windows -- if a requested window is too small to
contain the evaluation at omega, CutoffTooSmall is raised rather than
silently truncating.

The identification of derivations with L(V) (x) V uses the desuspended
intersection pairing on V fixed as
    <a_i, b_i> = 1,   <b_i, a_i> = -(-1)^{|a_i||b_i|},
all other pairs zero (degrees are the desuspended ones), and
theta_{chi,x}(y) = chi * <x, y>.
"""

from fractions import Fraction

from .linalg import (RationalMatrix, kernel_basis_with_free_columns,
                     ColumnSolver)
from .freelie import (GradedSpace, LieElement, LieMonomial, bracket,
                      degree_basis, expand_tree, generator_space,
                      make_monomial, normalize_tensor, omega,
                      apply_generator_substitution)
from .manifolds import ManifoldSpec, check_stabilization


class CutoffTooSmall(Exception):
    pass


class Derivation:
    """Degree-k derivation of L(V), by generator values."""

    __slots__ = ("space", "degree", "values")

    def __init__(self, space, degree, values):
        self.space = space
        self.degree = degree
        self.values = {}
        for label, elt in values.items():
            if elt is not None and not elt.is_zero():
                d = elt.degree()
                assert d == space.degree(label) + degree, \
                    "value on %s has degree %s, expected %d" % (
                        label, d, space.degree(label) + degree)
                self.values[label] = elt

    @classmethod
    def zero(cls, space, degree):
        return cls(space, degree, {})

    def is_zero(self):
        return not self.values

    def value(self, label):
        return self.values.get(label, LieElement.zero(self.space))

    def add(self, other, coeff=1):
        assert self.degree == other.degree and self.space == other.space
        vals = dict(self.values)
        for label, elt in other.values.items():
            cur = vals.get(label, LieElement.zero(self.space))
            vals[label] = cur.add(elt, coeff)
        return Derivation(self.space, self.degree, vals)

    def scale(self, coeff):
        return Derivation(self.space, self.degree,
                          {l: e.scale(coeff) for l, e in self.values.items()})

    def apply(self, x: LieElement) -> LieElement:
        """Leibniz extension: on a tensor word, replace each letter in turn
        by its value, with the Koszul sign (-1)^{k * (degree of the prefix)}
        for moving the degree-k derivation past the prefix."""
        space = self.space
        k = self.degree
        value_expansions = {}
        for label, elt in self.values.items():
            value_expansions[space.index(label)] = elt.tensor_expansion()
        tensor = {}
        for mono, c in x.terms.items():
            for word, w_coeff in expand_tree(space, mono.tree).items():
                base = c * w_coeff
                prefix_degree = 0
                for pos, letter in enumerate(word):
                    exp = value_expansions.get(letter)
                    if exp:
                        sign = -1 if (k * prefix_degree) % 2 else 1
                        pre, post = word[:pos], word[pos + 1:]
                        for mid, mc in exp.items():
                            nw = pre + mid + post
                            v = tensor.get(nw, Fraction(0)) + base * sign * mc
                            if v:
                                tensor[nw] = v
                            else:
                                tensor.pop(nw, None)
                    prefix_degree += space.degree_of_index(letter)
        return normalize_tensor(space, tensor)

    def __repr__(self):
        if not self.values:
            return "Der(0)"
        return "Der{%s}" % ", ".join(
            "%s -> %s" % (l, e) for l, e in sorted(self.values.items()))


def der_bracket(theta, eta):
    """[theta, eta] = theta o eta - (-1)^{|theta||eta|} eta o theta.

    The composites are not derivations individually but the bracket is; the
    generator values of the bracket are obtained by evaluating both
    composites on generators.
    """
    sign = -1 if (theta.degree * eta.degree) % 2 else 1
    space = theta.space
    vals = {}
    for label in space.labels:
        a = theta.apply(eta.value(label))
        b = eta.apply(theta.value(label))
        v = a.add(b, -sign)
        if not v.is_zero():
            vals[label] = v
    return Derivation(space, theta.degree + eta.degree, vals)


class DerivationSpace:
    """Coordinates on Der_k(L(V)): one coordinate per (generator, monomial of
    degree |gen| + k).  Coordinate order: generator order, then the
    deterministic monomial order of degree_basis."""

    def __init__(self, space: GradedSpace, k: int, weight_cutoff=None):
        assert k >= 1
        self.space = space
        self.k = k
        self.coords = []
        needed = 0
        for label, d in space.basis:
            monos = degree_basis(space, d + k)
            if monos:
                needed = max(needed, max(mo.weight for mo in monos))
            self.coords.extend((label, mo) for mo in monos)
        if weight_cutoff is not None and weight_cutoff < needed:
            raise CutoffTooSmall(
                "values need weight %d, cutoff is %d" % (needed, weight_cutoff))
        self._index = {key: i for i, key in enumerate(self.coords)}

    def dim(self):
        return len(self.coords)

    def basis_derivation(self, i):
        label, mono = self.coords[i]
        return Derivation(self.space, self.k,
                          {label: LieElement.from_monomial(self.space, mono)})

    def basis(self):
        return [self.basis_derivation(i) for i in range(self.dim())]

    def vector_from_derivation(self, theta):
        assert theta.degree == self.k
        vec = {}
        for label, elt in theta.values.items():
            for mono, c in elt.terms.items():
                vec[self._index[(label, mono)]] = c
        return vec

    def derivation_from_vector(self, vec):
        vals = {}
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        for i, c in items:
            if not c:
                continue
            label, mono = self.coords[i]
            cur = vals.setdefault(label, {})
            cur[mono] = cur.get(mono, Fraction(0)) + Fraction(c)
        return Derivation(self.space, self.k,
                          {l: LieElement(self.space, d)
                           for l, d in vals.items()})


def der_basis(V: GradedSpace, k: int, weight_cutoff=None):
    """Basis of Der_k(L(V)) as a list of single-value derivations."""
    return DerivationSpace(V, k, weight_cutoff).basis()


class DerOmegaSpace:
    """Basis data for Der_{omega,k} = ker(ev_omega: Der_k -> L^{>=2}).

    The kernel basis is in reduced-echelon form, so a Der_k coordinate vector
    already known to lie in the kernel is expressed in this basis by reading
    off its free-column coordinates.
    """

    def __init__(self, I: ManifoldSpec, k: int, weight_cutoff=None):
        self.I = I
        self.k = k
        self.space = generator_space(I)
        self.amb = DerivationSpace(self.space, k, weight_cutoff)
        self.om = omega(I)
        target = degree_basis(self.space, k + I.n - 2, min_weight=2)
        if weight_cutoff is not None and target \
                and max(mo.weight for mo in target) > weight_cutoff:
            raise CutoffTooSmall("evaluation at omega exceeds weight window")
        tindex = {mo: r for r, mo in enumerate(target)}
        M = RationalMatrix(len(target), self.amb.dim())
        for j in range(self.amb.dim()):
            image = self.amb.basis_derivation(j).apply(self.om)
            for mono, c in image.terms.items():
                M.set_entry(tindex[mono], j, c)
        self.ev_matrix = M
        self.kernel, self.free_cols = kernel_basis_with_free_columns(M)
        self._free_pos = {col: i for i, col in enumerate(self.free_cols)}

    def dim(self):
        return len(self.kernel)

    def basis_derivation(self, i):
        return self.amb.derivation_from_vector(self.kernel[i])

    def basis(self):
        return [self.basis_derivation(i) for i in range(self.dim())]

    def coordinates(self, theta, verify=False):
        """Coordinates of a derivation already lying in Der_{omega,k}."""
        vec = self.amb.vector_from_derivation(theta)
        coords = [Fraction(0)] * self.dim()
        for col, i in self._free_pos.items():
            v = vec.get(col)
            if v:
                coords[i] = v
        if verify:
            recon = {}
            for i, c in enumerate(coords):
                if c:
                    for col, v in enumerate(self.kernel[i]):
                        if v:
                            recon[col] = recon.get(col, Fraction(0)) + c * v
            recon = {c: v for c, v in recon.items() if v}
            assert recon == {c: v for c, v in vec.items() if v}, \
                "derivation is not in the omega-kernel span"
        return coords


def der_omega_basis(I: ManifoldSpec, k: int, weight_cutoff=None):
    """Basis of the omega-annihilating degree-k derivations."""
    return DerOmegaSpace(I, k, weight_cutoff).basis()


# ---------------------------------------------------------------------------
# the L(V) (x) V identification

def pairing_partner(I: ManifoldSpec, label):
    """The generator paired with `label`, and the pairing value <label, partner>."""
    space = generator_space(I)
    i = int(label[1:]) - 1
    p, q = I.pairs[i]
    if label.startswith("a"):
        return "b%d" % (i + 1), Fraction(1)
    # <b, a> = -(-1)^{|a||b|} <a, b>
    da, db = p - 1, q - 1
    sign = -((-1) ** (da * db))
    return "a%d" % (i + 1), Fraction(sign)


def theta_from_tensor(chi: LieElement, x_label: str, I: ManifoldSpec):
    """The derivation theta_{chi,x}: y -> chi * <x, y>."""
    space = generator_space(I)
    partner, val = pairing_partner(I, x_label)
    k = chi.degree() + space.degree(x_label) - (I.n - 2)
    return Derivation(space, k, {partner: chi.scale(val)})


# ---------------------------------------------------------------------------
# Gamma-action and stabilization

def _gamma_substitution(g, I: ManifoldSpec, inverse=False):
    """The substitution label -> {letter index: coeff} on the generator space
    induced by a GammaElement.  Row convention: the image of the i-th basis
    class of H_p is sum_j M[i][j] (j-th basis class)."""
    from . import forms
    space = generator_space(I)
    n = I.n
    sub = {}
    for p in sorted({pp for pp, _ in I.pairs}):
        idxs = [i for i, (pp, _) in enumerate(I.pairs) if pp == p]
        if 2 * p != n:
            M = g.block_dict()[p]
            if inverse:
                M = forms.integer_inverse(M)
            Minvt = forms.transpose_inverse(M)
            for r, i in enumerate(idxs):
                sub["a%d" % (i + 1)] = {
                    space.index("a%d" % (j + 1)): Fraction(M[r][c])
                    for c, j in enumerate(idxs) if M[r][c]}
                sub["b%d" % (i + 1)] = {
                    space.index("b%d" % (j + 1)): Minvt[r][c]
                    for c, j in enumerate(idxs) if Minvt[r][c]}
        else:
            A, B, C, D = g.middle
            if inverse:
                big = forms.block_matrix(A, B, C, D)
                big = forms.integer_inverse(big)
                gsz = len(A)
                A = [row[:gsz] for row in big[:gsz]]
                B = [row[gsz:] for row in big[:gsz]]
                C = [row[:gsz] for row in big[gsz:]]
                D = [row[gsz:] for row in big[gsz:]]
            for r, i in enumerate(idxs):
                row_a = {}
                row_b = {}
                for c, j in enumerate(idxs):
                    if A[r][c]:
                        row_a[space.index("a%d" % (j + 1))] = Fraction(A[r][c])
                    if B[r][c]:
                        row_a[space.index("b%d" % (j + 1))] = Fraction(B[r][c])
                    if C[r][c]:
                        row_b[space.index("a%d" % (j + 1))] = Fraction(C[r][c])
                    if D[r][c]:
                        row_b[space.index("b%d" % (j + 1))] = Fraction(D[r][c])
                sub["a%d" % (i + 1)] = row_a
                sub["b%d" % (i + 1)] = row_b
    return sub


def gamma_act_derivation(g, theta: Derivation, I: ManifoldSpec) -> Derivation:
    """Conjugation theta -> phi o theta o phi^{-1} by the automorphism phi of
    L(V) induced by g acting on the homology."""
    from . import forms
    if not forms.is_member(g, I):
        raise forms.NotAMember("element is not in the mapping class group")
    space = generator_space(I)
    phi = _gamma_substitution(g, I)
    phi_inv = _gamma_substitution(g, I, inverse=True)
    vals = {}
    for label in space.labels:
        # phi^{-1}(label) as a linear combination of generators
        pre = phi_inv[label]
        acc = LieElement.zero(space)
        for idx, c in pre.items():
            v = theta.values.get(space.basis[idx][0])
            if v is not None:
                acc = acc.add(v, c)
        if not acc.is_zero():
            vals[label] = apply_generator_substitution(space, space, phi, acc)
    return Derivation(space, theta.degree, vals)


def transport_element(elt: LieElement, dst: GradedSpace) -> LieElement:
    """Reinterpret a Lie element over an extended generator space.  Valid
    because new generators are appended at the end: letter indices, the
    Lyndon order, and hence normal forms are unchanged."""
    return LieElement(dst, {LieMonomial(mo.tree, mo.weight, mo.degree): c
                            for mo, c in elt.terms.items()})


def stabilize_derivation(theta: Derivation, I: ManifoldSpec,
                         Iprime: ManifoldSpec) -> Derivation:
    """Extension by zero on the generators of the new summand."""
    check_stabilization(I, Iprime)
    dst = generator_space(Iprime)
    vals = {label: transport_element(elt, dst)
            for label, elt in theta.values.items()}
    return Derivation(dst, theta.degree, vals)
