"""Free graded Lie algebras over Q on a finite positively graded space V.

Conventions
-----------
* Koszul signs: moving a past b costs (-1)^{|a||b|}.
* The bracket embeds into the tensor algebra by
      [x, y] = x (x) y - (-1)^{|x||y|} y (x) x,
  and a Lie element is identified with its tensor expansion throughout.
* Basis: super Lyndon monomials.  Letters are ordered by their position in
  the generator list.  The weight-w basis consists of the standard-factorized
  bracketings b(u) of Lyndon words u of length w, together with [b(u), b(u)]
  for Lyndon words u of length w/2 and odd total degree.  The tensor
  expansion of b(u) has lexicographically smallest word u with coefficient 1
  (coefficient 2 for the squares), which makes conversion from a tensor
  expansion back to normalized monomials a triangular solve.  This is checked
  at basis-construction time, not assumed.

For connected sums of sphere products the generator space is s^{-1} of the
reduced homology: one generator of degree p_i - 1 and one of degree q_i - 1
per summand, and the boundary-sphere element is
    omega_I = sum_i -(-1)^{p_i} [a_i, b_i].
"""

from dataclasses import dataclass
from fractions import Fraction

from .linalg import RationalMatrix, rank
from .manifolds import ManifoldSpec


@dataclass(frozen=True)
class GradedSpace:
    basis: tuple  # tuple of (label, degree >= 1)

    def __post_init__(self):
        basis = tuple((str(l), int(d)) for l, d in self.basis)
        object.__setattr__(self, "basis", basis)
        labels = [l for l, _ in basis]
        assert len(set(labels)) == len(labels), "labels must be unique"
        assert all(d >= 1 for _, d in basis), "degrees must be positive"

    @property
    def labels(self):
        return [l for l, _ in self.basis]

    def index(self, label):
        for i, (l, _) in enumerate(self.basis):
            if l == label:
                return i
        raise KeyError(label)

    def degree(self, label):
        return self.basis[self.index(label)][1]

    def degree_of_index(self, i):
        return self.basis[i][1]

    def dim(self):
        return len(self.basis)

    def graded_dims(self):
        out = {}
        for _, d in self.basis:
            out[d] = out.get(d, 0) + 1
        return out

    def min_degree(self):
        return min(d for _, d in self.basis)


def generator_space(I: ManifoldSpec) -> GradedSpace:
    """Generators a_i (degree p_i - 1) and b_i (degree q_i - 1)."""
    basis = []
    for i, (p, q) in enumerate(I.pairs):
        basis.append(("a%d" % (i + 1), p - 1))
        basis.append(("b%d" % (i + 1), q - 1))
    return GradedSpace(tuple(basis))


@dataclass(frozen=True)
class LieMonomial:
    """A normalized basis monomial: a bracketing tree over generator labels.

    tree is a label string (leaf) or a pair (left_tree, right_tree).
    """
    tree: object
    weight: int
    degree: int

    def __repr__(self):
        return _tree_str(self.tree)


def _tree_str(t):
    if isinstance(t, str):
        return t
    return "[%s,%s]" % (_tree_str(t[0]), _tree_str(t[1]))


def _tree_weight(t):
    if isinstance(t, str):
        return 1
    return _tree_weight(t[0]) + _tree_weight(t[1])


def _tree_degree(space, t):
    if isinstance(t, str):
        return space.degree(t)
    return _tree_degree(space, t[0]) + _tree_degree(space, t[1])


def make_monomial(space, tree):
    return LieMonomial(tree, _tree_weight(tree), _tree_degree(space, tree))


# ---------------------------------------------------------------------------
# tensor expansion

_expand_cache = {}


def expand_tree(space, tree):
    """Tensor expansion of a bracketing tree: dict word -> int coefficient.

    Words are tuples of letter indices into space.basis.
    """
    key = (space, tree)
    if key in _expand_cache:
        return _expand_cache[key]
    if isinstance(tree, str):
        out = {(space.index(tree),): 1}
    else:
        left = expand_tree(space, tree[0])
        right = expand_tree(space, tree[1])
        dl = _tree_degree(space, tree[0])
        dr = _tree_degree(space, tree[1])
        sign = -1 if (dl * dr) % 2 else 1
        out = {}
        for u, cu in left.items():
            for v, cv in right.items():
                c = cu * cv
                out[u + v] = out.get(u + v, 0) + c
                out[v + u] = out.get(v + u, 0) - sign * c
        out = {w: c for w, c in out.items() if c}
    _expand_cache[key] = out
    return out


def word_degree(space, word):
    return sum(space.degree_of_index(i) for i in word)


# ---------------------------------------------------------------------------
# Lyndon machinery

def _lyndon_words(m, w):
    """All Lyndon words of length exactly w over 0..m-1, lexicographic.

    Duval's generator: increment the last letter, record, extend periodically
    to length w, pop trailing maximal letters.
    """
    if m == 0:
        return []
    out = []
    word = [-1]
    while word:
        word[-1] += 1
        if len(word) == w:
            out.append(tuple(word))
        k = len(word)
        while len(word) < w:
            word.append(word[len(word) - k])
        while word and word[-1] == m - 1:
            word.pop()
    return out


def _is_lyndon(u):
    return all(u < u[i:] for i in range(1, len(u)))


def _standard_factorization(u):
    """Split the Lyndon word u (length >= 2) as u = u' v with v the smallest
    proper suffix; both factors are Lyndon."""
    best = 1
    for i in range(2, len(u)):
        if u[i:] < u[best:]:
            best = i
    return u[:best], u[best:]


def _bracketing(space, u):
    """Standard bracketing tree of the Lyndon word u (tuple of indices)."""
    if len(u) == 1:
        return space.basis[u[0]][0]
    left, right = _standard_factorization(u)
    return (_bracketing(space, left), _bracketing(space, right))


_basis_cache = {}


def _weight_basis_full(space, w):
    """All super-Lyndon basis monomials of weight w (no degree cutoff),
    with verified leading words.  Returns list of
    (leading_word, lead_coeff, monomial)."""
    key = (space, w)
    if key in _basis_cache:
        return _basis_cache[key]
    m = space.dim()
    out = []
    for u in _lyndon_words(m, w):
        tree = _bracketing(space, u)
        mono = make_monomial(space, tree)
        exp = expand_tree(space, tree)
        lead = min(exp)
        assert lead == u and exp[lead] == 1, \
            "leading-word property failed for %s" % (u,)
        out.append((u, 1, mono))
    if w % 2 == 0:
        for u in _lyndon_words(m, w // 2):
            if word_degree(space, u) % 2 == 1:
                tree = _bracketing(space, u)
                sq = (tree, tree)
                mono = make_monomial(space, sq)
                exp = expand_tree(space, sq)
                lead = min(exp)
                assert lead == u + u and exp[lead] == 2, \
                    "leading-word property failed for square of %s" % (u,)
                out.append((u + u, 2, mono))
    out.sort(key=lambda t: t[0])
    _basis_cache[key] = out
    return out


def weight_basis(space, w, degree_cutoff=None):
    """Basis monomials of the weight-w part of L(V), degrees <= cutoff.

    Sorted by (degree, leading word).
    """
    assert w >= 1
    monos = [mono for _, _, mono in _weight_basis_full(space, w)
             if degree_cutoff is None or mono.degree <= degree_cutoff]
    monos.sort(key=lambda mo: (mo.degree, min(expand_tree(space, mo.tree))))
    return monos


def degree_basis(space, d, min_weight=1, max_weight=None):
    """Basis of L(V) in internal degree d, weights >= min_weight.

    Finite because generator degrees are >= 1.
    """
    out = []
    top = d // space.min_degree()
    if max_weight is not None:
        top = min(top, max_weight)
    for w in range(min_weight, top + 1):
        out.extend(mo for mo in weight_basis(space, w) if mo.degree == d)
    return out


# ---------------------------------------------------------------------------
# Lie elements

class LieElement:
    """Rational linear combination of normalized monomials."""

    __slots__ = ("space", "terms")

    def __init__(self, space, terms=None):
        self.space = space
        self.terms = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[mono] = c

    @classmethod
    def zero(cls, space):
        return cls(space)

    @classmethod
    def generator(cls, space, label):
        return cls(space, {make_monomial(space, label): Fraction(1)})

    @classmethod
    def from_monomial(cls, space, mono, coeff=1):
        return cls(space, {mono: Fraction(coeff)})

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Degree if homogeneous (or None for 0); asserts homogeneity."""
        degs = {mo.degree for mo in self.terms}
        assert len(degs) <= 1, "element is not homogeneous"
        return degs.pop() if degs else None

    def add(self, other, coeff=1):
        out = dict(self.terms)
        for mo, c in other.terms.items():
            v = out.get(mo, Fraction(0)) + Fraction(coeff) * c
            if v:
                out[mo] = v
            else:
                out.pop(mo, None)
        return LieElement(self.space, out)

    def scale(self, coeff):
        return LieElement(self.space,
                          {mo: c * Fraction(coeff) for mo, c in self.terms.items()})

    def tensor_expansion(self):
        """dict word -> Fraction."""
        out = {}
        for mo, c in self.terms.items():
            for wd, k in expand_tree(self.space, mo.tree).items():
                v = out.get(wd, Fraction(0)) + c * k
                if v:
                    out[wd] = v
                else:
                    out.pop(wd, None)
        return out

    def __eq__(self, other):
        return (isinstance(other, LieElement) and self.space == other.space
                and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("%s*%s" % (c, mo) for mo, c in
                          sorted(self.terms.items(), key=lambda t: repr(t[0])))


def _norm_table(space, w):
    """leading word -> (lead coeff, monomial, expansion) for weight w."""
    table = {}
    for lead, coeff, mono in _weight_basis_full(space, w):
        table[lead] = (coeff, mono, expand_tree(space, mono.tree))
    return table


def normalize_tensor(space, tensor):
    """Rewrite a tensor-algebra element (dict word -> coeff) lying in the
    image of L(V) as a LieElement.  Raises ValueError if it is not a Lie
    element.  Triangular greedy elimination on leading words."""
    residual = {w: Fraction(c) for w, c in tensor.items() if c}
    terms = {}
    by_len = {}
    for wd in residual:
        by_len.setdefault(len(wd), set()).add(wd)
    for w in sorted(by_len):
        table = _norm_table(space, w)
        live = {wd: residual[wd] for wd in by_len[w]}
        while live:
            wd = min(live)
            if wd not in table:
                raise ValueError("tensor element is not in the Lie algebra "
                                 "(stuck at word %s)" % (wd,))
            lead_coeff, mono, exp = table[wd]
            c = live[wd] / lead_coeff
            terms[mono] = terms.get(mono, Fraction(0)) + c
            for w2, k in exp.items():
                v = live.get(w2, Fraction(0)) - c * k
                if v:
                    live[w2] = v
                else:
                    live.pop(w2, None)
    return LieElement(space, {mo: c for mo, c in terms.items() if c})


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """[x, y], normalized."""
    assert x.space == y.space
    space = x.space
    tensor = {}
    for mx, cx in x.terms.items():
        ex = expand_tree(space, mx.tree)
        for my, cy in y.terms.items():
            ey = expand_tree(space, my.tree)
            sign = -1 if (mx.degree * my.degree) % 2 else 1
            c0 = cx * cy
            for u, cu in ex.items():
                for v, cv in ey.items():
                    c = c0 * cu * cv
                    tensor[u + v] = tensor.get(u + v, Fraction(0)) + c
                    tensor[v + u] = tensor.get(v + u, Fraction(0)) - sign * c
    return normalize_tensor(space, tensor)


def omega(I: ManifoldSpec) -> LieElement:
    """The boundary-sphere element, homogeneous of degree n - 2."""
    space = generator_space(I)
    out = LieElement.zero(space)
    for i, (p, q) in enumerate(I.pairs):
        a = LieElement.generator(space, "a%d" % (i + 1))
        b = LieElement.generator(space, "b%d" % (i + 1))
        sign = -((-1) ** p)
        out = out.add(bracket(a, b), sign)
    assert out.degree() == I.n - 2
    return out


def apply_generator_substitution(src, dst, sub, element):
    """Extend a degree-preserving linear map on generators multiplicatively.

    sub: label (in src) -> dict dst-letter-index -> Fraction.  Because the
    map preserves degrees and never permutes tensor factors, no Koszul signs
    appear.  Returns a LieElement over dst.
    """
    tensor = {}
    for mono, c in element.terms.items():
        for word, k in expand_tree(src, mono.tree).items():
            partial = {(): c * k}
            for idx in word:
                label = src.basis[idx][0]
                image = sub[label]
                nxt = {}
                for pref, pc in partial.items():
                    for j, jc in image.items():
                        if jc:
                            key = pref + (j,)
                            nxt[key] = nxt.get(key, Fraction(0)) + pc * jc
                partial = nxt
            for wd, v in partial.items():
                nv = tensor.get(wd, Fraction(0)) + v
                if nv:
                    tensor[wd] = nv
                else:
                    tensor.pop(wd, None)
    return normalize_tensor(dst, tensor)


def graded_witt_dims(space, w):
    """Dimensions of the weight-w part of L(V) per degree, via the signed
    character calculus (independent of the Lyndon construction)."""
    from . import schur
    dims = schur.apply_character(schur.lie_character(w), space.graded_dims())
    out = {}
    for d, v in dims.items():
        assert v.denominator == 1 and v >= 0, "character count not a natural"
        if v:
            out[d] = int(v)
    return out


def bracketing_span_dims(space, w):
    """Brute-force oracle: dimension per degree of the span of ALL w-fold
    bracketings of generators inside the tensor algebra.  Exponential; only
    for small checks."""
    import itertools

    def shapes(n):
        if n == 1:
            yield None
            return
        for i in range(1, n):
            for ls in shapes(i):
                for rs in shapes(n - i):
                    yield (i, ls, rs)

    def build(shape, letters):
        if shape is None:
            return letters[0]
        i, ls, rs = shape
        return (build(ls, letters[:i]), build(rs, letters[i:]))

    vectors = {}  # degree -> list of dict word -> coeff
    m = space.dim()
    for letters in itertools.product(space.labels, repeat=w):
        for shape in shapes(w):
            tree = build(shape, list(letters))
            exp = expand_tree(space, tree)
            if not exp:
                continue
            d = _tree_degree(space, tree)
            vectors.setdefault(d, []).append(exp)
    out = {}
    for d, vecs in vectors.items():
        words = sorted({wd for v in vecs for wd in v})
        wi = {wd: i for i, wd in enumerate(words)}
        M = RationalMatrix(len(vecs), len(words))
        for r, v in enumerate(vecs):
            for wd, c in v.items():
                M.set_entry(r, wi[wd], c)
        rk = rank(M)
        if rk:
            out[d] = rk
    return out
