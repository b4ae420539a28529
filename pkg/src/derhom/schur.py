"""Symmetric-group character calculus for Schur functors and multifunctors.

A Schur multifunctor of arity l is a family of Sigma_eta-modules N(eta), one
per multi-index eta, applied to graded vector spaces by
    N(V_1, ..., V_l) = (+)_eta N(eta) (x)_{Sigma_eta} (V_i)^{(x)eta}.
We only ever need dimensions, induction/restriction arithmetic, and plethysm,
so modules are represented by their characters in power-sum coordinates: a
component is a map
    (internal degree d, (lambda_1, ..., lambda_l))  ->  rational coefficient
meaning  coeff * t^d * p_{lambda_1}(coordinate 1) * ... .  The coefficient of
p_lambda for a module M on Sigma_n is chi_M(lambda) / z_lambda.

Dimensions of applications come from the Koszul-signed graded trace: a cycle
of length k acting on a graded space V contributes
    sum_d (-1)^{d(k-1)} (dim V_d) t^{dk},
and plethysm (composition of functors) substitutes exactly this rule into the
power sums: p_k scales internal degrees by k, multiplies cycle lengths by k,
and twists by (-1)^{d(k-1)}.

The Lie operad character is computed two ways: a brute-force trace on the
multilinear part of the free Lie algebra (the documented oracle, capped at
LIE_CHARACTER_CAP because of factorial growth) and the classical Witt/Brandt
closed form ch Lie(n) = (1/n) sum_{d|n} mu(d) p_d^{n/d}, which has no cap and
is cross-checked against the oracle in the test suite.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

LIE_CHARACTER_CAP = 8


class ArityMismatch(Exception):
    pass


# ---------------------------------------------------------------------------
# partitions

@lru_cache(maxsize=None)
def partitions(n, largest=None):
    """All partitions of n as descending tuples."""
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def z_lambda(lam):
    """Size of the centralizer of a permutation of cycle type lam."""
    z = 1
    mult = {}
    for part in lam:
        mult[part] = mult.get(part, 0) + 1
    for part, m in mult.items():
        z *= part ** m
        for i in range(1, m + 1):
            z *= i
    return z


def _perm_of_type(lam):
    """A concrete permutation (tuple: i -> sigma(i)) with cycle type lam."""
    n = sum(lam)
    sigma = list(range(n))
    start = 0
    for part in lam:
        for i in range(part):
            sigma[start + i] = start + (i + 1) % part
        start += part
    return tuple(sigma)


# ---------------------------------------------------------------------------
# class functions

@dataclass(frozen=True)
class ClassFunction:
    n: int
    values: tuple  # tuple of (partition, Fraction), all partitions of n

    @classmethod
    def from_dict(cls, n, d):
        vals = tuple((lam, Fraction(d.get(lam, 0))) for lam in partitions(n))
        return cls(n, vals)

    def value(self, lam):
        for key, v in self.values:
            if key == lam:
                return v
        raise KeyError(lam)

    def dim(self):
        return self.value((1,) * self.n)

    def as_dict(self):
        return dict(self.values)


def _leftnormed_coeff(w, v):
    """Coefficient of the word v in the left-normed bracketing
    [[...[w_1, w_2], w_3], ..., w_n], for multilinear words w, v.

    At each expansion step the newly bracketed letter lands at the front
    (sign -1) or the back (sign +1) of the word; for multilinear words the
    choice is forced, so this runs in O(n).
    """
    n = len(w)
    i, j = 0, n - 1
    sign = 1
    for k in range(n - 1, 0, -1):
        letter = w[k]
        if v[j] == letter:
            j -= 1
        elif v[i] == letter:
            i += 1
            sign = -sign
        else:
            return 0
    return sign if v[i] == w[0] else 0


@lru_cache(maxsize=None)
def lie_character(n):
    """Character of Lie(n) as a Sigma_n-module, by brute-force trace.

    tr(sigma) = (1/n) sum over multilinear words w of the coefficient of
    sigma^{-1}(w) in the left-normed bracketing of w (the Dynkin idempotent
    theta/n projects the multilinear tensor component onto Lie(n)).
    """
    assert 1 <= n <= LIE_CHARACTER_CAP, \
        "lie_character is capped at n = %d" % LIE_CHARACTER_CAP
    values = {}
    for lam in partitions(n):
        sigma = _perm_of_type(lam)
        inv = [0] * n
        for i, s in enumerate(sigma):
            inv[s] = i
        total = 0
        for w in itertools.permutations(range(n)):
            v = tuple(inv[x] for x in w)
            total += _leftnormed_coeff(w, v)
        val = Fraction(total, n)
        assert val.denominator == 1
        values[lam] = val
    return ClassFunction.from_dict(n, values)


def _moebius(d):
    out = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            out = -out
        p += 1
    if d > 1:
        out = -out
    return out


@lru_cache(maxsize=None)
def lie_character_witt(n):
    """Character of Lie(n) from ch Lie(n) = (1/n) sum_{d|n} mu(d) p_d^{n/d}.

    No cap; supported on rectangular cycle types only.
    """
    values = {}
    for lam in partitions(n):
        d = lam[0] if lam else 1
        if all(part == d for part in lam):
            values[lam] = Fraction(_moebius(d) * z_lambda(lam), n)
        else:
            values[lam] = Fraction(0)
    return ClassFunction.from_dict(n, values)


def _lie_char_any(n):
    if n <= LIE_CHARACTER_CAP:
        return lie_character(n)
    return lie_character_witt(n)


def _ch(cf):
    """Characteristic of a class function: {lambda: chi(lambda)/z_lambda}."""
    return {lam: v / z_lambda(lam) for lam, v in cf.values if v}


def _ch_to_char(ch, n):
    return ClassFunction.from_dict(
        n, {lam: ch.get(lam, Fraction(0)) * z_lambda(lam)
            for lam in partitions(n)})


@lru_cache(maxsize=None)
def cyclic_lie_character(n):
    """Character of the cyclic Lie operad Lie((n)), n >= 2.

    From the exact sequence
        0 -> Lie((n)) -> Q[Sigma_n] (x)_{Sigma_{n-1}} Lie(n-1) -> Lie(n) -> 0:
    chi = Ind(chi_{Lie(n-1)}) - chi_{Lie(n)}; dimension (n-2)!.
    """
    assert n >= 2
    ind = {}
    for lam, c in _ch(_lie_char_any(n - 1)).items():
        mu = tuple(sorted(lam + (1,), reverse=True))
        ind[mu] = ind.get(mu, Fraction(0)) + c
    top = _ch(_lie_char_any(n))
    diff = dict(ind)
    for lam, c in top.items():
        diff[lam] = diff.get(lam, Fraction(0)) - c
    cf = _ch_to_char(diff, n)
    expected = 1
    for i in range(1, n - 1):
        expected *= i
    assert cf.dim() == expected, "dim Lie((n)) != (n-2)!"
    return cf


# ---------------------------------------------------------------------------
# graded traces

def _cycle_trace_poly(k, graded_dims):
    """Polynomial (dict degree -> int) of the signed trace of a k-cycle."""
    out = {}
    for d, v in graded_dims.items():
        if v:
            sign = -1 if (d * (k - 1)) % 2 else 1
            out[d * k] = out.get(d * k, 0) + sign * v
    return {d: c for d, c in out.items() if c}


def _poly_mul(a, b):
    out = {}
    for da, ca in a.items():
        for db, cb in b.items():
            key = da + db
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return {d: c for d, c in out.items() if c}


def apply_character(cf, graded_dims):
    """Graded dimensions of S_M(V) for a single Sigma_n-module M with
    character cf, applied to a graded space with the given dimensions."""
    total = {}
    for lam, chi in cf.values:
        if not chi:
            continue
        poly = {0: Fraction(chi, z_lambda(lam))}
        for part in lam:
            poly = _poly_mul(poly, _cycle_trace_poly(part, graded_dims))
        for d, c in poly.items():
            total[d] = total.get(d, Fraction(0)) + c
    return {d: c for d, c in total.items() if c}


# ---------------------------------------------------------------------------
# Schur multifunctor data

@dataclass(frozen=True)
class MultiSchurData:
    """Characteristic of a graded Schur multifunctor.

    components: map (degree, parts) -> Fraction with parts a tuple of `arity`
    partitions; the entry means coeff * t^degree * prod_i p_{parts[i]}.
    """
    arity: int
    components: tuple  # sorted tuple of ((degree, parts), Fraction)

    @classmethod
    def from_dict(cls, arity, d):
        items = tuple(sorted((k, Fraction(v)) for k, v in d.items() if v))
        return cls(arity, items)

    def as_dict(self):
        return dict(self.components)

    def eta_of(self, parts):
        return tuple(sum(lam) for lam in parts)

    def nonzero_etas(self):
        """Set of (|eta| total, eta tuple, degree) over nonzero components."""
        out = set()
        for (deg, parts), _ in self.components:
            eta = tuple(sum(lam) for lam in parts)
            out.add((sum(eta), eta, deg))
        return out


def constant_data(arity, degree=0, coeff=1):
    empty = ((),) * arity
    return MultiSchurData.from_dict(arity, {(degree, empty): coeff})


def identity_data():
    """The identity functor: Q in arity-1 multi-index (1), degree 0."""
    return MultiSchurData.from_dict(1, {(0, ((1,),)): 1})


def single_from_character(cf, degree=0):
    """Arity-1 data of one Sigma_n-module placed in the given degree."""
    d = {}
    for lam, c in _ch(cf).items():
        d[(degree, (lam,))] = c
    return MultiSchurData.from_dict(1, d)


def data_sum(datas):
    arity = datas[0].arity
    out = {}
    for S in datas:
        if S.arity != arity:
            raise ArityMismatch("cannot add data of different arities")
        for k, v in S.components:
            out[k] = out.get(k, Fraction(0)) + v
    return MultiSchurData.from_dict(arity, out)


def schur_tensor(M, N, degree_cap=None):
    """Componentwise induction product (Day convolution)."""
    if M.arity != N.arity:
        raise ArityMismatch("tensor of arity %d with arity %d"
                            % (M.arity, N.arity))
    out = {}
    for (dm, pm), cm in M.components:
        for (dn, pn), cn in N.components:
            deg = dm + dn
            if degree_cap is not None and deg > degree_cap:
                continue
            parts = tuple(tuple(sorted(a + b, reverse=True))
                          for a, b in zip(pm, pn))
            key = (deg, parts)
            out[key] = out.get(key, Fraction(0)) + cm * cn
    return MultiSchurData.from_dict(M.arity, out)


def _plethysm_power(S, k):
    """Substitution p_j -> p_{jk} with degree scaling and Koszul sign:
    a component of degree d picks up (-1)^{d(k-1)} and moves to degree dk."""
    out = {}
    for (d, parts), c in S.components:
        sign = -1 if (d * (k - 1)) % 2 else 1
        nparts = tuple(tuple(p * k for p in lam) for lam in parts)
        key = (d * k, nparts)
        out[key] = out.get(key, Fraction(0)) + sign * c
    return MultiSchurData.from_dict(S.arity, out)


def schur_compose(M, N, degree_cap=None):
    """Plethysm M o N for M of arity 1; the result has N's arity."""
    if M.arity != 1:
        raise ArityMismatch("outer functor of a composition must have arity 1")
    out = {}
    pleth_cache = {}
    for (dm, (rho,)), cm in M.components:
        term = constant_data(N.arity, degree=dm, coeff=cm)
        for k in sorted(rho, reverse=True):
            if k not in pleth_cache:
                pleth_cache[k] = _plethysm_power(N, k)
            term = schur_tensor(term, pleth_cache[k], degree_cap=degree_cap)
        for key, v in term.components:
            out[key] = out.get(key, Fraction(0)) + v
    return MultiSchurData.from_dict(N.arity, out)


def shift_degree(S, shift):
    return MultiSchurData.from_dict(
        S.arity, {(d + shift, parts): c for (d, parts), c in S.components})


def schur_apply_dims(S, spaces):
    """Graded dimensions of S(V_1, ..., V_l).

    spaces: list of graded-dimension dicts (degree -> dim), one per
    coordinate.  Returns degree -> Fraction (integral for genuine modules).
    """
    if len(spaces) != S.arity:
        raise ArityMismatch("expected %d argument spaces, got %d"
                            % (S.arity, len(spaces)))
    total = {}
    for (d, parts), c in S.components:
        poly = {d: c}
        for coord, lam in enumerate(parts):
            for k in lam:
                poly = _poly_mul(poly, _cycle_trace_poly(k, spaces[coord]))
                if not poly:
                    break
            if not poly:
                break
        for deg, v in poly.items():
            total[deg] = total.get(deg, Fraction(0)) + v
    return {d: v for d, v in total.items() if v}


def apply_dims_int(S, spaces):
    """schur_apply_dims with the result asserted to be natural numbers."""
    out = {}
    for d, v in schur_apply_dims(S, spaces).items():
        assert v.denominator == 1 and v >= 0, \
            "non-natural dimension %s in degree %d" % (v, d)
        out[d] = int(v)
    return out


def polynomial_degree(S, cutoff):
    """Max |eta| over nonzero components with |eta| <= cutoff; the string
    "exceeds cutoff" if a nonzero component has |eta| > cutoff."""
    best = 0
    for (d, parts), c in S.components:
        size = sum(sum(lam) for lam in parts)
        if size > cutoff:
            return "exceeds cutoff"
        best = max(best, size)
    return best


def _as_space_tuple(S, arg):
    if isinstance(arg, dict):
        assert S.arity == 1
        return (arg,)
    arg = tuple(arg)
    assert len(arg) == S.arity
    return arg


def cross_effect_dims(S, args):
    """dim of the k-th cross effect T^k(A_1, ..., A_k), by inclusion-
    exclusion over vanishing subsets of the arguments (Moebius inversion of
    T(A_1 (+) ... (+) A_k) = (+)_{T} cross effects)."""
    k = len(args)
    assert k >= 1
    norm = [_as_space_tuple(S, a) for a in args]
    total = Fraction(0)
    for bits in itertools.product((0, 1), repeat=k):
        spaces = []
        for coord in range(S.arity):
            acc = {}
            for j, keep in enumerate(bits):
                if keep:
                    for d, v in norm[j][coord].items():
                        acc[d] = acc.get(d, 0) + v
            spaces.append(acc)
        sign = -1 if (k - sum(bits)) % 2 else 1
        for v in schur_apply_dims(S, spaces).values():
            total += sign * v
    assert total.denominator == 1, "cross effect dimension is not integral"
    return int(total)


# ---------------------------------------------------------------------------
# the specific functors of the construction

def lie_schur_data(max_n):
    """Arity-1 data of the full Lie operad truncated at weight max_n."""
    return data_sum([single_from_character(_lie_char_any(m))
                     for m in range(1, max_n + 1)])


def lambda_schur_data(max_r, degree_per_word=0):
    """Free graded-commutative words: Lambda(r) trivial, r <= max_r."""
    d = {}
    for r in range(0, max_r + 1):
        if r == 0:
            d[(0, ((),))] = Fraction(1)
            continue
        for rho in partitions(r):
            d[(degree_per_word * r, (rho,))] = Fraction(1, z_lambda(rho))
    return MultiSchurData.from_dict(1, d)


def cyclic_lie_schur_data(n, max_m):
    """Arity-1 data of Lie((-)): s^{-(n-2)} (+)_{m>=2} Lie((m)) (x) (-)^m.

    Applying this to the graded dimensions of s^{-1}H gives the graded
    dimensions of the omega-annihilating derivation algebra.
    """
    return data_sum([single_from_character(cyclic_lie_character(m),
                                           degree=-(n - 2))
                     for m in range(2, max_m + 1)])


def inclusion_data(arity):
    """The additive multifunctor (V_0, ..., V_{arity-1}) -> (+) V_i[i],
    placing coordinate i in internal degree i."""
    d = {}
    for i in range(arity):
        parts = tuple((1,) if j == i else () for j in range(arity))
        d[(i, parts)] = Fraction(1)
    return MultiSchurData.from_dict(arity, d)


def derivation_schur_data(n, max_m, positive_only=True, degree_cap=None):
    """Multifunctor of arity n-1 describing the derivations: cyclic-Lie data
    composed with the degree-placing inclusion; coordinates are the degrees
    0..n-2 of the desuspended homology.  With positive_only, components of
    non-positive internal degree are dropped (positive truncation).
    degree_cap prunes components above that internal degree during the
    composition (they grow combinatorially in the degree-0 coordinate)."""
    U = schur_compose(cyclic_lie_schur_data(n, max_m), inclusion_data(n - 1),
                      degree_cap=degree_cap)
    if positive_only:
        U = MultiSchurData.from_dict(
            n - 1, {(d, parts): c for (d, parts), c in U.components if d >= 1})
    return U


def ce_chain_schur(n, l, mu_cutoff=None):
    """Schur data of the degree-l Chevalley-Eilenberg chains of the
    derivation algebra, as a multifunctor of the homology coordinates.

    Built as Lambda o (s U): the derivation data U is suspended (degree + 1)
    BEFORE composing with the trivial-module word functor, so the plethysm
    signs see the suspended letter degrees -- this is what makes odd-degree
    letters square to zero in the word algebra.  Only components of total
    degree exactly l are returned.  mu_cutoff bounds |mu| (the data has
    nonzero components for arbitrarily many degree-0 letters; the default
    cutoff l + n - 3 covers every component that can be nonzero on a space
    with no classes below degree 1).
    """
    assert n >= 6 and l >= 0
    if l == 0:
        return constant_data(n - 1)
    if mu_cutoff is None:
        mu_cutoff = l + n - 3
    U = derivation_schur_data(n, mu_cutoff, degree_cap=l - 1)
    # keep letters of suspended degree <= l only
    sU = MultiSchurData.from_dict(
        n - 1, {(d + 1, parts): c for (d, parts), c in U.components
                if d + 1 <= l})
    C = schur_compose(lambda_schur_data(l // 2), sU, degree_cap=l)
    return MultiSchurData.from_dict(
        n - 1, {(d, parts): c for (d, parts), c in C.components if d == l})


def block_coeff_dims(I, r, cutoff):
    """Graded dimensions (degree -> dim), within degree <= cutoff, of the
    r-th homology of the block-bundle coefficient fibre: the r-th graded
    symmetric power of Pi(H), where each homology class of degree d
    contributes one class in degree 4j - d for every j >= 1 (positive
    degrees only)."""
    pi_dims = {}
    for p, q in I.pairs:
        for d in (p, q):
            j = 1
            while 4 * j - d <= cutoff:
                deg = 4 * j - d
                if deg >= 1:
                    pi_dims[deg] = pi_dims.get(deg, 0) + 1
                j += 1
    if r == 0:
        return {0: 1}
    lam_r = MultiSchurData.from_dict(
        1, {(0, (rho,)): Fraction(1, z_lambda(rho)) for rho in partitions(r)})
    dims = apply_dims_int(lam_r, [pi_dims])
    return {d: v for d, v in dims.items() if d <= cutoff}
