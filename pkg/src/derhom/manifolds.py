"""Connected sums of sphere products #_i (S^p_i x S^q_i), as plain data.

A manifold is described by its list of (p_i, q_i) pairs.  All pairs must have
the same total dimension n = p_i + q_i and satisfy 3 <= p_i <= q_i < 2p_i - 1,
which keeps everything simply connected and inside the metastable range.

JSON format: {"pairs": [[3, 4], [3, 4]]}.
"""

import json
from dataclasses import dataclass, field


class InvalidSpec(Exception):
    pass


class SpecMismatch(Exception):
    """Raised when a stabilization is asked for specs not related by one
    additional (p, n-p) summand."""


@dataclass(frozen=True)
class ManifoldSpec:
    pairs: tuple

    def __post_init__(self):
        pairs = tuple((int(p), int(q)) for p, q in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise InvalidSpec("need at least one (p, q) pair")
        n = pairs[0][0] + pairs[0][1]
        for p, q in pairs:
            if not (3 <= p <= q < 2 * p - 1):
                raise InvalidSpec(
                    "pair (%d, %d) violates 3 <= p <= q < 2p - 1" % (p, q))
            if p + q != n:
                raise InvalidSpec("pairs have different total dimension")

    @property
    def n(self):
        return self.pairs[0][0] + self.pairs[0][1]

    def genus(self, p):
        """Number of summands with first factor S^p (the generalized genus)."""
        return sum(1 for a, _ in self.pairs if a == p)

    def homology_degrees(self):
        """Sorted list of degrees 0 < d < n where H_d is nonzero."""
        degs = set()
        for p, q in self.pairs:
            degs.add(p)
            degs.add(q)
        return sorted(degs)

    def homology_rank(self, d):
        """Rank of H_d(N_I) for 0 < d < n."""
        return (sum(1 for p, _ in self.pairs if p == d)
                + sum(1 for _, q in self.pairs if q == d))

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidSpec("not valid JSON: %s" % e)
        if not isinstance(data, dict) or "pairs" not in data:
            raise InvalidSpec('expected an object with a "pairs" field')
        pairs = data["pairs"]
        if (not isinstance(pairs, list)
                or not all(isinstance(p, list) and len(p) == 2 for p in pairs)):
            raise InvalidSpec('"pairs" must be a list of [p, q] pairs')
        return cls(tuple((p, q) for p, q in pairs))

    @classmethod
    def from_file(cls, path):
        with open(path) as f:
            return cls.from_json(f.read())

    def to_json(self):
        return json.dumps({"pairs": [[p, q] for p, q in self.pairs]})

    def stabilized(self, p):
        """The spec with one additional (p, n-p) summand appended."""
        return ManifoldSpec(self.pairs + ((p, self.n - p),))


def check_stabilization(I, Iprime):
    """Assert I' = I plus one extra pair; return the new (p, q) pair."""
    if Iprime.pairs[:len(I.pairs)] != I.pairs \
            or len(Iprime.pairs) != len(I.pairs) + 1:
        raise SpecMismatch("target spec is not source spec plus one summand")
    return Iprime.pairs[-1]
