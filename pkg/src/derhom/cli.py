"""Batch command-line front door.

    derhom {ce-homology|stability-scan|membership|schur-dim|block-coeffs|verify}
        --spec FILE --cutoff N [--generators FILE] [--format csv|json]
        [--genus-max N] [--stabilize-p P]

All numerical output is exact (integers, or rationals rendered as "a/b").
DERHOM_THREADS bounds internal parallelism.  Exit codes: 0 ok, 2 bad input,
3 uncertified-only output, 4 property failure.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import ce, forms, freelie, schur
from .manifolds import ManifoldSpec, InvalidSpec

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_UNCERTIFIED = 3
EXIT_PROPERTY_FAILURE = 4


def thread_count():
    raw = os.environ.get("DERHOM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise InvalidSpec("DERHOM_THREADS must be a positive integer")
    if n < 1:
        raise InvalidSpec("DERHOM_THREADS must be a positive integer")
    return n


def _map_parallel(fn, items):
    n = min(thread_count(), len(items)) if items else 1
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _emit(rows, header, fmt, meta, out):
    """rows: list of dicts with the header fields."""
    if fmt == "csv":
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(str(row[h]).lower()
                               if isinstance(row[h], bool) else str(row[h])
                               for h in header) + "\n")
    else:
        doc = dict(meta)
        doc["rows"] = rows
        json.dump(doc, out, indent=1, sort_keys=True)
        out.write("\n")


def spaces_from_spec(I: ManifoldSpec):
    """Coordinate spaces for the homology multifunctors: one degree-0 slot
    per desuspended degree 0..n-2."""
    out = [{} for _ in range(I.n - 1)]
    for d in I.homology_degrees():
        out[d - 1] = {0: I.homology_rank(d)}
    return out


# ---------------------------------------------------------------------------
# commands

def cmd_ce_homology(cfg, out=sys.stdout):
    if cfg.cutoff is None or cfg.cutoff < 1:
        raise InvalidSpec("--cutoff must be >= 1")
    table = ce.ce_homology_table(cfg.spec, cfg.cutoff)
    rows = [{"p": p, "q": q, "dim": d, "certified": c}
            for p, q, d, c in table]
    meta = {"command": "ce-homology", "spec": cfg.spec.to_json(),
            "cutoff": cfg.cutoff}
    _emit(rows, ["p", "q", "dim", "certified"], cfg.format, meta, out)
    if rows and not any(r["certified"] for r in rows):
        return EXIT_UNCERTIFIED
    return EXIT_OK


def cmd_stability_scan(cfg, out=sys.stdout):
    if cfg.cutoff is None or cfg.cutoff < 1:
        raise InvalidSpec("--cutoff must be >= 1")
    if cfg.stabilize_p is None or cfg.genus_max is None:
        raise InvalidSpec("--stabilize-p and --genus-max are required")
    I = cfg.spec
    p = cfg.stabilize_p
    if (p, I.n - p) not in I.pairs:
        raise InvalidSpec("spec has no (%d, %d) summand" % (p, I.n - p))
    rows = []
    failures = []
    for l in range(0, cfg.cutoff + 1):
        dims, surj = ce.coinvariant_scan(I, p, l, cfg.genus_max,
                                         cfg.generators)
        threshold = forms.stability_bound(l, 0, p, I.n)
        if threshold <= cfg.genus_max:
            stable = all(d == dims[threshold - 1]
                         for d in dims[threshold - 1:])
            epi = all(surj[g - 1] for g in range(max(1, threshold - 1),
                                                 cfg.genus_max))
            verdict = "stabilized" if (stable and epi) else "counterexample"
        else:
            verdict = "consistent"
        if verdict == "counterexample":
            failures.append((l, dims, surj, threshold))
        for g in range(1, cfg.genus_max + 1):
            rows.append({"l": l, "g": g, "coinv_dim": dims[g - 1],
                         "threshold": threshold, "verdict": verdict})
    meta = {"command": "stability-scan", "spec": I.to_json(),
            "cutoff": cfg.cutoff, "stabilize_p": p,
            "genus_max": cfg.genus_max}
    _emit(rows, ["l", "g", "coinv_dim", "threshold", "verdict"],
          cfg.format, meta, out)
    if failures:
        for l, dims, surj, threshold in failures:
            sys.stderr.write(
                "stability violation at coefficient degree %d: dims=%s "
                "surjective=%s threshold=%d\n" % (l, dims, surj, threshold))
        return EXIT_PROPERTY_FAILURE
    return EXIT_OK


def _load_candidates(path, I):
    with open(path) as f:
        data = json.load(f)
    if not isinstance(data, list):
        raise InvalidSpec("candidate file must hold a JSON list")
    out = []
    for entry in data:
        if "matrix" in entry:
            M = entry["matrix"]
            out.append(forms.GammaElement.make({}, forms.split_blocks(
                tuple(tuple(r) for r in M))))
        else:
            blocks = {int(k): v for k, v in entry.get("blocks", {}).items()}
            middle = entry.get("middle")
            out.append(forms.GammaElement.make(
                blocks, tuple(middle) if middle else None))
    return out


def cmd_membership(cfg, out=sys.stdout):
    if cfg.generators is None:
        raise InvalidSpec("--generators FILE with candidate elements "
                          "is required")
    cands = _load_candidates(cfg.generators, cfg.spec)
    rows = []
    for i, g in enumerate(cands):
        try:
            member = forms.is_member(g, cfg.spec)
            realizable = forms.realization_conditions(g, cfg.spec)
        except forms.ShapeMismatch as e:
            raise InvalidSpec("candidate %d: %s" % (i, e))
        rows.append({"index": i, "is_member": member,
                     "realization": realizable})
    meta = {"command": "membership", "spec": cfg.spec.to_json()}
    _emit(rows, ["index", "is_member", "realization"], cfg.format, meta, out)
    return EXIT_OK


def cmd_schur_dim(cfg, out=sys.stdout):
    if cfg.cutoff is None or cfg.cutoff < 0:
        raise InvalidSpec("--cutoff must be given")
    I = cfg.spec
    spaces = spaces_from_spec(I)

    def one(l):
        S = schur.ce_chain_schur(I.n, l)
        dims = schur.apply_dims_int(S, spaces)
        deg = schur.polynomial_degree(S, cutoff=l + I.n)
        return {"l": l, "dim": dims.get(l, 0), "max_mu": deg}

    rows = _map_parallel(one, list(range(0, cfg.cutoff + 1)))
    meta = {"command": "schur-dim", "spec": I.to_json(),
            "cutoff": cfg.cutoff}
    _emit(rows, ["l", "dim", "max_mu"], cfg.format, meta, out)
    return EXIT_OK


def cmd_block_coeffs(cfg, out=sys.stdout):
    if cfg.cutoff is None or cfg.cutoff < 0:
        raise InvalidSpec("--cutoff must be given")
    rows = []
    for r in range(0, cfg.cutoff + 1):
        dims = schur.block_coeff_dims(cfg.spec, r, cfg.cutoff)
        for d in sorted(dims):
            rows.append({"r": r, "degree": d, "dim": dims[d]})
    meta = {"command": "block-coeffs", "spec": cfg.spec.to_json(),
            "cutoff": cfg.cutoff}
    _emit(rows, ["r", "degree", "dim"], cfg.format, meta, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suite

def _verify_checks(cfg):
    I = cfg.spec
    cutoff = min(cfg.cutoff or 6, 6)
    checks = []

    def run(name, fn):
        try:
            fn()
            checks.append({"name": name, "status": "pass", "detail": ""})
        except forms.MissingGeneratorFile as e:
            checks.append({"name": name, "status": "skipped",
                           "detail": str(e)})
        except Exception as e:  # noqa: BLE001 - report, do not crash
            checks.append({"name": name, "status": "fail",
                           "detail": "%s: %s" % (type(e).__name__, e)})

    def free_lie_oracles():
        space = freelie.generator_space(I)
        for w in range(1, 5):
            basis = freelie.weight_basis(space, w)
            by_deg = {}
            for b in basis:
                by_deg[b.degree] = by_deg.get(b.degree, 0) + 1
            assert by_deg == freelie.graded_witt_dims(space, w)
            assert by_deg == freelie.bracketing_span_dims(space, w)

    def delta_squared():
        ce.ce_homology_table(I, cutoff)  # asserts delta^2 = 0 internally

    def exact_sequence_dims():
        from .derivations import DerivationSpace, DerOmegaSpace
        space = freelie.generator_space(I)
        for k in range(1, 4):
            full = DerivationSpace(space, k).dim()
            ker = DerOmegaSpace(I, k).dim()
            img = len(freelie.degree_basis(space, k + I.n - 2, min_weight=2))
            assert full == ker + img, (k, full, ker, img)

    def character_dims():
        from .derivations import DerOmegaSpace
        spaces = spaces_from_spec(I)
        for k in range(1, 4):
            S = schur.derivation_schur_data(I.n, k + I.n - 2)
            dims = schur.apply_dims_int(S, spaces)
            assert dims.get(k, 0) == DerOmegaSpace(I, k).dim(), k
        # the schur data must also know that degrees <= 0 were dropped
        assert all(d >= 1 for d in dims)

    def membership_equivalence():
        import itertools
        for n, pairs in ((6, ((3, 3),)), (8, ((4, 4),))):
            J = ManifoldSpec(pairs)
            for vals in itertools.product((-1, 0, 1), repeat=4):
                A, B, C, D = (((v,),) for v in vals)
                g = forms.GammaElement.make({}, (A, B, C, D))
                assert forms.is_member(g, J) \
                    == forms.realization_conditions(g, J)

    def branch_separation():
        g = forms.GammaElement.make(
            {}, (((1,),), ((1,),), ((0,),), ((1,),)))
        assert forms._middle_member(*g.middle, -1, forms.LAMBDA_Z)
        assert not forms._middle_member(*g.middle, -1, forms.LAMBDA_2Z)

    def schur_vs_words():
        spaces = spaces_from_spec(I)
        lie = ce.der_omega_lie(I, max(cutoff - 1, 1))
        for l in range(0, cutoff + 1):
            S = schur.ce_chain_schur(I.n, l)
            want = schur.apply_dims_int(S, spaces).get(l, 0)
            got = sum(len(ce.ce_basis(lie, p, q))
                      for p, q in ce.chain_coefficient_blocks(l))
            assert want == got, (l, want, got)

    def generator_membership():
        gens = forms.gamma_generators(I, cfg.generators)
        assert gens, "no generators"
        for g in gens:
            assert forms.is_member(g, I)
            assert forms.realization_conditions(g, I)

    for name, fn in (("free-lie-oracles", free_lie_oracles),
                     ("delta-squared", delta_squared),
                     ("exact-sequence-dims", exact_sequence_dims),
                     ("character-dims", character_dims),
                     ("membership-equivalence", membership_equivalence),
                     ("lambda-branch-separation", branch_separation),
                     ("schur-vs-words", schur_vs_words),
                     ("generator-membership", generator_membership)):
        run(name, fn)
    return checks


def cmd_verify(cfg, out=sys.stdout):
    checks = _verify_checks(cfg)
    meta = {"command": "verify", "spec": cfg.spec.to_json(),
            "cutoff": cfg.cutoff}
    if cfg.format == "json":
        _emit(checks, ["name", "status", "detail"], "json", meta, out)
    else:
        _emit(checks, ["name", "status", "detail"], "csv", meta, out)
    for c in checks:
        if c["status"] == "skipped":
            sys.stderr.write("warning: %s skipped: %s\n"
                             % (c["name"], c["detail"]))
    if any(c["status"] == "fail" for c in checks):
        return EXIT_PROPERTY_FAILURE
    return EXIT_OK


# ---------------------------------------------------------------------------

COMMANDS = {
    "ce-homology": cmd_ce_homology,
    "stability-scan": cmd_stability_scan,
    "membership": cmd_membership,
    "schur-dim": cmd_schur_dim,
    "block-coeffs": cmd_block_coeffs,
    "verify": cmd_verify,
}


def build_parser():
    ap = argparse.ArgumentParser(
        prog="derhom",
        description="Exact-rational homology workbench for derivation Lie "
                    "algebras of connected sums of sphere products.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--spec", required=True,
                    help='manifold spec JSON file: {"pairs": [[3,4], ...]}')
    ap.add_argument("--cutoff", type=int, default=None)
    ap.add_argument("--generators", default=None,
                    help="generator / candidate matrix JSON file")
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--genus-max", type=int, default=None)
    ap.add_argument("--stabilize-p", type=int, default=None)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_BAD_INPUT if e.code else EXIT_OK
    try:
        args.spec = ManifoldSpec.from_file(args.spec)
        thread_count()
        return COMMANDS[args.command](args)
    except (InvalidSpec, OSError, forms.MissingGeneratorFile) as e:
        sys.stderr.write("error: %s\n" % e)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
