"""Regularity and Gorenstein criteria built on syzygies of the residue field.

Every scan returns a :class:`CriterionVerdict` carrying the window it found
(if any), the boolean verdict, the answer of the independent classifier and
whether the two agree.  Scans that need hypotheses (minimal multiplicity, a
certified maximal Cohen-Macaulay image of syzygies of k) refuse to run when
they are not met unless ``exploratory=True`` is passed, in which case the
result is labelled exploratory and carries no verdict semantics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from syzlab.engine import vec_degree, vec_mul_poly
from syzlab.groebner import ideal_basis, membership_engine, module_annihilator
from syzlab.homology import (
    ExtTorReport,
    dual_and_biduality,
    ext,
    hom_module,
    identity_vector,
    socle,
    tor,
)
from syzlab.invariants import canonical_module, classify, depth, hilbert
from syzlab.resolve import (
    minimal_free_resolution,
    minimal_presentation,
    quotient_by_linear_regular,
    syzygy_module,
)
from syzlab.rings import (
    GradedFreeModule,
    GradedRing,
    PresentedModule,
    RingError,
    direct_sum,
    free_module,
    residue_field,
)


class CriterionRefused(Exception):
    """A criterion's hypotheses are not met."""

    def __init__(self, criterion: str, reason: str):
        super().__init__(f"{criterion}: {reason}")
        self.criterion = criterion
        self.reason = reason


INCONCLUSIVE = "inconclusive-by-theorem"


@dataclass
class CriterionVerdict:
    criterion: str
    inputs: dict
    window: tuple | None           # (first index, last index) of the run found
    verdict: bool                  # the ring property the criterion certifies
    status: str                    # "window", "no-window", INCONCLUSIVE, "found", "not-found"
    crossCheck: bool
    agreement: bool
    reports: dict = field(default_factory=dict)
    witness: dict = field(default_factory=dict)
    exploratory: bool = False

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "inputs": self.inputs,
            "window": list(self.window) if self.window else None,
            "verdict": self.verdict,
            "status": self.status,
            "crossCheck": self.crossCheck,
            "agreement": self.agreement,
            "exploratory": self.exploratory,
            "reports": {k: (v.to_json() if isinstance(v, ExtTorReport) else v)
                        for k, v in sorted(self.reports.items())},
            "witness": self.witness,
        }


def default_scan_bound(ring: GradedRing) -> int:
    return 2 * (hilbert(ring).dim + 1) + 2


# ---------------------------------------------------------------- trace and free summands

@dataclass
class FreeSummand:
    present: bool
    trace: list                     # reduced basis of the trace ideal (I removed)
    hom: dict | None = None         # {generator j: poly} values of a split surjection
    generator: int | None = None    # generator whose image is a unit
    unit: int | None = None

    def to_json(self, ring) -> dict:
        out = {"present": self.present, "trace": [ring.fmt(f) for f in self.trace]}
        if self.present:
            out["witness"] = {
                "surjection": {str(j): ring.fmt(f) for j, f in sorted(self.hom.items())},
                "section": {"generator": self.generator,
                            "coefficient": pow(self.unit, ring.p - 2, ring.p)},
            }
        return out


def _hom_to_ring(M: PresentedModule):
    return hom_module(M, free_module(M.ring, 1))


def free_summand(M: PresentedModule) -> FreeSummand:
    """Trace ideal of M and, when it is the unit ideal, a splitting of M -> R."""
    ring = M.ring
    if hilbert(M).dim < 0:
        return FreeSummand(False, [])
    H = _hom_to_ring(M)
    entries = []
    hit = None
    for t, v in enumerate(H.generators):
        rows: dict = {}
        for (j, m), x in v.items():
            rows.setdefault(j, {})[m] = x
        for j, f in sorted(rows.items()):
            entries.append(f)
            z = (0,) * ring.nvars
            if hit is None and z in f:
                hit = (t, j, f[z], rows)
    trace = ideal_basis(entries, ring) if entries else []
    if hit is None:
        return FreeSummand(False, trace)
    t, j, c, rows = hit
    return FreeSummand(True, [ring.one()], hom=rows, generator=j, unit=c)


def trace_ideal(M: PresentedModule) -> list[dict]:
    return free_summand(M).trace


def has_free_summand(M: PresentedModule) -> bool:
    return free_summand(M).present


# ---------------------------------------------------------------- semidualizing

@dataclass
class SemidualizingVerdict:
    ok: bool
    bound: int
    failed: str | None = None       # "annihilator", "hom-not-cyclic", "ext"
    index: int | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"semidualizing": self.ok, "upToBound": self.bound, "failed": self.failed,
                "index": self.index, "detail": self.detail}


def hom_generated_by_identity(M: PresentedModule) -> bool:
    Mp = minimal_presentation(M)
    H = hom_module(Mp, Mp)
    ident = identity_vector(H.source)
    eng = membership_engine([ident] + list(H.relations), M.ring, H.ambient_shifts)
    return all(eng.contains(M.ring.nf_vec(v)) for v in H.generators)


def is_semidualizing_up_to(M: PresentedModule, bound: int) -> SemidualizingVerdict:
    """R -> Hom(M, M) an isomorphism and Ext^i(M, M) = 0 for 1 <= i <= bound."""
    if bound < 1:
        raise RingError("bound must be at least 1")
    ring = M.ring
    if hilbert(M).dim < 0:
        return SemidualizingVerdict(False, bound, "annihilator", detail={"annihilator": ["1"]})
    ann = module_annihilator(M)
    if ann:
        return SemidualizingVerdict(False, bound, "annihilator",
                                    detail={"annihilator": [ring.fmt(f) for f in ann]})
    if not hom_generated_by_identity(M):
        return SemidualizingVerdict(False, bound, "hom-not-cyclic")
    rep = ext(M, M, 1, bound)
    for i, d in zip(rep.indices, rep.dims):
        if d != 0:
            return SemidualizingVerdict(False, bound, "ext", index=i, detail={"dim": d})
    return SemidualizingVerdict(True, bound)


# ---------------------------------------------------------------- syzygy images of k

@dataclass(eq=False)
class SyzygyImage:
    """A homomorphic image of a direct sum of syzygy modules of k."""

    module: PresentedModule
    spec: list                      # [(n, multiplicity), ...]
    quotient: dict
    certificate: dict

    @property
    def certified(self) -> bool:
        return bool(self.certificate.get("certified"))

    def to_json(self) -> dict:
        return {"spec": [list(s) for s in self.spec], "quotient": self.quotient,
                "certificate": self.certificate}


def syzygy_image_builder(ring: GradedRing, spec: Sequence[tuple[int, int]],
                         kill_generators: Sequence[int] = (),
                         elements: Sequence[dict] = ()) -> SyzygyImage:
    """Build (sum of Omega_n(k)^{j_n}) / (submodule) and certify it MCM.

    The submodule is generated by the listed generators of the direct sum
    (``kill_generators``, indices into the concatenated minimal covers) and by
    ``elements`` (homogeneous vectors over that cover).
    """
    if not spec:
        raise RingError("syzygy image needs at least one (n, multiplicity) pair")
    k = residue_field(ring)
    parts = []
    for n, j in spec:
        if n < 0 or j < 1:
            raise RingError(f"invalid syzygy spec entry ({n}, {j})")
        Om = minimal_presentation(syzygy_module(k, n))
        parts.extend([Om] * j)
    D = direct_sum(*parts)
    zero = (0,) * ring.nvars
    rels = list(D.relations)
    for c in kill_generators:
        if not 0 <= c < D.rank:
            raise RingError(f"generator index {c} outside the cover of rank {D.rank}")
        rels.append({(c, zero): 1})
    for v in elements:
        if v:
            rels.append(dict(v))
    Q = minimal_presentation(PresentedModule(ring, D.cover, tuple(rels)))
    cert: dict = {"certified": False}
    h = hilbert(Q)
    if h.dim < 0:
        cert["reason"] = "the image is the zero module"
    else:
        dp = depth(Q)
        dim = hilbert(ring).dim
        cert.update({"depth": dp, "ringDim": dim})
        if dp == dim:
            cert["certified"] = True
        else:
            cert["reason"] = f"not maximal Cohen-Macaulay (depth {dp} < dim {dim})"
    quotient = {"killGenerators": list(kill_generators),
                "elements": [[ring.fmt({m: x for (c, m), x in v.items() if c == l})
                              for l in range(D.rank)] for v in elements]}
    return SyzygyImage(Q, [tuple(s) for s in spec], quotient, cert)


# ---------------------------------------------------------------- guards

def _require_min_mult(name, ring, exploratory):
    cl = classify(ring)
    if not cl.isCM:
        if exploratory:
            return cl
        raise CriterionRefused(name, "the ring is not Cohen-Macaulay")
    if not cl.hasMinimalMultiplicity and not exploratory:
        raise CriterionRefused(
            name, f"the ring does not have minimal multiplicity "
                  f"(e = {cl.multiplicity}, embdim - dim + 1 = {cl.embdim - cl.dim + 1})")
    return cl


def _require_image(name, X, exploratory):
    if isinstance(X, SyzygyImage):
        if not X.certified and not exploratory:
            raise CriterionRefused(name, "module is not a certified MCM image of syzygies of k: "
                                   + X.certificate.get("reason", "uncertified"))
        return X.module, X.to_json()
    if exploratory:
        return X, {"uncertified": True}
    raise CriterionRefused(name, "module must come from the syzygy image builder "
                                 "(MCM image of a sum of syzygy modules of k)")


def _window(report: ExtTorReport, length: int):
    """First run of `length` consecutive vanishing indices (indices >= 1)."""
    run = 0
    for i, v in zip(report.indices, report.vanishing):
        if i < 1:
            continue
        run = run + 1 if v else 0
        if run >= length:
            return (i - length + 1, i)
    return None


def _scan_status(reports, d):
    wins = [w for w in (_window(r, d + 1) for r in reports) if w]
    if wins:
        return min(wins), "window"
    longest = max(r.longest_zero_run(1)[0] for r in reports)
    if d >= 1 and longest >= d:
        return None, INCONCLUSIVE
    return None, "no-window"


def _verdict(name, inputs, reports, d, cross, exploratory, extra=None):
    window, status = _scan_status(list(reports.values()), d)
    verdict = window is not None
    agreement = verdict == cross if not exploratory else True
    out = CriterionVerdict(name, inputs, window, verdict, status, cross, agreement,
                           reports=dict(reports), exploratory=exploratory)
    for k, r in reports.items():
        out.witness[f"{k}LongestZeroRun"] = r.longest_zero_run(1)[0]
    if extra:
        out.witness.update(extra)
    return out


# ---------------------------------------------------------------- criteria

def regularity_criterion(M, N, bound: int | None = None, exploratory: bool = False) -> CriterionVerdict:
    """(d+1) consecutive vanishing Ext^i(M,N) or Tor_i(M,N), i >= 1, iff R regular."""
    name = "regularity"
    Mm, mi = _require_image(name, M, exploratory)
    Nm, ni = _require_image(name, N, exploratory)
    ring = Mm.ring
    cl = _require_min_mult(name, ring, exploratory)
    bound = bound or default_scan_bound(ring)
    reports = {"ext": ext(Mm, Nm, 1, bound), "tor": tor(Mm, Nm, 1, bound)}
    return _verdict(name, {"M": mi, "N": ni, "bound": bound, "d": cl.dim}, reports,
                    cl.dim, cl.isRegular, exploratory)


def gorenstein_criterion_ext_L_R(L, bound: int | None = None, exploratory: bool = False) -> CriterionVerdict:
    """(d+1) consecutive vanishing Ext^i(L, R), i >= 1, iff R Gorenstein."""
    name = "gorenstein-ext"
    Lm, li = _require_image(name, L, exploratory)
    ring = Lm.ring
    cl = _require_min_mult(name, ring, exploratory)
    bound = bound or default_scan_bound(ring)
    reports = {"ext": ext(Lm, free_module(ring, 1), 1, bound)}
    return _verdict(name, {"L": li, "bound": bound, "d": cl.dim}, reports,
                    cl.dim, cl.isGorenstein, exploratory)


def gorenstein_criterion_omega(L, bound: int | None = None, exploratory: bool = False) -> CriterionVerdict:
    """(d+1) consecutive vanishing Ext^i(omega, L) or Tor_i(omega, L) iff R Gorenstein."""
    name = "gorenstein-omega"
    Lm, li = _require_image(name, L, exploratory)
    ring = Lm.ring
    cl = _require_min_mult(name, ring, exploratory)
    if not cl.isCM:
        raise CriterionRefused(name, "the ring is not Cohen-Macaulay; no canonical module")
    bound = bound or default_scan_bound(ring)
    w = canonical_module(ring)
    reports = {"ext": ext(w, Lm, 1, bound), "tor": tor(w, Lm, 1, bound)}
    return _verdict(name, {"L": li, "bound": bound, "d": cl.dim}, reports,
                    cl.dim, cl.isGorenstein, exploratory)


def gorenstein_scan_syzygies_of_omega(ring: GradedRing, n_max: int | None = None) -> CriterionVerdict:
    """Scan Omega_n(omega), 0 <= n <= n_max, for a free summand."""
    name = "gorenstein-omega-scan"
    cl = classify(ring)
    if not cl.isCM:
        raise CriterionRefused(name, "the ring is not Cohen-Macaulay; no canonical module")
    if n_max is None:
        n_max = 2 * cl.dim + 4
    w = canonical_module(ring)
    F = minimal_free_resolution(w, n_max + 1)
    found = None
    scan = []
    for n in range(n_max + 1):
        fs = free_summand(syzygy_module(w, n, F))
        scan.append({"n": n, "freeSummand": fs.present})
        if fs.present:
            found = (n, fs)
            break
    verdict = found is not None
    agreement = verdict == cl.isGorenstein and (found is None or found[0] == 0)
    out = CriterionVerdict(name, {"nmax": n_max}, (found[0], found[0]) if found else None,
                           verdict, "found" if verdict else "not-found", cl.isGorenstein,
                           agreement, witness={"scan": scan})
    if found:
        out.witness["summand"] = found[1].to_json(ring)
    return out


def gdim_zero_up_to(L, bound: int = 4) -> dict:
    """Biduality and Ext^i(L, R) = Ext^i(L*, R) = 0 for 1 <= i <= bound."""
    if bound < 1:
        raise RingError("bound must be at least 1")
    Lm = L.module if isinstance(L, SyzygyImage) else L
    ring = Lm.ring
    R = free_module(ring, 1)
    dual, iso, info = dual_and_biduality(Lm)
    out = {"criterion": "gdim", "bound": bound, "reflexive": iso,
           "injective": info.injective, "surjective": info.surjective}
    e1 = ext(Lm, R, 1, bound)
    e2 = ext(dual, R, 1, bound) if dual.rank else None
    out["extL"] = e1.to_json()
    out["extDual"] = e2.to_json() if e2 else None
    ok = iso and all(e1.vanishing) and (e2 is None or all(e2.vanishing))
    out["gdimZero"] = ok
    # corollary harness: a syzygy image of G-dimension zero over a ring of
    # minimal multiplicity forces the ring to be Gorenstein
    cl = classify(ring)
    applies = (ok and isinstance(L, SyzygyImage) and L.certificate.get("nonzero", True)
               and cl.isCM and cl.hasMinimalMultiplicity and hilbert(Lm).dim >= 0)
    out["corollary"] = {"applies": bool(applies), "gorenstein": cl.isGorenstein,
                        "agreement": (not applies) or cl.isGorenstein}
    return out


def no_summand_audit(M: PresentedModule, n_max: int | None = None, semidualizing_bound: int = 1) -> dict:
    """Free / semidualizing summand audit of Omega_n(M) for 0 <= n <= n_max."""
    ring = M.ring
    cl = classify(ring)
    d = cl.dim
    if n_max is None:
        n_max = 2 * d + 4
    mcm = hilbert(M).dim >= 0 and depth(M) == d
    start = 1 if (mcm and cl.isCM) else d + 1
    F = minimal_free_resolution(M, n_max + 1)
    rows, violations = [], []
    for n in range(n_max + 1):
        Om = syzygy_module(M, n, F)
        fs = free_summand(Om)
        row = {"n": n, "rank": Om.rank, "freeSummand": fs.present, "inWindow": n >= start}
        if n >= start and Om.rank and cl.isCM:
            sd = is_semidualizing_up_to(Om, semidualizing_bound)
            row["semidualizing"] = sd.ok
            if sd.ok:
                violations.append({"n": n, "kind": "semidualizing"})
        if n >= start and fs.present and cl.isCM:
            violations.append({"n": n, "kind": "free"})
        rows.append(row)
    return {"criterion": "no-summand", "d": d, "windowStart": start, "cm": cl.isCM,
            "exploratory": not cl.isCM, "scan": rows, "violations": violations,
            "agreement": not violations}


def dutta_scan(ring: GradedRing, n_max: int = 6) -> dict:
    """Free summands of Omega_n(k), 0 <= n <= n_max, versus regularity."""
    k = residue_field(ring)
    F = minimal_free_resolution(k, n_max + 1)
    hits = [n for n in range(n_max + 1) if has_free_summand(syzygy_module(k, n, F))]
    reg = classify(ring).isRegular
    return {"criterion": "dutta", "nmax": n_max, "freeSummandAt": hits,
            "regular": reg, "agreement": bool(hits) == reg}


# ---------------------------------------------------------------- lemma checks

def socle_lemma_check(M: PresentedModule, n_lo: int = 1, n_hi: int = 4) -> dict:
    """Soc(R) * Omega_n(M) = 0 for n_lo <= n <= n_hi.

    Omega_n(M) is the image of d_n, so the check is that every socle element
    kills every column of d_n.
    """
    ring = M.ring
    soc = socle(ring)
    elems = [{m: x for (_, m), x in v.items()} for v in soc.generators]
    F = minimal_free_resolution(M, n_hi)
    violations = []
    for n in range(max(n_lo, 1), n_hi + 1):
        if n > len(F.maps):
            break
        for j, col in enumerate(F.maps[n - 1]):
            for s in elems:
                if ring.nf_vec(vec_mul_poly(col, s, ring.p)):
                    violations.append({"n": n, "column": j, "socle": ring.fmt(s)})
    return {"check": "socle-lemma", "range": [n_lo, n_hi], "socleDim": soc.dim,
            "violations": violations, "ok": not violations}


def socle_lemma_check_by_annihilator(M: PresentedModule, n: int) -> bool:
    """Slower independent form: Soc(R) inside ann(Omega_n(M)) via the annihilator ideal."""
    ring = M.ring
    Om = syzygy_module(M, n)
    if Om.rank == 0:
        return True
    ann = module_annihilator(Om)
    soc = [{m: x for (_, m), x in v.items()} for v in socle(ring).generators]
    if not soc:
        return True
    if not ann:
        return False
    from syzlab.groebner import poly_in_ideal
    return all(poly_in_ideal(s, ann, ring) for s in soc)


def takahashi_check(ring: GradedRing, ell, n_lo: int = 1, n_hi: int = 5, steps: int = 3) -> dict:
    """Compare Omega_n^R(k) (x) R/(ell) with Omega_n(k) + Omega_{n-1}(k)(-1) over R/(ell).

    Betti tables (first ``steps`` steps) and Hilbert series are compared.
    """
    k = residue_field(ring)
    F = minimal_free_resolution(k, n_hi + 1)
    rows = []
    Rbar = None
    for n in range(n_lo, n_hi + 1):
        Om = syzygy_module(k, n, F)
        Q = quotient_by_linear_regular(Om, ell)
        Rbar = Q.ring
        kb = residue_field(Rbar)
        A = syzygy_module(kb, n)
        B = syzygy_module(kb, n - 1)
        B1 = PresentedModule(Rbar, GradedFreeModule(tuple(s + 1 for s in B.shifts)), B.relations)
        bq = minimal_free_resolution(Q, steps).betti
        expected = minimal_free_resolution(direct_sum(A, B1), steps).betti
        hq = hilbert(Q)
        he = hilbert(direct_sum(A, B1))
        fb = minimal_free_resolution(kb, n)
        beta = fb.ranks()
        rows.append({
            "n": n,
            "mu": minimal_presentation(Q).rank,
            "expected": beta[n] + beta[n - 1],
            "bettiMatch": bq.entries == expected.entries,
            "hilbertMatch": hq == he,
            "betti": bq.to_json(),
        })
    ok = all(r["mu"] == r["expected"] and r["bettiMatch"] and r["hilbertMatch"] for r in rows)
    return {"check": "takahashi", "ell": ring.fmt(ell if isinstance(ell, dict) else ring.poly(ell)),
            "quotientRing": Rbar.describe() if Rbar else None, "rows": rows, "ok": ok}
