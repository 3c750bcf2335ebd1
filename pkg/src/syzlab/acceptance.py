"""Acceptance checks shared by the test suite and ``syzlab corpus run``.

Each check returns a :class:`CheckResult` with a pass flag, the measured
values and the wall time.  Time limits are part of the check.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from importlib import resources

from syzlab import invariants as invariants_mod
from syzlab import oracle
from syzlab import resolve as resolve_mod
from syzlab.criteria import (
    INCONCLUSIVE,
    dutta_scan,
    free_summand,
    gdim_zero_up_to,
    gorenstein_criterion_ext_L_R,
    gorenstein_criterion_omega,
    gorenstein_scan_syzygies_of_omega,
    regularity_criterion,
    socle_lemma_check,
    syzygy_image_builder,
    takahashi_check,
)
from syzlab.fuzz import random_artinian_ring, random_cyclic_module, random_module
from syzlab.groebner import ideal_module
from syzlab.homology import ext, hom_module, socle, tor
from syzlab.invariants import classify, hilbert
from syzlab.resolve import minimal_free_resolution, syzygy_module
from syzlab.rings import GradedRing, cyclic_module, define_ring, direct_sum, free_module, residue_field

CORPUS_RINGS = ("r1", "r2", "r3", "r4", "line", "koszul3")


def corpus_ring(name: str) -> GradedRing:
    """One of the bundled rings (see ``syzlab/corpus/rings``)."""
    if name not in CORPUS_RINGS:
        raise KeyError(f"unknown corpus ring {name!r}; choose from {', '.join(CORPUS_RINGS)}")
    text = resources.files("syzlab").joinpath("corpus", "rings", f"{name}.json").read_text()
    return define_ring(json.loads(text))


@dataclass
class CheckResult:
    number: int
    title: str
    ok: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0
    limit: float | None = None

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lim = f" (limit {self.limit:g} s)" if self.limit else ""
        return f"[{status}] criterion {self.number}: {self.title} [{self.seconds:.2f} s{lim}]"

    def to_json(self, with_time: bool = False) -> dict:
        out = {"criterion": self.number, "title": self.title, "ok": self.ok, "detail": self.detail}
        if with_time:
            out["seconds"] = round(self.seconds, 3)
        return out


def clear_caches():
    """Drop memoized resolutions and classifications so timings start cold."""
    resolve_mod._RESOLUTIONS.clear()
    invariants_mod._CLASSIFY_CACHE.clear()


def _timed(number, title, limit, fn, *args):
    clear_caches()
    t0 = time.perf_counter()
    ok, detail = fn(*args)
    dt = time.perf_counter() - t0
    if limit is not None and dt >= limit:
        ok = False
        detail["timeLimitExceeded"] = True
    return CheckResult(number, title, ok, detail, dt, limit)


# ---------------------------------------------------------------- individual criteria

def _sharpness_tables():
    R1 = corpus_ring("r1")
    M = ideal_module(["x"], R1)
    t = tor(M, M, 1, 8).dims
    e = ext(M, M, 1, 8).dims
    ok = t == [1, 0, 1, 0, 1, 0, 1, 0] and e == [0, 1, 0, 1, 0, 1, 0, 1]
    return ok, {"tor": t, "ext": e}


def check_1() -> CheckResult:
    return _timed(1, "Ext/Tor of (x) over k[x,y]/(xy), i = 1..8", 5.0, _sharpness_tables)


def _ring_data():
    c = classify(corpus_ring("r1"))
    got = {"e": c.multiplicity, "embdim": c.embdim, "dim": c.dim, "minMult": c.hasMinimalMultiplicity,
           "gorenstein": c.isGorenstein, "regular": c.isRegular}
    want = {"e": 2, "embdim": 2, "dim": 1, "minMult": True, "gorenstein": True, "regular": False}
    return got == want, got


def check_2() -> CheckResult:
    return _timed(2, "invariants of k[x,y]/(xy)", None, _ring_data)


def _sharpness():
    R1 = corpus_ring("r1")
    M = syzygy_image_builder(R1, [(1, 1)], kill_generators=[1])
    v = regularity_criterion(M, M, 8)
    runs = {k: r.longest_zero_run(1)[0] for k, r in v.reports.items()}
    ok = (runs == {"ext": 1, "tor": 1} and v.status == INCONCLUSIVE and not v.verdict
          and v.agreement and not v.crossCheck)
    return ok, {"longestZeroRun": runs, "status": v.status, "verdict": v.verdict,
                "agreement": v.agreement}


def check_3() -> CheckResult:
    return _timed(3, "regularity criterion is inconclusive on (x) over k[x,y]/(xy)", None, _sharpness)


def _koszul():
    S = corpus_ring("koszul3")
    M = direct_sum(free_module(S, 1), cyclic_module(S, ["x"]), cyclic_module(S, ["x", "y"]),
                   cyclic_module(S, ["x", "y", "z"]))
    F = minimal_free_resolution(M, 6)
    flags = [free_summand(syzygy_module(M, n, F)).present for n in range(6)]
    return flags == [True, True, True, True, False, False], {"freeSummand": flags}


def check_4() -> CheckResult:
    return _timed(4, "free summands of syzygies of the Koszul sum over k[x,y,z]", 30.0, _koszul)


def _omega_scan():
    rows = {}
    ok = True
    for name, want in (("r1", 0), ("r2", None), ("r4", None)):
        v = gorenstein_scan_syzygies_of_omega(corpus_ring(name), 6)
        n = v.window[0] if v.window else None
        rows[name] = {"foundAt": n, "agreement": v.agreement}
        ok = ok and n == want and v.agreement
    return ok, rows


def check_5() -> CheckResult:
    return _timed(5, "free summand scan over syzygies of the canonical module", None, _omega_scan)


def _dutta():
    rows = {}
    ok = True
    for name in ("r1", "r2", "r3", "r4", "line"):
        d = dutta_scan(corpus_ring(name), 6)
        rows[name] = {"freeSummandAt": d["freeSummandAt"], "regular": d["regular"]}
        ok = ok and d["agreement"]
        ok = ok and (bool(d["freeSummandAt"]) == (name in ("r3", "line")))
    return ok, rows


def check_6() -> CheckResult:
    return _timed(6, "free summands of syzygies of k exactly on regular rings", None, _dutta)


def socle_lemma_fuzz(seed: int = 0, count: int = 200) -> tuple[bool, dict]:
    rng = random.Random(seed)
    violations = []
    rings = []
    for t in range(count):
        R = random_artinian_ring(rng, 3)
        M = random_cyclic_module(rng, R)
        rep = socle_lemma_check(M, 1, 4)
        rings.append(R.describe()["ideal"])
        if not rep["ok"]:
            violations.append({"case": t, "ring": R.describe(), "module": M.describe(),
                               "violations": rep["violations"]})
    return not violations, {"seed": seed, "cases": count, "violations": violations,
                            "fingerprint": _fingerprint(rings)}


def _fingerprint(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:16]


def check_7(seed: int = 0, count: int = 200) -> CheckResult:
    return _timed(7, f"socle lemma on {count} random Artinian monomial rings", None,
                  socle_lemma_fuzz, seed, count)


def _takahashi():
    rep = takahashi_check(corpus_ring("r1"), "x+y", 1, 5)
    mus = [r["mu"] for r in rep["rows"]]
    ok = rep["ok"] and mus == [2, 2, 2, 2, 2]
    return ok, {"mu": mus, "expected": [r["expected"] for r in rep["rows"]],
                "quotientRing": rep["quotientRing"]}


def check_8() -> CheckResult:
    return _timed(8, "syzygies of k modulo x+y over k[x,y]/(xy)", None, _takahashi)


def _gorenstein_theorems():
    rows = {}
    ok = True
    for name, gor in (("r1", True), ("r2", False), ("r4", False)):
        R = corpus_ring(name)
        L = syzygy_image_builder(R, [(1, 1)])
        bound = None if gor else 8
        a = gorenstein_criterion_ext_L_R(L, bound)
        b = gorenstein_criterion_omega(L, bound)
        rows[name] = {"extLR": {"window": a.window, "agreement": a.agreement},
                      "omega": {"window": b.window, "agreement": b.agreement}}
        ok = ok and a.agreement and b.agreement
        ok = ok and (a.window is not None) == gor and (b.window is not None) == gor
    g = gdim_zero_up_to(syzygy_image_builder(corpus_ring("r1"), [(1, 1)]), 6)
    rows["gdim"] = {"gdimZero": g["gdimZero"], "corollary": g["corollary"]}
    ok = ok and g["gdimZero"] and g["corollary"]["applies"] and g["corollary"]["agreement"]
    return ok, rows


def check_9() -> CheckResult:
    return _timed(9, "Gorenstein criteria via Ext(L,R), Ext/Tor(omega,L) and G-dimension",
                  None, _gorenstein_theorems)


def _compare(main: dict, other: dict) -> bool:
    return all(main.get(e, 0) == v for e, v in other.items())


def oracle_case(M, N, i_hi: int = 2) -> dict:
    """Graded dimensions of Ext/Tor/Hom/socle from both paths; returns mismatches."""
    mism = []
    FM = minimal_free_resolution(M, i_hi + 1)
    er = ext(M, N, 0, i_hi, resolution=FM)
    tr = tor(M, N, 0, i_hi, resolution=FM)
    cap = max(er.cap, tr.cap)
    lowN = min(N.shifts, default=0)
    for i in range(i_hi + 1):
        Fi = FM.shifts[i] if i < len(FM.shifts) else ()
        Fn = FM.shifts[i + 1] if i + 1 < len(FM.shifts) else ()
        top = max(list(Fn) + list(Fi) + [0]) + 2
        lo = lowN - max(Fi, default=0) - 1
        degs = range(lo, cap + 1)
        o = oracle.ext_dims(M, N, i, degs, top)
        h = er.hilbert[i]
        m = {e: (h.value(e) if h.dim >= 0 else 0) for e in degs}
        if m != o:
            mism.append({"kind": "ext", "i": i, "main": m, "oracle": o})
        lo = min(Fi, default=0) + lowN - 1
        degs = range(lo, cap + 1)
        o = oracle.tor_dims(M, N, i, degs, top)
        h = tr.hilbert[i]
        m = {e: (h.value(e) if h.dim >= 0 else 0) for e in degs}
        if m != o:
            mism.append({"kind": "tor", "i": i, "main": m, "oracle": o})
    degs = range(lowN - max(M.shifts, default=0) - 1, cap + 1)
    H = hilbert(hom_module(M, N).module)
    m = {e: (H.value(e) if H.dim >= 0 else 0) for e in degs}
    o = oracle.hom_dims(M, N, degs)
    if m != o:
        mism.append({"kind": "hom", "main": m, "oracle": o})
    s = socle(M)
    degs = range(min(M.shifts, default=0), cap + 1)
    m = {e: s.degrees.get(e, 0) for e in degs}
    o = oracle.socle_dims(M, degs)
    if m != o:
        mism.append({"kind": "socle", "main": m, "oracle": o})
    return {"mismatches": mism, "cap": cap}


def oracle_fuzz(seed: int = 0, count: int = 50) -> tuple[bool, dict]:
    rng = random.Random(seed)
    rings = [corpus_ring("r1"), corpus_ring("r2"), corpus_ring("r4")]
    failures = []
    mods = []
    for t in range(count):
        R = rings[t % 3]
        M = random_module(rng, R)
        choice = rng.randrange(3)
        N = residue_field(R) if choice == 0 else free_module(R, 1) if choice == 1 else random_module(rng, R)
        mods.append([M.describe(), N.describe()])
        res = oracle_case(M, N)
        if res["mismatches"]:
            failures.append({"case": t, "ring": R.describe(), "M": M.describe(), "N": N.describe(),
                             "mismatches": res["mismatches"]})
    return not failures, {"seed": seed, "cases": count, "failures": failures,
                          "fingerprint": _fingerprint(mods)}


def check_10(seed: int = 0, count: int = 50) -> CheckResult:
    return _timed(10, f"Ext/Tor/Hom/socle graded dimensions match the oracle on {count} modules",
                  None, oracle_fuzz, seed, count)


def _betti_growth():
    R2 = corpus_ring("r2")
    main = minimal_free_resolution(residue_field(R2), 6).ranks()[:7]
    lin = oracle.residue_betti(R2, 6)
    want = [2 ** i for i in range(7)]
    return main == want and lin == want, {"main": main, "oracle": lin}


def check_11() -> CheckResult:
    return _timed(11, "Betti numbers of k over k[x,y]/(x,y)^2 are 2^i", 10.0, _betti_growth)


def run_all(seed: int = 0, socle_cases: int = 200, oracle_cases: int = 50) -> list[CheckResult]:
    return [check_1(), check_2(), check_3(), check_4(), check_5(), check_6(),
            check_7(seed, socle_cases), check_8(), check_9(), check_10(seed, oracle_cases), check_11()]
