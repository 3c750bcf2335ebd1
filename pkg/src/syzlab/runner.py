"""Golden-corpus runner behind ``syzlab corpus run``."""

from __future__ import annotations

import difflib
import json
import sys
import time
from importlib import resources
from pathlib import Path

from syzlab import acceptance
from syzlab.cli import build_parser, dumps, envelope, execute_args, strip_timestamp

DISAGREEMENT = 3


def load_jobs() -> list[dict]:
    return json.loads(resources.files("syzlab").joinpath("corpus", "jobs.json").read_text())


def default_golden_dir() -> Path:
    return Path(str(resources.files("syzlab").joinpath("corpus", "golden")))


def run_job(job: dict) -> tuple[int, str]:
    """Run one job in-process; returns (exit code, canonical JSON text without timestamp)."""
    args = build_parser().parse_args(job["argv"])
    code, report, msg = execute_args(args)
    payload = {"exit": code, "report": strip_timestamp(report) if report else None}
    if msg:
        payload["message"] = msg
    return code, dumps(payload)


def corpus_run(args) -> tuple[int, dict, str]:
    golden = Path(args.golden) if args.golden else default_golden_dir()
    jobs_out, messages = [], []
    failed = False
    t0 = time.perf_counter()
    for job in load_jobs():
        code, text = run_job(job)
        path = golden / f"{job['name']}.json"
        row = {"name": job["name"], "exit": code, "expectedExit": job.get("exit", 0)}
        if args.update_golden:
            golden.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
            row["golden"] = "written"
        elif not path.exists():
            row["golden"] = "missing"
            failed = True
            messages.append(f"golden file missing: {path}")
        else:
            want = path.read_text()
            if want == text:
                row["golden"] = "match"
            else:
                row["golden"] = "mismatch"
                failed = True
                diff = difflib.unified_diff(want.splitlines(True), text.splitlines(True),
                                            fromfile=str(path), tofile=f"{job['name']} (computed)")
                messages.append("".join(diff))
        if code != row["expectedExit"]:
            failed = True
            messages.append(f"job {job['name']} exited {code}, expected {row['expectedExit']}")
        jobs_out.append(row)
    checks = []
    if not args.skip_acceptance:
        for res in acceptance.run_all(args.seed, args.socle_cases, args.oracle_cases):
            checks.append(res.to_json())
            messages.append(res.line())
            failed = failed or not res.ok
    summary = {
        "seed": args.seed,
        "jobs": jobs_out,
        "acceptance": checks,
        "ok": not failed,
    }
    messages.append(f"corpus run finished in {time.perf_counter() - t0:.1f} s")
    report = envelope("corpus run", None, summary)
    text = "\n".join(m.rstrip("\n") for m in messages)
    if text:
        print(text, file=sys.stderr)
    return (DISAGREEMENT if failed else 0), report, ""
