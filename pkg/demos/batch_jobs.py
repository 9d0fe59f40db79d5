"""
Batch jobs from JSON specs
==========================

The command line reads a job spec and writes a report.  The same entry point
is callable in-process; exit codes separate failures from bad input.
"""
import json
import os
import tempfile

from maninlab.cli import execute, main, validate_spec

job = validate_spec({"command": "verify-rank-main", "algebra": {"type": "A", "rank": 2},
                     "seed": 7, "sample_count": 5, "payload": {"splittings": 2}})
report = execute(job)
print("summary:", report["summary"])

# a malformed spec is reported with exit code 2
with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "bad.json")
    with open(path, "w") as fh:
        json.dump({"command": "rank-at-point", "algebra": {"type": "A", "rank": 0}}, fh)
    print("exit code for a bad spec:", main(["--spec", path]))

    # catalogs append a header line and one line per triple
    cat = os.path.join(tmp, "a2.jsonl")
    main(["enumerate-gbd", "--rank", "2", "--catalog", cat, "--out", os.path.join(tmp, "r.json")])
    with open(cat) as fh:
        lines = fh.read().splitlines()
    print("catalog header:", lines[0])
    print("catalog entries:", len(lines) - 1)
