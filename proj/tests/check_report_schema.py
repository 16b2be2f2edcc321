# Copyright 2026 The ktlive Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs each ktlive subcommand with --json-report and validates the report."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    ktlive, data, schema_path = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    schema = json.loads(schema_path.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    toggle, partial = str(data / "toggle.bg"), str(data / "partial.bg")
    runs = [
        (["validate", toggle], 0),
        (["validate", partial], 1),
        (["complete", partial], 0),
        (["product", toggle, "-t", str(data / "alternator.tr")], 0),
        (["check-live", toggle, "-k", "2"], 0),
        (["--cap", "3", "check-live", toggle, "-k", "2"], 2),
        (["solve", toggle, "-k", "1"], 0),
        (["simulate", toggle, "--env", str(data / "alternator.tr"), "-k", "2"], 0),
        (["gen", "qbf", str(data / "example.qdimacs")], 0),
        (["gen", "cnf", str(data / "sat2.cnf")], 0),
        (["gen", "robot", "--lanes", "2"], 0),
        (["--seed", "3", "gen", "random"], 0),
        (["enumerate", "-k", "1", "--game", toggle], 0),
    ]
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for i, (args, expected) in enumerate(runs):
            report = Path(tmp) / f"r{i}.json"
            proc = subprocess.run([ktlive, "--json-report", str(report), *args], capture_output=True, text=True)
            label = " ".join(args)
            if proc.returncode != expected:
                print(f"FAIL {label}: exit {proc.returncode}, expected {expected}\n{proc.stderr}")
                failures += 1
                continue
            doc = json.loads(report.read_text())
            errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
            for e in errors:
                print(f"FAIL {label}: {'/'.join(map(str, e.path))}: {e.message}")
            failures += bool(errors)
            if not errors:
                print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
