"""
The command line
================

``tetra`` wraps the library: emit an example, verify it, compute its
cohomology and write a JSON report.  The same calls work from a shell.
"""

import json
import os
import tempfile

from tetra.cli import main

work = tempfile.mkdtemp()
path = os.path.join(work, "fp2x.json")

main(["examples", "emit", "fp2x", "-o", path])        # tetra examples emit fp2x -o fp2x.json
print("verify exit code:", main(["verify", path]))

report = os.path.join(work, "ext.json")
main(["ext", path, "--max-degree", "3", "--method", "canonical", "--out", report])
print(json.dumps(json.load(open(report))["degrees"]))

# exit code 3: the size guard
print("guard exit code:", main(["gs", path, "--max-degree", "30"]))
