# Driving the command line tool from a germ file.
#
# Run with:  python demos/04_cli_walkthrough.py
# (the same commands work from a shell as `germforge ...`)

import json
import subprocess
import sys
import tempfile
from pathlib import Path

GERMS = """\
# an ICIS followed by a node
vars x y z;
map F : 3 -> 2 = [x, y^2 + z^2];
vars u v;
map G : 2 -> 1 = [u^2 - v^2];
flag assert-locally-open;
"""

work = Path(tempfile.mkdtemp())
src = work / "node.germ"
src.write_text(GERMS)


def germforge(*args):
    cmd = [sys.executable, "-m", "germforge", *args]
    print("$ germforge", " ".join(args))
    proc = subprocess.run(cmd, capture_output=True, text=True)
    print(proc.stdout.rstrip())
    if proc.stderr:
        print(proc.stderr.rstrip())
    print(f"(exit {proc.returncode})\n")
    return proc


germforge("tame-check", str(src), "G")
germforge("compose-check", str(src), "F", "G", "--strict")
germforge("fiber-report", str(src), "F", "G")
germforge("gb", str(src), "F", "--order", "local")

# ## JSON reports
#
# Every verdict lands under a stable key together with its certificate.

out = work / "report.json"
germforge("compose-check", str(src), "F", "G", "--json", str(out), "--quiet")
report = json.loads(out.read_text())
verdicts = report["verdicts"]
for name, sub in sorted(verdicts["eq-2.2"].items()):
    print(f"eq-2.2[{name}]".ljust(18), f"holds={sub['holds']}")
for key in ("eq-3.1", "eq-3.9"):
    print(key.ljust(18), f"holds={verdicts[key]['holds']}  certificate={verdicts[key]['certificate']['kind']}")
print("equivalent-forms".ljust(18), f"agree={verdicts['equivalent-forms']['agree']}")

# Same seed, same bytes.

again = work / "again.json"
germforge("compose-check", str(src), "F", "G", "--json", str(again), "--quiet")
print("identical:", out.read_bytes() == again.read_bytes())

# Caps turn runaway computations into exit code 3.

germforge("compose-check", str(src), "F", "G", "--max-pairs", "2", "--quiet")
