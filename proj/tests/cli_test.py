#!/usr/bin/env python3
"""End-to-end checks of the rankdiv command line: outputs, exit codes, determinism."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = sys.argv[1]
SAMPLES = Path(sys.argv[2])
failures = []


def run(*args):
    p = subprocess.run([BIN, *args], capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def check(name, cond, detail=""):
    print(("ok   " if cond else "FAIL ") + name + (f" ({detail})" if detail and not cond else ""))
    if not cond:
        failures.append(name)


def report(*args):
    rc, out, err = run(*args)
    try:
        return rc, json.loads(out)
    except json.JSONDecodeError:
        return rc, {"stderr": err}


rc, r = report("construct", "alternating", "--m", "3", "--field", "2^1:0,1")
check("alternating spectrum", rc == 0 and r["report"]["spectrum"] == {"0": 1, "2": 7})
check("alternating not F_8-linear", r["report"]["fqm_linear"]["value"] is False and r["report"]["fqm_linear"]["search_exhaustive"])

rc, r = report("construct", "counterexample", "--q", "2", "--t", "3", "--l", "3", "--e", "2", "--g", "3")
check("counterexample shape", rc == 0 and r["report"]["shape"] == [9, 8] and r["report"]["divisibility_index"] == 2)
check("counterexample weights", set(r["report"]["spectrum"]) <= {"0", "2", "6", "8"})

rc, _, err = run("construct", "counterexample", "--q", "2", "--t", "3", "--l", "1", "--e", "2", "--g", "1")
check("counterexample bad params", rc == 4 and "BadParams" in err, f"rc={rc}")

rc, r = report("analyze", "--code", str(SAMPLES / "zero_2x2_f2.json"))
check("analyze zero code", rc == 0 and r["spectrum"] == {"0": 1} and r["divisibility_error"] == "zero code")

rc, r = report("analyze", "--code", str(SAMPLES / "full_2x2_f2.json"))
check("analyze full space", rc == 0 and r["divisibility_index"] == 1)

rc, r = report("construct", "em", "--code", str(SAMPLES / "f4_code_2x2.json"))
check("em index even", rc == 0 and r["report"]["divisibility_index"] % 2 == 0)

rc, r = report("recognize", "--code", str(SAMPLES / "scrambled_em.json"), "--e", "2")
check("recognize scrambled em", rc == 0 and r["arises"] is True and "witness" in r, f"rc={rc}")

rc, r = report("recognize", "--code", str(SAMPLES / "counterexample_23323.json"), "--e", "2")
check("recognize counterexample", rc == 2 and r["arises"] is False and r["reason"] == "e does not divide m", f"rc={rc}")

rc, r = report("recognize", "--code", str(SAMPLES / "rect_q2_f4.json"), "--e", "2", "--max-enum", "1")
check("recognize rect q=2 undecided", rc == 3 and r["arises"] == "undecided", f"rc={rc}")

rc, r = report("recognize", "--code", str(SAMPLES / "x_xq_f16.json"), "--e", "2")
check("recognize non-linear generator", rc == 2 and r["reason"] == "non-subfield-linear generator", f"rc={rc}")

rc, _, err = run("analyze", "--code", str(SAMPLES / "full_2x2_f2.json"), "--max-enum", "2")
check("budget exit code", rc == 5 and "max-enum" in err, f"rc={rc}")

rc, _, _ = run("analyze", "--inline", "{\"view\": \"nope\"}")
check("input error exit code", rc == 4, f"rc={rc}")

rc, r = report("verify", "directions", "--field", "2^3", "--trials", "2000")
check("verify directions", rc == 0 and r["result"]["ok"] and r["result"]["instances"] == 2000)

rc, r = report("verify", "weight-dual", "--m", "3", "--k", "2", "--trials", "200")
check("verify weight-dual", rc == 0 and r["result"]["ok"])

rc, r = report("verify", "prop-5.1", "--q", "2", "--t", "3", "--l", "3", "--e", "2", "--g", "3")
check("verify prop-5.1", rc == 0 and set(r["result"]["counts"]) == {"dim 0", "dim 2", "dim 6"})

with tempfile.TemporaryDirectory() as d:
    outs = []
    for i in range(2):
        path = Path(d) / f"r{i}.json"
        run("construct", "scramble", "--code", str(SAMPLES / "em_f4_code.json"), "--seed", "11", "--out", str(path))
        outs.append(path.read_bytes())
    check("byte-identical reports", outs[0] == outs[1] and len(outs[0]) > 0)

rc, out, _ = run("construct", "alternating", "--m", "2", "--format", "csv")
check("csv output", rc == 0 and out.startswith("key,value") and "report.spectrum.2,1" in out)

sys.exit(1 if failures else 0)
