"""Configuration-driven runs, as the command line tool performs them.

Equivalent shell usage:

    tdpsi verify --config run.json --text
    tdpsi sweep --config run.json --count 25 --seed 1
"""

from tdpsi.runner import load_config, run, sweep

doc = {"q": "2", "a": "3", "b": "7", "factors": [{"d": 1, "mu": "5"}, {"d": 1, "mu": "11"}], "suites": ["psi", "proof"]}
report, code = run(load_config(doc))
print(report.text_summary())
print("exit code", code)

# a^2 = mu: the pair acts reducibly, reported as a skip with a diagnosis
report, code = run(load_config(dict(doc, factors=[{"d": 1, "mu": "9"}])))
print("\n" + report.text_summary())
print("exit code", code)

agg, code = sweep(load_config(dict(doc, factors=[{"d": 1, "mu": "5"}], suites=["psi"]), sweep=(25, 1)))
print("\nsweep:", agg["summary"], "exit code", code)
for s in agg["samples"]:
    if s["status"] == "degenerate":
        print(f"  sample {s['index']}: {s['diagnosis'][0]}")
