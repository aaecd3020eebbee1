"""
Spec files for the worked examples
==================================

Writes one JSON spec per figure into demos/specs, using the command-line
tool, so that every acceptance run is a single command.
"""

from pathlib import Path

from graphconcat.cli import main

here = Path(__file__).parent / "specs"
here.mkdir(exist_ok=True)


def run(*argv):
    code = main([str(a) for a in argv])
    if code:
        raise SystemExit(f"graphconcat {' '.join(map(str, argv))} exited with {code}")


# the constituent codes, stored with their input vertices (the graph G^C)
for name, recipe in [
    ("fig3_triangle", "triangle"),
    ("fig4_inner", "fig4-inner"),
    ("fig8_pentagon", "pentagon"),
    ("fig9_steane", "steane"),
    ("fig10_inner", "code422"),
    ("fig10_outer", "fig10-outer"),
    ("fig11_gcqc", "fig11"),
]:
    run("recipe", recipe, "-o", here / f"{name}.json")

# the concatenated codes
run("concat", here / "fig4_inner.json", here / "fig3_triangle.json", "--keep-inputs", "-o", here / "fig7f_code.json")
run("concat", here / "fig8_pentagon.json", here / "fig8_pentagon.json", "--method", "both", "-o", here / "fig8_code.json")
run("concat", here / "fig9_steane.json", here / "fig9_steane.json", "--method", "both", "-o", here / "fig9_code.json")
run("concat", here / "fig10_inner.json", here / "fig10_outer.json", "-o", here / "fig10_code.json")
run("gcqc", here / "fig11_gcqc.json", "-o", here / "fig11_code.json")

print("\n".join(sorted(p.name for p in here.glob("*.json"))))
