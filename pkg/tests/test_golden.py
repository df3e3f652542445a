"""Golden canonical renderings for every shipped invariant.

Rendering is part of the external interface (CLI output and the explorer
both show these strings), so any drift is a visible break.
"""

import pathlib

from clusterens import catalog as C
from clusterens.arith import parse, render

GOLDEN = pathlib.Path(__file__).parent / "golden" / "invariants.txt"

ENTRIES = [
    "a1_affine", "markov", "markov_frozen3", "bc21", "bc24", "somos4",
    "somos5", "somos6", "a3_cycle", "d_cycle(4)", "d_cycle(5)", "d_cycle(6)",
    "g2_33", "d4_11_q4", "t_pqr(1,1,1)", "t_pqr(2,1,1)", "t_pqr(2,2,1)",
    "t_pqr(2,2,2)", "t_pqr(3,3,2)", "a_n(3)",
]


def current_lines():
    lines = []
    for name in ENTRIES:
        for rec in C.invariant_records(name):
            lines.append(f"{name}.{rec.name} [{rec.flavor}] = {render(rec.function)}")
    labels = ("F_squared", "F_456", "ratio")
    for label, f in zip(labels, C.correspondence_basis("d4_11_q4")[0]):
        lines.append(f"d4_11_q4.{label} [a] = {render(f)}")
    return lines


def test_renderings_match_golden_file():
    assert current_lines() == GOLDEN.read_text().splitlines()


def test_golden_lines_parse_back():
    entries = {name: C.build(name) for name in ENTRIES}
    for line in GOLDEN.read_text().splitlines():
        head, text = line.split(" = ", 1)
        name, rest = head.rsplit(".", 1)
        flavor = rest.split("[")[1].rstrip("] ")
        entry = entries[name]
        names = entry.a_labels if flavor == "a" else entry.x_labels
        f = parse(text, names)
        assert render(f) == text
