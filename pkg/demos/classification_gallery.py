"""Classify every problem file in demos/problems and print the evidence.

Each verdict is backed by something re-checkable: PI carries the central
power n (x^n commutes with every generator, verified by Ore products),
Free carries a witness plus either a Weyl pair, a strict tower, or a
valuation profile, together with a bounded independence certificate.
Unknown says what was tried.

Run:  python3 demos/classification_gallery.py
"""

import pathlib

from orefree import classify_problem, parse_problem

HERE = pathlib.Path(__file__).parent

for path in sorted((HERE / "problems").glob("*.ore")):
    spec = parse_problem(path.read_text())
    verdict = classify_problem(spec)
    print("=" * 60)
    print(path.name)
    for line in path.read_text().splitlines():
        if line.strip() and not line.lstrip().startswith("#"):
            print("    " + line)
    tag = " [%s]" % verdict.theorem_tag if verdict.theorem_tag else ""
    print("  verdict: %s%s" % (verdict.kind, tag))
    if verdict.central_power is not None:
        print("  central power: x^%d" % verdict.central_power)
    if verdict.witness is not None:
        print("  witness: %s" % verdict.witness)
    if verdict.certificate is not None:
        c = verdict.certificate
        print("  certificate: words to length %d, rank %d of %d (%s)"
              % (c.max_length, c.rank, c.word_count, c.verdict))
    for d in verdict.diagnostics:
        print("  note: %s" % d)
