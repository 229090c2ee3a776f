"""Writes tests/golden/approximation_audit.csv.

100 random pairs (complex normal components, normalized) and theta drawn so that
p_error(theta) <= 0.05. Records the brute-force exact success probability and the
first-order estimate, plus the calibrated discrepancy bounds in a trailing comment.
"""
import os
import sys

import numpy as np

from protocol_bruteforce import p_error, run

rng = np.random.default_rng(20260101)
half_width = np.arcsin(np.sqrt(0.05))
rows = []
for _ in range(100):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    v /= np.linalg.norm(v)
    theta = np.pi + rng.uniform(-1, 1) * half_width
    a, b, g, d = v
    analytic = abs(a * d - b * g) ** 2
    approx = analytic * (1 + p_error(theta)) ** 2
    exact = run(v, theta)[2]
    rows.append((v, theta, analytic, approx, exact))

max_abs = max(abs(r[4] - r[3]) for r in rows)
max_rel = max(abs(r[4] - r[3]) / max(r[4], 1e-12) for r in rows)
min_margin = min(r[4] - r[2] for r in rows)

out = os.path.join(os.path.dirname(__file__), "..", "golden", "approximation_audit.csv")
with open(out, "w", newline="\n") as f:
    f.write("alpha_re,alpha_im,beta_re,beta_im,gamma_re,gamma_im,delta_re,delta_im,"
            "theta,analytic_success,approx_success,exact_success\n")
    for v, theta, analytic, approx, exact in rows:
        cells = [x for c in v for x in (c.real, c.imag)] + [theta, analytic, approx, exact]
        f.write(",".join("%.17g" % x for x in cells) + "\n")
    f.write("# max_abs_discrepancy=%.17g\n" % max_abs)
    f.write("# max_rel_discrepancy=%.17g\n" % max_rel)
print("max_abs", max_abs, "max_rel", max_rel, "min exact-analytic", min_margin, file=sys.stderr)
