"""
Certifying unboundedness along an eigen-ray
===========================================

Where no minimum exists, J_{alpha,beta} diverges along the ray
t * u_{k+1,1} through the first eigenfunction above the gap. The probe
samples J at t = 2^0, 2^1, ..., and certifies divergence once the ray
dives below a fixed depth with a strictly decreasing tail.
"""

from kwgraph import complete_graph, compute_spectrum, probe_divergence

g = complete_graph(2)
spec = compute_spectrum(g)
print("lambda_1 =", spec.eigenvalue(1))
print()

# alpha above the gap: quadratic divergence, certified quickly
report = probe_divergence(g, spec, 3.0, 0.0)
print("alpha=3 beta=0 along u_1:")
for t, J in report.samples[::4]:
    print(f"  t = {t:>9g}   J = {J:.6g}")
print("verdict:", report.verdict.value)
print()

# alpha exactly at the gap with beta > 0: the quadratic term vanishes
# on the ray and the log term wins only linearly
report = probe_divergence(g, spec, 2.0, 1.0)
print("alpha=2 beta=1 along u_1:")
for t, J in report.samples[::4]:
    print(f"  t = {t:>9g}   J = {J:.6g}")
print("verdict:", report.verdict.value)
print()

# a short probe cannot certify the slow linear decay
short = probe_divergence(g, spec, 2.0, 1.0, t_max_exponent=4)
print("same ray, t capped at 2^4:", short.verdict.value)
print("(deepen t_max_exponent to resolve an inconclusive probe)")
