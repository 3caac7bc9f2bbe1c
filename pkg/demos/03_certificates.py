"""
Certifying the hypotheses
=========================

The 1-skeleton of a 3-sphere does not embed in the plane.  The certificate
checks r = p^k, the dimension inequality and complementary acyclicity, and
records the weight chain and the final contradiction.
"""

# %%
from vkflores import certify_hypotheses, check_saturated, crosspolytope, simplex, weight_lower_bound

rep = certify_hypotheses(crosspolytope(4), r=2, p=2, kexp=1, n=1, d=2)
print(rep.verdict, rep.checks)
print(rep.arithmetic["statement"])

# %%
for step in weight_lower_bound(simplex(4), 2, 2, 1).chain:
    print(f"{step.rule:20s} {step.statement}")

# %%
# One dimension up the inequality fails, and the report says which clause.
print(certify_hypotheses(simplex(4), 2, 2, 1, 1, 3).failing_clauses())

# %%
print(check_saturated(simplex(3), 2, 2).verdict)
