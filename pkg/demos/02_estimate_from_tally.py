# %% [markdown]
# # From a randomized tally to an estimate with error bars
#
# 1000 people answered through the design `(p00, p11) = (0.75, 0.75)` and 340
# of the randomized answers were "yes".

# %%
from rrdp import DesignMatrix, SurveyOutcome, build_report

P = DesignMatrix(0.75, 0.75)
outcome = SurveyOutcome(n=1000, count_ones=340)
rep = build_report(P, outcome)

print(f"raw MLE        {rep.pi_hat_raw:.4f}")
print(f"clamped        {rep.pi_hat_clamped:.4f}")
print(f"variance       {rep.variance:.3e}  (evaluated at pi={rep.variance_at:.3f})")
print(f"95% margin     +/- {rep.moe_normal:.4f} (normal approximation)")
print(f"95% margin     +/- {rep.moe_chebyshev:.4f} (Chebyshev, distribution-free)")

# %% [markdown]
# The MLE is not forced into [0, 1].  A small tally can push it negative;
# the report keeps the raw value and a clamped one side by side.

# %%
low = build_report(P, SurveyOutcome(1000, 200), reference_pi=0.1)
print(low.pi_hat_raw, low.pi_hat_clamped, low.variance)
