# %% [markdown]
# # Choosing a private randomized-response design
#
# A survey asks one sensitive yes/no question.  Each respondent reports
# their true answer with probability `p00` (if "no") or `p11` (if "yes") and
# the flipped answer otherwise.  Given a privacy budget `(epsilon, delta)` and
# a rough idea of the true proportion `pi`, which `(p00, p11)` gives the
# most accurate estimate?

# %%
import math

from rrdp import (
    DesignMatrix,
    PrivacyParams,
    brute_force_optimal,
    estimator_variance,
    g_threshold,
    optimal_relaxed,
    optimal_strict,
    optimal_warner,
    satisfies_dp,
)

# %% [markdown]
# ## Pure epsilon-DP
#
# With `delta = 0` the answer does not depend on `pi`: keep the truth with
# probability `e^eps / (e^eps + 1)` on both rows.

# %%
for eps in (0.1, 0.5, 1.0, math.log(3), 2.0):
    P = optimal_strict(eps)
    print(f"eps={eps:.3f}  p00=p11={P.p00:.4f}  Var(n=1000, pi=0.2)={estimator_variance(P, 0.2, 1000):.2e}")

# %% [markdown]
# ## Relaxed (epsilon, delta)-DP
#
# Now two candidates compete: the symmetric corner and the lopsided design
# `(1, delta)` that never lies to "no"-holders.  The threshold
# `g(eps, delta)` compared with `min(pi, 1 - pi)` picks the winner.

# %%
cases = [
    (0.5, 0.1, 0.25),
    (1.0, 0.4, 0.1),
    (0.5, 1 / 3, 0.9),
    (math.log(2), 0.25, 0.25),
]
for eps, delta, pi in cases:
    priv = PrivacyParams(eps, delta)
    res = optimal_relaxed(priv, pi)
    mechs = ", ".join(f"({P.p00:.4f}, {P.p11:.4f})" for P in res.mechanisms)
    print(f"eps={eps:.3f} delta={delta:.3f} pi={pi:.2f}  g={g_threshold(priv):.3f}  "
          f"{res.regime.value:<15} {mechs}  Var={res.variance_at_pi:.4f}")

# %% [markdown]
# ## Cross-check against exhaustive search
#
# The brute-force search scans a 2000 x 2000 lattice of feasible designs.
# It never beats the closed form.

# %%
priv, pi = PrivacyParams(1.0, 0.4), 0.1
P, v = brute_force_optimal(priv, pi, n=1, grid=2000)
print("lattice optimum:", P, f"variance={v:.6f}")
print("closed form    :", optimal_relaxed(priv, pi).mechanism)
print("private?", satisfies_dp(P, priv))

# %% [markdown]
# ## Restricting to symmetric designs
#
# If both rows must use the same retention probability, the best choice is
# the largest feasible one.

# %%
pw = optimal_warner(PrivacyParams(0.5, 0.1))
print(f"best symmetric pw = {pw:.4f}")
print("Var at pi=0.25:", estimator_variance(DesignMatrix(pw, pw), 0.25, 1))
