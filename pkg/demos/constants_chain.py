"""Walk the constant chain from the tuning parameters to the final Goldbach constant.

Run: python demos/constants_chain.py
"""
from goldbach_explicit import constants_pipeline as cp

p = cp.DEFAULT_PARAMS
print(f"parameters: kappa={p.kappa}, lambda={p.lam}, eta={p.eta:g}, a={p.a}")

# the multiplier in front of (k^2 - 1), then the two auxiliary sizes it is built from
print(f"C/(k^2-1)        = {cp.c_ratio(p):.7f}")
print(f"alpha/(1+delta)  = {cp.alpha_of(p.kappa, p.lam) / (1 + p.delta):.4e}")
print(f"beta             = {cp.beta_of(p.kappa, p.lam):.4e}")

# a coordinate search over (kappa, lambda, eta) should land on the same value
params, best = cp.minimize_c()
print(f"minimize_c       = {best:.7f} at kappa={params.kappa:.3f}, lambda={params.lam:.4f}")

print(f"jtheta(0.0693)   = {cp.jtheta_constant(0.0693):.7f}")
for a in (1e-13, 0.1, 0.3):
    print(f"goldbach_constant(a={a:g}) = {cp.goldbach_constant(a):.4f}")
print(f"threshold_x(122.75) = {cp.threshold_x(122.75):.4e}")

rep = cp.constant_report()
print(rep.to_report().render("text"))
