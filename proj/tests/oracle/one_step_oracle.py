#!/usr/bin/env python3
"""Straight-line arithmetic oracle for the first DICE2016R model step.

Every quantity below is computed directly from the published parameter
tables with plain Python floats, independent of the C++ engine.  The
printed values are frozen into tests/test_augmented.cpp and the
acceptance suite.  Run:  python3 tests/oracle/one_step_oracle.py
"""

import math

# DICE2016R parameters
delta = 5.0
phi11, phi12, phi21, phi22 = 0.8718, 0.0088, 0.025, 0.975
xi1, eta, m1750 = 0.1005, 3.6813, 588.0
z11, z12, z21, z22, z23, z32, z33 = 0.88, 0.196, 0.12, 0.797, 0.001465, 0.007, 0.99853488
xi2 = 12.0 / 44.0
f0, f1, tf = 0.5, 1.0, 17.0
el0, del_el = 2.6, 0.115
gamma, theta2, a2, a3 = 0.3, 2.6, 0.00236, 2.0
delta_k, alpha, rho = 0.1, 1.45, 0.015
l0, la, lg = 7403.0, 11500.0, 0.134
a0, g_a, delta_a = 5.115, 0.076, 0.005
g_sigma, delta_sigma = 0.0152, 0.001
pb, delta_pb = 550.0, 0.025
mu0, e0, q0 = 0.03, 35.85, 105.5

# initial endogenous state (Appendix A)
t_at, t_lo = 0.85, 0.0068
m_at, m_up, m_lo = 851.0, 460.0, 1740.0
k = 223.0

mu, s = 0.03, 0.25

sigma0 = e0 / (q0 * (1.0 - mu0))

# --- step 1 quantities -----------------------------------------------------
y1 = a0 * k**gamma * (l0 / 1000.0) ** (1.0 - gamma)
forcing = eta * math.log2(m_at / m1750) + f0
omega = 1.0 / (1.0 + a2 * t_at**a3)
theta1 = pb / (1000.0 * theta2) * sigma0
abat = 1.0 - theta1 * mu**theta2
q1 = omega * abat * y1
e_ann = sigma0 * (1.0 - mu) * y1 + el0          # GtCO2/yr
c_ann = q1 * (1.0 - s)                          # trillion USD/yr

# --- advance one step ------------------------------------------------------
t_at2 = phi11 * t_at + phi12 * t_lo + xi1 * forcing
t_lo2 = phi21 * t_at + phi22 * t_lo
m_at2 = z11 * m_at + z12 * m_up + xi2 * delta * e_ann
m_up2 = z21 * m_at + z22 * m_up + z23 * m_lo
m_lo2 = z32 * m_up + z33 * m_lo
k2 = (1.0 - delta_k) ** delta * k + delta * q1 * s

# exogenous advance
sigma2 = sigma0 * math.exp(-g_sigma * (1.0 - delta_sigma) ** (delta * 0.0) * delta)
l2 = l0 * ((1.0 + la) / (1.0 + l0)) ** lg
a2_tfp = a0 / (1.0 - g_a * math.exp(-delta_a * delta * 0.0))
eland2 = el0 * (1.0 - del_el)
fex2 = f0 + min(f1 - f0, (f1 - f0) / tf * 1.0)

# augmented E/C states carry the Delta factor
e_state1 = delta * e_ann
c_state1 = delta * c_ann

y2 = a2_tfp * k2**gamma * (l2 / 1000.0) ** (1.0 - gamma)
e_state2 = delta * (sigma2 * (1.0 - mu) * y2 + eland2)
theta1_2 = pb / (1000.0 * theta2) * (1.0 - delta_pb) * sigma2
c_state2 = delta * (1.0 - theta1_2 * mu**theta2) / (1.0 + a2 * t_at2**a3) * y2 * (1.0 - s)

# welfare increment (annual consumption per capita, thousands USD)
cpc = 1000.0 * c_ann / l0
util = l0 * ((cpc ** (1.0 - alpha) - 1.0) / (1.0 - alpha))

print(f"sigma0    = {sigma0:.10f}")
print(f"Y(1)      = {y1:.6f}")
print(f"F(1)      = {forcing:.6f}")
print(f"Q(1)      = {q1:.6f}")
print(f"E_ann(1)  = {e_ann:.6f}")
print(f"C_ann(1)  = {c_ann:.6f}")
print(f"E_state(1)= {e_state1:.6f}")
print(f"C_state(1)= {c_state1:.6f}")
print(f"T_AT(2)   = {t_at2:.6f}")
print(f"T_LO(2)   = {t_lo2:.6f}")
print(f"M_AT(2)   = {m_at2:.6f}")
print(f"M_UP(2)   = {m_up2:.6f}")
print(f"M_LO(2)   = {m_lo2:.6f}")
print(f"K(2)      = {k2:.6f}")
print(f"sigma(2)  = {sigma2:.10f}")
print(f"L(2)      = {l2:.6f}")
print(f"A(2)      = {a2_tfp:.6f}")
print(f"E_Land(2) = {eland2:.6f}")
print(f"F_EX(2)   = {fex2:.10f}")
print(f"Y(2)      = {y2:.6f}")
print(f"E_state(2)= {e_state2:.6f}")
print(f"C_state(2)= {c_state2:.6f}")
print(f"U(1)      = {util:.6f}")
