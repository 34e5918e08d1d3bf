import numpy as np

from casimir_shells import riccati_e, riccati_s, riccati_table, wronskian_defect
from casimir_shells.special_functions import DebyeParams, debye_ratio

# s_l grows and e_l decays, so both are kept as logarithms.
# .value exponentiates, and overflows to inf only when asked to.
for x in (0.01, 1.0, 30.0, 2000.0):
    s, e = riccati_s(3, x), riccati_e(3, x)
    print(f"x={x:8g}  ln s_3={s.log_value:12.5f}  ln e_3={e.log_value:12.5f}  s'/s={s.log_derivative:.6f}")

# whole tables at once: rows are l = 0..lmax, columns the arguments
x = np.geomspace(1e-3, 50, 6)
tab = riccati_table(x, 40)
print(tab.log_s.shape, tab.log_s[40])

# s e' - s' e should be -1 everywhere
print("worst Wronskian defect:", max(np.max(np.abs(wronskian_defect(l, x))) for l in range(81)))

# Ratio s(x)e(y)/(e(x)s(y)) for large orders against its Debye form.
# The relative error shrinks roughly like 1/nu.
for l in (10, 100, 1000):
    p = DebyeParams.from_order(0.05, l, 0.5 * (l + 0.5))
    tab = riccati_table([p.nu * p.z, p.nu * p.z * 1.05], l)
    exact = np.exp(tab.log_s[l, 0] + tab.log_e[l, 1] - tab.log_e[l, 0] - tab.log_s[l, 1])
    print(l, exact, debye_ratio(p, uniform=True) / exact - 1)
