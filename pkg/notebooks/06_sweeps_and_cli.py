import subprocess
import sys

from casimir_shells.golden import run_checks
from casimir_shells.sweeps import fig3_config, rows_to_csv, run_sweep, shoulder_from_rows

rows = run_sweep(fig3_config(reproducible=True))
print(rows_to_csv(rows)[:600])
for da in (0.05, 0.075, 0.1):
    s = shoulder_from_rows(rows, da)
    print(da, round(s["t_shoulder"], 2), round(s["high_t_slope"], 4))

for c in run_checks():
    print(c.line())

# same thing through the command line
out = subprocess.run([sys.executable, "-m", "casimir_shells.cli", "point", "--gap-ratio", "0.1",
                      "--temperature", "1", "--epsilon", "inf", "-q"], capture_output=True, text=True)
print(out.returncode, out.stdout)
