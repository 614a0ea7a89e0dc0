//! Stand-alone matplotlib script for a sweep CSV.

use std::path::Path;

use crate::config::ResolvedConfig;

/// Script that plots T, R and A against the swept axis. The resolved
/// config is embedded as a comment so the figure can be regenerated.
pub fn matplotlib_script(csv: &Path, config: &ResolvedConfig) -> String {
    let axis = config
        .sweep
        .as_ref()
        .map(|s| s.axis.as_str())
        .unwrap_or("axis");
    let label = match axis {
        "omega" => r"$\Omega = \omega/\omega_p$",
        "theta" => r"$\theta$ (deg)",
        "d" => "d (nm)",
        "eps1" => r"$\varepsilon_1$",
        "eps2" => r"$\varepsilon_2$",
        _ => "axis",
    };
    let echo = serde_json::to_string_pretty(config).unwrap_or_default();
    let echo: String = echo.lines().map(|l| format!("# {l}\n")).collect();
    let file_name = csv
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default();
    let title = format!(
        "d = {} nm, eps1 = {}, eps2 = {}",
        config.d_nm, config.eps1, config.eps2[0]
    );
    format!(
        r#"#!/usr/bin/env python3
# Plots {file_name}, written by pwave {version}.
# Resolved configuration:
{echo}
import csv
import os
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
path = sys.argv[1] if len(sys.argv) > 1 else os.path.join(here, {file_name:?})

cols = {{"axis": [], "T": [], "R": [], "A": []}}
with open(path, newline="") as f:
    for row in csv.DictReader(f):
        if row["flag"].startswith("error"):
            continue
        for key in cols:
            cols[key].append(float(row[key]))

fig, ax = plt.subplots(figsize=(6, 4))
for key in ("T", "R", "A"):
    ax.plot(cols["axis"], cols[key], label=key)
ax.set_xlabel(r"{label}")
ax.set_title({title:?})
ax.legend()
ax.grid(alpha=0.3)
fig.tight_layout()
out = os.path.splitext(path)[0] + ".png"
fig.savefig(out, dpi=150)
print(out)
"#,
        version = env!("CARGO_PKG_VERSION"),
    )
}

/// `fig.csv` -> `fig.py`
pub fn script_path(csv: &Path) -> std::path::PathBuf {
    csv.with_extension("py")
}
