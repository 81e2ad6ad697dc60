"""Records scipy.stats.shapiro results for stored samples (n = 10..200)."""
import os
import sys

import numpy as np
from scipy import stats

rng = np.random.default_rng(9517)
samples = [
    ("normal_10", rng.normal(5.0, 2.0, 10)),
    ("uniform_15", rng.uniform(0.0, 1.0, 15)),
    ("exponential_20", rng.exponential(3.0, 20)),
    ("heavy_tailed_20", rng.standard_t(2, 20)),
    ("lognormal_30", rng.lognormal(0.0, 1.0, 30)),
    ("normal_50", rng.normal(0.0, 1.0, 50)),
    ("poisson_counts_75", rng.poisson(4.0, 75).astype(float)),
    ("bimodal_100", np.concatenate([rng.normal(-2, 1, 50), rng.normal(3, 1, 50)])),
    ("chisq_150", rng.chisquare(3, 150)),
    ("normal_200", rng.normal(10.0, 3.0, 200)),
]

out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures", "shapiro_reference.tsv")
with open(out, "w", encoding="utf-8", newline="\n") as f:
    f.write("# label\tn\tW\tp\tvalues (scipy %s)\n" % __import__("scipy").__version__)
    for label, x in samples:
        x = np.round(x, 6)
        w, p = stats.shapiro(x)
        f.write(f"{label}\t{len(x)}\t{float(w)!r}\t{float(p)!r}\t{','.join(repr(float(v)) for v in x)}\n")
