"""The explicit coverings of the plane: validity, derivation and local
isomorphism.

Run: python3 demos/03_coverings.py [outdir]
"""
import sys
from pathlib import Path

from paperfold import constructions as K
from paperfold.covering import derive_covering, li_patch_check, validate_covering
from paperfold.render import render_covering

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)

# patches need room to recur, so the windows are 65 x 65
builds = {"positive": K.positive_covering(32),
          "alternating": K.alternating_covering(32),
          "fig9": K.fig9_covering(32),
          "effective": K.effective_single_covering(2)}
for name, cov in builds.items():
    rep = validate_covering(cov)
    li = li_patch_check(cov, 4)
    print(f"{name:12s} valid={rep.ok} curves={rep.n_curves} "
          f"li={li.ok} {'; '.join(li.reasons)}")
    (out / f"{name}.svg").write_text(render_covering(cov))

cov = builds["alternating"]
for depth in range(1, 4):
    cov = derive_covering(cov)
    rep = validate_covering(cov)
    print(f"alternating derived {depth}x: valid={rep.ok} curves={rep.n_curves}")
print("svg files in", out)
