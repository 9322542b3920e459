"""Folding curves, derivatives and pictures.

Run: python3 demos/02_curves.py [outdir]
"""
import sys
from pathlib import Path

from paperfold.curves import (antiderivatives, curve_type, derivative,
                              diameter_delta, folding_curve, is_self_avoiding,
                              square_config_check)
from paperfold.render import RenderStyle, render_curve

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)

dragon = folding_curve((1,) * 8)
print(f"8-folding dragon: {dragon.n_segments} segments, "
      f"self-avoiding={is_self_avoiding(dragon)}, "
      f"squares ok={square_config_check(dragon)}")
print("type", curve_type(dragon), "diameter", diameter_delta(dragon))

d = derivative(dragon)
print("derivative: level", d.level, "with", d.n_segments, "segments")
left, right = antiderivatives(d)
print("one antiderivative gives the curve back:", dragon in (left, right))

c = folding_curve((1, -1, 1, 1, -1, 1))
(out / "curve.svg").write_text(render_curve(c, RenderStyle(show_derivatives=2)))
(out / "dragon.svg").write_text(render_curve(dragon, RenderStyle(show_tiles=True)))
print("wrote", out / "curve.svg", "and", out / "dragon.svg")
