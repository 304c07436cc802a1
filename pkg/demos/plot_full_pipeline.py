"""
Groove extraction, enrollment and matching
==========================================

Runs the full staged pipeline, writes the intermediate images, then
enrolls one template and identifies a probe against it.
"""

import tempfile
from pathlib import Path

import numpy as np

from lipgroove import PipelineConfig, build_template, enroll, extract_grooves, identify, load_all, match_score
from lipgroove.pipeline import dump_stages
from lipgroove.synthetic import add_noise, synthetic_lip

image, truth = synthetic_lip()
result = extract_grooves(image, PipelineConfig(dump_stages=True))
print("vertical edge pixels:", int(result.vertical.sum()))
print("horizontal edge pixels:", int(result.horizontal.sum()))

work = Path(tempfile.mkdtemp())
dump_stages(result, work / "stages")
print("stages:", sorted(p.name for p in (work / "stages").iterdir()))

# %%
# Templates carry two ratios and two 128x64 groove maps
template = build_template("alice", result)
print(template.ratios)

store = work / "db"
enroll(store, template)
gallery = load_all(store)

# a noisy capture of the same lip
probe = build_template("probe", extract_grooves(add_noise(image, 8, seed=0)))
print(match_score(probe, gallery[0]))
print("identified:", identify(probe, gallery))

# a mirrored lip has different groove positions
other = build_template("other", extract_grooves(np.ascontiguousarray(image[:, ::-1])))
print("mirrored score:", match_score(other, gallery[0]).groove_score)
