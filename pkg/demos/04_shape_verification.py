"""Sampling clouds and envelope verification.

Each gallery subgroup is sampled as products of exponentials up to the norm
ceiling; the fitted envelope exponents of log|rho| against log|h| are then
compared with the classifier's predicted shape.
"""

from su2n import gallery
from su2n.lab import SamplingPlan, check_dimension_table, sample_subgroup, verify_gallery_entry
from su2n.nilclassify import classify
from su2n.serialize import cloud_to_csv

print("== fitted envelopes vs predicted shapes ==")
for eid in ("notcds01-2beta-n3", "notcds05-dim1-n3", "notcds07-max-n4",
            "notcds11-n3", "cds-squarelinear-n4"):
    rep = verify_gallery_entry(gallery.get(eid), seed=0)
    fitted = tuple(round(float(v), 3) for v in rep.fitted)
    print(f"  {eid:24s} predicted {str(rep.predicted):28s}"
          f" fitted {fitted}  -> {rep.verdict}")

print("\n== a cloud can be dumped as CSV for external plotting ==")
e = gallery.get("notcds11-n3")
h = e.spec()
cloud = sample_subgroup(h, SamplingPlan(seed=0), result=classify(h))
cloud_to_csv(cloud, "/tmp/band54.csv")
print(f"  wrote {len(cloud)} samples to /tmp/band54.csv "
      f"(discard fraction {cloud.meta['discard_fraction']:.2f})")

print("\n== the maximal-dimension table ==")
for row in check_dimension_table(seed=0):
    print(f"  [{'ok' if row['ok'] else 'BAD'}] {row['check']}")
