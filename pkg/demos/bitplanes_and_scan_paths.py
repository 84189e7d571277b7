"""
Bit planes and scan paths
=========================

An 8-bit image splits into eight binary planes. Each plane is read along one
of eight candidate scanning paths, and the path whose run encoding is
shortest is kept as part of the key.
"""

from pathlib import Path

import numpy as np

from omflipcrypt import decompose, load_pgm
from omflipcrypt.rle2d import encode_runs, encoded_bit_count
from omflipcrypt.scanpath import PATTERN_NAMES, generate_path, linearize, select_optimal_path

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
img = load_pgm(DATA / "camera128.pgm")
planes = decompose(img)

# Summing the planes weighted by 2**level gives the pixels back.
weighted = sum(p.bits.astype(int) << p.level for p in planes)
print("recomposition exact:", np.array_equal(weighted, img.pixels))

# %%
# Paths on a small grid. Every path visits each cell exactly once.
for pid, name in enumerate(PATTERN_NAMES):
    order = generate_path(pid, 4, 4).flat_index.reshape(-1)
    print(f"{pid} {name:<13}", " ".join(f"{i:2d}" for i in order))

# %%
# Encoded size of every plane along every path (bits, including the first bit).
# The most significant planes are smooth and compress well; the low planes
# are close to noise and would expand, so the cipher sends them raw.
area = img.width * img.height
print("\nplane " + " ".join(f"{n[:8]:>9}" for n in PATTERN_NAMES) + "   best")
for plane in reversed(planes):
    sizes = [encoded_bit_count(plane, generate_path(p, img.width, img.height)) for p in range(8)]
    best, size = select_optimal_path(plane)
    print(f"b{plane.level}    " + " ".join(f"{s:9d}" for s in sizes)
          + f"   {best.name} ({size / area:.2f} bits/pixel)")

# %%
# The runs of the most significant plane along its best path.
best, _ = select_optimal_path(planes[7])
enc = encode_runs(linearize(planes[7], best))
print(f"\nb7 along {best.name}: first bit {enc.first_bit}, {len(enc.runs)} runs, "
      f"longest {enc.max_run}, {enc.field_width} bits per run")
