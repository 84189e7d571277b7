"""
Omega and flip stages
=====================

One omega stage interleaves the two halves of a string, one flip stage
undoes it. The control vector picks a stage per bit.
"""

from math import lcm

import numpy as np

from omflipcrypt.permnet import flip_stage, omega_source, omega_stage, omflip_apply

for word in ("abcd", "abcde", "abcdefgh"):
    print(f"{word}: omega -> {''.join(omega_stage(list(word)))}, "
          f"flip -> {''.join(flip_stage(list(word)))}")

# %%
# Since flip undoes omega, a chain of stages depends only on how many more
# omega stages it holds than flip stages. Two control vectors with the same
# count give the same permutation.
rng = np.random.default_rng(0)
s = rng.integers(0, 2, 64, dtype=np.uint8)
a = [0, 0, 1, 0, 1, 0]           # 4 omega, 2 flip
b = [1, 0, 0, 0, 0, 1]           # same counts, different order
print("\nsame permutation:", np.array_equal(omflip_apply(s, a), omflip_apply(s, b)))


# %%
# The number of distinct chains is therefore bounded by the order of the
# omega stage on the stream length.
def order(w):
    src, seen, result = omega_source(w), np.zeros(w, bool), 1
    for start in range(w):
        length, j = 0, start
        while not seen[j]:
            seen[j], j, length = True, src[j], length + 1
        if length:
            result = lcm(result, length)
    return result


for w in (8, 64, 1024, 4552, 16384):
    print(f"w={w:5d}: omega has order {order(w)}")
