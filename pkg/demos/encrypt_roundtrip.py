"""
Encrypting and decrypting an image
==================================

A key is derived from the image and a 64-bit master seed, the image is
encrypted into a container of eight cipher bit strings, and both are written
to disk and read back.
"""

import tempfile
from pathlib import Path

from omflipcrypt import (
    CipherContainer,
    decrypt,
    encrypt,
    keygen,
    load_key,
    load_pgm,
    save_key,
)

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
img = load_pgm(DATA / "astronaut128.pgm")

key = keygen(img, master_seed=2024)
print("transmission order of planes:", key.plane_order)
for pk in key.plane_keys:
    print(f"  b{pk.level}: path {pk.scan_pattern_id}, {pk.mode.name:3s}, "
          f"{pk.run_count:5d} runs x {pk.field_width:2d} bits, block {pk.block_size}, "
          f"pad {pk.pad_bits}, {len(pk.control_bits)} control bits")

container = encrypt(img, key)
sizes = [bits.size for bits in container.planes]
print("cipher bits per slot:", sizes, f"(total {sum(sizes)} vs {8 * 128 * 128} plain)")

# %%
# Files on disk: the key and the container travel separately.
with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    save_key(key, tmp / "astronaut.key")
    (tmp / "astronaut.omfc").write_bytes(container.to_bytes())
    print("key file:", (tmp / "astronaut.key").stat().st_size, "bytes;",
          "container:", (tmp / "astronaut.omfc").stat().st_size, "bytes")

    received = CipherContainer.from_bytes((tmp / "astronaut.omfc").read_bytes())
    restored = decrypt(received, load_key(tmp / "astronaut.key"))

print("exact reconstruction:", restored == img)

# %%
# A key made from another seed does not decrypt the container.
other = keygen(img, master_seed=2025)
try:
    print("wrong key reconstructs:", decrypt(container, other) == img)
except ValueError as exc:
    print("wrong key rejected:", exc)
