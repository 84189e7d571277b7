"""
Cipher stream statistics
========================

Per-plane entropy of the final cipher streams, correlation between the
scrambled and permuted streams (OMFLIP and, for comparison, GRP), and key
sensitivity to flipped control bits.
"""

from pathlib import Path

from omflipcrypt import keygen, load_pgm
from omflipcrypt.analysis import report

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

for name in ("camera", "astronaut", "brick"):
    img = load_pgm(DATA / f"{name}128.pgm")
    rep = report(img, keygen(img, 42), trials=20)
    print(f"\n{name}\n{rep.text()}")

# %%
# The same numbers as machine-readable lines.
print()
print("\n".join(rep.lines()[:5]), "\n...")

# %%
# Optional plot of entropy per plane, if matplotlib is around.
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(5, 3))
    for name in ("camera", "astronaut", "brick"):
        img = load_pgm(DATA / f"{name}128.pgm")
        ent = report(img, keygen(img, 42), trials=0).entropy
        ax.plot(range(8), [ent[l] for l in range(8)], marker="o", label=name)
    ax.set_xlabel("bit plane")
    ax.set_ylabel("entropy of cipher stream")
    ax.set_ylim(0.5, 1.02)
    ax.legend()
    fig.tight_layout()
    fig.savefig("cipher_entropy.png", dpi=100)
    print("saved cipher_entropy.png")
