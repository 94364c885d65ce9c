#!/usr/bin/env python3
"""Degradation-monotonicity experiment on synthetic fixtures.

Builds three structured high-variance test images, distorts each with a
seeded Gaussian-noise ladder, scores every rung, and prints the per-seed
Spearman correlation between noise level and score. With --write-dataset it
also emits the images plus a CSV manifest so the same experiment can be
replayed through the CLI (nrmi eval --manifest ...).
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from conftest import make_blobs, make_edges, make_gradient  # noqa: E402

from nrmi.distort import DistortionSpec, apply_distortion  # noqa: E402
from nrmi.image import encode_pgm  # noqa: E402
from nrmi.metric import score_image  # noqa: E402
from nrmi.stats import spearman  # noqa: E402

SIGMAS = [2.0, 4.0, 8.0, 16.0, 32.0]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=10)
    parser.add_argument("--write-dataset", metavar="DIR", default=None)
    args = parser.parse_args()

    images = {
        "gradient": make_gradient(),
        "blobs": make_blobs(),
        "edges": make_edges(),
    }

    print(f"sigma ladder: {SIGMAS}")
    for name, img in images.items():
        base = score_image(img)
        rhos = []
        for seed in range(args.seeds):
            scores = [
                score_image(
                    apply_distortion(img, DistortionSpec("gaussian-noise", s, seed))
                ).nrmi
                for s in SIGMAS
            ]
            rhos.append(spearman(SIGMAS, scores))
        print(
            f"{name:>9}: base nrmi={base.nrmi:10.3f}  "
            f"spearman(sigma, nrmi) per seed: {['%+.2f' % r for r in rhos]}"
        )

    if args.write_dataset:
        out = Path(args.write_dataset)
        out.mkdir(parents=True, exist_ok=True)
        rows = ["path,mos"]
        for name, img in images.items():
            for sigma in [0.0] + SIGMAS:
                spec = DistortionSpec("gaussian-noise", sigma, seed=0) if sigma else None
                distorted = apply_distortion(img, spec) if spec else img
                fname = f"{name}_sigma{sigma:g}.pgm"
                (out / fname).write_bytes(encode_pgm(distorted))
                # pseudo-MOS: clean image best, heaviest noise worst
                rows.append(f"{fname},{5.0 - 5.0 * sigma / max(SIGMAS)}")
        (out / "manifest.csv").write_text("\n".join(rows) + "\n")
        print(f"wrote dataset + manifest to {out}")


if __name__ == "__main__":
    main()
